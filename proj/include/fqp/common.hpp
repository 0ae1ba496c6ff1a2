#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fqp {

/// Element index into a finite ring or module carrier.
using Elem = std::uint32_t;

/// Thrown when a computation would exceed a configured resource cap.
/// Callers that treat caps as "reported, not failed" catch this type.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Resource caps and toggles shared by the deciders and the harness.
/// All caps must be positive.
struct Config {
    std::size_t ring_size_cap = 4096;      // max elements per constructed ring
    std::size_t ideal_count_cap = 100000;  // max ideals / submodules per lattice
    std::size_t oracle_module_cap = 64;    // max module size for brute-force hom search
    std::size_t oracle_generator_cap = 3;  // max generators for hom search
    std::size_t candidate_cap = 1000000;   // max candidate tuples per hom search
    unsigned content_degree = 1;           // degree bound for polynomial-content checks
    std::size_t content_pair_cap = 1000000;  // max (f,g) pairs per content search
    std::size_t axiom_size_cap = 512;      // max ring size for the O(n^3) axiom sweep
    std::size_t pair_suite_size_cap = 64;  // max ring size for per-element-pair suites
    std::size_t base_change_size_cap = 100;  // max ring size for the base-change sweep
    bool oracle_check = true;              // cross-check fqp verdicts with the oracle
    std::string output_format = "human";   // "human" or "machine"

    void validate() const {
        if (ring_size_cap == 0 || ideal_count_cap == 0 || oracle_module_cap == 0 ||
            oracle_generator_cap == 0 || candidate_cap == 0 || content_pair_cap == 0 ||
            axiom_size_cap == 0 || pair_suite_size_cap == 0 || base_change_size_cap == 0)
            throw std::invalid_argument("config: all caps must be positive");
        if (output_format != "human" && output_format != "machine")
            throw std::invalid_argument("config: output_format must be human or machine");
    }
};

}  // namespace fqp

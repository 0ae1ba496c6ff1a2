#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqp/common.hpp"
#include "fqp/ideal.hpp"
#include "fqp/module.hpp"
#include "fqp/ring.hpp"

namespace fqp {

enum class WdimClass { Zero, Infinite, NotApplicable };

std::string to_string(WdimClass w);

/// Classification record of one ring: the property flags, witnesses for
/// the false ones, the wdim verdict, and resource statistics.
struct PropertyReport {
    std::string ring_name;
    std::string ring_spec;
    std::size_t ring_size = 0;

    bool local = false;
    bool chained = false;
    bool arithmetical = false;
    bool fqp = false;
    bool gaussian = false;
    bool prufer = false;
    bool reduced = false;
    bool von_neumann_regular = false;
    bool total_quotient_ring = false;
    WdimClass wdim = WdimClass::NotApplicable;

    // (flag, rendered evidence), in flag order; false hierarchy flags always
    // carry an entry, wdim carries the case that fired.
    std::vector<std::pair<std::string, std::string>> witnesses;

    bool oracle_verified = false;   // every ideal's fqp verdict oracle-checked
    std::size_t oracle_checked = 0; // ideals the oracle covered
    std::size_t ideal_count = 0;
    double elapsed_ms = 0.0;        // excluded from machine records
    std::vector<std::string> caps_hit;

    const std::string* witness_for(const std::string& flag) const;
};

bool is_local(const RingPtr& ring);

/// Chained = ideals linearly ordered; decided by pairwise comparability of
/// principal ideals, which is equivalent on finite rings (any ideal is the
/// largest principal ideal it contains). Witness: first incomparable pair.
bool is_chained(const RingPtr& ring, std::pair<Elem, Elem>* witness = nullptr);

/// Arithmetical = every local factor chained. Witness: factor index plus
/// an incomparable pair inside that factor.
bool is_arithmetical(const RingPtr& ring, std::string* witness = nullptr);

/// Gaussian via the local pairwise criterion: in each local factor, every
/// pair (a,b) must satisfy (a,b)^2 = (a^2) or (b^2), and when ab = 0 the
/// dominated square must vanish. Complete on finite rings.
bool is_gaussian(const RingPtr& ring, std::string* witness = nullptr);

/// Bounded-degree refuter for the content law c(fg) = c(f)c(g): exhaustive
/// scan over univariate pairs of degree <= d. Returns the first violating
/// pair's coefficient vectors (f then g), or nullopt. One-sided: a None
/// result does not prove the ring Gaussian. Throws CapExceeded when the
/// scan passes cfg.content_pair_cap pairs, or upfront when one side's
/// coefficient enumeration alone exceeds 65536 polynomials.
std::optional<std::pair<std::vector<Elem>, std::vector<Elem>>> gaussian_content_witness(
    const RingPtr& ring, unsigned degree, const Config& cfg = {});

/// fqp = every ideal quasi-projective (finite ring: all ideals are
/// finitely generated). Cross-checks each verdict with the brute-force
/// oracle within caps when cfg.oracle_check.
struct FqpResult {
    bool fqp = false;
    std::vector<Elem> witness_gens;   // minimal generators of the first failing ideal
    bool oracle_verified = false;     // oracle covered every ideal and agreed
    std::size_t oracle_checked = 0;
    std::size_t ideal_count = 0;
    std::vector<std::string> caps_hit;
};

FqpResult is_fqp(const RingPtr& ring, const Config& cfg = {});

/// Prufer: every finitely generated regular ideal projective. Decided
/// generically; on a finite ring the only regular ideal is R (a regular
/// element is a unit), so this is identically true.
bool is_prufer(const RingPtr& ring, const Config& cfg = {});

/// Every non-unit is a zero-divisor. Identically true on finite rings.
bool is_total_quotient_ring(const RingPtr& ring);

/// Weak global dimension classifier, scoped to fqp rings. Reduced fqp ->
/// Zero (verified von Neumann regular); non-reduced fqp -> Infinite, with
/// the per-factor case recorded (nilpotents square to zero, or chained
/// with a proper zero-divisor); non-fqp -> NotApplicable. The value 1
/// needs an infinite ring and has no code path here.
WdimClass wdim_classify(const RingPtr& ring, const Config& cfg = {},
                        std::string* case_fired = nullptr);

/// Incomparable-pair inspector. For nonzero a, b in a local ring: when (a)
/// and (b) are incomparable and (a,b) is quasi-projective, the three
/// conclusions below must all hold.
struct IncomparablePairReport {
    bool applicable = false;        // (a), (b) incomparable
    bool hypothesis = false;        // (a,b) quasi-projective
    bool intersection_zero = false; // (a) /\ (b) = 0
    bool squares_zero = false;      // a^2 = b^2 = ab = 0
    bool annihilators_equal = false;
    bool conclusions_hold() const {
        return intersection_zero && squares_zero && annihilators_equal;
    }
};

IncomparablePairReport lemma38_inspect(const RingPtr& ring, Elem a, Elem b,
                                       const Config& cfg = {});

/// For a local fqp ring, at least one of these must hold.
enum class LocalFqpShape { NilSquareZero, Chained, Both };

std::string to_string(LocalFqpShape s);

/// Dichotomy for local fqp rings: Nil(R)^2 = 0 or R chained. Throws
/// std::invalid_argument if the ring is not local, or not fqp per the
/// fast criterion; throws std::logic_error if both disjuncts fail.
LocalFqpShape fqp_dichotomy(const RingPtr& ring, const Config& cfg = {});

/// Runs every decider and assembles the report. Optional-layer cap hits
/// (oracle) are recorded in caps_hit; required-layer cap hits
/// (all_ideals) propagate as CapExceeded.
PropertyReport classify_ring(const RingPtr& ring, const Config& cfg = {});

}  // namespace fqp

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqp/common.hpp"
#include "fqp/ideal.hpp"
#include "fqp/ring.hpp"

namespace fqp {

/// A finite module over a FiniteRing: explicit addition table over module
/// element indices and a scalar-action table (ring index, module index).
/// Immutable after construction.
class FiniteModule {
public:
    struct Data {
        RingPtr ring;
        std::size_t size = 0;
        std::vector<Elem> add;  // row-major size*size
        std::vector<Elem> act;  // row-major ring->size() * size
        Elem zero = 0;
        std::string name;
        std::vector<std::string> elem_names;  // optional
    };

    /// Validates shape and index ranges only; the algebraic laws live in
    /// check_module_axioms so defective tables can be inspected.
    explicit FiniteModule(Data d);

    const RingPtr& ring() const { return ring_; }
    std::size_t size() const { return size_; }
    Elem add(Elem a, Elem b) const { return add_[a * size_ + b]; }
    Elem act(Elem r, Elem m) const { return act_[r * size_ + m]; }
    Elem neg(Elem m) const { return neg_[m]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
    Elem zero() const { return zero_; }
    const std::string& name() const { return name_; }
    const std::string& elem_name(Elem m) const { return names_[m]; }

private:
    RingPtr ring_;
    std::size_t size_;
    Elem zero_;
    std::vector<Elem> add_, act_, neg_;
    std::string name_;
    std::vector<std::string> names_;
};

/// Exhaustive check that (add, zero) is an abelian group and the action is
/// bilinear, associative over ring multiplication, and unital. Returns a
/// description of the first violation, or nullopt.
std::optional<std::string> check_module_axioms(const ModulePtr& m);

/// A submodule, represented as a subset of its parent's carrier.
struct Submodule {
    ModulePtr parent;
    std::vector<bool> mask;
    std::vector<Elem> elements;  // ascending

    std::size_t size() const { return elements.size(); }
    bool contains(Elem x) const { return mask[x]; }
};

/// A module homomorphism as a total table over source element indices.
struct ModuleHom {
    ModulePtr source;
    ModulePtr target;
    std::vector<Elem> map;

    Elem operator()(Elem x) const { return map[x]; }
};

// Constructors.

ModulePtr zero_module(const RingPtr& ring);

/// The ideal's members as a module with the inherited action.
ModulePtr module_from_ideal(const Ideal& ideal);

/// R/J as an R-module; representatives are minimal per coset.
ModulePtr cyclic_module(const RingPtr& ring, const Ideal& j);

ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b);

/// n-fold direct sum; n = 0 gives the zero module.
ModulePtr module_power(const ModulePtr& m, std::size_t n);

/// Ann(M) = { r : r*m = 0 for all m }, an ideal of the base ring.
Ideal module_annihilator(const ModulePtr& m);

/// Least submodule containing gens.
Submodule submodule_span(const ModulePtr& m, const std::vector<Elem>& gens);

/// The full module and the zero submodule as Submodule values.
Submodule full_submodule(const ModulePtr& m);

/// All submodules: closure of the cyclic submodules under pairwise sum,
/// ordered by (cardinality, element list). Throws CapExceeded past
/// cfg.ideal_count_cap.
std::vector<Submodule> submodules(const ModulePtr& m, const Config& cfg = {});

/// M/N with minimal-index coset representatives and the projection table.
struct QuotientModule {
    ModulePtr module;
    std::vector<Elem> projection;  // parent index -> quotient index
    std::vector<Elem> section;     // quotient index -> representative
};

QuotientModule quotient_module(const ModulePtr& m, const Submodule& n);

/// M/KM as a module over R/K (the scalar action factors through R/K).
ModulePtr quotient_scalars(const ModulePtr& m, const Ideal& k);

/// Minimal generating set of M: per local factor, greedy lifts of a
/// residue-field basis of M_i/m_i M_i; the factorwise sets are merged
/// positionally (j-th generators summed across factors), so the count is
/// the true minimal number of generators, max over factors.
std::vector<Elem> module_minimal_generators(const ModulePtr& m);

/// Every homomorphism M -> N, by enumerating image tuples for a minimal
/// generating set of M and checking the induced linear extension.
/// Deterministic order (lexicographic by map table). Throws CapExceeded
/// when |N|^k exceeds cfg.candidate_cap.
std::vector<ModuleHom> homs(const ModulePtr& m, const ModulePtr& n, const Config& cfg = {});

/// Projectivity over the base ring: split by local factors, then each
/// component must be free, detected by |M_i| = |R_i|^(minimal generator
/// count). A surjection R_i^k -> M_i between equinumerous finite sets is
/// a bijection, so the counting test is exact.
bool is_projective(const ModulePtr& m);

/// Fast quasi-projectivity criterion: projective over R/Ann(M).
bool is_quasi_projective(const ModulePtr& m);

/// Brute-force quasi-projectivity: for every submodule N, every hom
/// M -> M/N must be the pushforward of an endomorphism of M. Returns the
/// verdict plus a witness (N and an unliftable hom) when false.
struct OracleResult {
    bool quasi_projective = false;
    std::size_t submodules_checked = 0;
    std::optional<Submodule> witness_submodule;
    std::optional<ModuleHom> witness_hom;  // into M/witness_submodule
};

OracleResult quasi_projective_oracle(const ModulePtr& m, const Config& cfg = {});

/// V is M-projective: Hom(V,M) -> Hom(V,M/N) surjective for every N.
bool is_relatively_projective(const ModulePtr& v, const ModulePtr& m, const Config& cfg = {});

/// First tuple (canonical order) of endomorphisms with f_i(M) inside
/// parts[i] and pointwise sum the identity; nullopt when none exists.
/// parts must sum to M.
std::optional<std::vector<ModuleHom>> split_identity(const ModulePtr& m,
                                                     const std::vector<Submodule>& parts,
                                                     const Config& cfg = {});

/// Module isomorphism: fingerprint prefilter (size, annihilator, additive
/// orders, generator count), then search homs(M,N) for a bijection.
bool are_isomorphic(const ModulePtr& a, const ModulePtr& b, const Config& cfg = {});

}  // namespace fqp

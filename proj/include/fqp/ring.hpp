#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fqp/common.hpp"

namespace fqp {

class FiniteRing;
class FiniteModule;
struct Ideal;

using RingPtr = std::shared_ptr<const FiniteRing>;
using ModulePtr = std::shared_ptr<const FiniteModule>;

/// A finite commutative unital ring given by explicit operation tables over
/// element indices 0..size-1. Immutable after construction and safe to share
/// across concurrent tasks.
class FiniteRing {
public:
    struct Data {
        std::size_t size = 0;
        std::vector<Elem> add;  // row-major size*size
        std::vector<Elem> mul;  // row-major size*size
        Elem zero = 0;
        Elem one = 0;
        std::string name;
        std::string spec;
        std::vector<std::string> elem_names;  // optional; "e<i>" if empty
    };

    /// Validates table shape and index ranges only, so deliberately corrupted
    /// tables are still constructible; negation and unit caches are filled
    /// best-effort. All semantic laws live in check_axioms().
    explicit FiniteRing(Data d);

    std::size_t size() const { return size_; }
    Elem add(Elem a, Elem b) const { return add_[a * size_ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * size_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
    Elem zero() const { return zero_; }
    Elem one() const { return one_; }
    bool is_unit(Elem a) const { return unit_[a]; }

    /// a^k under ring multiplication; pow(a, 0) = 1.
    Elem pow(Elem a, unsigned k) const;

    /// Least k >= 1 with k*a = 0 (additive order).
    unsigned additive_order(Elem a) const;

    /// True when some power of a is zero.
    bool is_nilpotent(Elem a) const;

    const std::string& name() const { return name_; }
    const std::string& spec() const { return spec_; }
    const std::string& elem_name(Elem a) const { return names_[a]; }

    /// Greedy minimal set of elements that generates the ring together with
    /// 0 and 1 under addition and multiplication. Empty for Z/n-like rings.
    /// A map fixing 1 and commuting with add/mul is determined by its values
    /// here, which keeps hom checks and isomorphism search small.
    const std::vector<Elem>& generators() const { return gens_; }

private:
    std::size_t size_;
    Elem zero_, one_;
    std::vector<Elem> add_, mul_, neg_;
    std::vector<bool> unit_;
    std::string name_, spec_;
    std::vector<std::string> names_;
    std::vector<Elem> gens_;
};

/// One associativity/commutativity/distributivity/identity violation,
/// reported by the exhaustive axiom sweep.
struct AxiomViolation {
    std::string law;
    Elem a = 0, b = 0, c = 0;
    std::string describe(const FiniteRing& ring) const;
};

/// Exhaustive O(n^3) ring-axiom sweep. Returns the first violation in
/// canonical scan order, or nullopt when all axioms hold.
std::optional<AxiomViolation> check_axioms(const FiniteRing& ring);

/// Unit/zero-divisor/nilpotent/idempotent census of a ring.
struct RingStructure {
    std::vector<Elem> units;
    std::vector<Elem> zero_divisors;  // 0 included
    std::vector<Elem> nilradical;
    std::vector<Elem> idempotents;
};

RingStructure structure(const RingPtr& ring);

/// One local factor eR of a finite ring: the factor as a standalone ring,
/// the primitive idempotent that cuts it out, and the index translations.
struct LocalFactor {
    RingPtr ring;
    Elem idempotent = 0;             // in the parent ring
    std::vector<Elem> carrier;       // factor index -> parent element
    std::vector<Elem> projection;    // parent index -> factor index (r -> e*r)
};

/// Decomposition of a finite commutative ring into its local factors,
/// indexed by the primitive idempotents. The zero ring has no factors.
struct LocalDecomposition {
    RingPtr parent;
    std::vector<LocalFactor> factors;

    /// Inverse isomorphism: a tuple of factor elements maps to the sum of
    /// their carrier representatives in the parent.
    Elem embed(const std::vector<Elem>& factor_elems) const;
};

LocalDecomposition local_factors(const RingPtr& ring);

// Constructors. All validate against cfg.ring_size_cap.

/// Integers modulo n with canonical tables. Rejects n = 0.
RingPtr make_zmod(unsigned long n, const Config& cfg = {});

/// A monomial in a fixed variable list, as an exponent vector.
struct Monomial {
    std::vector<unsigned> exp;
    bool divides(const Monomial& m) const;
    Monomial times(const Monomial& m) const;
    unsigned degree() const;
    bool operator==(const Monomial&) const = default;
};

/// Standard monomials (those outside the monomial ideal) in basis order:
/// total degree ascending, then exponent vector lexicographically
/// descending. make_poly_quot indexes ring elements by base-p digits over
/// this basis; exposed so spec evaluation can map monomial literals to
/// element indices. Throws std::invalid_argument when the ideal misses a
/// power of some variable (infinite quotient).
std::vector<Monomial> standard_monomial_basis(std::size_t nvars,
                                              const std::vector<Monomial>& mono_gens);

/// F_p[vars]/(mono_gens) for prime p and a monomial ideal that contains a
/// power of every variable (so the quotient is finite). Elements are
/// coefficient vectors over the standard monomials outside the ideal;
/// products reduce by deleting monomials inside it.
RingPtr make_poly_quot(unsigned p, const std::vector<std::string>& vars,
                       const std::vector<Monomial>& mono_gens, const Config& cfg = {});

/// Trivial extension (idealization) A |x E on the carrier A x E with
/// (a1,e1)(a2,e2) = (a1 a2, a1 e2 + a2 e1). E must be a module over A.
RingPtr make_trivial_extension(const RingPtr& base, const ModulePtr& ext,
                               const Config& cfg = {});

/// Componentwise product ring on A x B.
RingPtr make_product(const RingPtr& a, const RingPtr& b, const Config& cfg = {});

/// Quotient of a ring by an ideal, with the canonical surjection.
struct QuotientRing {
    RingPtr ring;
    std::vector<Elem> projection;  // parent index -> quotient index
    std::vector<Elem> section;     // quotient index -> minimal coset representative
};

QuotientRing quotient_ring(const RingPtr& ring, const Ideal& ideal);

/// Copy of a ring with a new display name and spec string (same tables).
/// Composite constructors use this to attach the grammar text that built
/// them. An empty name keeps the original.
RingPtr rebadge(const RingPtr& ring, const std::string& name, const std::string& spec);

/// "x^2*y" style rendering against a variable name list; "1" for degree 0.
std::string render_monomial(const Monomial& m, const std::vector<std::string>& vars);

/// Cheap isomorphism pre-filter: size, additive-order multiset, and the
/// unit/idempotent/nilpotent counts.
struct RingFingerprint {
    std::size_t size = 0;
    std::vector<unsigned> additive_orders;  // sorted
    std::size_t units = 0, idempotents = 0, nilpotents = 0;
    bool operator==(const RingFingerprint&) const = default;
    bool operator<(const RingFingerprint& o) const;
};

RingFingerprint ring_fingerprint(const RingPtr& ring);

/// Ring isomorphism by exhaustive generator-image search: picks a minimal
/// generating set of the multiplicative-and-additive closure and tries all
/// image assignments, extending by closure with first-conflict rejection.
bool rings_isomorphic(const RingPtr& a, const RingPtr& b, const Config& cfg = {});

}  // namespace fqp

#pragma once

#include <vector>

#include "fqp/common.hpp"
#include "fqp/ring.hpp"

namespace fqp {

/// An ideal of a finite ring, stored as a membership mask plus the sorted
/// element list. `gens` is the generator list the ideal was built from and
/// may be empty for ideals produced by lattice operations.
struct Ideal {
    RingPtr ring;
    std::vector<bool> mask;       // membership by element index
    std::vector<Elem> elements;   // ascending
    std::vector<Elem> gens;

    std::size_t size() const { return elements.size(); }
    bool contains(Elem x) const { return mask[x]; }
};

Ideal zero_ideal(const RingPtr& ring);
Ideal unit_ideal(const RingPtr& ring);

/// Principal ideal aR = { a*r : r in R } (setwise; already closed).
Ideal principal(const RingPtr& ring, Elem a);

/// Least ideal containing gens: the sum of their principal ideals.
Ideal ideal_generated(const RingPtr& ring, const std::vector<Elem>& gens);

// Lattice algebra. Mixed-ring arguments are rejected.
Ideal sum(const Ideal& a, const Ideal& b);            // setwise {x + y}
Ideal intersect(const Ideal& a, const Ideal& b);
Ideal product(const Ideal& a, const Ideal& b);        // additive closure of {x*y}
bool ideal_contains(const Ideal& outer, const Ideal& inner);
bool ideal_equals(const Ideal& a, const Ideal& b);
bool comparable(const Ideal& a, const Ideal& b);

/// { r : r*x = 0 for every x in I }.
Ideal annihilator(const RingPtr& ring, const Ideal& ideal);

/// Annihilator of a single element.
Ideal annihilator_elem(const RingPtr& ring, Elem a);

/// True when some single element generates exactly I.
bool is_principal(const Ideal& ideal);

/// Every ideal of the ring: the closure of all principal ideals under
/// pairwise sum (in a finite ring every ideal is a finite sum of principal
/// ideals). Order: by cardinality, then element list. Throws CapExceeded
/// past cfg.ideal_count_cap.
std::vector<Ideal> all_ideals(const RingPtr& ring, const Config& cfg = {});

/// Maximal ideals, one per local factor: the pullback of the factor's
/// non-units. Order follows the factor order.
std::vector<Ideal> maximal_ideals(const RingPtr& ring);

/// Intersection of the maximal ideals. Equals the whole ring when there is
/// no maximal ideal (zero ring).
Ideal jacobson_radical(const RingPtr& ring);

/// Minimal generating set. Local ring: greedy lifts of a residue-field
/// basis of I/mI, smallest element index first. Non-local: concatenation
/// of the factorwise generating sets, embedded via the idempotents.
std::vector<Elem> minimal_generators(const RingPtr& ring, const Ideal& ideal);

}  // namespace fqp

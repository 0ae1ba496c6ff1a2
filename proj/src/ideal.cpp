#include "fqp/ideal.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fqp {

namespace {

Ideal from_mask(const RingPtr& ring, std::vector<bool> mask, std::vector<Elem> gens) {
    Ideal out;
    out.ring = ring;
    out.mask = std::move(mask);
    for (Elem x = 0; x < ring->size(); ++x)
        if (out.mask[x]) out.elements.push_back(x);
    out.gens = std::move(gens);
    return out;
}

void require_same_ring(const Ideal& a, const Ideal& b) {
    if (a.ring.get() != b.ring.get())
        throw std::invalid_argument("ideal algebra: operands over different rings");
}

// Whether `gens` is trustworthy as a generating set (the zero ideal is
// honestly generated by the empty set).
bool gens_known(const Ideal& i) { return !i.gens.empty() || i.size() == 1; }

}  // namespace

Ideal zero_ideal(const RingPtr& ring) {
    std::vector<bool> mask(ring->size(), false);
    mask[ring->zero()] = true;
    return from_mask(ring, std::move(mask), {});
}

Ideal unit_ideal(const RingPtr& ring) {
    return principal(ring, ring->one());
}

Ideal principal(const RingPtr& ring, Elem a) {
    std::vector<bool> mask(ring->size(), false);
    for (Elem r = 0; r < ring->size(); ++r) mask[ring->mul(a, r)] = true;
    return from_mask(ring, std::move(mask), {a});
}

Ideal ideal_generated(const RingPtr& ring, const std::vector<Elem>& gens) {
    Ideal acc = zero_ideal(ring);
    for (Elem g : gens) acc = sum(acc, principal(ring, g));
    acc.gens = gens;
    return acc;
}

Ideal sum(const Ideal& a, const Ideal& b) {
    require_same_ring(a, b);
    const RingPtr& ring = a.ring;
    std::vector<bool> mask(ring->size(), false);
    for (Elem x : a.elements)
        for (Elem y : b.elements) mask[ring->add(x, y)] = true;
    std::vector<Elem> gens;
    if (gens_known(a) && gens_known(b)) {
        gens = a.gens;
        gens.insert(gens.end(), b.gens.begin(), b.gens.end());
    }
    return from_mask(ring, std::move(mask), std::move(gens));
}

Ideal intersect(const Ideal& a, const Ideal& b) {
    require_same_ring(a, b);
    std::vector<bool> mask(a.ring->size(), false);
    for (Elem x : a.elements)
        if (b.mask[x]) mask[x] = true;
    return from_mask(a.ring, std::move(mask), {});
}

Ideal product(const Ideal& a, const Ideal& b) {
    require_same_ring(a, b);
    const RingPtr& ring = a.ring;
    const std::size_t n = ring->size();
    std::vector<bool> mask(n, false);
    std::vector<Elem> work;
    auto push = [&](Elem x) {
        if (!mask[x]) {
            mask[x] = true;
            work.push_back(x);
        }
    };
    for (Elem x : a.elements)
        for (Elem y : b.elements) push(ring->mul(x, y));
    // The product set is closed under ring multiplication and negation;
    // closing under addition yields the ideal it generates.
    for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) push(ring->add(work[i], work[j]));
    return from_mask(ring, std::move(mask), {});
}

bool ideal_contains(const Ideal& outer, const Ideal& inner) {
    require_same_ring(outer, inner);
    for (Elem x : inner.elements)
        if (!outer.mask[x]) return false;
    return true;
}

bool ideal_equals(const Ideal& a, const Ideal& b) {
    require_same_ring(a, b);
    return a.mask == b.mask;
}

bool comparable(const Ideal& a, const Ideal& b) {
    return ideal_contains(a, b) || ideal_contains(b, a);
}

Ideal annihilator(const RingPtr& ring, const Ideal& ideal) {
    std::vector<bool> mask(ring->size(), false);
    for (Elem r = 0; r < ring->size(); ++r) {
        bool kills = true;
        for (Elem x : ideal.elements)
            if (ring->mul(r, x) != ring->zero()) {
                kills = false;
                break;
            }
        mask[r] = kills;
    }
    return from_mask(ring, std::move(mask), {});
}

Ideal annihilator_elem(const RingPtr& ring, Elem a) {
    std::vector<bool> mask(ring->size(), false);
    for (Elem r = 0; r < ring->size(); ++r) mask[r] = ring->mul(r, a) == ring->zero();
    return from_mask(ring, std::move(mask), {});
}

bool is_principal(const Ideal& ideal) {
    const RingPtr& ring = ideal.ring;
    for (Elem a : ideal.elements) {
        std::vector<bool> mask(ring->size(), false);
        for (Elem r = 0; r < ring->size(); ++r) mask[ring->mul(a, r)] = true;
        if (mask == ideal.mask) return true;
    }
    return false;
}

std::vector<Ideal> all_ideals(const RingPtr& ring, const Config& cfg) {
    cfg.validate();
    std::map<std::vector<bool>, std::size_t> seen;
    std::vector<Ideal> found;
    auto insert = [&](Ideal&& i) {
        if (seen.count(i.mask)) return;
        seen.emplace(i.mask, found.size());
        found.push_back(std::move(i));
        if (found.size() > cfg.ideal_count_cap)
            throw CapExceeded("all_ideals: ideal count cap exceeded");
    };
    for (Elem a = 0; a < ring->size(); ++a) insert(principal(ring, a));
    // Close under pairwise sum; every ideal of a finite ring is a finite sum
    // of principal ideals, so the closure is the whole lattice.
    for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (ideal_contains(found[i], found[j]) || ideal_contains(found[j], found[i]))
                continue;
            insert(sum(found[i], found[j]));
        }
    std::sort(found.begin(), found.end(), [](const Ideal& a, const Ideal& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.elements < b.elements;
    });
    return found;
}

std::vector<Ideal> maximal_ideals(const RingPtr& ring) {
    LocalDecomposition dec = local_factors(ring);
    std::vector<Ideal> out;
    for (const LocalFactor& f : dec.factors) {
        std::vector<bool> mask(ring->size(), false);
        for (Elem x = 0; x < ring->size(); ++x)
            mask[x] = !f.ring->is_unit(f.projection[x]);
        out.push_back(from_mask(ring, std::move(mask), {}));
    }
    return out;
}

Ideal jacobson_radical(const RingPtr& ring) {
    Ideal acc = unit_ideal(ring);
    for (const Ideal& m : maximal_ideals(ring)) acc = intersect(acc, m);
    acc.gens.clear();
    return acc;
}

namespace {

std::vector<Elem> minimal_generators_local(const RingPtr& ring, const Ideal& ideal) {
    // Residue-field basis of I/mI, lifted greedily smallest-first.
    std::vector<bool> nonunit_mask(ring->size(), false);
    for (Elem x = 0; x < ring->size(); ++x) nonunit_mask[x] = !ring->is_unit(x);
    Ideal m = from_mask(ring, std::move(nonunit_mask), {});
    Ideal covered = product(m, ideal);
    std::vector<Elem> gens;
    while (!ideal_equals(covered, ideal)) {
        Elem pick = 0;
        bool got = false;
        for (Elem x : ideal.elements)
            if (!covered.mask[x]) {
                pick = x;
                got = true;
                break;
            }
        if (!got) throw std::logic_error("minimal_generators: cover stalled below the ideal");
        gens.push_back(pick);
        covered = sum(covered, principal(ring, pick));
    }
    return gens;
}

}  // namespace

std::vector<Elem> minimal_generators(const RingPtr& ring, const Ideal& ideal) {
    if (ideal.ring.get() != ring.get())
        throw std::invalid_argument("minimal_generators: ideal over a different ring");
    if (ideal.size() <= 1) return {};
    LocalDecomposition dec = local_factors(ring);
    if (dec.factors.size() == 1) return minimal_generators_local(ring, ideal);
    std::vector<Elem> out;
    for (const LocalFactor& f : dec.factors) {
        std::vector<bool> fmask(f.ring->size(), false);
        for (Elem x : ideal.elements) fmask[f.projection[x]] = true;
        Ideal fi = from_mask(f.ring, std::move(fmask), {});
        for (Elem g : minimal_generators_local(f.ring, fi)) out.push_back(f.carrier[g]);
    }
    return out;
}

}  // namespace fqp

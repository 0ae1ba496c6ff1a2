#include "fqp/module.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "detail_cosets.hpp"

namespace fqp {

namespace {

// Hard bound on constructed module carriers; add/act tables are quadratic,
// so this tracks the default ring size cap rather than any cfg knob.
constexpr std::size_t kModuleSizeCap = 4096;

Ideal ideal_from_mask(const RingPtr& ring, std::vector<bool> mask) {
    Ideal out;
    out.ring = ring;
    out.mask = std::move(mask);
    for (Elem x = 0; x < ring->size(); ++x)
        if (out.mask[x]) out.elements.push_back(x);
    return out;
}

// In a finite abelian group, closure under addition alone is a subgroup.
void close_additively(const FiniteModule& m, std::vector<bool>& mask, std::vector<Elem>& work) {
    for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Elem s = m.add(work[i], work[j]);
            if (!mask[s]) {
                mask[s] = true;
                work.push_back(s);
            }
        }
}

unsigned mod_additive_order(const FiniteModule& m, Elem x) {
    unsigned k = 1;
    Elem c = x;
    while (c != m.zero()) {
        c = m.add(c, x);
        ++k;
    }
    return k;
}

Submodule submodule_from_mask(const ModulePtr& m, std::vector<bool> mask) {
    Submodule out;
    out.parent = m;
    out.mask = std::move(mask);
    for (Elem x = 0; x < m->size(); ++x)
        if (out.mask[x]) out.elements.push_back(x);
    return out;
}

}  // namespace

FiniteModule::FiniteModule(Data d)
    : ring_(std::move(d.ring)),
      size_(d.size),
      zero_(d.zero),
      add_(std::move(d.add)),
      act_(std::move(d.act)),
      name_(std::move(d.name)),
      names_(std::move(d.elem_names)) {
    if (!ring_) throw std::invalid_argument("module: missing base ring");
    if (size_ == 0) throw std::invalid_argument("module: size must be positive");
    if (add_.size() != size_ * size_)
        throw std::invalid_argument("module: add table shape mismatch");
    if (act_.size() != ring_->size() * size_)
        throw std::invalid_argument("module: act table shape mismatch");
    if (zero_ >= size_) throw std::invalid_argument("module: zero index out of range");
    for (Elem v : add_)
        if (v >= size_) throw std::invalid_argument("module: add entry out of range");
    for (Elem v : act_)
        if (v >= size_) throw std::invalid_argument("module: act entry out of range");
    if (!names_.empty() && names_.size() != size_)
        throw std::invalid_argument("module: element name count mismatch");
    if (names_.empty()) {
        names_.resize(size_);
        for (Elem a = 0; a < size_; ++a) names_[a] = "m" + std::to_string(a);
    }
    if (name_.empty()) name_ = "M";

    neg_.assign(size_, zero_);
    for (Elem a = 0; a < size_; ++a)
        for (Elem b = 0; b < size_; ++b)
            if (add(a, b) == zero_) {
                neg_[a] = b;
                break;
            }
}

std::optional<std::string> check_module_axioms(const ModulePtr& pm) {
    const FiniteModule& m = *pm;
    const FiniteRing& r = *m.ring();
    const std::size_t nm = m.size(), nr = r.size();
    auto at = [&](Elem a, Elem b) {
        return " at (" + m.elem_name(a) + ", " + m.elem_name(b) + ")";
    };
    for (Elem a = 0; a < nm; ++a) {
        if (m.add(a, m.zero()) != a) return "additive identity" + at(a, m.zero());
        bool inv = false;
        for (Elem b = 0; b < nm && !inv; ++b) inv = m.add(a, b) == m.zero();
        if (!inv) return "additive inverse missing for " + m.elem_name(a);
        if (m.act(r.one(), a) != a) return "unital action" + at(a, a);
    }
    for (Elem a = 0; a < nm; ++a)
        for (Elem b = a; b < nm; ++b)
            if (m.add(a, b) != m.add(b, a)) return "additive commutativity" + at(a, b);
    for (Elem a = 0; a < nm; ++a)
        for (Elem b = 0; b < nm; ++b)
            for (Elem c = 0; c < nm; ++c)
                if (m.add(m.add(a, b), c) != m.add(a, m.add(b, c)))
                    return "additive associativity" + at(a, b);
    for (Elem s = 0; s < nr; ++s) {
        for (Elem a = 0; a < nm; ++a)
            for (Elem b = 0; b < nm; ++b)
                if (m.act(s, m.add(a, b)) != m.add(m.act(s, a), m.act(s, b)))
                    return "action distributivity over module addition" + at(a, b);
        for (Elem t = 0; t < nr; ++t)
            for (Elem a = 0; a < nm; ++a) {
                if (m.act(r.add(s, t), a) != m.add(m.act(s, a), m.act(t, a)))
                    return "action distributivity over ring addition at " + m.elem_name(a);
                if (m.act(r.mul(s, t), a) != m.act(s, m.act(t, a)))
                    return "action associativity at " + m.elem_name(a);
            }
    }
    return std::nullopt;
}

ModulePtr zero_module(const RingPtr& ring) {
    FiniteModule::Data d;
    d.ring = ring;
    d.size = 1;
    d.add = {0};
    d.act.assign(ring->size(), 0);
    d.zero = 0;
    d.name = "0";
    d.elem_names = {"0"};
    return std::make_shared<const FiniteModule>(std::move(d));
}

ModulePtr module_from_ideal(const Ideal& ideal) {
    const RingPtr& ring = ideal.ring;
    const std::vector<Elem>& carrier = ideal.elements;
    const std::size_t nm = carrier.size();
    std::vector<Elem> pos(ring->size(), 0);
    for (std::size_t i = 0; i < nm; ++i) pos[carrier[i]] = static_cast<Elem>(i);

    FiniteModule::Data d;
    d.ring = ring;
    d.size = nm;
    d.add.resize(nm * nm);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < nm; ++j)
            d.add[i * nm + j] = pos[ring->add(carrier[i], carrier[j])];
    d.act.resize(ring->size() * nm);
    for (Elem r = 0; r < ring->size(); ++r)
        for (std::size_t i = 0; i < nm; ++i)
            d.act[r * nm + i] = pos[ring->mul(r, carrier[i])];
    d.zero = pos[ring->zero()];
    std::string gtxt;
    for (std::size_t i = 0; i < ideal.gens.size(); ++i)
        gtxt += (i ? "," : "") + ring->elem_name(ideal.gens[i]);
    d.name = ideal.gens.empty() ? "I|" + std::to_string(nm) + "|" : "(" + gtxt + ")";
    d.elem_names.resize(nm);
    for (std::size_t i = 0; i < nm; ++i) d.elem_names[i] = ring->elem_name(carrier[i]);
    return std::make_shared<const FiniteModule>(std::move(d));
}

ModulePtr cyclic_module(const RingPtr& ring, const Ideal& j) {
    if (j.ring.get() != ring.get())
        throw std::invalid_argument("cyclic_module: ideal over a different ring");
    auto part = detail::coset_partition(ring->size(), j.elements,
                                        [&](Elem x, Elem y) { return ring->add(x, y); });
    const std::size_t q = part.section.size();
    FiniteModule::Data d;
    d.ring = ring;
    d.size = q;
    d.add.resize(q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            d.add[a * q + b] = part.projection[ring->add(part.section[a], part.section[b])];
    d.act.resize(ring->size() * q);
    for (Elem r = 0; r < ring->size(); ++r)
        for (std::size_t a = 0; a < q; ++a)
            d.act[r * q + a] = part.projection[ring->mul(r, part.section[a])];
    d.zero = part.projection[ring->zero()];
    std::string gtxt;
    for (std::size_t i = 0; i < j.gens.size(); ++i)
        gtxt += (i ? "," : "") + ring->elem_name(j.gens[i]);
    if (j.gens.empty() && j.size() > 1) gtxt = "|" + std::to_string(j.size()) + "|";
    d.name = "R/(" + gtxt + ")";
    d.elem_names.resize(q);
    for (std::size_t a = 0; a < q; ++a)
        d.elem_names[a] = "[" + ring->elem_name(part.section[a]) + "]";
    return std::make_shared<const FiniteModule>(std::move(d));
}

ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b) {
    if (a->ring().get() != b->ring().get())
        throw std::invalid_argument("direct_sum: summands over different rings");
    const std::size_t na = a->size(), nb = b->size();
    if (na > kModuleSizeCap / nb) throw CapExceeded("direct_sum: module size cap");
    const std::size_t n = na * nb;
    auto idx = [&](Elem x, Elem y) { return static_cast<Elem>(x * nb + y); };
    const RingPtr& ring = a->ring();

    FiniteModule::Data d;
    d.ring = ring;
    d.size = n;
    d.add.resize(n * n);
    for (Elem x1 = 0; x1 < na; ++x1)
        for (Elem y1 = 0; y1 < nb; ++y1)
            for (Elem x2 = 0; x2 < na; ++x2)
                for (Elem y2 = 0; y2 < nb; ++y2)
                    d.add[idx(x1, y1) * n + idx(x2, y2)] =
                        idx(a->add(x1, x2), b->add(y1, y2));
    d.act.resize(ring->size() * n);
    for (Elem r = 0; r < ring->size(); ++r)
        for (Elem x = 0; x < na; ++x)
            for (Elem y = 0; y < nb; ++y)
                d.act[r * n + idx(x, y)] = idx(a->act(r, x), b->act(r, y));
    d.zero = idx(a->zero(), b->zero());
    d.name = a->name() + " (+) " + b->name();
    d.elem_names.resize(n);
    for (Elem x = 0; x < na; ++x)
        for (Elem y = 0; y < nb; ++y)
            d.elem_names[idx(x, y)] = "(" + a->elem_name(x) + "," + b->elem_name(y) + ")";
    return std::make_shared<const FiniteModule>(std::move(d));
}

ModulePtr module_power(const ModulePtr& m, std::size_t n) {
    if (n == 0) return zero_module(m->ring());
    if (n == 1) return m;
    const std::size_t b = m->size();
    std::size_t s = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (s > kModuleSizeCap / b) throw CapExceeded("module_power: module size cap");
        s *= b;
    }
    std::vector<std::size_t> pw(n + 1, 1);
    for (std::size_t i = 0; i < n; ++i) pw[i + 1] = pw[i] * b;
    auto dig = [&](std::size_t x, std::size_t i) {
        return static_cast<Elem>(x / pw[i] % b);
    };
    const RingPtr& ring = m->ring();

    FiniteModule::Data d;
    d.ring = ring;
    d.size = s;
    d.add.resize(s * s);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y) {
            std::size_t out = 0;
            for (std::size_t i = 0; i < n; ++i) out += m->add(dig(x, i), dig(y, i)) * pw[i];
            d.add[x * s + y] = static_cast<Elem>(out);
        }
    d.act.resize(ring->size() * s);
    for (Elem r = 0; r < ring->size(); ++r)
        for (std::size_t x = 0; x < s; ++x) {
            std::size_t out = 0;
            for (std::size_t i = 0; i < n; ++i) out += m->act(r, dig(x, i)) * pw[i];
            d.act[r * s + x] = static_cast<Elem>(out);
        }
    std::size_t z = 0;
    for (std::size_t i = 0; i < n; ++i) z += static_cast<std::size_t>(m->zero()) * pw[i];
    d.zero = static_cast<Elem>(z);
    d.name = m->name() + "^" + std::to_string(n);
    d.elem_names.resize(s);
    for (std::size_t x = 0; x < s; ++x) {
        std::string nm = "(";
        for (std::size_t i = 0; i < n; ++i) nm += (i ? "," : "") + m->elem_name(dig(x, i));
        d.elem_names[x] = nm + ")";
    }
    return std::make_shared<const FiniteModule>(std::move(d));
}

Ideal module_annihilator(const ModulePtr& m) {
    const RingPtr& ring = m->ring();
    std::vector<bool> mask(ring->size(), false);
    for (Elem r = 0; r < ring->size(); ++r) {
        bool kills = true;
        for (Elem x = 0; x < m->size() && kills; ++x) kills = m->act(r, x) == m->zero();
        mask[r] = kills;
    }
    return ideal_from_mask(ring, std::move(mask));
}

Submodule submodule_span(const ModulePtr& m, const std::vector<Elem>& gens) {
    const std::size_t nm = m->size(), nr = m->ring()->size();
    std::vector<bool> mask(nm, false);
    std::vector<Elem> work;
    auto push = [&](Elem x) {
        if (!mask[x]) {
            mask[x] = true;
            work.push_back(x);
        }
    };
    push(m->zero());
    for (Elem g : gens) push(g);
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (Elem r = 0; r < nr; ++r) push(m->act(r, work[i]));
        for (std::size_t j = 0; j <= i; ++j) push(m->add(work[i], work[j]));
    }
    return submodule_from_mask(m, std::move(mask));
}

Submodule full_submodule(const ModulePtr& m) {
    return submodule_from_mask(m, std::vector<bool>(m->size(), true));
}

std::vector<Submodule> submodules(const ModulePtr& m, const Config& cfg) {
    cfg.validate();
    std::map<std::vector<bool>, std::size_t> seen;
    std::vector<Submodule> found;
    auto insert = [&](Submodule&& s) {
        if (seen.count(s.mask)) return;
        seen.emplace(s.mask, found.size());
        found.push_back(std::move(s));
        if (found.size() > cfg.ideal_count_cap)
            throw CapExceeded("submodules: submodule count cap exceeded");
    };
    for (Elem x = 0; x < m->size(); ++x) insert(submodule_span(m, {x}));
    for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            bool skip = true;
            for (Elem x : found[j].elements)
                if (!found[i].mask[x]) {
                    skip = false;
                    break;
                }
            if (skip) continue;  // j inside i; their sum is already present
            std::vector<bool> mask(m->size(), false);
            for (Elem x : found[i].elements)
                for (Elem y : found[j].elements) mask[m->add(x, y)] = true;
            insert(submodule_from_mask(m, std::move(mask)));
        }
    std::sort(found.begin(), found.end(), [](const Submodule& a, const Submodule& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.elements < b.elements;
    });
    return found;
}

QuotientModule quotient_module(const ModulePtr& m, const Submodule& n) {
    if (n.parent.get() != m.get())
        throw std::invalid_argument("quotient_module: submodule of a different module");
    auto part = detail::coset_partition(m->size(), n.elements,
                                        [&](Elem x, Elem y) { return m->add(x, y); });
    const std::size_t q = part.section.size();
    const RingPtr& ring = m->ring();

    FiniteModule::Data d;
    d.ring = ring;
    d.size = q;
    d.add.resize(q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            d.add[a * q + b] = part.projection[m->add(part.section[a], part.section[b])];
    d.act.resize(ring->size() * q);
    for (Elem r = 0; r < ring->size(); ++r)
        for (std::size_t a = 0; a < q; ++a)
            d.act[r * q + a] = part.projection[m->act(r, part.section[a])];
    d.zero = part.projection[m->zero()];
    d.name = m->name() + "/|" + std::to_string(n.size()) + "|";
    d.elem_names.resize(q);
    for (std::size_t a = 0; a < q; ++a)
        d.elem_names[a] = "[" + m->elem_name(part.section[a]) + "]";

    QuotientModule out;
    out.module = std::make_shared<const FiniteModule>(std::move(d));
    out.projection = std::move(part.projection);
    out.section = std::move(part.section);
    return out;
}

ModulePtr quotient_scalars(const ModulePtr& m, const Ideal& k) {
    const RingPtr& ring = m->ring();
    if (k.ring.get() != ring.get())
        throw std::invalid_argument("quotient_scalars: ideal over a different ring");

    // KM as a submodule (additive closure of { k*x } suffices).
    std::vector<bool> kmask(m->size(), false);
    std::vector<Elem> kwork;
    auto push = [&](Elem x) {
        if (!kmask[x]) {
            kmask[x] = true;
            kwork.push_back(x);
        }
    };
    push(m->zero());
    for (Elem kk : k.elements)
        for (Elem x = 0; x < m->size(); ++x) push(m->act(kk, x));
    close_additively(*m, kmask, kwork);
    std::vector<Elem> km_elems;
    for (Elem x = 0; x < m->size(); ++x)
        if (kmask[x]) km_elems.push_back(x);

    QuotientRing qr = quotient_ring(ring, k);
    auto part = detail::coset_partition(m->size(), km_elems,
                                        [&](Elem x, Elem y) { return m->add(x, y); });
    const std::size_t q = part.section.size();
    const std::size_t nr = qr.ring->size();

    FiniteModule::Data d;
    d.ring = qr.ring;
    d.size = q;
    d.add.resize(q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            d.add[a * q + b] = part.projection[m->add(part.section[a], part.section[b])];
    d.act.resize(nr * q);
    for (Elem r = 0; r < nr; ++r)
        for (std::size_t a = 0; a < q; ++a)
            d.act[r * q + a] = part.projection[m->act(qr.section[r], part.section[a])];
    d.zero = part.projection[m->zero()];
    d.name = m->name() + " over " + qr.ring->name();
    d.elem_names.resize(q);
    for (std::size_t a = 0; a < q; ++a)
        d.elem_names[a] = "[" + m->elem_name(part.section[a]) + "]";
    return std::make_shared<const FiniteModule>(std::move(d));
}

namespace {

// Per local factor of the base ring: the component e_i M and a greedy
// minimal generating set of it over the factor (Nakayama lifts of an
// M_i / m_i M_i residue basis, smallest element index first).
struct FactorComponent {
    std::vector<Elem> elems;  // ascending, inside the parent module
    std::vector<Elem> gens;
};

std::vector<FactorComponent> factor_components(const FiniteModule& m,
                                               const LocalDecomposition& dec) {
    const RingPtr& ring = dec.parent;
    std::vector<FactorComponent> out;
    for (const LocalFactor& f : dec.factors) {
        FactorComponent comp;
        std::vector<bool> cmask(m.size(), false);
        for (Elem x = 0; x < m.size(); ++x) cmask[m.act(f.idempotent, x)] = true;
        for (Elem x = 0; x < m.size(); ++x)
            if (cmask[x]) comp.elems.push_back(x);

        // Pullback of the factor's maximal ideal; the other factors act as
        // zero on this component, so J * M_i = m_i * M_i.
        std::vector<Elem> jelems;
        for (Elem r = 0; r < ring->size(); ++r)
            if (!f.ring->is_unit(f.projection[r])) jelems.push_back(r);

        std::vector<bool> vmask(m.size(), false);
        std::vector<Elem> vwork;
        auto push = [&](Elem x) {
            if (!vmask[x]) {
                vmask[x] = true;
                vwork.push_back(x);
            }
        };
        push(m.zero());
        for (Elem t : jelems)
            for (Elem y : comp.elems) push(m.act(t, y));
        close_additively(m, vmask, vwork);

        std::size_t covered = vwork.size();
        while (covered < comp.elems.size()) {
            Elem pick = 0;
            bool got = false;
            for (Elem y : comp.elems)
                if (!vmask[y]) {
                    pick = y;
                    got = true;
                    break;
                }
            if (!got) throw std::logic_error("factor_components: cover stalled");
            comp.gens.push_back(pick);
            for (Elem r = 0; r < ring->size(); ++r) push(m.act(r, pick));
            close_additively(m, vmask, vwork);
            covered = vwork.size();
        }
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

std::vector<Elem> module_minimal_generators(const ModulePtr& m) {
    LocalDecomposition dec = local_factors(m->ring());
    std::vector<FactorComponent> comps = factor_components(*m, dec);
    std::size_t k = 0;
    for (const FactorComponent& c : comps) k = std::max(k, c.gens.size());
    std::vector<Elem> out;
    for (std::size_t j = 0; j < k; ++j) {
        Elem g = m->zero();
        for (const FactorComponent& c : comps)
            if (j < c.gens.size()) g = m->add(g, c.gens[j]);
        out.push_back(g);
    }
    return out;
}

std::vector<ModuleHom> homs(const ModulePtr& m, const ModulePtr& n, const Config& cfg) {
    cfg.validate();
    if (m->ring().get() != n->ring().get())
        throw std::invalid_argument("homs: modules over different rings");
    const FiniteRing& ring = *m->ring();
    const std::size_t nm = m->size(), nn = n->size();

    std::vector<Elem> gens = module_minimal_generators(m);
    const std::size_t k = gens.size();
    if (k == 0) {
        ModuleHom zero{m, n, std::vector<Elem>(nm, n->zero())};
        return {zero};
    }

    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > cfg.candidate_cap / nn)
            throw CapExceeded("homs: candidate tuple cap exceeded");
        total *= nn;
    }

    // rep[x]: coefficients over gens with x = sum_j rep[x][j] * gens[j],
    // found by staged reachability (stage t spends gens[t] on everything
    // reachable from earlier stages; ascending scan keeps it deterministic).
    std::vector<std::vector<Elem>> rep(nm);
    std::vector<bool> have(nm, false);
    rep[m->zero()].assign(k, ring.zero());
    have[m->zero()] = true;
    std::vector<Elem> reach{m->zero()};
    for (std::size_t t = 0; t < k; ++t) {
        std::vector<Elem> added;
        for (Elem y : reach)
            for (Elem r = 0; r < ring.size(); ++r) {
                Elem x = m->add(y, m->act(r, gens[t]));
                if (!have[x]) {
                    have[x] = true;
                    rep[x] = rep[y];
                    rep[x][t] = r;
                    added.push_back(x);
                }
            }
        reach.insert(reach.end(), added.begin(), added.end());
        std::sort(reach.begin(), reach.end());
    }
    for (Elem x = 0; x < nm; ++x)
        if (!have[x]) throw std::logic_error("homs: generators do not reach every element");

    const std::vector<Elem>& rgens = ring.generators();
    std::vector<std::vector<Elem>> tables;
    std::vector<Elem> c(k, 0);
    std::vector<Elem> map(nm);
    while (true) {
        // Linear extension of gens[j] -> c[j].
        for (Elem x = 0; x < nm; ++x) {
            Elem acc = n->zero();
            for (std::size_t j = 0; j < k; ++j) acc = n->add(acc, n->act(rep[x][j], c[j]));
            map[x] = acc;
        }
        bool ok = true;
        for (Elem x = 0; x < nm && ok; ++x)
            for (Elem y = x; y < nm; ++y)
                if (map[m->add(x, y)] != n->add(map[x], map[y])) {
                    ok = false;
                    break;
                }
        // Scalar compatibility needs only the ring's generators: the set of
        // compatible scalars is a subring once the map is additive.
        for (std::size_t gi = 0; gi < rgens.size() && ok; ++gi)
            for (Elem x = 0; x < nm; ++x)
                if (map[m->act(rgens[gi], x)] != n->act(rgens[gi], map[x])) {
                    ok = false;
                    break;
                }
        if (ok) tables.push_back(map);

        std::size_t j = 0;
        for (; j < k; ++j) {
            if (c[j] + 1 < nn) {
                ++c[j];
                break;
            }
            c[j] = 0;
        }
        if (j == k) break;
    }

    std::sort(tables.begin(), tables.end());
    tables.erase(std::unique(tables.begin(), tables.end()), tables.end());
    std::vector<ModuleHom> out;
    out.reserve(tables.size());
    for (std::vector<Elem>& t : tables) out.push_back(ModuleHom{m, n, std::move(t)});
    return out;
}

bool is_projective(const ModulePtr& m) {
    LocalDecomposition dec = local_factors(m->ring());
    std::vector<FactorComponent> comps = factor_components(*m, dec);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        // Free over a local factor iff |M_i| = |R_i|^(minimal generators):
        // the minimal surjection R_i^k -> M_i is then a bijection.
        const std::size_t base = dec.factors[i].ring->size();
        const std::size_t want = comps[i].elems.size();
        std::size_t have = 1;
        for (std::size_t j = 0; j < comps[i].gens.size(); ++j) {
            if (have > want) break;
            have *= base;
        }
        if (have != want) return false;
    }
    return true;
}

bool is_quasi_projective(const ModulePtr& m) {
    Ideal ann = module_annihilator(m);
    if (ann.size() == 1) return is_projective(m);
    return is_projective(quotient_scalars(m, ann));
}

OracleResult quasi_projective_oracle(const ModulePtr& m, const Config& cfg) {
    cfg.validate();
    if (m->size() > cfg.oracle_module_cap)
        throw CapExceeded("quasi_projective_oracle: module size cap");
    if (module_minimal_generators(m).size() > cfg.oracle_generator_cap)
        throw CapExceeded("quasi_projective_oracle: generator count cap");

    OracleResult res;
    std::vector<ModuleHom> endos = homs(m, m, cfg);
    for (Submodule& sub : submodules(m, cfg)) {
        ++res.submodules_checked;
        QuotientModule q = quotient_module(m, sub);
        std::vector<std::vector<Elem>> pushed;
        pushed.reserve(endos.size());
        for (const ModuleHom& f : endos) {
            std::vector<Elem> t(m->size());
            for (Elem x = 0; x < m->size(); ++x) t[x] = q.projection[f.map[x]];
            pushed.push_back(std::move(t));
        }
        std::sort(pushed.begin(), pushed.end());
        for (ModuleHom& h : homs(m, q.module, cfg)) {
            if (std::binary_search(pushed.begin(), pushed.end(), h.map)) continue;
            res.quasi_projective = false;
            res.witness_submodule = std::move(sub);
            res.witness_hom = std::move(h);
            return res;
        }
    }
    res.quasi_projective = true;
    return res;
}

bool is_relatively_projective(const ModulePtr& v, const ModulePtr& m, const Config& cfg) {
    cfg.validate();
    if (v->ring().get() != m->ring().get())
        throw std::invalid_argument("is_relatively_projective: modules over different rings");
    std::vector<ModuleHom> lifts = homs(v, m, cfg);
    for (const Submodule& sub : submodules(m, cfg)) {
        QuotientModule q = quotient_module(m, sub);
        std::vector<std::vector<Elem>> pushed;
        pushed.reserve(lifts.size());
        for (const ModuleHom& f : lifts) {
            std::vector<Elem> t(v->size());
            for (Elem x = 0; x < v->size(); ++x) t[x] = q.projection[f.map[x]];
            pushed.push_back(std::move(t));
        }
        std::sort(pushed.begin(), pushed.end());
        for (const ModuleHom& h : homs(v, q.module, cfg))
            if (!std::binary_search(pushed.begin(), pushed.end(), h.map)) return false;
    }
    return true;
}

std::optional<std::vector<ModuleHom>> split_identity(const ModulePtr& m,
                                                     const std::vector<Submodule>& parts,
                                                     const Config& cfg) {
    cfg.validate();
    if (parts.empty()) throw std::invalid_argument("split_identity: no parts");
    for (const Submodule& p : parts)
        if (p.parent.get() != m.get())
            throw std::invalid_argument("split_identity: part of a different module");

    const std::size_t nm = m->size(), t = parts.size();
    // Suffix sums of the parts: suffix[i] = parts[i] + ... + parts[t-1].
    std::vector<std::vector<bool>> suffix(t + 1);
    suffix[t].assign(nm, false);
    suffix[t][m->zero()] = true;
    for (std::size_t i = t; i-- > 0;) {
        std::vector<bool> mask(nm, false);
        for (Elem x = 0; x < nm; ++x) {
            if (!suffix[i + 1][x]) continue;
            for (Elem y : parts[i].elements) mask[m->add(x, y)] = true;
        }
        suffix[i] = std::move(mask);
    }
    for (Elem x = 0; x < nm; ++x)
        if (!suffix[0][x]) throw std::invalid_argument("split_identity: parts do not sum to M");

    std::vector<ModuleHom> endos = homs(m, m, cfg);
    std::vector<std::vector<std::size_t>> cands(t);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t e = 0; e < endos.size(); ++e) {
            bool inside = true;
            for (Elem x = 0; x < nm && inside; ++x) inside = parts[i].mask[endos[e].map[x]];
            if (inside) cands[i].push_back(e);
        }

    std::vector<std::size_t> chosen(t);
    std::vector<std::vector<Elem>> partial(t + 1);
    partial[0].assign(nm, m->zero());

    // Depth-first over candidate indices in order, so the first solution is
    // canonical. The residue id - partial must stay inside the suffix span.
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == t) {
            for (Elem x = 0; x < nm; ++x)
                if (partial[t][x] != x) return false;
            return true;
        }
        for (std::size_t e : cands[i]) {
            bool feasible = true;
            std::vector<Elem> next(nm);
            for (Elem x = 0; x < nm; ++x) {
                next[x] = m->add(partial[i][x], endos[e].map[x]);
                if (!suffix[i + 1][m->sub(x, next[x])]) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            chosen[i] = e;
            partial[i + 1] = std::move(next);
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;

    std::vector<ModuleHom> out;
    for (std::size_t i = 0; i < t; ++i) out.push_back(endos[chosen[i]]);
    return out;
}

bool are_isomorphic(const ModulePtr& a, const ModulePtr& b, const Config& cfg) {
    cfg.validate();
    if (a->ring().get() != b->ring().get())
        throw std::invalid_argument("are_isomorphic: modules over different rings");
    if (a.get() == b.get()) return true;
    if (a->size() != b->size()) return false;
    bool same_tables = a->zero() == b->zero();
    for (Elem x = 0; x < a->size() && same_tables; ++x)
        for (Elem y = 0; y < a->size(); ++y)
            if (a->add(x, y) != b->add(x, y)) {
                same_tables = false;
                break;
            }
    for (Elem r = 0; r < a->ring()->size() && same_tables; ++r)
        for (Elem x = 0; x < a->size(); ++x)
            if (a->act(r, x) != b->act(r, x)) {
                same_tables = false;
                break;
            }
    if (same_tables) return true;
    if (module_annihilator(a).mask != module_annihilator(b).mask) return false;
    std::vector<unsigned> oa, ob;
    for (Elem x = 0; x < a->size(); ++x) oa.push_back(mod_additive_order(*a, x));
    for (Elem x = 0; x < b->size(); ++x) ob.push_back(mod_additive_order(*b, x));
    std::sort(oa.begin(), oa.end());
    std::sort(ob.begin(), ob.end());
    if (oa != ob) return false;
    if (module_minimal_generators(a).size() != module_minimal_generators(b).size())
        return false;

    for (const ModuleHom& h : homs(a, b, cfg)) {
        std::vector<bool> hit(b->size(), false);
        bool bij = true;
        for (Elem x = 0; x < a->size() && bij; ++x) {
            if (hit[h.map[x]]) bij = false;
            hit[h.map[x]] = true;
        }
        if (bij) return true;
    }
    return false;
}

}  // namespace fqp

#include "fqp/deciders.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace fqp {

std::string to_string(WdimClass w) {
    switch (w) {
        case WdimClass::Zero: return "zero";
        case WdimClass::Infinite: return "infinite";
        case WdimClass::NotApplicable: return "not_applicable";
    }
    return "unknown";
}

std::string to_string(LocalFqpShape s) {
    switch (s) {
        case LocalFqpShape::NilSquareZero: return "nil-square-zero";
        case LocalFqpShape::Chained: return "chained";
        case LocalFqpShape::Both: return "both";
    }
    return "unknown";
}

const std::string* PropertyReport::witness_for(const std::string& flag) const {
    for (const auto& [f, w] : witnesses)
        if (f == flag) return &w;
    return nullptr;
}

bool is_local(const RingPtr& ring) {
    if (ring->size() == 1) return false;
    std::vector<Elem> nonunits;
    for (Elem a = 0; a < ring->size(); ++a)
        if (!ring->is_unit(a)) nonunits.push_back(a);
    for (Elem a : nonunits)
        for (Elem b : nonunits)
            if (ring->is_unit(ring->add(a, b))) return false;
    return true;
}

namespace {

// prin[a][x]: whether x lies in the principal ideal aR. Because x in aR is
// equivalent to xR inside aR, one bit decides principal-ideal containment,
// which keeps the pair scans below quadratic.
std::vector<std::vector<bool>> principal_masks(const FiniteRing& r) {
    std::vector<std::vector<bool>> prin(r.size(), std::vector<bool>(r.size(), false));
    for (Elem a = 0; a < r.size(); ++a)
        for (Elem x = 0; x < r.size(); ++x) prin[a][r.mul(a, x)] = true;
    return prin;
}

}  // namespace

bool is_chained(const RingPtr& ring, std::pair<Elem, Elem>* witness) {
    const FiniteRing& r = *ring;
    std::vector<std::vector<bool>> prin = principal_masks(r);
    for (Elem a = 0; a < r.size(); ++a)
        for (Elem b = a + 1; b < r.size(); ++b)
            if (!prin[a][b] && !prin[b][a]) {
                if (witness) *witness = {a, b};
                return false;
            }
    return true;
}

bool is_arithmetical(const RingPtr& ring, std::string* witness) {
    LocalDecomposition dec = local_factors(ring);
    for (std::size_t i = 0; i < dec.factors.size(); ++i) {
        std::pair<Elem, Elem> pairw;
        if (!is_chained(dec.factors[i].ring, &pairw)) {
            if (witness) {
                const FiniteRing& fr = *dec.factors[i].ring;
                *witness = "factor " + std::to_string(i) + " of the local decomposition: (" +
                           fr.elem_name(pairw.first) + ") and (" + fr.elem_name(pairw.second) +
                           ") are incomparable";
            }
            return false;
        }
    }
    return true;
}

bool is_gaussian(const RingPtr& ring, std::string* witness) {
    LocalDecomposition dec = local_factors(ring);
    for (std::size_t i = 0; i < dec.factors.size(); ++i) {
        const FiniteRing& r = *dec.factors[i].ring;
        std::vector<std::vector<bool>> prin = principal_masks(r);
        std::vector<Elem> sq(r.size());
        for (Elem a = 0; a < r.size(); ++a) sq[a] = r.mul(a, a);
        for (Elem a = 0; a < r.size(); ++a)
            for (Elem b = 0; b < r.size(); ++b) {
                Elem ab = r.mul(a, b);
                bool in_a = prin[sq[a]][ab] && prin[sq[a]][sq[b]];
                bool in_b = prin[sq[b]][ab] && prin[sq[b]][sq[a]];
                if (!in_a && !in_b) {
                    if (witness)
                        *witness = "factor " + std::to_string(i) + ": (a,b)^2 equals neither " +
                                   "(a^2) nor (b^2) for a = " + r.elem_name(a) +
                                   ", b = " + r.elem_name(b);
                    return false;
                }
                if (ab == r.zero()) {
                    if (in_a && sq[b] != r.zero()) {
                        if (witness)
                            *witness = "factor " + std::to_string(i) +
                                       ": a*b = 0 and (a,b)^2 = (a^2) but b^2 != 0 for a = " +
                                       r.elem_name(a) + ", b = " + r.elem_name(b);
                        return false;
                    }
                    if (in_b && sq[a] != r.zero()) {
                        if (witness)
                            *witness = "factor " + std::to_string(i) +
                                       ": a*b = 0 and (a,b)^2 = (b^2) but a^2 != 0 for a = " +
                                       r.elem_name(a) + ", b = " + r.elem_name(b);
                        return false;
                    }
                }
            }
    }
    return true;
}

std::optional<std::pair<std::vector<Elem>, std::vector<Elem>>> gaussian_content_witness(
    const RingPtr& ring, unsigned degree, const Config& cfg) {
    cfg.validate();
    const FiniteRing& r = *ring;
    const std::size_t n = r.size();
    const std::size_t len = degree + 1;

    std::size_t npolys = 1;
    for (std::size_t i = 0; i < len; ++i) {
        if (npolys > 65536 / n)
            throw CapExceeded("gaussian_content_witness: coefficient enumeration cap");
        npolys *= n;
    }

    std::vector<std::vector<bool>> prin = principal_masks(r);

    // Content ideal of a coefficient list: additive closure of the union of
    // the coefficients' principal ideals.
    auto content_mask = [&](const std::vector<Elem>& coeffs) {
        std::vector<bool> mask(n, false);
        std::vector<Elem> work;
        for (Elem c : coeffs)
            for (Elem x = 0; x < n; ++x) {
                Elem p = r.mul(c, x);
                if (!mask[p]) {
                    mask[p] = true;
                    work.push_back(p);
                }
            }
        for (std::size_t i = 0; i < work.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                Elem s = r.add(work[i], work[j]);
                if (!mask[s]) {
                    mask[s] = true;
                    work.push_back(s);
                }
            }
        return mask;
    };

    std::size_t pairs = 0;
    std::vector<Elem> f(len, 0), g(len, 0);
    std::vector<Elem> h(2 * degree + 1);
    while (true) {
        std::fill(g.begin(), g.end(), 0);
        while (true) {
            if (++pairs > cfg.content_pair_cap)
                throw CapExceeded("gaussian_content_witness: pair scan cap");
            for (std::size_t k = 0; k < h.size(); ++k) {
                Elem acc = r.zero();
                for (std::size_t i = 0; i < len; ++i) {
                    std::size_t j = k - i;
                    if (i <= k && j < len) acc = r.add(acc, r.mul(f[i], g[j]));
                }
                h[k] = acc;
            }
            // The content of f*g always sits inside c(f)c(g); the law fails
            // exactly when some generator product f_i g_j escapes c(f*g).
            bool quick_ok = true;
            for (std::size_t i = 0; i < len && quick_ok; ++i)
                for (std::size_t j = 0; j < len; ++j) {
                    Elem p = r.mul(f[i], g[j]);
                    bool inside = false;
                    for (Elem hk : h)
                        if (prin[hk][p]) {
                            inside = true;
                            break;
                        }
                    if (!inside) {
                        quick_ok = false;
                        break;
                    }
                }
            if (!quick_ok) {
                std::vector<bool> chfg = content_mask(h);
                for (std::size_t i = 0; i < len; ++i)
                    for (std::size_t j = 0; j < len; ++j)
                        if (!chfg[r.mul(f[i], g[j])]) return std::make_pair(f, g);
            }
            std::size_t d = 0;
            for (; d < len; ++d) {
                if (g[d] + 1 < n) {
                    ++g[d];
                    break;
                }
                g[d] = 0;
            }
            if (d == len) break;
        }
        std::size_t d = 0;
        for (; d < len; ++d) {
            if (f[d] + 1 < n) {
                ++f[d];
                break;
            }
            f[d] = 0;
        }
        if (d == len) break;
    }
    return std::nullopt;
}

FqpResult is_fqp(const RingPtr& ring, const Config& cfg) {
    cfg.validate();
    FqpResult res;
    std::vector<Ideal> ideals = all_ideals(ring, cfg);
    res.ideal_count = ideals.size();
    res.fqp = true;
    bool oracle_ok = true;
    for (const Ideal& i : ideals) {
        ModulePtr m = module_from_ideal(i);
        bool qp = is_quasi_projective(m);
        if (cfg.oracle_check) {
            try {
                OracleResult o = quasi_projective_oracle(m, cfg);
                ++res.oracle_checked;
                if (o.quasi_projective != qp)
                    throw std::logic_error(
                        "is_fqp: fast criterion disagrees with the brute-force check on an "
                        "ideal of size " +
                        std::to_string(i.size()) + " in " + ring->name());
            } catch (const CapExceeded& e) {
                res.caps_hit.push_back(e.what());
                oracle_ok = false;
            }
        }
        if (!qp && res.fqp) {
            res.fqp = false;
            res.witness_gens = minimal_generators(ring, i);
        }
    }
    res.oracle_verified =
        cfg.oracle_check && oracle_ok && res.oracle_checked == res.ideal_count;
    return res;
}

bool is_prufer(const RingPtr& ring, const Config& cfg) {
    cfg.validate();
    // Regular ideals must contain a regular element; on a finite ring a
    // regular element is a unit (multiplication by it is injective, hence
    // surjective), so R is the only regular ideal and it is free.
    for (Elem a = 0; a < ring->size(); ++a) {
        bool regular = true;
        for (Elem b = 0; b < ring->size() && regular; ++b)
            if (b != ring->zero() && ring->mul(a, b) == ring->zero()) regular = false;
        if (regular && !ring->is_unit(a))
            throw std::logic_error("is_prufer: regular non-unit in a finite ring");
    }
    return true;
}

bool is_total_quotient_ring(const RingPtr& ring) {
    for (Elem a = 0; a < ring->size(); ++a) {
        if (ring->is_unit(a)) continue;
        bool zd = false;
        for (Elem b = 0; b < ring->size() && !zd; ++b)
            zd = b != ring->zero() && ring->mul(a, b) == ring->zero();
        if (!zd) return false;
    }
    return true;
}

namespace {

bool ring_reduced(const FiniteRing& r) {
    for (Elem a = 0; a < r.size(); ++a)
        if (a != r.zero() && r.is_nilpotent(a)) return false;
    return true;
}

WdimClass wdim_impl(const RingPtr& ring, bool fqp, std::string* case_fired) {
    auto fire = [&](const std::string& s) {
        if (case_fired) *case_fired = s;
    };
    if (!fqp) {
        fire("not fqp");
        return WdimClass::NotApplicable;
    }
    const FiniteRing& r = *ring;
    if (ring_reduced(r)) {
        for (Elem a = 0; a < r.size(); ++a) {
            bool has_quasi_inverse = false;
            for (Elem x = 0; x < r.size() && !has_quasi_inverse; ++x)
                has_quasi_inverse = r.mul(r.mul(a, x), a) == a;
            if (!has_quasi_inverse)
                throw std::logic_error(
                    "wdim_classify: reduced fqp ring is not von Neumann regular");
        }
        fire("reduced; verified von Neumann regular");
        return WdimClass::Zero;
    }
    LocalDecomposition dec = local_factors(ring);
    for (std::size_t i = 0; i < dec.factors.size(); ++i) {
        const FiniteRing& f = *dec.factors[i].ring;
        std::vector<Elem> nil;
        for (Elem a = 0; a < f.size(); ++a)
            if (a != f.zero() && f.is_nilpotent(a)) nil.push_back(a);
        if (nil.empty()) continue;
        bool nil2zero = true;
        for (Elem x : nil)
            for (Elem y : nil)
                if (f.mul(x, y) != f.zero()) {
                    nil2zero = false;
                    break;
                }
        if (nil2zero) {
            fire("factor " + std::to_string(i) +
                 ": nonzero nilpotents with square-zero nilradical force an unbounded flat "
                 "resolution");
            return WdimClass::Infinite;
        }
        if (is_chained(dec.factors[i].ring)) {
            fire("factor " + std::to_string(i) +
                 ": chained with nonzero nilpotents forces an unbounded flat resolution");
            return WdimClass::Infinite;
        }
        throw std::logic_error(
            "wdim_classify: non-reduced fqp factor is neither nil-square-zero nor chained");
    }
    throw std::logic_error("wdim_classify: non-reduced ring has only reduced factors");
}

}  // namespace

WdimClass wdim_classify(const RingPtr& ring, const Config& cfg, std::string* case_fired) {
    return wdim_impl(ring, is_fqp(ring, cfg).fqp, case_fired);
}

IncomparablePairReport lemma38_inspect(const RingPtr& ring, Elem a, Elem b, const Config& cfg) {
    cfg.validate();
    IncomparablePairReport rep;
    Ideal pa = principal(ring, a);
    Ideal pb = principal(ring, b);
    // b in aR is exactly (b) inside (a), so two bits decide comparability.
    rep.applicable = !(pa.mask[b] || pb.mask[a]);
    if (!rep.applicable) return rep;
    rep.hypothesis = is_quasi_projective(module_from_ideal(ideal_generated(ring, {a, b})));
    rep.intersection_zero = intersect(pa, pb).size() == 1;
    rep.squares_zero = ring->mul(a, a) == ring->zero() && ring->mul(b, b) == ring->zero() &&
                       ring->mul(a, b) == ring->zero();
    rep.annihilators_equal =
        annihilator_elem(ring, a).mask == annihilator_elem(ring, b).mask;
    return rep;
}

LocalFqpShape fqp_dichotomy(const RingPtr& ring, const Config& cfg) {
    cfg.validate();
    if (!is_local(ring)) throw std::invalid_argument("fqp_dichotomy: ring is not local");
    if (!is_fqp(ring, cfg).fqp) throw std::invalid_argument("fqp_dichotomy: ring is not fqp");
    const FiniteRing& r = *ring;
    std::vector<Elem> nil;
    for (Elem a = 0; a < r.size(); ++a)
        if (r.is_nilpotent(a)) nil.push_back(a);
    bool nil2zero = true;
    for (Elem x : nil) {
        for (Elem y : nil)
            if (r.mul(x, y) != r.zero()) {
                nil2zero = false;
                break;
            }
        if (!nil2zero) break;
    }
    bool chained = is_chained(ring);
    if (nil2zero && chained) return LocalFqpShape::Both;
    if (nil2zero) return LocalFqpShape::NilSquareZero;
    if (chained) return LocalFqpShape::Chained;
    throw std::logic_error("fqp_dichotomy: local fqp ring fails both disjuncts");
}

namespace {

std::vector<std::string> dedup_keep_order(const std::vector<std::string>& in) {
    std::vector<std::string> out;
    for (const std::string& s : in)
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    return out;
}

}  // namespace

PropertyReport classify_ring(const RingPtr& ring, const Config& cfg) {
    cfg.validate();
    auto t0 = std::chrono::steady_clock::now();
    const FiniteRing& r = *ring;

    PropertyReport rep;
    rep.ring_name = r.name();
    rep.ring_spec = r.spec();
    rep.ring_size = r.size();

    rep.local = is_local(ring);
    std::pair<Elem, Elem> chain_pair{0, 0};
    rep.chained = is_chained(ring, &chain_pair);
    std::string arith_witness;
    rep.arithmetical = is_arithmetical(ring, &arith_witness);

    FqpResult fqp = is_fqp(ring, cfg);
    rep.fqp = fqp.fqp;
    rep.oracle_verified = fqp.oracle_verified;
    rep.oracle_checked = fqp.oracle_checked;
    rep.ideal_count = fqp.ideal_count;
    rep.caps_hit = dedup_keep_order(fqp.caps_hit);

    std::string gauss_witness;
    rep.gaussian = is_gaussian(ring, &gauss_witness);
    rep.prufer = is_prufer(ring, cfg);
    rep.reduced = ring_reduced(r);

    Elem vnr_witness = 0;
    rep.von_neumann_regular = true;
    for (Elem a = 0; a < r.size() && rep.von_neumann_regular; ++a) {
        bool has_quasi_inverse = false;
        for (Elem x = 0; x < r.size() && !has_quasi_inverse; ++x)
            has_quasi_inverse = r.mul(r.mul(a, x), a) == a;
        if (!has_quasi_inverse) {
            rep.von_neumann_regular = false;
            vnr_witness = a;
        }
    }
    rep.total_quotient_ring = is_total_quotient_ring(ring);

    std::string wdim_case;
    rep.wdim = wdim_impl(ring, fqp.fqp, &wdim_case);

    if (!rep.local) {
        std::string w = "zero ring";
        if (r.size() > 1) {
            w = "no nontrivial idempotent found despite non-locality";
            for (Elem e = 0; e < r.size(); ++e)
                if (e != r.zero() && e != r.one() && r.mul(e, e) == e) {
                    w = "nontrivial idempotent " + r.elem_name(e);
                    break;
                }
        }
        rep.witnesses.emplace_back("local", w);
    }
    if (!rep.chained)
        rep.witnesses.emplace_back("chained", "principal ideals (" +
                                                  r.elem_name(chain_pair.first) + ") and (" +
                                                  r.elem_name(chain_pair.second) +
                                                  ") are incomparable");
    if (!rep.arithmetical) rep.witnesses.emplace_back("arithmetical", arith_witness);
    if (!rep.fqp) {
        std::string gtxt;
        for (std::size_t i = 0; i < fqp.witness_gens.size(); ++i)
            gtxt += (i ? "," : "") + r.elem_name(fqp.witness_gens[i]);
        rep.witnesses.emplace_back("fqp", "ideal (" + gtxt + ") is not quasi-projective");
    }
    if (!rep.gaussian) rep.witnesses.emplace_back("gaussian", gauss_witness);
    if (!rep.prufer)
        rep.witnesses.emplace_back("prufer", "a finitely generated regular ideal failed");
    if (!rep.reduced) {
        for (Elem a = 0; a < r.size(); ++a)
            if (a != r.zero() && r.is_nilpotent(a)) {
                rep.witnesses.emplace_back("reduced", "nonzero nilpotent " + r.elem_name(a));
                break;
            }
    }
    if (!rep.von_neumann_regular)
        rep.witnesses.emplace_back("von_neumann_regular",
                                   "no quasi-inverse for " + r.elem_name(vnr_witness));
    if (!rep.total_quotient_ring) {
        for (Elem a = 0; a < r.size(); ++a) {
            if (r.is_unit(a)) continue;
            bool zd = false;
            for (Elem b = 0; b < r.size() && !zd; ++b)
                zd = b != r.zero() && r.mul(a, b) == r.zero();
            if (!zd) {
                rep.witnesses.emplace_back("total_quotient_ring",
                                           "regular non-unit " + r.elem_name(a));
                break;
            }
        }
    }
    rep.witnesses.emplace_back("wdim", wdim_case);

    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

}  // namespace fqp

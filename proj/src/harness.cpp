#include "fqp/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fqp/ideal.hpp"
#include "fqp/module.hpp"
#include "fqp/ringspec.hpp"

namespace fqp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

bool flag_bool(const PropertyReport& r, const std::string& flag) {
    if (flag == "local") return r.local;
    if (flag == "chained") return r.chained;
    if (flag == "arithmetical") return r.arithmetical;
    if (flag == "fqp") return r.fqp;
    if (flag == "gaussian") return r.gaussian;
    if (flag == "prufer") return r.prufer;
    if (flag == "reduced") return r.reduced;
    if (flag == "von_neumann_regular") return r.von_neumann_regular;
    if (flag == "total_quotient_ring") return r.total_quotient_ring;
    throw std::invalid_argument("unknown flag: " + flag);
}

std::string flag_value(const PropertyReport& r, const std::string& flag) {
    if (flag == "wdim") return to_string(r.wdim);
    return bool_text(flag_bool(r, flag));
}

void note_caps(VerificationReport& vr, const std::string& ring_name,
               const std::vector<std::string>& caps) {
    for (const auto& c : caps) vr.caps_hit.push_back(ring_name + ": " + c);
}

void note_cap(VerificationReport& vr, const std::string& ring_name, const std::string& what) {
    vr.caps_hit.push_back(ring_name + ": " + what);
}

void add_failure(VerificationReport& vr, std::string ring_name, std::string detail,
                 std::string expected, std::string got) {
    vr.failures.push_back(
        {std::move(ring_name), std::move(detail), std::move(expected), std::move(got)});
}

Ideal ideal_from_mask(const RingPtr& ring, const std::vector<bool>& mask) {
    Ideal out;
    out.ring = ring;
    out.mask = mask;
    for (Elem x = 0; x < ring->size(); ++x)
        if (mask[x]) out.elements.push_back(x);
    return out;
}

/// The maximal ideal of a local ring, straight from the unit predicate.
Ideal nonunit_ideal(const RingPtr& ring) {
    std::vector<bool> mask(ring->size(), false);
    for (Elem x = 0; x < ring->size(); ++x)
        if (!ring->is_unit(x)) mask[x] = true;
    return ideal_from_mask(ring, mask);
}

std::string ideal_label(const RingPtr& ring, const Ideal& ideal) {
    if (ideal.gens.empty()) return "ideal of size " + std::to_string(ideal.size());
    std::string s = "(";
    for (std::size_t i = 0; i < ideal.gens.size(); ++i) {
        if (i) s += ",";
        s += ring->elem_name(ideal.gens[i]);
    }
    return s + ")";
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

unsigned long smallest_prime_factor(unsigned long n) {
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

}  // namespace

std::vector<CorpusEntry> corpus_paper(const Config& cfg) {
    std::vector<CorpusEntry> out;
    auto push = [&](std::string name, std::string spec, std::string tag,
                    std::vector<std::pair<std::string, std::string>> expect) {
        CorpusEntry e;
        e.name = std::move(name);
        e.spec = std::move(spec);
        e.tag = std::move(tag);
        e.expect = std::move(expect);
        e.ring = build_ring(e.spec, cfg);
        out.push_back(std::move(e));
    };

    // Fixtures with pinned expectations.
    push("ex3.2", "Poly(2,[x,y],[x^2,x*y,y^2])", "paper-example",
         {{"local", "true"},
          {"arithmetical", "false"},
          {"fqp", "true"},
          {"gaussian", "true"},
          {"wdim", "infinite"}});
    push("ex3.3", "Poly(2,[x,y],[x^2,x*y,y^3])", "paper-example",
         {{"fqp", "false"}, {"gaussian", "true"}});
    push("ex4.5", "TrivExt(Z(8),[2],1)", "paper-example",
         {{"fqp", "false"}, {"gaussian", "true"}});
    push("ex4.6", "TrivExt(Z(4),[2],1)", "paper-example",
         {{"fqp", "true"}, {"arithmetical", "false"}});

    // Z/n for n <= 64.
    for (unsigned long n = 1; n <= 64; ++n) {
        std::vector<std::pair<std::string, std::string>> expect;
        if (n == 8) expect.push_back({"chained", "true"});
        push("zmod" + std::to_string(n), "Z(" + std::to_string(n) + ")", "family",
             std::move(expect));
    }

    // F_p[x_1..x_k]/m^2 for p in {2,3}, k in {1,2,3}.
    const std::vector<std::string> var_pool = {"x", "y", "z"};
    for (unsigned long p : {2ul, 3ul}) {
        for (std::size_t k = 1; k <= 3; ++k) {
            std::vector<std::string> vars(var_pool.begin(), var_pool.begin() + k);
            std::string gens;
            bool first = true;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i; j < k; ++j) {
                    if (!first) gens += ",";
                    first = false;
                    if (i == j)
                        gens += vars[i] + "^2";
                    else
                        gens += vars[i] + "*" + vars[j];
                }
            std::string vlist;
            for (std::size_t i = 0; i < k; ++i) {
                if (i) vlist += ",";
                vlist += vars[i];
            }
            push("trunc_p" + std::to_string(p) + "_k" + std::to_string(k),
                 "Poly(" + std::to_string(p) + ",[" + vlist + "],[" + gens + "])", "family", {});
        }
    }

    // Trivial extensions A |x (A/m)^j over the local Z/Poly bases of size
    // <= 16 built so far. Larger prime-field bases would blow through the
    // ring size cap at j = 2, so the base bound matches the suite bound.
    std::vector<std::pair<std::string, std::string>> bases;  // name, TrivExt argument text
    for (const auto& e : out) {
        if (e.ring->size() > 16 || !is_local(e.ring)) continue;
        RingSpecAst ast = parse_spec(e.spec);
        std::string lits;
        if (ast.kind == RingSpecAst::Kind::Zmod) {
            unsigned long p = smallest_prime_factor(ast.n);
            lits = (p == ast.n) ? "" : std::to_string(p);
        } else if (ast.kind == RingSpecAst::Kind::Poly) {
            for (std::size_t i = 0; i < ast.vars.size(); ++i) {
                if (i) lits += ",";
                lits += ast.vars[i];
            }
        } else {
            continue;  // the literal grammar stops at Z/Poly bases
        }
        bases.push_back({e.name, e.spec + ",[" + lits + "]"});
    }
    for (const auto& [bname, barg] : bases)
        for (unsigned j = 1; j <= 2; ++j)
            push("trivext_" + bname + "_j" + std::to_string(j),
                 "TrivExt(" + barg + "," + std::to_string(j) + ")", "family", {});

    // Pairwise products of a small representative set.
    const std::vector<std::string> reps = {"ex3.2", "ex3.3",  "ex4.5", "ex4.6",
                                           "zmod4", "zmod6", "zmod8", "zmod9"};
    auto spec_of = [&](const std::string& name) {
        for (const auto& e : out)
            if (e.name == name) return e.spec;
        throw std::logic_error("corpus_paper: missing representative " + name);
    };
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i; j < reps.size(); ++j)
            push("prod_" + reps[i] + "_" + reps[j],
                 "Prod(" + spec_of(reps[i]) + "," + spec_of(reps[j]) + ")", "family", {});

    return out;
}

std::vector<CorpusEntry> load_corpus_file(const std::string& path, const Config& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open corpus file: " + path);
    std::vector<CorpusEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        CorpusEntry e;
        e.tag = "file";
        std::string rest = line;
        auto colon = line.find(':');
        auto paren = line.find('(');
        if (colon != std::string::npos && (paren == std::string::npos || colon < paren)) {
            e.name = trim(line.substr(0, colon));
            rest = trim(line.substr(colon + 1));
        }
        auto expos = rest.find("expect{");
        if (expos != std::string::npos) {
            auto close = rest.find('}', expos);
            if (close == std::string::npos)
                throw std::invalid_argument("corpus file " + path + " line " +
                                            std::to_string(lineno) + ": unterminated expect{");
            std::string body = rest.substr(expos + 7, close - (expos + 7));
            rest = trim(rest.substr(0, expos));
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty()) continue;
                auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("corpus file " + path + " line " +
                                                std::to_string(lineno) +
                                                ": expect entry without '=': " + item);
                e.expect.push_back({trim(item.substr(0, eq)), trim(item.substr(eq + 1))});
            }
        }
        if (rest.empty())
            throw std::invalid_argument("corpus file " + path + " line " +
                                        std::to_string(lineno) + ": missing ring spec");
        e.spec = rest;
        if (e.name.empty()) e.name = rest;
        try {
            e.ring = build_ring(e.spec, cfg);
        } catch (const ParseError& pe) {
            throw std::invalid_argument("corpus file " + path + " line " +
                                        std::to_string(lineno) + ": " + pe.what());
        }
        out.push_back(std::move(e));
    }
    return out;
}

VerificationReport verify_chain(const std::vector<CorpusEntry>& corpus, const Config& cfg) {
    auto t0 = Clock::now();
    VerificationReport vr;
    vr.suite = "chain";
    for (const auto& entry : corpus) {
        ++vr.rings_covered;
        ++vr.instances;
        if (entry.ring->size() <= cfg.axiom_size_cap) {
            if (auto v = check_axioms(*entry.ring)) {
                add_failure(vr, entry.name, "axiom sweep: " + v->describe(*entry.ring),
                            "all ring laws hold", v->law);
                continue;  // a broken table makes the property phase meaningless
            }
        } else {
            note_cap(vr, entry.name,
                     "axiom sweep skipped (size " + std::to_string(entry.ring->size()) +
                         " > axiom_size_cap)");
        }

        PropertyReport rep = classify_ring(entry.ring, cfg);
        note_caps(vr, entry.name, rep.caps_hit);

        if (rep.chained && !rep.arithmetical)
            add_failure(vr, entry.name, "hierarchy: chained but not arithmetical", "arithmetical",
                        "not arithmetical");
        if (rep.arithmetical && !rep.fqp)
            add_failure(vr, entry.name, "hierarchy: arithmetical but not fqp", "fqp", "not fqp");
        if (rep.fqp && !rep.gaussian)
            add_failure(vr, entry.name, "hierarchy: fqp but not Gaussian", "gaussian",
                        "not gaussian");
        if (rep.gaussian && !rep.prufer)
            add_failure(vr, entry.name, "hierarchy: Gaussian but not Prufer", "prufer",
                        "not prufer");

        for (const auto& [flag, want] : entry.expect) {
            std::string got = flag_value(rep, flag);
            if (got != want)
                add_failure(vr, entry.name, "expected flag '" + flag + "'", want, got);
        }
    }
    vr.elapsed_ms = ms_since(t0);
    return vr;
}

VerificationReport verify_oracle_equivalence(const std::vector<CorpusEntry>& corpus,
                                             const Config& cfg) {
    auto t0 = Clock::now();
    VerificationReport vr;
    vr.suite = "oracle-equivalence";
    for (const auto& entry : corpus) {
        std::vector<Ideal> ideals;
        try {
            ideals = all_ideals(entry.ring, cfg);
        } catch (const CapExceeded& e) {
            note_cap(vr, entry.name, e.what());
            continue;
        }
        bool covered = false;
        for (const auto& ideal : ideals) {
            ModulePtr m = module_from_ideal(ideal);
            bool fast = is_quasi_projective(m);
            OracleResult oracle;
            try {
                oracle = quasi_projective_oracle(m, cfg);
            } catch (const CapExceeded& e) {
                note_cap(vr, entry.name, ideal_label(entry.ring, ideal) + ": " + e.what());
                continue;
            }
            ++vr.instances;
            covered = true;
            if (fast != oracle.quasi_projective)
                add_failure(vr, entry.name,
                            "criterion vs oracle on " + ideal_label(entry.ring, ideal),
                            std::string("criterion=") + bool_text(fast),
                            std::string("oracle=") + bool_text(oracle.quasi_projective));
        }
        if (covered) ++vr.rings_covered;
    }
    vr.elapsed_ms = ms_since(t0);
    return vr;
}

VerificationReport verify_lemma38(const std::vector<CorpusEntry>& corpus, const Config& cfg) {
    auto t0 = Clock::now();
    VerificationReport vr;
    vr.suite = "incomparable-pairs";
    for (const auto& entry : corpus) {
        const RingPtr& r = entry.ring;
        if (!is_local(r)) continue;
        ++vr.rings_covered;
        const std::size_t n = r->size();
        const Elem z = r->zero();

        std::vector<std::vector<bool>> prin(n, std::vector<bool>(n, false));
        for (Elem a = 0; a < n; ++a)
            for (Elem x = 0; x < n; ++x) prin[a][r->mul(a, x)] = true;
        std::vector<Elem> canon(n, 0);
        for (Elem a = 0; a < n; ++a)
            for (Elem x = 0; x < n; ++x)
                if (prin[a][x] && prin[x][a]) {
                    canon[a] = x;
                    break;
                }
        std::vector<std::vector<bool>> ann(n, std::vector<bool>(n, false));
        for (Elem a = 0; a < n; ++a)
            for (Elem x = 0; x < n; ++x)
                if (r->mul(a, x) == z) ann[a][x] = true;

        std::map<std::pair<Elem, Elem>, bool> qp_by_pair;
        std::map<std::vector<bool>, bool> qp_by_mask;
        unsigned crosschecks = 0;
        for (Elem a = 0; a < n; ++a) {
            if (a == z) continue;
            for (Elem b = a + 1; b < n; ++b) {
                if (b == z) continue;
                if (prin[a][b] || prin[b][a]) continue;  // comparable: out of scope
                ++vr.instances;

                std::pair<Elem, Elem> key{std::min(canon[a], canon[b]),
                                          std::max(canon[a], canon[b])};
                auto it = qp_by_pair.find(key);
                bool hyp;
                if (it != qp_by_pair.end()) {
                    hyp = it->second;
                } else {
                    Ideal two = ideal_generated(r, {key.first, key.second});
                    auto mit = qp_by_mask.find(two.mask);
                    if (mit != qp_by_mask.end()) {
                        hyp = mit->second;
                    } else {
                        hyp = is_quasi_projective(module_from_ideal(two));
                        qp_by_mask.emplace(two.mask, hyp);
                    }
                    qp_by_pair.emplace(key, hyp);
                }

                bool inter_zero = true;
                for (Elem x = 0; x < n; ++x)
                    if (x != z && prin[a][x] && prin[b][x]) {
                        inter_zero = false;
                        break;
                    }
                bool squares = r->mul(a, a) == z && r->mul(b, b) == z && r->mul(a, b) == z;
                bool ann_equal = ann[a] == ann[b];

                if (hyp && !(inter_zero && squares && ann_equal)) {
                    std::string got;
                    if (!inter_zero) got += "nonzero intersection; ";
                    if (!squares) got += "nonzero square or product; ";
                    if (!ann_equal) got += "distinct annihilators; ";
                    add_failure(vr, entry.name,
                                "incomparable pair (" + r->elem_name(a) + ", " + r->elem_name(b) +
                                    ") with quasi-projective (a,b)",
                                "zero intersection, zero squares and product, equal annihilators",
                                got);
                }

                if (n <= cfg.pair_suite_size_cap && crosschecks < 8) {
                    ++crosschecks;
                    IncomparablePairReport rep = lemma38_inspect(r, a, b, cfg);
                    bool same = rep.applicable && rep.hypothesis == hyp &&
                                rep.intersection_zero == inter_zero &&
                                rep.squares_zero == squares && rep.annihilators_equal == ann_equal;
                    if (!same)
                        add_failure(vr, entry.name,
                                    "inspector disagrees with sweep on (" + r->elem_name(a) +
                                        ", " + r->elem_name(b) + ")",
                                    "identical applicability, hypothesis and conclusions",
                                    "mismatch");
                }
            }
        }
    }
    vr.elapsed_ms = ms_since(t0);
    return vr;
}

VerificationReport verify_dichotomy(const std::vector<CorpusEntry>& corpus, const Config& cfg) {
    auto t0 = Clock::now();
    VerificationReport vr;
    vr.suite = "local-dichotomy";
    Config fast_cfg = cfg;
    fast_cfg.oracle_check = false;  // the oracle has its own suite
    for (const auto& entry : corpus) {
        if (!is_local(entry.ring)) continue;
        ++vr.rings_covered;
        FqpResult f;
        try {
            f = is_fqp(entry.ring, fast_cfg);
        } catch (const CapExceeded& e) {
            note_cap(vr, entry.name, e.what());
            continue;
        }
        if (!f.fqp) continue;
        ++vr.instances;
        try {
            LocalFqpShape shape = fqp_dichotomy(entry.ring, fast_cfg);
            // Re-derive the disjuncts independently and confront the label.
            bool nil2 = true;
            for (Elem a = 0; a < entry.ring->size() && nil2; ++a) {
                if (!entry.ring->is_nilpotent(a)) continue;
                for (Elem b = 0; b < entry.ring->size(); ++b) {
                    if (!entry.ring->is_nilpotent(b)) continue;
                    if (entry.ring->mul(a, b) != entry.ring->zero()) {
                        nil2 = false;
                        break;
                    }
                }
            }
            bool ch = is_chained(entry.ring);
            LocalFqpShape want = nil2 && ch  ? LocalFqpShape::Both
                                 : nil2      ? LocalFqpShape::NilSquareZero
                                             : LocalFqpShape::Chained;
            if (!nil2 && !ch)
                add_failure(vr, entry.name, "local fqp ring outside the dichotomy",
                            "nil-square-zero or chained", "neither");
            else if (shape != want)
                add_failure(vr, entry.name, "dichotomy label mismatch", to_string(want),
                            to_string(shape));
        } catch (const std::logic_error& e) {
            add_failure(vr, entry.name, "dichotomy op rejected the ring",
                        "nil-square-zero or chained", e.what());
        }
    }
    vr.elapsed_ms = ms_since(t0);
    return vr;
}

VerificationReport verify_zanardo(const std::vector<CorpusEntry>& corpus, const Config& cfg) {
    auto t0 = Clock::now();
    VerificationReport vr;
    vr.suite = "cyclic-power-shape";
    for (const auto& entry : corpus) {
        const RingPtr& r = entry.ring;
        if (!is_local(r)) continue;
        ++vr.rings_covered;
        std::vector<Ideal> ideals;
        try {
            ideals = all_ideals(r, cfg);
        } catch (const CapExceeded& e) {
            note_cap(vr, entry.name, e.what());
            continue;
        }
        for (const auto& ideal : ideals) {
            ModulePtr m = module_from_ideal(ideal);
            if (!is_quasi_projective(m)) continue;
            std::size_t gens = minimal_generators(r, ideal).size();
            Ideal ann = annihilator(r, ideal);
            ModulePtr target = module_power(cyclic_module(r, ann), gens);
            ++vr.instances;
            try {
                if (!are_isomorphic(m, target, cfg))
                    add_failure(vr, entry.name,
                                "quasi-projective " + ideal_label(r, ideal) + " vs (R/Ann)^" +
                                    std::to_string(gens),
                                "isomorphic", "no isomorphism found");
            } catch (const CapExceeded& e) {
                note_cap(vr, entry.name, ideal_label(r, ideal) + ": " + e.what());
            }
        }
    }
    vr.elapsed_ms = ms_since(t0);
    return vr;
}

VerificationReport verify_base_change(const std::vector<CorpusEntry>& corpus, const Config& cfg) {
    auto t0 = Clock::now();
    VerificationReport vr;
    vr.suite = "base-change";
    for (const auto& entry : corpus) {
        const RingPtr& r = entry.ring;
        if (r->size() > cfg.base_change_size_cap) continue;
        ++vr.rings_covered;
        std::vector<Ideal> ideals;
        try {
            ideals = all_ideals(r, cfg);
        } catch (const CapExceeded& e) {
            note_cap(vr, entry.name, e.what());
            continue;
        }
        std::vector<std::pair<const Ideal*, ModulePtr>> qp_modules;
        for (const auto& ideal : ideals) {
            ModulePtr m = module_from_ideal(ideal);
            if (is_quasi_projective(m)) qp_modules.push_back({&ideal, m});
        }
        for (const auto& kernel : ideals) {
            for (const auto& [ideal, m] : qp_modules) {
                ModulePtr reduced = quotient_scalars(m, kernel);
                ++vr.instances;
                if (!is_quasi_projective(reduced))
                    add_failure(vr, entry.name,
                                ideal_label(r, *ideal) + " after killing " +
                                    ideal_label(r, kernel),
                                "quasi-projective over the quotient ring", "not quasi-projective");
            }
        }
    }
    vr.elapsed_ms = ms_since(t0);
    return vr;
}

VerificationReport verify_localization(const std::vector<CorpusEntry>& corpus, const Config& cfg) {
    auto t0 = Clock::now();
    VerificationReport vr;
    vr.suite = "localization";
    for (const auto& entry : corpus) {
        const RingPtr& r = entry.ring;
        FqpResult f;
        try {
            f = is_fqp(r, cfg);
        } catch (const CapExceeded& e) {
            note_cap(vr, entry.name, e.what());
            continue;
        }
        ++vr.rings_covered;
        LocalDecomposition dec = local_factors(r);
        if (f.fqp) {
            for (std::size_t i = 0; i < dec.factors.size(); ++i) {
                FqpResult ff;
                try {
                    ff = is_fqp(dec.factors[i].ring, cfg);
                } catch (const CapExceeded& e) {
                    note_cap(vr, entry.name,
                             "factor " + std::to_string(i) + ": " + e.what());
                    continue;
                }
                ++vr.instances;
                if (!ff.fqp)
                    add_failure(vr, entry.name,
                                "local factor " + std::to_string(i) + " of an fqp ring",
                                "fqp", "not fqp");
            }
        }
        // Endomorphism counts multiply across the decomposition.
        if (dec.factors.size() >= 2 && r->size() <= cfg.oracle_module_cap) {
            std::vector<Ideal> ideals;
            try {
                ideals = all_ideals(r, cfg);
            } catch (const CapExceeded& e) {
                note_cap(vr, entry.name, e.what());
                continue;
            }
            for (const auto& ideal : ideals) {
                std::size_t total = 0;
                bool capped = false;
                try {
                    total = homs(module_from_ideal(ideal), module_from_ideal(ideal), cfg).size();
                } catch (const CapExceeded& e) {
                    note_cap(vr, entry.name, ideal_label(r, ideal) + ": " + e.what());
                    capped = true;
                }
                if (capped) continue;
                std::size_t prod = 1;
                for (const auto& factor : dec.factors) {
                    std::vector<bool> mask(factor.ring->size(), false);
                    for (Elem x : ideal.elements) mask[factor.projection[x]] = true;
                    ModulePtr mi = module_from_ideal(ideal_from_mask(factor.ring, mask));
                    try {
                        prod *= homs(mi, mi, cfg).size();
                    } catch (const CapExceeded& e) {
                        note_cap(vr, entry.name, ideal_label(r, ideal) + ": " + e.what());
                        capped = true;
                        break;
                    }
                }
                if (capped) continue;
                ++vr.instances;
                if (total != prod)
                    add_failure(vr, entry.name,
                                "endomorphism count of " + ideal_label(r, ideal) +
                                    " vs the product over local factors",
                                std::to_string(prod), std::to_string(total));
            }
        }
    }
    vr.elapsed_ms = ms_since(t0);
    return vr;
}

VerificationReport verify_split_identity(const std::vector<CorpusEntry>& corpus,
                                         const Config& cfg) {
    auto t0 = Clock::now();
    VerificationReport vr;
    vr.suite = "split-identity";
    // Splitting re-runs an endomorphism search per submodule pair, so the
    // sweep stays within oracle-sized modules and samples at most
    // kPairSample incomparable pairs per ideal, in canonical order.
    constexpr std::size_t kPairSample = 16;
    for (const auto& entry : corpus) {
        const RingPtr& r = entry.ring;
        if (r->size() > cfg.oracle_module_cap || !is_local(r)) continue;
        ++vr.rings_covered;
        std::vector<Ideal> ideals;
        try {
            ideals = all_ideals(r, cfg);
        } catch (const CapExceeded& e) {
            note_cap(vr, entry.name, e.what());
            continue;
        }
        for (const auto& ideal : ideals) {
            if (ideal.size() <= 1) continue;
            ModulePtr m = module_from_ideal(ideal);
            if (!is_quasi_projective(m)) continue;
            if (module_minimal_generators(m).size() > cfg.oracle_generator_cap) {
                note_cap(vr, entry.name,
                         ideal_label(r, ideal) + ": split sweep generator count cap");
                continue;
            }
            std::vector<Submodule> subs;
            try {
                subs = submodules(m, cfg);
            } catch (const CapExceeded& e) {
                note_cap(vr, entry.name, ideal_label(r, ideal) + ": " + e.what());
                continue;
            }
            std::size_t sampled = 0;
            for (std::size_t i = 0; i < subs.size() && sampled < kPairSample; ++i) {
                for (std::size_t j = i + 1; j < subs.size() && sampled < kPairSample; ++j) {
                    bool i_in_j = true, j_in_i = true;
                    for (Elem x = 0; x < m->size(); ++x) {
                        if (subs[i].mask[x] && !subs[j].mask[x]) i_in_j = false;
                        if (subs[j].mask[x] && !subs[i].mask[x]) j_in_i = false;
                    }
                    if (i_in_j || j_in_i) continue;  // comparable pairs split trivially
                    bool full = true;
                    std::vector<bool> seen(m->size(), false);
                    for (Elem x : subs[i].elements)
                        for (Elem y : subs[j].elements) seen[m->add(x, y)] = true;
                    for (Elem x = 0; x < m->size(); ++x)
                        if (!seen[x]) {
                            full = false;
                            break;
                        }
                    if (!full) continue;
                    ++vr.instances;
                    ++sampled;
                    std::optional<std::vector<ModuleHom>> split;
                    try {
                        split = split_identity(m, {subs[i], subs[j]}, cfg);
                    } catch (const CapExceeded& e) {
                        note_cap(vr, entry.name, ideal_label(r, ideal) + ": " + e.what());
                        continue;
                    }
                    if (!split) {
                        add_failure(vr, entry.name,
                                    "no identity splitting for " + ideal_label(r, ideal) +
                                        " across a summing submodule pair",
                                    "a splitting exists", "none found");
                        continue;
                    }
                    bool valid = split->size() == 2;
                    for (Elem x = 0; x < m->size() && valid; ++x) {
                        Elem s = m->add((*split)[0].map[x], (*split)[1].map[x]);
                        if (s != x) valid = false;
                        if (!subs[i].mask[(*split)[0].map[x]]) valid = false;
                        if (!subs[j].mask[(*split)[1].map[x]]) valid = false;
                    }
                    if (!valid)
                        add_failure(vr, entry.name,
                                    "returned splitting for " + ideal_label(r, ideal) +
                                        " is not an identity splitting",
                                    "maps sum to the identity inside the parts", "invalid");
                }
            }
        }
    }
    vr.elapsed_ms = ms_since(t0);
    return vr;
}

VerificationReport verify_trivext(const std::vector<CorpusEntry>& corpus, unsigned j_max,
                                  const Config& cfg) {
    auto t0 = Clock::now();
    VerificationReport vr;
    vr.suite = "trivial-extension";
    Config fast_cfg = cfg;
    fast_cfg.oracle_check = false;  // the oracle has its own suite
    for (const auto& entry : corpus) {
        const RingPtr& a = entry.ring;
        if (a->size() > 16 || !is_local(a)) continue;
        ++vr.rings_covered;
        Ideal m = nonunit_ideal(a);
        bool m2_zero = product(m, m).size() == 1;
        bool base_fqp;
        try {
            base_fqp = is_fqp(a, fast_cfg).fqp;
        } catch (const CapExceeded& e) {
            note_cap(vr, entry.name, e.what());
            continue;
        }
        ModulePtr residue = cyclic_module(a, m);
        for (unsigned j = 1; j <= j_max; ++j) {
            std::string label = entry.name + " |x (A/m)^" + std::to_string(j);
            RingPtr ext;
            try {
                ext = make_trivial_extension(a, module_power(residue, j), fast_cfg);
            } catch (const CapExceeded& e) {
                note_cap(vr, label, e.what());
                continue;
            }
            FqpResult f;
            try {
                f = is_fqp(ext, fast_cfg);
            } catch (const CapExceeded& e) {
                note_cap(vr, label, e.what());
                continue;
            }
            ++vr.instances;
            if (f.fqp != m2_zero)
                add_failure(vr, label, "fqp exactly when m^2 = 0 in the base",
                            bool_text(m2_zero), bool_text(f.fqp));
            if (f.fqp && !base_fqp)
                add_failure(vr, label, "fqp extension over a non-fqp base", "base fqp",
                            "base not fqp");
            if (f.fqp && !is_chained(ext)) {
                RingStructure st = structure(ext);
                if (st.zero_divisors != st.nilradical)
                    add_failure(vr, label, "non-chained fqp extension",
                                "zero-divisors equal nilpotents", "sets differ");
            }
        }
    }
    vr.elapsed_ms = ms_since(t0);
    return vr;
}

namespace {

/// Recursive-descent parser for flag queries: or-expr over and-expr over
/// (!)-prefixed atoms; atoms are flag names or parenthesized queries.
class QueryParser {
public:
    explicit QueryParser(const std::string& text) : s_(text) {}

    Query parse() {
        Query q = or_expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return q;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Query or_expr() {
        Query q = and_expr();
        while (eat('|')) {
            Query parent;
            parent.op = Query::Op::Or;
            parent.kids.push_back(std::move(q));
            parent.kids.push_back(and_expr());
            q = std::move(parent);
        }
        return q;
    }

    Query and_expr() {
        Query q = not_expr();
        while (eat('&')) {
            Query parent;
            parent.op = Query::Op::And;
            parent.kids.push_back(std::move(q));
            parent.kids.push_back(not_expr());
            q = std::move(parent);
        }
        return q;
    }

    Query not_expr() {
        if (eat('!')) {
            Query q;
            q.op = Query::Op::Not;
            q.kids.push_back(not_expr());
            return q;
        }
        return atom();
    }

    Query atom() {
        if (eat('(')) {
            Query q = or_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return q;
        }
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) throw ParseError("expected a flag name", pos_);
        std::string flag = s_.substr(start, pos_ - start);
        if (flag == "vnr") flag = "von_neumann_regular";
        if (flag == "tqr") flag = "total_quotient_ring";
        static const std::set<std::string> known = {
            "local",   "chained", "arithmetical",        "fqp",
            "gaussian", "prufer",  "reduced",             "von_neumann_regular",
            "total_quotient_ring"};
        if (!known.count(flag)) throw ParseError("unknown flag: " + flag, start);
        Query q;
        q.op = Query::Op::Flag;
        q.flag = flag;
        return q;
    }
};

}  // namespace

Query parse_query(const std::string& text) { return QueryParser(text).parse(); }

bool eval_query(const Query& q, const PropertyReport& report) {
    switch (q.op) {
        case Query::Op::Flag:
            return flag_bool(report, q.flag);
        case Query::Op::Not:
            return !eval_query(q.kids[0], report);
        case Query::Op::And:
            return eval_query(q.kids[0], report) && eval_query(q.kids[1], report);
        case Query::Op::Or:
            return eval_query(q.kids[0], report) || eval_query(q.kids[1], report);
    }
    return false;
}

std::vector<SearchWitness> search_strictness(const std::vector<CorpusEntry>& corpus,
                                             std::size_t size_max, const Query& query,
                                             const Config& cfg) {
    std::vector<SearchWitness> out;
    std::vector<std::pair<RingFingerprint, RingPtr>> kept;
    for (const auto& entry : corpus) {
        if (entry.ring->size() > size_max) continue;
        PropertyReport rep;
        try {
            rep = classify_ring(entry.ring, cfg);
        } catch (const CapExceeded&) {
            continue;  // unclassifiable under the caps: not a usable witness
        }
        if (!eval_query(query, rep)) continue;
        RingFingerprint fp = ring_fingerprint(entry.ring);
        bool duplicate = false;
        for (const auto& [kfp, kring] : kept) {
            if (!(kfp == fp)) continue;
            try {
                if (rings_isomorphic(kring, entry.ring, cfg)) {
                    duplicate = true;
                    break;
                }
            } catch (const CapExceeded&) {
                // Unproven isomorphism: keep both rather than drop a witness.
            }
        }
        if (duplicate) continue;
        kept.push_back({fp, entry.ring});
        out.push_back({entry.name, entry.spec, entry.ring->size(), entry.ring, std::move(rep)});
    }
    return out;
}

RingPtr mutate_mul(const RingPtr& ring, Elem a, Elem b, Elem value) {
    const std::size_t n = ring->size();
    FiniteRing::Data d;
    d.size = n;
    d.zero = ring->zero();
    d.one = ring->one();
    d.name = ring->name() + " (mutated)";
    d.spec = "";
    d.add.resize(n * n);
    d.mul.resize(n * n);
    d.elem_names.reserve(n);
    for (Elem x = 0; x < n; ++x) d.elem_names.push_back(ring->elem_name(x));
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            d.add[x * n + y] = ring->add(x, y);
            d.mul[x * n + y] = ring->mul(x, y);
        }
    d.mul[a * n + b] = value;
    return std::make_shared<FiniteRing>(std::move(d));
}

}  // namespace fqp

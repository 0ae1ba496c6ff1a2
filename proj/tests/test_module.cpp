#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fqp/ideal.hpp"
#include "fqp/module.hpp"
#include "fqp/ringspec.hpp"

using namespace fqp;

namespace {
RingPtr fixture_square() { return build_ring("Poly(2,[x,y],[x^2,x*y,y^2])"); }
RingPtr fixture_cubic() { return build_ring("Poly(2,[x,y],[x^2,x*y,y^3])"); }

ModulePtr max_ideal_module(const RingPtr& r) {
    return module_from_ideal(ideal_generated(r, {2, 4}));
}
}  // namespace

TEST_CASE("modules built from ideals satisfy the module laws") {
    for (const char* spec : {"Z(8)", "Z(12)", "Poly(2,[x,y],[x^2,x*y,y^2])",
                             "TrivExt(Z(8),[2],1)"}) {
        RingPtr r = build_ring(spec);
        INFO(spec);
        for (const auto& ideal : all_ideals(r)) {
            CHECK(!check_module_axioms(module_from_ideal(ideal)));
        }
        Ideal m = maximal_ideals(r).at(0);
        CHECK(!check_module_axioms(cyclic_module(r, m)));
    }
}

TEST_CASE("direct sums and powers multiply sizes") {
    RingPtr r = make_zmod(4);
    ModulePtr line = module_from_ideal(principal(r, 2));
    CHECK(line->size() == 2);
    CHECK(direct_sum(line, line)->size() == 4);
    CHECK(module_power(line, 3)->size() == 8);
    CHECK(module_power(line, 0)->size() == 1);
    CHECK(module_power(line, 1).get() == line.get());
    CHECK(!check_module_axioms(module_power(line, 3)));
}

TEST_CASE("module annihilators match ideal annihilators") {
    RingPtr r = fixture_cubic();
    Ideal m = ideal_generated(r, {2, 4});
    CHECK(ideal_equals(module_annihilator(module_from_ideal(m)), annihilator(r, m)));
    // R/m is killed exactly by m.
    CHECK(ideal_equals(module_annihilator(cyclic_module(r, m)), m));
}

TEST_CASE("submodules of the square-zero maximal ideal are the F2 subspaces") {
    ModulePtr m = max_ideal_module(fixture_square());
    REQUIRE(m->size() == 4);
    std::vector<Submodule> subs = submodules(m);
    CHECK(subs.size() == 5);  // 0, three lines, the plane
    std::vector<std::size_t> sizes;
    for (const auto& s : subs) sizes.push_back(s.size());
    CHECK(sizes == std::vector<std::size_t>{1, 2, 2, 2, 4});
    Submodule full = full_submodule(m);
    CHECK(full.size() == 4);
    Submodule span01 = submodule_span(m, {1});
    CHECK(span01.size() == 2);
}

TEST_CASE("quotients by submodules have coset sizes") {
    ModulePtr m = max_ideal_module(fixture_square());
    std::vector<Submodule> subs = submodules(m);
    QuotientModule q = quotient_module(m, subs[1]);
    CHECK(q.module->size() == 2);
    for (Elem x = 0; x < m->size(); ++x) CHECK(q.projection[x] < 2);
    CHECK(q.section.size() == 2);
}

TEST_CASE("endomorphism counts of the square-zero fixture") {
    RingPtr r = fixture_square();
    ModulePtr m = max_ideal_module(r);
    CHECK(homs(m, m).size() == 16);  // m = (R/m)^2, so End = 2x2 matrices over F2
    Ideal mi = ideal_generated(r, {2, 4});
    ModulePtr rm = cyclic_module(r, mi);
    CHECK(homs(rm, rm).size() == 2);  // End(F2) over the local ring
    // Homs are closed tables: each is additive and scalar-compatible.
    for (const auto& h : homs(m, m)) {
        for (Elem a = 0; a < m->size(); ++a)
            for (Elem b = 0; b < m->size(); ++b)
                CHECK(h.map[m->add(a, b)] == m->add(h.map[a], h.map[b]));
        for (Elem s = 0; s < r->size(); ++s)
            for (Elem a = 0; a < m->size(); ++a)
                CHECK(h.map[m->act(s, a)] == m->act(s, h.map[a]));
    }
}

TEST_CASE("hom tables are deterministic and duplicate-free") {
    ModulePtr m = max_ideal_module(fixture_square());
    std::vector<ModuleHom> first = homs(m, m);
    std::vector<ModuleHom> second = homs(m, m);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i].map == second[i].map);
    for (std::size_t i = 0; i + 1 < first.size(); ++i) CHECK(first[i].map < first[i + 1].map);
}

TEST_CASE("the two lines of the square-zero fixture are isomorphic") {
    RingPtr r = fixture_square();
    CHECK(are_isomorphic(module_from_ideal(principal(r, 2)),
                         module_from_ideal(principal(r, 4))));
    CHECK(!are_isomorphic(module_from_ideal(principal(r, 2)), max_ideal_module(r)));
}

TEST_CASE("projectivity and quasi-projectivity on the fixtures") {
    RingPtr sq = fixture_square();
    ModulePtr m_sq = max_ideal_module(sq);
    CHECK(!is_projective(m_sq));      // |m| = 4 < 8^2
    CHECK(is_quasi_projective(m_sq)); // free of rank 2 over R/Ann = F2

    RingPtr cu = fixture_cubic();
    ModulePtr m_cu = max_ideal_module(cu);
    CHECK(!is_quasi_projective(m_cu));  // |m| = 8, but |R/Ann|^2 = 16

    // R itself is projective; the zero module is projective.
    CHECK(is_projective(module_from_ideal(unit_ideal(sq))));
    CHECK(is_projective(zero_module(sq)));
    CHECK(is_quasi_projective(cyclic_module(sq, ideal_generated(sq, {2, 4}))));
}

TEST_CASE("the brute-force oracle agrees and produces witnesses") {
    RingPtr sq = fixture_square();
    OracleResult good = quasi_projective_oracle(max_ideal_module(sq));
    CHECK(good.quasi_projective);
    CHECK(good.submodules_checked == 5);

    RingPtr cu = fixture_cubic();
    ModulePtr m = max_ideal_module(cu);  // witnesses refer to this instance
    OracleResult bad = quasi_projective_oracle(m);
    CHECK(!bad.quasi_projective);
    CHECK(bad.witness_submodule.has_value());
    CHECK(bad.witness_hom.has_value());
    // The witness is real: no endomorphism pushes forward to it.
    QuotientModule q = quotient_module(m, *bad.witness_submodule);
    bool liftable = false;
    for (const auto& endo : homs(m, m)) {
        std::vector<Elem> pushed(m->size());
        for (Elem x = 0; x < m->size(); ++x) pushed[x] = q.projection[endo.map[x]];
        if (pushed == bad.witness_hom->map) liftable = true;
    }
    CHECK(!liftable);
}

TEST_CASE("oracle caps surface as CapExceeded") {
    Config tiny;
    tiny.oracle_module_cap = 2;
    CHECK_THROWS_AS(quasi_projective_oracle(max_ideal_module(fixture_square()), tiny),
                    CapExceeded);
}

TEST_CASE("quotient scalars produce a module over the quotient ring") {
    RingPtr cu = fixture_cubic();
    ModulePtr m = max_ideal_module(cu);
    Ideal ann = module_annihilator(m);
    ModulePtr reduced = quotient_scalars(m, ann);
    CHECK(reduced->size() == m->size());
    CHECK(reduced->ring()->size() == 4);  // R/(x, y^2)
    CHECK(!check_module_axioms(reduced));
}

TEST_CASE("self-relative projectivity coincides with quasi-projectivity") {
    ModulePtr good = max_ideal_module(fixture_square());
    ModulePtr bad = max_ideal_module(fixture_cubic());
    CHECK(is_relatively_projective(good, good) == is_quasi_projective(good));
    CHECK(is_relatively_projective(bad, bad) == is_quasi_projective(bad));
    CHECK(!is_relatively_projective(bad, bad));
}

TEST_CASE("split identity across the two lines") {
    ModulePtr m = max_ideal_module(fixture_square());
    std::vector<Submodule> subs = submodules(m);
    // subs[1..3] are the lines; find the pair spanning m.
    for (std::size_t i = 1; i + 1 < subs.size(); ++i)
        for (std::size_t j = i + 1; j + 1 < subs.size(); ++j) {
            auto split = split_identity(m, {subs[i], subs[j]});
            REQUIRE(split.has_value());  // two distinct lines span the plane
            for (Elem x = 0; x < m->size(); ++x) {
                CHECK(m->add((*split)[0].map[x], (*split)[1].map[x]) == x);
                CHECK(subs[i].contains((*split)[0].map[x]));
                CHECK(subs[j].contains((*split)[1].map[x]));
            }
        }
}

TEST_CASE("module minimal generators count ranks") {
    RingPtr sq = fixture_square();
    CHECK(module_minimal_generators(max_ideal_module(sq)).size() == 2);
    CHECK(module_minimal_generators(module_from_ideal(principal(sq, 2))).size() == 1);
    CHECK(module_minimal_generators(zero_module(sq)).empty());
}

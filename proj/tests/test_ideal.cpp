#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fqp/ideal.hpp"
#include "fqp/ringspec.hpp"

using namespace fqp;

namespace {
RingPtr fixture_square() { return build_ring("Poly(2,[x,y],[x^2,x*y,y^2])"); }
RingPtr fixture_cubic() { return build_ring("Poly(2,[x,y],[x^2,x*y,y^3])"); }
}  // namespace

TEST_CASE("principal ideals of Z/12") {
    RingPtr r = make_zmod(12);
    Ideal two = principal(r, 2);
    CHECK(two.size() == 6);
    CHECK(two.contains(10));
    CHECK(!two.contains(3));
    CHECK(is_principal(two));
    CHECK(ideal_equals(principal(r, 2), principal(r, 10)));  // both generate (2)
}

TEST_CASE("sum, intersection, and product on Z/12") {
    RingPtr r = make_zmod(12);
    Ideal two = principal(r, 2), three = principal(r, 3);
    CHECK(ideal_equals(sum(two, three), unit_ideal(r)));
    CHECK(ideal_equals(intersect(two, three), principal(r, 6)));
    CHECK(ideal_equals(product(two, three), principal(r, 6)));
    CHECK(ideal_equals(product(two, unit_ideal(r)), two));
    CHECK(ideal_equals(sum(two, zero_ideal(r)), two));
    CHECK(ideal_equals(intersect(two, two), two));
}

TEST_CASE("the ideal lattice of Z/8 is the divisor chain") {
    RingPtr r = make_zmod(8);
    std::vector<Ideal> ideals = all_ideals(r);
    REQUIRE(ideals.size() == 4);
    // Canonical order: by cardinality.
    CHECK(ideals[0].size() == 1);
    CHECK(ideals[1].size() == 2);
    CHECK(ideals[2].size() == 4);
    CHECK(ideals[3].size() == 8);
    for (std::size_t i = 0; i + 1 < ideals.size(); ++i)
        CHECK(ideal_contains(ideals[i + 1], ideals[i]));
}

TEST_CASE("the square-zero fixture has exactly six ideals") {
    RingPtr r = fixture_square();
    std::vector<Ideal> ideals = all_ideals(r);
    REQUIRE(ideals.size() == 6);
    // 0, the three lines (x), (y), (x+y), the maximal ideal, and R.
    CHECK(ideals[0].size() == 1);
    CHECK(ideals[1].size() == 2);
    CHECK(ideals[2].size() == 2);
    CHECK(ideals[3].size() == 2);
    CHECK(ideals[4].size() == 4);
    CHECK(ideals[5].size() == 8);
    Ideal m = ideal_generated(r, {2, 4});
    CHECK(ideal_equals(ideals[4], m));
    CHECK(!is_principal(m));
    CHECK(ideal_equals(product(m, m), zero_ideal(r)));
    CHECK(ideal_equals(intersect(principal(r, 2), principal(r, 4)), zero_ideal(r)));
}

TEST_CASE("the cubic fixture squares its maximal ideal to (y^2)") {
    RingPtr r = fixture_cubic();
    Ideal m = ideal_generated(r, {2, 4});
    Ideal m2 = product(m, m);
    CHECK(m2.size() == 2);
    CHECK(ideal_equals(m2, principal(r, 8)));
}

TEST_CASE("annihilator of the cubic fixture's maximal ideal is (x, y^2)") {
    RingPtr r = fixture_cubic();
    Ideal m = ideal_generated(r, {2, 4});
    Ideal ann = annihilator(r, m);
    CHECK(ann.elements == std::vector<Elem>{0, 2, 8, 10});
    CHECK(ideal_equals(ann, ideal_generated(r, {2, 8})));
    CHECK(ideal_equals(product(m, ann), zero_ideal(r)));
}

TEST_CASE("annihilator triple identity and lattice closure") {
    for (const char* spec : {"Z(8)", "Z(12)", "Poly(2,[x,y],[x^2,x*y,y^3])"}) {
        RingPtr r = build_ring(spec);
        INFO(spec);
        std::vector<Ideal> ideals = all_ideals(r);
        auto present = [&](const Ideal& candidate) {
            return std::any_of(ideals.begin(), ideals.end(),
                               [&](const Ideal& i) { return ideal_equals(i, candidate); });
        };
        for (const auto& a : ideals) {
            Ideal ann = annihilator(r, a);
            CHECK(ideal_equals(annihilator(r, annihilator(r, ann)), ann));
            CHECK(ideal_equals(product(a, ann), zero_ideal(r)));
            CHECK(present(ann));
            CHECK(ideal_equals(ideal_generated(r, a.elements), a));
            for (const auto& b : ideals) {
                CHECK(present(sum(a, b)));
                CHECK(present(intersect(a, b)));
                CHECK(present(product(a, b)));
            }
        }
    }
}

TEST_CASE("maximal ideals and the radical of Z/12") {
    RingPtr r = make_zmod(12);
    std::vector<Ideal> maxes = maximal_ideals(r);
    REQUIRE(maxes.size() == 2);
    CHECK(ideal_equals(jacobson_radical(r), principal(r, 6)));
    bool saw_two = false, saw_three = false;
    for (const auto& m : maxes) {
        if (ideal_equals(m, principal(r, 2))) saw_two = true;
        if (ideal_equals(m, principal(r, 3))) saw_three = true;
    }
    CHECK(saw_two);
    CHECK(saw_three);
}

TEST_CASE("minimal generators: local greedy picks the smallest lifts") {
    RingPtr r = fixture_square();
    Ideal m = ideal_generated(r, {2, 4});
    CHECK(minimal_generators(r, m) == std::vector<Elem>{2, 4});
    CHECK(minimal_generators(r, principal(r, 6)).size() == 1);
    CHECK(minimal_generators(r, zero_ideal(r)).empty());

    RingPtr cubic = fixture_cubic();
    Ideal mc = ideal_generated(cubic, {2, 4});
    CHECK(minimal_generators(cubic, mc).size() == 2);

    RingPtr z8 = make_zmod(8);
    CHECK(minimal_generators(z8, principal(z8, 2)) == std::vector<Elem>{2});
}

TEST_CASE("minimal generators regenerate exactly, with no proper sublist") {
    for (const char* spec : {"Z(16)", "Poly(2,[x,y],[x^2,x*y,y^2])",
                             "Poly(2,[x,y],[x^2,x*y,y^3])", "TrivExt(Z(4),[2],1)"}) {
        RingPtr r = build_ring(spec);
        INFO(spec);
        for (const auto& ideal : all_ideals(r)) {
            std::vector<Elem> gens = minimal_generators(r, ideal);
            CHECK(ideal_equals(ideal_generated(r, gens), ideal));
            for (std::size_t skip = 0; skip < gens.size(); ++skip) {
                std::vector<Elem> sub;
                for (std::size_t i = 0; i < gens.size(); ++i)
                    if (i != skip) sub.push_back(gens[i]);
                CHECK(!ideal_equals(ideal_generated(r, sub), ideal));
            }
        }
    }
}

TEST_CASE("non-local minimal generation concatenates over the factors") {
    RingPtr r = make_zmod(12);
    Ideal two = principal(r, 2);
    std::vector<Elem> gens = minimal_generators(r, two);
    CHECK(ideal_equals(ideal_generated(r, gens), two));
    // One generator per local factor with a nonzero component.
    CHECK(gens.size() == 2);
}

TEST_CASE("comparability mirrors containment") {
    RingPtr r = fixture_square();
    CHECK(!comparable(principal(r, 2), principal(r, 4)));
    CHECK(comparable(principal(r, 2), ideal_generated(r, {2, 4})));
    CHECK(ideal_contains(ideal_generated(r, {2, 4}), principal(r, 2)));
    CHECK(!ideal_contains(principal(r, 2), ideal_generated(r, {2, 4})));
}

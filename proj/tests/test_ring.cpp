#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "fqp/harness.hpp"
#include "fqp/ring.hpp"
#include "fqp/ringspec.hpp"

using namespace fqp;

TEST_CASE("zmod tables carry the expected arithmetic") {
    RingPtr r = make_zmod(6);
    CHECK(r->size() == 6);
    CHECK(r->zero() == 0);
    CHECK(r->one() == 1);
    CHECK(r->add(3, 5) == 2);
    CHECK(r->mul(2, 3) == 0);
    CHECK(r->neg(2) == 4);
    CHECK(r->sub(1, 3) == 4);
    CHECK(r->is_unit(5));
    CHECK(!r->is_unit(2));
    CHECK(!r->is_unit(0));
    CHECK(r->additive_order(1) == 6);
    CHECK(r->additive_order(2) == 3);
    CHECK(r->additive_order(3) == 2);
    CHECK(r->pow(5, 2) == 1);
    CHECK(r->pow(2, 0) == 1);
    CHECK(!r->is_nilpotent(2));  // 6 is squarefree
    CHECK(r->is_nilpotent(0));
}

TEST_CASE("the one-element ring degenerates cleanly") {
    RingPtr r = make_zmod(1);
    CHECK(r->size() == 1);
    CHECK(r->zero() == r->one());
    CHECK(!check_axioms(*r));
    CHECK(local_factors(r).factors.empty());
}

TEST_CASE("constructor rings pass the axiom sweep") {
    for (const char* spec : {"Z(12)", "Poly(2,[x,y],[x^2,x*y,y^2])", "TrivExt(Z(8),[2],1)",
                             "Prod(Z(4),Z(9))", "Poly(3,[x],[x^3])"}) {
        RingPtr r = build_ring(spec);
        INFO(spec);
        CHECK(!check_axioms(*r));
    }
}

TEST_CASE("every single multiplication flip of Z/4 is caught") {
    RingPtr r = make_zmod(4);
    for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b)
            for (Elem v = 0; v < 4; ++v) {
                if (v == r->mul(a, b)) continue;
                auto violation = check_axioms(*mutate_mul(r, a, b, v));
                INFO("mul(" << a << "," << b << ") := " << v);
                REQUIRE(violation.has_value());
                CHECK(!violation->law.empty());
                CHECK(!violation->describe(*r).empty());
            }
}

TEST_CASE("unit and zero-divisor census of Z/12") {
    RingStructure st = structure(make_zmod(12));
    CHECK(st.units == std::vector<Elem>{1, 5, 7, 11});
    CHECK(st.idempotents == std::vector<Elem>{0, 1, 4, 9});
    CHECK(st.nilradical == std::vector<Elem>{0, 6});
    CHECK(st.zero_divisors == std::vector<Elem>{0, 2, 3, 4, 6, 8, 9, 10});
}

TEST_CASE("truncated polynomial ring over F2 in two square-zero variables") {
    RingPtr r = build_ring("Poly(2,[x,y],[x^2,x*y,y^2])");
    REQUIRE(r->size() == 8);
    // Basis order 1, x, y gives digit positions 1, 2, 4.
    CHECK(r->elem_name(2) == "x");
    CHECK(r->elem_name(4) == "y");
    CHECK(r->elem_name(6) == "x+y");
    CHECK(r->elem_name(1) == "1");
    CHECK(r->mul(2, 2) == 0);
    CHECK(r->mul(2, 4) == 0);
    CHECK(r->add(2, 4) == 6);
    CHECK(r->add(2, 2) == 0);  // characteristic 2
    CHECK(r->mul(3, 5) == r->add(1, r->add(2, 4)));  // (1+x)(1+y) = 1+x+y
    CHECK(!r->is_unit(2));
    CHECK(r->is_unit(3));
    CHECK(r->is_nilpotent(6));
}

TEST_CASE("cubic relation keeps y^2 alive in the second fixture") {
    RingPtr r = build_ring("Poly(2,[x,y],[x^2,x*y,y^3])");
    REQUIRE(r->size() == 16);
    // Basis order 1, x, y, y^2.
    CHECK(r->elem_name(2) == "x");
    CHECK(r->elem_name(4) == "y");
    CHECK(r->elem_name(8) == "y^2");
    CHECK(r->mul(4, 4) == 8);
    CHECK(r->mul(4, 8) == 0);
    CHECK(r->mul(2, 4) == 0);
    CHECK(r->is_nilpotent(4));
}

TEST_CASE("standard monomial basis rejects infinite quotients") {
    Monomial xy{{1, 1}};
    CHECK_THROWS_AS(standard_monomial_basis(2, {xy}), std::invalid_argument);
}

TEST_CASE("trivial extension multiplies base-first, square-zero second") {
    RingPtr r = build_ring("TrivExt(Z(4),[2],1)");
    REQUIRE(r->size() == 8);
    // Index (a, e) = a * 2 + e over A = Z/4, E = Z/2.
    Elem a10 = 2, e01 = 1;
    CHECK(r->mul(a10, e01) == 1);   // (1,0)(0,1) = (0,1)
    CHECK(r->mul(e01, e01) == 0);   // E squares to zero
    CHECK(r->mul(a10, a10) == a10);  // (1,0) is the identity
    CHECK(r->one() == a10);
    Elem a20 = 4;
    CHECK(r->mul(a20, a20) == 0);   // (2,0)^2 = (0,0): 2*2 = 0 in Z/4
    CHECK(r->is_unit(2));
    CHECK(!r->is_unit(1));
}

TEST_CASE("product ring of coprime moduli is isomorphic to the cyclic one") {
    RingPtr p = build_ring("Prod(Z(2),Z(3))");
    CHECK(p->size() == 6);
    CHECK(rings_isomorphic(p, make_zmod(6)));
    CHECK(!rings_isomorphic(build_ring("Prod(Z(2),Z(2))"), make_zmod(4)));
}

TEST_CASE("quotient of Z/12 by the ideal (4) is Z/4") {
    RingPtr r = make_zmod(12);
    QuotientRing q = quotient_ring(r, principal(r, 4));
    CHECK(q.ring->size() == 4);
    CHECK(rings_isomorphic(q.ring, make_zmod(4)));
    // Representatives are the minimal coset members.
    CHECK(q.section[q.projection[5]] == 1);
}

TEST_CASE("local factors of Z/12 reassemble the ring") {
    RingPtr r = make_zmod(12);
    LocalDecomposition dec = local_factors(r);
    REQUIRE(dec.factors.size() == 2);
    std::multiset<std::size_t> sizes;
    for (const auto& f : dec.factors) sizes.insert(f.ring->size());
    CHECK(sizes == std::multiset<std::size_t>{3, 4});
    for (Elem x = 0; x < r->size(); ++x) {
        std::vector<Elem> tuple;
        for (const auto& f : dec.factors) tuple.push_back(f.projection[x]);
        CHECK(dec.embed(tuple) == x);
    }
    for (const auto& f : dec.factors) {
        CHECK(!check_axioms(*f.ring));
        CHECK(r->mul(f.idempotent, f.idempotent) == f.idempotent);
    }
}

TEST_CASE("ring generators close the whole ring") {
    for (const char* spec : {"Z(9)", "Poly(2,[x,y],[x^2,x*y,y^2])", "Prod(Z(4),Z(3))"}) {
        RingPtr r = build_ring(spec);
        INFO(spec);
        // generators() holds the extras beyond 0 and 1, so it may be empty
        // (all of Z/n closes from 1 alone); the invariant is that the
        // closure of {0,1} plus the listed generators hits every element.
        std::vector<bool> seen(r->size(), false);
        seen[r->zero()] = true;
        seen[r->one()] = true;
        for (Elem g : r->generators()) seen[g] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (Elem a = 0; a < r->size(); ++a)
                for (Elem b = 0; b < r->size(); ++b) {
                    if (!seen[a] || !seen[b]) continue;
                    for (Elem c : {r->add(a, b), r->mul(a, b)})
                        if (!seen[c]) {
                            seen[c] = true;
                            grew = true;
                        }
                }
        }
        for (Elem a = 0; a < r->size(); ++a) CHECK(seen[a]);
    }
}

TEST_CASE("fingerprints separate non-isomorphic rings of equal size") {
    RingFingerprint a = ring_fingerprint(make_zmod(4));
    RingFingerprint b = ring_fingerprint(build_ring("Prod(Z(2),Z(2))"));
    CHECK(!(a == b));
    CHECK(a == ring_fingerprint(make_zmod(4)));
}

TEST_CASE("rebadge renames without touching the tables") {
    RingPtr r = make_zmod(8);
    RingPtr renamed = rebadge(r, "octo", "Z(8)");
    CHECK(renamed->name() == "octo");
    CHECK(renamed->spec() == "Z(8)");
    CHECK(renamed->size() == 8);
    CHECK(renamed->mul(5, 3) == r->mul(5, 3));
}

TEST_CASE("monomial rendering") {
    CHECK(render_monomial(Monomial{{2, 1}}, {"x", "y"}) == "x^2*y");
    CHECK(render_monomial(Monomial{{0, 0}}, {"x", "y"}) == "1");
    CHECK(render_monomial(Monomial{{0, 3}}, {"x", "y"}) == "y^3");
}

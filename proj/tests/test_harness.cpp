#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <set>

#include "fqp/harness.hpp"
#include "fqp/report_io.hpp"
#include "fqp/ringspec.hpp"

using namespace fqp;

namespace {

CorpusEntry entry(std::string name, std::string spec) {
    CorpusEntry e;
    e.name = std::move(name);
    e.spec = std::move(spec);
    e.tag = "file";
    e.ring = build_ring(e.spec);
    return e;
}

}  // namespace

TEST_CASE("default corpus shape is pinned") {
    std::vector<CorpusEntry> corpus = corpus_paper();
    CHECK(corpus.size() == 142);

    CHECK(corpus[0].name == "ex3.2");
    CHECK(corpus[1].name == "ex3.3");
    CHECK(corpus[2].name == "ex4.5");
    CHECK(corpus[3].name == "ex4.6");
    for (int i = 0; i < 4; ++i) CHECK(corpus[i].tag == "paper-example");
    CHECK(corpus[2].spec == "TrivExt(Z(8),[2],1)");

    std::set<std::string> names;
    for (const auto& e : corpus) {
        CHECK(names.insert(e.name).second);  // names are unique
        REQUIRE(e.ring != nullptr);
        CHECK(e.ring->size() >= 1);
    }
    CHECK(names.count("zmod8") == 1);
    CHECK(names.count("trunc_p3_k2") == 1);
    CHECK(names.count("trivext_zmod4_j2") == 1);
    CHECK(names.count("prod_ex3.2_zmod8") == 1);

    for (const auto& e : corpus)
        if (e.name == "zmod8") {
            REQUIRE(e.expect.size() == 1);
            CHECK(e.expect[0].first == "chained");
            CHECK(e.expect[0].second == "true");
        }
}

TEST_CASE("default corpus is deterministic") {
    std::vector<CorpusEntry> a = corpus_paper();
    std::vector<CorpusEntry> b = corpus_paper();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].spec == b[i].spec);
        CHECK(a[i].tag == b[i].tag);
    }
}

TEST_CASE("corpus files parse names, specs, and expectations") {
    const char* path = "/tmp/fqp_corpus_roundtrip.spec";
    {
        std::ofstream out(path);
        out << "# a comment line\n";
        out << "eight: Z(8) expect{chained=true, fqp=true}\n";
        out << "Z(6)\n";
        out << "\n";
        out << "square: Poly(2,[x],[x^2]) expect{wdim=infinite}\n";
        out << "trivial: TrivExt(Z(4),[2],1)   # trailing comment\n";
    }
    std::vector<CorpusEntry> c = load_corpus_file(path);
    REQUIRE(c.size() == 4);
    CHECK(c[0].name == "eight");
    CHECK(c[0].spec == "Z(8)");
    CHECK(c[0].tag == "file");
    REQUIRE(c[0].expect.size() == 2);
    CHECK(c[0].expect[0] == std::pair<std::string, std::string>{"chained", "true"});
    CHECK(c[0].expect[1] == std::pair<std::string, std::string>{"fqp", "true"});
    CHECK(c[1].name == "Z(6)");  // unnamed entries borrow the spec text
    CHECK(c[1].ring->size() == 6);
    CHECK(c[2].expect.size() == 1);
    CHECK(c[3].name == "trivial");
    CHECK(c[3].ring->size() == 8);  // Z/4 |x Z/4-mod-(2)
    std::remove(path);
}

TEST_CASE("corpus file errors carry the line number") {
    const char* path = "/tmp/fqp_corpus_bad.spec";
    auto write_and_load = [&](const char* body) {
        std::ofstream(path) << body;
        return load_corpus_file(path);
    };
    CHECK_THROWS_AS(write_and_load("Z(8\n"), std::invalid_argument);
    CHECK_THROWS_AS(write_and_load("name_only:\n"), std::invalid_argument);
    CHECK_THROWS_AS(write_and_load("Z(8) expect{chained=true\n"), std::invalid_argument);
    CHECK_THROWS_AS(write_and_load("Z(8) expect{chained}\n"), std::invalid_argument);
    CHECK_THROWS_AS(load_corpus_file("/tmp/fqp_no_such_file.spec"), std::invalid_argument);
    std::remove(path);
}

TEST_CASE("the chain suite passes on the fixtures and rejects wrong expectations") {
    std::vector<CorpusEntry> corpus = corpus_paper();
    std::vector<CorpusEntry> fixtures(corpus.begin(), corpus.begin() + 4);

    VerificationReport ok = verify_chain(fixtures);
    CHECK(ok.suite == "chain");
    CHECK(ok.pass());
    CHECK(ok.instances == 4);
    CHECK(ok.rings_covered == 4);

    fixtures[0].expect = {{"fqp", "false"}};  // deliberately wrong
    VerificationReport bad = verify_chain(fixtures);
    REQUIRE(bad.failures.size() == 1);
    CHECK(bad.failures[0].ring_name == "ex3.2");
    CHECK(bad.failures[0].detail == "expected flag 'fqp'");
    CHECK(bad.failures[0].expected == "false");
    CHECK(bad.failures[0].got == "true");
}

TEST_CASE("a corrupted table fails the axiom sweep and skips classification") {
    std::vector<CorpusEntry> corpus;
    corpus.push_back(entry("good", "Z(4)"));
    CorpusEntry broken = entry("broken", "Z(4)");
    broken.ring = mutate_mul(broken.ring, 1, 1, 0);  // 1*1 = 0 kills the identity law
    corpus.push_back(std::move(broken));

    VerificationReport vr = verify_chain(corpus);
    REQUIRE(vr.failures.size() == 1);
    CHECK(vr.failures[0].ring_name == "broken");
    CHECK(vr.failures[0].detail.rfind("axiom sweep:", 0) == 0);
    CHECK(vr.instances == 2);
}

TEST_CASE("table mutation changes exactly one product") {
    RingPtr r = build_ring("Z(6)");
    RingPtr m = mutate_mul(r, 2, 3, 5);
    REQUIRE(m->size() == r->size());
    std::size_t diffs = 0;
    for (Elem a = 0; a < r->size(); ++a)
        for (Elem b = 0; b < r->size(); ++b) {
            CHECK(m->add(a, b) == r->add(a, b));
            if (m->mul(a, b) != r->mul(a, b)) ++diffs;
        }
    CHECK(diffs == 1);
    CHECK(m->mul(2, 3) == 5);
    CHECK(m->name() == r->name() + " (mutated)");
}

TEST_CASE("query grammar: precedence, parentheses, aliases") {
    PropertyReport r;
    r.local = true;
    r.fqp = false;
    r.gaussian = true;
    r.von_neumann_regular = true;
    r.total_quotient_ring = true;

    CHECK(eval_query(parse_query("gaussian & !fqp"), r));
    CHECK(!eval_query(parse_query("gaussian & fqp"), r));
    // ! binds tighter than &, & tighter than |.
    CHECK(eval_query(parse_query("fqp & local | gaussian"), r));
    CHECK(!eval_query(parse_query("fqp & (local | gaussian)"), r));
    CHECK(eval_query(parse_query("!fqp & !chained"), r));
    CHECK(eval_query(parse_query("!(fqp & chained)"), r));
    CHECK(eval_query(parse_query("vnr"), r));
    CHECK(eval_query(parse_query("tqr & vnr"), r));
    CHECK(eval_query(parse_query("  gaussian  "), r));

    Query alias = parse_query("vnr");
    CHECK(alias.op == Query::Op::Flag);
    CHECK(alias.flag == "von_neumann_regular");
}

TEST_CASE("query grammar rejects malformed input") {
    CHECK_THROWS_AS(parse_query("frobenius"), ParseError);
    CHECK_THROWS_AS(parse_query("wdim"), ParseError);  // wdim is not boolean
    CHECK_THROWS_AS(parse_query("fqp &"), ParseError);
    CHECK_THROWS_AS(parse_query("(fqp"), ParseError);
    CHECK_THROWS_AS(parse_query("fqp)"), ParseError);
    CHECK_THROWS_AS(parse_query(""), ParseError);
    try {
        parse_query("fqp & nope");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 6);
    }
}

TEST_CASE("search deduplicates isomorphic witnesses, keeping corpus order") {
    std::vector<CorpusEntry> corpus;
    corpus.push_back(entry("four_a", "Z(4)"));
    corpus.push_back(entry("four_b", "Z(4)"));  // isomorphic duplicate
    corpus.push_back(entry("two", "Z(2)"));
    corpus.push_back(entry("klein", "Prod(Z(2),Z(2))"));  // same size as Z(4), not isomorphic

    auto hits = search_strictness(corpus, 16, parse_query("chained"));
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].name == "four_a");
    CHECK(hits[1].name == "two");
    CHECK(hits[0].size == 4);
    CHECK(hits[0].report.chained);

    auto both = search_strictness(corpus, 16, parse_query("local | !local"));
    CHECK(both.size() == 3);  // four_b still folds into four_a

    auto none = search_strictness(corpus, 16, parse_query("fqp & !gaussian"));
    CHECK(none.empty());

    auto capped = search_strictness(corpus, 2, parse_query("chained"));
    REQUIRE(capped.size() == 1);
    CHECK(capped[0].name == "two");
}

TEST_CASE("suites pass on a small mixed corpus") {
    std::vector<CorpusEntry> corpus;
    for (const char* s : {"Z(4)", "Z(8)", "Z(12)", "Poly(2,[x,y],[x^2,x*y,y^2])",
                          "Poly(2,[x,y],[x^2,x*y,y^3])", "TrivExt(Z(4),[2],1)"})
        corpus.push_back(entry(s, s));

    CHECK(verify_oracle_equivalence(corpus).pass());
    CHECK(verify_lemma38(corpus).pass());
    CHECK(verify_dichotomy(corpus).pass());
    CHECK(verify_zanardo(corpus).pass());
    CHECK(verify_base_change(corpus).pass());
    CHECK(verify_localization(corpus).pass());
    CHECK(verify_split_identity(corpus).pass());
    CHECK(verify_trivext(corpus, 1).pass());

    VerificationReport oracle = verify_oracle_equivalence(corpus);
    CHECK(oracle.instances > 20);  // every ideal of every ring above
    CHECK(oracle.rings_covered == corpus.size());
}

TEST_CASE("machine rendering is byte-stable across runs") {
    std::vector<CorpusEntry> corpus;
    for (const char* s : {"Z(8)", "Poly(2,[x,y],[x^2,x*y,y^2])"}) corpus.push_back(entry(s, s));

    std::string a = render_verification_machine(verify_lemma38(corpus));
    std::string b = render_verification_machine(verify_lemma38(corpus));
    CHECK(a == b);
    CHECK(a.find("\"schema\":\"fqp-lab/1\"") != std::string::npos);
    CHECK(a.find("elapsed") == std::string::npos);

    std::string ra = render_report_machine(classify_ring(corpus[0].ring));
    std::string rb = render_report_machine(classify_ring(corpus[0].ring));
    CHECK(ra == rb);
}

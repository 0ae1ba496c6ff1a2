#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fqp/common.hpp"
#include "fqp/deciders.hpp"
#include "fqp/ring.hpp"

namespace fqp {

/// One corpus ring: name, construction expression, tag, optional expected
/// flag values ("true"/"false", or a wdim class for key "wdim"), and the
/// built ring.
struct CorpusEntry {
    std::string name;
    std::string spec;
    std::string tag;  // "paper-example" | "family" | "generated" | "file"
    std::vector<std::pair<std::string, std::string>> expect;
    RingPtr ring;
};

/// The default corpus: the four fixture rings with pinned expectations,
/// then the families Z/n (n <= 64), F_p[x_1..x_k]/m^2 (p in {2,3},
/// k <= 3), trivial extensions A |x (A/m)^j (local Z/Poly bases of size
/// <= 16, j <= 2), and pairwise products of a small representative set.
/// Deterministic order and content.
std::vector<CorpusEntry> corpus_paper(const Config& cfg = {});

/// Corpus file: one entry per line, `name: spec expect{flag=value,...}`
/// where the name prefix and expect suffix are optional; '#' comments and
/// blank lines are skipped. Entries are tagged "file".
std::vector<CorpusEntry> load_corpus_file(const std::string& path, const Config& cfg = {});

struct VerificationFailure {
    std::string ring_name;
    std::string detail;
    std::string expected;
    std::string got;
};

/// Outcome of one suite. Failures empty means pass; caps_hit lists the
/// instances skipped for resource reasons (reported, not failed).
struct VerificationReport {
    std::string suite;
    std::size_t instances = 0;
    std::size_t rings_covered = 0;
    std::vector<VerificationFailure> failures;
    std::vector<std::string> caps_hit;
    double elapsed_ms = 0.0;

    bool pass() const { return failures.empty(); }
};

/// Axioms, full classification, hierarchy implications, and expected-flag
/// comparison over the corpus. A ring failing the axiom sweep is reported
/// and its property phase skipped.
VerificationReport verify_chain(const std::vector<CorpusEntry>& corpus, const Config& cfg = {});

/// Fast quasi-projectivity criterion vs the brute-force oracle, over every
/// ideal of every corpus ring within caps.
VerificationReport verify_oracle_equivalence(const std::vector<CorpusEntry>& corpus,
                                             const Config& cfg = {});

/// Incomparable-pair conclusions over all nonzero element pairs of every
/// local corpus ring, via a mask-based sweep; rings within the pair-suite
/// size cap additionally cross-check the inspector op on a sample of pairs.
VerificationReport verify_lemma38(const std::vector<CorpusEntry>& corpus, const Config& cfg = {});

/// Local fqp corpus rings fall into the NilSquareZero/Chained dichotomy.
VerificationReport verify_dichotomy(const std::vector<CorpusEntry>& corpus, const Config& cfg = {});

/// Over local corpus rings, every quasi-projective ideal I is isomorphic
/// to (R/Ann(I))^n with n its minimal generator count.
VerificationReport verify_zanardo(const std::vector<CorpusEntry>& corpus, const Config& cfg = {});

/// Quasi-projectivity descends along every quotient map R -> R/K:
/// M quasi-projective implies M/KM quasi-projective over R/K.
VerificationReport verify_base_change(const std::vector<CorpusEntry>& corpus, const Config& cfg = {});

/// Every local factor of an fqp corpus ring is fqp, and endomorphism
/// counts factor through the local decomposition.
VerificationReport verify_localization(const std::vector<CorpusEntry>& corpus, const Config& cfg = {});

/// For quasi-projective ideals M of local oracle-sized rings and
/// incomparable submodule pairs summing to M (a deterministic sample per
/// ideal), an identity-splitting endomorphism pair exists and is found.
VerificationReport verify_split_identity(const std::vector<CorpusEntry>& corpus,
                                         const Config& cfg = {});

/// For every local corpus base A of size <= 16 and 1 <= j <= j_max:
/// A |x (A/m)^j is fqp exactly when m^2 = 0 in A; fqp of the extension
/// implies fqp of A; non-chained fqp extensions have zero-divisors equal
/// to nilpotents.
VerificationReport verify_trivext(const std::vector<CorpusEntry>& corpus, unsigned j_max,
                                  const Config& cfg = {});

/// Boolean query over classification flags: atoms are flag names
/// (von_neumann_regular/vnr, total_quotient_ring/tqr aliases), operators
/// ! & | and parentheses.
struct Query {
    enum class Op { Flag, Not, And, Or };
    Op op = Op::Flag;
    std::string flag;
    std::vector<Query> kids;
};

Query parse_query(const std::string& text);
bool eval_query(const Query& q, const PropertyReport& report);

struct SearchWitness {
    std::string name;
    std::string spec;
    std::size_t size = 0;
    RingPtr ring;
    PropertyReport report;
};

/// Classifies corpus rings of size <= size_max and returns those whose
/// report satisfies the query, deduplicated by ring fingerprint (full
/// isomorphism check on fingerprint collisions). Corpus order.
std::vector<SearchWitness> search_strictness(const std::vector<CorpusEntry>& corpus,
                                             std::size_t size_max, const Query& query,
                                             const Config& cfg = {});

/// Copy of the ring with one multiplication-table entry replaced; the
/// result intentionally bypasses no validation beyond shape, so axiom
/// sweeps can observe the damage. Test instrumentation.
RingPtr mutate_mul(const RingPtr& ring, Elem a, Elem b, Elem value);

}  // namespace fqp

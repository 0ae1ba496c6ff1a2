// Command-line front end: classify ring specs, run verification suites,
// search the corpus for separating witnesses, and list the corpus.
//
// Exit codes: 0 pass, 1 property failure, 2 spec/parse error, 3 resource
// cap (always for construction caps; for in-flight caps only under
// --strict).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fqp/deciders.hpp"
#include "fqp/harness.hpp"
#include "fqp/report_io.hpp"
#include "fqp/ring.hpp"
#include "fqp/ringspec.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;

void apply_cap(fqp::Config& cfg, const std::string& key, const std::string& value) {
    auto num = [&]() -> std::size_t {
        std::size_t pos = 0;
        unsigned long v = std::stoul(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("bad cap value: " + value);
        return static_cast<std::size_t>(v);
    };
    if (key == "ring_size_cap")
        cfg.ring_size_cap = num();
    else if (key == "ideal_count_cap")
        cfg.ideal_count_cap = num();
    else if (key == "oracle_module_cap")
        cfg.oracle_module_cap = num();
    else if (key == "oracle_generator_cap")
        cfg.oracle_generator_cap = num();
    else if (key == "candidate_cap")
        cfg.candidate_cap = num();
    else if (key == "content_degree")
        cfg.content_degree = static_cast<unsigned>(num());
    else if (key == "content_pair_cap")
        cfg.content_pair_cap = num();
    else if (key == "axiom_size_cap")
        cfg.axiom_size_cap = num();
    else if (key == "pair_suite_size_cap")
        cfg.pair_suite_size_cap = num();
    else if (key == "base_change_size_cap")
        cfg.base_change_size_cap = num();
    else
        throw std::invalid_argument("unknown cap: " + key);
}

void apply_caps_string(fqp::Config& cfg, const std::string& caps) {
    std::stringstream ss(caps);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("cap override without '=': " + item);
        apply_cap(cfg, item.substr(0, eq), item.substr(eq + 1));
    }
}

void load_env_config(fqp::Config& cfg) {
    const char* path = std::getenv("FQP_LAB_CONFIG");
    if (!path || !*path) return;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(std::string("cannot open config file: ") + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config file ") + path + ": " + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "output_format")
            cfg.output_format = it.value().get<std::string>();
        else if (key == "oracle_check")
            cfg.oracle_check = it.value().get<bool>();
        else
            apply_cap(cfg, key, it.value().dump());
    }
}

struct CommonFlags {
    std::string format;
    std::string caps;
    bool no_oracle = false;
    bool strict = false;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--format", flags.format, "Output format: human or machine")
        ->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--caps", flags.caps, "Cap overrides, e.g. oracle_module_cap=32,candidate_cap=10000");
    sub->add_flag("--no-oracle", flags.no_oracle, "Skip the brute-force quasi-projectivity cross-check");
    sub->add_flag("--strict", flags.strict, "Treat skipped-for-caps instances as exit code 3");
}

fqp::Config make_config(const CommonFlags& flags) {
    fqp::Config cfg;
    load_env_config(cfg);
    if (!flags.caps.empty()) apply_caps_string(cfg, flags.caps);
    if (!flags.format.empty()) cfg.output_format = flags.format;
    if (flags.no_oracle) cfg.oracle_check = false;
    cfg.validate();
    return cfg;
}

std::vector<fqp::CorpusEntry> make_corpus(const std::string& corpus_file,
                                          const fqp::Config& cfg) {
    if (!corpus_file.empty()) return fqp::load_corpus_file(corpus_file, cfg);
    return fqp::corpus_paper(cfg);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "chain",          "oracle-equivalence", "incomparable-pairs",
        "local-dichotomy", "cyclic-power-shape", "base-change",
        "localization",   "split-identity",     "trivial-extension"};
    return names;
}

fqp::VerificationReport run_suite(const std::string& name,
                                  const std::vector<fqp::CorpusEntry>& corpus, unsigned j_max,
                                  const fqp::Config& cfg) {
    if (name == "chain") return fqp::verify_chain(corpus, cfg);
    if (name == "oracle-equivalence") return fqp::verify_oracle_equivalence(corpus, cfg);
    if (name == "incomparable-pairs") return fqp::verify_lemma38(corpus, cfg);
    if (name == "local-dichotomy") return fqp::verify_dichotomy(corpus, cfg);
    if (name == "cyclic-power-shape") return fqp::verify_zanardo(corpus, cfg);
    if (name == "base-change") return fqp::verify_base_change(corpus, cfg);
    if (name == "localization") return fqp::verify_localization(corpus, cfg);
    if (name == "split-identity") return fqp::verify_split_identity(corpus, cfg);
    if (name == "trivial-extension") return fqp::verify_trivext(corpus, j_max, cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

int cmd_classify(const std::string& spec, const CommonFlags& flags) {
    fqp::Config cfg = make_config(flags);
    fqp::RingPtr ring = fqp::build_ring(spec, cfg);
    if (ring->size() <= cfg.axiom_size_cap) {
        if (auto v = fqp::check_axioms(*ring)) {
            std::cerr << "axiom violation: " << v->describe(*ring) << "\n";
            return kExitFailure;
        }
    }
    fqp::PropertyReport report = fqp::classify_ring(ring, cfg);
    if (cfg.output_format == "machine")
        std::cout << fqp::render_report_machine(report);
    else
        std::cout << fqp::render_report_human(report);
    if (flags.strict && !report.caps_hit.empty()) return kExitCap;
    return kExitPass;
}

int cmd_verify(const std::string& which, const std::string& corpus_file, unsigned j_max,
               const CommonFlags& flags) {
    fqp::Config cfg = make_config(flags);
    std::vector<fqp::CorpusEntry> corpus = make_corpus(corpus_file, cfg);
    std::vector<std::string> selected;
    if (which == "all")
        selected = suite_names();
    else
        selected.push_back(which);
    bool failed = false;
    bool capped = false;
    for (const auto& name : selected) {
        fqp::VerificationReport report = run_suite(name, corpus, j_max, cfg);
        if (cfg.output_format == "machine")
            std::cout << fqp::render_verification_machine(report);
        else
            std::cout << fqp::render_verification_human(report);
        failed = failed || !report.pass();
        capped = capped || !report.caps_hit.empty();
    }
    if (failed) return kExitFailure;
    if (flags.strict && capped) return kExitCap;
    return kExitPass;
}

int cmd_search(const std::string& query_text, const std::string& corpus_file,
               std::size_t size_max, bool expect_empty, const CommonFlags& flags) {
    fqp::Config cfg = make_config(flags);
    fqp::Query query = fqp::parse_query(query_text);
    std::vector<fqp::CorpusEntry> corpus = make_corpus(corpus_file, cfg);
    std::vector<fqp::SearchWitness> witnesses =
        fqp::search_strictness(corpus, size_max, query, cfg);
    if (cfg.output_format == "machine")
        std::cout << fqp::render_search_machine(query_text, witnesses);
    else
        std::cout << fqp::render_search_human(query_text, witnesses);
    if (expect_empty && !witnesses.empty()) return kExitFailure;
    return kExitPass;
}

int cmd_corpus_list(const std::string& corpus_file, const CommonFlags& flags) {
    fqp::Config cfg = make_config(flags);
    std::vector<fqp::CorpusEntry> corpus = make_corpus(corpus_file, cfg);
    if (cfg.output_format == "machine")
        std::cout << fqp::render_corpus_machine(corpus);
    else
        std::cout << fqp::render_corpus_human(corpus);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deciders and verification suites for the Prufer-condition hierarchy on finite commutative rings"};
    app.require_subcommand(1);

    CommonFlags flags;

    std::string classify_spec;
    CLI::App* classify = app.add_subcommand("classify", "Classify one ring given by a spec expression");
    classify->add_option("spec", classify_spec, "Ring spec, e.g. Z(8) or Poly(2,[x,y],[x^2,x*y,y^2])")
        ->required();
    add_common(classify, flags);

    std::string verify_which;
    std::string verify_corpus;
    unsigned j_max = 2;
    CLI::App* verify = app.add_subcommand("verify", "Run one verification suite, or all of them");
    verify->add_option("suite", verify_which, "Suite name or 'all'")
        ->required()
        ->check(CLI::IsMember([] {
            std::vector<std::string> v = suite_names();
            v.push_back("all");
            return v;
        }()));
    verify->add_option("--corpus", verify_corpus, "Corpus file replacing the built-in corpus");
    verify->add_option("--jmax", j_max, "Trivial-extension exponent bound");
    add_common(verify, flags);

    std::string search_query;
    std::string search_corpus;
    std::size_t size_max = 4096;
    bool expect_empty = false;
    CLI::App* search = app.add_subcommand("search", "Search the corpus for rings matching a flag query");
    search->add_option("query", search_query, "Flag query, e.g. 'fqp & !arithmetical'")->required();
    search->add_option("--corpus", search_corpus, "Corpus file replacing the built-in corpus");
    search->add_option("--size-max", size_max, "Only consider rings of at most this size");
    search->add_flag("--expect-empty", expect_empty, "Exit 1 when the query has any witness");
    add_common(search, flags);

    std::string corpus_action;
    std::string corpus_corpus;
    CLI::App* corpus = app.add_subcommand("corpus", "Corpus inspection");
    corpus->add_option("action", corpus_action, "Only 'list' is supported")
        ->required()
        ->check(CLI::IsMember({"list"}));
    corpus->add_option("--corpus", corpus_corpus, "Corpus file replacing the built-in corpus");
    add_common(corpus, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitParse;
    }

    try {
        if (app.got_subcommand(classify)) return cmd_classify(classify_spec, flags);
        if (app.got_subcommand(verify))
            return cmd_verify(verify_which, verify_corpus, j_max, flags);
        if (app.got_subcommand(search))
            return cmd_search(search_query, search_corpus, size_max, expect_empty, flags);
        if (app.got_subcommand(corpus)) return cmd_corpus_list(corpus_corpus, flags);
    } catch (const fqp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const fqp::CapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::logic_error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitPass;
}

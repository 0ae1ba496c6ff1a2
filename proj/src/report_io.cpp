#include "fqp/report_io.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace fqp {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct FlagRow {
    const char* name;
    bool value;
};

std::vector<FlagRow> flag_rows(const PropertyReport& r) {
    return {{"local", r.local},
            {"chained", r.chained},
            {"arithmetical", r.arithmetical},
            {"fqp", r.fqp},
            {"gaussian", r.gaussian},
            {"prufer", r.prufer},
            {"reduced", r.reduced},
            {"von_neumann_regular", r.von_neumann_regular},
            {"total_quotient_ring", r.total_quotient_ring}};
}

ordered_json classification_record(const PropertyReport& r) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["record"] = "classification";
    j["name"] = r.ring_name;
    j["spec"] = r.ring_spec;
    j["size"] = r.ring_size;
    ordered_json flags;
    for (const auto& row : flag_rows(r)) flags[row.name] = row.value;
    j["flags"] = flags;
    j["wdim"] = to_string(r.wdim);
    ordered_json wit = ordered_json::array();
    for (const auto& [flag, evidence] : r.witnesses)
        wit.push_back(ordered_json{{"flag", flag}, {"evidence", evidence}});
    j["witnesses"] = wit;
    j["oracle_verified"] = r.oracle_verified;
    j["oracle_checked"] = r.oracle_checked;
    j["ideal_count"] = r.ideal_count;
    j["caps_hit"] = r.caps_hit;
    return j;
}

}  // namespace

std::string render_report_human(const PropertyReport& r) {
    std::ostringstream os;
    os << r.ring_name << "  [size " << r.ring_size << "]\n";
    if (!r.ring_spec.empty()) os << "  spec                  " << r.ring_spec << "\n";
    for (const auto& row : flag_rows(r)) {
        os << "  " << std::left << std::setw(22) << row.name << yes_no(row.value);
        if (const std::string* w = r.witness_for(row.name)) os << "   [" << *w << "]";
        os << "\n";
    }
    os << "  " << std::left << std::setw(22) << "wdim" << to_string(r.wdim);
    if (const std::string* w = r.witness_for("wdim")) os << "   [" << *w << "]";
    os << "\n";
    os << "  " << std::left << std::setw(22) << "ideals" << r.ideal_count
       << " (oracle checked " << r.oracle_checked
       << (r.oracle_verified ? ", verified" : "") << ")\n";
    if (!r.caps_hit.empty()) {
        os << "  caps hit\n";
        for (const auto& c : r.caps_hit) os << "    - " << c << "\n";
    }
    os << "  " << std::left << std::setw(22) << "elapsed_ms" << std::fixed
       << std::setprecision(2) << r.elapsed_ms << "\n";
    return os.str();
}

std::string render_report_machine(const PropertyReport& r) {
    return classification_record(r).dump() + "\n";
}

std::string render_verification_human(const VerificationReport& r) {
    std::ostringstream os;
    os << "suite " << r.suite << ": " << (r.pass() ? "PASS" : "FAIL") << "  (instances "
       << r.instances << ", rings " << r.rings_covered << ", elapsed "
       << std::fixed << std::setprecision(0) << r.elapsed_ms << " ms)\n";
    if (!r.caps_hit.empty()) {
        os << "  caps hit (" << r.caps_hit.size() << ")\n";
        for (const auto& c : r.caps_hit) os << "    - " << c << "\n";
    }
    for (const auto& f : r.failures) {
        os << "  FAIL " << f.ring_name << ": " << f.detail << "\n";
        os << "       expected: " << f.expected << "\n";
        os << "       got:      " << f.got << "\n";
    }
    return os.str();
}

std::string render_verification_machine(const VerificationReport& r) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["record"] = "verification";
    j["suite"] = r.suite;
    j["pass"] = r.pass();
    j["instances"] = r.instances;
    j["rings_covered"] = r.rings_covered;
    ordered_json fails = ordered_json::array();
    for (const auto& f : r.failures)
        fails.push_back(ordered_json{{"ring", f.ring_name},
                                     {"detail", f.detail},
                                     {"expected", f.expected},
                                     {"got", f.got}});
    j["failures"] = fails;
    j["caps_hit"] = r.caps_hit;
    return j.dump() + "\n";
}

std::string render_search_human(const std::string& query,
                                const std::vector<SearchWitness>& witnesses) {
    std::ostringstream os;
    os << "query      " << query << "\n";
    os << "witnesses  " << witnesses.size() << "\n";
    std::size_t width = 4;
    for (const auto& w : witnesses) width = std::max(width, w.name.size());
    for (const auto& w : witnesses)
        os << "  " << std::left << std::setw(static_cast<int>(width + 2)) << w.name << "size "
           << std::setw(6) << w.size << w.spec << "\n";
    return os.str();
}

std::string render_search_machine(const std::string& query,
                                  const std::vector<SearchWitness>& witnesses) {
    std::ostringstream os;
    ordered_json head;
    head["schema"] = kSchemaVersion;
    head["record"] = "search";
    head["query"] = query;
    head["witnesses"] = witnesses.size();
    os << head.dump() << "\n";
    for (const auto& w : witnesses) os << classification_record(w.report).dump() << "\n";
    return os.str();
}

std::string render_corpus_human(const std::vector<CorpusEntry>& corpus) {
    std::ostringstream os;
    os << "corpus (" << corpus.size() << " entries)\n";
    std::size_t nw = 4, tw = 3;
    for (const auto& e : corpus) {
        nw = std::max(nw, e.name.size());
        tw = std::max(tw, e.tag.size());
    }
    for (const auto& e : corpus) {
        os << "  " << std::left << std::setw(static_cast<int>(nw + 2)) << e.name
           << std::setw(static_cast<int>(tw + 2)) << e.tag << "size " << std::setw(6)
           << e.ring->size() << e.spec;
        if (!e.expect.empty()) {
            os << "  expect{";
            for (std::size_t i = 0; i < e.expect.size(); ++i) {
                if (i) os << ",";
                os << e.expect[i].first << "=" << e.expect[i].second;
            }
            os << "}";
        }
        os << "\n";
    }
    return os.str();
}

std::string render_corpus_machine(const std::vector<CorpusEntry>& corpus) {
    std::ostringstream os;
    for (const auto& e : corpus) {
        ordered_json j;
        j["schema"] = kSchemaVersion;
        j["record"] = "corpus-entry";
        j["name"] = e.name;
        j["spec"] = e.spec;
        j["tag"] = e.tag;
        j["size"] = e.ring->size();
        ordered_json expect = ordered_json::object();
        for (const auto& [k, v] : e.expect) expect[k] = v;
        j["expect"] = expect;
        os << j.dump() << "\n";
    }
    return os.str();
}

}  // namespace fqp

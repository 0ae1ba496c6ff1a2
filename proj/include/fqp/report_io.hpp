#pragma once

#include <string>
#include <vector>

#include "fqp/deciders.hpp"
#include "fqp/harness.hpp"

namespace fqp {

/// Stable schema tag carried by every machine record.
inline constexpr const char* kSchemaVersion = "fqp-lab/1";

// Human renderings: aligned multi-line text ending in a newline.
std::string render_report_human(const PropertyReport& report);
std::string render_verification_human(const VerificationReport& report);
std::string render_search_human(const std::string& query,
                                const std::vector<SearchWitness>& witnesses);
std::string render_corpus_human(const std::vector<CorpusEntry>& corpus);

// Machine renderings: one JSON object per line, fixed field order,
// byte-identical across runs (elapsed time is excluded).
std::string render_report_machine(const PropertyReport& report);
std::string render_verification_machine(const VerificationReport& report);
std::string render_search_machine(const std::string& query,
                                  const std::vector<SearchWitness>& witnesses);
std::string render_corpus_machine(const std::vector<CorpusEntry>& corpus);

}  // namespace fqp

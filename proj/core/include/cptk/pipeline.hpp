#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cptk/generators.hpp"
#include "cptk/speclang.hpp"
#include "cptk/verdict.hpp"

namespace cptk {

enum class CheckStatus { Pass, Fail, Indeterminate, Skipped, Error };

std::string to_string(CheckStatus s);

struct CheckResult {
    std::string id;
    CheckStatus status{CheckStatus::Pass};
    std::vector<Witness> witnesses;
    std::string note; // skip reason or error text
};

/// Ordered results of the whole verification pipeline plus the derived
/// artifacts. Deterministic for a given document.
struct Report {
    std::vector<CheckResult> checks;

    std::optional<GeneratorSet> generators;
    std::optional<FundamentalPartition> partition;
    std::vector<BracketRelation> brackets;
    std::vector<std::string> artifact_errors;

    // Rendered artifact text (stable; reused by both output formats).
    std::vector<std::string> generator_lines;
    std::vector<std::string> partition_lines;
    std::vector<std::string> bracket_lines;

    bool all_executed_passed() const;
    const CheckResult* find(const std::string& id) const;
};

/// Runs every check in dependency order; prerequisites that failed mark their
/// dependents skipped-with-reason rather than aborting.
Report run_pipeline(const SpecDocument& doc);

enum class ReportFormat { Text, Json };

/// Stable serialization; byte-identical across runs for the same document.
/// Color applies to the text form only and is off unless explicitly enabled.
std::string emit_report(const Report& r, ReportFormat format,
                        bool color = false);

} // namespace cptk

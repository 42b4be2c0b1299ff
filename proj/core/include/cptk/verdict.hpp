#pragma once

#include <string>
#include <vector>

namespace cptk {

/// One offending location of a failed or indeterminate check.
struct Witness {
    std::string location;
    std::string expected;
    std::string found;
};

enum class VerdictStatus { Pass, Fail, Indeterminate };

/// Structured result of one exact check. A pass carries no witnesses;
/// failures and indeterminate results explain themselves.
struct Verdict {
    VerdictStatus status{VerdictStatus::Pass};
    std::vector<Witness> witnesses;

    bool passed() const { return status == VerdictStatus::Pass; }
    bool failed() const { return status == VerdictStatus::Fail; }

    static Verdict pass() { return {}; }
    static Verdict fail(std::vector<Witness> ws) {
        return {VerdictStatus::Fail, std::move(ws)};
    }
    static Verdict fail(std::string location, std::string expected,
                        std::string found) {
        return fail({Witness{std::move(location), std::move(expected),
                             std::move(found)}});
    }
    static Verdict indeterminate(std::vector<Witness> ws) {
        return {VerdictStatus::Indeterminate, std::move(ws)};
    }

    /// Merges another verdict: fail dominates, indeterminate beats pass.
    void absorb(const Verdict& other);
};

std::string to_string(VerdictStatus s);

} // namespace cptk

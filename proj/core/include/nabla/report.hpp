#pragma once

#include <string>
#include <vector>

namespace nabla {

/// Outcome of one identity check.
struct CheckResult {
    std::string name;     ///< identity name, e.g. "delta-bracket-2"
    bool passed = false;
    std::string residual; ///< rendering of the (first nonzero) residual, "0" on success
    std::string where;    ///< basis tuple or sample at which the residual was taken
};

class Report {
public:
    void add(CheckResult r) { checks_.push_back(std::move(r)); }
    void append(const Report& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }

    const std::vector<CheckResult>& checks() const { return checks_; }
    bool all_passed() const
    {
        for (const auto& c : checks_) {
            if (!c.passed) return false;
        }
        return true;
    }
    /// Throws std::out_of_range if no check has this name.
    const CheckResult& at(const std::string& name) const;

private:
    std::vector<CheckResult> checks_;
};

} // namespace nabla

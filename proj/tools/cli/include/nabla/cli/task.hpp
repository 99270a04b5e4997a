#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nabla/cli/codec.hpp"
#include "nabla/report.hpp"

namespace nabla::cli {

/// One named residual or boolean identity inside a check.
struct Equation {
    std::string name;
    std::string residual; ///< rendering; "0" when it vanishes
    bool zero = true;
    std::string where;
};

/// The outcome of one entry of the payload's "checks" list.
struct CheckEntry {
    std::string name;
    std::string type;
    bool passed = true;
    bool skipped = false;
    std::vector<Equation> equations;
    Json values = Json::object();
    std::string error; ///< "Kind: message" when an expected error was raised
    /// Series residuals must be known at least to this order, else InsufficientPrecision.
    std::optional<Rational> required_order;

    void add(std::string eq, const NovikovSeries& residual, std::string_view variable = "q");
    void add(const CheckResult& r);
    void add(const Report& r);
    /// A named boolean condition, rendered "true"/"false".
    void require(std::string eq, bool ok, std::string detail = {});
};

struct TaskReport {
    std::string task;
    std::vector<CheckEntry> checks;

    bool passed() const;
    Json to_json() const;
    std::string to_text() const;
};

/// Per-module interpreter of a payload.
class TaskHandler {
public:
    virtual ~TaskHandler() = default;
    /// Reads the shared part of the payload (models, problems, ...).
    virtual void load(const Json& payload, const Context& ctx) = 0;
    /// Runs one check of the given type into `entry`.
    virtual void run(const std::string& type, const Json& check, const Context& ctx, CheckEntry& entry) = 0;
};

std::unique_ptr<TaskHandler> make_ode_handler();
std::unique_ptr<TaskHandler> make_mirror_handler();
std::unique_ptr<TaskHandler> make_gw_handler();
std::unique_ptr<TaskHandler> make_bv_handler();
std::unique_ptr<TaskHandler> make_operad_handler();

struct RunOptions {
    /// Required task name (subcommands); empty accepts any.
    std::string expected_task;
    /// Overrides the file's "output" field when set.
    std::string output;
    /// Overrides the file's "trunc" field when set.
    std::optional<Truncation> trunc;
    /// Check types to run; empty runs all, others are reported as skipped.
    std::set<std::string> only;
};

struct RunResult {
    int exit_code = 0;
    std::string output; ///< report or error document, newline terminated
    std::string diagnostics; ///< for stderr
};

/// Parses and runs a task document. Never throws.
RunResult run_task_text(const std::string& text, const RunOptions& options);
/// Reads the file and calls run_task_text; a missing file is a ParseError.
RunResult run_task_file(const std::string& path, const RunOptions& options);

} // namespace nabla::cli

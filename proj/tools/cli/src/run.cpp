#include <fstream>
#include <sstream>

#include "nabla/cli/task.hpp"
#include "nabla/errors.hpp"

namespace nabla::cli {

void CheckEntry::add(std::string eq, const NovikovSeries& residual, std::string_view variable)
{
    if (required_order && residual.truncation() < Truncation(*required_order)) {
        throw InsufficientPrecision(eq + " is only known below q^" + to_string(residual.truncation()) + ", required q^"
                                    + to_string(*required_order));
    }
    // A vanishing residual still shows how far it is known, as "O(q^T)".
    Equation e{std::move(eq), render(residual, variable), residual.is_zero(), {}};
    passed = passed && e.zero;
    equations.push_back(std::move(e));
}

void CheckEntry::add(const CheckResult& r)
{
    equations.push_back(Equation{r.name, r.residual, r.passed, r.where});
    passed = passed && r.passed;
}

void CheckEntry::add(const Report& r)
{
    for (const auto& c : r.checks()) add(c);
}

void CheckEntry::require(std::string eq, bool ok, std::string detail)
{
    equations.push_back(Equation{std::move(eq), ok ? "true" : "false", ok, std::move(detail)});
    passed = passed && ok;
}

bool TaskReport::passed() const
{
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

Json TaskReport::to_json() const
{
    Json out;
    out["schema"] = 1;
    out["task"] = task;
    out["passed"] = passed();
    Json list = Json::array();
    Json failures = Json::array();
    for (const auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["check"] = c.type;
        j["passed"] = c.passed;
        if (c.skipped) j["skipped"] = true;
        if (!c.error.empty()) j["error"] = c.error;
        Json eqs = Json::array();
        for (const auto& e : c.equations) {
            Json je{{"equation", e.name}, {"zero", e.zero}, {"residual", e.residual}};
            if (!e.where.empty()) je["where"] = e.where;
            eqs.push_back(std::move(je));
            if (!e.zero) failures.push_back(c.name + "/" + e.name);
        }
        j["equations"] = std::move(eqs);
        if (!c.values.empty()) j["values"] = c.values;
        list.push_back(std::move(j));
    }
    out["checks"] = std::move(list);
    out["failures"] = std::move(failures);
    return out;
}

namespace {

void text_values(std::ostringstream& os, const Json& values, const std::string& indent)
{
    for (const auto& [key, v] : values.items()) {
        if (v.is_object()) {
            os << indent << key << ":\n";
            text_values(os, v, indent + "  ");
        } else {
            os << indent << key << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

} // namespace

std::string TaskReport::to_text() const
{
    std::ostringstream os;
    os << "task " << task << ": " << (passed() ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
    for (const auto& c : checks) {
        os << (c.skipped ? "[SKIP] " : c.passed ? "[PASS] " : "[FAIL] ") << c.name;
        if (c.name != c.type) os << " (" << c.type << ")";
        os << "\n";
        if (!c.error.empty()) os << "  raised " << c.error << "\n";
        for (const auto& e : c.equations) {
            os << "  " << (e.zero ? "ok   " : "FAIL ") << e.name << ": " << e.residual;
            if (!e.where.empty()) os << "  [" << e.where << "]";
            os << "\n";
        }
        text_values(os, c.values, "  ");
    }
    return os.str();
}

namespace {

std::unique_ptr<TaskHandler> handler_for(const std::string& task)
{
    if (task == "ode") return make_ode_handler();
    if (task == "mirror") return make_mirror_handler();
    if (task == "gw") return make_gw_handler();
    if (task == "bv") return make_bv_handler();
    if (task == "operad") return make_operad_handler();
    throw ParseError("unknown task \"" + task + "\"");
}

RunResult error_result(const std::exception& e, const std::string& task, const std::string& output)
{
    RunResult r;
    r.exit_code = exit_code_for(e);
    const std::string kind = error_kind(e);
    r.diagnostics = "error: " + kind + ": " + e.what() + "\n";
    if (output == "json") {
        Json j;
        j["schema"] = 1;
        j["task"] = task;
        j["error"] = Json{{"kind", kind}, {"message", e.what()}};
        j["exit_code"] = r.exit_code;
        r.output = j.dump(2) + "\n";
    } else {
        r.output = r.diagnostics;
    }
    return r;
}

} // namespace

RunResult run_task_text(const std::string& text, const RunOptions& options)
{
    std::string task = options.expected_task;
    std::string output = options.output.empty() ? "text" : options.output;
    try {
        Json doc;
        try {
            doc = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what());
        }
        if (!doc.is_object()) throw ParseError("task file must be a JSON object");
        if (options.output.empty() && doc.contains("output")) output = string_from(doc["output"], "output");
        if (output != "json" && output != "text") {
            const std::string bad = output;
            output = "text";
            throw ParseError("output must be \"json\" or \"text\", not \"" + bad + "\"");
        }
        if (doc.contains("task")) {
            const std::string declared = string_from(doc["task"], "task");
            if (!task.empty() && declared != task) {
                throw ParseError("file declares task \"" + declared + "\" but was run as \"" + task + "\"");
            }
            task = declared;
        }
        if (task.empty()) throw ParseError("missing \"task\"");

        Context ctx;
        if (doc.contains("trunc")) ctx.trunc = truncation_from(doc["trunc"], "trunc");
        if (options.trunc) ctx.trunc = options.trunc;

        std::unique_ptr<TaskHandler> handler = handler_for(task);
        const Json& payload = field(doc, "payload", "task file");
        handler->load(payload, ctx);

        const Json& checks = field(payload, "checks", "payload");
        if (!checks.is_array()) throw ParseError("payload.checks must be an array");

        TaskReport report;
        report.task = task;
        for (const Json& check : checks) {
            CheckEntry entry;
            entry.type = string_from(field(check, "check", "payload.checks"), "check");
            entry.name = check.contains("name") ? string_from(check["name"], "name") : entry.type;
            if (check.contains("require_order")) entry.required_order = rational_from(check["require_order"], "require_order");
            if (!options.only.empty() && !options.only.count(entry.type)) {
                entry.skipped = true;
                report.checks.push_back(std::move(entry));
                continue;
            }
            if (check.contains("expect_error")) {
                const std::string expected = string_from(check["expect_error"], "expect_error");
                try {
                    handler->run(entry.type, check, ctx, entry);
                    entry.require("raises " + expected, false, "no error raised");
                } catch (const Error& e) {
                    const std::string kind = error_kind(e);
                    entry.equations.clear();
                    entry.passed = true;
                    entry.error = kind + ": " + e.what();
                    entry.require("raises " + expected, kind == expected, kind == expected ? "" : "raised " + kind);
                }
            } else {
                handler->run(entry.type, check, ctx, entry);
            }
            report.checks.push_back(std::move(entry));
        }

        RunResult r;
        r.exit_code = report.passed() ? 0 : 1;
        r.output = output == "json" ? report.to_json().dump(2) + "\n" : report.to_text();
        return r;
    } catch (const std::exception& e) {
        return error_result(e, task, output);
    }
}

RunResult run_task_file(const std::string& path, const RunOptions& options)
{
    std::ifstream in(path);
    if (!in) {
        return error_result(ParseError("cannot open task file " + path), options.expected_task,
                            options.output.empty() ? "text" : options.output);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_task_text(ss.str(), options);
}

} // namespace nabla::cli

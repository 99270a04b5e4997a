#include <iostream>
#include <map>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "nabla/cli/task.hpp"
#include "nabla/errors.hpp"

namespace {

struct Common {
    std::string file;
    std::string output;
    std::string trunc;
    std::vector<std::string> checks;
};

CLI::App* add_task(CLI::App& app, const std::string& name, const std::string& help, Common& common)
{
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", common.file, "task file (JSON)")->required();
    sub->add_option("--output", common.output, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--trunc", common.trunc, "global truncation p/q or inf, overriding the file");
    sub->add_option("--check", common.checks, "run only checks of this type (repeatable)");
    return sub;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"nabla: exact verification of connection, quantum product, BV and disc-operad identities"};
    app.require_subcommand(1);

    Common common;
    std::map<std::string, bool> bv_flags{{"axioms", false},  {"leibniz", false}, {"delta-nabla", false},
                                         {"gauge", false},   {"bs", false},      {"second-order", false}};

    for (const auto& [name, help] : {std::pair{"ode", "connection equation chain tasks"},
                                     std::pair{"mirror", "mirror Riccati and scalar ODE tasks"},
                                     std::pair{"gw", "quantum product, psi/eta and Gauss-Manin tasks"},
                                     std::pair{"bv", "BV algebra with connection tasks"},
                                     std::pair{"operad", "framed little disc tasks"},
                                     std::pair{"run", "any task file, dispatched on its \"task\" field"}}) {
        CLI::App* sub = add_task(app, name, help, common);
        if (std::string(name) == "bv") {
            for (auto& [flag, set] : bv_flags) sub->add_flag("--" + flag, set, "run " + flag + " checks");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string task = app.get_subcommands().front()->get_name();
    nabla::cli::RunOptions options;
    if (task != "run") options.expected_task = task;
    options.output = common.output;
    options.only.insert(common.checks.begin(), common.checks.end());
    for (const auto& [flag, set] : bv_flags) {
        if (set) options.only.insert(flag);
    }
    if (!common.trunc.empty()) {
        try {
            options.trunc = nabla::parse_truncation(common.trunc);
        } catch (const nabla::Error& e) {
            std::cerr << "error: ParseError: --trunc: " << e.what() << "\n";
            return 2;
        }
    }

    const nabla::cli::RunResult r = nabla::cli::run_task_file(common.file, options);
    std::cout << r.output;
    if (!r.diagnostics.empty() && r.output != r.diagnostics) std::cerr << r.diagnostics;
    return r.exit_code;
}

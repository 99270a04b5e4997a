#include <optional>

#include "nabla/cli/task.hpp"
#include "nabla/errors.hpp"

namespace nabla::cli {

namespace {

Rational order_from(const Json& check, const Context& ctx)
{
    if (check.contains("order")) return rational_from(check["order"], "order");
    if (ctx.trunc && ctx.trunc->is_finite()) return ctx.trunc->value();
    throw ParseError("missing \"order\" (or a global truncation)");
}

void chain_into(CheckEntry& entry, const NovikovSeries& rho, const ODEProblem& prob)
{
    const EquationChain chain = equation_chain(rho, prob);
    entry.add("linear-system-rho", chain.system.first);
    entry.add("linear-system-sigma", chain.system.second);
    entry.add("second-order", chain.second_order);
    entry.add("riccati", chain.riccati);
    entry.add("projective", chain.projective);
    entry.values["sigma"] = render(chain.sigma);
    entry.values["alpha"] = render(chain.alpha);
    entry.values["lambda"] = render(chain.lambda);
}

class OdeHandler : public TaskHandler {
public:
    void load(const Json& payload, const Context& ctx) override
    {
        if (payload.contains("problem")) prob_ = problem_from(payload["problem"], ctx);
    }

    void run(const std::string& type, const Json& check, const Context& ctx, CheckEntry& entry) override
    {
        std::optional<ODEProblem> local;
        auto prob_ref = [&]() -> const ODEProblem& {
            if (check.contains("problem")) {
                if (!local) local = problem_from(check["problem"], ctx);
                return *local;
            }
            return problem();
        };
        auto series = [&](const char* key) { return series_from(field(check, key, type), ctx, key); };

        if (type == "system") {
            const SystemResidual r = system_residual(series("rho"), series("sigma"), prob_ref());
            entry.add("linear-system-rho", r.first);
            entry.add("linear-system-sigma", r.second);
        } else if (type == "chain") {
            chain_into(entry, series("rho"), prob_ref());
        } else if (type == "solve") {
            const NovikovSeries rho = solve_second_order(prob_ref(), seed_from(field(check, "seed", type)), order_from(check, ctx));
            entry.values["rho"] = render(rho);
            chain_into(entry, rho, prob_ref());
        } else if (type == "schwarz") {
            NovikovSeries theta;
            if (check.contains("theta")) {
                theta = series("theta");
            } else {
                const Json& seeds = field(check, "seeds", type);
                if (!seeds.is_array() || seeds.size() != 2) throw ParseError("schwarz.seeds must list two seeds");
                const Rational order = order_from(check, ctx);
                const NovikovSeries rho1 = solve_second_order(prob_ref(), seed_from(seeds[0]), order);
                const NovikovSeries rho2 = solve_second_order(prob_ref(), seed_from(seeds[1]), order);
                theta = divide(rho2, rho1);
                entry.values["rho1"] = render(rho1);
                entry.values["rho2"] = render(rho2);
            }
            entry.values["theta"] = render(theta);
            entry.add("schwarzian", schwarz_residual(theta, prob_ref()));
        } else if (type == "schwarzian") {
            const NovikovSeries s = schwarzian(series("theta"));
            entry.values["schwarzian"] = render(s);
            if (check.contains("expect")) entry.add("expected", s - series("expect"));
        } else if (type == "coefficients") {
            const SecondOrderCoefficients c = second_order_coeffs(prob_ref());
            entry.values["p"] = render(c.p);
            entry.values["r"] = render(c.r);
            if (check.contains("expect_p")) entry.add("expected-p", c.p - series("expect_p"));
            if (check.contains("expect_r")) entry.add("expected-r", c.r - series("expect_r"));
        } else {
            throw ParseError("unknown ode check \"" + type + "\"");
        }
    }

private:
    const ODEProblem& problem() const
    {
        if (!prob_) throw ParseError("missing \"problem\"");
        return *prob_;
    }

    std::optional<ODEProblem> prob_;
};

class MirrorHandler : public TaskHandler {
public:
    void load(const Json&, const Context&) override {}

    void run(const std::string& type, const Json& check, const Context& ctx, CheckEntry& entry) override
    {
        const NovikovSeries f = series_from(field(check, "f", type), ctx, "f", "h");
        const Rational order = order_from(check, ctx);
        const NovikovSeries l = log_derivative(f, Truncation(order));
        if (type == "mirror-a") {
            const NovikovSeries a = mirror_a(rational_from(field(check, "p0", type), "p0"), f, order);
            entry.values["a"] = render(a, "h");
            entry.add("mirror-riccati", mirror_a_residual(a, l), "h");
        } else if (type == "mirror-ode") {
            const Json& spec = field(check, "eta", type);
            NovikovSeries eta;
            if (spec == "1/f") {
                eta = invert(f, Truncation(order));
            } else if (spec == "h/f") {
                eta = NovikovSeries::monomial(Rational(1), Rational(1)) * invert(f, Truncation(order));
            } else {
                eta = series_from(spec, ctx, "eta", "h");
            }
            entry.values["eta"] = render(eta, "h");
            entry.add("mirror-ode", mirror_ode_residual(eta, l), "h");
        } else {
            throw ParseError("unknown mirror check \"" + type + "\"");
        }
    }
};

} // namespace

std::unique_ptr<TaskHandler> make_ode_handler() { return std::make_unique<OdeHandler>(); }
std::unique_ptr<TaskHandler> make_mirror_handler() { return std::make_unique<MirrorHandler>(); }

} // namespace nabla::cli

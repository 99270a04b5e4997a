#include <optional>

#include "nabla/cli/task.hpp"
#include "nabla/errors.hpp"
#include "nabla/gw.hpp"

namespace nabla::cli {

namespace {

/// {"name": series, ...} on the model basis.
ClassSeries class_from(const Json& value, const CohomologyModel& model, const Context& ctx, std::string_view where)
{
    if (!value.is_object()) throw ParseError("expected a class {name: series}" + std::string(" in ") + std::string(where));
    ClassSeries out = model.zero();
    for (const auto& [name, coeff] : value.items()) {
        const auto i = model.find(name);
        if (!i) throw ParseError("unknown class \"" + name + "\" in " + std::string(where));
        out[*i] += series_from(coeff, ctx, where);
    }
    return out;
}

bool zero(const EqElement& x) { return x.e.is_zero() && x.s.is_zero() && x.ss.is_zero(); }

class GwHandler : public TaskHandler {
public:
    void load(const Json& payload, const Context& ctx) override
    {
        if (payload.contains("problem")) prob_ = problem_from(payload["problem"], ctx);
        if (!payload.contains("model")) return;

        const Json& m = payload["model"];
        std::vector<BasisClass> basis;
        for (const Json& b : field(m, "basis", "model")) {
            basis.push_back({string_from(field(b, "name", "model.basis"), "model.basis"),
                             integer_from(field(b, "degree", "model.basis"), "model.basis")});
        }
        model_.emplace(std::move(basis));
        CohomologyModel& model = *model_;
        if (m.contains("unit")) {
            model.set_unit(model.index(string_from(m["unit"], "model.unit")));
            model.set_unital_products();
        }
        if (m.contains("m")) model.set_m_name(string_from(m["m"], "model.m"));
        if (m.contains("restriction_kernel")) model.set_restriction_kernel(m["restriction_kernel"].get<std::vector<std::string>>());
        if (m.contains("cup")) {
            for (const Json& e : m["cup"]) {
                model.set_cup(model.index(string_from(field(e, "left", "model.cup"), "model.cup")),
                              model.index(string_from(field(e, "right", "model.cup"), "model.cup")),
                              class_from(field(e, "result", "model.cup"), model, ctx, "model.cup"));
            }
        }
        if (m.contains("products")) {
            for (const Json& e : m["products"]) {
                model.set_product(integer_from(field(e, "k", "model.products"), "model.products.k"),
                                  model.index(string_from(field(e, "left", "model.products"), "model.products")),
                                  model.index(string_from(field(e, "right", "model.products"), "model.products")),
                                  class_from(field(e, "result", "model.products"), model, ctx, "model.products"));
            }
        }
        if (m.contains("w_class")) model.set_w_class(class_from(m["w_class"], model, ctx, "model.w_class"));

        if (payload.contains("gw")) {
            const Json& g = payload["gw"];
            GWData gw;
            gw.z0 = class_from(field(g, "z0", "gw"), model, ctx, "gw.z0");
            gw.z1 = class_from(field(g, "z1", "gw"), model, ctx, "gw.z1");
            gw.z2 = class_from(field(g, "z2", "gw"), model, ctx, "gw.z2");
            if (g.contains("z2tilde")) gw.z2tilde = class_from(g["z2tilde"], model, ctx, "gw.z2tilde");
            if (g.contains("gamma")) gw.gamma = rational_from(g["gamma"], "gw.gamma");
            gw_ = std::move(gw);
        }
        if (m.contains("divisor_products")) {
            model = with_divisor_products(model, gw(), string_from(m["divisor_products"], "model.divisor_products"));
        }
    }

    void run(const std::string& type, const Json& check, const Context& ctx, CheckEntry& entry) override
    {
        if (type == "gauss-manin") {
            gauss_manin(check, ctx, entry);
        } else if (type == "degrees") {
            validate(gw(), model());
            entry.require("z-degrees", true);
        } else if (type == "relations") {
            entry.add(divisor_relations_check(model(), gw()));
        } else if (type == "wdvv") {
            const Json& x = field(check, "x", type);
            const ClassSeries cls = x.is_string() ? model().basis_vector(x.get<std::string>()) : class_from(x, model(), ctx, "x");
            add_class(entry, "wdvv", wdvv_residual(cls, model(), gw()));
        } else if (type == "relative") {
            entry.values["relative_z2"] = render(relative_z2(model(), gw()), model().e_names());
            entry.add(relative_z2_check(model(), gw()));
        } else if (type == "psi-eta") {
            const PsiEta pe = solve_psi_eta(model(), gw(), string_from(field(check, "x", type), "x"));
            entry.values["psi"] = render(pe.psi);
            entry.values["eta"] = render(pe.eta);
            add_class(entry, "psi-eta-round-trip", psi_eta_residual(pe, model(), gw()));
            if (check.contains("expect_psi")) entry.add("expected-psi", pe.psi - series_from(check["expect_psi"], ctx, "expect_psi"));
            if (check.contains("expect_eta")) entry.add("expected-eta", pe.eta - series_from(check["expect_eta"], ctx, "expect_eta"));
        } else if (type == "uueq") {
            entry.add(uueq_rewrite_check(model(), gw(), problem()));
        } else {
            throw ParseError("unknown gw check \"" + type + "\"");
        }
    }

private:
    void add_class(CheckEntry& entry, std::string name, const ClassSeries& residual)
    {
        entry.equations.push_back(Equation{std::move(name), render(residual, model().names()), residual.is_zero(), {}});
        entry.passed = entry.passed && residual.is_zero();
    }

    void gauss_manin(const Json& check, const Context&, CheckEntry& entry)
    {
        const ODEProblem& prob = problem();
        const int n = check.contains("u_order") ? integer_from(check["u_order"], "u_order") : EqModule::kDefaultOrder;
        const EqModule module(prob, n);
        const GaussManin gm = gauss_manin_derivation(module);
        const int k = module.u_order();
        auto term = [k](const NovikovSeries& c, int p) { return USeries::term(c, p, k); };

        const EqElement expected_e{USeries(k), term(prob.psi, 1), USeries(k)};
        const EqElement expected_s{term(Rational(-4) * (prob.z2 * prob.psi), 2), term(-prob.eta, 2),
                                   term(Rational(2) * prob.psi, 2)};
        for (const auto& [name, got, want] : {std::tuple{"gamma-e", &gm.gamma_e, &expected_e},
                                              std::tuple{"u-gamma-s", &gm.u_gamma_s, &expected_s}}) {
            const EqElement diff = *got - *want;
            entry.equations.push_back(Equation{name, zero(diff) ? "0" : render(diff), zero(diff), {}});
            entry.passed = entry.passed && zero(diff);
        }
        entry.values["gamma_e"] = render(gm.gamma_e);
        entry.values["u_gamma_s"] = render(gm.u_gamma_s);
        // Gamma(s) = u (c_ss ss + c_s s + c_e e): the u^2 coefficients of u Gamma(s).
        entry.values["gamma_s_coefficients"] = Json{{"ss", render(gm.u_gamma_s.ss[2])},
                                                    {"s", render(gm.u_gamma_s.s[2])},
                                                    {"e", render(gm.u_gamma_s.e[2])}};
    }

    const CohomologyModel& model() const
    {
        if (!model_) throw ParseError("missing \"model\"");
        return *model_;
    }
    const GWData& gw() const
    {
        if (!gw_) throw ParseError("missing \"gw\"");
        return *gw_;
    }
    const ODEProblem& problem() const
    {
        if (!prob_) throw ParseError("missing \"problem\"");
        return *prob_;
    }

    std::optional<CohomologyModel> model_;
    std::optional<GWData> gw_;
    std::optional<ODEProblem> prob_;
};

} // namespace

std::unique_ptr<TaskHandler> make_gw_handler() { return std::make_unique<GwHandler>(); }

} // namespace nabla::cli

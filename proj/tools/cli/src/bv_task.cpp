#include <optional>

#include "nabla/bv.hpp"
#include "nabla/cli/task.hpp"
#include "nabla/errors.hpp"

namespace nabla::cli {

namespace {

Divergence divergence_from(const Json& m)
{
    if (!m.contains("divergence")) return Divergence::Logarithmic;
    const std::string d = string_from(m["divergence"], "model.divergence");
    if (d == "log") return Divergence::Logarithmic;
    if (d == "flat") return Divergence::Flat;
    throw ParseError("model.divergence must be \"log\" or \"flat\"");
}

/// A string names a model element or a basis vector; an object is {basis name: series}.
Element element_from(const Json& value, const BVModel& model, const Context& ctx, std::string_view where)
{
    if (value.is_string()) {
        const std::string name = value.get<std::string>();
        if (model.has_element(name)) return model.element(name);
        return model.basis_vector(std::string_view(name));
    }
    if (!value.is_object()) throw ParseError("expected an element in " + std::string(where));
    Element out = model.zero();
    for (const auto& [name, coeff] : value.items()) out[model.index(name)] += series_from(coeff, ctx, where);
    return out;
}

BVModel table_model(const Json& m, const Context& ctx)
{
    std::vector<BVBasis> basis;
    for (const Json& b : field(m, "basis", "model")) {
        basis.push_back({string_from(field(b, "name", "model.basis"), "model.basis"),
                         integer_from(field(b, "degree", "model.basis"), "model.basis")});
    }
    std::size_t unit = 0;
    const std::string unit_name = string_from(field(m, "unit", "model"), "model.unit");
    bool found = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].name == unit_name) unit = i, found = true;
    }
    if (!found) throw ParseError("model.unit \"" + unit_name + "\" is not a basis element");

    BVModel model(std::move(basis), unit);
    auto pair = [&](const Json& e, const char* where) {
        return std::pair{model.index(string_from(field(e, "left", where), where)),
                         model.index(string_from(field(e, "right", where), where))};
    };
    if (m.contains("products")) {
        for (const Json& e : m["products"]) {
            const auto [i, j] = pair(e, "model.products");
            model.set_product(i, j, element_from(field(e, "result", "model.products"), model, ctx, "model.products"));
        }
    }
    if (m.contains("delta")) {
        for (const Json& e : m["delta"]) {
            model.set_delta(model.index(string_from(field(e, "of", "model.delta"), "model.delta")),
                            element_from(field(e, "result", "model.delta"), model, ctx, "model.delta"));
        }
    }
    if (m.contains("bracket")) {
        std::vector<std::vector<Element>> table(model.dim(), std::vector<Element>(model.dim(), model.zero()));
        for (const Json& e : m["bracket"]) {
            const auto [i, j] = pair(e, "model.bracket");
            table[i][j] = element_from(field(e, "result", "model.bracket"), model, ctx, "model.bracket");
        }
        model.set_bracket_table(std::move(table));
    }
    return model;
}

class BvHandler : public TaskHandler {
public:
    void load(const Json& payload, const Context& ctx) override
    {
        if (payload.contains("problem")) prob_ = problem_from(payload["problem"], ctx);
        const Json& m = field(payload, "model", "payload");
        const std::string kind = string_from(field(m, "kind", "model"), "model.kind");
        if (kind == "polyvector") {
            const int vars = m.contains("variables") ? integer_from(m["variables"], "model.variables") : 1;
            model_.emplace(polyvector_model(vars, integer_from(field(m, "truncation", "model"), "model.truncation"),
                                            divergence_from(m)));
        } else if (kind == "synthetic") {
            model_.emplace(synthetic_model(m.contains("truncation") ? integer_from(m["truncation"], "model.truncation") : 4));
        } else if (kind == "scalar") {
            model_.emplace(scalar_model());
        } else if (kind == "table") {
            model_.emplace(table_model(m, ctx));
        } else {
            throw ParseError("unknown model kind \"" + kind + "\"");
        }
        BVModel& model = *model_;

        // Elements may refer to earlier ones.
        if (payload.contains("elements")) {
            for (const auto& [name, value] : payload["elements"].items()) {
                model.set_element(name, element_from(value, model, ctx, "elements." + name));
            }
        }

        if (payload.contains("connection")) {
            const Json& c = payload["connection"];
            const std::string ck = string_from(field(c, "kind", "connection"), "connection.kind");
            if (ck == "d_q") {
                nabla_.emplace(model.dim());
            } else if (ck == "synthetic") {
                nabla_.emplace(synthetic_connection(model, problem()));
            } else if (ck == "matrix") {
                std::vector<Element> linear(model.dim(), model.zero());
                for (const auto& [name, value] : field(c, "linear", "connection").items()) {
                    linear[model.index(name)] = element_from(value, model, ctx, "connection.linear");
                }
                nabla_.emplace(std::move(linear));
            } else {
                throw ParseError("unknown connection kind \"" + ck + "\"");
            }
        }
    }

    void run(const std::string& type, const Json& check, const Context& ctx, CheckEntry& entry) override
    {
        const BVModel& m = model();
        auto element = [&](const char* key, const char* fallback) {
            if (check.contains(key)) return element_from(check[key], m, ctx, key);
            if (!m.has_element(fallback)) throw ParseError(std::string("missing \"") + key + "\"");
            return m.element(fallback);
        };

        if (type == "axioms") {
            entry.add(check_bv_axioms(m));
        } else if (type == "bracket-bv") {
            entry.add(check_bracket_bv(m));
        } else if (type == "leibniz") {
            Connection nabla = connection();
            if (check.contains("c")) nabla = nabla_c(nabla, element("a", "a"), rational_from(check["c"], "c"), m);
            entry.add(check_leibniz(nabla, m));
        } else if (type == "delta-nabla") {
            entry.add(check_delta_nabla(connection(), element("a", "a"), m));
        } else if (type == "minus1-delta") {
            entry.add(check_minus1_delta(connection(), element("a", "a"), m));
        } else if (type == "gauge") {
            const Element a = element("a", "a");
            const Element alpha = element("alpha", "alpha");
            const GaugeChange g = gauge_change(connection(), alpha, a, m);
            CheckResult dn = check_delta_nabla(g.nabla, g.a, m);
            dn.name = "gauge-" + dn.name;
            entry.add(dn);
            entry.add(check_minus1_ambiguity(connection(), alpha, a, m));
            entry.values["a_tilde"] = render(g.a, m);
        } else if (type == "bs") {
            entry.add(borman_sheridan_chain(connection(), element("s", "s"), problem(), m));
        } else if (type == "second-order") {
            add(entry, "second-order-e", second_order_on_e(connection(), element("a", "a"), problem(), m));
        } else if (type == "r-endomorphism") {
            entry.add(r_endomorphism_check(element("k", "k"), m));
        } else if (type == "modified-bracket") {
            const Element x = element_from(field(check, "x", type), m, ctx, "x");
            const Element y = element_from(field(check, "y", type), m, ctx, "y");
            const Element b = m.bracket(x, y);
            const Element mb = m.modified_bracket(x, y);
            entry.values["bracket"] = render(b, m);
            entry.values["modified_bracket"] = render(mb, m);
            if (check.contains("expect")) add(entry, "expected-bracket", b - element_from(check["expect"], m, ctx, "expect"));
            if (check.contains("expect_modified")) {
                add(entry, "expected-modified", mb - element_from(check["expect_modified"], m, ctx, "expect_modified"));
            }
        } else {
            throw ParseError("unknown bv check \"" + type + "\"");
        }
    }

private:
    void add(CheckEntry& entry, std::string name, const Element& residual)
    {
        entry.equations.push_back(Equation{std::move(name), render(residual, model()), residual.is_zero(), {}});
        entry.passed = entry.passed && residual.is_zero();
    }

    const BVModel& model() const { return *model_; }
    const Connection& connection() const
    {
        if (!nabla_) throw ParseError("missing \"connection\"");
        return *nabla_;
    }
    const ODEProblem& problem() const
    {
        if (!prob_) throw ParseError("missing \"problem\"");
        return *prob_;
    }

    std::optional<BVModel> model_;
    std::optional<Connection> nabla_;
    std::optional<ODEProblem> prob_;
};

} // namespace

std::unique_ptr<TaskHandler> make_bv_handler() { return std::make_unique<BvHandler>(); }

} // namespace nabla::cli

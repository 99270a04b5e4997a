#include <map>
#include <optional>

#include "nabla/cli/task.hpp"
#include "nabla/errors.hpp"
#include "nabla/operad.hpp"

namespace nabla::cli {

namespace {

template <class Real>
Real real_from(const Json& v, std::string_view where)
{
    if constexpr (std::is_same_v<Real, double>) {
        if (v.is_number()) return v.get<double>();
        return rational_from(v, where).get_d();
    } else {
        return rational_from(v, where);
    }
}

template <class Real>
Complex<Real> complex_from(const Json& v, std::string_view where)
{
    if (!v.is_array() || v.size() != 2) throw ParseError("expected [re, im] in " + std::string(where));
    return {real_from<Real>(v[0], where), real_from<Real>(v[1], where)};
}

template <class Real>
DiscConfiguration<Real> configuration_from(const Json& v, std::string_view where)
{
    if (v == "identity") return DiscConfiguration<Real>::identity();
    DiscConfiguration<Real> c;
    for (const Json& d : field(v, "discs", where)) {
        Disc<Real> disc;
        disc.center = complex_from<Real>(field(d, "center", where), where);
        disc.radius = real_from<Real>(field(d, "radius", where), where);
        if (d.contains("framing")) disc.framing = rational_from(d["framing"], where);
        c.discs.push_back(disc);
    }
    if (v.contains("z")) c.z_point = complex_from<Real>(v["z"], where);
    return c;
}

template <class Real>
Json real_to_json(const Real& x)
{
    if constexpr (std::is_same_v<Real, double>) {
        return x;
    } else {
        return to_string(x);
    }
}

template <class Real>
Json configuration_to_json(const DiscConfiguration<Real>& c)
{
    Json discs = Json::array();
    for (const auto& d : c.discs) {
        discs.push_back(Json{{"center", Json::array({real_to_json(d.center.re), real_to_json(d.center.im)})},
                             {"radius", real_to_json(d.radius)},
                             {"framing", to_string(d.framing)}});
    }
    Json out{{"discs", std::move(discs)}};
    if (c.z_point) out["z"] = Json::array({real_to_json(c.z_point->re), real_to_json(c.z_point->im)});
    return out;
}

std::vector<int> ints_from(const Json& v, std::string_view where)
{
    if (!v.is_array()) throw ParseError("expected an integer list in " + std::string(where));
    std::vector<int> out;
    for (const Json& x : v) out.push_back(integer_from(x, where));
    return out;
}

std::size_t index_from(const Json& v, std::string_view where)
{
    const int i = integer_from(v, where);
    if (i < 0) throw IndexOutOfRange("negative index in " + std::string(where));
    return static_cast<std::size_t>(i);
}

GradedOperation operation_from(const Json& v, const std::vector<int>& degrees, std::string_view where)
{
    if (v == "identity") return GradedOperation::identity(degrees);
    GradedOperation op(degrees, index_from(field(v, "arity", where), where), integer_from(field(v, "degree", where), where));
    if (v.contains("entries")) {
        for (const Json& e : v["entries"]) {
            std::vector<std::size_t> inputs;
            for (const Json& x : field(e, "inputs", where)) inputs.push_back(index_from(x, where));
            std::vector<Rational> value;
            for (const Json& x : field(e, "value", where)) value.push_back(rational_from(x, where));
            op.set(inputs, std::move(value));
        }
    }
    return op;
}

class OperadHandler : public TaskHandler {
public:
    void load(const Json& payload, const Context&) override
    {
        if (payload.contains("mode")) {
            const std::string mode = string_from(payload["mode"], "mode");
            if (mode != "rational" && mode != "float") throw ParseError("mode must be \"rational\" or \"float\"");
            rational_ = mode == "rational";
        }
        if (payload.contains("configurations")) configs_ = payload["configurations"];
        if (payload.contains("basis_degrees")) degrees_ = ints_from(payload["basis_degrees"], "basis_degrees");
        if (payload.contains("operations")) {
            for (const auto& [name, v] : payload["operations"].items()) {
                ops_.emplace(name, operation_from(v, degrees_, "operations." + name));
            }
        }
    }

    void run(const std::string& type, const Json& check, const Context&, CheckEntry& entry) override
    {
        if (type == "sign") {
            const int s = koszul_sign(integer_from(field(check, "d1", type), "d1"), integer_from(field(check, "d2", type), "d2"),
                                      index_from(field(check, "i1", type), "i1"), ints_from(field(check, "degrees", type), "degrees"));
            entry.values["sign"] = s;
            if (check.contains("expect")) {
                const int want = integer_from(check["expect"], "expect");
                entry.require("expected-sign", s == want, s == want ? "" : "got " + std::to_string(s));
            }
        } else if (type == "compose") {
            const GradedOperation c = compose(op(check, "phi1"), index_from(field(check, "i1", type), "i1"), op(check, "phi2"));
            entry.values["arity"] = c.arity();
            entry.values["degree"] = c.degree();
            if (check.contains("expect")) entry.require("expected-composite", c == op(check, "expect"));
        } else if (type == "compose-assoc") {
            const GradedOperation& a = op(check, "a");
            const GradedOperation& b = op(check, "b");
            const GradedOperation& c = op(check, "c");
            const std::size_t i = index_from(field(check, "i", type), "i");
            const std::size_t j = index_from(field(check, "j", type), "j");
            entry.require("sequential-associativity", compose(compose(a, i, b), i + j, c) == compose(a, i, compose(b, j, c)));
        } else if (rational_) {
            configuration_check<Rational>(type, check, entry);
        } else {
            configuration_check<double>(type, check, entry);
        }
    }

private:
    template <class Real>
    DiscConfiguration<Real> config(const Json& check, const char* key) const
    {
        const Json& v = field(check, key, "check");
        if (v.is_string() && v != "identity") {
            if (!configs_.contains(v.get<std::string>())) throw ParseError("unknown configuration \"" + v.get<std::string>() + "\"");
            return configuration_from<Real>(configs_[v.get<std::string>()], v.get<std::string>());
        }
        return configuration_from<Real>(v, key);
    }

    const GradedOperation& op(const Json& check, const char* key) const
    {
        const std::string name = string_from(field(check, key, "check"), key);
        auto it = ops_.find(name);
        if (it == ops_.end()) throw ParseError("unknown operation \"" + name + "\"");
        return it->second;
    }

    template <class Real>
    void configuration_check(const std::string& type, const Json& check, CheckEntry& entry) const
    {
        if (type == "validate") {
            const DiscValidation v = validate(config<Real>(check, "config"));
            const bool expect = check.contains("expect_valid") ? check["expect_valid"].get<bool>() : true;
            std::string detail;
            for (const auto& d : v.diagnostics) detail += (detail.empty() ? "" : "; ") + d;
            entry.require(expect ? "valid" : "invalid", v.valid == expect, detail);
            entry.values["diagnostics"] = v.diagnostics;
        } else if (type == "glue") {
            const DiscConfiguration<Real> g =
                glue(config<Real>(check, "c1"), index_from(field(check, "i1", type), "i1"), config<Real>(check, "c2"));
            entry.values["glued"] = configuration_to_json(g);
            entry.require("glued-valid", validate(g).valid);
            if (check.contains("expect")) entry.require("expected-configuration", same_configuration(g, config<Real>(check, "expect")));
        } else if (type == "glue-assoc") {
            const auto a = config<Real>(check, "a");
            const auto b = config<Real>(check, "b");
            const auto c = config<Real>(check, "c");
            const std::size_t i = index_from(field(check, "i", type), "i");
            const std::size_t j = index_from(field(check, "j", type), "j");
            entry.require("associativity", same_configuration(glue(glue(a, i, b), i + j, c), glue(a, i, glue(b, j, c))));
        } else {
            throw ParseError("unknown operad check \"" + type + "\"");
        }
    }

    bool rational_ = true;
    Json configs_ = Json::object();
    std::vector<int> degrees_;
    std::map<std::string, GradedOperation> ops_;
};

} // namespace

std::unique_ptr<TaskHandler> make_operad_handler() { return std::make_unique<OperadHandler>(); }

} // namespace nabla::cli

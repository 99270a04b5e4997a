#include "nabla/cli/codec.hpp"

#include "nabla/errors.hpp"

namespace nabla::cli {

namespace {

std::string at(std::string_view where) { return where.empty() ? std::string() : " in " + std::string(where); }

} // namespace

const Json& field(const Json& obj, std::string_view key, std::string_view where)
{
    if (!obj.is_object()) throw ParseError("expected an object" + at(where));
    auto it = obj.find(std::string(key));
    if (it == obj.end()) throw ParseError("missing \"" + std::string(key) + "\"" + at(where));
    return *it;
}

Rational rational_from(const Json& value, std::string_view where)
{
    if (value.is_number_integer()) return Rational(value.get<long>());
    if (value.is_string()) return parse_rational(value.get<std::string>());
    throw ParseError("expected a rational string" + at(where));
}

Truncation truncation_from(const Json& value, std::string_view where)
{
    if (value.is_string()) return parse_truncation(value.get<std::string>());
    return Truncation(rational_from(value, where));
}

int integer_from(const Json& value, std::string_view where)
{
    if (!value.is_number_integer()) throw ParseError("expected an integer" + at(where));
    return value.get<int>();
}

std::string string_from(const Json& value, std::string_view where)
{
    if (!value.is_string()) throw ParseError("expected a string" + at(where));
    return value.get<std::string>();
}

NovikovSeries series_from(const Json& value, const Context& ctx, std::string_view where, std::string_view variable)
{
    NovikovSeries out;
    if (value.is_string()) {
        out = parse_series(value.get<std::string>(), variable);
    } else if (value.is_number_integer()) {
        out = NovikovSeries::constant(Rational(value.get<long>()));
    } else if (value.is_object()) {
        const Json& terms = field(value, "terms", where);
        if (!terms.is_array()) throw ParseError("\"terms\" must be an array" + at(where));
        Truncation trunc = Truncation::infinite();
        if (value.contains("trunc")) trunc = truncation_from(value["trunc"], where);
        NovikovSeries::Terms t;
        for (const Json& term : terms) {
            const Rational e = rational_from(field(term, "exp", where), where);
            const Rational c = rational_from(field(term, "coeff", where), where);
            if (!trunc.exceeds(e)) {
                throw ParseError("term at exponent " + to_string(e) + " is beyond the truncation" + at(where));
            }
            t[e] += c;
        }
        out = NovikovSeries(std::move(t), trunc);
    } else {
        throw ParseError("expected a series" + at(where));
    }
    if (ctx.trunc) out = out.truncated(*ctx.trunc);
    return out;
}

Json series_to_json(const NovikovSeries& s)
{
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back(Json{{"exp", to_string(e)}, {"coeff", to_string(c)}});
    return Json{{"terms", terms}, {"trunc", to_string(s.truncation())}};
}

ODEProblem problem_from(const Json& value, const Context& ctx)
{
    ODEProblem prob{series_from(field(value, "psi", "problem"), ctx, "problem.psi"),
                    series_from(field(value, "eta", "problem"), ctx, "problem.eta"),
                    series_from(field(value, "z2", "problem"), ctx, "problem.z2")};
    return prob;
}

LatticeSeed seed_from(const Json& value)
{
    LatticeSeed seed;
    if (value.contains("step")) seed.step = rational_from(value["step"], "seed.step");
    if (value.contains("base")) seed.base = rational_from(value["base"], "seed.base");
    const Json& coeffs = field(value, "coeffs", "seed");
    if (!coeffs.is_array()) throw ParseError("seed.coeffs must be an array");
    for (const Json& c : coeffs) seed.coeffs.push_back(rational_from(c, "seed.coeffs"));
    if (seed.step <= 0) throw ParseError("seed.step must be positive");
    return seed;
}

std::string error_kind(const std::exception& e)
{
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const InsufficientPrecision*>(&e)) return "InsufficientPrecision";
    if (dynamic_cast<const ZeroDivision*>(&e)) return "ZeroDivision";
    if (dynamic_cast<const ResonantExponent*>(&e)) return "ResonantExponent";
    if (dynamic_cast<const LatticeMismatch*>(&e)) return "LatticeMismatch";
    if (dynamic_cast<const InconsistentSeed*>(&e)) return "InconsistentSeed";
    if (dynamic_cast<const DegreeMismatch*>(&e)) return "DegreeMismatch";
    if (dynamic_cast<const NoSolution*>(&e)) return "NoSolution";
    if (dynamic_cast<const PrerequisiteFailed*>(&e)) return "PrerequisiteFailed";
    if (dynamic_cast<const ZConflict*>(&e)) return "ZConflict";
    if (dynamic_cast<const InvalidInput*>(&e)) return "InvalidInput";
    if (dynamic_cast<const IndexOutOfRange*>(&e)) return "IndexOutOfRange";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const Json::exception*>(&e)) return "ParseError";
    return "InternalError";
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const Json::exception*>(&e)) return 2;
    if (dynamic_cast<const InsufficientPrecision*>(&e)) return 3;
    if (dynamic_cast<const DomainError*>(&e)) return 4;
    return 5;
}

} // namespace nabla::cli

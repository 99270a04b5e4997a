#pragma once

#include <exception>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nabla/ode.hpp"
#include "nabla/series.hpp"

namespace nabla::cli {

using Json = nlohmann::ordered_json;

/// Settings shared by every value parsed from one task file.
struct Context {
    /// Global cap applied to every input series.
    std::optional<Truncation> trunc;
};

/// The member `key` of `obj`; ParseError naming `where` if it is missing.
const Json& field(const Json& obj, std::string_view key, std::string_view where);

/// "p/q" strings or JSON integers.
Rational rational_from(const Json& value, std::string_view where);
/// "inf" or a rational.
Truncation truncation_from(const Json& value, std::string_view where);
int integer_from(const Json& value, std::string_view where);
std::string string_from(const Json& value, std::string_view where);

/// A series is either its text rendering ("1 - q + O(q^3)") or the record
/// {"terms": [{"exp": "p/q", "coeff": "p/q"}, ...], "trunc": "p/q" | "inf"}.
/// The context's global truncation is applied afterwards.
NovikovSeries series_from(const Json& value, const Context& ctx, std::string_view where,
                          std::string_view variable = "q");

/// The record form of a series.
Json series_to_json(const NovikovSeries& s);

/// {"psi": ..., "eta": ..., "z2": ...}.
ODEProblem problem_from(const Json& value, const Context& ctx);

/// {"step": "1/N", "base": "p/q", "coeffs": ["p/q", ...]}.
LatticeSeed seed_from(const Json& value);

/// Class name of a library error ("ResonantExponent", "ParseError", ...).
std::string error_kind(const std::exception& e);

/// Exit code of the taxonomy: 2 parse, 3 precision, 4 domain.
int exit_code_for(const std::exception& e);

} // namespace nabla::cli

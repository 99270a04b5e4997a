#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nabla {

/// Arbitrary precision rational, always kept in canonical form.
///
/// mpq_class uses expression templates: never bind an arithmetic expression
/// to `auto`, always materialize into a Rational.
using Rational = mpq_class;

/// Parses "p", "-p", "p/q" (q != 0). Whitespace around the token is ignored.
/// Throws ParseError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical rendering: "3", "-1/2".
std::string to_string(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

/// Floor of a rational as a (possibly huge) integer.
mpz_class floor(const Rational& value);

/// Representative of value modulo 1 in [0, 1).
Rational frac(const Rational& value);

/// Exponent or truncation bound that may be +infinity.
///
/// Truncation T means every term with exponent < T is exactly represented.
class Truncation {
public:
    /// +infinity: the value is exact.
    Truncation() = default;
    Truncation(const Rational& bound) : bound_(bound) {}
    Truncation(long bound) : bound_(Rational(bound)) {}

    static Truncation infinite() { return Truncation(); }

    bool is_infinite() const { return !bound_.has_value(); }
    bool is_finite() const { return bound_.has_value(); }

    /// Precondition: is_finite().
    const Rational& value() const;

    friend bool operator==(const Truncation& a, const Truncation& b);
    friend bool operator<(const Truncation& a, const Truncation& b);
    friend bool operator<=(const Truncation& a, const Truncation& b) { return !(b < a); }
    friend bool operator>(const Truncation& a, const Truncation& b) { return b < a; }
    friend bool operator>=(const Truncation& a, const Truncation& b) { return !(a < b); }

    /// Comparison against an exponent (which is always finite).
    bool exceeds(const Rational& exponent) const { return is_infinite() || exponent < *bound_; }

    friend Truncation operator+(const Truncation& a, const Truncation& b);
    friend Truncation operator-(const Truncation& a, const Rational& shift);

    friend std::ostream& operator<<(std::ostream& os, const Truncation& t);

private:
    std::optional<Rational> bound_;
};

Truncation min(const Truncation& a, const Truncation& b);

/// "inf" or a canonical rational.
std::string to_string(const Truncation& t);

/// Accepts "inf" or a rational.
Truncation parse_truncation(std::string_view text);

} // namespace nabla

#pragma once

#include <map>
#include <string>
#include <string_view>

#include "nabla/rational.hpp"

namespace nabla {

/// Precision given to an inverse whose exact expansion is infinite, measured
/// from the inverse's valuation, when neither operand nor caller bounds it.
inline constexpr long kDefaultRelativeOrder = 12;

/// Finite-precision element of the Novikov field: sum of c * q^d with
/// rational exponents, exact below a truncation bound.
///
/// Invariants: no zero coefficients are stored and every stored exponent lies
/// strictly below the truncation. The exact zero has no terms and infinite
/// truncation; a series with no terms but finite truncation T is O(q^T).
class NovikovSeries {
public:
    using Terms = std::map<Rational, Rational>;

    NovikovSeries() = default;
    NovikovSeries(Terms terms, Truncation truncation);

    static NovikovSeries constant(const Rational& c, Truncation t = Truncation::infinite());
    static NovikovSeries monomial(const Rational& c, const Rational& exponent,
                                  Truncation t = Truncation::infinite());
    /// O(q^t): no known terms.
    static NovikovSeries big_o(Truncation t);

    const Terms& terms() const { return terms_; }
    const Truncation& truncation() const { return trunc_; }

    /// True iff no term is known to be nonzero (zero up to truncation).
    bool is_zero() const { return terms_.empty(); }
    bool is_exact_zero() const { return terms_.empty() && trunc_.is_infinite(); }

    /// Lowest exponent carried; for a series without terms, its truncation.
    Truncation valuation() const;
    /// Precondition: !is_zero().
    const Rational& leading_exponent() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    Rational coefficient(const Rational& exponent) const;

    /// Drops every term at or above t; truncation becomes min(current, t).
    NovikovSeries truncated(Truncation t) const;

    NovikovSeries operator-() const;
    NovikovSeries& operator+=(const NovikovSeries& other);
    NovikovSeries& operator-=(const NovikovSeries& other);
    NovikovSeries& operator*=(const NovikovSeries& other);
    NovikovSeries& operator*=(const Rational& scalar);

    friend NovikovSeries operator+(NovikovSeries a, const NovikovSeries& b) { return a += b; }
    friend NovikovSeries operator-(NovikovSeries a, const NovikovSeries& b) { return a -= b; }
    friend NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b);
    friend NovikovSeries operator*(NovikovSeries a, const Rational& s) { return a *= s; }
    friend NovikovSeries operator*(const Rational& s, NovikovSeries a) { return a *= s; }

    /// Structural equality: same terms and same truncation.
    friend bool operator==(const NovikovSeries& a, const NovikovSeries& b);

private:
    void normalize();

    Terms terms_;
    Truncation trunc_;
};

/// Termwise sum; truncation min(T_a, T_b).
NovikovSeries add(const NovikovSeries& a, const NovikovSeries& b);

/// Cauchy product; truncation min(T_a + val(b), T_b + val(a)).
NovikovSeries mul(const NovikovSeries& a, const NovikovSeries& b);

/// Multiplicative inverse, exact up to T_a - 2 val(a) and never beyond `cap`.
/// When both are infinite and the expansion does not terminate, the result is
/// carried to val(1/a) + kDefaultRelativeOrder. Throws ZeroDivision if `a`
/// has no known term.
NovikovSeries invert(const NovikovSeries& a, Truncation cap = Truncation::infinite());

/// a / b, i.e. a * invert(b, cap).
NovikovSeries divide(const NovikovSeries& a, const NovikovSeries& b, Truncation cap = Truncation::infinite());

/// Termwise derivative in q; truncation T - 1.
NovikovSeries d_q(const NovikovSeries& a);

/// True iff every term with exponent < order coincides. Throws
/// InsufficientPrecision when min(T_a, T_b) < order.
bool equal_up_to(const NovikovSeries& a, const NovikovSeries& b, const Rational& order);

/// Canonical text, e.g. "1/2*q^-1 + 3*q^2 + O(q^5)"; fractional exponents are
/// parenthesized: "q^(1/2)".
std::string render(const NovikovSeries& a, std::string_view variable = "q");

/// Inverse of render(); also accepts any order of terms and repeated
/// exponents (summed). Throws ParseError.
NovikovSeries parse_series(std::string_view text, std::string_view variable = "q");

} // namespace nabla

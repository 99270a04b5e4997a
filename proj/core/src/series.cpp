#include "nabla/series.hpp"

#include <cctype>
#include <sstream>
#include <utility>

#include "nabla/errors.hpp"

namespace nabla {

NovikovSeries::NovikovSeries(Terms terms, Truncation truncation)
    : terms_(std::move(terms)), trunc_(std::move(truncation))
{
    normalize();
}

NovikovSeries NovikovSeries::constant(const Rational& c, Truncation t)
{
    return monomial(c, Rational(0), std::move(t));
}

NovikovSeries NovikovSeries::monomial(const Rational& c, const Rational& exponent, Truncation t)
{
    Terms terms;
    terms.emplace(exponent, c);
    return NovikovSeries(std::move(terms), std::move(t));
}

NovikovSeries NovikovSeries::big_o(Truncation t) { return NovikovSeries({}, std::move(t)); }

void NovikovSeries::normalize()
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0 || !trunc_.exceeds(it->first)) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

Truncation NovikovSeries::valuation() const
{
    if (terms_.empty()) return trunc_;
    return Truncation(terms_.begin()->first);
}

Rational NovikovSeries::coefficient(const Rational& exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

NovikovSeries NovikovSeries::truncated(Truncation t) const
{
    NovikovSeries out;
    out.trunc_ = min(trunc_, t);
    if (out.trunc_.is_infinite()) {
        out.terms_ = terms_;
        return out;
    }
    const Rational& bound = out.trunc_.value();
    for (auto it = terms_.begin(); it != terms_.end() && it->first < bound; ++it) {
        out.terms_.emplace_hint(out.terms_.end(), *it);
    }
    return out;
}

NovikovSeries NovikovSeries::operator-() const
{
    NovikovSeries out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

NovikovSeries& NovikovSeries::operator+=(const NovikovSeries& other)
{
    trunc_ = min(trunc_, other.trunc_);
    for (const auto& [e, c] : other.terms_) {
        if (!trunc_.exceeds(e)) break;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) it->second += c;
    }
    normalize();
    return *this;
}

NovikovSeries& NovikovSeries::operator-=(const NovikovSeries& other)
{
    trunc_ = min(trunc_, other.trunc_);
    for (const auto& [e, c] : other.terms_) {
        if (!trunc_.exceeds(e)) break;
        auto [it, inserted] = terms_.try_emplace(e, -c);
        if (!inserted) it->second -= c;
    }
    normalize();
    return *this;
}

NovikovSeries& NovikovSeries::operator*=(const NovikovSeries& other)
{
    *this = *this * other;
    return *this;
}

NovikovSeries& NovikovSeries::operator*=(const Rational& scalar)
{
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= scalar;
    return *this;
}

NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b)
{
    const Truncation t = min(a.trunc_ + b.valuation(), b.trunc_ + a.valuation());
    NovikovSeries out;
    out.trunc_ = t;
    Rational e, c;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            e = ea + eb;
            if (!t.exceeds(e)) break;
            c = ca * cb;
            auto [it, inserted] = out.terms_.try_emplace(e, c);
            if (!inserted) it->second += c;
        }
    }
    out.normalize();
    return out;
}

bool operator==(const NovikovSeries& a, const NovikovSeries& b)
{
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
}

NovikovSeries add(const NovikovSeries& a, const NovikovSeries& b) { return a + b; }

NovikovSeries mul(const NovikovSeries& a, const NovikovSeries& b) { return a * b; }

NovikovSeries invert(const NovikovSeries& a, Truncation cap)
{
    if (a.is_zero()) throw ZeroDivision("inverse of a series with no known term");
    const Rational v = a.leading_exponent();
    const Rational c = a.leading_coefficient();
    const Rational inv_c = 1 / c;

    // a = c q^v (1 + x) with every exponent of x positive.
    NovikovSeries x = a * NovikovSeries::monomial(inv_c, -v);
    x -= NovikovSeries::constant(1);

    // Precision of (1 + x)^-1 relative to q^-v.
    Truncation relative = min(a.truncation() - v, cap + Truncation(v));
    if (relative.is_infinite()) {
        if (x.is_exact_zero()) return NovikovSeries::monomial(inv_c, -v);
        relative = Truncation(kDefaultRelativeOrder);
    }

    NovikovSeries neg_x = -x;
    NovikovSeries y = NovikovSeries::constant(1, relative);
    NovikovSeries power = NovikovSeries::constant(1);
    while (true) {
        power = (power * neg_x).truncated(relative);
        if (power.is_zero()) break;
        y += power;
    }
    return y * NovikovSeries::monomial(inv_c, -v);
}

NovikovSeries divide(const NovikovSeries& a, const NovikovSeries& b, Truncation cap)
{
    return a * invert(b, std::move(cap));
}

NovikovSeries d_q(const NovikovSeries& a)
{
    NovikovSeries::Terms terms;
    for (const auto& [e, c] : a.terms()) {
        if (e == 0) continue;
        Rational ne = e - 1;
        Rational nc = c * e;
        terms.emplace_hint(terms.end(), std::move(ne), std::move(nc));
    }
    return NovikovSeries(std::move(terms), a.truncation() - Rational(1));
}

bool equal_up_to(const NovikovSeries& a, const NovikovSeries& b, const Rational& order)
{
    const Truncation t = min(a.truncation(), b.truncation());
    if (t < Truncation(order)) {
        throw InsufficientPrecision("comparison up to q^" + to_string(order) + " but operands are only known below q^"
                                    + to_string(t));
    }
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    const auto end_a = a.terms().end();
    const auto end_b = b.terms().end();
    while (true) {
        const bool more_a = ia != end_a && ia->first < order;
        const bool more_b = ib != end_b && ib->first < order;
        if (!more_a || !more_b) return more_a == more_b;
        if (ia->first != ib->first || ia->second != ib->second) return false;
        ++ia;
        ++ib;
    }
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string render_power(const Rational& exponent, std::string_view var)
{
    if (exponent == 1) return std::string(var);
    std::string out(var);
    out += '^';
    if (is_integer(exponent)) {
        out += to_string(exponent);
    } else {
        out += '(' + to_string(exponent) + ')';
    }
    return out;
}

} // namespace

std::string render(const NovikovSeries& a, std::string_view variable)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : a.terms()) {
        const bool negative = c < 0;
        Rational magnitude = abs(c);
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << to_string(magnitude);
        } else if (magnitude == 1) {
            os << render_power(e, variable);
        } else {
            os << to_string(magnitude) << '*' << render_power(e, variable);
        }
    }
    if (a.truncation().is_finite()) {
        if (!first) os << " + ";
        const Rational& t = a.truncation().value();
        os << "O(" << (t == 0 ? std::string("1") : render_power(t, variable)) << ')';
    } else if (first) {
        os << '0';
    }
    return os.str();
}

namespace {

class SeriesParser {
public:
    SeriesParser(std::string_view text, std::string_view var) : text_(text), var_(var) {}

    NovikovSeries parse()
    {
        NovikovSeries::Terms terms;
        Truncation trunc;
        skip_ws();
        if (at_end()) fail("empty series");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            if (peek() == 'O') {
                if (sign < 0) fail("negated O-term");
                trunc = min(trunc, parse_big_o());
            } else {
                auto [exponent, coeff] = parse_term();
                coeff *= sign;
                auto [it, inserted] = terms.try_emplace(exponent, coeff);
                if (!inserted) it->second += coeff;
            }
            skip_ws();
        }
        return NovikovSeries(std::move(terms), trunc);
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const
    {
        throw ParseError("series '" + std::string(text_) + "': " + why + " at offset " + std::to_string(pos_));
    }
    bool starts_with_var() const { return text_.substr(pos_, var_.size()) == var_; }

    Rational parse_number()
    {
        const std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
        if (start == pos_) fail("expected a number");
        return parse_rational(text_.substr(start, pos_ - start));
    }

    Rational parse_exponent()
    {
        if (peek() != '^') return Rational(1);
        ++pos_;
        if (peek() == '(') {
            ++pos_;
            skip_ws();
            Rational e = parse_number();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        return parse_number();
    }

    std::pair<Rational, Rational> parse_term()
    {
        Rational coeff(1);
        if (starts_with_var()) {
            pos_ += var_.size();
            return {parse_exponent(), coeff};
        }
        coeff = parse_number();
        skip_ws();
        if (peek() == '*') {
            ++pos_;
            skip_ws();
            if (!starts_with_var()) fail("expected variable after '*'");
            pos_ += var_.size();
            return {parse_exponent(), coeff};
        }
        return {Rational(0), coeff};
    }

    Truncation parse_big_o()
    {
        ++pos_;
        if (peek() != '(') fail("expected '(' after O");
        ++pos_;
        skip_ws();
        Rational t;
        if (peek() == '1') {
            ++pos_;
            t = 0;
        } else if (starts_with_var()) {
            pos_ += var_.size();
            t = parse_exponent();
        } else {
            fail("expected O(1) or O(" + std::string(var_) + "^e)");
        }
        skip_ws();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        return Truncation(t);
    }

    std::string_view text_;
    std::string_view var_;
    std::size_t pos_ = 0;
};

} // namespace

NovikovSeries parse_series(std::string_view text, std::string_view variable)
{
    return SeriesParser(text, variable).parse();
}

} // namespace nabla

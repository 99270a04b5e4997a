#include "nabla/rational.hpp"

#include <cctype>
#include <sstream>

#include "nabla/errors.hpp"

namespace nabla {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_token(std::string_view s, bool allow_sign)
{
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const std::string_view s = trim(text);
    const auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
    if (!is_integer_token(num, true) || (slash != std::string_view::npos && !is_integer_token(den, false))) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    if (!num.empty() && num.front() == '+') num.remove_prefix(1);
    mpz_class n(std::string(num), 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) {
        d = mpz_class(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

mpz_class floor(const Rational& value)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& value)
{
    Rational r = value - Rational(floor(value));
    return r;
}

const Rational& Truncation::value() const
{
    if (!bound_) throw std::logic_error("Truncation::value on infinite truncation");
    return *bound_;
}

bool operator==(const Truncation& a, const Truncation& b)
{
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return *a.bound_ == *b.bound_;
}

bool operator<(const Truncation& a, const Truncation& b)
{
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.bound_ < *b.bound_;
}

Truncation operator+(const Truncation& a, const Truncation& b)
{
    if (a.is_infinite() || b.is_infinite()) return Truncation::infinite();
    Rational s = *a.bound_ + *b.bound_;
    return Truncation(s);
}

Truncation operator-(const Truncation& a, const Rational& shift)
{
    if (a.is_infinite()) return a;
    Rational s = *a.bound_ - shift;
    return Truncation(s);
}

std::ostream& operator<<(std::ostream& os, const Truncation& t) { return os << to_string(t); }

Truncation min(const Truncation& a, const Truncation& b) { return b < a ? b : a; }

std::string to_string(const Truncation& t) { return t.is_infinite() ? "inf" : to_string(t.value()); }

Truncation parse_truncation(std::string_view text)
{
    if (trim(text) == "inf") return Truncation::infinite();
    return Truncation(parse_rational(text));
}

} // namespace nabla

#pragma once

#include <cstdint>
#include <random>

#include "nabla/ode.hpp"
#include "nabla/operad.hpp"
#include "nabla/series.hpp"

namespace nabla::testing {

/// Deterministic generator of small exact values for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    /// p/q with |p| <= max_num, 1 <= q <= max_den.
    Rational rational(int max_num, int max_den)
    {
        Rational r(integer(-max_num, max_num), integer(1, max_den));
        r.canonicalize();
        return r;
    }

    Rational nonzero_rational(int max_num, int max_den)
    {
        Rational r;
        do {
            r = rational(max_num, max_den);
        } while (r == 0);
        return r;
    }

    /// Series with up to `terms` terms at exponents (lo..hi)/den, integer
    /// coefficients of magnitude <= mag, truncated at `trunc`.
    NovikovSeries series(int den, int lo, int hi, int terms, int mag, Truncation trunc)
    {
        NovikovSeries::Terms t;
        for (int i = 0; i < terms; ++i) {
            Rational e(integer(lo, hi), den);
            e.canonicalize();
            t[e] = Rational(integer(-mag, mag));
        }
        return NovikovSeries(std::move(t), trunc);
    }

    /// Like series() but with a guaranteed nonzero term at exponent lo/den.
    NovikovSeries unit_series(int den, int lo, int hi, int terms, int mag, Truncation trunc)
    {
        NovikovSeries s = series(den, lo + 1, hi, terms, mag, trunc);
        Rational e(lo, den);
        e.canonicalize();
        Rational c(integer(1, mag) * (integer(0, 1) ? 1 : -1));
        return s + NovikovSeries::monomial(c, e, trunc);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Valid rational configuration of 1 to `max_discs` small discs on a 1/8
/// grid, framings quarter turns (or eighths when `eighths` is set).
inline DiscConfiguration<Rational> random_configuration(Gen& g, int max_discs = 3, bool eighths = false)
{
    while (true) {
        DiscConfiguration<Rational> c;
        const int n = g.integer(1, max_discs);
        for (int i = 0; i < n; ++i) {
            Disc<Rational> d;
            d.center = {Rational(g.integer(-5, 5), 8), Rational(g.integer(-5, 5), 8)};
            d.center.re.canonicalize();
            d.center.im.canonicalize();
            d.radius = Rational(g.integer(1, 3), 16);
            d.radius.canonicalize();
            d.framing = eighths ? Rational(g.integer(0, 7), 8) : Rational(g.integer(0, 3), 4);
            d.framing.canonicalize();
            c.discs.push_back(d);
        }
        if (validate(c).valid) return c;
    }
}

/// Operation with random small integer entries wherever the degree allows.
inline GradedOperation random_operation(Gen& g, const std::vector<int>& degrees, std::size_t arity, int degree)
{
    GradedOperation op(degrees, arity, degree);
    for (std::size_t flat = 0; flat < op.entries(); ++flat) {
        const std::vector<std::size_t> x = op.tuple(flat);
        const int target = op.output_degree(x);
        std::vector<Rational> v(degrees.size());
        for (std::size_t k = 0; k < degrees.size(); ++k) {
            if (degrees[k] == target) v[k] = g.integer(-2, 2);
        }
        op.set(x, std::move(v));
    }
    return op;
}

/// Sign picked up by reordering graded symbols: `order` lists the original
/// positions in their new order, each transposed pair contributing
/// (-1)^(|a||b|).
inline int koszul_permutation_sign(const std::vector<int>& degrees, const std::vector<std::size_t>& order)
{
    int sign = 1;
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            if (order[a] > order[b] && (degrees[order[a]] * degrees[order[b]]) % 2 != 0) sign = -sign;
        }
    }
    return sign;
}

/// Series from text, for compact test fixtures.
inline NovikovSeries S(std::string_view text) { return parse_series(text); }
inline NovikovSeries H(std::string_view text) { return parse_series(text, "h"); }
inline Rational R(std::string_view text) { return parse_rational(text); }

} // namespace nabla::testing

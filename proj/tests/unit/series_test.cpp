#include <gtest/gtest.h>

#include "generators.hpp"
#include "nabla/errors.hpp"
#include "nabla/series.hpp"

using namespace nabla;
using nabla::testing::Gen;
using nabla::testing::R;
using nabla::testing::S;

namespace {

/// Independent reference for 1/(2+q): coefficient of q^n is (-1)^n / 2^(n+1).
NovikovSeries inverse_two_plus_q(int terms)
{
    NovikovSeries::Terms t;
    Rational c(1, 2);
    for (int n = 0; n < terms; ++n) {
        t[Rational(n)] = c;
        c = -c / 2;
    }
    return NovikovSeries(std::move(t), Truncation(terms));
}

} // namespace

TEST(Series, AddCancels)
{
    EXPECT_EQ(S("q^(1/2) + 2*q") + S("-q^(1/2)"), S("2*q"));
    const NovikovSeries a = S("1 - 3*q^2 + O(q^4)");
    EXPECT_EQ(a + NovikovSeries(), a);
}

TEST(Series, AddTakesMinimumTruncation)
{
    const NovikovSeries sum = add(S("1 + q + O(q^2)"), S("q^2 + O(q^3)"));
    EXPECT_EQ(sum, S("1 + q + O(q^2)"));
    EXPECT_EQ(sum.truncation(), Truncation(2));
}

TEST(Series, MulTelescopes)
{
    EXPECT_EQ(S("1 + q") * S("1 - q + q^2 - q^3"), S("1 - q^4"));
    EXPECT_EQ(S("q^(3/2)") * S("q^(-1/2)"), S("q"));
}

TEST(Series, MulByZeroIsExactZero)
{
    const NovikovSeries p = S("1 + q + O(q^3)") * NovikovSeries();
    EXPECT_TRUE(p.is_exact_zero());
}

TEST(Series, MulTruncationRule)
{
    // min(3 + 1, 5 + 0)
    const NovikovSeries p = mul(S("1 + q + O(q^3)"), S("q + q^2 + O(q^5)"));
    EXPECT_EQ(p.truncation(), Truncation(4));
    EXPECT_EQ(p, S("q + 2*q^2 + q^3 + O(q^4)"));
}

TEST(Series, InvertMatchesGeometricReference)
{
    const NovikovSeries inv = invert(S("2 + q"), Truncation(8));
    EXPECT_EQ(inv, inverse_two_plus_q(8));
    EXPECT_TRUE(equal_up_to(S("2 + q") * inv, S("1"), Rational(8)));
}

TEST(Series, InvertDefaultPrecision)
{
    const NovikovSeries inv = invert(S("2 + q"));
    EXPECT_EQ(inv.truncation(), Truncation(kDefaultRelativeOrder));
    EXPECT_EQ(inv, inverse_two_plus_q(kDefaultRelativeOrder));
}

TEST(Series, InvertPropagatesTruncation)
{
    // T_a - 2 val(a) = 5 - 2
    const NovikovSeries inv = invert(S("q + q^2 + O(q^5)"));
    EXPECT_EQ(inv.truncation(), Truncation(3));
    EXPECT_EQ(inv, S("q^-1 - 1 + q - q^2 + O(q^3)"));
}

TEST(Series, InvertMonomialIsExact)
{
    EXPECT_EQ(invert(S("q^3")), S("q^-3"));
    EXPECT_EQ(invert(S("4*q^(1/2)")), S("1/4*q^(-1/2)"));
}

TEST(Series, InvertZeroThrows)
{
    EXPECT_THROW(invert(NovikovSeries()), ZeroDivision);
    EXPECT_THROW(invert(S("O(q^3)")), ZeroDivision);
}

TEST(Series, Derivative)
{
    EXPECT_EQ(d_q(S("3*q^(5/2)")), S("15/2*q^(3/2)"));
    EXPECT_TRUE(d_q(S("7")).is_exact_zero());
    EXPECT_EQ(d_q(S("q^-1")), S("-q^-2"));
    EXPECT_EQ(d_q(S("1 + q + O(q^4)")).truncation(), Truncation(3));
}

TEST(Series, EqualUpTo)
{
    EXPECT_TRUE(equal_up_to(S("1 + q"), S("1 + q + q^5"), Rational(3)));
    EXPECT_FALSE(equal_up_to(S("1"), S("1 + q"), Rational(3)));
    EXPECT_THROW(equal_up_to(S("1 + O(q)"), S("1 + O(q)"), Rational(2)), InsufficientPrecision);
}

TEST(Series, ValuationOfZeroIsInfinite)
{
    EXPECT_TRUE(NovikovSeries().valuation().is_infinite());
    EXPECT_EQ(S("O(q^3)").valuation(), Truncation(3));
    EXPECT_EQ(S("q^(-1/2) + 1").valuation(), Truncation(Rational(-1, 2)));
}

TEST(Series, RenderAndParseRoundTrip)
{
    const NovikovSeries a = S("3*q^2 + 1/2*q^-1 + O(q^5)");
    EXPECT_EQ(render(a), "1/2*q^-1 + 3*q^2 + O(q^5)");
    EXPECT_EQ(render(S("q^(1/2)")), "q^(1/2)");
    EXPECT_EQ(render(NovikovSeries()), "0");
    EXPECT_EQ(render(S("O(1)")), "O(1)");
    EXPECT_EQ(S("q + q"), S("2*q"));
    EXPECT_THROW(S("q^"), ParseError);
    EXPECT_THROW(S("1 + + q"), ParseError);
}

TEST(Series, StoredTermsRespectTruncation)
{
    const NovikovSeries a(NovikovSeries::Terms{{Rational(1), Rational(2)}, {Rational(3), Rational(1)}}, Truncation(2));
    EXPECT_EQ(a.terms().size(), 1u);
    const NovikovSeries z(NovikovSeries::Terms{{Rational(0), Rational(0)}}, Truncation::infinite());
    EXPECT_TRUE(z.is_exact_zero());
}

// ---------------------------------------------------------------------------
// Field axioms and truncation propagation on random series

class SeriesProperties : public ::testing::TestWithParam<int> {};

TEST_P(SeriesProperties, FieldAxiomsUpToTruncation)
{
    Gen g(static_cast<std::uint64_t>(GetParam()));
    const auto a = g.unit_series(2, -2, 8, 4, 5, Truncation(Rational(g.integer(4, 10), 2)));
    const auto b = g.unit_series(2, 0, 8, 4, 5, Truncation(Rational(g.integer(4, 10), 2)));
    const auto c = g.series(2, -1, 8, 4, 5, Truncation(Rational(g.integer(4, 10), 2)));

    const NovikovSeries lhs = (a + b) + c;
    const NovikovSeries rhs = a + (b + c);
    EXPECT_TRUE(equal_up_to(lhs, rhs, min(lhs.truncation(), rhs.truncation()).value()));

    const NovikovSeries d1 = a * (b + c);
    const NovikovSeries d2 = a * b + a * c;
    const Truncation td = min(d1.truncation(), d2.truncation());
    EXPECT_TRUE(equal_up_to(d1, d2, td.value()));

    const NovikovSeries one = a * invert(a);
    const Truncation bound = a.truncation() - a.leading_exponent();
    EXPECT_LE(one.truncation(), bound);
    EXPECT_TRUE(equal_up_to(one, S("1"), one.truncation().value()));
}

TEST_P(SeriesProperties, LeibnizRule)
{
    Gen g(static_cast<std::uint64_t>(GetParam()) + 1000);
    const auto a = g.series(3, -3, 9, 5, 4, Truncation(Rational(g.integer(3, 12), 3)));
    const auto b = g.series(3, -3, 9, 5, 4, Truncation(Rational(g.integer(3, 12), 3)));
    const NovikovSeries lhs = d_q(a * b);
    const NovikovSeries rhs = d_q(a) * b + a * d_q(b);
    const Truncation t = min(lhs.truncation(), rhs.truncation());
    if (t.is_finite()) EXPECT_TRUE(equal_up_to(lhs, rhs, t.value()));
    else EXPECT_EQ(lhs, rhs);
}

TEST_P(SeriesProperties, TruncationNeverExceedsPropagatedBound)
{
    Gen g(static_cast<std::uint64_t>(GetParam()) + 2000);
    const auto a = g.unit_series(1, -1, 6, 3, 3, Truncation(g.integer(2, 8)));
    const auto b = g.unit_series(1, 0, 6, 3, 3, Truncation(g.integer(2, 8)));
    const Rational va = a.leading_exponent();
    const Rational vb = b.leading_exponent();
    EXPECT_LE((a + b).truncation(), min(a.truncation(), b.truncation()));
    EXPECT_LE((a * b).truncation(), min(a.truncation() + Truncation(vb), b.truncation() + Truncation(va)));
    EXPECT_LE(invert(a).truncation(), a.truncation() - Rational(2) * va);
    EXPECT_LE(d_q(a).truncation(), a.truncation() - Rational(1));
}

INSTANTIATE_TEST_SUITE_P(Random, SeriesProperties, ::testing::Range(1, 41));

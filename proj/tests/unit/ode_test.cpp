#include <gtest/gtest.h>

#include "generators.hpp"
#include "nabla/errors.hpp"
#include "nabla/ode.hpp"

using namespace nabla;
using nabla::testing::Gen;
using nabla::testing::H;
using nabla::testing::R;
using nabla::testing::S;

namespace {

ODEProblem problem(std::string_view psi, std::string_view eta, std::string_view z2)
{
    return ODEProblem{S(psi), S(eta), S(z2)};
}

/// Zero up to its truncation, with at least `floor` exact orders.
::testing::AssertionResult vanishes(const NovikovSeries& r, const Truncation& floor)
{
    if (!r.is_zero()) return ::testing::AssertionFailure() << "residual " << render(r);
    if (r.truncation() < floor) {
        return ::testing::AssertionFailure() << "residual only known to O(q^" << to_string(r.truncation()) << ")";
    }
    return ::testing::AssertionSuccess();
}

/// cosh(q) = sum q^(2k) / (2k)!, computed independently of the solver.
NovikovSeries cosh_reference(int order)
{
    NovikovSeries::Terms t;
    Rational fact(1);
    for (int n = 0; n < order; ++n) {
        if (n > 0) fact *= n;
        if (n % 2 == 0) t[Rational(n)] = 1 / fact;
    }
    return NovikovSeries(std::move(t), Truncation(order));
}

/// sinh(q) = sum q^(2k+1) / (2k+1)!.
NovikovSeries sinh_reference(int order)
{
    NovikovSeries::Terms t;
    Rational fact(1);
    for (int n = 0; n < order; ++n) {
        if (n > 0) fact *= n;
        if (n % 2 == 1) t[Rational(n)] = 1 / fact;
    }
    return NovikovSeries(std::move(t), Truncation(order));
}

} // namespace

TEST(SystemResidual, Examples)
{
    const ODEProblem trivial = problem("1", "0", "0");
    auto r = system_residual(S("1"), S("0"), trivial);
    EXPECT_TRUE(r.first.is_exact_zero());
    EXPECT_TRUE(r.second.is_exact_zero());

    r = system_residual(S("1 + q"), S("-1"), trivial);
    EXPECT_TRUE(r.first.is_exact_zero());
    EXPECT_TRUE(r.second.is_exact_zero());

    r = system_residual(S("q"), S("0"), trivial);
    EXPECT_EQ(r.first, S("1"));
    EXPECT_TRUE(r.second.is_exact_zero());
}

TEST(SigmaFromRho, Examples)
{
    EXPECT_EQ(sigma_from_rho(S("1 + q"), problem("1", "0", "0")), S("-1"));
    EXPECT_TRUE(sigma_from_rho(S("1"), problem("3 + q^2", "1", "0")).is_zero());
    EXPECT_EQ(sigma_from_rho(S("q^2"), problem("q", "0", "0")), S("-2"));
    EXPECT_THROW(sigma_from_rho(S("q"), problem("0", "0", "0")), ZeroDivision);
}

TEST(SecondOrderCoeffs, Examples)
{
    auto c = second_order_coeffs(problem("1", "0", "0"));
    EXPECT_TRUE(c.p.is_zero());
    EXPECT_TRUE(c.r.is_zero());

    c = second_order_coeffs(problem("q", "0", "0"));
    EXPECT_EQ(c.p, S("-q^-1"));
    EXPECT_TRUE(c.r.is_zero());

    c = second_order_coeffs(problem("1", "0", "1/4"));
    EXPECT_TRUE(c.p.is_zero());
    EXPECT_EQ(c.r, S("-1"));
}

TEST(SecondOrderResidual, Examples)
{
    const ODEProblem cosh_problem = problem("1", "0", "1/4");
    EXPECT_TRUE(vanishes(second_order_residual(S("1 + 1/2*q^2 + 1/24*q^4 + O(q^6)"), cosh_problem), Truncation(4)));
    EXPECT_TRUE(second_order_residual(S("3 - 2/5*q"), problem("1", "0", "0")).is_exact_zero());
    EXPECT_EQ(second_order_residual(S("q^2"), problem("1", "0", "0")), S("2"));
}

TEST(RiccatiResidual, Examples)
{
    const ODEProblem trivial = problem("1", "0", "0");
    EXPECT_TRUE(vanishes(riccati_residual(invert(S("1 + q")), trivial), Truncation(8)));
    EXPECT_TRUE(riccati_residual(S("0"), trivial).is_exact_zero());
    EXPECT_EQ(riccati_residual(S("1"), trivial), S("1"));
}

TEST(ProjectiveResidual, Examples)
{
    const ODEProblem trivial = problem("1", "0", "0");
    EXPECT_TRUE(vanishes(projective_residual(-invert(S("1 + q")), trivial), Truncation(8)));
    EXPECT_TRUE(projective_residual(S("0"), trivial).is_exact_zero());
    EXPECT_EQ(projective_residual(S("1"), trivial), S("-1"));
}

TEST(Schwarzian, Examples)
{
    EXPECT_TRUE(schwarzian(S("q")).is_exact_zero());
    EXPECT_EQ(schwarzian(S("q^2")), S("-3/2*q^-2"));
    EXPECT_THROW(schwarzian(S("5")), ZeroDivision);
}

TEST(SchwarzResidual, Examples)
{
    EXPECT_TRUE(schwarz_residual(S("q"), problem("1", "0", "0")).is_exact_zero());
    EXPECT_EQ(schwarz_residual(S("q^2"), problem("1", "0", "0")), S("-3/2*q^-2"));

    const ODEProblem prob = problem("1", "0", "1/4");
    const NovikovSeries c = solve_second_order(prob, {Rational(1), Rational(0), {Rational(1), Rational(0)}}, Rational(10));
    const NovikovSeries s = solve_second_order(prob, {Rational(1), Rational(0), {Rational(0), Rational(1)}}, Rational(10));
    EXPECT_TRUE(vanishes(schwarz_residual(s * invert(c), prob), Truncation(5)));
}

TEST(SolveSecondOrder, CoshMatchesReference)
{
    const ODEProblem prob = problem("1", "0", "1/4");
    const NovikovSeries rho = solve_second_order(prob, {Rational(1), Rational(0), {Rational(1), Rational(0)}}, Rational(12));
    EXPECT_EQ(rho, cosh_reference(12));
    const NovikovSeries sigma_seed =
        solve_second_order(prob, {Rational(1), Rational(0), {Rational(0), Rational(1)}}, Rational(12));
    EXPECT_EQ(sigma_seed, sinh_reference(12));
}

TEST(SolveSecondOrder, TrivialEquation)
{
    const ODEProblem prob = problem("1", "0", "0");
    EXPECT_EQ(solve_second_order(prob, {Rational(1), Rational(0), {Rational(1), Rational(0)}}, Rational(6)),
              S("1 + O(q^6)"));
    EXPECT_EQ(solve_second_order(prob, {Rational(1), Rational(0), {Rational(0), Rational(1)}}, Rational(6)),
              S("q + O(q^6)"));
}

TEST(SolveSecondOrder, ResonantExponents)
{
    const ODEProblem prob = problem("q", "0", "0");
    // Indicial polynomial d^2 - 2d.
    EXPECT_THROW(solve_second_order(prob, {Rational(1), Rational(0), {}}, Rational(5)), ResonantExponent);
    EXPECT_THROW(solve_second_order(prob, {Rational(1), Rational(0), {Rational(1), Rational(0)}}, Rational(5)),
                 ResonantExponent);
    // Seeding the second root as well determines everything: rho = 1 + q^2.
    EXPECT_EQ(solve_second_order(prob, {Rational(1), Rational(0), {Rational(1), Rational(0), Rational(1)}}, Rational(5)),
              S("1 + q^2 + O(q^5)"));
}

TEST(SolveSecondOrder, LatticeMismatch)
{
    EXPECT_THROW(solve_second_order(problem("1", "q^(1/3)", "0"), {Rational(1), Rational(0), {Rational(1)}}, Rational(4)),
                 LatticeMismatch);
    EXPECT_THROW(solve_second_order(problem("1", "0", "0"), {Rational(2, 3), Rational(0), {Rational(1)}}, Rational(4)),
                 InvalidInput);
}

TEST(SolveSecondOrder, InconsistentSeed)
{
    // d^2 rho - rho = 0 forces the q^2 coefficient from the constant term.
    const ODEProblem prob = problem("1", "0", "1/4");
    EXPECT_THROW(solve_second_order(prob, {Rational(1), Rational(0), {Rational(1), Rational(0), Rational(7)}}, Rational(5)),
                 InconsistentSeed);
}

TEST(SolveSecondOrder, PrecisionLimitedByCoefficients)
{
    const ODEProblem prob{S("1"), S("O(q^3)"), S("1/4 + O(q^3)")};
    const NovikovSeries rho = solve_second_order(prob, {Rational(1), Rational(0), {Rational(1), Rational(0)}}, Rational(20));
    EXPECT_LE(rho.truncation(), Truncation(5));
    EXPECT_TRUE(vanishes(second_order_residual(rho, prob), Truncation(2)));
}

TEST(EquationChain, ExplicitSolution)
{
    const ODEProblem prob = problem("1", "0", "1/4");
    const EquationChain c = equation_chain(cosh_reference(12), prob);
    EXPECT_TRUE(vanishes(c.system.first, Truncation(8)));
    EXPECT_TRUE(vanishes(c.system.second, Truncation(8)));
    EXPECT_TRUE(vanishes(c.second_order, Truncation(8)));
    EXPECT_TRUE(vanishes(c.riccati, Truncation(8)));
    EXPECT_TRUE(vanishes(c.projective, Truncation(8)));
}

// ---------------------------------------------------------------------------
// Random problems on the half-integer lattice

namespace {

ODEProblem random_problem(Gen& g)
{
    const Truncation t(8);
    return ODEProblem{g.unit_series(2, 0, 10, 3, 3, t), g.series(2, 0, 10, 3, 3, t), g.series(2, 0, 10, 3, 3, t)};
}

const LatticeSeed kFirstSeed{Rational(1, 2), Rational(0), {Rational(1), Rational(0), Rational(0)}};
const LatticeSeed kSecondSeed{Rational(1, 2), Rational(0), {Rational(0), Rational(0), Rational(1)}};

} // namespace

class ChainProperties : public ::testing::TestWithParam<int> {};

TEST_P(ChainProperties, ChainConsistency)
{
    Gen g(static_cast<std::uint64_t>(GetParam()));
    const ODEProblem prob = random_problem(g);
    for (const LatticeSeed& seed : {kFirstSeed, kSecondSeed}) {
        const NovikovSeries rho = solve_second_order(prob, seed, Rational(8));
        const EquationChain c = equation_chain(rho, prob);
        EXPECT_TRUE(vanishes(c.second_order, Truncation(3)));
        EXPECT_TRUE(vanishes(c.system.first, Truncation(3)));
        EXPECT_TRUE(vanishes(c.system.second, Truncation(3)));
        EXPECT_TRUE(vanishes(c.riccati, Truncation(2)));
        EXPECT_TRUE(vanishes(c.projective, Truncation(2)));
    }
}

TEST_P(ChainProperties, SchwarzianOfQuotient)
{
    Gen g(static_cast<std::uint64_t>(GetParam()) + 500);
    const ODEProblem prob = random_problem(g);
    const NovikovSeries rho1 = solve_second_order(prob, kFirstSeed, Rational(8));
    const NovikovSeries rho2 = solve_second_order(prob, kSecondSeed, Rational(8));
    EXPECT_TRUE(vanishes(schwarz_residual(rho2 * invert(rho1), prob), Truncation(2)));
}

TEST_P(ChainProperties, MoebiusInvariance)
{
    Gen g(static_cast<std::uint64_t>(GetParam()) + 900);
    const NovikovSeries theta = S("q") + g.series(2, 3, 14, 4, 3, Truncation(8));
    Rational a, b, c, d;
    do {
        a = g.rational(4, 3);
        b = g.rational(4, 3);
        c = g.rational(4, 3);
        d = g.nonzero_rational(4, 3);
    } while (a * d - b * c == 0);
    const NovikovSeries moved = (a * theta + S("1") * b) * invert(c * theta + S("1") * d);
    const NovikovSeries lhs = schwarzian(moved);
    const NovikovSeries rhs = schwarzian(theta);
    const Truncation t = min(lhs.truncation(), rhs.truncation());
    ASSERT_GE(t, Truncation(3));
    EXPECT_TRUE(equal_up_to(lhs, rhs, t.value()));
}

INSTANTIATE_TEST_SUITE_P(Random, ChainProperties, ::testing::Range(1, 26));

// ---------------------------------------------------------------------------
// Mirror side

TEST(MirrorA, GeometricExpansion)
{
    NovikovSeries::Terms t;
    Rational c(-2);
    for (int n = 0; n < 8; ++n) {
        t[Rational(n)] = c;
        c *= 2;
    }
    EXPECT_EQ(mirror_a(Rational(2), H("1"), Rational(8)), NovikovSeries(std::move(t), Truncation(8)));
    EXPECT_TRUE(mirror_a(Rational(0), H("1"), Rational(8)).is_zero());
}

TEST(MirrorA, SumOfTwoPoles)
{
    // 1/(h-1) - 1/(1+h) = -2 (1 + h^2 + h^4 + ...)
    EXPECT_EQ(mirror_a(Rational(1), H("1 + h"), Rational(7)), H("-2 - 2*h^2 - 2*h^4 - 2*h^6 + O(h^7)"));
}

TEST(MirrorA, RiccatiIdentity)
{
    const NovikovSeries a = mirror_a(Rational(2), H("1"), Rational(10));
    EXPECT_TRUE(vanishes(mirror_a_residual(a, NovikovSeries()), Truncation(8)));
}

TEST(MirrorA, RiccatiIdentityAcrossP0)
{
    const NovikovSeries f = H("1 + h - 3*h^2 + 1/2*h^3");
    const NovikovSeries l = log_derivative(f, Truncation(10));
    for (const char* p0 : {"-3", "-1/2", "1/3", "2", "5/7", "11"}) {
        const NovikovSeries a = mirror_a(R(p0), f, Rational(10));
        EXPECT_TRUE(vanishes(mirror_a_residual(a, l), Truncation(8))) << "p0 = " << p0;
    }
}

TEST(MirrorOde, ScalarSolutions)
{
    const NovikovSeries f = H("1 + h");
    const NovikovSeries l = log_derivative(f, Truncation(12));
    EXPECT_TRUE(vanishes(mirror_ode_residual(invert(f, Truncation(12)), l), Truncation(9)));
    EXPECT_TRUE(vanishes(mirror_ode_residual(H("h") * invert(f, Truncation(12)), l), Truncation(9)));
    EXPECT_EQ(mirror_ode_residual(H("1"), H("1")), H("1"));
}

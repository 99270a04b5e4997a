#include "nabla/ode.hpp"

#include <string>

#include "nabla/errors.hpp"

namespace nabla {

void validate(const ODEProblem& prob)
{
    if (prob.psi.is_zero()) throw ZeroDivision("psi has no nonzero leading term");
}

SystemResidual system_residual(const NovikovSeries& rho, const NovikovSeries& sigma, const ODEProblem& prob)
{
    SystemResidual out;
    out.first = d_q(rho) + prob.psi * sigma;
    out.second = d_q(sigma) + Rational(4) * (prob.z2 * prob.psi * rho) + prob.eta * sigma;
    return out;
}

NovikovSeries sigma_from_rho(const NovikovSeries& rho, const ODEProblem& prob)
{
    validate(prob);
    return -(invert(prob.psi) * d_q(rho));
}

SecondOrderCoefficients second_order_coeffs(const ODEProblem& prob)
{
    validate(prob);
    SecondOrderCoefficients out;
    out.p = prob.eta - d_q(prob.psi) * invert(prob.psi);
    out.r = Rational(-4) * (prob.z2 * prob.psi * prob.psi);
    return out;
}

NovikovSeries second_order_residual(const NovikovSeries& rho, const ODEProblem& prob)
{
    const auto [p, r] = second_order_coeffs(prob);
    const NovikovSeries d_rho = d_q(rho);
    return d_q(d_rho) + p * d_rho + r * rho;
}

NovikovSeries riccati_residual(const NovikovSeries& alpha, const ODEProblem& prob)
{
    const auto [p, r] = second_order_coeffs(prob);
    return d_q(alpha) + alpha * alpha + p * alpha + r;
}

NovikovSeries projective_residual(const NovikovSeries& lambda, const ODEProblem& prob)
{
    return d_q(lambda) - prob.psi * lambda * lambda + prob.eta * lambda + Rational(4) * (prob.z2 * prob.psi);
}

NovikovSeries schwarzian(const NovikovSeries& theta)
{
    const NovikovSeries d1 = d_q(theta);
    const NovikovSeries ratio = d_q(d1) * invert(d1);
    return d_q(ratio) - Rational(1, 2) * (ratio * ratio);
}

NovikovSeries schwarz_residual(const NovikovSeries& theta, const ODEProblem& prob)
{
    const auto [p, r] = second_order_coeffs(prob);
    // 8 z2 psi^2 = -2 r
    return schwarzian(theta) + d_q(p) + Rational(1, 2) * (p * p) + Rational(-2) * r;
}

NovikovSeries log_derivative(const NovikovSeries& rho, Truncation cap) { return d_q(rho) * invert(rho, std::move(cap)); }

EquationChain equation_chain(const NovikovSeries& rho, const ODEProblem& prob)
{
    validate(prob);
    EquationChain c;
    c.sigma = sigma_from_rho(rho, prob);
    c.alpha = log_derivative(rho);
    c.lambda = -(invert(prob.psi) * c.alpha);
    c.system = system_residual(rho, c.sigma, prob);
    c.second_order = second_order_residual(rho, prob);
    c.riccati = riccati_residual(c.alpha, prob);
    c.projective = projective_residual(c.lambda, prob);
    return c;
}

// ---------------------------------------------------------------------------
// Frobenius-style recursion
//
// L(q^d) = d(d-1) q^(d-2) + sum_e p_e d q^(e+d-1) + sum_e r_e q^(e+d).
// With kappa the lowest exponent shift of L, the coefficient of q^(d_j+kappa)
// in L(rho) involves c_j through the indicial factor I(d_j) and only lower
// coefficients otherwise.

namespace {

struct Operator {
    const NovikovSeries& p;
    const NovikovSeries& r;

    /// Coefficient of q^target in L(q^d).
    Rational coefficient(const Rational& d, const Rational& target) const
    {
        Rational out = p.coefficient(target - d + 1) * d + r.coefficient(target - d);
        if (target == d - 2) out += d * (d - 1);
        return out;
    }
};

void check_lattice(const NovikovSeries& s, const mpz_class& n, const char* name)
{
    for (const auto& [e, c] : s.terms()) {
        Rational scaled = e * Rational(n);
        if (!is_integer(scaled)) {
            throw LatticeMismatch(std::string("coefficient ") + name + " has exponent " + to_string(e)
                                  + " off the lattice (1/" + n.get_str() + ")Z");
        }
    }
}

} // namespace

NovikovSeries solve_second_order(const ODEProblem& prob, const LatticeSeed& seed, const Rational& order)
{
    if (seed.step <= 0 || seed.step.get_num() != 1) throw InvalidInput("seed step must be 1/N with N a positive integer");
    const mpz_class n = seed.step.get_den();
    const auto [p, r] = second_order_coeffs(prob);
    check_lattice(p, n, "p");
    check_lattice(r, n, "r");

    Rational kappa(-2);
    if (!p.is_zero() && p.leading_exponent() - 1 < kappa) kappa = p.leading_exponent() - 1;
    if (!r.is_zero() && r.leading_exponent() < kappa) kappa = r.leading_exponent();

    Truncation bound(order);
    bound = min(bound, p.truncation() - (kappa + 1 - seed.base));
    bound = min(bound, r.truncation() - (kappa - seed.base));

    const Operator op{p, r};
    std::vector<Rational> exps;
    std::vector<Rational> coeffs;
    for (std::size_t j = 0;; ++j) {
        Rational d = seed.base + seed.step * static_cast<unsigned long>(j);
        if (!bound.exceeds(d)) break;
        const Rational target = d + kappa;
        Rational rhs(0);
        for (std::size_t i = 0; i < j; ++i) {
            if (coeffs[i] != 0) rhs += coeffs[i] * op.coefficient(exps[i], target);
        }
        const Rational indicial = op.coefficient(d, target);
        Rational c;
        if (j < seed.coeffs.size()) {
            c = seed.coeffs[j];
            Rational defect = indicial * c + rhs;
            if (defect != 0) {
                throw InconsistentSeed("seed coefficient of q^" + to_string(d) + " contradicts the recursion (defect "
                                       + to_string(defect) + ")");
            }
        } else {
            if (indicial == 0) {
                throw ResonantExponent("indicial factor vanishes at exponent " + to_string(d));
            }
            c = -rhs / indicial;
        }
        exps.push_back(std::move(d));
        coeffs.push_back(std::move(c));
    }

    NovikovSeries::Terms terms;
    for (std::size_t j = 0; j < exps.size(); ++j) terms.emplace(exps[j], coeffs[j]);
    return NovikovSeries(std::move(terms), bound);
}

// ---------------------------------------------------------------------------
// Mirror side

NovikovSeries mirror_a(const Rational& p0, const NovikovSeries& f, const Rational& order)
{
    const Truncation cap(order);
    const NovikovSeries l = log_derivative(f, cap);
    NovikovSeries::Terms denom_terms;
    denom_terms.emplace(Rational(0), Rational(-1));
    denom_terms.emplace(Rational(1), p0);
    const NovikovSeries denom(std::move(denom_terms), Truncation::infinite());
    const NovikovSeries pole = p0 * invert(denom, cap);
    return (pole - l).truncated(cap);
}

NovikovSeries mirror_a_residual(const NovikovSeries& a, const NovikovSeries& l)
{
    return d_q(a) + a * a + Rational(2) * (l * a) + d_q(l) + l * l;
}

NovikovSeries mirror_ode_residual(const NovikovSeries& eta, const NovikovSeries& l)
{
    const NovikovSeries d_eta = d_q(eta);
    return d_q(d_eta) + Rational(2) * (l * d_eta) + (d_q(l) + l * l) * eta;
}

} // namespace nabla

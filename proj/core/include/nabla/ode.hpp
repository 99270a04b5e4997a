#pragma once

#include <vector>

#include "nabla/report.hpp"
#include "nabla/series.hpp"

namespace nabla {

/// Coefficients of the linear system
///   d/dq (rho, sigma) + [[0, psi], [4 z2 psi, eta]] (rho, sigma) = 0.
/// psi must have a nonzero leading term.
struct ODEProblem {
    NovikovSeries psi;
    NovikovSeries eta;
    NovikovSeries z2;
};

/// Throws ZeroDivision if psi has no known term.
void validate(const ODEProblem& prob);

/// Ansatz q^base * (series on the lattice step*Z). coeffs[j] is the
/// coefficient of q^(base + j*step) and is kept verbatim.
struct LatticeSeed {
    Rational step{1};
    Rational base{0};
    std::vector<Rational> coeffs;
};

struct SystemResidual {
    NovikovSeries first;  ///< d rho + psi sigma
    NovikovSeries second; ///< d sigma + 4 z2 psi rho + eta sigma
};

SystemResidual system_residual(const NovikovSeries& rho, const NovikovSeries& sigma, const ODEProblem& prob);

/// -psi^-1 d rho.
NovikovSeries sigma_from_rho(const NovikovSeries& rho, const ODEProblem& prob);

/// Coefficients of the scalar form d^2 rho + p d rho + r rho = 0:
/// p = eta - d psi / psi, r = -4 z2 psi^2.
struct SecondOrderCoefficients {
    NovikovSeries p;
    NovikovSeries r;
};

SecondOrderCoefficients second_order_coeffs(const ODEProblem& prob);

NovikovSeries second_order_residual(const NovikovSeries& rho, const ODEProblem& prob);

/// d alpha + alpha^2 + p alpha - 4 z2 psi^2, for the logarithmic derivative alpha.
NovikovSeries riccati_residual(const NovikovSeries& alpha, const ODEProblem& prob);

/// d lambda - psi lambda^2 + eta lambda + 4 z2 psi, for lambda = sigma / rho.
NovikovSeries projective_residual(const NovikovSeries& lambda, const ODEProblem& prob);

/// S(theta) = d(theta''/theta') - (theta''/theta')^2 / 2. Throws ZeroDivision
/// if theta' has no known term.
NovikovSeries schwarzian(const NovikovSeries& theta);

/// S(theta) + d p + p^2 / 2 + 8 z2 psi^2, vanishing on quotients of solutions.
NovikovSeries schwarz_residual(const NovikovSeries& theta, const ODEProblem& prob);

/// rho^-1 d rho.
NovikovSeries log_derivative(const NovikovSeries& rho, Truncation cap = Truncation::infinite());

/// The quantities obtained from a candidate rho by the eliminations of the
/// equation chain, with every residual.
struct EquationChain {
    NovikovSeries sigma;  ///< -psi^-1 d rho
    NovikovSeries alpha;  ///< rho^-1 d rho
    NovikovSeries lambda; ///< -psi^-1 alpha
    SystemResidual system;
    NovikovSeries second_order;
    NovikovSeries riccati;
    NovikovSeries projective;
};

EquationChain equation_chain(const NovikovSeries& rho, const ODEProblem& prob);

/// Order-by-order solution of the scalar second-order equation on the seed's
/// lattice, exact for exponents below `order` (or below the bound the
/// coefficient precision allows, if smaller).
///
/// Throws ResonantExponent when the indicial factor vanishes at an unseeded
/// position, LatticeMismatch when p or r has an exponent off the lattice, and
/// InconsistentSeed when a seeded coefficient at a non-resonant position
/// disagrees with the recursion.
NovikovSeries solve_second_order(const ODEProblem& prob, const LatticeSeed& seed, const Rational& order);

// Mirror side, in the variable h. `order` bounds every infinite expansion.

/// p0/(p0 h - 1) - l with l = f'/f.
NovikovSeries mirror_a(const Rational& p0, const NovikovSeries& f, const Rational& order);

/// d a + a^2 + 2 l a + (d l + l^2).
NovikovSeries mirror_a_residual(const NovikovSeries& a, const NovikovSeries& l);

/// d^2 eta + 2 l d eta + (d l + l^2) eta.
NovikovSeries mirror_ode_residual(const NovikovSeries& eta, const NovikovSeries& l);

} // namespace nabla

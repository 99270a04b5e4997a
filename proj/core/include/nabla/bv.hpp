#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/coordinates.hpp"
#include "nabla/ode.hpp"
#include "nabla/report.hpp"

namespace nabla {

using Element = Coordinates<NovikovSeries>;

struct BVBasis {
    std::string name;
    int degree = 0;
};

/// Finite graded algebra over the Novikov field with product, BV operator
/// and unit, all given on a basis.
///
/// The bracket is derived from Delta:
///   [x1, x2] = Delta(x1 x2) - (Delta x1) x2 - (-1)^|x1| x1 Delta x2.
/// A supplied bracket table replaces it in every bracket evaluation and is
/// then compared against the derived one by the "delta-bracket" check.
class BVModel {
public:
    BVModel(std::vector<BVBasis> basis, std::size_t unit);

    std::size_t dim() const { return basis_.size(); }
    const std::vector<BVBasis>& basis() const { return basis_; }
    std::vector<std::string> names() const;
    int degree(std::size_t i) const { return basis_.at(i).degree; }
    std::size_t unit_index() const { return unit_; }
    /// Throws InvalidInput for an unknown name.
    std::size_t index(std::string_view name) const;

    Element zero() const { return Element(dim()); }
    Element basis_vector(std::size_t i, const NovikovSeries& coeff = NovikovSeries::constant(1)) const;
    Element basis_vector(std::string_view name, const NovikovSeries& coeff = NovikovSeries::constant(1)) const;
    Element unit() const { return basis_vector(unit_); }

    void set_product(std::size_t i, std::size_t j, Element value);
    void set_delta(std::size_t i, Element value);
    void set_bracket_table(std::vector<std::vector<Element>> table);
    bool has_bracket_table() const { return bracket_table_.has_value(); }
    void clear_bracket_table() { bracket_table_.reset(); }

    Element mul(const Element& x, const Element& y) const;
    Element delta(const Element& x) const;
    /// The bracket in use: the supplied table if any, else derived.
    Element bracket(const Element& x, const Element& y) const;
    Element derived_bracket(const Element& x, const Element& y) const;
    /// [x1, x2]^-1 = [x1, x2] + (Delta x1) x2.
    Element modified_bracket(const Element& x, const Element& y) const;

    /// Degree of a homogeneous element; nullopt for zero. Throws
    /// DegreeMismatch if x mixes degrees.
    std::optional<int> homogeneous_degree(const Element& x) const;

    /// Named elements (a, s, k, ...) carried with the model.
    void set_element(const std::string& name, Element value);
    const Element& element(const std::string& name) const;
    bool has_element(const std::string& name) const { return elements_.count(name) != 0; }

    /// Every product, Delta and bracket table entry.
    const std::vector<std::vector<Element>>& product_table() const { return product_; }
    const std::vector<Element>& delta_table() const { return delta_; }

private:
    Element derived_basis_bracket(std::size_t i, const Element& y) const;

    std::vector<BVBasis> basis_;
    std::size_t unit_;
    std::vector<std::vector<Element>> product_;
    std::vector<Element> delta_;
    std::optional<std::vector<std::vector<Element>>> bracket_table_;
    std::map<std::string, Element> elements_;
};

/// nabla x = d_q x + L x, with d_q acting on coordinates and L linear over
/// the Novikov field, given by its values on the basis.
class Connection {
public:
    /// d_q alone.
    explicit Connection(std::size_t dim);
    explicit Connection(std::vector<Element> linear);

    std::size_t dim() const { return linear_.size(); }
    const std::vector<Element>& linear() const { return linear_; }
    Element apply(const Element& x) const;

private:
    std::vector<Element> linear_;
};

// ---------------------------------------------------------------------------
// Models

enum class Divergence {
    /// Delta = sum_i d/dt_i d/dxi_i; not compatible with the truncation t^N = 0.
    Flat,
    /// Delta = sum_i t_i d/dt_i d/dxi_i, for the log volume form.
    Logarithmic,
};

/// K[t_1..t_n]/(t_i^N) tensor Lambda[xi_1..xi_n] with |xi_i| = 1.
/// Basis names are products like "t^2*xi" (one variable) or "t1*t2^3*xi1*xi2".
BVModel polyvector_model(int variables, int truncation, Divergence divergence = Divergence::Logarithmic);

/// K[s]/(s^N) in degree 0 with Delta = 0; basis "e", "s", "s^2", ...
BVModel synthetic_model(int truncation = 4);

/// The connection on synthetic_model with nabla e = 0,
/// nabla s = psi s^2 - eta s - 4 z2 psi e, extended to s^k by the Leibniz rule
/// below the truncation.
Connection synthetic_connection(const BVModel& model, const ODEProblem& prob);

/// The one-dimensional model K e, in which s acts by a scalar.
BVModel scalar_model();

// ---------------------------------------------------------------------------
// Checks

/// antisymmetry, derivation-bracket, jacobi, e-is-ideal, delta-e,
/// delta-squared, delta-bracket, delta-bracket-2, commutativity,
/// associativity, unit; plus delta-k if the model carries k.
Report check_bv_axioms(const BVModel& model);

/// [x1, Delta x2]^-1 + (-1)^|x1| Delta [x1, x2]^-1 on basis pairs.
CheckResult check_bracket_bv(const BVModel& model);

/// nabla^c x = nabla x + c a x.
Connection nabla_c(const Connection& nabla, const Element& a, const Rational& c, const BVModel& model);

/// nabla-derivation and nabla-derivation-2 on basis pairs.
Report check_leibniz(const Connection& nabla, const BVModel& model);

/// nabla Delta x - Delta nabla x + [a, x] on the basis.
CheckResult check_delta_nabla(const Connection& nabla, const Element& a, const BVModel& model);

/// "minus1-delta": nabla^-1 Delta x - Delta nabla^-1 x = 0;
/// "minus1-delta-formula": the same commutator equals (Delta a) x.
/// Throws PrerequisiteFailed unless check_delta_nabla passes.
Report check_minus1_delta(const Connection& nabla, const Element& a, const BVModel& model);

struct GaugeChange {
    Connection nabla;
    Element a;
};

/// nabla~ x = nabla x - [alpha, x], a~ = a + Delta alpha. Throws
/// DegreeMismatch unless alpha has degree 1.
GaugeChange gauge_change(const Connection& nabla, const Element& alpha, const Element& a, const BVModel& model);

/// nabla~^-1 x - nabla^-1 x + Delta(alpha x) + alpha Delta x on the basis.
CheckResult check_minus1_ambiguity(const Connection& nabla, const Element& alpha, const Element& a,
                                   const BVModel& model);

/// nabla s - psi s s + eta s + 4 z2 psi e.
Element bs_residual(const Connection& nabla, const Element& s, const ODEProblem& prob, const BVModel& model);

/// nabla a + a a + (eta - psi'/psi) a - 4 z2 psi^2 e.
Element nonlinear_a_residual(const Connection& nabla, const Element& a, const ODEProblem& prob, const BVModel& model);

/// nabla^c s + (c - 1) psi s s + eta s + 4 z2 psi e, with nabla^c built from a.
Element nablac_s_residual(const Connection& nabla, const Element& a, const Element& s, const Rational& c,
                          const ODEProblem& prob, const BVModel& model);

/// nabla^1 nabla^1 e + (eta - psi'/psi) nabla^1 e - 4 z2 psi^2 e.
Element second_order_on_e(const Connection& nabla, const Element& a, const ODEProblem& prob, const BVModel& model);

/// "delta-k": Delta k = 0; "r-k-1": [k, x] = [k, x]^-1 on the basis (they
/// differ by (Delta k) x).
Report r_endomorphism_check(const Element& k, const BVModel& model);

/// The Borman-Sheridan family on a model where nabla s is known: bs, the
/// nonlinear equation for a = -psi s, nabla^c s for c in {-1, 0, 1} and the
/// second-order equation on e.
Report borman_sheridan_chain(const Connection& nabla, const Element& s, const ODEProblem& prob,
                             const BVModel& model);

std::string render(const Element& x, const BVModel& model);

} // namespace nabla

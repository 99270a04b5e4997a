#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "nabla/coordinates.hpp"
#include "nabla/ode.hpp"
#include "nabla/report.hpp"
#include "nabla/useries.hpp"

namespace nabla {

using ClassSeries = Coordinates<NovikovSeries>;
using ClassUSeries = Coordinates<USeries>;

struct BasisClass {
    std::string name;
    int degree = 0;
};

/// Finite graded model of H*(F; K) with cup product, the graded pieces *^(k)
/// of the quantum product (degree -2k), and restriction to E = F \ M.
///
/// Tables not set are zero. Entries are stored for both orders of the
/// arguments, with the Koszul sign (-1)^(|x||y|).
///
/// The class W = q^-1 [omega_F] is either set explicitly or, if the basis has
/// an element named "W", that element. In the second case d_q(W) = -q^-1 W.
class CohomologyModel {
public:
    explicit CohomologyModel(std::vector<BasisClass> basis);

    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasisClass>& basis() const { return basis_; }
    std::vector<std::string> names() const;
    int degree(std::size_t i) const { return basis_.at(i).degree; }
    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws InvalidInput for an unknown name.
    std::size_t index(std::string_view name) const;

    ClassSeries zero() const { return ClassSeries(dim()); }
    ClassSeries basis_vector(std::string_view name, const NovikovSeries& coeff = NovikovSeries::constant(1)) const;

    void set_cup(std::size_t i, std::size_t j, const ClassSeries& value);
    /// k >= 0. Throws DegreeMismatch unless every nonzero component of value
    /// has degree |i| + |j| - 2k.
    void set_product(int k, std::size_t i, std::size_t j, const ClassSeries& value);

    /// Removes every *^(k) entry for the pair (i, j).
    void clear_products(std::size_t i, std::size_t j);
    /// unit cup x = unit *^(0) x = x for every basis x. Throws InvalidInput
    /// without a unit.
    void set_unital_products();

    ClassSeries cup(const ClassSeries& x, const ClassSeries& y) const;
    /// x *^(k) y; zero for k < 0.
    ClassSeries star(int k, const ClassSeries& x, const ClassSeries& y) const;
    /// Sum over k of x *^(k) y.
    ClassSeries quantum_mul(const ClassSeries& x, const ClassSeries& y) const;
    int max_k() const;

    void set_unit(std::size_t i) { unit_ = i; }
    const std::optional<std::size_t>& unit() const { return unit_; }

    void set_w_class(ClassSeries w);
    /// Throws InvalidInput if no W class is available.
    ClassSeries w_class() const;

    /// Name of the fibre class [M]; default "M".
    void set_m_name(std::string name) { m_name_ = std::move(name); }
    std::size_t m_index() const { return index(m_name_); }

    /// Classes killed by restriction to E; default {M}. Restriction is the
    /// projection onto the remaining basis elements, in order.
    void set_restriction_kernel(const std::vector<std::string>& names);
    std::vector<std::string> e_names() const;
    ClassSeries restrict(const ClassSeries& x) const;
    ClassUSeries restrict(const ClassUSeries& x) const;

    /// d_q on coefficients, plus d_q(W) = -q^-1 W for a basis element W.
    ClassSeries d_q(const ClassSeries& x) const;

    /// Homogeneous degree of x, or nullopt for zero; throws DegreeMismatch
    /// if x mixes degrees.
    std::optional<int> homogeneous_degree(const ClassSeries& x) const;

private:
    using Key = std::tuple<int, std::size_t, std::size_t>;
    static constexpr int kCup = -1;

    void store(int k, std::size_t i, std::size_t j, const ClassSeries& value);
    ClassSeries apply(int k, const ClassSeries& x, const ClassSeries& y) const;
    bool killed(std::size_t i) const;

    std::vector<BasisClass> basis_;
    std::map<Key, ClassSeries> tables_;
    std::optional<std::size_t> unit_;
    std::optional<ClassSeries> w_;
    std::string m_name_ = "M";
    std::vector<std::size_t> kernel_;
};

/// Gromov-Witten data: z^(k) in H^(4-2k), the relative class z~^(2) and the
/// blow-up parameter gamma of [omega_F] = [D] + gamma [M].
struct GWData {
    ClassSeries z0;
    ClassSeries z1;
    ClassSeries z2;
    std::optional<ClassSeries> z2tilde;
    std::optional<Rational> gamma;
};

/// Throws DegreeMismatch unless z^(k) has degree 4 - 2k.
void validate(const GWData& gw, const CohomologyModel& model);

/// quantum_mul with a degree check: throws DegreeMismatch if an input is not
/// homogeneous.
ClassSeries quantum_mul_homogeneous(const ClassSeries& x, const ClassSeries& y, const CohomologyModel& model);

/// Adds the products M*M, X*M and X*X forced by the divisor relations, split
/// into their graded pieces. W must be a*X + b*M with a invertible.
CohomologyModel with_divisor_products(CohomologyModel model, const GWData& gw, std::string_view x_name);

/// The three divisor relations, as checks "m-star-m", "w-star-m", "w-star-w".
Report divisor_relations_check(const CohomologyModel& model, const GWData& gw);

/// x *^(0) z1 - (x cup M) *^(1) M - (x *^(1) M) cup M.
ClassSeries wdvv_residual(const ClassSeries& x, const CohomologyModel& model, const GWData& gw);

/// 1/2 (z1 *^(1) M)|E, on the E basis.
ClassSeries relative_z2(const CohomologyModel& model, const GWData& gw);

/// relative_z2 against z2tilde|E. Throws InvalidInput if z2tilde is absent.
CheckResult relative_z2_check(const CohomologyModel& model, const GWData& gw);

struct PsiEta {
    NovikovSeries psi;
    NovikovSeries eta;
};

/// The (psi, eta) with W = psi z1 - eta M, in a model whose degree-2 part is
/// spanned by x_name and M. Throws NoSolution if the x_name component of z1
/// vanishes or if W or z1 leave that span.
PsiEta solve_psi_eta(const CohomologyModel& model, const GWData& gw, std::string_view x_name);

/// psi z1 - eta M - W.
ClassSeries psi_eta_residual(const PsiEta& pe, const CohomologyModel& model, const GWData& gw);

/// D(x) = u d_q x + W * x.
ClassUSeries quantum_connection(const ClassUSeries& x, const CohomologyModel& model);

ClassUSeries to_useries(const ClassSeries& x, int u_order = USeries::kDefaultOrder);

// ---------------------------------------------------------------------------
// Equivariant module

/// Element of H*(E; K[[u]]) in the span of 1, W and W*W.
struct FormalClass {
    USeries one;
    USeries w;
    USeries ww;
};

/// Element of SH*_eq(E) in the free basis e, s, (s.s).
struct EqElement {
    USeries e;
    USeries s;
    USeries ss;

    friend EqElement operator+(const EqElement& a, const EqElement& b) { return {a.e + b.e, a.s + b.s, a.ss + b.ss}; }
    friend EqElement operator-(const EqElement& a, const EqElement& b) { return {a.e - b.e, a.s - b.s, a.ss - b.ss}; }
    friend bool operator==(const EqElement& a, const EqElement& b) = default;
};

std::string render(const EqElement& x);

/// D on the span of 1 and W: D(f) = u f' + f W, D(f W) = u (f' - q^-1 f) W + f W*W.
/// Throws InvalidInput if the W*W component is nonzero.
FormalClass formal_connection(const FormalClass& x);

/// The dictionary B_eq determined by psi, eta, z2:
///   B(1) = e, B(W) = u psi s,
///   B(W*W) = 2 u^2 psi^2 ss - u (eta - psi'/psi - q^-1) B(W) - 4 u^2 z2 psi^2 e.
class EqModule {
public:
    /// Each pullback divides by u^3, so results are known modulo u^(u_order - 3).
    static constexpr int kDefaultOrder = USeries::kDefaultOrder + 3;

    explicit EqModule(ODEProblem prob, int u_order = kDefaultOrder);

    const ODEProblem& problem() const { return prob_; }
    int u_order() const { return u_order_; }

    EqElement unit_element(const NovikovSeries& coeff, int u_power) const;
    EqElement dictionary(const FormalClass& x) const;
    /// Throws ZeroDivision when x is not in the image over K[[u]].
    FormalClass pullback(const EqElement& x) const;
    /// Gamma(x) = B(D(B^-1 x)).
    EqElement gamma(const EqElement& x) const;

private:
    ODEProblem prob_;
    int u_order_;
    NovikovSeries psi_inv_;
    NovikovSeries ww_s_; ///< -(eta - psi'/psi - q^-1) psi, the u^2 s-coefficient of B(W*W)
};

struct GaussManin {
    EqElement gamma_e;   ///< Gamma(e_eq)
    EqElement u_gamma_s; ///< u Gamma(s_eq) = Gamma(u s_eq)
};

GaussManin gauss_manin_derivation(const EqModule& module);

/// Checks the rewrite of the u^2 (s.s) relation through s.s = s~2 + 2 z2 e,
/// WDVV at x = z1 and the relative reduction. The unit term 2 u^2 z2 of the
/// relation is offset by 2 u^2 z2 e with the scalar z2 of prob.
///   "uueq-rewrite":  1/2 (z1 *0 z1 + u z1 *1 M)|E = 1/2 ((z1 cup M + u z1) *1 M)|E
///   "uueq-relative": 1/2 ((z1 cup M + u z1) *1 M)|E = (1/2 (z1 cup M) *1 M + u z~2)|E
/// Throws PrerequisiteFailed if WDVV at z1 or the relative reduction fails.
Report uueq_rewrite_check(const CohomologyModel& model, const GWData& gw, const ODEProblem& prob);

std::string render(const ClassSeries& x, const std::vector<std::string>& names);
std::string render(const ClassUSeries& x, const std::vector<std::string>& names);

} // namespace nabla

#include "nabla/gw.hpp"

#include <algorithm>

#include "nabla/errors.hpp"

namespace nabla {

namespace {

int koszul(int a, int b) { return (a * b) % 2 == 0 ? 1 : -1; }

const NovikovSeries& q_inverse()
{
    static const NovikovSeries q_inv = NovikovSeries::monomial(1, -1);
    return q_inv;
}

CheckResult class_check(std::string name, const ClassSeries& residual, const std::vector<std::string>& names)
{
    CheckResult r;
    r.name = std::move(name);
    r.passed = residual.is_zero();
    r.residual = render(residual, names);
    for (std::size_t i = 0; i < residual.size(); ++i) {
        if (!residual[i].is_zero()) {
            r.where = names.at(i);
            break;
        }
    }
    return r;
}

CheckResult class_check(std::string name, const ClassUSeries& residual, const std::vector<std::string>& names)
{
    CheckResult r;
    r.name = std::move(name);
    r.passed = residual.is_zero();
    r.residual = render(residual, names);
    for (std::size_t i = 0; i < residual.size(); ++i) {
        if (!residual[i].is_zero()) {
            r.where = names.at(i);
            break;
        }
    }
    return r;
}

int u_order_of(const ClassUSeries& x)
{
    int n = USeries::kDefaultOrder;
    bool first = true;
    for (const auto& c : x) {
        n = first ? c.order() : std::min(n, c.order());
        first = false;
    }
    return n;
}

ClassSeries slice(const ClassUSeries& x, int power)
{
    return x.map([power](const USeries& s) { return s[power]; });
}

/// Applies a K-linear map on classes to each u-coefficient.
template <class F>
ClassUSeries u_linear(const ClassUSeries& x, F&& f)
{
    const int order = u_order_of(x);
    std::vector<USeries> out;
    for (int p = 0; p < order; ++p) {
        const ClassSeries image = f(slice(x, p));
        if (out.empty()) out.assign(image.size(), USeries(order));
        for (std::size_t i = 0; i < image.size(); ++i) out[i] += USeries::term(image[i], p, order);
    }
    return ClassUSeries(std::move(out));
}

ClassUSeries times_u(const ClassUSeries& x, int k)
{
    return x.map([k](const USeries& s) { return s.shifted(k); });
}

} // namespace

// ---------------------------------------------------------------------------
// CohomologyModel

CohomologyModel::CohomologyModel(std::vector<BasisClass> basis) : basis_(std::move(basis))
{
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (basis_[i].name == basis_[j].name) throw InvalidInput("duplicate basis class '" + basis_[i].name + "'");
        }
    }
    if (auto m = find(m_name_)) kernel_.push_back(*m);
}

std::vector<std::string> CohomologyModel::names() const
{
    std::vector<std::string> out;
    for (const auto& b : basis_) out.push_back(b.name);
    return out;
}

std::optional<std::size_t> CohomologyModel::find(std::string_view name) const
{
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].name == name) return i;
    }
    return std::nullopt;
}

std::size_t CohomologyModel::index(std::string_view name) const
{
    if (auto i = find(name)) return *i;
    throw InvalidInput("unknown class '" + std::string(name) + "'");
}

ClassSeries CohomologyModel::basis_vector(std::string_view name, const NovikovSeries& coeff) const
{
    return ClassSeries::unit(dim(), index(name), coeff);
}

void CohomologyModel::store(int k, std::size_t i, std::size_t j, const ClassSeries& value)
{
    if (i >= dim() || j >= dim()) throw IndexOutOfRange("basis index out of range");
    if (value.size() != dim()) throw InvalidInput("table entry of wrong dimension");
    tables_[{k, i, j}] = value;
    if (i != j) tables_[{k, j, i}] = Rational(koszul(degree(i), degree(j))) * value;
}

void CohomologyModel::set_cup(std::size_t i, std::size_t j, const ClassSeries& value)
{
    const int expected = degree(i) + degree(j);
    for (std::size_t c = 0; c < value.size(); ++c) {
        if (!value[c].is_zero() && degree(c) != expected) {
            throw DegreeMismatch("cup product " + basis_[i].name + " * " + basis_[j].name + " has a component on "
                                 + basis_[c].name);
        }
    }
    store(kCup, i, j, value);
}

void CohomologyModel::set_product(int k, std::size_t i, std::size_t j, const ClassSeries& value)
{
    if (k < 0) throw InvalidInput("quantum product pieces have k >= 0");
    const int expected = degree(i) + degree(j) - 2 * k;
    for (std::size_t c = 0; c < value.size(); ++c) {
        if (!value[c].is_zero() && degree(c) != expected) {
            throw DegreeMismatch("*^(" + std::to_string(k) + ") product " + basis_[i].name + " * " + basis_[j].name
                                 + " has a component on " + basis_[c].name + " of degree "
                                 + std::to_string(degree(c)) + ", expected " + std::to_string(expected));
        }
    }
    store(k, i, j, value);
}

void CohomologyModel::clear_products(std::size_t i, std::size_t j)
{
    std::erase_if(tables_, [&](const auto& kv) {
        const auto& [k, a, b] = kv.first;
        return k != kCup && ((a == i && b == j) || (a == j && b == i));
    });
}

void CohomologyModel::set_unital_products()
{
    if (!unit_) throw InvalidInput("model has no unit");
    for (std::size_t i = 0; i < dim(); ++i) {
        const ClassSeries v = ClassSeries::unit(dim(), i, NovikovSeries::constant(1));
        store(kCup, *unit_, i, v);
        store(0, *unit_, i, v);
    }
}

ClassSeries CohomologyModel::apply(int k, const ClassSeries& x, const ClassSeries& y) const
{
    ClassSeries out = zero();
    for (const auto& [key, value] : tables_) {
        const auto& [kk, i, j] = key;
        if (kk != k || x[i].is_exact_zero() || y[j].is_exact_zero()) continue;
        out += x[i] * y[j] * value;
    }
    return out;
}

ClassSeries CohomologyModel::cup(const ClassSeries& x, const ClassSeries& y) const { return apply(kCup, x, y); }

ClassSeries CohomologyModel::star(int k, const ClassSeries& x, const ClassSeries& y) const
{
    if (k < 0) return zero();
    return apply(k, x, y);
}

ClassSeries CohomologyModel::quantum_mul(const ClassSeries& x, const ClassSeries& y) const
{
    ClassSeries out = zero();
    for (int k = 0; k <= max_k(); ++k) out += star(k, x, y);
    return out;
}

int CohomologyModel::max_k() const
{
    int k = 0;
    for (const auto& kv : tables_) k = std::max(k, std::get<0>(kv.first));
    return k;
}

void CohomologyModel::set_w_class(ClassSeries w)
{
    if (w.size() != dim()) throw InvalidInput("W class of wrong dimension");
    w_ = std::move(w);
}

ClassSeries CohomologyModel::w_class() const
{
    if (w_) return *w_;
    if (find("W")) return basis_vector("W");
    throw InvalidInput("model has no W class");
}

void CohomologyModel::set_restriction_kernel(const std::vector<std::string>& names)
{
    kernel_.clear();
    for (const auto& n : names) kernel_.push_back(index(n));
}

bool CohomologyModel::killed(std::size_t i) const
{
    return std::find(kernel_.begin(), kernel_.end(), i) != kernel_.end();
}

std::vector<std::string> CohomologyModel::e_names() const
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!killed(i)) out.push_back(basis_[i].name);
    }
    return out;
}

ClassSeries CohomologyModel::restrict(const ClassSeries& x) const
{
    std::vector<NovikovSeries> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!killed(i)) out.push_back(x[i]);
    }
    return ClassSeries(std::move(out));
}

ClassUSeries CohomologyModel::restrict(const ClassUSeries& x) const
{
    std::vector<USeries> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!killed(i)) out.push_back(x[i]);
    }
    return ClassUSeries(std::move(out));
}

ClassSeries CohomologyModel::d_q(const ClassSeries& x) const
{
    ClassSeries out = x.map([](const NovikovSeries& s) { return nabla::d_q(s); });
    if (!w_) {
        if (auto w = find("W")) out[*w] -= q_inverse() * x[*w];
    }
    return out;
}

std::optional<int> CohomologyModel::homogeneous_degree(const ClassSeries& x) const
{
    std::optional<int> deg;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        if (deg && *deg != degree(i)) throw DegreeMismatch("class mixes degrees " + std::to_string(*deg) + " and "
                                                           + std::to_string(degree(i)));
        deg = degree(i);
    }
    return deg;
}

// ---------------------------------------------------------------------------
// Gromov-Witten relations

void validate(const GWData& gw, const CohomologyModel& model)
{
    const ClassSeries* z[] = {&gw.z0, &gw.z1, &gw.z2};
    for (int k = 0; k < 3; ++k) {
        if (z[k]->size() != model.dim()) throw InvalidInput("z" + std::to_string(k) + " has wrong dimension");
        const auto deg = model.homogeneous_degree(*z[k]);
        if (deg && *deg != 4 - 2 * k) {
            throw DegreeMismatch("z" + std::to_string(k) + " has degree " + std::to_string(*deg) + ", expected "
                                 + std::to_string(4 - 2 * k));
        }
    }
    if (gw.z2tilde) {
        if (gw.z2tilde->size() != model.dim()) throw InvalidInput("z2tilde has wrong dimension");
        const auto deg = model.homogeneous_degree(*gw.z2tilde);
        if (deg && *deg != 2) throw DegreeMismatch("z2tilde has degree " + std::to_string(*deg) + ", expected 2");
    }
}

ClassSeries quantum_mul_homogeneous(const ClassSeries& x, const ClassSeries& y, const CohomologyModel& model)
{
    model.homogeneous_degree(x);
    model.homogeneous_degree(y);
    return model.quantum_mul(x, y);
}

CohomologyModel with_divisor_products(CohomologyModel model, const GWData& gw, std::string_view x_name)
{
    validate(gw, model);
    const std::size_t xi = model.index(x_name);
    const std::size_t mi = model.m_index();
    const ClassSeries w = model.w_class();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i != xi && i != mi && !w[i].is_zero()) throw InvalidInput("W is not a combination of " + std::string(x_name) + " and M");
    }
    const NovikovSeries& a = w[xi];
    const NovikovSeries& b = w[mi];
    const NovikovSeries a_inv = invert(a);

    const ClassSeries m = model.basis_vector(model.basis()[mi].name);
    const ClassSeries zsum = gw.z0 + gw.z1 + gw.z2;
    const ClassSeries t_mm = gw.z1 + Rational(4) * gw.z2;
    const ClassSeries t_wm = model.cup(w, m) + model.d_q(gw.z1 + Rational(2) * gw.z2);
    const ClassSeries t_ww = model.cup(w, w) + q_inverse() * model.d_q(zsum) + model.d_q(model.d_q(zsum));

    const ClassSeries p_mm = t_mm;
    const ClassSeries p_xm = a_inv * (t_wm - b * p_mm);
    const ClassSeries p_xx = (a_inv * a_inv) * (t_ww - (Rational(2) * (a * b)) * p_xm - (b * b) * p_mm);

    auto install = [&model](std::size_t i, std::size_t j, const ClassSeries& product) {
        model.clear_products(i, j);
        const int in = model.degree(i) + model.degree(j);
        std::map<int, ClassSeries> pieces;
        for (std::size_t c = 0; c < product.size(); ++c) {
            if (product[c].is_zero()) continue;
            const int drop = in - model.degree(c);
            if (drop < 0 || drop % 2 != 0) {
                throw DegreeMismatch("product " + model.basis()[i].name + " * " + model.basis()[j].name
                                     + " has a component on " + model.basis()[c].name + " of incompatible degree");
            }
            auto [it, _] = pieces.try_emplace(drop / 2, model.zero());
            it->second[c] = product[c];
        }
        for (const auto& [k, piece] : pieces) model.set_product(k, i, j, piece);
    };
    install(mi, mi, p_mm);
    install(xi, mi, p_xm);
    install(xi, xi, p_xx);
    return model;
}

Report divisor_relations_check(const CohomologyModel& model, const GWData& gw)
{
    validate(gw, model);
    const auto names = model.names();
    const ClassSeries m = model.basis_vector(model.basis()[model.m_index()].name);
    const ClassSeries w = model.w_class();
    const ClassSeries zsum = gw.z0 + gw.z1 + gw.z2;

    Report report;
    report.add(class_check("m-star-m", model.quantum_mul(m, m) - (gw.z1 + Rational(4) * gw.z2), names));
    report.add(class_check("w-star-m",
                           model.quantum_mul(w, m) - model.cup(w, m) - model.d_q(gw.z1 + Rational(2) * gw.z2), names));
    report.add(class_check("w-star-w",
                           model.quantum_mul(w, w) - model.cup(w, w) - q_inverse() * model.d_q(zsum)
                               - model.d_q(model.d_q(zsum)),
                           names));
    return report;
}

ClassSeries wdvv_residual(const ClassSeries& x, const CohomologyModel& model, const GWData& gw)
{
    const ClassSeries m = model.basis_vector(model.basis()[model.m_index()].name);
    return model.star(0, x, gw.z1) - model.star(1, model.cup(x, m), m) - model.cup(model.star(1, x, m), m);
}

ClassSeries relative_z2(const CohomologyModel& model, const GWData& gw)
{
    const ClassSeries m = model.basis_vector(model.basis()[model.m_index()].name);
    return model.restrict(Rational(1, 2) * model.star(1, gw.z1, m));
}

CheckResult relative_z2_check(const CohomologyModel& model, const GWData& gw)
{
    if (!gw.z2tilde) throw InvalidInput("relative check needs z2tilde");
    return class_check("relative-z2", relative_z2(model, gw) - model.restrict(*gw.z2tilde), model.e_names());
}

PsiEta solve_psi_eta(const CohomologyModel& model, const GWData& gw, std::string_view x_name)
{
    const std::size_t xi = model.index(x_name);
    const std::size_t mi = model.m_index();
    for (std::size_t i = 0; i < model.dim(); ++i) {
        if (model.degree(i) == 2 && i != xi && i != mi) {
            throw NoSolution("degree-2 part is not spanned by " + std::string(x_name) + " and M: extra class "
                             + model.basis()[i].name);
        }
    }
    const ClassSeries w = model.w_class();
    for (std::size_t i = 0; i < model.dim(); ++i) {
        if (i == xi || i == mi) continue;
        if (!w[i].is_zero() || !gw.z1[i].is_zero()) {
            throw NoSolution("W or z1 has a component on " + model.basis()[i].name);
        }
    }
    if (gw.z1[xi].is_zero()) throw NoSolution("the " + std::string(x_name) + " component of z1 vanishes");
    PsiEta out;
    out.psi = w[xi] * invert(gw.z1[xi]);
    out.eta = out.psi * gw.z1[mi] - w[mi];
    return out;
}

ClassSeries psi_eta_residual(const PsiEta& pe, const CohomologyModel& model, const GWData& gw)
{
    const ClassSeries m = model.basis_vector(model.basis()[model.m_index()].name);
    return pe.psi * gw.z1 - pe.eta * m - model.w_class();
}

ClassUSeries to_useries(const ClassSeries& x, int u_order)
{
    return x.map([u_order](const NovikovSeries& s) { return USeries::scalar(s, u_order); });
}

ClassUSeries quantum_connection(const ClassUSeries& x, const CohomologyModel& model)
{
    const ClassSeries w = model.w_class();
    const ClassUSeries derivative = u_linear(x, [&](const ClassSeries& c) { return model.d_q(c); });
    const ClassUSeries product = u_linear(x, [&](const ClassSeries& c) { return model.quantum_mul(w, c); });
    return times_u(derivative, 1) + product;
}

// ---------------------------------------------------------------------------
// Equivariant module

std::string render(const EqElement& x)
{
    const std::vector<std::string> names{"e", "s", "ss"};
    return render(ClassUSeries(std::vector<USeries>{x.e, x.s, x.ss}), names);
}

FormalClass formal_connection(const FormalClass& x)
{
    if (!x.ww.is_zero()) throw InvalidInput("D is only available on the span of 1 and W");
    FormalClass out;
    out.one = d_q(x.one).shifted(1);
    out.w = x.one + (d_q(x.w) - q_inverse() * x.w).shifted(1);
    out.ww = x.w;
    return out;
}

EqModule::EqModule(ODEProblem prob, int u_order) : prob_(std::move(prob)), u_order_(u_order)
{
    validate(prob_);
    psi_inv_ = invert(prob_.psi);
    ww_s_ = -((prob_.eta - d_q(prob_.psi) * psi_inv_ - q_inverse()) * prob_.psi);
}

EqElement EqModule::unit_element(const NovikovSeries& coeff, int u_power) const
{
    return EqElement{USeries::term(coeff, u_power, u_order_), USeries(u_order_), USeries(u_order_)};
}

EqElement EqModule::dictionary(const FormalClass& x) const
{
    auto term = [this](const NovikovSeries& c, int p) { return USeries::term(c, p, u_order_); };
    const NovikovSeries& psi = prob_.psi;
    EqElement out;
    out.e = x.one + x.ww * term(Rational(-4) * (prob_.z2 * psi * psi), 2);
    out.s = x.w * term(psi, 1) + x.ww * term(ww_s_, 2);
    out.ss = x.ww * term(Rational(2) * (psi * psi), 2);
    return out;
}

FormalClass EqModule::pullback(const EqElement& x) const
{
    FormalClass out;
    out.one = USeries(u_order_);
    out.w = USeries(u_order_);
    out.ww = x.ss.shifted(-2) * (Rational(1, 2) * (psi_inv_ * psi_inv_));
    EqElement rest = x - dictionary(FormalClass{USeries(u_order_), USeries(u_order_), out.ww});
    out.w = rest.s.shifted(-1) * psi_inv_;
    rest = rest - dictionary(FormalClass{USeries(u_order_), out.w, USeries(u_order_)});
    out.one = rest.e;
    return out;
}

EqElement EqModule::gamma(const EqElement& x) const { return dictionary(formal_connection(pullback(x))); }

GaussManin gauss_manin_derivation(const EqModule& module)
{
    const int n = module.u_order();
    GaussManin out;
    out.gamma_e = module.gamma(module.unit_element(NovikovSeries::constant(1), 0));
    out.u_gamma_s = module.gamma(EqElement{USeries(n), USeries::term(NovikovSeries::constant(1), 1, n), USeries(n)});
    return out;
}

Report uueq_rewrite_check(const CohomologyModel& model, const GWData& gw, const ODEProblem& prob)
{
    validate(gw, model);
    Report report;
    const ClassSeries wdvv = wdvv_residual(gw.z1, model, gw);
    CheckResult wdvv_check = class_check("wdvv", wdvv, model.names());
    if (!wdvv_check.passed) throw PrerequisiteFailed("WDVV fails at x = z1: " + wdvv_check.residual);
    CheckResult relative = relative_z2_check(model, gw);
    if (!relative.passed) throw PrerequisiteFailed("relative reduction fails: " + relative.residual);
    report.add(std::move(wdvv_check));
    report.add(std::move(relative));

    const int n = USeries::kDefaultOrder;
    const ClassSeries m = model.basis_vector(model.basis()[model.m_index()].name);
    const ClassSeries z1m = model.star(1, gw.z1, m);
    const ClassSeries cupped = model.star(1, model.cup(gw.z1, m), m);

    // 2 u^2 z2 from the relation, minus 2 u^2 z2 e from s.s = s~2 + 2 z2 e.
    ClassSeries unit_shift = gw.z2;
    if (!prob.z2.is_zero()) {
        if (!model.unit()) throw InvalidInput("model needs a unit to absorb the 2 z2 e term");
        unit_shift -= ClassSeries::unit(model.dim(), *model.unit(), prob.z2);
    }

    const ClassUSeries lhs = model.restrict(Rational(1, 2) * (to_useries(model.star(0, gw.z1, gw.z1), n)
                                                              + times_u(to_useries(z1m, n), 1))
                                            + times_u(Rational(2) * to_useries(unit_shift, n), 2));
    const ClassUSeries rhs1 =
        model.restrict(Rational(1, 2) * (to_useries(cupped, n) + times_u(to_useries(z1m, n), 1)));
    const ClassUSeries rhs2 = model.restrict(Rational(1, 2) * to_useries(cupped, n))
                              + times_u(to_useries(model.restrict(*gw.z2tilde), n), 1);

    report.add(class_check("uueq-rewrite", lhs - rhs1, model.e_names()));
    report.add(class_check("uueq-relative", rhs1 - rhs2, model.e_names()));
    return report;
}

std::string render(const ClassSeries& x, const std::vector<std::string>& names)
{
    return render_coordinates(x, names, [](const NovikovSeries& s) { return render(s); });
}

std::string render(const ClassUSeries& x, const std::vector<std::string>& names)
{
    return render_coordinates(x, names, [](const USeries& s) { return render(s); });
}

} // namespace nabla

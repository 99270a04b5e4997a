#include "nabla/bv.hpp"

#include <bit>
#include <map>

#include "nabla/errors.hpp"

namespace nabla {

namespace {

Rational sign(int exponent) { return Rational(exponent % 2 == 0 ? 1 : -1); }

/// Records the first nonzero residual of an identity over basis tuples.
class Tally {
public:
    Tally(std::string name, const BVModel& model) : model_(model) { result_.name = std::move(name); }

    void add(const Element& residual, const std::string& where)
    {
        if (failed_ || residual.is_zero()) return;
        failed_ = true;
        result_.residual = render(residual, model_);
        result_.where = where;
    }

    CheckResult result() const
    {
        CheckResult r = result_;
        r.passed = !failed_;
        if (!failed_) r.residual = "0";
        return r;
    }

private:
    const BVModel& model_;
    CheckResult result_;
    bool failed_ = false;
};

std::string tuple_name(const BVModel& m, std::initializer_list<std::size_t> idx)
{
    std::string out = "(";
    bool first = true;
    for (std::size_t i : idx) {
        if (!first) out += ", ";
        out += m.basis()[i].name;
        first = false;
    }
    return out + ")";
}

} // namespace

// ---------------------------------------------------------------------------
// BVModel

BVModel::BVModel(std::vector<BVBasis> basis, std::size_t unit) : basis_(std::move(basis)), unit_(unit)
{
    if (unit_ >= basis_.size()) throw IndexOutOfRange("unit index out of range");
    if (basis_[unit_].degree != 0) throw DegreeMismatch("unit must have degree 0");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (basis_[i].name == basis_[j].name) throw InvalidInput("duplicate basis element '" + basis_[i].name + "'");
        }
    }
    product_.assign(dim(), std::vector<Element>(dim(), zero()));
    delta_.assign(dim(), zero());
    for (std::size_t i = 0; i < dim(); ++i) {
        product_[unit_][i] = basis_vector(i);
        product_[i][unit_] = basis_vector(i);
    }
}

std::vector<std::string> BVModel::names() const
{
    std::vector<std::string> out;
    for (const auto& b : basis_) out.push_back(b.name);
    return out;
}

std::size_t BVModel::index(std::string_view name) const
{
    for (std::size_t i = 0; i < dim(); ++i) {
        if (basis_[i].name == name) return i;
    }
    throw InvalidInput("unknown basis element '" + std::string(name) + "'");
}

Element BVModel::basis_vector(std::size_t i, const NovikovSeries& coeff) const
{
    if (i >= dim()) throw IndexOutOfRange("basis index out of range");
    return Element::unit(dim(), i, coeff);
}

Element BVModel::basis_vector(std::string_view name, const NovikovSeries& coeff) const
{
    return basis_vector(index(name), coeff);
}

void BVModel::set_product(std::size_t i, std::size_t j, Element value)
{
    if (i >= dim() || j >= dim()) throw IndexOutOfRange("basis index out of range");
    if (value.size() != dim()) throw InvalidInput("product entry of wrong dimension");
    product_[i][j] = std::move(value);
}

void BVModel::set_delta(std::size_t i, Element value)
{
    if (i >= dim()) throw IndexOutOfRange("basis index out of range");
    if (value.size() != dim()) throw InvalidInput("Delta entry of wrong dimension");
    delta_[i] = std::move(value);
}

void BVModel::set_bracket_table(std::vector<std::vector<Element>> table)
{
    if (table.size() != dim()) throw InvalidInput("bracket table of wrong dimension");
    for (const auto& row : table) {
        if (row.size() != dim()) throw InvalidInput("bracket table of wrong dimension");
        for (const auto& v : row) {
            if (v.size() != dim()) throw InvalidInput("bracket entry of wrong dimension");
        }
    }
    bracket_table_ = std::move(table);
}

Element BVModel::mul(const Element& x, const Element& y) const
{
    Element out = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j].is_exact_zero()) continue;
            out += (x[i] * y[j]) * product_[i][j];
        }
    }
    return out;
}

Element BVModel::delta(const Element& x) const
{
    Element out = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!x[i].is_exact_zero()) out += x[i] * delta_[i];
    }
    return out;
}

Element BVModel::derived_basis_bracket(std::size_t i, const Element& y) const
{
    const Element b = basis_vector(i);
    return delta(mul(b, y)) - mul(delta_[i], y) - sign(degree(i)) * mul(b, delta(y));
}

Element BVModel::derived_bracket(const Element& x, const Element& y) const
{
    Element out = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!x[i].is_exact_zero()) out += x[i] * derived_basis_bracket(i, y);
    }
    return out;
}

Element BVModel::bracket(const Element& x, const Element& y) const
{
    if (!bracket_table_) return derived_bracket(x, y);
    Element out = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_exact_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j].is_exact_zero()) continue;
            out += (x[i] * y[j]) * (*bracket_table_)[i][j];
        }
    }
    return out;
}

Element BVModel::modified_bracket(const Element& x, const Element& y) const
{
    return bracket(x, y) + mul(delta(x), y);
}

std::optional<int> BVModel::homogeneous_degree(const Element& x) const
{
    std::optional<int> deg;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        if (deg && *deg != degree(i)) {
            throw DegreeMismatch("element mixes degrees " + std::to_string(*deg) + " and " + std::to_string(degree(i)));
        }
        deg = degree(i);
    }
    return deg;
}

void BVModel::set_element(const std::string& name, Element value)
{
    if (value.size() != dim()) throw InvalidInput("element '" + name + "' of wrong dimension");
    elements_[name] = std::move(value);
}

const Element& BVModel::element(const std::string& name) const
{
    auto it = elements_.find(name);
    if (it == elements_.end()) throw InvalidInput("model has no element '" + name + "'");
    return it->second;
}

// ---------------------------------------------------------------------------
// Connection

Connection::Connection(std::size_t dim) : linear_(dim, Element(dim)) {}

Connection::Connection(std::vector<Element> linear) : linear_(std::move(linear))
{
    for (const auto& v : linear_) {
        if (v.size() != linear_.size()) throw InvalidInput("connection matrix is not square");
    }
}

Element Connection::apply(const Element& x) const
{
    if (x.size() != dim()) throw InvalidInput("element of wrong dimension");
    Element out = x.map([](const NovikovSeries& s) { return d_q(s); });
    for (std::size_t j = 0; j < dim(); ++j) {
        if (!x[j].is_exact_zero()) out += x[j] * linear_[j];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Models

BVModel polyvector_model(int variables, int truncation, Divergence divergence)
{
    if (variables < 1 || variables > 4) throw InvalidInput("polyvector model supports 1 to 4 variables");
    if (truncation < 1) throw InvalidInput("truncation must be positive");
    const int n = variables;
    const int masks = 1 << n;

    struct Monomial {
        std::vector<int> exps;
        int mask;
    };
    std::vector<Monomial> monomials;
    std::map<std::pair<std::vector<int>, int>, std::size_t> lookup;
    std::vector<BVBasis> basis;

    auto var = [n](const char* stem, int i) { return n == 1 ? std::string(stem) : stem + std::to_string(i + 1); };
    for (int mask = 0; mask < masks; ++mask) {
        std::vector<int> exps(static_cast<std::size_t>(n), 0);
        while (true) {
            std::string name;
            for (int i = 0; i < n; ++i) {
                const int e = exps[static_cast<std::size_t>(i)];
                if (e == 0) continue;
                if (!name.empty()) name += "*";
                name += var("t", i);
                if (e > 1) name += "^" + std::to_string(e);
            }
            for (int i = 0; i < n; ++i) {
                if (!(mask & (1 << i))) continue;
                if (!name.empty()) name += "*";
                name += var("xi", i);
            }
            if (name.empty()) name = "1";
            lookup[{exps, mask}] = monomials.size();
            monomials.push_back({exps, mask});
            basis.push_back({name, std::popcount(static_cast<unsigned>(mask))});

            int k = n - 1;
            while (k >= 0 && ++exps[static_cast<std::size_t>(k)] == truncation) exps[static_cast<std::size_t>(k--)] = 0;
            if (k < 0) break;
        }
    }

    BVModel model(basis, lookup.at({std::vector<int>(static_cast<std::size_t>(n), 0), 0}));
    const std::size_t dim = basis.size();
    for (std::size_t i = 0; i < dim; ++i) {
        const Monomial& x = monomials[i];
        for (std::size_t j = 0; j < dim; ++j) {
            const Monomial& y = monomials[j];
            Element value(dim);
            bool vanishes = (x.mask & y.mask) != 0;
            std::vector<int> exps(static_cast<std::size_t>(n));
            for (int k = 0; k < n && !vanishes; ++k) {
                exps[static_cast<std::size_t>(k)] = x.exps[static_cast<std::size_t>(k)] + y.exps[static_cast<std::size_t>(k)];
                if (exps[static_cast<std::size_t>(k)] >= truncation) vanishes = true;
            }
            if (!vanishes) {
                // Moving each xi of y past the larger-indexed xi of x.
                int swaps = 0;
                for (int p = 0; p < n; ++p) {
                    if (!(x.mask & (1 << p))) continue;
                    for (int r = 0; r < p; ++r) {
                        if (y.mask & (1 << r)) ++swaps;
                    }
                }
                value[lookup.at({exps, x.mask | y.mask})] = NovikovSeries::constant(sign(swaps));
            }
            model.set_product(i, j, value);
        }

        Element d(dim);
        for (int k = 0; k < n; ++k) {
            if (!(x.mask & (1 << k))) continue;
            const int e = x.exps[static_cast<std::size_t>(k)];
            if (e == 0) continue;
            const int before = std::popcount(static_cast<unsigned>(x.mask & ((1 << k) - 1)));
            std::vector<int> exps = x.exps;
            if (divergence == Divergence::Flat) --exps[static_cast<std::size_t>(k)];
            d[lookup.at({exps, x.mask & ~(1 << k)})] += NovikovSeries::constant(sign(before) * e);
        }
        model.set_delta(i, d);
    }
    model.set_element("e", model.unit());
    return model;
}

BVModel synthetic_model(int truncation)
{
    if (truncation < 2) throw InvalidInput("synthetic model needs s^2 or higher truncation");
    std::vector<BVBasis> basis{{"e", 0}, {"s", 0}};
    for (int k = 2; k < truncation; ++k) basis.push_back({"s^" + std::to_string(k), 0});
    BVModel model(basis, 0);
    const auto dim = static_cast<std::size_t>(truncation);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            Element v(dim);
            if (i + j < dim) v[i + j] = NovikovSeries::constant(1);
            model.set_product(i, j, v);
        }
    }
    model.set_element("e", model.unit());
    model.set_element("s", model.basis_vector(1));
    return model;
}

Connection synthetic_connection(const BVModel& model, const ODEProblem& prob)
{
    const Element e = model.unit();
    const Element s = model.basis_vector("s");
    const Element nabla_s = prob.psi * model.mul(s, s) - prob.eta * s - (Rational(4) * (prob.z2 * prob.psi)) * e;
    std::vector<Element> linear(model.dim(), model.zero());
    Element power = e; // s^(k-1)
    for (std::size_t k = 1; k < model.dim(); ++k) {
        linear[k] = Rational(static_cast<long>(k)) * model.mul(power, nabla_s);
        power = model.mul(power, s);
    }
    return Connection(std::move(linear));
}

BVModel scalar_model()
{
    BVModel model({{"e", 0}}, 0);
    model.set_element("e", model.unit());
    return model;
}

// ---------------------------------------------------------------------------
// Checks

Report check_bv_axioms(const BVModel& m)
{
    const std::size_t n = m.dim();
    std::vector<Element> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(m.basis_vector(i));
    const Element e = m.unit();
    auto deg = [&m](std::size_t i) { return m.degree(i); };

    Tally antisymmetry("antisymmetry", m), derivation("derivation-bracket", m), jacobi("jacobi", m),
        ideal("e-is-ideal", m), delta_e("delta-e", m), delta_sq("delta-squared", m), delta_br("delta-bracket", m),
        delta_br2("delta-bracket-2", m), commutativity("commutativity", m), associativity("associativity", m),
        unit("unit", m);

    delta_e.add(m.delta(e), "(e)");
    for (std::size_t i = 0; i < n; ++i) {
        const std::string w1 = tuple_name(m, {i});
        ideal.add(m.bracket(e, b[i]), w1);
        delta_sq.add(m.delta(m.delta(b[i])), w1);
        unit.add(m.mul(e, b[i]) - b[i], w1);
        unit.add(m.mul(b[i], e) - b[i], w1);
        for (std::size_t j = 0; j < n; ++j) {
            const std::string w2 = tuple_name(m, {i, j});
            const Element bij = m.bracket(b[i], b[j]);
            commutativity.add(m.mul(b[i], b[j]) - sign(deg(i) * deg(j)) * m.mul(b[j], b[i]), w2);
            antisymmetry.add(m.bracket(b[j], b[i]) - sign(deg(i) * deg(j)) * bij, w2);
            delta_br.add(bij - m.derived_bracket(b[i], b[j]), w2);
            delta_br2.add(m.delta(bij) + m.bracket(m.delta(b[i]), b[j]) + sign(deg(i)) * m.bracket(b[i], m.delta(b[j])),
                          w2);
            for (std::size_t k = 0; k < n; ++k) {
                const std::string w3 = tuple_name(m, {i, j, k});
                associativity.add(m.mul(m.mul(b[i], b[j]), b[k]) - m.mul(b[i], m.mul(b[j], b[k])), w3);
                derivation.add(m.bracket(b[i], m.mul(b[j], b[k])) - m.mul(bij, b[k])
                                   - sign((deg(i) + 1) * deg(j)) * m.mul(b[j], m.bracket(b[i], b[k])),
                               w3);
                jacobi.add(sign(deg(i)) * m.bracket(b[i], m.bracket(b[j], b[k]))
                               + sign(deg(i) * (deg(j) + deg(k)) + deg(j)) * m.bracket(b[j], m.bracket(b[k], b[i]))
                               + sign(deg(k) * (deg(i) + deg(j) + 1)) * m.bracket(b[k], bij),
                           w3);
            }
        }
    }

    Report r;
    for (const Tally* t : {&antisymmetry, &derivation, &jacobi, &ideal, &delta_e, &delta_sq, &delta_br, &delta_br2,
                           &commutativity, &associativity, &unit}) {
        r.add(t->result());
    }
    if (m.has_element("k")) {
        Tally dk("delta-k", m);
        dk.add(m.delta(m.element("k")), "(k)");
        r.add(dk.result());
    }
    return r;
}

CheckResult check_bracket_bv(const BVModel& m)
{
    Tally t("bracket-bv-1", m);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const Element x = m.basis_vector(i);
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const Element y = m.basis_vector(j);
            t.add(m.modified_bracket(x, m.delta(y)) + sign(m.degree(i)) * m.delta(m.modified_bracket(x, y)),
                  tuple_name(m, {i, j}));
        }
    }
    return t.result();
}

Connection nabla_c(const Connection& nabla, const Element& a, const Rational& c, const BVModel& model)
{
    std::vector<Element> linear = nabla.linear();
    if (c == 0) return Connection(std::move(linear));
    for (std::size_t j = 0; j < linear.size(); ++j) linear[j] += c * model.mul(a, model.basis_vector(j));
    return Connection(std::move(linear));
}

Report check_leibniz(const Connection& nabla, const BVModel& m)
{
    Tally product("nabla-derivation", m), bracket("nabla-derivation-2", m);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const Element x2 = m.basis_vector(i);
        for (std::size_t j = 0; j < m.dim(); ++j) {
            const Element x1 = m.basis_vector(j);
            const std::string w = tuple_name(m, {i, j});
            product.add(nabla.apply(m.mul(x2, x1)) - m.mul(nabla.apply(x2), x1) - m.mul(x2, nabla.apply(x1)), w);
            bracket.add(nabla.apply(m.bracket(x2, x1)) - m.bracket(nabla.apply(x2), x1)
                            - m.bracket(x2, nabla.apply(x1)),
                        w);
        }
    }
    Report r;
    r.add(product.result());
    r.add(bracket.result());
    return r;
}

CheckResult check_delta_nabla(const Connection& nabla, const Element& a, const BVModel& m)
{
    Tally t("delta-nabla", m);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const Element x = m.basis_vector(i);
        t.add(nabla.apply(m.delta(x)) - m.delta(nabla.apply(x)) + m.bracket(a, x), tuple_name(m, {i}));
    }
    return t.result();
}

Report check_minus1_delta(const Connection& nabla, const Element& a, const BVModel& m)
{
    CheckResult pre = check_delta_nabla(nabla, a, m);
    if (!pre.passed) throw PrerequisiteFailed("delta-nabla fails at " + pre.where + ": " + pre.residual);
    const Connection minus1 = nabla_c(nabla, a, Rational(-1), m);
    const Element delta_a = m.delta(a);
    Tally vanish("minus1-delta", m), formula("minus1-delta-formula", m);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const Element x = m.basis_vector(i);
        const Element commutator = minus1.apply(m.delta(x)) - m.delta(minus1.apply(x));
        vanish.add(commutator, tuple_name(m, {i}));
        formula.add(commutator - m.mul(delta_a, x), tuple_name(m, {i}));
    }
    Report r;
    r.add(std::move(pre));
    r.add(vanish.result());
    r.add(formula.result());
    return r;
}

GaugeChange gauge_change(const Connection& nabla, const Element& alpha, const Element& a, const BVModel& m)
{
    const auto deg = m.homogeneous_degree(alpha);
    if (deg && *deg != 1) throw DegreeMismatch("gauge parameter must have degree 1, not " + std::to_string(*deg));
    std::vector<Element> linear = nabla.linear();
    for (std::size_t j = 0; j < linear.size(); ++j) linear[j] -= m.bracket(alpha, m.basis_vector(j));
    return GaugeChange{Connection(std::move(linear)), a + m.delta(alpha)};
}

CheckResult check_minus1_ambiguity(const Connection& nabla, const Element& alpha, const Element& a, const BVModel& m)
{
    const GaugeChange g = gauge_change(nabla, alpha, a, m);
    const Connection before = nabla_c(nabla, a, Rational(-1), m);
    const Connection after = nabla_c(g.nabla, g.a, Rational(-1), m);
    Tally t("minus1-ambiguity", m);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const Element x = m.basis_vector(i);
        t.add(after.apply(x) - before.apply(x) + m.delta(m.mul(alpha, x)) + m.mul(alpha, m.delta(x)),
              tuple_name(m, {i}));
    }
    return t.result();
}

Element bs_residual(const Connection& nabla, const Element& s, const ODEProblem& prob, const BVModel& m)
{
    return nabla.apply(s) - prob.psi * m.mul(s, s) + prob.eta * s + (Rational(4) * (prob.z2 * prob.psi)) * m.unit();
}

Element nonlinear_a_residual(const Connection& nabla, const Element& a, const ODEProblem& prob, const BVModel& m)
{
    const auto [p, r] = second_order_coeffs(prob);
    return nabla.apply(a) + m.mul(a, a) + p * a + r * m.unit();
}

Element nablac_s_residual(const Connection& nabla, const Element& a, const Element& s, const Rational& c,
                          const ODEProblem& prob, const BVModel& m)
{
    const Connection nc = nabla_c(nabla, a, c, m);
    return nc.apply(s) + ((c - 1) * prob.psi) * m.mul(s, s) + prob.eta * s
           + (Rational(4) * (prob.z2 * prob.psi)) * m.unit();
}

Element second_order_on_e(const Connection& nabla, const Element& a, const ODEProblem& prob, const BVModel& m)
{
    const auto [p, r] = second_order_coeffs(prob);
    const Connection n1 = nabla_c(nabla, a, Rational(1), m);
    const Element first = n1.apply(m.unit());
    return n1.apply(first) + p * first + r * m.unit();
}

Report r_endomorphism_check(const Element& k, const BVModel& m)
{
    Tally dk("delta-k", m), rk("r-k-1", m);
    dk.add(m.delta(k), "(k)");
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const Element x = m.basis_vector(i);
        rk.add(m.modified_bracket(k, x) - m.bracket(k, x), tuple_name(m, {i}));
    }
    Report r;
    r.add(dk.result());
    r.add(rk.result());
    return r;
}

Report borman_sheridan_chain(const Connection& nabla, const Element& s, const ODEProblem& prob, const BVModel& m)
{
    validate(prob);
    const Element a = -(prob.psi * s);
    auto check = [&m](std::string name, const Element& residual) {
        Tally t(std::move(name), m);
        t.add(residual, "");
        return t.result();
    };
    Report r;
    r.add(check("nabla-s-squared", bs_residual(nabla, s, prob, m)));
    r.add(check("nabla-e", nabla.apply(m.unit())));
    r.add(check("nonlinear-a", nonlinear_a_residual(nabla, a, prob, m)));
    for (int c : {-1, 0, 1}) {
        r.add(check("nablac-s[c=" + std::to_string(c) + "]", nablac_s_residual(nabla, a, s, Rational(c), prob, m)));
    }
    const Connection n1 = nabla_c(nabla, a, Rational(1), m);
    r.add(check("nabla1-2", n1.apply(s) + prob.eta * s + (Rational(4) * (prob.z2 * prob.psi)) * m.unit()));
    r.add(check("nabla-c-e[c=1]", n1.apply(m.unit()) + prob.psi * s));
    r.add(check("2nd-order-e", second_order_on_e(nabla, a, prob, m)));
    return r;
}

std::string render(const Element& x, const BVModel& model)
{
    return render_coordinates(x, model.names(), [](const NovikovSeries& s) { return render(s); });
}

} // namespace nabla

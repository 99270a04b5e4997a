#include "nabla/operad.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nabla/errors.hpp"

namespace nabla {

namespace {

std::string show(const Rational& x) { return to_string(x); }

std::string show(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

template <class Real>
std::string show(const Complex<Real>& z)
{
    return "(" + show(z.re) + ", " + show(z.im) + ")";
}

// Geometric predicates. Rational mode compares squared quantities exactly;
// float mode gives every comparison kDiscTolerance of slack.

bool inside_unit(const Complex<Rational>& c, const Rational& r)
{
    if (r >= 1) return false;
    const Rational room = 1 - r;
    return c.norm2() < room * room;
}

bool inside_unit(const Complex<double>& c, double r) { return std::sqrt(c.norm2()) + r < 1.0 + kDiscTolerance; }

bool disjoint(const Complex<Rational>& a, const Rational& ra, const Complex<Rational>& b, const Rational& rb)
{
    const Rational sum = ra + rb;
    return (a - b).norm2() > sum * sum;
}

bool disjoint(const Complex<double>& a, double ra, const Complex<double>& b, double rb)
{
    return std::sqrt((a - b).norm2()) > ra + rb - kDiscTolerance;
}

bool in_closed_unit(const Complex<Rational>& z) { return z.norm2() <= 1; }
bool in_closed_unit(const Complex<double>& z) { return std::sqrt(z.norm2()) <= 1.0 + kDiscTolerance; }

bool outside_open(const Complex<Rational>& z, const Complex<Rational>& c, const Rational& r)
{
    return (z - c).norm2() >= r * r;
}

bool outside_open(const Complex<double>& z, const Complex<double>& c, double r)
{
    return std::sqrt((z - c).norm2()) >= r - kDiscTolerance;
}

bool close(const Rational& a, const Rational& b) { return a == b; }
bool close(double a, double b) { return std::abs(a - b) <= kDiscTolerance; }

template <class Real>
bool close(const Complex<Real>& a, const Complex<Real>& b)
{
    return close(a.re, b.re) && close(a.im, b.im);
}

} // namespace

Rational reduce_framing(const Rational& tau) { return frac(tau); }

template <class Real>
DiscConfiguration<Real> DiscConfiguration<Real>::identity()
{
    DiscConfiguration c;
    c.discs.push_back(Disc<Real>{Complex<Real>{Real(0), Real(0)}, Real(1), Rational(0)});
    return c;
}

template <class Real>
bool DiscConfiguration<Real>::is_identity() const
{
    return discs.size() == 1 && discs[0].center == Complex<Real>{Real(0), Real(0)} && discs[0].radius == Real(1);
}

template <class Real>
DiscValidation validate(const DiscConfiguration<Real>& config)
{
    DiscValidation out;
    auto fail = [&out](std::string msg) {
        out.valid = false;
        out.diagnostics.push_back(std::move(msg));
    };
    const bool identity = config.is_identity();
    for (std::size_t i = 0; i < config.size(); ++i) {
        const Disc<Real>& d = config.discs[i];
        const std::string tag = "disc " + std::to_string(i);
        if (!(d.radius > Real(0))) fail(tag + ": radius " + show(d.radius) + " is not positive");
        if (d.framing < 0 || d.framing >= 1) fail(tag + ": framing " + to_string(d.framing) + " not reduced to [0, 1)");
        if (identity) {
            if (d.framing != 0) fail("identity configuration must carry the trivial framing");
        } else if (d.radius > Real(0) && !inside_unit(d.center, d.radius)) {
            fail(tag + ": closed disc at " + show(d.center) + " radius " + show(d.radius)
                 + " is not inside the open unit disc");
        }
        for (std::size_t j = 0; j < i; ++j) {
            const Disc<Real>& e = config.discs[j];
            if (!disjoint(d.center, d.radius, e.center, e.radius)) {
                fail("discs " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
            }
        }
    }
    if (config.z_point) {
        const Complex<Real>& z = *config.z_point;
        if (!in_closed_unit(z)) fail("Z point " + show(z) + " lies outside the closed unit disc");
        for (std::size_t i = 0; i < config.size(); ++i) {
            const Disc<Real>& d = config.discs[i];
            if (!outside_open(z, d.center, d.radius)) {
                fail("Z point " + show(z) + " lies inside disc " + std::to_string(i));
            }
        }
    }
    return out;
}

template <>
Complex<Rational> rotation<Rational>(const Rational& tau)
{
    const Rational t = reduce_framing(tau);
    if (t == 0) return {Rational(1), Rational(0)};
    if (t == Rational(1, 4)) return {Rational(0), Rational(1)};
    if (t == Rational(1, 2)) return {Rational(-1), Rational(0)};
    if (t == Rational(3, 4)) return {Rational(0), Rational(-1)};
    throw InvalidInput("framing " + to_string(t) + " is not a quarter turn; use float mode");
}

template <>
Complex<double> rotation<double>(const Rational& tau)
{
    const Rational t = reduce_framing(tau);
    if (t == 0) return {1.0, 0.0};
    if (t == Rational(1, 4)) return {0.0, 1.0};
    if (t == Rational(1, 2)) return {-1.0, 0.0};
    if (t == Rational(3, 4)) return {0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * t.get_d();
    return {std::cos(angle), std::sin(angle)};
}

template <class Real>
DiscConfiguration<Real> glue(const DiscConfiguration<Real>& c1, std::size_t i1, const DiscConfiguration<Real>& c2)
{
    if (i1 >= c1.size()) {
        throw IndexOutOfRange("insertion index " + std::to_string(i1) + " out of range for "
                              + std::to_string(c1.size()) + " discs");
    }
    for (const auto* c : {&c1, &c2}) {
        const DiscValidation v = validate(*c);
        if (!v.valid) throw InvalidInput("cannot glue an invalid configuration: " + v.diagnostics.front());
    }
    if (c1.z_point && c2.z_point) throw ZConflict("both configurations carry a Z point");

    const Disc<Real>& host = c1.discs[i1];
    const Complex<Real> w = rotation<Real>(host.framing);
    auto place = [&](const Complex<Real>& p) { return host.center + host.radius * (w * p); };

    DiscConfiguration<Real> out;
    out.discs.insert(out.discs.end(), c1.discs.begin(), c1.discs.begin() + static_cast<std::ptrdiff_t>(i1));
    for (const Disc<Real>& d : c2.discs) {
        out.discs.push_back(Disc<Real>{place(d.center), host.radius * d.radius, reduce_framing(d.framing + host.framing)});
    }
    out.discs.insert(out.discs.end(), c1.discs.begin() + static_cast<std::ptrdiff_t>(i1) + 1, c1.discs.end());
    out.z_point = c1.z_point;
    if (c2.z_point) out.z_point = place(*c2.z_point);
    return out;
}

template <class Real>
bool same_configuration(const DiscConfiguration<Real>& a, const DiscConfiguration<Real>& b)
{
    if (a.size() != b.size() || a.z_point.has_value() != b.z_point.has_value()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Disc<Real>& x = a.discs[i];
        const Disc<Real>& y = b.discs[i];
        if (!close(x.center, y.center) || !close(x.radius, y.radius)) return false;
        if (reduce_framing(x.framing) != reduce_framing(y.framing)) return false;
    }
    return !a.z_point || close(*a.z_point, *b.z_point);
}

DiscConfiguration<double> to_float(const DiscConfiguration<Rational>& config)
{
    auto conv = [](const Complex<Rational>& z) { return Complex<double>{z.re.get_d(), z.im.get_d()}; };
    DiscConfiguration<double> out;
    for (const auto& d : config.discs) out.discs.push_back({conv(d.center), d.radius.get_d(), d.framing});
    if (config.z_point) out.z_point = conv(*config.z_point);
    return out;
}

template struct DiscConfiguration<Rational>;
template struct DiscConfiguration<double>;
template DiscValidation validate(const DiscConfiguration<Rational>&);
template DiscValidation validate(const DiscConfiguration<double>&);
template DiscConfiguration<Rational> glue(const DiscConfiguration<Rational>&, std::size_t,
                                          const DiscConfiguration<Rational>&);
template DiscConfiguration<double> glue(const DiscConfiguration<double>&, std::size_t,
                                        const DiscConfiguration<double>&);
template bool same_configuration(const DiscConfiguration<Rational>&, const DiscConfiguration<Rational>&);
template bool same_configuration(const DiscConfiguration<double>&, const DiscConfiguration<double>&);

// ---------------------------------------------------------------------------
// Graded operations

int koszul_sign(int deg_phi1, int deg_phi2, std::size_t i1, std::span<const int> degrees)
{
    if (degrees.size() < i1) throw IndexOutOfRange("fewer input degrees than the insertion position");
    long total = deg_phi1;
    for (std::size_t j = 0; j < i1; ++j) total += degrees[j];
    return (total * deg_phi2) % 2 == 0 ? 1 : -1;
}

GradedOperation::GradedOperation(std::vector<int> basis_degrees, std::size_t arity, int degree)
    : degrees_(std::move(basis_degrees)), arity_(arity), degree_(degree)
{
    if (degrees_.empty()) throw InvalidInput("graded space must have a basis");
    std::size_t n = 1;
    for (std::size_t k = 0; k < arity_; ++k) n *= degrees_.size();
    table_.assign(n, std::vector<Rational>(degrees_.size()));
}

GradedOperation GradedOperation::identity(std::vector<int> basis_degrees)
{
    GradedOperation op(std::move(basis_degrees), 1, 0);
    for (std::size_t i = 0; i < op.dim(); ++i) op.table_[i][i] = 1;
    return op;
}

std::size_t GradedOperation::flat_index(std::span<const std::size_t> inputs) const
{
    if (inputs.size() != arity_) throw InvalidInput("operation of arity " + std::to_string(arity_) + " given "
                                                    + std::to_string(inputs.size()) + " inputs");
    std::size_t flat = 0;
    for (std::size_t i : inputs) {
        if (i >= dim()) throw IndexOutOfRange("basis index out of range");
        flat = flat * dim() + i;
    }
    return flat;
}

std::vector<std::size_t> GradedOperation::tuple(std::size_t flat) const
{
    std::vector<std::size_t> out(arity_);
    for (std::size_t k = arity_; k-- > 0;) {
        out[k] = flat % dim();
        flat /= dim();
    }
    return out;
}

const std::vector<Rational>& GradedOperation::at(std::span<const std::size_t> inputs) const
{
    return table_[flat_index(inputs)];
}

int GradedOperation::output_degree(std::span<const std::size_t> inputs) const
{
    int d = degree_;
    for (std::size_t i : inputs) d += degrees_.at(i);
    return d;
}

void GradedOperation::set(std::span<const std::size_t> inputs, std::vector<Rational> value)
{
    const std::size_t flat = flat_index(inputs);
    if (value.size() != dim()) throw InvalidInput("operation value of wrong dimension");
    const int expected = output_degree(inputs);
    for (std::size_t k = 0; k < dim(); ++k) {
        if (value[k] != 0 && degrees_[k] != expected) {
            throw DegreeMismatch("output basis element " + std::to_string(k) + " has degree "
                                 + std::to_string(degrees_[k]) + ", expected " + std::to_string(expected));
        }
    }
    table_[flat] = std::move(value);
}

bool operator==(const GradedOperation& a, const GradedOperation& b)
{
    return a.degrees_ == b.degrees_ && a.arity_ == b.arity_ && a.degree_ == b.degree_ && a.table_ == b.table_;
}

GradedOperation compose(const GradedOperation& phi1, std::size_t i1, const GradedOperation& phi2)
{
    if (phi1.basis_degrees() != phi2.basis_degrees()) throw InvalidInput("operations act on different spaces");
    if (i1 >= phi1.arity()) {
        throw IndexOutOfRange("insertion index " + std::to_string(i1) + " out of range for arity "
                              + std::to_string(phi1.arity()));
    }
    const std::size_t m2 = phi2.arity();
    const std::size_t m = phi1.arity() + m2 - 1;
    const std::vector<int>& deg = phi1.basis_degrees();
    GradedOperation out(deg, m, phi1.degree() + phi2.degree());

    std::vector<std::size_t> outer(phi1.arity());
    std::vector<int> prefix(i1);
    for (std::size_t flat = 0; flat < out.entries(); ++flat) {
        const std::vector<std::size_t> x = out.tuple(flat);
        for (std::size_t j = 0; j < i1; ++j) prefix[j] = deg[x[j]];
        const Rational sign(koszul_sign(phi1.degree(), phi2.degree(), i1, prefix));

        const std::vector<Rational>& inner =
            phi2.at(std::span<const std::size_t>(x).subspan(i1, m2));
        std::vector<Rational> value(deg.size());
        for (std::size_t j = 0; j < i1; ++j) outer[j] = x[j];
        for (std::size_t j = i1 + 1; j < phi1.arity(); ++j) outer[j] = x[j + m2 - 1];
        for (std::size_t k = 0; k < deg.size(); ++k) {
            if (inner[k] == 0) continue;
            outer[i1] = k;
            const std::vector<Rational>& v = phi1.at(outer);
            for (std::size_t c = 0; c < deg.size(); ++c) {
                if (v[c] != 0) value[c] += sign * inner[k] * v[c];
            }
        }
        out.set(x, std::move(value));
    }
    return out;
}

} // namespace nabla

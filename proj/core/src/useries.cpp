#include "nabla/useries.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "nabla/errors.hpp"

namespace nabla {

namespace {
const NovikovSeries kZero;
}

USeries::USeries(int u_order)
{
    if (u_order < 1) throw InvalidInput("u-order must be positive");
    coeffs_.resize(static_cast<std::size_t>(u_order));
}

USeries::USeries(std::vector<NovikovSeries> coefficients, int u_order) : USeries(u_order)
{
    for (std::size_t i = 0; i < coefficients.size() && i < coeffs_.size(); ++i) coeffs_[i] = std::move(coefficients[i]);
}

USeries USeries::term(const NovikovSeries& scalar, int power, int u_order)
{
    USeries out(u_order);
    if (power < 0) throw InvalidInput("negative u-power");
    if (power < u_order) out.coeffs_[static_cast<std::size_t>(power)] = scalar;
    return out;
}

const NovikovSeries& USeries::operator[](int power) const
{
    if (power < 0 || power >= order()) return kZero;
    return coeffs_[static_cast<std::size_t>(power)];
}

bool USeries::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const NovikovSeries& c) { return c.is_zero(); });
}

USeries& USeries::operator+=(const USeries& other)
{
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

USeries& USeries::operator-=(const USeries& other)
{
    coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

USeries USeries::operator-() const
{
    USeries out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

USeries operator*(const USeries& a, const USeries& b)
{
    const int n = std::min(a.order(), b.order());
    USeries out(n);
    for (int i = 0; i < n; ++i) {
        if (a[i].is_exact_zero()) continue;
        for (int j = 0; i + j < n; ++j) {
            if (b[j].is_exact_zero()) continue;
            out.coeffs_[static_cast<std::size_t>(i + j)] += a[i] * b[j];
        }
    }
    return out;
}

USeries operator*(const NovikovSeries& s, const USeries& a)
{
    USeries out = a;
    for (auto& c : out.coeffs_) c = s * c;
    return out;
}

USeries operator*(const Rational& s, const USeries& a)
{
    USeries out = a;
    for (auto& c : out.coeffs_) c *= s;
    return out;
}

bool operator==(const USeries& a, const USeries& b) { return a.coeffs_ == b.coeffs_; }

USeries USeries::shifted(int k) const
{
    // Dividing by u^k leaves the top k coefficients unknown.
    USeries out(k < 0 ? order() + k : order());
    for (int i = 0; i < order(); ++i) {
        const int target = i + k;
        if (target < 0) {
            if (!coeffs_[static_cast<std::size_t>(i)].is_exact_zero()) {
                throw ZeroDivision("u-division of a series with a nonzero u^" + std::to_string(i) + " coefficient");
            }
            continue;
        }
        if (target < out.order()) out.coeffs_[static_cast<std::size_t>(target)] = coeffs_[static_cast<std::size_t>(i)];
    }
    return out;
}

USeries d_q(const USeries& a)
{
    std::vector<NovikovSeries> c;
    c.reserve(static_cast<std::size_t>(a.order()));
    for (int i = 0; i < a.order(); ++i) c.push_back(d_q(a[i]));
    return USeries(std::move(c), a.order());
}

std::string render(const USeries& a, std::string_view variable)
{
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < a.order(); ++i) {
        if (a[i].is_exact_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << '(' << render(a[i], variable) << ')';
        if (i == 1) os << "*u";
        if (i > 1) os << "*u^" << i;
    }
    if (!first) os << " + ";
    os << "O(u^" << a.order() << ')';
    return os.str();
}

} // namespace nabla

#pragma once

#include <string>
#include <vector>

#include "nabla/series.hpp"

namespace nabla {

/// Element of K[[u]] (u of degree 2) known modulo u^U: coefficients of
/// u^0 .. u^(U-1), each a NovikovSeries.
class USeries {
public:
    static constexpr int kDefaultOrder = 3;

    USeries() : USeries(kDefaultOrder) {}
    explicit USeries(int u_order);
    USeries(std::vector<NovikovSeries> coefficients, int u_order);

    /// scalar * u^power.
    static USeries term(const NovikovSeries& scalar, int power, int u_order = kDefaultOrder);
    static USeries scalar(const NovikovSeries& s, int u_order = kDefaultOrder) { return term(s, 0, u_order); }

    int order() const { return static_cast<int>(coeffs_.size()); }
    /// Coefficient of u^power (exact zero beyond stored range).
    const NovikovSeries& operator[](int power) const;

    bool is_zero() const;

    USeries& operator+=(const USeries& other);
    USeries& operator-=(const USeries& other);
    USeries operator-() const;

    friend USeries operator+(USeries a, const USeries& b) { return a += b; }
    friend USeries operator-(USeries a, const USeries& b) { return a -= b; }
    friend USeries operator*(const USeries& a, const USeries& b);
    friend USeries operator*(const NovikovSeries& s, const USeries& a);
    friend USeries operator*(const USeries& a, const NovikovSeries& s) { return s * a; }
    friend USeries operator*(const Rational& s, const USeries& a);

    friend bool operator==(const USeries& a, const USeries& b);

    /// Multiplication by u^k. A negative k divides, lowering the u-order by
    /// |k|, and throws ZeroDivision unless the low coefficients vanish exactly.
    USeries shifted(int k) const;

private:
    std::vector<NovikovSeries> coeffs_;
};

/// Coefficientwise d/dq.
USeries d_q(const USeries& a);

/// "(c0) + (c1)*u + (c2)*u^2 + O(u^3)"; zero coefficients are omitted.
std::string render(const USeries& a, std::string_view variable = "q");

} // namespace nabla

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nabla/errors.hpp"

namespace nabla {

/// Coefficient vector on a fixed finite basis. Scalar is NovikovSeries for
/// classes and BV elements, USeries for u-extended classes.
template <class Scalar>
class Coordinates {
public:
    Coordinates() = default;
    explicit Coordinates(std::size_t dim) : c_(dim) {}
    explicit Coordinates(std::vector<Scalar> c) : c_(std::move(c)) {}

    /// The basis vector b_index scaled by s.
    static Coordinates unit(std::size_t dim, std::size_t index, Scalar s)
    {
        Coordinates out(dim);
        out.c_.at(index) = std::move(s);
        return out;
    }

    std::size_t size() const { return c_.size(); }
    const Scalar& operator[](std::size_t i) const { return c_[i]; }
    Scalar& operator[](std::size_t i) { return c_[i]; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
    }

    Coordinates& operator+=(const Coordinates& o)
    {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Coordinates& operator-=(const Coordinates& o)
    {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Coordinates operator-() const
    {
        Coordinates out = *this;
        for (auto& s : out.c_) s = -s;
        return out;
    }

    friend Coordinates operator+(Coordinates a, const Coordinates& b) { return a += b; }
    friend Coordinates operator-(Coordinates a, const Coordinates& b) { return a -= b; }

    template <class S>
    friend Coordinates operator*(const S& s, const Coordinates& a)
    {
        Coordinates out = a;
        for (auto& c : out.c_) c = s * c;
        return out;
    }

    friend bool operator==(const Coordinates& a, const Coordinates& b) { return a.c_ == b.c_; }

    /// Applies f to every coordinate.
    template <class F>
    auto map(F&& f) const
    {
        using R = std::invoke_result_t<F, const Scalar&>;
        std::vector<R> out;
        out.reserve(c_.size());
        for (const auto& s : c_) out.push_back(f(s));
        return Coordinates<R>(std::move(out));
    }

private:
    void check(const Coordinates& o) const
    {
        if (o.c_.size() != c_.size()) throw InvalidInput("coordinate vectors of different dimension");
    }

    std::vector<Scalar> c_;
};

/// "(a)*[x] + (b)*[y]" rendering with the given basis names. Coordinates that
/// are zero up to their truncation are omitted; "0" when nothing remains.
template <class Scalar, class Render>
std::string render_coordinates(const Coordinates<Scalar>& v, const std::vector<std::string>& names, Render&& render)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + render(v[i]) + ")*[" + names.at(i) + "]";
    }
    return out.empty() ? "0" : out;
}

} // namespace nabla

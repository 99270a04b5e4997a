#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nabla/rational.hpp"

namespace nabla {

// ---------------------------------------------------------------------------
// Disc configurations

template <class Real>
struct Complex {
    Real re{};
    Real im{};

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    Real norm2() const { return re * re + im * im; }
};

template <class Real>
struct Disc {
    Complex<Real> center;
    Real radius{};
    /// Framing tau in R/Z, kept in [0, 1).
    Rational framing{0};
};

/// Indexed discs inside the unit disc, with an optional Z point. Rational
/// mode (Real = Rational) is exact; float mode (Real = double) compares with
/// kDiscTolerance.
template <class Real>
struct DiscConfiguration {
    std::vector<Disc<Real>> discs;
    std::optional<Complex<Real>> z_point;

    /// The single disc of radius 1 at the origin.
    static DiscConfiguration identity();
    bool is_identity() const;
    std::size_t size() const { return discs.size(); }
};

inline constexpr double kDiscTolerance = 1e-9;

struct DiscValidation {
    bool valid = true;
    std::vector<std::string> diagnostics;
};

template <class Real>
DiscValidation validate(const DiscConfiguration<Real>& config);

/// e^(2 pi i tau). In rational mode only quarter turns are representable;
/// other tau throw InvalidInput.
template <class Real>
Complex<Real> rotation(const Rational& tau);
template <>
Complex<Rational> rotation<Rational>(const Rational& tau);
template <>
Complex<double> rotation<double>(const Rational& tau);

/// Inserts c2, rotated by the framing of disc i1 and scaled by its radius,
/// in place of that disc. The result lists c1's discs before i1, then c2's
/// discs, then c1's discs after i1 (indices are 0-based).
///
/// Throws InvalidInput if either side is invalid, IndexOutOfRange for a bad
/// i1 and ZConflict if both carry a Z point.
template <class Real>
DiscConfiguration<Real> glue(const DiscConfiguration<Real>& c1, std::size_t i1, const DiscConfiguration<Real>& c2);

/// Exact equality in rational mode, within kDiscTolerance in float mode.
/// Framings are compared mod 1.
template <class Real>
bool same_configuration(const DiscConfiguration<Real>& a, const DiscConfiguration<Real>& b);

DiscConfiguration<double> to_float(const DiscConfiguration<Rational>& config);

/// tau mod 1 in [0, 1).
Rational reduce_framing(const Rational& tau);

// ---------------------------------------------------------------------------
// Graded multilinear operations

/// (-1)^((|phi1| + |x_1| + ... + |x_{i1}|) |phi2|) for insertion at 0-based
/// position i1; `degrees` lists input degrees and must have at least i1
/// entries. Returns +1 or -1.
int koszul_sign(int deg_phi1, int deg_phi2, std::size_t i1, std::span<const int> degrees);

/// Multilinear map V^(tensor m) -> V of degree |phi| on a graded space with
/// the given basis degrees, stored as a dense table of output coordinates.
class GradedOperation {
public:
    GradedOperation(std::vector<int> basis_degrees, std::size_t arity, int degree);

    /// The identity map, arity 1 and degree 0.
    static GradedOperation identity(std::vector<int> basis_degrees);

    std::size_t arity() const { return arity_; }
    int degree() const { return degree_; }
    std::size_t dim() const { return degrees_.size(); }
    const std::vector<int>& basis_degrees() const { return degrees_; }

    /// Output coordinates on the basis tuple `inputs`.
    const std::vector<Rational>& at(std::span<const std::size_t> inputs) const;
    /// Throws DegreeMismatch if a nonzero coordinate has the wrong degree.
    void set(std::span<const std::size_t> inputs, std::vector<Rational> value);

    /// Degree of the output on a basis tuple.
    int output_degree(std::span<const std::size_t> inputs) const;

    /// Number of basis tuples, dim^arity.
    std::size_t entries() const { return table_.size(); }
    /// The basis tuple with row-major position `flat`.
    std::vector<std::size_t> tuple(std::size_t flat) const;

    friend bool operator==(const GradedOperation& a, const GradedOperation& b);

private:
    std::size_t flat_index(std::span<const std::size_t> inputs) const;

    std::vector<int> degrees_;
    std::size_t arity_;
    int degree_;
    std::vector<std::vector<Rational>> table_;
};

/// phi1 with phi2 plugged into input i1 (0-based), signed by koszul_sign.
/// Throws IndexOutOfRange for a bad i1 and InvalidInput if the spaces differ.
GradedOperation compose(const GradedOperation& phi1, std::size_t i1, const GradedOperation& phi2);

} // namespace nabla

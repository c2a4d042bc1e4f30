#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cess/gf.hpp"

namespace cess {

/// Coefficient-form polynomial over F_q; coeffs[i] multiplies x^i.
/// Normalized: no trailing zero coefficients, so the zero polynomial is empty.
class DensePolynomial {
 public:
  DensePolynomial(std::uint64_t modulus, std::vector<FieldElement> coeffs);

  static DensePolynomial zero(std::uint64_t modulus) { return {modulus, {}}; }

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of x^i; zero past the degree.
  FieldElement coeff(std::size_t i) const;

  /// Coefficients 0..len-1, zero padded.
  std::vector<FieldElement> padded(std::size_t len) const;

  bool operator==(const DensePolynomial&) const = default;

 private:
  std::uint64_t modulus_;
  std::vector<FieldElement> coeffs_;
};

struct Point {
  FieldElement x;
  FieldElement y;
};

/// Horner evaluation.
FieldElement eval(const DensePolynomial& p, FieldElement x);

/// Product of (x - root) over the given roots.
DensePolynomial from_roots(std::uint64_t modulus, std::span<const FieldElement> roots);

/// Lagrange interpolation over a fixed abscissa set. The barycentric weights
/// w_i = 1 / prod_{j != i} (x_i - x_j) and the master polynomial are computed
/// once and reused for every ordinate vector.
class LagrangeBasis {
 public:
  explicit LagrangeBasis(std::vector<FieldElement> abscissas);

  const std::vector<FieldElement>& abscissas() const { return xs_; }
  std::size_t size() const { return xs_.size(); }

  /// Unique polynomial of degree < size() through (x_i, ys[i]).
  DensePolynomial interpolate(std::span<const FieldElement> ys) const;

 private:
  std::vector<FieldElement> xs_;
  std::vector<FieldElement> weights_;
  // coefficients of prod_i (x - x_i), length size()+1
  std::vector<FieldElement> master_;
};

DensePolynomial interpolate(std::span<const Point> points);

/// Known high-degree coefficients, keyed by degree.
using CoefficientTail = std::map<std::size_t, FieldElement>;

/// Recovers a polynomial whose coefficients of degree >= t are given by
/// `tail` from exactly t points: the tail's contribution is subtracted from
/// every ordinate and the residual of degree < t is interpolated.
/// The tail must cover a contiguous range of degrees starting at t.
DensePolynomial interpolate_with_known_tail(std::span<const Point> points,
                                            const CoefficientTail& tail, std::size_t t);

/// Same, reusing a precomputed basis whose abscissas match the points.
DensePolynomial interpolate_with_known_tail(const LagrangeBasis& basis,
                                            std::span<const FieldElement> ys,
                                            const CoefficientTail& tail);

}  // namespace cess

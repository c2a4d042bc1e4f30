#include "cess/poly.hpp"

#include <string>

#include "cess/error.hpp"

namespace cess {

namespace {

void check_modulus(std::uint64_t expected, FieldElement a) {
  if (a.modulus != expected) {
    throw Error(ErrorCode::ModulusMismatch,
                "F_" + std::to_string(expected) + " vs F_" + std::to_string(a.modulus));
  }
}

void check_distinct(std::span<const FieldElement> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i] == xs[j]) {
        throw Error(ErrorCode::DuplicateAbscissa, "x = " + std::to_string(xs[i].value));
      }
    }
  }
}

}  // namespace

DensePolynomial::DensePolynomial(std::uint64_t modulus, std::vector<FieldElement> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) check_modulus(modulus_, c);
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement DensePolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : FieldElement{0, modulus_};
}

std::vector<FieldElement> DensePolynomial::padded(std::size_t len) const {
  std::vector<FieldElement> out(len, FieldElement{0, modulus_});
  for (std::size_t i = 0; i < coeffs_.size() && i < len; ++i) out[i] = coeffs_[i];
  return out;
}

FieldElement eval(const DensePolynomial& p, FieldElement x) {
  check_modulus(p.modulus(), x);
  FieldElement acc{0, p.modulus()};
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

DensePolynomial from_roots(std::uint64_t modulus, std::span<const FieldElement> roots) {
  std::vector<FieldElement> c{FieldElement{1 % modulus, modulus}};
  for (const auto& root : roots) {
    check_modulus(modulus, root);
    std::vector<FieldElement> next(c.size() + 1, FieldElement{0, modulus});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * root;
    }
    c = std::move(next);
  }
  return {modulus, std::move(c)};
}

LagrangeBasis::LagrangeBasis(std::vector<FieldElement> abscissas) : xs_(std::move(abscissas)) {
  if (xs_.empty()) throw Error(ErrorCode::LengthMismatch, "interpolation needs at least one point");
  const auto q = xs_.front().modulus;
  for (const auto& x : xs_) check_modulus(q, x);
  check_distinct(xs_);

  weights_.reserve(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    FieldElement denom{1 % q, q};
    for (std::size_t j = 0; j < xs_.size(); ++j) {
      if (j != i) denom *= xs_[i] - xs_[j];
    }
    weights_.push_back(inv(denom));
  }
  master_ = from_roots(q, xs_).padded(xs_.size() + 1);
}

DensePolynomial LagrangeBasis::interpolate(std::span<const FieldElement> ys) const {
  if (ys.size() != xs_.size()) {
    throw Error(ErrorCode::LengthMismatch, "ordinate count differs from abscissa count");
  }
  const auto q = xs_.front().modulus;
  const auto t = xs_.size();
  std::vector<FieldElement> acc(t, FieldElement{0, q});
  std::vector<FieldElement> quotient(t, FieldElement{0, q});
  for (std::size_t i = 0; i < t; ++i) {
    check_modulus(q, ys[i]);
    auto scale = ys[i] * weights_[i];
    if (scale.is_zero()) continue;
    // master / (x - x_i) by synthetic division, highest degree first
    FieldElement carry{0, q};
    for (std::size_t deg = t; deg-- > 0;) {
      carry = master_[deg + 1] + carry * xs_[i];
      quotient[deg] = carry;
    }
    for (std::size_t deg = 0; deg < t; ++deg) acc[deg] += scale * quotient[deg];
  }
  return {q, std::move(acc)};
}

DensePolynomial interpolate(std::span<const Point> points) {
  std::vector<FieldElement> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& p : points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  return LagrangeBasis(std::move(xs)).interpolate(ys);
}

DensePolynomial interpolate_with_known_tail(const LagrangeBasis& basis,
                                            std::span<const FieldElement> ys,
                                            const CoefficientTail& tail) {
  const auto t = basis.size();
  const auto q = basis.abscissas().front().modulus;
  std::size_t expected = t;
  for (const auto& [deg, value] : tail) {
    check_modulus(q, value);
    if (deg != expected) {
      throw Error(ErrorCode::IncompleteTail,
                  "expected coefficient of degree " + std::to_string(expected) + ", got " +
                      std::to_string(deg));
    }
    ++expected;
  }
  if (ys.size() != t) throw Error(ErrorCode::LengthMismatch, "ordinate count differs from t");

  std::vector<FieldElement> tail_coeffs(expected, FieldElement{0, q});
  for (const auto& [deg, value] : tail) tail_coeffs[deg] = value;
  const DensePolynomial tail_poly(q, tail_coeffs);

  std::vector<FieldElement> residual;
  residual.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    residual.push_back(ys[i] - eval(tail_poly, basis.abscissas()[i]));
  }
  auto low = basis.interpolate(residual).padded(t);
  for (std::size_t i = 0; i < t; ++i) tail_coeffs[i] = low[i];
  return {q, std::move(tail_coeffs)};
}

DensePolynomial interpolate_with_known_tail(std::span<const Point> points,
                                            const CoefficientTail& tail, std::size_t t) {
  if (points.size() != t) {
    throw Error(ErrorCode::LengthMismatch,
                "need exactly t = " + std::to_string(t) + " points, got " +
                    std::to_string(points.size()));
  }
  std::vector<FieldElement> xs, ys;
  for (const auto& p : points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  return interpolate_with_known_tail(LagrangeBasis(std::move(xs)), ys, tail);
}

}  // namespace cess

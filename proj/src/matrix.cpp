#include "cess/matrix.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "cess/error.hpp"

namespace cess {

namespace {

std::string dims(const FieldMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void check_modulus(std::uint64_t a, std::uint64_t b) {
  if (a != b) {
    throw Error(ErrorCode::ModulusMismatch, "F_" + std::to_string(a) + " vs F_" + std::to_string(b));
  }
}

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> reduce(FieldMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
    }
    const auto scale = inv(m.at(row, col));
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(row, c) *= scale;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const auto factor = m.at(r, col);
      if (factor.is_zero()) continue;
      for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) -= factor * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint64_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, FieldElement{0, modulus}) {}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::vector<FieldElement> data)
    : rows_(rows), cols_(cols), modulus_(data.empty() ? 0 : data.front().modulus),
      data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "data length does not match shape");
  }
  for (const auto& e : data_) check_modulus(modulus_, e.modulus);
}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint64_t modulus) {
  FieldMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement{1 % modulus, modulus};
  return m;
}

FieldMatrix FieldMatrix::from_values(std::size_t rows, std::size_t cols, const PrimeField& field,
                                     std::span<const std::uint64_t> values) {
  if (values.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "value count does not match shape");
  }
  FieldMatrix m(rows, cols, field.modulus());
  for (std::size_t i = 0; i < values.size(); ++i) m.data_[i] = field(values[i]);
  return m;
}

std::vector<FieldElement> FieldMatrix::column(std::size_t c) const {
  std::vector<FieldElement> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return out;
}

FieldMatrix vandermonde(std::span<const FieldElement> alphas, std::size_t rows) {
  if (alphas.empty()) throw Error(ErrorCode::DimensionMismatch, "no evaluation points");
  const auto q = alphas.front().modulus;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    check_modulus(q, alphas[i].modulus);
    if (alphas[i].is_zero()) throw Error(ErrorCode::ZeroAlpha, "alpha #" + std::to_string(i + 1));
    for (std::size_t j = 0; j < i; ++j) {
      if (alphas[i] == alphas[j]) {
        throw Error(ErrorCode::DuplicateAlpha, "alpha " + std::to_string(alphas[i].value));
      }
    }
  }
  FieldMatrix v(rows, alphas.size(), q);
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    FieldElement power{1 % q, q};
    for (std::size_t i = 0; i < rows; ++i) {
      v.at(i, j) = power;
      power *= alphas[j];
    }
  }
  return v;
}

FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, dims(a) + " * " + dims(b));
  }
  check_modulus(a.modulus(), b.modulus());
  FieldMatrix out(a.rows(), b.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const auto s = a.at(i, l);
      if (s.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) += s * b.at(l, j);
    }
  }
  return out;
}

std::vector<FieldElement> vecmul(std::span<const FieldElement> x, const FieldMatrix& a) {
  if (x.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(x.size()) + " * " + dims(a));
  }
  std::vector<FieldElement> out(a.cols(), FieldElement{0, a.modulus()});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    check_modulus(a.modulus(), x[i].modulus);
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += x[i] * a.at(i, j);
  }
  return out;
}

FieldMatrix invert(const FieldMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "non-square " + dims(a));
  const auto n = a.rows();
  FieldMatrix aug(n, 2 * n, a.modulus());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = FieldElement{1 % a.modulus(), a.modulus()};
  }
  if (reduce(aug, n).size() != n) throw Error(ErrorCode::SingularMatrix, dims(a));
  FieldMatrix out(n, n, a.modulus());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  }
  return out;
}

std::size_t rank(const FieldMatrix& a) {
  auto copy = a;
  return reduce(copy, copy.cols()).size();
}

std::vector<FieldElement> solve_right(const FieldMatrix& a, std::span<const FieldElement> y) {
  if (y.size() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "right-hand side of length " + std::to_string(y.size()) + " for " + dims(a));
  }
  // x * A = y  <=>  A^T x^T = y^T; row-reduce [A^T | y^T].
  const auto unknowns = a.rows();
  FieldMatrix aug(a.cols(), unknowns + 1, a.modulus());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = 0; j < unknowns; ++j) aug.at(i, j) = a.at(j, i);
    check_modulus(a.modulus(), y[i].modulus);
    aug.at(i, unknowns) = y[i];
  }
  const auto pivots = reduce(aug, unknowns);
  if (pivots.size() < unknowns) {
    throw Error(ErrorCode::SingularSystem,
                "rank " + std::to_string(pivots.size()) + " < " + std::to_string(unknowns));
  }
  for (std::size_t i = unknowns; i < aug.rows(); ++i) {
    if (!aug.at(i, unknowns).is_zero()) {
      throw Error(ErrorCode::InconsistentSystem, "equation " + std::to_string(i) + " violated");
    }
  }
  std::vector<FieldElement> x;
  x.reserve(unknowns);
  for (std::size_t j = 0; j < unknowns; ++j) x.push_back(aug.at(j, unknowns));
  return x;
}

FieldMatrix submatrix(const FieldMatrix& a, std::span<const std::size_t> row_set,
                      std::span<const std::size_t> col_set) {
  for (auto r : row_set) {
    if (r >= a.rows()) throw Error(ErrorCode::IndexOutOfBounds, "row " + std::to_string(r));
  }
  for (auto c : col_set) {
    if (c >= a.cols()) throw Error(ErrorCode::IndexOutOfBounds, "column " + std::to_string(c));
  }
  FieldMatrix out(row_set.size(), col_set.size(), a.modulus());
  for (std::size_t i = 0; i < row_set.size(); ++i) {
    for (std::size_t j = 0; j < col_set.size(); ++j) out.at(i, j) = a.at(row_set[i], col_set[j]);
  }
  return out;
}

FieldMatrix select_columns(const FieldMatrix& a, std::span<const std::size_t> col_set) {
  const auto rows = iota_indices(0, a.rows());
  return submatrix(a, rows, col_set);
}

FieldMatrix hconcat(std::span<const FieldMatrix> blocks) {
  if (blocks.empty()) throw Error(ErrorCode::DimensionMismatch, "no blocks");
  const auto rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw Error(ErrorCode::DimensionMismatch, "row counts differ");
    check_modulus(blocks.front().modulus(), b.modulus());
    cols += b.cols();
  }
  FieldMatrix out(rows, cols, blocks.front().modulus());
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, offset + j) = b.at(i, j);
    }
    offset += b.cols();
  }
  return out;
}

std::vector<std::size_t> iota_indices(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out(end > begin ? end - begin : 0);
  std::iota(out.begin(), out.end(), begin);
  return out;
}

}  // namespace cess

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cess/gf.hpp"

namespace cess {

/// Dense row-major matrix over F_q. Vectors multiply from the left
/// (x * A), matching the codeword layout c = (m, keys) * G.
class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, std::uint64_t modulus);
  FieldMatrix(std::size_t rows, std::size_t cols, std::vector<FieldElement> data);

  static FieldMatrix identity(std::size_t n, std::uint64_t modulus);
  static FieldMatrix from_values(std::size_t rows, std::size_t cols, const PrimeField& field,
                                 std::span<const std::uint64_t> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t modulus() const { return modulus_; }

  FieldElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const FieldElement& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const FieldElement> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<FieldElement> column(std::size_t c) const;
  const std::vector<FieldElement>& data() const { return data_; }

  bool operator==(const FieldMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint64_t modulus_;
  std::vector<FieldElement> data_;
};

/// Entry (i, j) = alphas[j]^i for i = 0..rows-1.
FieldMatrix vandermonde(std::span<const FieldElement> alphas, std::size_t rows);

FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b);

/// Row vector times matrix.
std::vector<FieldElement> vecmul(std::span<const FieldElement> x, const FieldMatrix& a);

/// Gauss-Jordan with first-nonzero pivoting in row order.
FieldMatrix invert(const FieldMatrix& a);

std::size_t rank(const FieldMatrix& a);

/// Solves x * a = y for a of full row rank. Extra columns act as
/// redundant equations and are checked for consistency.
std::vector<FieldElement> solve_right(const FieldMatrix& a, std::span<const FieldElement> y);

FieldMatrix submatrix(const FieldMatrix& a, std::span<const std::size_t> row_set,
                      std::span<const std::size_t> col_set);

/// All rows, selected columns.
FieldMatrix select_columns(const FieldMatrix& a, std::span<const std::size_t> col_set);

/// Horizontal concatenation of blocks sharing a row count.
FieldMatrix hconcat(std::span<const FieldMatrix> blocks);

std::vector<std::size_t> iota_indices(std::size_t begin, std::size_t end);

}  // namespace cess

#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qform/arith.hpp"

namespace qform {

/// Dense row-major integer matrix. Arithmetic helpers below are overflow
/// checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<Vec>& rows);
  static IntMatrix from_columns(const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  std::vector<Vec> to_rows() const;
  IntMatrix transpose() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
Vec multiply(const IntMatrix& a, const Vec& v);
/// Uᵀ G U.
IntMatrix congruence(const IntMatrix& gram, const IntMatrix& u);

/// Fraction-free (Bareiss) determinant of a square matrix.
Wide determinant(const IntMatrix& m);
/// Determinant of the principal submatrix on `indices` (1 for an empty set).
Wide principal_minor(const IntMatrix& m, const std::vector<std::size_t>& indices);
/// Exact adjugate; adj(M)·M = det(M)·I.
std::vector<std::vector<Wide>> adjugate(const IntMatrix& m);

/// Inverse of a unimodular matrix (det ±1); throws InvalidForm otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// B(u, v) = uᵀ G v, evaluated in 128 bits.
Wide bilinear(const IntMatrix& gram, const Vec& u, const Vec& v);
Wide evaluate(const IntMatrix& gram, const Vec& v);

}  // namespace qform

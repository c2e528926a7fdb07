#include "qform/matrix.hpp"

#include <utility>

namespace qform {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidForm("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw InvalidForm("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<Vec>& cols) {
  return from_rows(cols).transpose();
}

Vec IntMatrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec IntMatrix::column(std::size_t j) const {
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::vector<Vec> IntMatrix::to_rows() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidForm("matrix shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Wide s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k)
        s = guard_wide(s + static_cast<Wide>(a(i, k)) * b(k, j));
      c(i, j) = narrow(s);
    }
  return c;
}

Vec multiply(const IntMatrix& a, const Vec& v) {
  if (a.cols() != v.size()) throw InvalidForm("matrix-vector shape mismatch");
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Wide s = 0;
    for (std::size_t k = 0; k < a.cols(); ++k)
      s = guard_wide(s + static_cast<Wide>(a(i, k)) * v[k]);
    out[i] = narrow(s);
  }
  return out;
}

IntMatrix congruence(const IntMatrix& gram, const IntMatrix& u) {
  return multiply(u.transpose(), multiply(gram, u));
}

Wide determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InvalidForm("determinant of a non-square matrix");
  if (n == 0) return 1;
  std::vector<std::vector<Wide>> a(n, std::vector<Wide>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  Wide sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = guard_wide(wide_mul(a[i][j], a[k][k]) - wide_mul(a[i][k], a[k][j])) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Wide principal_minor(const IntMatrix& m, const std::vector<std::size_t>& indices) {
  IntMatrix sub(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) sub(i, j) = m(indices[i], indices[j]);
  return determinant(sub);
}

std::vector<std::vector<Wide>> adjugate(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Wide>> adj(n, std::vector<Wide>(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Wide d = determinant(minor);
      adj[i][j] = ((i + j) % 2 == 0) ? d : -d;
    }
  return adj;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  Wide det = determinant(m);
  if (det != 1 && det != -1) throw InvalidForm("matrix is not unimodular");
  auto adj = adjugate(m);
  IntMatrix inv(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) inv(i, j) = narrow(adj[i][j] * det);
  return inv;
}

Wide bilinear(const IntMatrix& gram, const Vec& u, const Vec& v) {
  Wide s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    Wide row = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      row = guard_wide(row + static_cast<Wide>(gram(i, j)) * v[j]);
    s = guard_wide(s + wide_mul(row, u[i]));
  }
  return s;
}

Wide evaluate(const IntMatrix& gram, const Vec& v) { return bilinear(gram, v, v); }

}  // namespace qform

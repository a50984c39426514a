#pragma once

#include <cstddef>
#include <vector>

#include "thue/errors.hpp"
#include "thue/exact/rational.hpp"

namespace thue {

template <class K>
using Vec = std::vector<K>;

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, K(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<K> data)
      : rows_(rows), cols_(cols), a_(std::move(data)) {
    if (a_.size() != rows * cols) throw ContractError("matrix data size mismatch");
  }
  static Matrix from_rows(const std::vector<Vec<K>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ContractError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Vec<K> row(std::size_t i) const { return Vec<K>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vec<K> operator*(const Vec<K>& v) const {
    if (v.size() != cols_) throw ContractError("matrix-vector size mismatch");
    Vec<K> r(rows_, K(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(v[j])) r[i] += (*this)(i, j) * v[j];
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> a_;
};

// In-place reduced row echelon form; returns pivot columns.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    K inv = K(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      K f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m) {
  return rref(m).size();
}

// Basis of the right kernel {v : m v = 0}; vector j has a 1 in the j-th free
// column and zeros in the other free columns.
template <class K>
std::vector<Vec<K>> exact_kernel(Matrix<K> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec<K>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<K> v(m.cols(), K(0));
    v[f] = K(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class K>
K determinant(Matrix<K> m) {
  if (m.rows() != m.cols()) throw ContractError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  K det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return K(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    K inv = K(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      K f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

// Rank of a list of vectors of equal length.
template <class K>
std::size_t vector_rank(const std::vector<Vec<K>>& vs) {
  if (vs.empty()) return 0;
  return rank(Matrix<K>::from_rows(vs));
}

// Primitive integer multiple of a rational vector with first nonzero entry
// positive.
Vec<Integer> primitive_integer_vector(const Vec<Rational>& v);

// Basis of the saturated lattice ker(m) ∩ Z^n for a rational matrix m. The
// rational kernel is parametrised by its free coordinates; integrality of the
// pivot coordinates is a system of congruences solved one row at a time.
std::vector<Vec<Integer>> integer_kernel(const Matrix<Rational>& m);

// Hermite normal form (row style, upper triangular, positive pivots, entries
// above each pivot reduced into [0, pivot)). Zero rows are dropped.
std::vector<Vec<Integer>> hermite_normal_form(std::vector<Vec<Integer>> rows);

// LLL reduction with delta = 99/100, exact rational Gram-Schmidt. Rows must be
// linearly independent. Output vectors are sign-normalised (first nonzero > 0).
std::vector<Vec<Integer>> lattice_reduce(std::vector<Vec<Integer>> basis);

// Lattice vector of least sup-norm among the lattice spanned by `reduced`
// (assumed LLL-reduced). Exhaustive Fincke-Pohst enumeration; falls back to
// the best basis vector when the lattice dimension exceeds `max_dim`.
Vec<Integer> shortest_sup_norm_vector(const std::vector<Vec<Integer>>& reduced, std::size_t max_dim = 8);

Integer sup_norm(const Vec<Integer>& v);

}  // namespace thue

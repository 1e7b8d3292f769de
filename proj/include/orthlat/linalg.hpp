#pragma once

// Exact integer and rational matrix kernel.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthlat {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw MathError("ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw MathError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_column(std::size_t j, const std::vector<T>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Columns [first, first+count).
  Matrix columns(std::size_t first, std::size_t count) const {
    Matrix m(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
  }
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const T& k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (a.data_[k] != b.data_[k]) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  // Lexicographic on (rows, cols, entries); gives containers a canonical order.
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    for (std::size_t k = 0; k < a.data_.size(); ++k) {
      if (a.data_[k] < b.data_[k]) return true;
      if (b.data_[k] < a.data_[k]) return false;
    }
    return false;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw MathError("matrix product dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  T tmp;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        tmp = aik * b(k, j);
        c(i, j) += tmp;
      }
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw MathError("matrix-vector dimension mismatch");
  std::vector<T> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) r[i] += a(i, k) * v[k];
  return r;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw MathError("matrix sum dimension mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw MathError("matrix difference dimension mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

template <class T>
Matrix<T> scaled(const Matrix<T>& a, const T& k) {
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= k;
  return c;
}

// Bilinear pairing x^T G y.
template <class T>
T bilinear(const Matrix<T>& g, const std::vector<T>& x, const std::vector<T>& y) {
  T s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g(i, j) * y[j];
  }
  return s;
}

RatMatrix to_rat(const IntMatrix& m);
RatVector to_rat(const IntVector& v);
bool is_integral(const RatMatrix& m);
bool is_integral(const RatVector& v);
// Throws MathError when an entry has a denominator.
IntMatrix to_int(const RatMatrix& m);
IntVector to_int(const RatVector& v);

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);
bool is_symmetric(const IntMatrix& m);

Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);
IntMatrix inverse_unimodular(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);
// Solves A x = b; returns nullopt-like empty vector when inconsistent.
bool solve(const RatMatrix& a, const RatVector& b, RatVector& x);

struct Bezout {
  Int g, u, v;  // u*a + v*b = g >= 0
};
Bezout bezout(const Int& a, const Int& b);
Int gcd_of(const IntVector& v);
Int lcm_of_denominators(const RatVector& v);

struct SmithForm {
  IntMatrix P;
  IntMatrix D;
  IntMatrix Q;
  // Nonzero diagonal entries d_1 | d_2 | ... (all positive).
  IntVector divisors() const;
};

// P*A*Q = D with P, Q unimodular and D in Smith form.
SmithForm smith_normal_form(const IntMatrix& a);

// Row-echelon Hermite form of the row lattice of A, zero rows dropped:
// pivots positive, entries above a pivot reduced into [0, pivot).
IntMatrix hermite_rows(const IntMatrix& a);

struct Diagonalization {
  RatMatrix P;
  RatMatrix D;
};
// Rational congruence P^T G P = D.
Diagonalization congruent_diagonalize(const RatMatrix& g);

struct Inertia {
  std::size_t positive = 0, negative = 0, zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};
Inertia inertia(const RatMatrix& g);
Inertia inertia(const IntMatrix& g);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);
template <class T>
std::string to_string(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}
template <class T>
std::string to_string(const Matrix<T>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += to_string(m(i, j));
    }
    s += "]";
  }
  return s + "]";
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  return os << to_string(m);
}

}  // namespace orthlat

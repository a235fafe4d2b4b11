#pragma once

#include <cstdlib>
#include <vector>

#include "qtrio/errors.hpp"
#include "qtrio/scalar.hpp"

namespace qtrio {

template <class S>
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, S(0)) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const S& v : a_)
      if (!qtrio::is_zero(v)) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  DenseMatrix& operator*=(const S& c) {
    for (S& v : a_) v *= c;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix x, const DenseMatrix& y) { return x += y; }
  friend DenseMatrix operator-(DenseMatrix x, const DenseMatrix& y) { return x -= y; }
  friend DenseMatrix operator*(DenseMatrix x, const S& c) { return x *= c; }
  friend DenseMatrix operator*(const S& c, DenseMatrix x) { return x *= c; }

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const S& v = x(i, k);
        if (qtrio::is_zero(v)) continue;
        for (int j = 0; j < y.cols_; ++j) r(i, j) += v * y(k, j);
      }
    return r;
  }

  /// Largest absolute entry (the residual summary used in reports).
  S max_abs() const {
    S m(0);
    for (const S& v : a_) {
      S av = v < S(0) ? S(-v) : v;
      if (av > m) m = av;
    }
    return m;
  }

  /// Conjugates the basis order i -> rows-1-i on both sides.
  DenseMatrix reversed() const {
    DenseMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(rows_ - 1 - i, cols_ - 1 - j);
    return r;
  }

 private:
  int rows_, cols_;
  std::vector<S> a_;
};

/// Left-multiplication specialized to a tridiagonal left factor; used on the
/// conjugation hot path where the operator matrices are banded.
template <class S>
DenseMatrix<S> mul_tridiag(const DenseMatrix<S>& t, const DenseMatrix<S>& b) {
  DenseMatrix<S> r(t.rows(), b.cols());
  for (int i = 0; i < t.rows(); ++i) {
    int lo = i > 0 ? i - 1 : 0;
    int hi = i + 1 < t.cols() ? i + 1 : t.cols() - 1;
    for (int k = lo; k <= hi; ++k) {
      const S& v = t(i, k);
      if (is_zero(v)) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += v * b(k, j);
    }
  }
  return r;
}

/// D^T * O * P: the matrix of operator O in the basis with coordinate matrix
/// P and dual coordinate matrix D (columns are basis/dual vectors).
template <class S>
DenseMatrix<S> conjugate(const DenseMatrix<S>& d, const DenseMatrix<S>& o,
                         const DenseMatrix<S>& p) {
  return d.transpose() * (o * p);
}

struct BandProfile {
  bool diagonal = false;
  bool tridiagonal = false;
  bool irreducible_tridiagonal = false;
  bool upper_bidiagonal = false;
  bool lower_bidiagonal = false;
  bool irreducible_upper_bidiagonal = false;
  bool irreducible_lower_bidiagonal = false;
  bool multiplicity_free_diagonal = false;
};

/// Exact structural predicates; "nonzero" means exact rational != 0.
template <class S>
BandProfile band_predicates(const DenseMatrix<S>& m) {
  BandProfile p;
  const int n = m.rows();
  if (n != m.cols() || n == 0) return p;

  bool off_tri = false, off_diag = false, below_diag = false, above_diag = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (is_zero(m(i, j))) continue;
      if (i != j) off_diag = true;
      if (std::abs(i - j) > 1) off_tri = true;
      if (i > j) below_diag = true;
      if (i < j) above_diag = true;
    }
  p.diagonal = !off_diag;
  p.tridiagonal = !off_tri;
  p.upper_bidiagonal = !off_tri && !below_diag;
  p.lower_bidiagonal = !off_tri && !above_diag;

  bool sub_full = true, super_full = true;
  for (int i = 0; i + 1 < n; ++i) {
    if (is_zero(m(i + 1, i))) sub_full = false;
    if (is_zero(m(i, i + 1))) super_full = false;
  }
  p.irreducible_tridiagonal = p.tridiagonal && sub_full && super_full;
  p.irreducible_upper_bidiagonal = p.upper_bidiagonal && super_full;
  p.irreducible_lower_bidiagonal = p.lower_bidiagonal && sub_full;

  if (p.diagonal) {
    bool mf = true;
    for (int i = 0; i < n && mf; ++i)
      for (int j = i + 1; j < n && mf; ++j)
        if (m(i, i) == m(j, j)) mf = false;
    p.multiplicity_free_diagonal = mf;
  }
  return p;
}

/// Exact Gauss-Jordan inverse; throws SingularMatrixError.
template <class S>
DenseMatrix<S> inverse(DenseMatrix<S> m) {
  const int n = m.rows();
  if (n != m.cols()) throw SingularMatrixError("inverse: not square");
  DenseMatrix<S> inv = DenseMatrix<S>::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!is_zero(m(r, col))) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw SingularMatrixError("inverse: singular matrix");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    S d = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      S f = m(r, col);
      if (is_zero(f)) continue;
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Exact rank via Gaussian elimination.
template <class S>
int rank(DenseMatrix<S> m) {
  int r = 0;
  for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
    int pivot = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!is_zero(m(i, col))) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(r, j));
    for (int i = r + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      S f = m(i, col) / m(r, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

/// Basis of the right nullspace (vectors of length cols()).
template <class S>
std::vector<std::vector<S>> nullspace(DenseMatrix<S> m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(m(i, col))) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    S d = m(r, col);
    for (int j = 0; j < cols; ++j) m(r, j) /= d;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, col))) continue;
      S f = m(i, col);
      for (int j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<S>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> v(cols, S(0));
    v[free] = S(1);
    for (std::size_t pr = 0; pr < pivot_col.size(); ++pr)
      v[pivot_col[pr]] = S(0) - m(static_cast<int>(pr), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qtrio

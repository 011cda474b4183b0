#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qalg/field.hpp"

namespace qalg {

/* Dense exact matrix. Carries a zero prototype so generic code can mint
   scalars of the right field context without extra plumbing. Dimensions may
   be zero; empty matrices are first-class (their products and stacks follow
   the usual dimension rules). */
template <class K>
class Matrix {
public:
  Matrix() : r_(0), c_(0), zed_() {}
  Matrix(int rows, int cols, const K& zero)
      : r_(rows), c_(cols), zed_(f_zero(zero)), e_(static_cast<size_t>(rows) * cols, f_zero(zero)) {
    check_internal(rows >= 0 && cols >= 0, "Matrix: negative dimension");
  }

  static Matrix identity(int n, const K& proto) {
    Matrix m(n, n, proto);
    for (int i = 0; i < n; ++i) m.at(i, i) = f_one(proto);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  const K& zero() const { return zed_; }
  K one() const { return f_one(zed_); }

  K& at(int i, int j) {
    check_internal(0 <= i && i < r_ && 0 <= j && j < c_, "Matrix: index out of range");
    return e_[static_cast<size_t>(i) * c_ + j];
  }
  const K& at(int i, int j) const {
    check_internal(0 <= i && i < r_ && 0 <= j && j < c_, "Matrix: index out of range");
    return e_[static_cast<size_t>(i) * c_ + j];
  }

  bool is_zero() const {
    for (const K& x : e_)
      if (!f_is_zero(x)) return false;
    return true;
  }
  bool is_identity() const {
    if (r_ != c_) return false;
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j)
        if (!(at(i, j) == (i == j ? one() : zed_))) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
      if (!(e_[i] == o.e_[i])) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const {
    check_internal(r_ == o.r_ && c_ == o.c_, "Matrix: shape mismatch in +");
    Matrix s(r_, c_, zed_);
    for (size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] + o.e_[i];
    return s;
  }
  Matrix operator-(const Matrix& o) const {
    check_internal(r_ == o.r_ && c_ == o.c_, "Matrix: shape mismatch in -");
    Matrix s(r_, c_, zed_);
    for (size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] - o.e_[i];
    return s;
  }
  Matrix operator-() const {
    Matrix s(r_, c_, zed_);
    for (size_t i = 0; i < e_.size(); ++i) s.e_[i] = -e_[i];
    return s;
  }
  Matrix operator*(const Matrix& o) const {
    check_internal(c_ == o.r_, "Matrix: shape mismatch in *");
    Matrix s(r_, o.c_, zed_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        const K& a = at(i, k);
        if (f_is_zero(a)) continue;
        for (int j = 0; j < o.c_; ++j) s.at(i, j) = s.at(i, j) + a * o.at(k, j);
      }
    return s;
  }
  Matrix scaled(const K& c) const {
    Matrix s(r_, c_, zed_);
    for (size_t i = 0; i < e_.size(); ++i) s.e_[i] = c * e_[i];
    return s;
  }

  Matrix transpose() const {
    Matrix t(c_, r_, zed_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix block(int i0, int j0, int nr, int nc) const {
    check_internal(i0 >= 0 && j0 >= 0 && i0 + nr <= r_ && j0 + nc <= c_, "Matrix: bad block");
    Matrix b(nr, nc, zed_);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b.at(i, j) = at(i0 + i, j0 + j);
    return b;
  }
  void set_block(int i0, int j0, const Matrix& b) {
    check_internal(i0 >= 0 && j0 >= 0 && i0 + b.r_ <= r_ && j0 + b.c_ <= c_, "Matrix: bad block");
    for (int i = 0; i < b.r_; ++i)
      for (int j = 0; j < b.c_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
  }
  Matrix col(int j) const { return block(0, j, r_, 1); }
  Matrix row(int i) const { return block(i, 0, 1, c_); }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    check_internal(a.r_ == b.r_, "Matrix: hstack row mismatch");
    Matrix s(a.r_, a.c_ + b.c_, a.r_ || a.c_ ? a.zed_ : b.zed_);
    s.set_block(0, 0, a);
    s.set_block(0, a.c_, b);
    return s;
  }
  static Matrix vstack(const Matrix& a, const Matrix& b) {
    check_internal(a.c_ == b.c_, "Matrix: vstack col mismatch");
    Matrix s(a.r_ + b.r_, a.c_, a.r_ || a.c_ ? a.zed_ : b.zed_);
    s.set_block(0, 0, a);
    s.set_block(a.r_, 0, b);
    return s;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < r_; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < c_; ++j) s += (j ? "," : "") + f_str(at(i, j));
    }
    return s + "]";
  }

private:
  int r_, c_;
  K zed_;
  std::vector<K> e_;
};

template <class K>
struct RrefResult {
  Matrix<K> mat;
  std::vector<int> pivots;  // strictly increasing pivot columns
};

/* Reduced row echelon form, first-nonzero pivoting. */
template <class K>
RrefResult<K> rref(Matrix<K> m) {
  std::vector<int> pivots;
  int r = 0;
  for (int j = 0; j < m.cols() && r < m.rows(); ++j) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!f_is_zero(m.at(i, j))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(r, c));
    K inv = f_inv(m.at(r, j));
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = inv * m.at(r, c);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || f_is_zero(m.at(i, j))) continue;
      K f = m.at(i, j);
      for (int c = 0; c < m.cols(); ++c) m.at(i, c) = m.at(i, c) - f * m.at(r, c);
    }
    pivots.push_back(j);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class K>
int rank(const Matrix<K>& m) {
  return static_cast<int>(rref(m).pivots.size());
}

/* Columns form a basis of the right null space; the free-column unit
   convention makes the result deterministic. */
template <class K>
Matrix<K> kernel_basis(const Matrix<K>& m) {
  RrefResult<K> e = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (int p : e.pivots) is_piv[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols(); ++j)
    if (!is_piv[j]) free_cols.push_back(j);
  Matrix<K> ker(m.cols(), static_cast<int>(free_cols.size()), m.zero());
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    ker.at(fc, static_cast<int>(k)) = ker.one();
    for (size_t r = 0; r < e.pivots.size(); ++r)
      ker.at(e.pivots[r], static_cast<int>(k)) = -e.mat.at(static_cast<int>(r), fc);
  }
  return ker;
}

template <class K>
struct SolveResult {
  std::optional<Matrix<K>> x;  // particular solution, m * x = b
  Matrix<K> kernel;            // kernel_basis(m)
};

/* Solve m * X = B for all columns of B at once. */
template <class K>
SolveResult<K> solve(const Matrix<K>& m, const Matrix<K>& b) {
  if (m.rows() != b.rows()) throw internal_error("solve: rhs row mismatch");
  RrefResult<K> e = rref(Matrix<K>::hstack(m, b));
  Matrix<K> ker = kernel_basis(m);
  for (int p : e.pivots)
    if (p >= m.cols()) return {std::nullopt, std::move(ker)};
  Matrix<K> x(m.cols(), b.cols(), m.zero());
  for (size_t r = 0; r < e.pivots.size(); ++r)
    for (int j = 0; j < b.cols(); ++j)
      x.at(e.pivots[r], j) = e.mat.at(static_cast<int>(r), m.cols() + j);
  return {std::move(x), std::move(ker)};
}

template <class K>
struct CokernelResult {
  Matrix<K> q;  // full row rank, q * m = 0
  int dim = 0;  // rows(q) = rows(m) - rank(m)
};

/* Quotient map onto coker(m) in echelon coordinates. */
template <class K>
CokernelResult<K> cokernel_projection(const Matrix<K>& m) {
  Matrix<K> q = kernel_basis(m.transpose()).transpose();
  return {q, q.rows()};
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  SolveResult<K> s = solve(m, Matrix<K>::identity(m.rows(), m.zero()));
  if (!s.x || s.kernel.cols() != 0) return std::nullopt;
  return s.x;
}

/* Basis of the column space in echelon coordinates (columns). */
template <class K>
Matrix<K> column_space_basis(const Matrix<K>& m) {
  return kernel_basis(cokernel_projection(m).q);
}

template <class K>
Matrix<K> random_matrix(int r, int c, const K& proto, std::mt19937_64& rng) {
  Matrix<K> m(r, c, proto);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = f_random(rng, proto);
  return m;
}

/* Deterministic byte key for hashing enumerated matrices. */
template <class K>
std::string matrix_key(const Matrix<K>& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":" + m.str();
}

}  // namespace qalg

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

#include "tenrank/rational.hpp"

namespace tenrank {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Dense row-major matrix over an arbitrary scalar. Exact algorithms
/// (elimination, determinant, adjugate) work for any field scalar; numeric
/// code converts to Eigen via the bridges below.
template <typename S>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw DimensionError("Mat: negative dimension");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<S> row(int i) const {
    std::vector<S> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  std::vector<S> col(int j) const {
    std::vector<S> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    check_same(a, b);
    Mat r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
    return r;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    check_same(a, b);
    Mat r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
    return r;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DimensionError("Mat: product dimension mismatch");
    Mat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (scalar_is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend Mat operator*(const S& c, const Mat& a) {
    Mat r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = c * a.a_[k];
    return r;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  /// Matrix-vector product.
  std::vector<S> apply(const std::vector<S>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionError("Mat: apply size mismatch");
    std::vector<S> r(rows_, S(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

 private:
  static void check_same(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionError("Mat: shape mismatch");
  }

  int rows_, cols_;
  std::vector<S> a_;
};

namespace detail {

// Pivot selection: exact fields take the first non-zero entry, floating
// scalars the entry of largest magnitude.
template <typename S>
int pick_pivot(const Mat<S>& m, int col, int from_row) {
  if constexpr (is_exact_scalar_v<S>) {
    for (int i = from_row; i < m.rows(); ++i)
      if (!scalar_is_zero(m(i, col))) return i;
    return -1;
  } else {
    int best = -1;
    double best_mag = 0.0;
    for (int i = from_row; i < m.rows(); ++i) {
      double mag = std::abs(m(i, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    return best;
  }
}

template <typename S>
void swap_rows(Mat<S>& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

/// Determinant by Gaussian elimination with exact division.
template <typename S>
S det(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw DimensionError("det: non-square matrix");
  const int n = m.rows();
  Mat<S> w = m;
  S result(1);
  for (int k = 0; k < n; ++k) {
    int piv = detail::pick_pivot(w, k, k);
    if (piv < 0 || scalar_is_zero(w(piv, k))) return S(0);
    if (piv != k) {
      detail::swap_rows(w, piv, k);
      result = -result;
    }
    result *= w(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (scalar_is_zero(w(i, k))) continue;
      S factor = w(i, k) / w(k, k);
      for (int j = k; j < n; ++j) w(i, j) -= factor * w(k, j);
    }
  }
  return result;
}

/// Row rank by Gaussian elimination. Exact for Rational/GaussianRational.
template <typename S>
int rank_elimination(const Mat<S>& m) {
  Mat<S> w = m;
  int rank = 0;
  int row = 0;
  for (int col = 0; col < w.cols() && row < w.rows(); ++col) {
    int piv = detail::pick_pivot(w, col, row);
    if (piv < 0 || scalar_is_zero(w(piv, col))) continue;
    detail::swap_rows(w, piv, row);
    for (int i = row + 1; i < w.rows(); ++i) {
      if (scalar_is_zero(w(i, col))) continue;
      S factor = w(i, col) / w(row, col);
      for (int j = col; j < w.cols(); ++j) w(i, j) -= factor * w(row, j);
    }
    ++rank;
    ++row;
  }
  return rank;
}

template <typename S>
Mat<S> inverse(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: non-square matrix");
  const int n = m.rows();
  Mat<S> w = m;
  Mat<S> inv = Mat<S>::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = detail::pick_pivot(w, k, k);
    if (piv < 0 || scalar_is_zero(w(piv, k)))
      throw SingularMatrixError("inverse: singular matrix");
    detail::swap_rows(w, piv, k);
    detail::swap_rows(inv, piv, k);
    S d = w(k, k);
    for (int j = 0; j < n; ++j) {
      w(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || scalar_is_zero(w(i, k))) continue;
      S factor = w(i, k);
      for (int j = 0; j < n; ++j) {
        w(i, j) -= factor * w(k, j);
        inv(i, j) -= factor * inv(k, j);
      }
    }
  }
  return inv;
}

/// Classical adjoint via cofactors; valid for singular input as well.
template <typename S>
Mat<S> adjugate(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw DimensionError("adjugate: non-square matrix");
  const int n = m.rows();
  if (n == 1) {
    Mat<S> r(1, 1);
    r(0, 0) = S(1);
    return r;
  }
  Mat<S> adj(n, n);
  Mat<S> minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int a = 0, ma = 0; a < n; ++a) {
        if (a == i) continue;
        for (int b = 0, mb = 0; b < n; ++b) {
          if (b == j) continue;
          minor(ma, mb) = m(a, b);
          ++mb;
        }
        ++ma;
      }
      S c = det(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
    }
  }
  return adj;
}

// --- Eigen bridges for the numeric lane ---

inline Eigen::MatrixXcd to_eigen(const Mat<Complex>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Mat<Complex> from_eigen(const Eigen::MatrixXcd& e) {
  Mat<Complex> m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

template <typename S>
Mat<Complex> to_complex_mat(const Mat<S>& m) {
  Mat<Complex> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = scalar_to_complex(m(i, j));
  return r;
}

inline double frobenius(const Mat<Complex>& m) {
  double s = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

/// |det| divided by the Hadamard bound (product of row norms); a
/// scale-invariant invertibility measure in [0, 1].
inline double det_conditioning(const Mat<Complex>& m) {
  if (m.rows() != m.cols()) throw DimensionError("det_conditioning: non-square");
  const int n = m.rows();
  Eigen::MatrixXcd e = to_eigen(m);
  double hadamard = 1.0;
  for (int i = 0; i < n; ++i) {
    double rn = e.row(i).norm();
    if (rn == 0.0) return 0.0;
    hadamard *= rn;
  }
  return std::abs(e.determinant()) / hadamard;
}

}  // namespace tenrank

#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "tenrank/matrix.hpp"
#include "tenrank/rational.hpp"

namespace tenrank {

struct InvalidTensorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dense n x n x n tensor. Entries are exact rationals or complex doubles,
/// selected by the scalar parameter; the field tag travels with the type.
template <typename S>
class Tensor3 {
 public:
  explicit Tensor3(int n) : n_(n), a_(static_cast<size_t>(n) * n * n) {
    if (n < 1) throw InvalidTensorError("Tensor3: dimension must be >= 1");
  }

  int n() const { return n_; }

  S& at(int i, int j, int k) { return a_[idx(i, j, k)]; }
  const S& at(int i, int j, int k) const { return a_[idx(i, j, k)]; }

  const std::vector<S>& data() const { return a_; }

  friend bool operator==(const Tensor3& a, const Tensor3& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

  friend Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
    if (a.n_ != b.n_) throw DimensionError("Tensor3: shape mismatch");
    Tensor3 r(a.n_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
    return r;
  }

  friend Tensor3 operator+(const Tensor3& a, const Tensor3& b) {
    if (a.n_ != b.n_) throw DimensionError("Tensor3: shape mismatch");
    Tensor3 r(a.n_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
    return r;
  }

  friend Tensor3 operator*(const S& c, const Tensor3& a) {
    Tensor3 r(a.n_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = c * a.a_[k];
    return r;
  }

 private:
  size_t idx(int i, int j, int k) const {
    return (static_cast<size_t>(i) * n_ + j) * n_ + k;
  }

  int n_;
  std::vector<S> a_;
};

/// Diagonal tensor with (i,i,i)-entry v_i.
template <typename S>
Tensor3<S> diag_tensor(std::span<const S> v) {
  Tensor3<S> t(static_cast<int>(v.size()));
  for (int i = 0; i < t.n(); ++i) t.at(i, i, i) = v[i];
  return t;
}

template <typename S>
Tensor3<S> diag_tensor(const std::vector<S>& v) {
  return diag_tensor(std::span<const S>(v));
}

/// The diagonal unit tensor.
template <typename S>
Tensor3<S> unit_diag_tensor(int n) {
  Tensor3<S> t(n);
  for (int i = 0; i < n; ++i) t.at(i, i, i) = S(1);
  return t;
}

/// Contraction of axis i (1-based) against v: the slice-weighted sum matrix,
/// indexed by the two remaining indices in order.
template <typename S>
Mat<S> contract(const Tensor3<S>& p, int axis, std::span<const S> v) {
  const int n = p.n();
  if (static_cast<int>(v.size()) != n) throw DimensionError("contract: vector length mismatch");
  if (axis < 1 || axis > 3) throw DimensionError("contract: axis must be 1, 2, or 3");
  Mat<S> m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      S acc(0);
      for (int t = 0; t < n; ++t) {
        if (scalar_is_zero(v[t])) continue;
        const S& e = axis == 1 ? p.at(t, a, b) : (axis == 2 ? p.at(a, t, b) : p.at(a, b, t));
        acc += e * v[t];
      }
      m(a, b) = acc;
    }
  return m;
}

template <typename S>
Mat<S> contract(const Tensor3<S>& p, int axis, const std::vector<S>& v) {
  return contract(p, axis, std::span<const S>(v));
}

/// The j-th i-slice (j 0-based).
template <typename S>
Mat<S> slice(const Tensor3<S>& p, int axis, int j) {
  std::vector<S> e(p.n(), S(0));
  e[j] = S(1);
  return contract(p, axis, e);
}

/// One-sided action on a single axis: contracts the tensor's axis index
/// against the first index of g.
template <typename S>
Tensor3<S> act_axis(const Tensor3<S>& p, int axis, const Mat<S>& g) {
  const int n = p.n();
  if (g.rows() != n || g.cols() != n) throw DimensionError("act_axis: matrix size mismatch");
  Tensor3<S> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        S acc(0);
        for (int l = 0; l < n; ++l) {
          const S& e = axis == 1 ? p.at(l, j, k) : (axis == 2 ? p.at(i, l, k) : p.at(i, j, l));
          const S& w = axis == 1 ? g(l, i) : (axis == 2 ? g(l, j) : g(l, k));
          if (scalar_is_zero(e) || scalar_is_zero(w)) continue;
          acc += e * w;
        }
        r.at(i, j, k) = acc;
      }
  return r;
}

/// Triple of invertible matrices acting on the three tensor indices.
template <typename S>
struct GroupElement {
  Mat<S> g1, g2, g3;

  /// Validates invertibility. Exact scalars require det != 0 literally; the
  /// float backend requires |det| above `det_tol` relative to the Hadamard
  /// bound.
  GroupElement(Mat<S> a, Mat<S> b, Mat<S> c, double det_tol = 1e-12)
      : g1(std::move(a)), g2(std::move(b)), g3(std::move(c)) {
    const int n = g1.rows();
    for (const Mat<S>* m : {&g1, &g2, &g3}) {
      if (m->rows() != n || m->cols() != n)
        throw DimensionError("GroupElement: matrices must be square of equal size");
      if constexpr (is_exact_scalar_v<S>) {
        if (scalar_is_zero(det(*m)))
          throw SingularMatrixError("GroupElement: singular factor");
      } else {
        if (det_conditioning(*m) <= det_tol)
          throw SingularMatrixError("GroupElement: factor below invertibility tolerance");
      }
    }
  }

  static GroupElement identity(int n) {
    return GroupElement(Mat<S>::identity(n), Mat<S>::identity(n), Mat<S>::identity(n));
  }

  const Mat<S>& factor(int axis) const {
    switch (axis) {
      case 1: return g1;
      case 2: return g2;
      case 3: return g3;
      default: throw DimensionError("GroupElement: axis must be 1, 2, or 3");
    }
  }

  S det_factor(int axis) const { return det(factor(axis)); }

  /// Componentwise product; composes with the right action.
  GroupElement compose(const GroupElement& o) const {
    return GroupElement(g1 * o.g1, g2 * o.g2, g3 * o.g3);
  }

  GroupElement inverted() const {
    return GroupElement(inverse(g1), inverse(g2), inverse(g3));
  }
};

/// Right group action P(g1,g2,g3).
template <typename S>
Tensor3<S> act(const Tensor3<S>& p, const GroupElement<S>& g) {
  return act_axis(act_axis(act_axis(p, 1, g.g1), 2, g.g2), 3, g.g3);
}

/// n^2 x n flattening of axis i; row order is lexicographic in the two free
/// indices, column v holds vec of contract(P, i, e_v).
template <typename S>
Mat<S> flatten(const Tensor3<S>& p, int axis) {
  const int n = p.n();
  if (axis < 1 || axis > 3) throw DimensionError("flatten: axis must be 1, 2, or 3");
  Mat<S> m(n * n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int v = 0; v < n; ++v) {
        const S& e = axis == 1 ? p.at(v, a, b) : (axis == 2 ? p.at(a, v, b) : p.at(a, b, v));
        m(a * n + b, v) = e;
      }
  return m;
}

struct MultilinearRank {
  int r1 = 0, r2 = 0, r3 = 0;
  friend bool operator==(const MultilinearRank&, const MultilinearRank&) = default;
};

/// Exact multilinear rank by Gaussian elimination on the three flattenings.
template <typename S>
  requires is_exact_scalar_v<S>
MultilinearRank multilinear_rank(const Tensor3<S>& p) {
  return {rank_elimination(flatten(p, 1)), rank_elimination(flatten(p, 2)),
          rank_elimination(flatten(p, 3))};
}

inline int svd_rank(const Mat<Complex>& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = tol * sv(0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

/// Numeric multilinear rank; singular values below tol * sigma_max count as
/// zero.
inline MultilinearRank multilinear_rank(const Tensor3<Complex>& p, double tol = 1e-9) {
  return {svd_rank(flatten(p, 1), tol), svd_rank(flatten(p, 2), tol),
          svd_rank(flatten(p, 3), tol)};
}

template <typename S>
Tensor3<Complex> to_complex_tensor(const Tensor3<S>& p) {
  Tensor3<Complex> r(p.n());
  for (int i = 0; i < p.n(); ++i)
    for (int j = 0; j < p.n(); ++j)
      for (int k = 0; k < p.n(); ++k) r.at(i, j, k) = scalar_to_complex(p.at(i, j, k));
  return r;
}

inline double frobenius(const Tensor3<Complex>& p) {
  double s = 0;
  for (const auto& e : p.data()) s += std::norm(e);
  return std::sqrt(s);
}

template <typename S>
  requires is_exact_scalar_v<S>
double frobenius(const Tensor3<S>& p) {
  double s = 0;
  for (const auto& e : p.data()) s += std::norm(scalar_to_complex(e));
  return std::sqrt(s);
}

inline double max_abs(const Tensor3<Complex>& p) {
  double m = 0;
  for (const auto& e : p.data()) m = std::max(m, std::abs(e));
  return m;
}

/// Checks that every entry is finite; complex tensors admit no NaN/Inf.
inline void require_finite(const Tensor3<Complex>& p) {
  for (const auto& e : p.data())
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw InvalidTensorError("Tensor3: non-finite entry");
}

/// Rank-one tensor u (x) v (x) w.
template <typename S>
Tensor3<S> rank_one(std::span<const S> u, std::span<const S> v, std::span<const S> w) {
  const int n = static_cast<int>(u.size());
  if (static_cast<int>(v.size()) != n || static_cast<int>(w.size()) != n)
    throw DimensionError("rank_one: vector lengths differ");
  Tensor3<S> t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t.at(i, j, k) = u[i] * v[j] * w[k];
  return t;
}

/// Reindexes so the requested axis becomes axis 3: the i-slices of the input
/// are the 3-slices of the output. `undo` reverses it.
template <typename S>
Tensor3<S> rotate_axis_to_3(const Tensor3<S>& p, int axis) {
  const int n = p.n();
  Tensor3<S> q(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (axis == 1)
          q.at(a, b, c) = p.at(c, a, b);
        else if (axis == 2)
          q.at(a, b, c) = p.at(a, c, b);
        else
          q.at(a, b, c) = p.at(a, b, c);
      }
  return q;
}

template <typename S>
Tensor3<S> rotate_axis_from_3(const Tensor3<S>& q, int axis) {
  const int n = q.n();
  Tensor3<S> p(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (axis == 1)
          p.at(c, a, b) = q.at(a, b, c);
        else if (axis == 2)
          p.at(a, c, b) = q.at(a, b, c);
        else
          p.at(a, b, c) = q.at(a, b, c);
      }
  return p;
}

/// Maps a group element expressed in rotated coordinates (axis moved to 3)
/// back to the original axis labels. The factors were already validated;
/// reordering does not re-apply a tolerance.
template <typename S>
GroupElement<S> unrotate_group(const GroupElement<S>& g, int axis) {
  if (axis == 1) return GroupElement<S>(g.g3, g.g1, g.g2, 0.0);
  if (axis == 2) return GroupElement<S>(g.g1, g.g3, g.g2, 0.0);
  return g;
}

}  // namespace tenrank

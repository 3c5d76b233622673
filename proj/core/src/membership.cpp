#include "tenrank/membership.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tenrank/rng.hpp"

namespace tenrank {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::InOrbit: return "in-orbit";
    case Verdict::Boundary: return "boundary";
    case Verdict::Outside: return "outside";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string to_string(TriState t) {
  switch (t) {
    case TriState::Pass: return "pass";
    case TriState::Fail: return "fail";
    case TriState::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::InOrbit: return 0;
    case Verdict::Boundary: return 2;
    case Verdict::Outside: return 3;
    case Verdict::Indeterminate: return 4;
  }
  return 4;
}

namespace {

void check_dim(const int n) {
  if (n < 2) throw InvalidTensorError("membership analysis requires n >= 2");
}

std::vector<Complex> random_real_unit(Rng& rng, int n) {
  std::vector<Complex> v(n);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double x = rng.symmetric();
      v[i] = Complex(x, 0.0);
      norm2 += x * x;
    }
  } while (norm2 < 1e-8);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& e : v) e *= inv;
  return v;
}

std::vector<Rational> random_rational_point(Rng& rng, int n) {
  std::vector<Rational> v(n);
  bool nonzero = false;
  for (int i = 0; i < n; ++i) {
    v[i] = Rational(rng.int_in(-9, 9));
    if (!v[i].is_zero()) nonzero = true;
  }
  if (!nonzero) v[0] = Rational(1);
  return v;
}

TriState residual_state(double residual, double tol, double band) {
  if (residual < tol / band) return TriState::Pass;
  if (residual > tol * band) return TriState::Fail;
  return TriState::Indeterminate;
}

TriState magnitude_state(double value, double tol, double band) {
  if (value > tol * band) return TriState::Pass;
  if (value < tol / band) return TriState::Fail;
  return TriState::Indeterminate;
}

}  // namespace

CommutationReport commutation_residuals(const Tensor3<Rational>& p, int axis) {
  check_dim(p.n());
  const int n = p.n();
  CommutationReport rep;
  rep.axis = axis;
  rep.exact = true;
  rep.identically_zero = true;
  rep.status = TriState::Pass;

  PolyMatrix<Rational> adj = poly_adjugate(slice_pencil(p, axis));
  std::vector<PolyMatrix<Rational>> lifted;
  std::vector<PolyMatrix<Rational>> left;  // S_j * adj
  lifted.reserve(n);
  left.reserve(n);
  for (int j = 0; j < n; ++j) {
    lifted.push_back(PolyMatrix<Rational>::lift(slice(p, axis, j), n));
    left.push_back(lifted.back() * adj);
  }
  for (int j = 0; j < n && rep.identically_zero; ++j) {
    for (int k = j + 1; k < n && rep.identically_zero; ++k) {
      PolyMatrix<Rational> e = left[j] * lifted[k] - left[k] * lifted[j];
      for (int a = 0; a < n && rep.identically_zero; ++a)
        for (int b = 0; b < n && rep.identically_zero; ++b) {
          if (e(a, b).is_zero()) continue;
          rep.identically_zero = false;
          rep.status = TriState::Fail;
          const auto& lead = *e(a, b).terms().begin();
          CommutationWitness w;
          w.slice_j = j + 1;
          w.slice_k = k + 1;
          w.row = a + 1;
          w.col = b + 1;
          w.location = "coefficient of " + PolyQ::monomial(n, lead.first, Rational(1)).str();
          w.value = lead.second.str();
          rep.witness = w;
        }
    }
  }
  return rep;
}

CommutationReport commutation_residuals(const Tensor3<Complex>& p, int axis,
                                        const MembershipOptions& opts) {
  check_dim(p.n());
  const int n = p.n();
  CommutationReport rep;
  rep.axis = axis;
  rep.exact = false;

  const double pnorm = frobenius(p);
  if (pnorm == 0.0) {
    rep.status = TriState::Pass;
    rep.identically_zero = true;
    return rep;
  }
  const double scale = std::pow(pnorm, n + 1);

  std::vector<Mat<Complex>> slices;
  slices.reserve(n);
  for (int j = 0; j < n; ++j) slices.push_back(slice(p, axis, j));

  double worst = 0.0;
  Rng rng(Rng::derive(opts.seed, "commutation-v", static_cast<std::uint64_t>(axis)));
  for (int s = 0; s < opts.v_samples; ++s) {
    std::vector<Complex> v = random_real_unit(rng, n);
    Mat<Complex> adj = adjugate(contract(p, axis, v));
    std::vector<Mat<Complex>> left;
    left.reserve(n);
    for (int j = 0; j < n; ++j) left.push_back(slices[j] * adj);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Mat<Complex> e = left[j] * slices[k] - left[k] * slices[j];
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            const double mag = std::abs(e(a, b));
            if (mag > worst) {
              worst = mag;
              CommutationWitness w;
              w.slice_j = j + 1;
              w.slice_k = k + 1;
              w.row = a + 1;
              w.col = b + 1;
              w.location = "sample " + std::to_string(s);
              w.value = std::to_string(mag / scale);
              rep.witness = w;
            }
          }
      }
  }
  rep.max_residual = worst / scale;
  rep.status = residual_state(rep.max_residual, opts.commutation_tol, opts.band);
  rep.identically_zero = rep.max_residual == 0.0;
  return rep;
}

bool slice_nonsingular(const Tensor3<Rational>& p, int axis) {
  check_dim(p.n());
  return !h_covariant(p, axis).poly.is_zero();
}

bool slice_nonsingular(const Tensor3<Complex>& p, int axis, const MembershipOptions& opts) {
  check_dim(p.n());
  const int n = p.n();
  const double pnorm = frobenius(p);
  if (pnorm == 0.0) return false;
  const double threshold = opts.h_tol * std::pow(pnorm, n);
  Rng rng(Rng::derive(opts.seed, "h-sample", static_cast<std::uint64_t>(axis)));
  double best = 0.0;
  for (int s = 0; s < opts.x_samples; ++s) {
    std::vector<Complex> x = random_real_unit(rng, n);
    best = std::max(best, std::abs(h_eval(p, axis, x)));
  }
  return best > threshold;
}

namespace {

// Invertible completion with prescribed first column: the remaining columns
// are standard basis vectors skipping the pivot row of w.
template <typename S>
Mat<S> completion_with_first_column(const std::vector<S>& w) {
  const int n = static_cast<int>(w.size());
  int pivot = -1;
  if constexpr (is_exact_scalar_v<S>) {
    for (int i = 0; i < n; ++i)
      if (!scalar_is_zero(w[i])) {
        pivot = i;
        break;
      }
  } else {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      const double mag = std::abs(w[i]);
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
  }
  if (pivot < 0) throw SingularMatrixError("completion: zero vector");
  Mat<S> c(n, n);
  for (int i = 0; i < n; ++i) c(i, 0) = w[i];
  int col = 1;
  for (int j = 0; j < n; ++j) {
    if (j == pivot) continue;
    c(j, col) = S(1);
    ++col;
  }
  return c;
}

template <typename S>
bool all_slices_upper_triangular(const Tensor3<S>& t) {
  const int n = t.n();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (!scalar_is_zero(t.at(i, j, k))) return false;
  return true;
}

template <typename S>
Mat<S> diagonals_matrix(const Tensor3<S>& t) {
  const int n = t.n();
  Mat<S> z(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) z(a, b) = t.at(a, a, b);
  return z;
}

double lower_triangle_residual(const Tensor3<Complex>& t) {
  double worst = 0.0;
  const int n = t.n();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) worst = std::max(worst, std::abs(t.at(i, j, k)));
  return worst;
}

double off_diagonal_residual(const Tensor3<Complex>& t) {
  double worst = 0.0;
  const int n = t.n();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) worst = std::max(worst, std::abs(t.at(i, j, k)));
  return worst;
}

// Finds a slice combination with invertible contraction: basis vectors
// first, then seeded rational combinations. Exact scalars take the first
// candidate with nonzero determinant; the float backend keeps the best
// conditioned candidate seen.
template <typename S>
std::optional<std::vector<S>> find_nonsingular_combo(const Tensor3<S>& q,
                                                     const MembershipOptions& opts) {
  const int n = q.n();
  std::vector<std::vector<S>> candidates;
  for (int j = 0; j < n; ++j) {
    std::vector<S> w(n, S(0));
    w[j] = S(1);
    candidates.push_back(std::move(w));
  }
  Rng rng(Rng::derive(opts.seed, "slice-combo"));
  for (int t = 0; t < 8; ++t) {
    std::vector<S> w(n);
    for (int j = 0; j < n; ++j) {
      const Rational r = rng.rational(4, 3);
      if constexpr (is_exact_scalar_v<S>)
        w[j] = S(r);
      else
        w[j] = Complex(r.to_double(), 0.0);
    }
    candidates.push_back(std::move(w));
  }

  if constexpr (is_exact_scalar_v<S>) {
    for (const auto& w : candidates)
      if (!scalar_is_zero(det(contract(q, 3, w)))) return w;
    return std::nullopt;
  } else {
    double best = 0.0;
    std::optional<std::vector<S>> best_w;
    for (const auto& w : candidates) {
      const double cond = det_conditioning(contract(q, 3, w));
      if (cond > best) {
        best = cond;
        best_w = w;
      }
    }
    if (best > opts.slice_combo_tol) return best_w;
    return std::nullopt;
  }
}

struct FactorAccumulator {
  Mat<Complex> g1, g2, g3;
};

// Reconstructs rational scalars from floating approximations by continued
// fractions; used to recover exact eigenvalues before verifying them.
std::optional<Rational> rational_reconstruct(double x, double tol = 1e-9,
                                             long max_den = 1000000) {
  if (!std::isfinite(x)) return std::nullopt;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    if (std::abs(fl) > 9e14) return std::nullopt;
    const long a = static_cast<long>(fl);
    const long p2 = a * p1 + p0;
    const long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(x - approx) <= tol * std::max(1.0, std::abs(x)))
      return Rational(p1, q1);
    const double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return std::nullopt;
}

// Exact eigenvector for an eigenvalue of an upper-triangular matrix with
// distinct diagonal, by back substitution.
std::vector<Rational> triangular_eigenvector(const Mat<Rational>& b, int j) {
  const int n = b.rows();
  std::vector<Rational> v(n, Rational(0));
  v[j] = Rational(1);
  const Rational lambda = b(j, j);
  for (int i = j - 1; i >= 0; --i) {
    Rational acc(0);
    for (int t = i + 1; t <= j; ++t) acc += b(i, t) * v[t];
    v[i] = acc / (lambda - b(i, i));
  }
  return v;
}

// Exact eigenvector as a kernel vector of (m - lambda I).
std::optional<std::vector<Rational>> kernel_vector(Mat<Rational> m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    detail::swap_rows(m, piv, r);
    const Rational d = m(r, c);
    for (int jj = 0; jj < cols; ++jj) m(r, jj) /= d;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (int jj = 0; jj < cols; ++jj) m(i, jj) -= f * m(r, jj);
    }
    pivot_col.push_back(c);
    ++r;
  }
  int free_col = -1;
  for (int c = 0; c < cols; ++c)
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) {
      free_col = c;
      break;
    }
  if (free_col < 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  x[free_col] = Rational(1);
  for (size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = -m(static_cast<int>(k), free_col);
  return x;
}

}  // namespace

SemiCanonical<Complex> semi_canonical(const Tensor3<Complex>& p, int axis,
                                      const MembershipOptions& opts) {
  check_dim(p.n());
  const int n = p.n();
  Tensor3<Complex> q = rotate_axis_to_3(p, axis);

  // Already in semi-canonical shape: keep the input as its own
  // representative. A zero row of Z makes the pencil determinant vanish
  // identically, so that still counts as slice-singular.
  {
    const double res = lower_triangle_residual(q);
    const double scale = std::max(frobenius(q), 1e-300);
    if (res <= opts.triangular_tol * scale) {
      Mat<Complex> z = diagonals_matrix(q);
      for (int a = 0; a < n; ++a) {
        double row_norm = 0;
        for (int b = 0; b < n; ++b) row_norm += std::norm(z(a, b));
        if (std::sqrt(row_norm) <= opts.h_tol * scale)
          throw SliceSingularError("semi_canonical: triangular slices with a vanishing diagonal row");
      }
      return SemiCanonical<Complex>{p, GroupElement<Complex>::identity(n), z, res, {}};
    }
  }

  auto combo = find_nonsingular_combo(q, opts);
  if (!combo)
    throw SliceSingularError("semi_canonical: no invertible slice combination found");

  FactorAccumulator acc{Mat<Complex>::identity(n), Mat<Complex>::identity(n),
                        Mat<Complex>::identity(n)};
  std::vector<std::string> notes;

  Mat<Complex> c = completion_with_first_column(*combo);
  Tensor3<Complex> t = act_axis(q, 3, c);
  acc.g3 = acc.g3 * c;

  Mat<Complex> a = slice(t, 3, 0);
  Mat<Complex> g1 = inverse(a).transposed();
  t = act_axis(t, 1, g1);
  acc.g1 = acc.g1 * g1;

  double residual = lower_triangle_residual(t);
  const double scale = std::max(frobenius(t), 1e-300);
  if (residual > opts.triangular_tol * scale) {
    std::vector<Mat<Complex>> slices;
    for (int j = 0; j < n; ++j) slices.push_back(slice(t, 3, j));
    bool ok = false;
    Rng rng(Rng::derive(opts.seed, "triangularize"));
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      Mat<Complex> m(n, n);
      for (int j = 1; j < n; ++j) {
        const Complex cj(rng.symmetric(), 0.0);
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) m(x, y) += cj * slices[j](x, y);
      }
      Eigen::ComplexSchur<Eigen::MatrixXcd> schur(to_eigen(m));
      if (schur.info() != Eigen::Success) continue;
      Eigen::MatrixXcd u = schur.matrixU();
      Tensor3<Complex> cand = act_axis(t, 1, from_eigen(u.conjugate()));
      cand = act_axis(cand, 2, from_eigen(u));
      const double res = lower_triangle_residual(cand);
      if (res <= opts.triangular_tol * scale) {
        acc.g1 = acc.g1 * from_eigen(u.conjugate());
        acc.g2 = acc.g2 * from_eigen(u);
        t = std::move(cand);
        residual = res;
        ok = true;
      }
    }
    if (!ok)
      throw TriangularizationError(
          "semi_canonical: joint triangularization failed within tolerance");
  }

  SemiCanonical<Complex> out{
      rotate_axis_from_3(t, axis),
      unrotate_group(GroupElement<Complex>(acc.g1, acc.g2, acc.g3, 0.0), axis),
      diagonals_matrix(t), residual, std::move(notes)};
  return out;
}

SemiCanonical<Rational> semi_canonical(const Tensor3<Rational>& p, int axis,
                                       const MembershipOptions& opts) {
  check_dim(p.n());
  const int n = p.n();
  Tensor3<Rational> q = rotate_axis_to_3(p, axis);

  // Already in semi-canonical shape: keep the input as its own
  // representative. A zero row of Z makes the pencil determinant vanish
  // identically, so that still counts as slice-singular.
  if (all_slices_upper_triangular(q)) {
    Mat<Rational> z = diagonals_matrix(q);
    for (int a = 0; a < n; ++a) {
      bool all_zero = true;
      for (int b = 0; b < n; ++b)
        if (!z(a, b).is_zero()) all_zero = false;
      if (all_zero)
        throw SliceSingularError("semi_canonical: triangular slices with a vanishing diagonal row");
    }
    return SemiCanonical<Rational>{p, GroupElement<Rational>::identity(n), z, 0.0, {}};
  }

  auto combo = find_nonsingular_combo(q, opts);
  if (!combo) {
    // The seeded candidates can miss; the pencil determinant decides. When
    // it is nonzero, a provably non-vanishing point exists on a small grid.
    PolyQ h = h_covariant(p, axis).poly;
    if (h.is_zero())
      throw SliceSingularError("semi_canonical: tensor is slice-singular on this axis (proved)");
    combo = nonvanishing_point(h);
  }

  std::array<Mat<Rational>, 3> acc{Mat<Rational>::identity(n), Mat<Rational>::identity(n),
                                   Mat<Rational>::identity(n)};
  std::vector<std::string> notes;

  Mat<Rational> c = completion_with_first_column(*combo);
  Tensor3<Rational> t = act_axis(q, 3, c);
  acc[2] = acc[2] * c;

  Mat<Rational> a = slice(t, 3, 0);
  Mat<Rational> g1 = inverse(a).transposed();
  t = act_axis(t, 1, g1);
  acc[0] = acc[0] * g1;

  if (!all_slices_upper_triangular(t)) {
    // Diagonalize via a combined slice with distinct rational eigenvalues:
    // numeric eigenvalues are reconstructed as rationals and then verified
    // exactly. Anything else leaves the exact lane.
    std::vector<Mat<Rational>> slices;
    for (int j = 0; j < n; ++j) slices.push_back(slice(t, 3, j));

    bool done = false;
    Rng rng(Rng::derive(opts.seed, "exact-diagonalize"));
    for (int attempt = 0; attempt < 8 + n - 1 && !done; ++attempt) {
      Mat<Rational> m(n, n);
      if (attempt < n - 1) {
        m = slices[attempt + 1];
      } else {
        for (int j = 1; j < n; ++j) {
          const Rational cj = rng.rational(9, 4);
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) m(x, y) += cj * slices[j](x, y);
        }
      }
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(to_complex_mat(m)), false);
      if (es.info() != Eigen::Success) continue;
      std::vector<Rational> eigs;
      bool all_rational = true;
      for (int i = 0; i < n && all_rational; ++i) {
        const Complex lambda_i = es.eigenvalues()(i);
        if (std::abs(lambda_i.imag()) > 1e-7 * std::max(1.0, std::abs(lambda_i))) {
          all_rational = false;
          break;
        }
        auto rec = rational_reconstruct(lambda_i.real());
        if (!rec) {
          all_rational = false;
          break;
        }
        Mat<Rational> shifted = m;
        for (int d = 0; d < n; ++d) shifted(d, d) -= *rec;
        if (!scalar_is_zero(det(shifted))) {
          all_rational = false;
          break;
        }
        eigs.push_back(*rec);
      }
      if (!all_rational) continue;
      std::sort(eigs.begin(), eigs.end());
      bool distinct = true;
      for (int i = 0; i + 1 < n; ++i)
        if (eigs[i] == eigs[i + 1]) distinct = false;
      if (!distinct) continue;

      Mat<Rational> v(n, n);
      bool kernel_ok = true;
      for (int i = 0; i < n && kernel_ok; ++i) {
        Mat<Rational> shifted = m;
        for (int d = 0; d < n; ++d) shifted(d, d) -= eigs[i];
        auto vec = kernel_vector(shifted);
        if (!vec) {
          kernel_ok = false;
          break;
        }
        for (int r = 0; r < n; ++r) v(r, i) = (*vec)[r];
      }
      if (!kernel_ok) continue;

      Mat<Rational> vinv = inverse(v);
      Tensor3<Rational> cand = act_axis(t, 1, vinv.transposed());
      cand = act_axis(cand, 2, v);
      if (!all_slices_upper_triangular(cand)) continue;
      acc[0] = acc[0] * vinv.transposed();
      acc[1] = acc[1] * v;
      t = std::move(cand);
      done = true;
    }
    if (!done)
      throw ExactnessLostError(
          "semi_canonical: no combined slice with distinct rational eigenvalues");
  }

  SemiCanonical<Rational> out{
      rotate_axis_from_3(t, axis),
      unrotate_group(GroupElement<Rational>(acc[0], acc[1], acc[2]), axis),
      diagonals_matrix(t), 0.0, std::move(notes)};
  return out;
}

Tensor3<Complex> Decomposition::reconstruct() const {
  const int n = g1.rows();
  Tensor3<Complex> t(n);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) t.at(i, j, k) += g1(c, i) * g2(c, j) * g3(c, k);
  return t;
}

namespace {

Mat<Complex> vandermonde(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  Mat<Complex> z(n, n);
  for (int a = 0; a < n; ++a) {
    Complex pw(1.0, 0.0);
    for (int b = 0; b < n; ++b) {
      z(a, b) = pw;
      pw *= nodes[a];
    }
  }
  return z;
}

Mat<Rational> vandermonde_exact(int n) {
  Mat<Rational> z(n, n);
  for (int a = 0; a < n; ++a) {
    Rational pw(1);
    for (int b = 0; b < n; ++b) {
      z(a, b) = pw;
      pw *= Rational(a);
    }
  }
  return z;
}

// Leading-one normalization of the paired rows and the canonical component
// order (lexicographic by g3 row, then g1, then g2).
void normalize_and_sort(Mat<Complex>& g1, Mat<Complex>& g2, Mat<Complex>& g3) {
  const int n = g1.rows();
  for (int i = 0; i < n; ++i) {
    auto leading = [&](const Mat<Complex>& g) -> Complex {
      double rowmax = 0.0;
      for (int j = 0; j < n; ++j) rowmax = std::max(rowmax, std::abs(g(i, j)));
      for (int j = 0; j < n; ++j)
        if (std::abs(g(i, j)) > 1e-9 * rowmax) return g(i, j);
      return Complex(1.0, 0.0);
    };
    const Complex l1 = leading(g1);
    const Complex l2 = leading(g2);
    for (int j = 0; j < n; ++j) {
      g1(i, j) /= l1;
      g2(i, j) /= l2;
      g3(i, j) *= l1 * l2;
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row_less = [&](const Mat<Complex>& g, int a, int b) -> int {
    for (int j = 0; j < n; ++j) {
      const Complex x = g(a, j), y = g(b, j);
      if (x.real() != y.real()) return x.real() < y.real() ? -1 : 1;
      if (x.imag() != y.imag()) return x.imag() < y.imag() ? -1 : 1;
    }
    return 0;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (int c = row_less(g3, a, b)) return c < 0;
    if (int c = row_less(g1, a, b)) return c < 0;
    return row_less(g2, a, b) < 0;
  });
  Mat<Complex> h1(n, n), h2(n, n), h3(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      h1(i, j) = g1(order[i], j);
      h2(i, j) = g2(order[i], j);
      h3(i, j) = g3(order[i], j);
    }
  g1 = std::move(h1);
  g2 = std::move(h2);
  g3 = std::move(h3);
}

void normalize_and_sort_exact(std::array<Mat<Rational>, 3>& g) {
  const int n = g[0].rows();
  for (int i = 0; i < n; ++i) {
    auto leading = [&](const Mat<Rational>& m) -> Rational {
      for (int j = 0; j < n; ++j)
        if (!m(i, j).is_zero()) return m(i, j);
      return Rational(1);
    };
    const Rational l1 = leading(g[0]);
    const Rational l2 = leading(g[1]);
    for (int j = 0; j < n; ++j) {
      g[0](i, j) /= l1;
      g[1](i, j) /= l2;
      g[2](i, j) *= l1 * l2;
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row_less = [&](const Mat<Rational>& m, int a, int b) -> int {
    for (int j = 0; j < n; ++j) {
      if (m(a, j) != m(b, j)) return m(a, j) < m(b, j) ? -1 : 1;
    }
    return 0;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (int c = row_less(g[2], a, b)) return c < 0;
    if (int c = row_less(g[0], a, b)) return c < 0;
    return row_less(g[1], a, b) < 0;
  });
  std::array<Mat<Rational>, 3> h{Mat<Rational>(n, n), Mat<Rational>(n, n), Mat<Rational>(n, n)};
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h[m](i, j) = g[m](order[i], j);
  g = std::move(h);
}

Decomposition decompose_in_orbit_float(const Tensor3<Complex>& p, const MembershipOptions& opts) {
  const int n = p.n();
  SemiCanonical<Complex> sc = semi_canonical(p, 3, opts);

  if (det_conditioning(sc.diagonals) <= opts.slice_combo_tol)
    throw IndeterminateError(
        "decompose: slice-diagonal matrix is numerically singular despite in-orbit verdict");

  Mat<Complex> e1 = sc.group.g1, e2 = sc.group.g2, e3 = sc.group.g3;
  Tensor3<Complex> t = sc.tensor;

  std::vector<double> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0.0);
  Rng rng(Rng::derive(opts.seed, "decompose-nodes"));

  for (int attempt = 0; attempt < 4; ++attempt) {
    Mat<Complex> zp = vandermonde(nodes);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(to_eigen(sc.diagonals));
    Mat<Complex> h3 = from_eigen(lu.solve(to_eigen(zp)));
    Tensor3<Complex> t2 = act_axis(t, 3, h3);

    Mat<Complex> b = slice(t2, 3, 1);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(b));
    if (es.info() != Eigen::Success)
      throw TriangularizationError("decompose: eigensolver failed");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      const Complex a = es.eigenvalues()(x), c = es.eigenvalues()(y);
      if (a.real() != c.real()) return a.real() < c.real();
      return a.imag() < c.imag();
    });
    double max_mag = 1.0;
    for (int i = 0; i < n; ++i)
      max_mag = std::max(max_mag, std::abs(es.eigenvalues()(i)));
    bool separated = true;
    for (int i = 0; i + 1 < n && separated; ++i)
      if (std::abs(es.eigenvalues()(order[i]) - es.eigenvalues()(order[i + 1])) <
          opts.eigen_gap * max_mag)
        separated = false;
    if (!separated) {
      // Re-draw the diagonal nodes and try again.
      std::vector<double> fresh;
      while (static_cast<int>(fresh.size()) < n) {
        double cand = static_cast<double>(rng.int_in(0, 8 * n));
        if (std::find(fresh.begin(), fresh.end(), cand) == fresh.end()) fresh.push_back(cand);
      }
      nodes = std::move(fresh);
      continue;
    }

    Eigen::MatrixXcd v(n, n);
    for (int i = 0; i < n; ++i) v.col(i) = es.eigenvectors().col(order[i]).normalized();
    Mat<Complex> g2m = from_eigen(v);
    Mat<Complex> g1m = from_eigen(v.inverse().transpose());
    Tensor3<Complex> t3 = act_axis(act_axis(t2, 1, g1m), 2, g2m);

    const double scale = std::max(frobenius(t3), 1e-300);
    if (off_diagonal_residual(t3) > opts.diagonal_tol * scale) {
      std::vector<double> fresh;
      while (static_cast<int>(fresh.size()) < n) {
        double cand = static_cast<double>(rng.int_in(0, 8 * n));
        if (std::find(fresh.begin(), fresh.end(), cand) == fresh.end()) fresh.push_back(cand);
      }
      nodes = std::move(fresh);
      continue;
    }

    Mat<Complex> zd = diagonals_matrix(t3);
    Mat<Complex> final3 = inverse(zd);

    Mat<Complex> f1 = e1 * g1m;
    Mat<Complex> f2 = e2 * g2m;
    Mat<Complex> f3 = e3 * h3 * final3;

    Decomposition d;
    d.g1 = inverse(f1);
    d.g2 = inverse(f2);
    d.g3 = inverse(f3);
    normalize_and_sort(d.g1, d.g2, d.g3);
    Tensor3<Complex> recon = d.reconstruct();
    const double pnorm = std::max(frobenius(p), 1e-300);
    d.residual = frobenius(recon - p) / pnorm;
    return d;
  }
  throw TriangularizationError("decompose: eigenvalue separation failed after node re-draws");
}

Decomposition decompose_in_orbit_exact(const Tensor3<Rational>& p, const MembershipOptions& opts) {
  const int n = p.n();
  SemiCanonical<Rational> sc = semi_canonical(p, 3, opts);

  if (scalar_is_zero(det(sc.diagonals)))
    throw IndeterminateError(
        "decompose: slice-diagonal matrix singular despite in-orbit verdict");

  std::array<Mat<Rational>, 3> e{sc.group.g1, sc.group.g2, sc.group.g3};
  Mat<Rational> h3 = inverse(sc.diagonals) * vandermonde_exact(n);
  Tensor3<Rational> t2 = act_axis(sc.tensor, 3, h3);

  Mat<Rational> b = slice(t2, 3, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (!b(i, j).is_zero())
        throw ExactnessLostError("decompose: transformed slice is not triangular");

  Mat<Rational> v(n, n);
  for (int j = 0; j < n; ++j) {
    auto col = triangular_eigenvector(b, j);
    for (int i = 0; i < n; ++i) v(i, j) = col[i];
  }
  Mat<Rational> vinv = inverse(v);
  Tensor3<Rational> t3 = act_axis(act_axis(t2, 1, vinv.transposed()), 2, v);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !t3.at(i, j, k).is_zero())
          throw ExactnessLostError("decompose: slices did not diagonalize exactly");

  Mat<Rational> zd = diagonals_matrix(t3);
  if (scalar_is_zero(det(zd)))
    throw IndeterminateError("decompose: diagonal system singular despite in-orbit verdict");

  std::array<Mat<Rational>, 3> f{e[0] * vinv.transposed(), e[1] * v, e[2] * h3 * inverse(zd)};
  std::array<Mat<Rational>, 3> g{inverse(f[0]), inverse(f[1]), inverse(f[2])};
  normalize_and_sort_exact(g);

  // Exact verification of P = D(g1, g2, g3).
  Tensor3<Rational> recon(n);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) recon.at(i, j, k) += g[0](c, i) * g[1](c, j) * g[2](c, k);
  if (!(recon == p))
    throw ExactnessLostError("decompose: exact reconstruction mismatch");

  Decomposition d;
  d.g1 = to_complex_mat(g[0]);
  d.g2 = to_complex_mat(g[1]);
  d.g3 = to_complex_mat(g[2]);
  d.exact_factors = g;
  d.residual = 0.0;
  d.notes.push_back("exact decomposition; reconstruction verified in rational arithmetic");
  return d;
}

// Constructive refinement of the float f-decision. After a commutation pass,
// orbit membership is equivalent to an invertible slice-diagonal matrix in
// the semi-canonical form; its conditioning is scale-free and stays readable
// at dimensions where the sampled |f| threshold is not informative.
std::optional<TriState> z_route_f_state(const Tensor3<Complex>& p, int axis,
                                        const MembershipOptions& opts) {
  try {
    SemiCanonical<Complex> sc = semi_canonical(p, axis, opts);
    const double cond = det_conditioning(sc.diagonals);
    if (cond > opts.z_cond_nonzero) return TriState::Pass;
    if (cond < opts.z_cond_zero) return TriState::Fail;
    return TriState::Indeterminate;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void combine_verdict(MembershipReport& rep) {
  bool any_comm_fail = false, all_comm_pass = true;
  bool any_full_pass = false, any_pass_with_f_fail = false;
  bool all_f_fail = true, any_f_pass = false;
  for (int i = 0; i < 3; ++i) {
    const TriState c = rep.commutation[i].status;
    const TriState f = rep.f_nonzero[i];
    if (c == TriState::Fail) any_comm_fail = true;
    if (c != TriState::Pass) all_comm_pass = false;
    if (c == TriState::Pass && f == TriState::Pass) any_full_pass = true;
    if (c == TriState::Pass && f == TriState::Fail) any_pass_with_f_fail = true;
    if (f != TriState::Fail) all_f_fail = false;
    if (f == TriState::Pass) any_f_pass = true;
  }

  const bool contradiction =
      (any_full_pass && (any_comm_fail || any_pass_with_f_fail)) ||
      (all_comm_pass && any_f_pass && any_pass_with_f_fail);
  if (contradiction) {
    rep.cross_axis_consistent = false;
    rep.verdict = Verdict::Indeterminate;
    rep.detail = "axes disagree where the theory requires agreement; numerical trouble";
    return;
  }
  if (any_full_pass) {
    rep.verdict = Verdict::InOrbit;
    rep.detail = "commutation relations hold and f is nonzero";
    return;
  }
  if (any_comm_fail) {
    rep.verdict = Verdict::Outside;
    rep.detail = "a commutation relation fails; tensor is outside the known relaxation";
    return;
  }
  if (all_comm_pass && all_f_fail) {
    rep.verdict = Verdict::Boundary;
    rep.detail = "boundary: border rank <= n, not in orbit";
    return;
  }
  rep.verdict = Verdict::Indeterminate;
  rep.detail = "thresholds were inconclusive";
}

}  // namespace

MembershipReport classify(const Tensor3<Rational>& p, const MembershipOptions& opts) {
  check_dim(p.n());
  const int n = p.n();
  MembershipReport rep;
  rep.exact_backend = true;
  rep.n = n;
  for (int axis = 1; axis <= 3; ++axis) {
    rep.commutation.push_back(commutation_residuals(p, axis));
    const bool hs = slice_nonsingular(p, axis);
    rep.slice_nonsingular_axis.push_back(hs);
    TriState f = TriState::Indeterminate;
    if (!hs) {
      f = TriState::Fail;  // h identically zero forces f identically zero
    } else if (n <= kMaxSymbolicFDim) {
      f = f_covariant(p, axis).poly.is_zero() ? TriState::Fail : TriState::Pass;
    } else {
      Rng rng(Rng::derive(opts.seed, "exact-f-sample", static_cast<std::uint64_t>(axis)));
      bool found = false;
      for (int s = 0; s < opts.x_samples && !found; ++s) {
        std::vector<Rational> x0 = random_rational_point(rng, n);
        if (!f_eval(p, axis, x0).is_zero()) found = true;
      }
      f = found ? TriState::Pass : TriState::Indeterminate;
      if (!found)
        rep.notes.push_back("f sampling found no nonzero value; vanishing not certified for n > 5");
    }
    rep.f_nonzero.push_back(f);
  }
  combine_verdict(rep);
  return rep;
}

MembershipReport classify(const Tensor3<Complex>& p, const MembershipOptions& opts) {
  check_dim(p.n());
  require_finite(p);
  const int n = p.n();
  MembershipReport rep;
  rep.exact_backend = false;
  rep.n = n;
  const double pnorm = frobenius(p);
  if (pnorm == 0.0) {
    for (int axis = 1; axis <= 3; ++axis) {
      rep.commutation.push_back(commutation_residuals(p, axis, opts));
      rep.slice_nonsingular_axis.push_back(false);
      rep.f_nonzero.push_back(TriState::Fail);
    }
    combine_verdict(rep);
    return rep;
  }
  const double f_threshold = opts.f_tol * std::pow(pnorm, n * n);
  for (int axis = 1; axis <= 3; ++axis) {
    rep.commutation.push_back(commutation_residuals(p, axis, opts));
    rep.slice_nonsingular_axis.push_back(slice_nonsingular(p, axis, opts));
    Rng rng(Rng::derive(opts.seed, "f-sample", static_cast<std::uint64_t>(axis)));
    double best = 0.0;
    int used = 0;
    for (int s = 0; s < 4 * opts.x_samples && used < opts.x_samples; ++s) {
      std::vector<Complex> x0 = random_real_unit(rng, n);
      try {
        best = std::max(best, std::abs(f_eval(p, axis, x0)));
        ++used;
      } catch (const SingularEvaluationError&) {
        // Pencil singular at this sample; draw another point.
      }
    }
    TriState f_state =
        used == 0 ? TriState::Indeterminate : magnitude_state(best, f_threshold, opts.band);
    if (rep.commutation.back().status != TriState::Fail && f_state != TriState::Pass) {
      if (auto z = z_route_f_state(p, axis, opts)) {
        if (*z != f_state)
          rep.notes.push_back("axis " + std::to_string(axis) +
                              ": f decision refined via the semi-canonical slice diagonal");
        f_state = *z;
      }
    }
    rep.f_nonzero.push_back(f_state);
  }
  combine_verdict(rep);
  return rep;
}

Decomposition decompose(const Tensor3<Complex>& p, const MembershipOptions& opts) {
  MembershipReport rep = classify(p, opts);
  if (rep.verdict != Verdict::InOrbit) throw NotInOrbitError(std::move(rep));
  return decompose_in_orbit_float(p, opts);
}

Decomposition decompose(const Tensor3<Rational>& p, const MembershipOptions& opts) {
  MembershipReport rep = classify(p, opts);
  if (rep.verdict != Verdict::InOrbit) throw NotInOrbitError(std::move(rep));
  try {
    return decompose_in_orbit_exact(p, opts);
  } catch (const ExactnessLostError& e) {
    Decomposition d = decompose_in_orbit_float(to_complex_tensor(p), opts);
    d.notes.push_back(std::string("exact path degraded to float: ") + e.what());
    return d;
  }
}

}  // namespace tenrank

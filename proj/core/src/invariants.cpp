#include "tenrank/invariants.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <future>
#include <thread>

namespace tenrank {

PolyMatrix<Rational> slice_pencil(const Tensor3<Rational>& p, int axis) {
  const int n = p.n();
  PolyMatrix<Rational> m(n, n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      PolyQ e(n);
      for (int v = 0; v < n; ++v) {
        const Rational& c =
            axis == 1 ? p.at(v, a, b) : (axis == 2 ? p.at(a, v, b) : p.at(a, b, v));
        if (c.is_zero()) continue;
        Monomial mono(n, 0);
        mono[v] = 1;
        e.add_term(std::move(mono), c);
      }
      m(a, b) = std::move(e);
    }
  return m;
}

namespace {

void check_axis(int axis) {
  if (axis < 1 || axis > 3) throw DimensionError("covariant: axis must be 1, 2, or 3");
}

void check_min_dim(const int n) {
  if (n < 2) throw UnsupportedDimensionError("covariants require n >= 2");
}

int hessian_sign(int n) { return (n % 2 == 1) ? 1 : -1; }

}  // namespace

CovariantValue h_covariant(const Tensor3<Rational>& p, int axis) {
  check_axis(axis);
  check_min_dim(p.n());
  return CovariantValue{axis, poly_det(slice_pencil(p, axis)), p.n(), p.n()};
}

CovariantValue f_covariant(const Tensor3<Rational>& p, int axis) {
  check_axis(axis);
  check_min_dim(p.n());
  const int n = p.n();
  if (n > kMaxSymbolicFDim)
    throw UnsupportedDimensionError(
        "symbolic f is limited to n <= 5; use f_eval for pointwise values");
  CovariantValue h = h_covariant(p, axis);
  PolyQ det = poly_det(hessian(h.poly));
  PolyQ f = (hessian_sign(n) > 0) ? std::move(det) : -det;
  return CovariantValue{axis, std::move(f), n * n, n * (n - 2)};
}

Rational h_eval(const Tensor3<Rational>& p, int axis, std::span<const Rational> x0) {
  check_axis(axis);
  const int n = p.n();
  if (static_cast<int>(x0.size()) != n) throw DimensionError("h_eval: point length mismatch");
  return det(contract(p, axis, x0));
}

Complex h_eval(const Tensor3<Complex>& p, int axis, std::span<const Complex> x0) {
  check_axis(axis);
  const int n = p.n();
  if (static_cast<int>(x0.size()) != n) throw DimensionError("h_eval: point length mismatch");
  return to_eigen(contract(p, axis, x0)).determinant();
}

Rational f_eval(const Tensor3<Rational>& p, int axis, std::span<const Rational> x0) {
  check_axis(axis);
  check_min_dim(p.n());
  const int n = p.n();
  if (static_cast<int>(x0.size()) != n) throw DimensionError("f_eval: point length mismatch");
  // Hessian of the exact pencil determinant, evaluated entrywise at x0.
  PolyQ h = poly_det(slice_pencil(p, axis));
  PolyMatrix<Rational> hess = hessian(h);
  Mat<Rational> value(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) value(a, b) = hess(a, b).evaluate(x0);
  Rational d = det(value);
  return hessian_sign(n) > 0 ? d : -d;
}

Complex f_eval(const Tensor3<Complex>& p, int axis, std::span<const Complex> x0) {
  check_axis(axis);
  check_min_dim(p.n());
  const int n = p.n();
  if (static_cast<int>(x0.size()) != n) throw DimensionError("f_eval: point length mismatch");
  // With A(x) = sum x_v S_v and B_a = A^{-1} S_a:
  //   d^2/dx_a dx_b det A = det A (tr B_a tr B_b - tr(B_a B_b)).
  Eigen::MatrixXcd a = to_eigen(contract(p, axis, x0));
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  Complex deta = lu.determinant();
  if (std::abs(deta) == 0.0)
    throw SingularEvaluationError("f_eval: singular slice pencil at x0; retry another point");
  std::vector<Eigen::MatrixXcd> b(n);
  std::vector<Complex> trb(n);
  for (int v = 0; v < n; ++v) {
    std::vector<Complex> e(n, Complex(0));
    e[v] = Complex(1);
    b[v] = lu.solve(to_eigen(contract(p, axis, e)));
    trb[v] = b[v].trace();
  }
  Eigen::MatrixXcd hess(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      Complex huv = deta * (trb[u] * trb[v] - (b[u] * b[v]).trace());
      hess(u, v) = huv;
      hess(v, u) = huv;
    }
  Complex d = hess.determinant();
  return hessian_sign(n) > 0 ? d : -d;
}

Rational r_eval(const Tensor3<Rational>& p, int axis, std::span<const Rational> x0) {
  const int n = p.n();
  check_min_dim(n);
  Rational h = h_eval(p, axis, x0);
  if (h.is_zero())
    throw SingularEvaluationError("r_eval: h vanishes at x0; retry another point");
  Rational f = f_eval(p, axis, x0);
  return f / (Rational(n - 1) * h.pow(static_cast<unsigned>(n - 2)));
}

Complex r_eval(const Tensor3<Complex>& p, int axis, std::span<const Complex> x0) {
  const int n = p.n();
  check_min_dim(n);
  Complex h = h_eval(p, axis, x0);
  if (std::abs(h) == 0.0)
    throw SingularEvaluationError("r_eval: h vanishes at x0; retry another point");
  Complex f = f_eval(p, axis, x0);
  Complex denom = Complex(static_cast<double>(n - 1), 0.0);
  for (int k = 0; k < n - 2; ++k) denom *= h;
  return f / denom;
}

namespace {

struct Perm3 {
  std::array<int, 3> p;
  int sign;
};

struct Perm4 {
  std::array<int, 4> p;
  int sign;
};

const std::array<Perm3, 6>& perms3() {
  static const std::array<Perm3, 6> table = [] {
    std::array<Perm3, 6> t{};
    std::array<int, 3> v{0, 1, 2};
    int idx = 0;
    // Enumerate in lexicographic order; sign by inversion count.
    do {
      int inv = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          if (v[a] > v[b]) ++inv;
      t[idx++] = Perm3{v, (inv % 2 == 0) ? 1 : -1};
    } while (std::next_permutation(v.begin(), v.end()));
    return t;
  }();
  return table;
}

const std::array<Perm4, 24>& perms4() {
  static const std::array<Perm4, 24> table = [] {
    std::array<Perm4, 24> t{};
    std::array<int, 4> v{0, 1, 2, 3};
    int idx = 0;
    do {
      int inv = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
          if (v[a] > v[b]) ++inv;
      t[idx++] = Perm4{v, (inv % 2 == 0) ? 1 : -1};
    } while (std::next_permutation(v.begin(), v.end()));
    return t;
  }();
  return table;
}

// Six Levi-Civita factors contract the 18 indices of six tensor entries; a
// permutation choice per factor fixes every index. Loop nesting is chosen so
// each level completes at least one tensor entry for early pruning.
template <typename S>
S tangle3_generic(const Tensor3<S>& p) {
  const auto& ps = perms3();
  S total(0);
  for (const auto& s1 : ps) {
    for (const auto& s2 : ps) {
      for (const auto& s3 : ps) {
        const S& pk = p.at(s1.p[2], s2.p[1], s3.p[0]);
        if (scalar_is_zero(pk)) continue;
        for (const auto& s4 : ps) {
          const S& pl = p.at(s4.p[0], s2.p[2], s3.p[1]);
          if (scalar_is_zero(pl)) continue;
          S pkl = pk * pl;
          for (const auto& s5 : ps) {
            const S& pm = p.at(s4.p[1], s5.p[0], s3.p[2]);
            if (scalar_is_zero(pm)) continue;
            S pklm = pkl * pm;
            int outer_sign = s1.sign * s2.sign * s3.sign * s4.sign * s5.sign;
            for (const auto& s6 : ps) {
              const S& pi = p.at(s1.p[0], s5.p[2], s6.p[1]);
              if (scalar_is_zero(pi)) continue;
              const S& pj = p.at(s1.p[1], s2.p[0], s6.p[2]);
              if (scalar_is_zero(pj)) continue;
              const S& pn = p.at(s4.p[2], s5.p[1], s6.p[0]);
              if (scalar_is_zero(pn)) continue;
              S term = pklm * pi * pj * pn;
              if (outer_sign * s6.sign > 0)
                total += term;
              else
                total -= term;
            }
          }
        }
      }
    }
  }
  return total;
}

void check_dim_is(const int n, int want, const char* what) {
  if (n != want)
    throw UnsupportedDimensionError(std::string(what) + " requires n = " + std::to_string(want));
}

inline bool entry_is_zero(std::int64_t v) { return v == 0; }
inline bool entry_is_zero(const mpz_class& v) { return v == 0; }
inline bool entry_is_zero(const Complex& v) { return v.real() == 0.0 && v.imag() == 0.0; }

// One outer-permutation stripe of the 4-tangle sum over a generic scalar.
template <typename S, typename Entry>
S tangle4_stripe(const std::vector<Entry>& e, int stripe,
                 const std::function<S(const Entry&)>& lift) {
  const auto& ps = perms4();
  auto at = [&](int i, int j, int k) -> const Entry& { return e[(i * 4 + j) * 4 + k]; };
  const auto& sa = ps[stripe];
  S total(0);
  for (const auto& sc : ps) {
    for (const auto& se : ps) {
      const Entry& pi = at(sa.p[0], sc.p[0], se.p[0]);
      if (entry_is_zero(pi)) continue;
      S vi = lift(pi);
      for (const auto& sb : ps) {
        const Entry& pm = at(sb.p[0], sc.p[2], se.p[2]);
        if (entry_is_zero(pm)) continue;
        S vim = vi * lift(pm);
        for (const auto& sd : ps) {
          const Entry& pj = at(sa.p[1], sd.p[0], se.p[1]);
          if (entry_is_zero(pj)) continue;
          const Entry& pn = at(sb.p[1], sd.p[2], se.p[3]);
          if (entry_is_zero(pn)) continue;
          S vimjn = vim * lift(pj) * lift(pn);
          int outer_sign = sa.sign * sb.sign * sc.sign * sd.sign * se.sign;
          for (const auto& sf : ps) {
            const Entry& pk = at(sa.p[2], sd.p[1], sf.p[0]);
            if (entry_is_zero(pk)) continue;
            const Entry& pl = at(sa.p[3], sc.p[1], sf.p[1]);
            if (entry_is_zero(pl)) continue;
            const Entry& pr = at(sb.p[2], sd.p[3], sf.p[2]);
            if (entry_is_zero(pr)) continue;
            const Entry& psent = at(sb.p[3], sc.p[3], sf.p[3]);
            if (entry_is_zero(psent)) continue;
            S term = vimjn * lift(pk) * lift(pl) * lift(pr) * lift(psent);
            if (outer_sign * sf.sign > 0)
              total += term;
            else
              total -= term;
          }
        }
      }
    }
  }
  return total;
}

// Integer stripe with 128-bit accumulation. Entry magnitudes are capped by
// the caller so that |entry|^8 * 24^5 cannot overflow.
__int128 tangle4_stripe_i64(const std::vector<std::int64_t>& e, int stripe) {
  const auto& ps = perms4();
  auto at = [&](int i, int j, int k) { return e[(i * 4 + j) * 4 + k]; };
  const auto& sa = ps[stripe];
  __int128 total = 0;
  for (const auto& sc : ps) {
    for (const auto& se : ps) {
      const std::int64_t pi = at(sa.p[0], sc.p[0], se.p[0]);
      if (pi == 0) continue;
      for (const auto& sb : ps) {
        const std::int64_t pm = at(sb.p[0], sc.p[2], se.p[2]);
        if (pm == 0) continue;
        const std::int64_t vim = pi * pm;
        for (const auto& sd : ps) {
          const std::int64_t pj = at(sa.p[1], sd.p[0], se.p[1]);
          if (pj == 0) continue;
          const std::int64_t pn = at(sb.p[1], sd.p[2], se.p[3]);
          if (pn == 0) continue;
          const std::int64_t vimjn = vim * pj * pn;
          const int outer_sign = sa.sign * sb.sign * sc.sign * sd.sign * se.sign;
          for (const auto& sf : ps) {
            const std::int64_t pk = at(sa.p[2], sd.p[1], sf.p[0]);
            if (pk == 0) continue;
            const std::int64_t pl = at(sa.p[3], sc.p[1], sf.p[1]);
            if (pl == 0) continue;
            const std::int64_t pr = at(sb.p[2], sd.p[3], sf.p[2]);
            if (pr == 0) continue;
            const std::int64_t pq = at(sb.p[3], sc.p[3], sf.p[3]);
            if (pq == 0) continue;
            const __int128 term =
                static_cast<__int128>(vimjn) * pk * pl * (static_cast<__int128>(pr) * pq);
            total += (outer_sign * sf.sign > 0) ? term : -term;
          }
        }
      }
    }
  }
  return total;
}

mpz_class mpz_from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

// Runs the 24 outer stripes, possibly across threads, and combines partial
// sums in stripe order (exact arithmetic, so regrouping is associative).
template <typename Partial, typename Fn>
std::vector<Partial> run_stripes(Fn&& fn) {
  const unsigned workers =
      std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
  std::vector<Partial> partials(24);
  if (workers <= 1) {
    for (int s = 0; s < 24; ++s) partials[s] = fn(s);
    return partials;
  }
  std::vector<std::future<Partial>> futs;
  futs.reserve(24);
  for (int s = 0; s < 24; ++s)
    futs.push_back(std::async(std::launch::async, [&fn, s] { return fn(s); }));
  for (int s = 0; s < 24; ++s) partials[s] = futs[s].get();
  return partials;
}

}  // namespace

Rational tangle3(const Tensor3<Rational>& p) {
  check_dim_is(p.n(), 3, "tangle3");
  return tangle3_generic(p);
}

Complex tangle3(const Tensor3<Complex>& p) {
  check_dim_is(p.n(), 3, "tangle3");
  return tangle3_generic(p);
}

Rational tangle4(const Tensor3<Rational>& p) {
  check_dim_is(p.n(), 4, "tangle4");
  // Clear denominators; tangle4 is homogeneous of degree 8, so
  // tangle4(P) = tangle4(L P) / L^8.
  mpz_class lcm_den(1);
  for (const auto& e : p.data()) {
    mpz_class den = e.denominator();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<mpz_class> ints;
  ints.reserve(64);
  mpz_class max_abs(0);
  for (const auto& e : p.data()) {
    mpz_class v = e.numerator() * (lcm_den / e.denominator());
    if (abs(v) > max_abs) max_abs = abs(v);
    ints.push_back(std::move(v));
  }

  mpz_class total(0);
  // |entry| <= 2^12 keeps |term| <= 2^96 and the stripe sum within int128.
  if (max_abs <= 4096) {
    std::vector<std::int64_t> fast(64);
    for (size_t i = 0; i < 64; ++i) fast[i] = static_cast<std::int64_t>(ints[i].get_si());
    auto partials = run_stripes<__int128>(
        [&fast](int s) { return tangle4_stripe_i64(fast, s); });
    __int128 sum = 0;
    for (const auto& v : partials) sum += v;
    total = mpz_from_i128(sum);
  } else {
    std::function<mpz_class(const mpz_class&)> lift = [](const mpz_class& v) { return v; };
    auto partials = run_stripes<mpz_class>(
        [&](int s) { return tangle4_stripe<mpz_class, mpz_class>(ints, s, lift); });
    for (const auto& v : partials) total += v;
  }

  mpz_class scale(1);
  for (int k = 0; k < 8; ++k) scale *= lcm_den;
  return Rational(mpq_class(total, scale));
}

Complex tangle4(const Tensor3<Complex>& p) {
  check_dim_is(p.n(), 4, "tangle4");
  std::function<Complex(const Complex&)> lift = [](const Complex& v) { return v; };
  auto partials = run_stripes<Complex>(
      [&](int s) { return tangle4_stripe<Complex, Complex>(p.data(), s, lift); });
  // Fixed-order reduction keeps the float result independent of threading.
  Complex total(0);
  for (const auto& v : partials) total += v;
  return total;
}

CovariantValue tangle_covariant(const Tensor3<Rational>& p, int axis) {
  check_axis(axis);
  const int n = p.n();
  if (n != 3 && n != 4)
    throw UnsupportedDimensionError("tangle_covariant requires n in {3, 4}");
  Rational t = (n == 3) ? tangle3(p) : tangle4(p);
  CovariantValue h = h_covariant(p, axis);
  PolyQ g = t * h.poly.pow(static_cast<unsigned>(n - 2));
  return CovariantValue{axis, std::move(g), n * n, n * (n - 2)};
}

}  // namespace tenrank

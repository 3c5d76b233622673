#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tenrank/matrix.hpp"
#include "tenrank/rational.hpp"

namespace tenrank {

/// Exponent vector; one entry per variable.
using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t monomial_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint32_t{0});
}

/// Graded lexicographic term order, descending: higher total degree first,
/// ties broken by lexicographically larger exponent vector. This is the
/// canonical print and storage order.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto da = monomial_degree(a);
    const auto db = monomial_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse multivariate polynomial with exact coefficients. No zero
/// coefficients are stored; equality is equality of term maps.
template <typename C>
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, C, GradedLexGreater>;

  explicit MultiPoly(int nvars) : nvars_(nvars) {
    if (nvars < 0) throw DimensionError("MultiPoly: negative variable count");
  }

  static MultiPoly constant(int nvars, C c) {
    MultiPoly p(nvars);
    p.add_term(Monomial(nvars, 0), std::move(c));
    return p;
  }

  static MultiPoly variable(int nvars, int v) {
    if (v < 0 || v >= nvars) throw DimensionError("MultiPoly: variable index out of range");
    MultiPoly p(nvars);
    Monomial m(nvars, 0);
    m[v] = 1;
    p.add_term(std::move(m), C(1));
    return p;
  }

  static MultiPoly monomial(int nvars, Monomial m, C c) {
    if (static_cast<int>(m.size()) != nvars)
      throw DimensionError("MultiPoly: monomial length mismatch");
    MultiPoly p(nvars);
    p.add_term(std::move(m), std::move(c));
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(monomial_degree(terms_.begin()->first));
  }

  int degree_in(int v) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[v]));
    return d;
  }

  void add_term(Monomial m, C c) {
    if (static_cast<int>(m.size()) != nvars_)
      throw DimensionError("MultiPoly: exponent vector length mismatch");
    if (scalar_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), std::move(c));
    } else {
      it->second += c;
      if (scalar_is_zero(it->second)) terms_.erase(it);
    }
  }

  C coefficient(const Monomial& m) const {
    if (static_cast<int>(m.size()) != nvars_)
      throw DimensionError("MultiPoly: exponent vector length mismatch");
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& o) {
    check_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { a += b; return a; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { a -= b; return a; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_vars(b);
    MultiPoly r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(a.nvars_);
        for (int v = 0; v < a.nvars_; ++v) m[v] = ma[v] + mb[v];
        r.add_term(std::move(m), ca * cb);
      }
    }
    return r;
  }

  friend MultiPoly operator*(const C& c, const MultiPoly& a) {
    MultiPoly r(a.nvars_);
    if (scalar_is_zero(c)) return r;
    for (const auto& [m, coeff] : a.terms_) r.terms_.emplace(m, c * coeff);
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned e) const {
    MultiPoly r = constant(nvars_, C(1));
    MultiPoly base = *this;
    while (e > 0) {
      if (e & 1u) r = r * base;
      if (e >>= 1u) base = base * base;
    }
    return r;
  }

  MultiPoly derivative(int v) const {
    if (v < 0 || v >= nvars_) throw DimensionError("MultiPoly: variable index out of range");
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[v] == 0) continue;
      Monomial d = m;
      d[v] -= 1;
      r.add_term(std::move(d), C(static_cast<long>(m[v])) * c);
    }
    return r;
  }

  /// Evaluates with a caller-supplied coefficient cast, so exact polynomials
  /// can be evaluated at exact or floating points.
  template <typename T, typename Cast>
  T evaluate_as(std::span<const T> point, Cast cast) const {
    if (static_cast<int>(point.size()) != nvars_)
      throw DimensionError("MultiPoly: evaluation point length mismatch");
    T acc(0);
    for (const auto& [m, c] : terms_) {
      T t = cast(c);
      for (int v = 0; v < nvars_; ++v)
        for (std::uint32_t e = 0; e < m[v]; ++e) t *= point[v];
      acc += t;
    }
    return acc;
  }

  C evaluate(std::span<const C> point) const {
    return evaluate_as<C>(point, [](const C& c) { return c; });
  }

  Complex evaluate_complex(std::span<const Complex> point) const {
    return evaluate_as<Complex>(point, [](const C& c) { return scalar_to_complex(c); });
  }

  /// Fixes one variable to a scalar value; the variable count is unchanged,
  /// the exponent in that slot becomes zero.
  MultiPoly substitute_value(int v, const C& value) const {
    if (v < 0 || v >= nvars_) throw DimensionError("MultiPoly: variable index out of range");
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      C scaled = c;
      for (std::uint32_t e = 0; e < m[v]; ++e) scaled *= value;
      Monomial mm = m;
      mm[v] = 0;
      r.add_term(std::move(mm), std::move(scaled));
    }
    return r;
  }

  /// Substitutes x <- g x (g square of size nvars) and expands exactly.
  MultiPoly substitute_linear(const Mat<C>& g) const {
    if (g.rows() != nvars_ || g.cols() != nvars_)
      throw DimensionError("substitute_linear: matrix must be nvars x nvars");
    // Replacement image of x_v, and memoized powers of it.
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    for (int v = 0; v < nvars_; ++v) {
      MultiPoly img(nvars_);
      for (int j = 0; j < nvars_; ++j) {
        if (scalar_is_zero(g(v, j))) continue;
        Monomial m(nvars_, 0);
        m[j] = 1;
        img.add_term(std::move(m), g(v, j));
      }
      powers[v].push_back(constant(nvars_, C(1)));
      powers[v].push_back(std::move(img));
    }
    auto power_of = [&](int v, std::uint32_t e) -> const MultiPoly& {
      auto& tower = powers[v];
      while (tower.size() <= e) tower.push_back(tower.back() * tower[1]);
      return tower[e];
    };
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      MultiPoly t = constant(nvars_, c);
      for (int v = 0; v < nvars_; ++v)
        if (m[v] > 0) t = t * power_of(v, m[v]);
      r += t;
    }
    return r;
  }

  /// Canonical text form, graded-lex term order: `2*x1*x2*x3 + -1*x3^3`.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += scalar_str(c);
      for (int v = 0; v < nvars_; ++v) {
        if (m[v] == 0) continue;
        out += "*x" + std::to_string(v + 1);
        if (m[v] > 1) out += "^" + std::to_string(m[v]);
      }
    }
    return out;
  }

 private:
  void check_vars(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw DimensionError("MultiPoly: variable count mismatch");
  }

  int nvars_;
  TermMap terms_;
};

using PolyQ = MultiPoly<Rational>;
using PolyGQ = MultiPoly<GaussianRational>;

/// Matrix of polynomials. All entries share the same variable count.
template <typename C>
class PolyMatrix {
 public:
  PolyMatrix(int rows, int cols, int nvars)
      : rows_(rows), cols_(cols), nvars_(nvars),
        a_(static_cast<size_t>(rows) * cols, MultiPoly<C>(nvars)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }

  MultiPoly<C>& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const MultiPoly<C>& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  PolyMatrix submatrix_excluding(int row, int col) const {
    PolyMatrix s(rows_ - 1, cols_ - 1, nvars_);
    for (int i = 0, si = 0; i < rows_; ++i) {
      if (i == row) continue;
      for (int j = 0, sj = 0; j < cols_; ++j) {
        if (j == col) continue;
        s(si, sj) = (*this)(i, j);
        ++sj;
      }
      ++si;
    }
    return s;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_ || a.nvars_ != b.nvars_)
      throw DimensionError("PolyMatrix: product mismatch");
    PolyMatrix r(a.rows_, b.cols_, a.nvars_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) {
          if (b(k, j).is_zero()) continue;
          r(i, j) += aik * b(k, j);
        }
      }
    return r;
  }

  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.nvars_ != b.nvars_)
      throw DimensionError("PolyMatrix: difference mismatch");
    PolyMatrix r(a.rows_, a.cols_, a.nvars_);
    for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
    return r;
  }

  /// Lifts a scalar matrix to constant polynomial entries.
  static PolyMatrix lift(const Mat<C>& m, int nvars) {
    PolyMatrix r(m.rows(), m.cols(), nvars);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (!scalar_is_zero(m(i, j))) r(i, j) = MultiPoly<C>::constant(nvars, m(i, j));
    return r;
  }

 private:
  int rows_, cols_, nvars_;
  std::vector<MultiPoly<C>> a_;
};

/// Exact division f / g for a known-exact multivariate quotient. Throws if
/// the division leaves a remainder.
template <typename C>
MultiPoly<C> divide_exact(MultiPoly<C> f, const MultiPoly<C>& g) {
  if (g.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
  const int nvars = f.nvars();
  MultiPoly<C> q(nvars);
  const auto& glead = *g.terms().begin();
  while (!f.is_zero()) {
    const auto& flead = *f.terms().begin();
    Monomial m(nvars);
    for (int v = 0; v < nvars; ++v) {
      if (flead.first[v] < glead.first[v])
        throw std::domain_error("divide_exact: inexact polynomial division");
      m[v] = flead.first[v] - glead.first[v];
    }
    MultiPoly<C> t = MultiPoly<C>::monomial(nvars, std::move(m), flead.second / glead.second);
    q += t;
    f -= t * g;
  }
  return q;
}

namespace detail {

// Cofactor expansion over column subsets, memoized on the column mask.
template <typename C>
MultiPoly<C> det_cofactor(const PolyMatrix<C>& m, int row, std::uint32_t colmask,
                          std::map<std::uint32_t, MultiPoly<C>>& memo) {
  const int n = m.rows();
  if (row == n) return MultiPoly<C>::constant(m.nvars(), C(1));
  if (auto it = memo.find(colmask); it != memo.end()) return it->second;
  MultiPoly<C> acc(m.nvars());
  int parity = 0;
  for (int j = 0; j < n; ++j) {
    if (!(colmask & (1u << j))) continue;
    if (!m(row, j).is_zero()) {
      MultiPoly<C> sub = det_cofactor(m, row + 1, colmask & ~(1u << j), memo);
      MultiPoly<C> contrib = m(row, j) * sub;
      if (parity % 2 == 0)
        acc += contrib;
      else
        acc -= contrib;
    }
    ++parity;
  }
  memo.emplace(colmask, acc);
  return acc;
}

// Fraction-free Bareiss elimination over the polynomial ring.
template <typename C>
MultiPoly<C> det_bareiss(const PolyMatrix<C>& m) {
  const int n = m.rows();
  PolyMatrix<C> w = m;
  bool negate = false;
  MultiPoly<C> prev = MultiPoly<C>::constant(m.nvars(), C(1));
  for (int k = 0; k < n - 1; ++k) {
    if (w(k, k).is_zero()) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (!w(i, k).is_zero()) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return MultiPoly<C>(m.nvars());
      for (int j = 0; j < n; ++j) std::swap(w(k, j), w(swap_row, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        MultiPoly<C> num = w(i, j) * w(k, k) - w(i, k) * w(k, j);
        w(i, j) = num.is_zero() ? std::move(num) : divide_exact(std::move(num), prev);
      }
      w(i, k) = MultiPoly<C>(m.nvars());
    }
    prev = w(k, k);
  }
  return negate ? -w(n - 1, n - 1) : w(n - 1, n - 1);
}

}  // namespace detail

/// Exact determinant of a polynomial matrix. Cofactor expansion with memoized
/// minors up to 4x4; fraction-free Bareiss beyond, where cofactor blowup
/// dominates.
template <typename C>
MultiPoly<C> poly_det(const PolyMatrix<C>& m) {
  if (m.rows() != m.cols()) throw DimensionError("poly_det: non-square matrix");
  const int n = m.rows();
  if (n == 0) return MultiPoly<C>::constant(m.nvars(), C(1));
  if (n <= 4) {
    std::map<std::uint32_t, MultiPoly<C>> memo;
    return detail::det_cofactor(m, 0, (1u << n) - 1, memo);
  }
  return detail::det_bareiss(m);
}

/// A point where a nonzero polynomial provably does not vanish, found by a
/// per-variable sweep over {0, ..., deg}: a polynomial of degree d in one
/// variable cannot vanish identically at d+1 distinct values.
template <typename C>
std::vector<C> nonvanishing_point(MultiPoly<C> p) {
  if (p.is_zero()) throw std::domain_error("nonvanishing_point: zero polynomial");
  const int n = p.nvars();
  std::vector<C> point(n, C(0));
  for (int v = 0; v < n; ++v) {
    const int d = p.degree_in(v);
    for (long t = 0; t <= d; ++t) {
      MultiPoly<C> q = p.substitute_value(v, C(t));
      if (!q.is_zero()) {
        point[v] = C(t);
        p = std::move(q);
        break;
      }
    }
  }
  return point;
}

/// Classical adjoint of a polynomial matrix via cofactors.
template <typename C>
PolyMatrix<C> poly_adjugate(const PolyMatrix<C>& m) {
  if (m.rows() != m.cols()) throw DimensionError("poly_adjugate: non-square matrix");
  const int n = m.rows();
  PolyMatrix<C> adj(n, n, m.nvars());
  if (n == 1) {
    adj(0, 0) = MultiPoly<C>::constant(m.nvars(), C(1));
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiPoly<C> c = poly_det(m.submatrix_excluding(i, j));
      adj(j, i) = ((i + j) % 2 == 0) ? std::move(c) : -c;
    }
  return adj;
}

/// Hessian with respect to a subset of the variables (all by default).
template <typename C>
PolyMatrix<C> hessian(const MultiPoly<C>& p, std::span<const int> vars) {
  const int k = static_cast<int>(vars.size());
  PolyMatrix<C> h(k, k, p.nvars());
  std::vector<MultiPoly<C>> first;
  first.reserve(k);
  for (int a = 0; a < k; ++a) first.push_back(p.derivative(vars[a]));
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      h(a, b) = first[a].derivative(vars[b]);
      if (b != a) h(b, a) = h(a, b);
    }
  return h;
}

template <typename C>
PolyMatrix<C> hessian(const MultiPoly<C>& p) {
  std::vector<int> vars(p.nvars());
  std::iota(vars.begin(), vars.end(), 0);
  return hessian(p, std::span<const int>(vars));
}

}  // namespace tenrank

#include "tenrank/families.hpp"

#include <cmath>
#include <numbers>

namespace tenrank {

namespace {

void check_family_dim(int n) {
  if (n < 2) throw InvalidTensorError("family generators require n >= 2");
}

Mat<Rational> shift_matrix(int n) {
  Mat<Rational> s(n, n);
  for (int i = 0; i + 1 < n; ++i) s(i, i + 1) = Rational(1);
  return s;
}

Tensor3<Rational> from_3slices(const std::vector<Mat<Rational>>& slices) {
  const int n = static_cast<int>(slices.size());
  Tensor3<Rational> t(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.at(i, j, k) = slices[k](i, j);
  return t;
}

}  // namespace

Tensor3<Complex> Rank1Term::tensor() const {
  const int n = static_cast<int>(u.size());
  Tensor3<Complex> t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t.at(i, j, k) = weight * u[i] * v[j] * w[k];
  return t;
}

Tensor3<Rational> gen_kn(int n) {
  check_family_dim(n);
  Tensor3<Rational> t(n);
  // Entry 1 exactly when j = i + k (0-based k counts the slice).
  for (int k = 0; k < n; ++k)
    for (int i = 0; i + k < n; ++i) t.at(i, i + k, k) = Rational(1);
  return t;
}

Tensor3<Rational> gen_kn_eps(int n, const Rational& eps) {
  check_family_dim(n);
  Mat<Rational> s2 = shift_matrix(n);
  for (int i = 0; i < n; ++i) s2(i, i) = Rational(i) * eps;
  std::vector<Mat<Rational>> slices;
  slices.push_back(Mat<Rational>::identity(n));
  Mat<Rational> power = Mat<Rational>::identity(n);
  for (int j = 1; j < n; ++j) {
    power = power * s2;
    slices.push_back(power);
  }
  return from_3slices(slices);
}

Tensor3<Rational> gen_kn_prime(int n) {
  check_family_dim(n);
  Tensor3<Rational> t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i + j + k == n - 1) t.at(i, j, k) = Rational(1);
  return t;
}

std::vector<Rank1Term> kn_prime_decomposition(int n) {
  check_family_dim(n);
  const int r = 2 * n - 1;
  const double theta = 2.0 * std::numbers::pi / static_cast<double>(r);
  auto zeta_pow = [&](long e) {
    const long m = ((e % r) + r) % r;
    return std::polar(1.0, theta * static_cast<double>(m));
  };
  std::vector<Rank1Term> terms;
  terms.reserve(r);
  for (int l = 1; l <= r; ++l) {
    Rank1Term term;
    term.u.resize(n);
    for (int a = 0; a < n; ++a) term.u[a] = zeta_pow(static_cast<long>(l) * (a + 1));
    term.v = term.u;
    term.w = term.u;
    term.weight = zeta_pow(static_cast<long>(l) * (n - 3)) / static_cast<double>(r);
    terms.push_back(std::move(term));
  }
  return terms;
}

Tensor3<Complex> sum_terms(int n, const std::vector<Rank1Term>& terms) {
  Tensor3<Complex> acc(n);
  for (const auto& term : terms) acc = acc + term.tensor();
  return acc;
}

PolyQ kn_lower_bound_certificate(int n) {
  check_family_dim(n);
  Tensor3<Rational> k = gen_kn(n);
  PolyMatrix<Rational> pencil(n, n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      PolyQ e(n);
      for (int v = 0; v < n; ++v) {
        if (k.at(a, b, v).is_zero()) continue;
        Monomial m(n, 0);
        m[v] = 1;
        e.add_term(std::move(m), k.at(a, b, v));
      }
      pencil(a, b) = std::move(e);
    }
  return poly_det(pencil);
}

bool kn_certificate_holds(const PolyQ& cert, int n) {
  Monomial m(n, 0);
  m[0] = static_cast<std::uint32_t>(n);
  return cert == PolyQ::monomial(n, std::move(m), Rational(1));
}

Tensor3<Rational> gen_werner() {
  return gen_kn(2);
}

Tensor3<Rational> gen_l() {
  return gen_l_eps(Rational(0));
}

Tensor3<Rational> gen_l_eps(const Rational& eps) {
  Mat<Rational> s2(3, 3);
  s2(0, 1) = Rational(1);
  s2(1, 1) = eps;
  Mat<Rational> s3(3, 3);
  s3(2, 2) = Rational(1);
  return from_3slices({Mat<Rational>::identity(3), s2, s3});
}

}  // namespace tenrank

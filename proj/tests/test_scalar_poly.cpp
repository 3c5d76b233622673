#include <doctest.h>

#include <span>

#include "tenrank/poly.hpp"
#include "tenrank/rng.hpp"

using namespace tenrank;

namespace {

PolyQ X(int v, int nvars) { return PolyQ::variable(nvars, v); }

PolyQ random_poly(Rng& rng, int nvars, int max_terms, int max_exp) {
  PolyQ p(nvars);
  const int terms = static_cast<int>(rng.int_in(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    Monomial m(nvars);
    for (int v = 0; v < nvars; ++v) m[v] = static_cast<std::uint32_t>(rng.int_in(0, max_exp));
    p.add_term(std::move(m), rng.rational(9, 4));
  }
  return p;
}

std::vector<Rational> random_point(Rng& rng, int nvars) {
  std::vector<Rational> q(nvars);
  for (auto& e : q) e = rng.rational(7, 3);
  return q;
}

}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(2, -4).denominator() == 2);
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational(-1, 3).str() == "-1/3");
  CHECK(Rational::from_string("10/15") == Rational(2, 3));
  CHECK(Rational::from_string("-7") == Rational(-7));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("zebra"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(3, 4).pow(3) == Rational(27, 64));
  CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
}

TEST_CASE("gaussian rational arithmetic") {
  const GaussianRational i = GaussianRational::i();
  CHECK(i * i == GaussianRational(Rational(-1)));
  GaussianRational z(Rational(1, 2), Rational(3, 4));
  CHECK(z.conj() == GaussianRational(Rational(1, 2), Rational(-3, 4)));
  CHECK(z * z.conj() == GaussianRational(z.norm2()));
  CHECK(z / z == GaussianRational(Rational(1)));
  CHECK_THROWS_AS(z / GaussianRational(), std::domain_error);
  CHECK(z.str() == "(1/2+3/4*i)");
  CHECK(z.conj().str() == "(1/2-3/4*i)");
  CHECK(GaussianRational(Rational(2)).str() == "2");
}

TEST_CASE("multipoly term map canonicalization") {
  PolyQ p(3);
  p.add_term({1, 1, 1}, Rational(2));
  p.add_term({0, 0, 3}, Rational(-1));
  CHECK(p.str() == "2*x1*x2*x3 + -1*x3^3");
  p.add_term({1, 1, 1}, Rational(-2));
  CHECK(p.term_count() == 1);
  CHECK(p.coefficient({1, 1, 1}) == Rational(0));
  CHECK(p.coefficient({0, 0, 3}) == Rational(-1));

  PolyQ q = PolyQ::constant(2, Rational(3)) + Rational(2) * (X(0, 2) * X(1, 2));
  CHECK(q.str() == "2*x1*x2 + 3");
  CHECK(q.coefficient({1, 1}) == Rational(2));
  CHECK(q.coefficient({2, 0}) == Rational(0));
  CHECK_THROWS_AS(q.coefficient({1, 1, 0}), DimensionError);

  CHECK(PolyQ(3).str() == "0");
  CHECK(PolyQ(3).total_degree() == -1);
  CHECK(PolyQ(3).coefficient({5, 0, 0}) == Rational(0));
}

TEST_CASE("multipoly arithmetic and evaluation") {
  const int n = 2;
  PolyQ p = X(0, n) + X(1, n);
  PolyQ sq = p * p;
  CHECK(sq.coefficient({2, 0}) == Rational(1));
  CHECK(sq.coefficient({1, 1}) == Rational(2));
  CHECK(sq == p.pow(2));
  CHECK(p.pow(0) == PolyQ::constant(n, Rational(1)));

  std::vector<Rational> pt{Rational(2), Rational(3, 2)};
  CHECK(sq.evaluate(pt) == Rational(49, 4));

  PolyQ d = sq.derivative(0);
  CHECK(d == Rational(2) * p);
}

TEST_CASE("poly_det cofactor examples") {
  // [[x, y], [z, w]] -> xw - yz
  PolyMatrix<Rational> m(2, 2, 4);
  m(0, 0) = X(0, 4);
  m(0, 1) = X(1, 4);
  m(1, 0) = X(2, 4);
  m(1, 1) = X(3, 4);
  PolyQ expect = X(0, 4) * X(3, 4) - X(1, 4) * X(2, 4);
  CHECK(poly_det(m) == expect);

  CHECK_THROWS_AS(poly_det(PolyMatrix<Rational>(2, 3, 1)), DimensionError);
}

TEST_CASE("poly_det of diagonal variable matrices for n = 2..6") {
  for (int n = 2; n <= 6; ++n) {
    PolyMatrix<Rational> m(n, n, n);
    PolyQ expect = PolyQ::constant(n, Rational(1));
    for (int i = 0; i < n; ++i) {
      m(i, i) = X(i, n);
      expect = expect * X(i, n);
    }
    CHECK(poly_det(m) == expect);
  }
}

TEST_CASE("poly_det of the 3x3 slice-pencil example") {
  // [[x, z, 0], [z, y, 0], [0, 0, z]] -> xyz - z^3
  const int n = 3;
  PolyMatrix<Rational> m(3, 3, n);
  m(0, 0) = X(0, n);
  m(0, 1) = X(2, n);
  m(1, 0) = X(2, n);
  m(1, 1) = X(1, n);
  m(2, 2) = X(2, n);
  PolyQ expect = X(0, n) * X(1, n) * X(2, n) - X(2, n).pow(3);
  CHECK(poly_det(m) == expect);
}

TEST_CASE("poly_det agrees with scalar determinants at random points") {
  Rng rng(7201);
  for (int n : {2, 3, 5}) {  // n = 5 exercises the fraction-free path
    for (int trial = 0; trial < 4; ++trial) {
      PolyMatrix<Rational> m(n, n, 2);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = random_poly(rng, 2, 3, 2);
      PolyQ dp = poly_det(m);
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<Rational> q = random_point(rng, 2);
        Mat<Rational> numeric(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) numeric(i, j) = m(i, j).evaluate(q);
        CHECK(dp.evaluate(q) == det(numeric));
      }
      // Degree bookkeeping: bounded by the sum of row maxima.
      int bound = 0;
      for (int i = 0; i < n; ++i) {
        int row_max = 0;
        for (int j = 0; j < n; ++j) row_max = std::max(row_max, m(i, j).total_degree());
        bound += row_max;
      }
      CHECK(dp.total_degree() <= bound);
    }
  }
}

TEST_CASE("hessian examples") {
  {
    PolyQ p = X(0, 2) * X(1, 2);
    PolyMatrix<Rational> h = hessian(p);
    CHECK(h(0, 0).is_zero());
    CHECK(h(1, 1).is_zero());
    CHECK(h(0, 1) == PolyQ::constant(2, Rational(1)));
    CHECK(h(1, 0) == PolyQ::constant(2, Rational(1)));
  }
  {
    PolyQ p = X(0, 3) * X(1, 3) * X(2, 3);
    PolyMatrix<Rational> h = hessian(p);
    CHECK(h(0, 1) == X(2, 3));
    CHECK(h(0, 2) == X(1, 3));
    CHECK(h(1, 2) == X(0, 3));
    for (int i = 0; i < 3; ++i) CHECK(h(i, i).is_zero());
  }
  {
    PolyMatrix<Rational> h = hessian(PolyQ::constant(2, Rational(5)));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(h(i, j).is_zero());
  }
}

TEST_CASE("hessian is symmetric for random polynomials") {
  Rng rng(99117);
  for (int trial = 0; trial < 10; ++trial) {
    PolyQ p = random_poly(rng, 4, 6, 3);
    PolyMatrix<Rational> h = hessian(p);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(h(a, b) == h(b, a));
  }
}

TEST_CASE("substitute_linear examples") {
  {
    PolyQ p = X(0, 2) * X(1, 2);
    CHECK(p.substitute_linear(Mat<Rational>::identity(2)) == p);
  }
  {
    Mat<Rational> g(2, 2);
    g(0, 0) = Rational(1);
    g(0, 1) = Rational(1);
    g(1, 1) = Rational(1);
    CHECK(X(0, 2).substitute_linear(g) == X(0, 2) + X(1, 2));
  }
  {
    Mat<Rational> g(2, 2);
    g(0, 0) = Rational(1);
    g(0, 1) = Rational(1);
    g(1, 0) = Rational(1);
    g(1, 1) = Rational(-1);
    PolyQ expect = X(0, 2).pow(2) - X(1, 2).pow(2);
    CHECK((X(0, 2) * X(1, 2)).substitute_linear(g) == expect);
  }
  CHECK_THROWS_AS(X(0, 2).substitute_linear(Mat<Rational>::identity(3)), DimensionError);
}

TEST_CASE("substitute_linear composes with matrix product") {
  Rng rng(5150);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3;
    PolyQ p = random_poly(rng, n, 4, 2);
    Mat<Rational> g(n, n), h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g(i, j) = rng.rational(3, 2);
        h(i, j) = rng.rational(3, 2);
      }
    CHECK(p.substitute_linear(g).substitute_linear(h) == p.substitute_linear(g * h));
  }
}

TEST_CASE("substitute_value and nonvanishing points") {
  const int n = 3;
  PolyQ p = X(0, n) * X(1, n) - X(2, n).pow(2);
  PolyQ at2 = p.substitute_value(2, Rational(3));
  CHECK(at2 == X(0, n) * X(1, n) - PolyQ::constant(n, Rational(9)));
  CHECK(p.substitute_value(0, Rational(0)) == -X(2, n).pow(2));

  Rng rng(424243);
  for (int trial = 0; trial < 8; ++trial) {
    PolyQ q = random_poly(rng, 3, 4, 3);
    if (q.is_zero()) continue;
    auto pt = nonvanishing_point(q);
    CHECK(q.evaluate(pt) != Rational(0));
  }
  // Polynomials vanishing on most of the small grid still get a point.
  PolyQ thin = (X(0, n) - PolyQ::constant(n, Rational(1))) *
               (X(1, n) - PolyQ::constant(n, Rational(2))) * X(2, n);
  auto pt = nonvanishing_point(thin);
  CHECK(thin.evaluate(pt) != Rational(0));
  CHECK_THROWS_AS(nonvanishing_point(PolyQ(2)), std::domain_error);
}

TEST_CASE("divide_exact") {
  const int n = 2;
  PolyQ p = X(0, n) + X(1, n);
  PolyQ sq = p * p * (X(0, n) - X(1, n));
  CHECK(divide_exact(sq, p) == p * (X(0, n) - X(1, n)));
  CHECK_THROWS_AS(divide_exact(X(0, n).pow(2) + PolyQ::constant(n, Rational(1)), X(0, n)),
                  std::domain_error);
  CHECK_THROWS_AS(divide_exact(p, PolyQ(n)), std::domain_error);
}

TEST_CASE("gaussian-rational polynomials") {
  using PG = MultiPoly<GaussianRational>;
  const GaussianRational i = GaussianRational::i();
  PG p(2);
  p.add_term({1, 0}, i);
  p.add_term({0, 1}, GaussianRational(Rational(1)));
  // (i x1 + x2)(-i x1 + x2) = x1^2 + x2^2
  PG q(2);
  q.add_term({1, 0}, -i);
  q.add_term({0, 1}, GaussianRational(Rational(1)));
  PG prod = p * q;
  CHECK(prod.coefficient({2, 0}) == GaussianRational(Rational(1)));
  CHECK(prod.coefficient({0, 2}) == GaussianRational(Rational(1)));
  CHECK(prod.coefficient({1, 1}).is_zero());
  CHECK(prod.str() == "1*x1^2 + 1*x2^2");
}

#include <doctest.h>

#include "tenrank/real_classification.hpp"
#include "tenrank/invariants.hpp"
#include "tenrank/rng.hpp"

using namespace tenrank;

namespace {

Mat<Complex> random_real_invertible(Rng& rng, int n, bool positive_det = false) {
  while (true) {
    Mat<Complex> g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.symmetric(), 0.0);
    if (det_conditioning(g) <= 1e-3) continue;
    if (positive_det) {
      const Complex d = to_eigen(g).determinant();
      if (d.real() <= 0) {
        for (int j = 0; j < n; ++j) g(0, j) = -g(0, j);
      }
    }
    return g;
  }
}

}  // namespace

TEST_CASE("jk generator with no blocks is the unit diagonal tensor") {
  for (int n : {2, 3, 5}) {
    auto fam = gen_jk(n, 0);
    CHECK(fam.tensor == unit_diag_tensor<Rational>(n));
  }
  CHECK_THROWS_AS(gen_jk(3, 2), InvalidTensorError);
}

TEST_CASE("jk generator at n=2, k=1 matches the conjugate-pair expansion") {
  auto fam = gen_jk(2, 1);
  // 2 Re((1, i) (x) (1, i) (x) (1, i)).
  CHECK(fam.tensor.at(0, 0, 0) == Rational(2));
  CHECK(fam.tensor.at(0, 1, 1) == Rational(-2));
  CHECK(fam.tensor.at(1, 0, 1) == Rational(-2));
  CHECK(fam.tensor.at(1, 1, 0) == Rational(-2));
  CHECK(fam.tensor.at(1, 1, 1) == Rational(0));
  CHECK(fam.tensor.at(0, 0, 1) == Rational(0));
}

TEST_CASE("jk generator is always exactly real") {
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; 2 * k <= n; ++k) CHECK_NOTHROW(gen_jk(n, k));
}

TEST_CASE("signature of the diagonal tensor") {
  auto rep = signature(unit_diag_tensor<Rational>(3));
  CHECK_FALSE(rep.indeterminate);
  CHECK(rep.real_components == 3);
  CHECK(rep.pair_count == 0);
  CHECK(rep.r_sign == 1);
  REQUIRE(rep.descriptor.has_value());
  CHECK(rep.descriptor->str() == "real-rank-n");
}

TEST_CASE("signature of the canonical conjugate-pair tensors") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {4, 2}, {5, 2}}) {
    auto fam = gen_jk(n, k);
    auto rep = signature(fam.tensor);
    CHECK_FALSE(rep.indeterminate);
    CHECK(rep.real_components == n - 2 * k);
    CHECK(rep.pair_count == k);
    CHECK(rep.r_sign == ((k % 2 == 0) ? 1 : -1));
  }
}

TEST_CASE("signature is invariant under real group actions") {
  Rng rng(2024);
  for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}}) {
    auto fam = gen_jk(n, k);
    auto base = to_complex_tensor(fam.tensor);
    for (int trial = 0; trial < 3; ++trial) {
      GroupElement<Complex> g(random_real_invertible(rng, n), random_real_invertible(rng, n),
                              random_real_invertible(rng, n));
      auto rep = signature(act(base, g));
      CHECK_FALSE(rep.indeterminate);
      CHECK(rep.real_components == n - 2 * k);
      CHECK(rep.pair_count == k);
      CHECK(rep.r_sign == ((k % 2 == 0) ? 1 : -1));
    }
  }
}

TEST_CASE("signature rejects complex-valued input") {
  Tensor3<Complex> t(2);
  t.at(0, 0, 0) = Complex(0, 1);
  t.at(1, 1, 1) = Complex(1, 0);
  CHECK_THROWS_AS(signature(t), InvalidTensorError);
}

TEST_CASE("signature requires orbit membership") {
  CHECK_THROWS_AS(signature(Tensor3<Rational>(3)), NotInOrbitError);
}

TEST_CASE("three-tangle sign matches real rank at n = 3") {
  // Signature (3,0) has positive tangle, signature (1,1) negative.
  CHECK(tangle3(gen_jk(3, 0).tensor) > Rational(0));
  CHECK(tangle3(gen_jk(3, 1).tensor) < Rational(0));
}

TEST_CASE("descriptor kinds") {
  auto mixed = signature(gen_jk(4, 1).tensor);
  REQUIRE(mixed.descriptor.has_value());
  CHECK(mixed.descriptor->str() == "mixed(1)");

  auto full = signature(gen_jk(4, 2).tensor);
  REQUIRE(full.descriptor.has_value());
  CHECK(full.descriptor->kind == ComponentDescriptor::Kind::SignTriple);
}

TEST_CASE("the four canonical tensors of signature (0, n/2) carry distinct sign triples") {
  for (int n : {2, 4}) {
    const int k = n / 2;
    auto fam = gen_jk(n, k);
    auto base = to_complex_tensor(fam.tensor);
    Mat<Complex> flip = Mat<Complex>::identity(n);
    flip(n - 1, n - 1) = Complex(-1, 0);
    std::vector<Tensor3<Complex>> reps;
    reps.push_back(base);
    {
      GroupElement<Complex> g(flip, Mat<Complex>::identity(n), Mat<Complex>::identity(n));
      reps.push_back(act(base, g));
    }
    {
      GroupElement<Complex> g(Mat<Complex>::identity(n), flip, Mat<Complex>::identity(n));
      reps.push_back(act(base, g));
    }
    {
      GroupElement<Complex> g(Mat<Complex>::identity(n), Mat<Complex>::identity(n), flip);
      reps.push_back(act(base, g));
    }
    std::vector<std::string> triples;
    for (const auto& t : reps) {
      auto rep = signature(t);
      REQUIRE_FALSE(rep.indeterminate);
      REQUIRE(rep.descriptor.has_value());
      CHECK(rep.descriptor->kind == ComponentDescriptor::Kind::SignTriple);
      triples.push_back(rep.descriptor->str());
    }
    for (size_t a = 0; a < triples.size(); ++a)
      for (size_t b = a + 1; b < triples.size(); ++b) CHECK(triples[a] != triples[b]);
  }
}

TEST_CASE("descriptor is stable under orientation-preserving real actions") {
  Rng rng(3111);
  const int n = 2;
  auto base = to_complex_tensor(gen_jk(n, 1).tensor);
  auto rep0 = signature(base);
  REQUIRE(rep0.descriptor.has_value());
  for (int trial = 0; trial < 3; ++trial) {
    GroupElement<Complex> g(random_real_invertible(rng, n, true),
                            random_real_invertible(rng, n, true),
                            random_real_invertible(rng, n, true));
    auto rep = signature(act(base, g));
    REQUIRE(rep.descriptor.has_value());
    CHECK(rep.descriptor->str() == rep0.descriptor->str());
  }
}

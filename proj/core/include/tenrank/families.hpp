#pragma once

#include <vector>

#include "tenrank/poly.hpp"
#include "tenrank/tensor.hpp"

namespace tenrank {

/// weight * (u (x) v (x) w), one summand of an explicit rank decomposition.
struct Rank1Term {
  std::vector<Complex> u, v, w;
  Complex weight;

  Tensor3<Complex> tensor() const;
};

/// Border-rank-n family: 3-slices are the successive powers of the
/// superdiagonal shift, S_j = N^(j-1), with S_1 = I.
Tensor3<Rational> gen_kn(int n);

/// Perturbation of gen_kn: S_2 = N + diag(0, eps, 2 eps, ..., (n-1) eps) and
/// S_j = S_2^(j-1). Reduces to gen_kn at eps = 0; lies in the dense orbit for
/// eps != 0.
Tensor3<Rational> gen_kn_eps(int n, const Rational& eps);

/// Column-reversed variant: entry 1 exactly when i + j + k = n + 2
/// (1-based); fully symmetric under index permutations.
Tensor3<Rational> gen_kn_prime(int n);

/// Roots-of-unity rank decomposition of gen_kn_prime(n) into 2n-1 terms,
/// certifying rank <= 2n-1.
std::vector<Rank1Term> kn_prime_decomposition(int n);

Tensor3<Complex> sum_terms(int n, const std::vector<Rank1Term>& terms);

/// The exact pencil determinant det(K_n *_3 w) in indeterminates w_1..w_n.
/// The lower-bound certificate holds exactly when this equals w_1^n: a dual
/// vector can annihilate n-1 decomposition factors only with first
/// coordinate zero.
PolyQ kn_lower_bound_certificate(int n);

bool kn_certificate_holds(const PolyQ& cert, int n);

/// The 2x2x2 border-rank-2, rank-3 tensor with 3-slices I and the 2x2 shift.
Tensor3<Rational> gen_werner();

/// A 3x3x3 boundary tensor of rank exactly 4 and its in-orbit perturbation.
Tensor3<Rational> gen_l();
Tensor3<Rational> gen_l_eps(const Rational& eps);

}  // namespace tenrank

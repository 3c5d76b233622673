#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tenrank/membership.hpp"

namespace tenrank {

struct SignatureOptions {
  MembershipOptions membership;
  double pair_tol = 1e-7;  // conjugate-row matching, relative
  double real_tol = 1e-7;  // row realness, relative
  int sign_samples = 16;
  double sign_tol = 1e-9;
  int min_significant = 8;
};

/// Path-component label: "real-rank-n" for signature (n, 0), "mixed(k)"
/// for 0 < k < n/2, and a sign triple for the (0, n/2) case.
struct ComponentDescriptor {
  enum class Kind { RealRankN, Mixed, SignTriple, Indeterminate } kind = Kind::Indeterminate;
  int k = 0;
  std::array<int, 3> signs{0, 0, 0};

  std::string str() const;
};

/// Signature (n-2k, k): counts of real rank-1 components and conjugate pairs
/// in the unique decomposition. r_sign is + exactly when k is even.
struct SignatureReport {
  int n = 0;
  int real_components = 0;
  int pair_count = 0;
  int r_sign = 0;  // +1, -1, or 0 when indeterminate
  std::vector<std::pair<int, int>> pairs;  // matched component indices, 1-based
  std::optional<ComponentDescriptor> descriptor;
  bool indeterminate = false;
  std::string note;
};

struct JkFamily {
  Mat<Complex> j;
  Tensor3<Rational> tensor;  // D(J_k, J_k, J_k); exactly real
};

/// Canonical real tensor of signature (n-2k, k): block-diagonal J_k with k
/// conjugate 2x2 blocks and n-2k unit blocks, applied to the diagonal unit
/// tensor on all three axes.
JkFamily gen_jk(int n, int k);

SignatureReport signature(const Tensor3<Rational>& p, const SignatureOptions& opts = {});
SignatureReport signature(const Tensor3<Complex>& p, const SignatureOptions& opts = {});

/// Descriptor for a tensor whose signature is already known. The sign-triple
/// branch samples each h_i at seeded real points and requires a consistent
/// sign.
ComponentDescriptor component_descriptor(const Tensor3<Complex>& p, const SignatureReport& sig,
                                         const SignatureOptions& opts = {});

}  // namespace tenrank

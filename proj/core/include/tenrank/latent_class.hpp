#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tenrank/membership.hpp"

namespace tenrank {

/// Root distribution and the three row-stochastic conditionals of the
/// n-state latent class model.
template <typename S>
struct ModelParams {
  std::vector<S> pi;
  Mat<S> m1, m2, m3;

  int n() const { return static_cast<int>(pi.size()); }
  const Mat<S>& m(int i) const { return i == 1 ? m1 : (i == 2 ? m2 : m3); }
};

struct ModelValidationError : std::invalid_argument {
  explicit ModelValidationError(std::vector<std::string> v)
      : std::invalid_argument("invalid model parameters: " + join(v)), violations(std::move(v)) {}
  std::vector<std::string> violations;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += "; ";
      s += e;
    }
    return s;
  }
};

/// Violated constraints, empty when the parameters are admissible.
std::vector<std::string> validate(const ModelParams<Rational>& params);
std::vector<std::string> validate(const ModelParams<double>& params, double det_tol = 1e-12);

/// P = Diag(pi)(M1, M2, M3); rejects invalid parameters.
Tensor3<Rational> parameterize(const ModelParams<Rational>& params);
Tensor3<Complex> parameterize(const ModelParams<double>& params);

enum class MinorMode { Leading, All };

template <typename S>
struct MinorValue {
  std::vector<int> index_set;  // 1-based row/column indices
  S value;
};

/// Principal minors of a square matrix: the n leading ones, or all 2^n - 1.
template <typename S>
std::vector<MinorValue<S>> minors(const Mat<S>& m, MinorMode mode) {
  if (m.rows() != m.cols()) throw DimensionError("minors: non-square matrix");
  const int n = m.rows();
  std::vector<MinorValue<S>> out;
  auto subdet = [&](const std::vector<int>& idx) {
    Mat<S> sub(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b) sub(static_cast<int>(a), static_cast<int>(b)) = m(idx[a], idx[b]);
    return det(sub);
  };
  if (mode == MinorMode::Leading) {
    for (int k = 1; k <= n; ++k) {
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      MinorValue<S> mv;
      mv.value = subdet(idx);
      for (int i : idx) mv.index_set.push_back(i + 1);
      out.push_back(std::move(mv));
    }
  } else {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      MinorValue<S> mv;
      mv.value = subdet(idx);
      for (int i : idx) mv.index_set.push_back(i + 1);
      out.push_back(std::move(mv));
    }
  }
  return out;
}

enum class ConditionStatus { Pass, Fail, Indeterminate };

std::string to_string(ConditionStatus s);

struct ConditionWitness {
  std::string matrix;          // which matrix family member
  int l = 0;                   // basis-vector index for condition 5, 1-based
  std::vector<int> index_set;  // violating minor, 1-based; empty if n/a
  std::string value;
};

struct ConditionResult {
  ConditionStatus status = ConditionStatus::Indeterminate;
  std::vector<ConditionWitness> witnesses;
  std::string note;
};

struct LatentOptions {
  MembershipOptions membership;
  bool strict = false;
  bool recover = true;
  double roundtrip_tol = 1e-8;
  double semidefinite_tol = 1e-9;
  double minor_tol = 1e-9;
};

template <typename S>
struct Recovery {
  ModelParams<S> params;
  double roundtrip_residual = 0.0;
};

/// Condition-by-condition membership verdict for the latent class model,
/// with witnesses for every violation.
struct ModelReport {
  bool exact = false;
  bool strict = false;
  int n = 0;
  std::array<ConditionResult, 5> conditions;
  ConditionStatus overall = ConditionStatus::Indeterminate;
  std::optional<Recovery<Rational>> recovered_exact;
  std::optional<Recovery<double>> recovered_float;
  std::vector<std::string> notes;
};

ModelReport check_membership(const Tensor3<Rational>& p, const LatentOptions& opts = {});
ModelReport check_membership(const Tensor3<Complex>& p, const LatentOptions& opts = {});

struct ModelRecoveryError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Parameter recovery for a tensor that passes check_membership: pi from the
/// entrywise product of the three row-sum vectors, M_i by row-normalizing the
/// decomposition factors. Hidden states are ordered by descending pi, ties by
/// the lexicographic M3 row.
Recovery<Rational> recover_params(const Tensor3<Rational>& p, const LatentOptions& opts = {});
Recovery<double> recover_params(const Tensor3<Complex>& p, const LatentOptions& opts = {});

}  // namespace tenrank

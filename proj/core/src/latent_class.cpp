#include "tenrank/latent_class.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tenrank {

std::string to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Pass: return "pass";
    case ConditionStatus::Fail: return "fail";
    case ConditionStatus::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace {

template <typename S>
std::vector<S> ones(int n) {
  return std::vector<S>(n, S(1));
}

template <typename S>
std::vector<S> basis(int n, int l) {
  std::vector<S> e(n, S(0));
  e[l] = S(1);
  return e;
}

Mat<double> real_part(const Mat<Complex>& m) {
  Mat<double> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
  return r;
}

double frob_d(const Mat<double>& m) {
  double s = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

}  // namespace

std::vector<std::string> validate(const ModelParams<Rational>& params) {
  std::vector<std::string> v;
  const int n = params.n();
  if (n < 2) {
    v.push_back("model needs at least 2 states");
    return v;
  }
  Rational sum(0);
  for (int i = 0; i < n; ++i) {
    if (params.pi[i] <= Rational(0))
      v.push_back("pi[" + std::to_string(i + 1) + "] is not strictly positive");
    sum += params.pi[i];
  }
  if (sum != Rational(1)) v.push_back("pi does not sum to 1 (sum = " + sum.str() + ")");
  for (int m = 1; m <= 3; ++m) {
    const Mat<Rational>& mat = params.m(m);
    if (mat.rows() != n || mat.cols() != n) {
      v.push_back("M" + std::to_string(m) + " is not " + std::to_string(n) + "x" + std::to_string(n));
      continue;
    }
    for (int i = 0; i < n; ++i) {
      Rational row_sum(0);
      for (int j = 0; j < n; ++j) {
        if (mat(i, j) < Rational(0))
          v.push_back("M" + std::to_string(m) + "(" + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + ") is negative");
        row_sum += mat(i, j);
      }
      if (row_sum != Rational(1))
        v.push_back("M" + std::to_string(m) + " row " + std::to_string(i + 1) +
                    " does not sum to 1");
    }
    if (scalar_is_zero(det(mat))) v.push_back("M" + std::to_string(m) + " is singular");
  }
  return v;
}

std::vector<std::string> validate(const ModelParams<double>& params, double det_tol) {
  std::vector<std::string> v;
  const int n = params.n();
  if (n < 2) {
    v.push_back("model needs at least 2 states");
    return v;
  }
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    if (params.pi[i] <= 0) v.push_back("pi[" + std::to_string(i + 1) + "] is not strictly positive");
    sum += params.pi[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) v.push_back("pi does not sum to 1");
  for (int m = 1; m <= 3; ++m) {
    const Mat<double>& mat = params.m(m);
    if (mat.rows() != n || mat.cols() != n) {
      v.push_back("M" + std::to_string(m) + " has wrong shape");
      continue;
    }
    for (int i = 0; i < n; ++i) {
      double row_sum = 0;
      for (int j = 0; j < n; ++j) {
        if (mat(i, j) < -1e-12)
          v.push_back("M" + std::to_string(m) + "(" + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + ") is negative");
        row_sum += mat(i, j);
      }
      if (std::abs(row_sum - 1.0) > 1e-9)
        v.push_back("M" + std::to_string(m) + " row " + std::to_string(i + 1) +
                    " does not sum to 1");
    }
    Mat<Complex> mc(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mc(i, j) = Complex(mat(i, j), 0.0);
    if (det_conditioning(mc) <= det_tol) v.push_back("M" + std::to_string(m) + " is singular");
  }
  return v;
}

Tensor3<Rational> parameterize(const ModelParams<Rational>& params) {
  auto violations = validate(params);
  if (!violations.empty()) throw ModelValidationError(std::move(violations));
  const int n = params.n();
  Tensor3<Rational> p(n);
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < n; ++a) {
      const Rational pa = params.pi[s] * params.m1(s, a);
      if (pa.is_zero()) continue;
      for (int b = 0; b < n; ++b) {
        const Rational pab = pa * params.m2(s, b);
        if (pab.is_zero()) continue;
        for (int c = 0; c < n; ++c) p.at(a, b, c) += pab * params.m3(s, c);
      }
    }
  return p;
}

Tensor3<Complex> parameterize(const ModelParams<double>& params) {
  auto violations = validate(params);
  if (!violations.empty()) throw ModelValidationError(std::move(violations));
  const int n = params.n();
  Tensor3<Complex> p(n);
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          p.at(a, b, c) += params.pi[s] * params.m1(s, a) * params.m2(s, b) * params.m3(s, c);
  return p;
}

namespace {

// The three matrix products of the definiteness condition; det-scaled so no
// inverses appear.
template <typename S>
std::array<Mat<S>, 3> condition4_matrices(const Tensor3<S>& p) {
  const int n = p.n();
  const Mat<S> p1 = contract(p, 1, ones<S>(n));
  const Mat<S> p2 = contract(p, 2, ones<S>(n));
  const Mat<S> p3 = contract(p, 3, ones<S>(n));
  return {det(p1) * (p2 * adjugate(p1) * p3.transposed()),
          det(p2) * (p1 * adjugate(p2) * p3),
          det(p3) * (p1.transposed() * adjugate(p3) * p2)};
}

// The three per-state matrix families of the non-negativity condition.
template <typename S>
std::array<Mat<S>, 3> condition5_matrices(const Tensor3<S>& p, int l) {
  const int n = p.n();
  const Mat<S> p1 = contract(p, 1, ones<S>(n));
  const Mat<S> p2 = contract(p, 2, ones<S>(n));
  const Mat<S> p3 = contract(p, 3, ones<S>(n));
  const Mat<S> p1l = contract(p, 1, basis<S>(n, l));
  const Mat<S> p2l = contract(p, 2, basis<S>(n, l));
  const Mat<S> p3l = contract(p, 3, basis<S>(n, l));
  const Mat<S> adj1 = adjugate(p1);
  return {det(p1) * (p2 * adj1 * p3l.transposed()),
          det(p1) * (p2l * adj1 * p3.transposed()),
          det(p2) * (p1l * adjugate(p2) * p3)};
}

ConditionResult condition1(const Tensor3<Rational>& p) {
  ConditionResult r;
  r.status = ConditionStatus::Pass;
  Rational sum(0);
  const int n = p.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Rational& e = p.at(i, j, k);
        if (e < Rational(0)) {
          r.status = ConditionStatus::Fail;
          r.witnesses.push_back(
              {"entry", 0, {i + 1, j + 1, k + 1}, e.str()});
        }
        sum += e;
      }
  if (sum != Rational(1)) {
    r.status = ConditionStatus::Fail;
    r.witnesses.push_back({"sum", 0, {}, sum.str()});
  }
  return r;
}

ConditionResult condition1(const Tensor3<Complex>& p) {
  ConditionResult r;
  r.status = ConditionStatus::Pass;
  double sum = 0;
  const int n = p.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Complex e = p.at(i, j, k);
        if (std::abs(e.imag()) > 1e-12) {
          r.status = ConditionStatus::Fail;
          r.witnesses.push_back({"imag", 0, {i + 1, j + 1, k + 1}, std::to_string(e.imag())});
        }
        if (e.real() < -1e-12) {
          r.status = ConditionStatus::Fail;
          r.witnesses.push_back({"entry", 0, {i + 1, j + 1, k + 1}, std::to_string(e.real())});
        }
        sum += e.real();
      }
  if (std::abs(sum - 1.0) > 1e-9) {
    r.status = ConditionStatus::Fail;
    r.witnesses.push_back({"sum", 0, {}, std::to_string(sum)});
  }
  return r;
}

ConditionResult condition2_from_report(const MembershipReport& mem) {
  ConditionResult r;
  switch (mem.verdict) {
    case Verdict::InOrbit:
      r.status = ConditionStatus::Pass;
      break;
    case Verdict::Boundary:
      r.status = ConditionStatus::Fail;
      r.note = "commutation relations hold but f is identically zero";
      r.witnesses.push_back({"f", 0, {}, "identically zero on every axis"});
      break;
    case Verdict::Outside:
      r.status = ConditionStatus::Fail;
      r.note = "a commutation relation fails";
      for (const auto& c : mem.commutation)
        if (c.witness)
          r.witnesses.push_back({"commutation axis " + std::to_string(c.axis),
                                 0,
                                 {c.witness->slice_j, c.witness->slice_k, c.witness->row,
                                  c.witness->col},
                                 c.witness->value});
      break;
    case Verdict::Indeterminate:
      r.status = ConditionStatus::Indeterminate;
      r.note = mem.detail;
      break;
  }
  return r;
}

ConditionResult condition3(const Tensor3<Rational>& p) {
  ConditionResult r;
  r.status = ConditionStatus::Pass;
  for (int axis = 1; axis <= 3; ++axis) {
    const Rational d = det(contract(p, axis, ones<Rational>(p.n())));
    if (d.is_zero()) {
      r.status = ConditionStatus::Fail;
      r.witnesses.push_back({"marginal axis " + std::to_string(axis), 0, {}, "determinant = 0"});
    }
  }
  return r;
}

ConditionResult condition3(const Tensor3<Complex>& p, const LatentOptions& opts) {
  ConditionResult r;
  r.status = ConditionStatus::Pass;
  for (int axis = 1; axis <= 3; ++axis) {
    const double cond = det_conditioning(contract(p, axis, ones<Complex>(p.n())));
    if (cond <= opts.membership.h_tol / opts.membership.band) {
      r.status = ConditionStatus::Fail;
      r.witnesses.push_back({"marginal axis " + std::to_string(axis), 0, {},
                             "det conditioning " + std::to_string(cond)});
    } else if (cond <= opts.membership.h_tol * opts.membership.band &&
               r.status == ConditionStatus::Pass) {
      r.status = ConditionStatus::Indeterminate;
      r.note = "marginal determinant near the tolerance band";
    }
  }
  return r;
}

ConditionResult condition4(const Tensor3<Rational>& p) {
  ConditionResult r;
  auto mats = condition4_matrices(p);
  int pass_count = 0, fail_count = 0;
  for (int m = 0; m < 3; ++m) {
    bool ok = true;
    for (const auto& mv : minors(mats[m], MinorMode::Leading)) {
      if (mv.value <= Rational(0)) {
        ok = false;
        r.witnesses.push_back({"product " + std::to_string(m + 1), 0, mv.index_set,
                               mv.value.str()});
        break;
      }
    }
    ok ? ++pass_count : ++fail_count;
  }
  if (pass_count == 3)
    r.status = ConditionStatus::Pass;
  else {
    r.status = ConditionStatus::Fail;
    if (pass_count > 0)
      r.note = "the three equivalent products disagree; input is far from the model";
  }
  return r;
}

ConditionResult condition4(const Tensor3<Complex>& p, const LatentOptions& opts) {
  ConditionResult r;
  auto mats = condition4_matrices(p);
  int pass_count = 0, fail_count = 0, indet_count = 0;
  for (int m = 0; m < 3; ++m) {
    Mat<double> re = real_part(mats[m]);
    const double scale = std::max(frob_d(re), 1e-300);
    // Scale-normalized minors against flat tolerance bands.
    Mat<double> normalized(re.rows(), re.cols());
    for (int i = 0; i < re.rows(); ++i)
      for (int j = 0; j < re.cols(); ++j) normalized(i, j) = re(i, j) / scale;
    ConditionStatus st = ConditionStatus::Pass;
    for (const auto& mv : minors(normalized, MinorMode::Leading)) {
      if (mv.value < -opts.minor_tol / opts.membership.band) {
        st = ConditionStatus::Fail;
        r.witnesses.push_back({"product " + std::to_string(m + 1), 0, mv.index_set,
                               std::to_string(mv.value)});
        break;
      }
      if (mv.value < opts.minor_tol * opts.membership.band) st = ConditionStatus::Indeterminate;
    }
    if (st == ConditionStatus::Pass) ++pass_count;
    if (st == ConditionStatus::Fail) ++fail_count;
    if (st == ConditionStatus::Indeterminate) ++indet_count;
  }
  if (pass_count == 3)
    r.status = ConditionStatus::Pass;
  else if (fail_count > 0) {
    r.status = ConditionStatus::Fail;
    if (pass_count > 0)
      r.note = "the three equivalent products disagree; numerical trouble or far off-model";
  } else {
    r.status = ConditionStatus::Indeterminate;
  }
  return r;
}

ConditionResult condition5(const Tensor3<Rational>& p, bool strict) {
  ConditionResult r;
  r.status = ConditionStatus::Pass;
  const int n = p.n();
  for (int l = 0; l < n; ++l) {
    auto mats = condition5_matrices(p, l);
    for (int m = 0; m < 3; ++m) {
      const auto mode = strict ? MinorMode::Leading : MinorMode::All;
      for (const auto& mv : minors(mats[m], mode)) {
        const bool bad = strict ? (mv.value <= Rational(0)) : (mv.value < Rational(0));
        if (bad) {
          r.status = ConditionStatus::Fail;
          r.witnesses.push_back({"family " + std::to_string(m + 1), l + 1, mv.index_set,
                                 mv.value.str()});
        }
      }
    }
  }
  return r;
}

ConditionResult condition5(const Tensor3<Complex>& p, bool strict, const LatentOptions& opts) {
  ConditionResult r;
  r.status = ConditionStatus::Pass;
  const int n = p.n();
  for (int l = 0; l < n; ++l) {
    auto mats = condition5_matrices(p, l);
    for (int m = 0; m < 3; ++m) {
      Mat<double> re = real_part(mats[m]);
      const double scale = std::max(frob_d(re), 1e-300);
      if (strict) {
        Mat<double> normalized(re.rows(), re.cols());
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) normalized(i, j) = re(i, j) / scale;
        for (const auto& mv : minors(normalized, MinorMode::Leading)) {
          if (mv.value < -opts.minor_tol / opts.membership.band) {
            r.status = ConditionStatus::Fail;
            r.witnesses.push_back({"family " + std::to_string(m + 1), l + 1, mv.index_set,
                                   std::to_string(mv.value)});
          } else if (mv.value < opts.minor_tol * opts.membership.band &&
                     r.status == ConditionStatus::Pass) {
            r.status = ConditionStatus::Indeterminate;
          }
        }
      } else {
        // Semidefiniteness of the symmetric part via its spectrum.
        Eigen::MatrixXd h(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (re(i, j) + re(j, i));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < -opts.semidefinite_tol * scale) {
          r.status = ConditionStatus::Fail;
          r.witnesses.push_back({"family " + std::to_string(m + 1), l + 1, {},
                                 "min eigenvalue " + std::to_string(min_eig)});
        }
      }
    }
  }
  return r;
}

ConditionStatus combine(const std::array<ConditionResult, 5>& cs) {
  bool any_fail = false, any_indet = false;
  for (const auto& c : cs) {
    if (c.status == ConditionStatus::Fail) any_fail = true;
    if (c.status == ConditionStatus::Indeterminate) any_indet = true;
  }
  if (any_fail) return ConditionStatus::Fail;
  if (any_indet) return ConditionStatus::Indeterminate;
  return ConditionStatus::Pass;
}

// Shared recovery logic: row sums give pi and the stochastic normalization.
Recovery<Rational> recovery_exact_impl(const std::array<Mat<Rational>, 3>& g, int n) {
  std::array<std::vector<Rational>, 3> sums;
  for (int m = 0; m < 3; ++m) {
    sums[m].resize(n);
    for (int i = 0; i < n; ++i) {
      Rational s(0);
      for (int j = 0; j < n; ++j) s += g[m](i, j);
      if (s.is_zero())
        throw ModelRecoveryError("recover_params: a factor row sums to zero");
      sums[m][i] = s;
    }
  }
  ModelParams<Rational> params;
  params.pi.resize(n);
  params.m1 = Mat<Rational>(n, n);
  params.m2 = Mat<Rational>(n, n);
  params.m3 = Mat<Rational>(n, n);
  for (int i = 0; i < n; ++i) {
    params.pi[i] = sums[0][i] * sums[1][i] * sums[2][i];
    for (int j = 0; j < n; ++j) {
      params.m1(i, j) = g[0](i, j) / sums[0][i];
      params.m2(i, j) = g[1](i, j) / sums[1][i];
      params.m3(i, j) = g[2](i, j) / sums[2][i];
    }
  }
  // Canonical hidden-state order: descending pi, ties by M3 row.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (params.pi[a] != params.pi[b]) return params.pi[b] < params.pi[a];
    for (int j = 0; j < n; ++j)
      if (params.m3(a, j) != params.m3(b, j)) return params.m3(a, j) < params.m3(b, j);
    return false;
  });
  ModelParams<Rational> sorted;
  sorted.pi.resize(n);
  sorted.m1 = Mat<Rational>(n, n);
  sorted.m2 = Mat<Rational>(n, n);
  sorted.m3 = Mat<Rational>(n, n);
  for (int i = 0; i < n; ++i) {
    sorted.pi[i] = params.pi[order[i]];
    for (int j = 0; j < n; ++j) {
      sorted.m1(i, j) = params.m1(order[i], j);
      sorted.m2(i, j) = params.m2(order[i], j);
      sorted.m3(i, j) = params.m3(order[i], j);
    }
  }
  return Recovery<Rational>{std::move(sorted), 0.0};
}

Recovery<double> recovery_float_impl(const std::array<Mat<Complex>, 3>& g, int n) {
  std::array<std::vector<Complex>, 3> sums;
  for (int m = 0; m < 3; ++m) {
    sums[m].resize(n);
    for (int i = 0; i < n; ++i) {
      Complex s(0);
      for (int j = 0; j < n; ++j) s += g[m](i, j);
      if (std::abs(s) < 1e-12)
        throw ModelRecoveryError("recover_params: a factor row sums to (nearly) zero");
      sums[m][i] = s;
    }
  }
  ModelParams<double> params;
  params.pi.resize(n);
  params.m1 = Mat<double>(n, n);
  params.m2 = Mat<double>(n, n);
  params.m3 = Mat<double>(n, n);
  auto realify = [](Complex v, const char* what) {
    if (std::abs(v.imag()) > 1e-6 * std::max(1.0, std::abs(v)))
      throw ModelRecoveryError(std::string("recover_params: ") + what +
                               " has a significant imaginary part");
    return v.real();
  };
  for (int i = 0; i < n; ++i) {
    params.pi[i] = realify(sums[0][i] * sums[1][i] * sums[2][i], "pi");
    for (int j = 0; j < n; ++j) {
      params.m1(i, j) = realify(g[0](i, j) / sums[0][i], "M1");
      params.m2(i, j) = realify(g[1](i, j) / sums[1][i], "M2");
      params.m3(i, j) = realify(g[2](i, j) / sums[2][i], "M3");
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (params.pi[a] != params.pi[b]) return params.pi[b] < params.pi[a];
    for (int j = 0; j < n; ++j)
      if (params.m3(a, j) != params.m3(b, j)) return params.m3(a, j) < params.m3(b, j);
    return false;
  });
  ModelParams<double> sorted;
  sorted.pi.resize(n);
  sorted.m1 = Mat<double>(n, n);
  sorted.m2 = Mat<double>(n, n);
  sorted.m3 = Mat<double>(n, n);
  for (int i = 0; i < n; ++i) {
    sorted.pi[i] = params.pi[order[i]];
    for (int j = 0; j < n; ++j) {
      sorted.m1(i, j) = params.m1(order[i], j);
      sorted.m2(i, j) = params.m2(order[i], j);
      sorted.m3(i, j) = params.m3(order[i], j);
    }
  }
  return Recovery<double>{std::move(sorted), 0.0};
}

}  // namespace

Recovery<Rational> recover_params(const Tensor3<Rational>& p, const LatentOptions& opts) {
  Decomposition d = decompose(p, opts.membership);
  if (!d.exact_factors)
    throw ModelRecoveryError(
        "recover_params: decomposition left exact arithmetic; use the float backend");
  Recovery<Rational> rec = recovery_exact_impl(*d.exact_factors, p.n());
  Tensor3<Rational> round = parameterize(rec.params);
  rec.roundtrip_residual =
      round == p ? 0.0
                 : frobenius(round - p) / std::max(frobenius(p), 1e-300);
  return rec;
}

Recovery<double> recover_params(const Tensor3<Complex>& p, const LatentOptions& opts) {
  Decomposition d = decompose(p, opts.membership);
  Recovery<double> rec = recovery_float_impl({d.g1, d.g2, d.g3}, p.n());
  Tensor3<Complex> round = parameterize(rec.params);
  rec.roundtrip_residual = frobenius(round - p) / std::max(frobenius(p), 1e-300);
  return rec;
}

ModelReport check_membership(const Tensor3<Rational>& p, const LatentOptions& opts) {
  ModelReport rep;
  rep.exact = true;
  rep.strict = opts.strict;
  rep.n = p.n();
  rep.conditions[0] = condition1(p);
  MembershipReport mem = classify(p, opts.membership);
  rep.conditions[1] = condition2_from_report(mem);
  rep.conditions[2] = condition3(p);
  rep.conditions[3] = condition4(p);
  rep.conditions[4] = condition5(p, opts.strict);
  rep.overall = combine(rep.conditions);
  if (rep.overall == ConditionStatus::Pass && opts.recover) {
    try {
      rep.recovered_exact = recover_params(p, opts);
      if (rep.recovered_exact->roundtrip_residual > opts.roundtrip_tol)
        rep.notes.push_back("recovered parameters round-trip above tolerance");
    } catch (const ModelRecoveryError& e) {
      try {
        rep.recovered_float = recover_params(to_complex_tensor(p), opts);
        rep.notes.push_back(std::string("exact recovery unavailable: ") + e.what());
      } catch (const std::exception& e2) {
        rep.notes.push_back(std::string("parameter recovery failed: ") + e2.what());
      }
    }
  }
  return rep;
}

ModelReport check_membership(const Tensor3<Complex>& p, const LatentOptions& opts) {
  ModelReport rep;
  rep.exact = false;
  rep.strict = opts.strict;
  rep.n = p.n();
  rep.conditions[0] = condition1(p);
  MembershipReport mem = classify(p, opts.membership);
  rep.conditions[1] = condition2_from_report(mem);
  rep.conditions[2] = condition3(p, opts);
  rep.conditions[3] = condition4(p, opts);
  rep.conditions[4] = condition5(p, opts.strict, opts);
  rep.overall = combine(rep.conditions);
  if (rep.overall == ConditionStatus::Pass && opts.recover) {
    try {
      rep.recovered_float = recover_params(p, opts);
      if (rep.recovered_float->roundtrip_residual > opts.roundtrip_tol)
        rep.notes.push_back("recovered parameters round-trip above tolerance");
    } catch (const std::exception& e) {
      rep.notes.push_back(std::string("parameter recovery failed: ") + e.what());
    }
  }
  return rep;
}

}  // namespace tenrank

#include "tenrank/real_classification.hpp"

#include <algorithm>
#include <cmath>

#include "tenrank/rng.hpp"

namespace tenrank {

std::string ComponentDescriptor::str() const {
  switch (kind) {
    case Kind::RealRankN: return "real-rank-n";
    case Kind::Mixed: return "mixed(" + std::to_string(k) + ")";
    case Kind::SignTriple: {
      auto s = [](int v) { return v > 0 ? "+" : (v < 0 ? "-" : "?"); };
      return std::string("(") + s(signs[0]) + "," + s(signs[1]) + "," + s(signs[2]) + ")";
    }
    case Kind::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

JkFamily gen_jk(int n, int k) {
  if (n < 1 || k < 0 || 2 * k > n)
    throw InvalidTensorError("gen_jk: need 0 <= 2k <= n");
  Mat<GaussianRational> j(n, n);
  for (int b = 0; b < k; ++b) {
    j(2 * b, 2 * b) = GaussianRational(Rational(1));
    j(2 * b, 2 * b + 1) = GaussianRational::i();
    j(2 * b + 1, 2 * b) = GaussianRational(Rational(1));
    j(2 * b + 1, 2 * b + 1) = -GaussianRational::i();
  }
  for (int r = 2 * k; r < n; ++r) j(r, r) = GaussianRational(Rational(1));

  // D(J, J, J) = sum over rows of J of the cubed row; conjugate pairs make
  // every entry exactly real.
  Tensor3<GaussianRational> acc(n);
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) acc.at(a, b, d) += j(c, a) * j(c, b) * j(c, d);
  Tensor3<Rational> t(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        const GaussianRational& e = acc.at(a, b, d);
        if (!e.im.is_zero()) throw InvalidTensorError("gen_jk: imaginary parts failed to cancel");
        t.at(a, b, d) = e.re;
      }

  return JkFamily{to_complex_mat(j), std::move(t)};
}

namespace {

double row_norm(const Mat<Complex>& g, int i) {
  double s = 0;
  for (int j = 0; j < g.cols(); ++j) s += std::norm(g(i, j));
  return std::sqrt(s);
}

double row_imag_norm(const Mat<Complex>& g, int i) {
  double s = 0;
  for (int j = 0; j < g.cols(); ++j) s += g(i, j).imag() * g(i, j).imag();
  return std::sqrt(s);
}

double conj_row_distance(const Mat<Complex>& g, int a, int b) {
  double s = 0;
  for (int j = 0; j < g.cols(); ++j) s += std::norm(g(a, j) - std::conj(g(b, j)));
  return std::sqrt(s);
}

SignatureReport indeterminate_report(int n, std::string note) {
  SignatureReport r;
  r.n = n;
  r.indeterminate = true;
  r.note = std::move(note);
  return r;
}

int sampled_r_sign(const Tensor3<Complex>& p, const SignatureOptions& opts) {
  const int n = p.n();
  Rng rng(Rng::derive(opts.membership.seed, "r-sign"));
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<Complex> x(n);
    double norm2 = 0;
    for (int i = 0; i < n; ++i) {
      double v = rng.symmetric();
      x[i] = Complex(v, 0.0);
      norm2 += v * v;
    }
    if (norm2 < 1e-8) continue;
    for (auto& e : x) e /= std::sqrt(norm2);
    try {
      const Complex r = r_eval(p, 3, x);
      const double mag = std::abs(r);
      if (mag < 1e-12) continue;
      if (std::abs(r.imag()) > 1e-6 * mag) continue;
      return r.real() > 0 ? 1 : -1;
    } catch (const SingularEvaluationError&) {
      continue;
    }
  }
  return 0;
}

SignatureReport signature_from_decomposition(const Tensor3<Complex>& p, const Decomposition& d,
                                             const SignatureOptions& opts) {
  const int n = p.n();
  SignatureReport rep;
  rep.n = n;

  const std::array<const Mat<Complex>*, 3> gs{&d.g1, &d.g2, &d.g3};

  std::vector<int> partner(n, -1);
  std::vector<bool> is_real(n, false);
  for (int i = 0; i < n; ++i) {
    bool real_all = true, real_any = false;
    for (const auto* g : gs) {
      const bool r = row_imag_norm(*g, i) < opts.real_tol * row_norm(*g, i);
      real_all = real_all && r;
      real_any = real_any || r;
    }
    if (real_all != real_any)
      return indeterminate_report(n, "realness of component " + std::to_string(i + 1) +
                                         " differs between the three factors");
    is_real[i] = real_all;
  }

  for (int i = 0; i < n; ++i) {
    if (is_real[i] || partner[i] >= 0) continue;
    int match = -1;
    for (int j = i + 1; j < n; ++j) {
      if (is_real[j] || partner[j] >= 0) continue;
      bool all_match = true;
      for (const auto* g : gs)
        if (conj_row_distance(*g, i, j) > opts.pair_tol * row_norm(*g, i)) all_match = false;
      if (all_match) {
        if (match >= 0)
          return indeterminate_report(n, "component " + std::to_string(i + 1) +
                                             " matches two conjugate partners");
        match = j;
      }
    }
    if (match < 0)
      return indeterminate_report(n, "complex component " + std::to_string(i + 1) +
                                         " has no conjugate partner");
    partner[i] = match;
    partner[match] = i;
    rep.pairs.emplace_back(i + 1, match + 1);
  }

  rep.pair_count = static_cast<int>(rep.pairs.size());
  rep.real_components = n - 2 * rep.pair_count;

  rep.r_sign = sampled_r_sign(p, opts);
  if (rep.r_sign == 0)
    return indeterminate_report(n, "could not sample a reliable sign for r");
  const int expected = (rep.pair_count % 2 == 0) ? 1 : -1;
  if (rep.r_sign != expected)
    return indeterminate_report(
        n, "sign of r contradicts the conjugate-pair count; numerical trouble");
  return rep;
}

}  // namespace

SignatureReport signature(const Tensor3<Complex>& p, const SignatureOptions& opts) {
  const double scale = frobenius(p);
  for (const auto& e : p.data())
    if (std::abs(e.imag()) > opts.real_tol * std::max(scale, 1e-300))
      throw InvalidTensorError("signature: tensor must be real");

  MembershipReport mem = classify(p, opts.membership);
  if (mem.verdict != Verdict::InOrbit) throw NotInOrbitError(std::move(mem));
  Decomposition d = decompose(p, opts.membership);
  SignatureReport rep = signature_from_decomposition(p, d, opts);
  if (!rep.indeterminate) rep.descriptor = component_descriptor(p, rep, opts);
  return rep;
}

SignatureReport signature(const Tensor3<Rational>& p, const SignatureOptions& opts) {
  MembershipReport mem = classify(p, opts.membership);
  if (mem.verdict != Verdict::InOrbit) throw NotInOrbitError(std::move(mem));
  Decomposition d = decompose(p, opts.membership);
  Tensor3<Complex> pc = to_complex_tensor(p);
  if (d.exact_factors) {
    // A fully rational decomposition has no conjugate pairs.
    SignatureReport rep;
    rep.n = p.n();
    rep.real_components = p.n();
    rep.pair_count = 0;
    rep.r_sign = sampled_r_sign(pc, opts);
    if (rep.r_sign != 1) {
      rep.indeterminate = true;
      rep.note = "exact real decomposition but r sampled non-positive";
      return rep;
    }
    rep.descriptor = component_descriptor(pc, rep, opts);
    return rep;
  }
  SignatureReport rep = signature_from_decomposition(pc, d, opts);
  if (!rep.indeterminate) rep.descriptor = component_descriptor(pc, rep, opts);
  return rep;
}

ComponentDescriptor component_descriptor(const Tensor3<Complex>& p, const SignatureReport& sig,
                                         const SignatureOptions& opts) {
  ComponentDescriptor out;
  const int n = p.n();
  if (sig.indeterminate) return out;
  if (sig.pair_count == 0) {
    out.kind = ComponentDescriptor::Kind::RealRankN;
    return out;
  }
  if (2 * sig.pair_count < n) {
    out.kind = ComponentDescriptor::Kind::Mixed;
    out.k = sig.pair_count;
    return out;
  }

  // Signature (0, n/2): each h_i has constant sign on real points.
  const double scale = std::pow(std::max(frobenius(p), 1e-300), n);
  const double significant = opts.sign_tol * scale;
  const double floor = 1e-14 * scale;
  for (int axis = 1; axis <= 3; ++axis) {
    Rng rng(Rng::derive(opts.membership.seed, "descriptor-sign", static_cast<std::uint64_t>(axis)));
    int sign = 0;
    int strong = 0;
    bool consistent = true;
    for (int s = 0; s < opts.sign_samples; ++s) {
      std::vector<Complex> x(n);
      double norm2 = 0;
      for (int i = 0; i < n; ++i) {
        double v = rng.symmetric();
        x[i] = Complex(v, 0.0);
        norm2 += v * v;
      }
      if (norm2 < 1e-8) continue;
      for (auto& e : x) e /= std::sqrt(norm2);
      const Complex h = h_eval(p, axis, x);
      const double mag = std::abs(h.real());
      if (mag <= floor) continue;
      const int s_here = h.real() > 0 ? 1 : -1;
      if (sign == 0)
        sign = s_here;
      else if (sign != s_here)
        consistent = false;
      if (mag > significant) ++strong;
    }
    if (!consistent || sign == 0 || strong < opts.min_significant) {
      out.kind = ComponentDescriptor::Kind::Indeterminate;
      return out;
    }
    out.signs[axis - 1] = sign;
  }
  out.kind = ComponentDescriptor::Kind::SignTriple;
  out.k = sig.pair_count;
  return out;
}

}  // namespace tenrank

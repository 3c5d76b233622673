#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tenrank {

using Complex = std::complex<double>;

/// Exact rational scalar backed by GMP. Always canonical: lowest terms,
/// denominator strictly positive.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long v) : q_(v) {}  // NOLINT: implicit by design, mirrors int literals
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_.canonicalize();
  }
  explicit Rational(const mpz_class& z) : q_(z) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
    q_.canonicalize();
  }

  /// Parses "p" or "p/q" in base 10.
  static Rational from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
    if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(raw_tag{}, std::move(q));
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  double to_double() const { return q_.get_d(); }
  Complex to_complex() const { return Complex(q_.get_d(), 0.0); }

  /// Canonical text form: "p" when the denominator is 1, else "p/q".
  std::string str() const { return q_.get_str(); }

  Rational operator-() const { return Rational(raw_tag{}, -q_); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  friend Rational abs(const Rational& a) {
    return Rational(raw_tag{}, mpq_class(abs(a.q_)));
  }

  Rational pow(unsigned e) const {
    mpq_class r(1);
    mpq_class base = q_;
    unsigned k = e;
    while (k > 0) {
      if (k & 1u) r *= base;
      base *= base;
      k >>= 1u;
    }
    return Rational(raw_tag{}, std::move(r));
  }

 private:
  struct raw_tag {};
  Rational(raw_tag, mpq_class q) : q_(std::move(q)) {}  // assumed canonical
  mpq_class q_;
};

/// Complex number with exact rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit field embedding
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long v) : re(v) {}  // NOLINT

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  Complex to_complex() const { return {re.to_double(), im.to_double()}; }

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.norm2();
    if (n.is_zero()) throw std::domain_error("GaussianRational: division by zero");
    Rational r = (re * o.re + im * o.im) / n;
    Rational i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { a += b; return a; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { a -= b; return a; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { a *= b; return a; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { a /= b; return a; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::string str() const {
    if (im.is_zero()) return re.str();
    std::string s = "(" + re.str();
    s += (im.sign() < 0) ? "-" : "+";
    s += abs(im).str() + "*i)";
    return s;
  }
};

// --- scalar helpers shared by the generic containers ---

inline bool scalar_is_zero(const Rational& a) { return a.is_zero(); }
inline bool scalar_is_zero(const GaussianRational& a) { return a.is_zero(); }
inline bool scalar_is_zero(const Complex& a) { return a.real() == 0.0 && a.imag() == 0.0; }
inline bool scalar_is_zero(double a) { return a == 0.0; }

inline std::string scalar_str(const Rational& a) { return a.str(); }
inline std::string scalar_str(const GaussianRational& a) { return a.str(); }

inline Complex scalar_to_complex(const Rational& a) { return a.to_complex(); }
inline Complex scalar_to_complex(const GaussianRational& a) { return a.to_complex(); }
inline Complex scalar_to_complex(const Complex& a) { return a; }

inline GaussianRational scalar_conj(const GaussianRational& a) { return a.conj(); }
inline Rational scalar_conj(const Rational& a) { return a; }
inline Complex scalar_conj(const Complex& a) { return std::conj(a); }

template <typename S>
inline constexpr bool is_exact_scalar_v = false;
template <>
inline constexpr bool is_exact_scalar_v<Rational> = true;
template <>
inline constexpr bool is_exact_scalar_v<GaussianRational> = true;

}  // namespace tenrank

#pragma once

#include <gmpxx.h>

#include <string>

namespace holant {

// Exact complex number with rational real and imaginary parts. Everything in
// this toolkit (Holant values, fingerprints, expansion coefficients) lives in
// this domain: zero tests must be decidable, so floats are banned throughout.
class ExactScalar {
 public:
  ExactScalar() : re_(0), im_(0) {}
  // Implicit on purpose so 0, 1, -1 literals work where scalars are expected.
  ExactScalar(long v) : re_(v), im_(0) {}
  ExactScalar(const mpq_class& re) : re_(re), im_(0) { canonicalize(); }
  ExactScalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    canonicalize();
  }

  static ExactScalar i() { return ExactScalar(mpq_class(0), mpq_class(1)); }

  // Parses "p", "-p", or "p/q". Anything else (decimals, exponents) is
  // rejected: the external grammar has no floating-point literals.
  static ExactScalar from_rational_string(const std::string& text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  ExactScalar operator-() const { return ExactScalar(-re_, -im_); }
  ExactScalar operator+(const ExactScalar& o) const {
    return ExactScalar(re_ + o.re_, im_ + o.im_);
  }
  ExactScalar operator-(const ExactScalar& o) const {
    return ExactScalar(re_ - o.re_, im_ - o.im_);
  }
  ExactScalar operator*(const ExactScalar& o) const {
    return ExactScalar(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
  }
  ExactScalar operator/(const ExactScalar& o) const;

  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

  // Integer power; negative exponents invert first (error on zero base).
  ExactScalar pow(long k) const;

  bool operator==(const ExactScalar& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const ExactScalar& o) const { return !(*this == o); }
  // Lexicographic on (re, im); an ordering for containers, not a numeric one.
  bool operator<(const ExactScalar& o) const {
    int c = cmp(re_, o.re_);
    if (c != 0) return c < 0;
    return cmp(im_, o.im_) < 0;
  }

  // Real scalars render as "p/q" (denominator always printed, e.g. "3/1");
  // complex ones as "p/q+r/s*i". Serialization uses the same grammar.
  std::string str() const;

 private:
  void canonicalize() {
    re_.canonicalize();
    im_.canonicalize();
  }

  mpq_class re_;
  mpq_class im_;
};

// "p/q" with the denominator always present, the canonical external form.
std::string rational_str(const mpq_class& q);

// Exact binomial coefficient; 0 when k < 0 or k > n.
mpz_class binomial(const mpz_class& n, long k);

}  // namespace holant

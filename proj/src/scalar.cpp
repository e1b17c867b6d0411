#include "holant/scalar.hpp"

#include <cctype>

#include "holant/error.hpp"

namespace holant {

ExactScalar ExactScalar::from_rational_string(const std::string& text) {
  // Strict grammar: [+-]? digits ( "/" digits )?  -- no dots, no exponents.
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
  std::size_t digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    ++pos;
    ++digits;
  }
  if (digits == 0) throw ValidationError("not an exact rational: '" + text + "'");
  if (pos < text.size()) {
    if (text[pos] != '/') throw ValidationError("not an exact rational: '" + text + "'");
    ++pos;
    std::size_t den_digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      ++den_digits;
    }
    if (den_digits == 0 || pos != text.size())
      throw ValidationError("not an exact rational: '" + text + "'");
  }
  mpq_class q(text);
  if (q.get_den() == 0) throw ValidationError("zero denominator in '" + text + "'");
  q.canonicalize();
  return ExactScalar(q);
}

ExactScalar ExactScalar::operator/(const ExactScalar& o) const {
  if (o.is_zero()) throw ValidationError("division by zero");
  // (a+bi)/(c+di) = (a+bi)(c-di) / (c^2+d^2)
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  return ExactScalar((re_ * o.re_ + im_ * o.im_) / norm,
                     (im_ * o.re_ - re_ * o.im_) / norm);
}

ExactScalar ExactScalar::pow(long k) const {
  if (k < 0) {
    if (is_zero()) throw ValidationError("negative power of zero");
    return (ExactScalar(1) / *this).pow(-k);
  }
  ExactScalar result(1);
  ExactScalar base = *this;
  unsigned long e = static_cast<unsigned long>(k);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

std::string rational_str(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string ExactScalar::str() const {
  if (is_real()) return rational_str(re_);
  return rational_str(re_) + "+" + rational_str(im_) + "*i";
}

mpz_class binomial(const mpz_class& n, long k) {
  if (k < 0 || n < k) return 0;
  mpz_class result = 1;
  for (long j = 0; j < k; ++j) {
    result *= n - j;
    result /= j + 1;  // exact: product of j+1 consecutive integers
  }
  return result;
}

}  // namespace holant

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holant/scalar.hpp"

namespace holant {

// Tail policy for evaluating a signature beyond its stored table.
enum class TailKind { Zero, Geometric, Periodic };

// Symmetric function N -> ExactScalar, stored as a finite table for inputs
// 0..D plus a tail rule for inputs above D:
//   Zero       s(n) = 0
//   Geometric  s(n) = table[D] * ratio^(n-D)
//   Periodic   s(n) = table[D - m + 1 + ((n - D - 1) mod m)], period m >= 1
// This covers every signature the toolkit names (hw_le1, hw_ge1, s_p, alpha^n,
// one) while keeping classification decidable per tail policy.
class Signature {
 public:
  Signature() : table_{ExactScalar(0)}, tail_(TailKind::Zero) {}

  static Signature zero_tail(std::vector<ExactScalar> table);
  static Signature geometric_tail(std::vector<ExactScalar> table, ExactScalar ratio);
  static Signature periodic_tail(std::vector<ExactScalar> table, int period);

  // Named signatures.
  static Signature hw_le1();                 // 1 at 0 and 1, then 0
  static Signature hw_ge1();                 // 0 at 0, then 1
  static Signature s_p(int p);               // 1 iff n = 0 mod p
  static Signature one();                    // constantly 1
  static Signature geometric(const ExactScalar& alpha);  // alpha^n
  // Indicator of a finite degree set, as a zero-tailed table.
  static Signature indicator(const std::vector<long>& degree_set);

  ExactScalar eval(long n) const;
  ExactScalar operator()(long n) const { return eval(n); }

  const std::vector<ExactScalar>& table() const { return table_; }
  long max_index() const { return static_cast<long>(table_.size()) - 1; }
  TailKind tail_kind() const { return tail_; }
  const ExactScalar& tail_ratio() const { return ratio_; }
  int tail_period() const { return period_; }

  bool is_identically_zero() const;
  // Smallest n with s(n) != 0; nullopt for the all-zero function. Always
  // falls inside the table because every tail rule references table values.
  std::optional<long> first_nonzero_index() const;
  // If s(n) = s(0) * alpha^n for all n (decidable per tail policy), returns
  // alpha. Requires s(0) != 0; nullopt otherwise.
  std::optional<ExactScalar> geometric_form() const;

  // Representation equality: same table and tail rule. Two representations
  // of the same function may compare unequal; the named constructors are the
  // canonical spellings.
  bool operator==(const Signature& o) const;
  bool operator!=(const Signature& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Signature(std::vector<ExactScalar> table, TailKind tail, ExactScalar ratio, int period);

  std::vector<ExactScalar> table_;
  TailKind tail_;
  ExactScalar ratio_;
  int period_ = 0;
};

// If s(0) != 0 returns (s / s(0), s(0)); if s(0) = 0 returns (s, 1).
// The all-zero signature is rejected.
std::pair<Signature, ExactScalar> normalize_signature(const Signature& s);

}  // namespace holant

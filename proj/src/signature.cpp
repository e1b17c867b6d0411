#include "holant/signature.hpp"

#include <sstream>

#include "holant/error.hpp"

namespace holant {

Signature::Signature(std::vector<ExactScalar> table, TailKind tail, ExactScalar ratio,
                     int period)
    : table_(std::move(table)), tail_(tail), ratio_(std::move(ratio)), period_(period) {
  if (table_.empty()) throw ValidationError("signature table must not be empty");
  if (tail_ == TailKind::Periodic &&
      (period_ < 1 || period_ > static_cast<int>(table_.size())))
    throw ValidationError("periodic tail needs 1 <= period <= table size");
}

Signature Signature::zero_tail(std::vector<ExactScalar> table) {
  return Signature(std::move(table), TailKind::Zero, ExactScalar(0), 0);
}

Signature Signature::geometric_tail(std::vector<ExactScalar> table, ExactScalar ratio) {
  return Signature(std::move(table), TailKind::Geometric, std::move(ratio), 0);
}

Signature Signature::periodic_tail(std::vector<ExactScalar> table, int period) {
  return Signature(std::move(table), TailKind::Periodic, ExactScalar(0), period);
}

Signature Signature::hw_le1() { return zero_tail({1, 1}); }

Signature Signature::hw_ge1() { return periodic_tail({0, 1}, 1); }

Signature Signature::s_p(int p) {
  if (p < 1) throw ValidationError("s_p needs p >= 1");
  std::vector<ExactScalar> table(static_cast<std::size_t>(p), ExactScalar(0));
  table[0] = 1;
  return periodic_tail(std::move(table), p);
}

Signature Signature::one() { return geometric_tail({1}, 1); }

Signature Signature::geometric(const ExactScalar& alpha) {
  return geometric_tail({1}, alpha);
}

Signature Signature::indicator(const std::vector<long>& degree_set) {
  long max = 0;
  for (long d : degree_set) {
    if (d < 0) throw ValidationError("degree set entries must be non-negative");
    if (d > max) max = d;
  }
  std::vector<ExactScalar> table(static_cast<std::size_t>(max) + 1, ExactScalar(0));
  for (long d : degree_set) table[static_cast<std::size_t>(d)] = 1;
  return zero_tail(std::move(table));
}

ExactScalar Signature::eval(long n) const {
  if (n < 0) throw ValidationError("signature evaluated at a negative input");
  long d = max_index();
  if (n <= d) return table_[static_cast<std::size_t>(n)];
  switch (tail_) {
    case TailKind::Zero:
      return 0;
    case TailKind::Geometric:
      return table_.back() * ratio_.pow(n - d);
    case TailKind::Periodic: {
      long m = period_;
      long idx = d - m + 1 + ((n - d - 1) % m);
      return table_[static_cast<std::size_t>(idx)];
    }
  }
  throw InternalError("unreachable tail kind");
}

bool Signature::is_identically_zero() const {
  // Every tail rule only replays (scaled) table values, so an all-zero table
  // means an all-zero function.
  for (const auto& v : table_)
    if (!v.is_zero()) return false;
  return true;
}

std::optional<long> Signature::first_nonzero_index() const {
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (!table_[i].is_zero()) return static_cast<long>(i);
  return std::nullopt;
}

std::optional<ExactScalar> Signature::geometric_form() const {
  if (table_[0].is_zero()) return std::nullopt;
  const ExactScalar s0 = table_[0];
  long d = max_index();

  // Candidate ratio from the table (or the tail rule when the table is bare).
  ExactScalar alpha(0);
  if (d >= 1)
    alpha = table_[1] / s0;
  else if (tail_ == TailKind::Geometric)
    alpha = ratio_;
  else if (tail_ == TailKind::Periodic)
    // Single-entry periodic table: constant continuation, i.e. ratio 1.
    alpha = 1;
  // Single-entry zero tail: s(n>0) = 0, geometric with ratio 0.

  ExactScalar expect = s0;
  for (long n = 1; n <= d; ++n) {
    expect *= alpha;
    if (eval(n) != expect) return std::nullopt;
  }

  // The tail must continue s0 * alpha^n forever.
  switch (tail_) {
    case TailKind::Zero:
      // Needs s0 * alpha^n = 0 beyond D, i.e. alpha = 0 (0^0 = 1 keeps s(0)).
      if (d >= 1 && !alpha.is_zero()) return std::nullopt;
      if (d == 0) alpha = 0;
      return alpha;
    case TailKind::Geometric:
      if (table_.back().is_zero()) {
        // Tail is identically zero; same situation as the zero tail.
        if (!alpha.is_zero()) return std::nullopt;
        return alpha;
      }
      if (ratio_ != alpha) return std::nullopt;
      return alpha;
    case TailKind::Periodic: {
      // The tail replays the last `period_` table entries cyclically, so the
      // geometric continuation must itself be periodic: alpha^m = 1, and the
      // first replayed entry must match s0 * alpha^(D+1).
      long m = period_;
      if (alpha.is_zero()) {
        // All replayed entries must be zero.
        for (long idx = d - m + 1; idx <= d; ++idx)
          if (!table_[static_cast<std::size_t>(idx)].is_zero()) return std::nullopt;
        return alpha;
      }
      if (alpha.pow(m) != ExactScalar(1)) return std::nullopt;
      if (eval(d + 1) != s0 * alpha.pow(d + 1)) return std::nullopt;
      return alpha;
    }
  }
  throw InternalError("unreachable tail kind");
}

bool Signature::operator==(const Signature& o) const {
  if (tail_ != o.tail_ || table_.size() != o.table_.size()) return false;
  if (tail_ == TailKind::Geometric && ratio_ != o.ratio_) return false;
  if (tail_ == TailKind::Periodic && period_ != o.period_) return false;
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] != o.table_[i]) return false;
  return true;
}

std::string Signature::str() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out << ",";
    out << table_[i].str();
  }
  out << "]";
  switch (tail_) {
    case TailKind::Zero:
      out << " zero-tail";
      break;
    case TailKind::Geometric:
      out << " geometric-tail(" << ratio_.str() << ")";
      break;
    case TailKind::Periodic:
      out << " periodic-tail(" << period_ << ")";
      break;
  }
  return out.str();
}

std::pair<Signature, ExactScalar> normalize_signature(const Signature& s) {
  if (s.is_identically_zero())
    throw ValidationError("cannot normalize the all-zero signature");
  ExactScalar s0 = s.eval(0);
  if (s0.is_zero()) return {s, ExactScalar(1)};
  std::vector<ExactScalar> table = s.table();
  for (auto& v : table) v /= s0;
  switch (s.tail_kind()) {
    case TailKind::Zero:
      return {Signature::zero_tail(std::move(table)), s0};
    case TailKind::Geometric:
      return {Signature::geometric_tail(std::move(table), s.tail_ratio()), s0};
    case TailKind::Periodic:
      return {Signature::periodic_tail(std::move(table), s.tail_period()), s0};
  }
  throw InternalError("unreachable tail kind");
}

}  // namespace holant

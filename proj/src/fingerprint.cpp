#include "holant/fingerprint.hpp"

#include <string>

#include "holant/error.hpp"

namespace holant {

namespace {

// Restricted-growth strings: block[i] <= 1 + max(block[0..i-1]).
void partitions_rec(int a, int i, int next_free, std::vector<int>& block,
                    const std::function<void(const SetPartition&)>& fn) {
  if (i == a) {
    SetPartition p;
    p.ground = a;
    p.blocks.assign(static_cast<std::size_t>(next_free), {});
    for (int j = 0; j < a; ++j)
      p.blocks[static_cast<std::size_t>(block[static_cast<std::size_t>(j)])].push_back(j);
    fn(p);
    return;
  }
  for (int b = 0; b <= next_free; ++b) {
    block[static_cast<std::size_t>(i)] = b;
    partitions_rec(a, i + 1, b == next_free ? next_free + 1 : next_free, block, fn);
  }
}

mpz_class factorial(long n) {
  mpz_class f = 1;
  for (long j = 2; j <= n; ++j) f *= j;
  return f;
}

}  // namespace

void for_each_set_partition(int a, const std::function<void(const SetPartition&)>& fn) {
  if (a < 1) throw ValidationError("set partitions need a ground set of size >= 1");
  if (a > kPartitionCap)
    throw GuardError("set partition enumeration capped at ground size " +
                     std::to_string(kPartitionCap) + ", got " + std::to_string(a));
  std::vector<int> block(static_cast<std::size_t>(a), 0);
  partitions_rec(a, 0, 0, block, fn);
}

std::vector<SetPartition> enumerate_set_partitions(int a) {
  std::vector<SetPartition> out;
  for_each_set_partition(a, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

FingerprintValue fingerprint(int a, const Signature& s) {
  if (a < 1) throw ValidationError("fingerprint needs a >= 1");
  if (s.is_identically_zero()) return ExactScalar(0);
  ExactScalar s0 = s.eval(0);
  if (s0.is_zero()) return std::nullopt;

  ExactScalar total(0);
  for_each_set_partition(a, [&](const SetPartition& p) {
    std::size_t parts = p.blocks.size();
    ExactScalar term(mpq_class(factorial(static_cast<long>(parts) - 1)));
    if ((parts - 1) % 2 == 1) term = -term;
    for (const auto& block : p.blocks)
      term *= s.eval(static_cast<long>(block.size())) / s0;
    total += term;
  });
  return total;
}

FingerprintValue fingerprint_fast(int a, const Signature& s) {
  if (a < 1) throw ValidationError("fingerprint needs a >= 1");
  if (s.is_identically_zero()) return ExactScalar(0);
  if (s.eval(0).is_zero()) return std::nullopt;
  return fingerprint_table(a, s)[static_cast<std::size_t>(a - 1)];
}

std::vector<ExactScalar> fingerprint_table(int a_max, const Signature& s) {
  if (a_max < 1) throw ValidationError("fingerprint table needs a_max >= 1");
  ExactScalar s0 = s.eval(0);
  if (s0.is_zero())
    throw ValidationError("fingerprint recurrence needs s(0) != 0");

  // ratio[n] = s(n)/s(0); chi[a] falls out of the convolution identity.
  std::vector<ExactScalar> ratio(static_cast<std::size_t>(a_max) + 1);
  for (int n = 0; n <= a_max; ++n) ratio[static_cast<std::size_t>(n)] = s.eval(n) / s0;

  std::vector<ExactScalar> chi(static_cast<std::size_t>(a_max) + 1, ExactScalar(0));
  for (int a = 1; a <= a_max; ++a) {
    ExactScalar acc = ratio[static_cast<std::size_t>(a)];
    for (int j = 1; j < a; ++j) {
      ExactScalar c(mpq_class(binomial(a - 1, j - 1)));
      acc -= c * chi[static_cast<std::size_t>(j)] * ratio[static_cast<std::size_t>(a - j)];
    }
    chi[static_cast<std::size_t>(a)] = acc;
  }
  return std::vector<ExactScalar>(chi.begin() + 1, chi.end());
}

SignatureType classify(const SignatureSet& set, int bound) {
  if (bound < 3) throw ValidationError("classification bound must be at least 3");

  SignatureType verdict;
  verdict.bound = bound;

  std::vector<int> live;  // indices of S \ S_0
  for (std::size_t i = 0; i < set.members.size(); ++i)
    if (!set.in_zero_part(static_cast<int>(i))) live.push_back(static_cast<int>(i));

  if (live.empty()) {
    verdict.tag = TypeTag::T1;
    verdict.vacuous = true;
    verdict.exact = true;
    return verdict;
  }

  std::vector<std::vector<ExactScalar>> tables;
  tables.reserve(live.size());
  for (int idx : live)
    tables.push_back(fingerprint_table(bound, set.members[static_cast<std::size_t>(idx)]));

  // Tinf beats T2: scan a ascending so the witness uses the smallest a.
  for (int a = 3; a <= bound; ++a)
    for (std::size_t m = 0; m < live.size(); ++m) {
      const ExactScalar& chi = tables[m][static_cast<std::size_t>(a - 1)];
      if (!chi.is_zero()) {
        verdict.tag = TypeTag::Tinf;
        verdict.witness = SignatureType::Witness{a, live[m], chi};
        verdict.exact = true;  // a non-zero fingerprint is a proof
        return verdict;
      }
    }

  for (std::size_t m = 0; m < live.size(); ++m) {
    const ExactScalar& chi = tables[m][1];
    if (!chi.is_zero()) {
      verdict.tag = TypeTag::T2;
      verdict.witness = SignatureType::Witness{2, live[m], chi};
      // "No chi(a) != 0 for a > 2" was only checked up to the bound.
      verdict.exact = false;
      return verdict;
    }
  }

  verdict.tag = TypeTag::T1;
  verdict.exact = true;
  for (int idx : live)
    if (!set.members[static_cast<std::size_t>(idx)].geometric_form()) {
      verdict.exact = false;  // fingerprints vanish up to the bound only
      break;
    }
  return verdict;
}

}  // namespace holant

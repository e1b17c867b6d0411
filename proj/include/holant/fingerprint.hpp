#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "holant/grid.hpp"
#include "holant/scalar.hpp"
#include "holant/signature.hpp"

namespace holant {

// Partition of the ground set {0, .., a-1} into non-empty blocks.
struct SetPartition {
  int ground = 0;
  std::vector<std::vector<int>> blocks;
};

inline constexpr int kPartitionCap = 12;

// Calls fn once per partition of {0, .., a-1}; Bell(a) calls in total.
void for_each_set_partition(int a, const std::function<void(const SetPartition&)>& fn);
std::vector<SetPartition> enumerate_set_partitions(int a);

// The fingerprint chi(a, s):
//   s identically zero       -> 0
//   s(0) = 0, s not zero     -> undefined (nullopt; a value, not an error)
//   otherwise                -> sum over partitions sigma of [a] of
//                               (-1)^(|sigma|-1) (|sigma|-1)! prod_B s(|B|)/s(0)
using FingerprintValue = std::optional<ExactScalar>;

FingerprintValue fingerprint(int a, const Signature& s);

// Same value via the convolution recurrence
//   s(a)/s(0) = sum_{j=1..a} C(a-1, j-1) chi(j) s(a-j)/s(0),
// which avoids partition enumeration. Undefined when s(0) = 0.
FingerprintValue fingerprint_fast(int a, const Signature& s);

// chi(1..a_max) by the recurrence; requires s(0) != 0.
std::vector<ExactScalar> fingerprint_table(int a_max, const Signature& s);

enum class TypeTag { T1, T2, Tinf };

struct SignatureType {
  struct Witness {
    int a = 0;
    int member = 0;  // index into the classified set
    ExactScalar chi;
  };
  TypeTag tag = TypeTag::T1;
  std::optional<Witness> witness;
  int bound = 0;         // the cutoff A the verdict was computed at
  bool exact = false;    // conclusive (witness, or closed-form tail decision)
  bool vacuous = false;  // S minus S_0 was empty
};

// Classifies S \ S_0 (members with s(0) = 0 are split off first):
//   Tinf  if some chi(a, s) != 0 with 3 <= a <= bound (witness is a proof),
//   T2    else if some chi(2, s) != 0 (relative to the bound),
//   T1    otherwise; exact iff every member is geometric, i.e. provably has
//         all fingerprints zero, otherwise relative to the bound.
SignatureType classify(const SignatureSet& set, int bound = 8);

}  // namespace holant

#pragma once

#include <map>
#include <string>
#include <vector>

#include "holant/grid.hpp"
#include "holant/scalar.hpp"

namespace holant {

enum class Method { Brute, FptT1, FptZeros };
std::string method_name(Method m);

struct WorkStats {
  long long subsets = 0;       // brute-force leaves enumerated
  long long compositions = 0;  // FPT composition leaves enumerated
};

struct HolantResult {
  ExactScalar value;
  Method method = Method::Brute;
  WorkStats work;
  std::string note;  // routing annotation from holant_auto, empty otherwise
};

inline constexpr long long kDefaultBudget = 100'000'000;

// The defining sum: over all k-subsets of edge copies, the product over
// vertices of s_v(|A intersect E(v)|). Errors when C(|E|, k) exceeds budget.
HolantResult holant_bruteforce(const SignatureGrid& grid, long k,
                               long long budget = kDefaultBudget);

// Edge classes for the geometric route: edges grouped by how many of their
// vertices fall into each ratio class a_i = s_v(1)/s_v(0).
struct EdgeClassPartition {
  std::vector<ExactScalar> ratios;                // a_1..a_z, ordered by value
  std::map<std::vector<int>, long long> classes;  // lambda -> |E_lambda| (with mult)
};
EdgeClassPartition t1_edge_classes(const SignatureGrid& grid);

// Geometric-signature route on a uniform grid: every signature must satisfy
// s(0) != 0 and s(n) = s(0) * (s(1)/s(0))^n. Work is bounded by compositions
// of k over the edge classes, never by C(|E|, k).
HolantResult holant_fpt_t1(const SignatureGrid& grid, long k);

// Extension that tolerates vertices with s(0) = 0: shortcut to 0 when more
// than k*rank of them exist, otherwise enumerate the edges inside the zero
// part (grouped by multiplicity) and compose the rest per (W, mu) class.
HolantResult holant_fpt_zeros(const SignatureGrid& grid, long k);

// Edge classes for the zeros route, exposed for the partition invariants.
struct ZeroClassKey {
  std::vector<int> w;   // the exact intersection with N_0 (local indices)
  std::vector<int> mu;  // ratio-class counts of the rest of the edge
  auto operator<=>(const ZeroClassKey&) const = default;
};
struct ZeroEdgeClasses {
  std::vector<int> n0;                           // vertices with s(0) = 0
  std::vector<ExactScalar> ratios;
  std::map<ZeroClassKey, long long> classes;     // edges not inside N_0
  std::vector<std::pair<std::vector<int>, long>> g0;  // edges inside N_0 + mult
};
ZeroEdgeClasses zero_edge_classes(const SignatureGrid& grid);

// Pads every edge to the rank with fresh constant-one vertices; the Holant
// value is preserved at every k. Uniform grids come back unchanged.
SignatureGrid uniformize(const SignatureGrid& grid);

// Classifies the grid's signature set and routes: certified-geometric sets go
// to the FPT paths (uniformizing first when needed), everything else falls
// back to brute force. The note records the route taken and why.
HolantResult holant_auto(const SignatureGrid& grid, long k,
                         long long budget = kDefaultBudget, int bound = 8);

}  // namespace holant

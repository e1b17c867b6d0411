#pragma once

#include <utility>
#include <vector>

#include "holant/grid.hpp"
#include "holant/hypergraph.hpp"
#include "holant/scalar.hpp"
#include "holant/signature.hpp"

namespace holant {

// Symmetric weighted constraint: the function is evaluated on the Hamming
// weight of the scope assignment, so a Signature carries it. The declared
// arity must match the scope length.
struct VcspConstraint {
  Signature function;
  long arity = 0;
  std::vector<int> scope;  // distinct variable indices
};

struct VcspInstance {
  int n_variables = 0;
  std::vector<VcspConstraint> constraints;
  long k = 0;  // weight of the sought assignments
};

// Constraints become vertices, variables become hyperedges (one per variable,
// collecting the constraints whose scope mentions it); equal incidence sets
// merge into multi-edges. A variable occurring nowhere has no edge to carry
// it and is rejected.
std::pair<SignatureGrid, long> vcsp_to_holant(const VcspInstance& inst);

// Dual direction: edge copies become variables, vertices become constraints.
VcspInstance holant_to_vcsp(const SignatureGrid& grid, long k);

// Asserts Holant(target, target_k) = scale * Holant(source, source_k) + offset.
struct GadgetCertificate {
  SignatureGrid source;
  long source_k = 0;
  SignatureGrid target;
  long target_k = 0;
  ExactScalar scale;
  ExactScalar offset;  // always zero for the gadgets built here
};

// Brute-force check of the certificate identity (exact, budget-guarded).
bool verify_certificate(const GadgetCertificate& cert, long long budget = 100'000'000);

// Rank lift for a single-signature graph grid with s(0) = 1 and s(1) != 0:
// every edge gains d-2 fresh degree-1 vertices carrying s, the parameter is
// unchanged, and the target Holant picks up s(1)^(k(d-2)).
GadgetCertificate pad_gadget(const SignatureGrid& grid, long k, int d);

// Connected d-uniform gadget with exactly two degree-1 vertices x and y that
// share an edge; every other vertex has degree 2.
struct BridgeGadget {
  Hypergraph graph;
  int x = 0;
  int y = 0;
};

// Smallest such gadget by edge count, from exhaustive search over canonical
// d-uniform hypergraphs. Gadgets without internal vertices are skipped: the
// replacement below relies on interior degree-2 vertices to kill partially
// selected copies, and a bare edge would lift nothing.
BridgeGadget find_bridge_gadget(int d, int search_cap = 4);

// Rank lift for s(0) = 1, s(1) = 0, s(2) != 0: each edge {u, v} is replaced
// by a copy of the bridge (x onto v, y onto u), k' = k * |E(B)|, and the
// target Holant picks up s(2)^(k(|V(B)|-2)).
GadgetCertificate bridge_lift(const SignatureGrid& grid, long k, int d,
                              const BridgeGadget& bridge);

// Connected d-uniform b-regular hypergraph; i indexes an infinite family of
// increasing size (i >= 2 for b >= 2; for b = 1 the single edge is returned).
Hypergraph gen_regular_connected(int d, int b, int i);

// Number of ways to pick disjoint edge copies that partition the vertex set
// (for simple hypergraphs this is the perfect matching count; parallel copies
// multiply). Backtracking with a node budget.
long long count_perfect_matchings(const Hypergraph& g,
                                  long long budget = 100'000'000);

// Holant instance whose value equals scale * #PerfMatch(G).
struct PmInstance {
  SignatureGrid grid;
  long k = 0;
  ExactScalar scale;
};

// Graph reduction for s(0) = 0: with s(1) != 0 the grid is G itself at
// k = n/2; otherwise each vertex receives a clique gadget forcing its other
// b-1 slots, with cliques matched up in pairs. Odd n yields a trivially zero
// instance.
PmInstance pm_gadget_graph(const Hypergraph& g, const Signature& s);

enum class PmMode { ZeroSig, SizeForced };

// Hypergraph reduction. ZeroSig needs s(0) = 0 (the b = 1 case is direct, the
// general case attaches connected (b-1)-regular gadgets). SizeForced handles
// s(0) != 0, s(1) = s(2) = 0 with b >= 3 by oversizing the gadget so that any
// contributing edge set must take every gadget edge.
PmInstance pm_gadget_hyper(const Hypergraph& g, const Signature& s, PmMode mode);

// Removes duplicate-incidence vertices, then forms the dual grid: one vertex
// per distinct edge of G, one hyperedge per surviving vertex, everything
// carrying the at-least-one signature. Holant(dual, k) counts the k-hitting
// sets of the deduplicated G.
std::pair<SignatureGrid, long> hitting_set_holant(const Hypergraph& g, long k);

// The vertex deduplication used above, exposed for testing.
Hypergraph dedup_hypergraph(const Hypergraph& g);

struct MatrixModP {
  long p = 2;
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<long>> entries;  // row-major, values in {0, 1}
};

// Rows become vertices carrying the divisibility signature for p, columns
// become hyperedges over their nonzero rows. Holant(grid, k) counts the 0/1
// vectors of Hamming weight k in the kernel of A over Z/p. Entries other than
// 0 and 1 are rejected: a coefficient c >= 2 has no edge encoding, since
// parallel copies are selected independently.
std::pair<SignatureGrid, long> build_codeword_instance(const MatrixModP& a, long k);

// Grid over H whose Holant at k counts the k-edge subsets in which every
// vertex degree lies in the given set. All vertices carry the indicator, so
// untouched vertices need 0 in the set; it is required.
std::pair<SignatureGrid, long> build_factor_instance(
    const Hypergraph& h, const std::vector<long>& degree_set, long k);

}  // namespace holant

#pragma once

#include <functional>
#include <vector>

#include "holant/grid.hpp"
#include "holant/hypergraph.hpp"
#include "holant/scalar.hpp"

namespace holant {

// Partition of the vertex set {0, .., n-1} of a host hypergraph.
struct VertexPartition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  static VertexPartition discrete(int n);  // every vertex its own block
  static VertexPartition coarsest(int n);  // one block
};

// Moebius function of the partition lattice: sigma must refine rho; the value
// is the product over rho's blocks of (-1)^(t-1) (t-1)! where t counts the
// sigma-blocks inside. mobius(rho) is the shorthand with sigma discrete.
long long mobius(const VertexPartition& sigma, const VertexPartition& rho);
long long mobius(const VertexPartition& rho);

// Quotient hypergraph: vertices are rho's blocks; each edge maps to the set
// of blocks it intersects; the resulting edge multiset is deduplicated.
// Blocks inherit colours and must not mix them.
Hypergraph quotient(const Hypergraph& h, const VertexPartition& rho);

// Homomorphisms: vertex maps where the image of each edge, taken as a set
// (which may be smaller than the edge), is an edge of the target.
// Colour-preserving when both sides are coloured.
long long count_hom(const Hypergraph& h, const Hypergraph& g);

// Injective homomorphisms, by direct backtracking.
long long count_emb(const Hypergraph& h, const Hypergraph& g);

// The same count through Moebius inversion over coarsenings of sigma:
//   Emb(H/sigma -> G) = sum_{rho >= sigma} mu(sigma, rho) Hom(H/rho -> G).
// The overload without sigma starts from the discrete partition.
long long count_emb_mobius(const Hypergraph& h, const Hypergraph& g,
                           const VertexPartition& sigma);
long long count_emb_mobius(const Hypergraph& h, const Hypergraph& g);

// Automorphisms by permutation backtracking (multiplicity-preserving).
long long count_aut(const Hypergraph& h);

// Sub = Emb / Aut; the division must come out integral.
long long count_sub(const Hypergraph& h, const Hypergraph& g);

inline constexpr int kEnumEdgeCap = 4;
inline constexpr int kEnumRankCap = 4;

// All isomorphism types of r-uniform hypergraphs with exactly k hyperedges
// and no isolated vertices, canonically labelled. With palette > 0 the
// vertices additionally carry colours 0..palette-1.
std::vector<Hypergraph> enumerate_uniform_hypergraphs(int k, int r, int palette = 0);
// Union over 1..k edges.
std::vector<Hypergraph> enumerate_uniform_hypergraphs_upto(int k, int r,
                                                           int palette = 0);

// Coefficient of the pattern F in the expansion of Holant(., k) over
// homomorphism counts. Signatures must be normalized (s(0) = 1): untouched
// vertices have to contribute a factor of one for the expansion to exist.
ExactScalar zeta_coefficient(long k, const Signature& s, const Hypergraph& f);
// Coloured variant: F's colours index the members of S.
ExactScalar zeta_coefficient(long k, const SignatureSet& set, const Hypergraph& f);

// For F with exactly k edges the coefficient collapses to
// (1/#Aut F) * prod_v chi(deg_F(v), s).
ExactScalar zeta_closed_form(long k, const Signature& s, const Hypergraph& f);

struct HomTerm {
  Hypergraph pattern;
  ExactScalar coefficient;
};
struct HomExpansion {
  long k = 0;
  int rank = 0;
  std::vector<HomTerm> terms;  // non-zero coefficients, patterns canonical
};

HomExpansion hom_expansion(long k, const Signature& s, int r);
HomExpansion hom_expansion(long k, const SignatureSet& set, int r);

// Sum of coefficient * Hom(pattern -> G) over the expansion's terms.
ExactScalar evaluate_expansion(const HomExpansion& expansion, const Hypergraph& g);

// Tensor product of r-uniform hypergraphs on the vertex-pair set: r distinct
// pairs form an edge iff both projections are edges. Hom counts multiply
// across the product.
Hypergraph tensor_product(const Hypergraph& g, const Hypergraph& h);

// Recovers the coefficients of an unknown linear combination of Hom counts
// over the r-uniform patterns with at most k edges, by evaluating the oracle
// on sub-hypergraphs of the patterns until the Hom matrix has full rank.
HomExpansion dedekind_interpolate(
    const std::function<ExactScalar(const Hypergraph&)>& oracle, long k, int r);

}  // namespace holant

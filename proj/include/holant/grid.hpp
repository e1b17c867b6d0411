#pragma once

#include <vector>

#include "holant/hypergraph.hpp"
#include "holant/signature.hpp"

namespace holant {

// A hypergraph with one signature per vertex: the instance object of every
// Holant computation in this toolkit.
struct SignatureGrid {
  Hypergraph graph;
  std::vector<Signature> assignment;  // indexed by vertex

  const Signature& sig(int v) const { return assignment[static_cast<std::size_t>(v)]; }
};

// Validates and assembles a grid: every vertex assigned, no all-zero
// signature, and (when the hypergraph is coloured) equal colours carry equal
// signatures so colour-preserving maps respect signatures.
SignatureGrid build_grid(Hypergraph graph, std::vector<Signature> assignment);

// The distinct signatures of a set or grid, in first-occurrence order,
// together with the derived zero part S_0 = { s : s(0) = 0 }.
struct SignatureSet {
  std::vector<Signature> members;
  std::vector<int> zero_part;  // indices into members

  bool in_zero_part(int idx) const;
};

SignatureSet make_signature_set(std::vector<Signature> members);
SignatureSet signature_set_of(const SignatureGrid& grid);

// Member index of each vertex's signature, aligned with signature_set_of.
std::vector<int> signature_colouring(const SignatureGrid& grid);

}  // namespace holant

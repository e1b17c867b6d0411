#pragma once

#include <string>

#include "holant/hypergraph.hpp"

namespace holant {

struct CanonicalForm {
  // Two hypergraphs (with colourings) have equal encodings iff a
  // colour-preserving isomorphism exists.
  std::string encoding;
  // The same hypergraph relabelled into its canonical labelling.
  Hypergraph relabelled;
};

// Canonical form via per-component label refinement plus exhaustive
// permutation search inside refinement classes. Intended for small inputs;
// trips a guard when a component is too large or the class structure leaves
// too many permutations to try.
CanonicalForm canonical_form(const Hypergraph& h);

bool is_isomorphic(const Hypergraph& a, const Hypergraph& b);

// Reference check: tries all vertex bijections. Only for tiny inputs.
bool brute_isomorphic(const Hypergraph& a, const Hypergraph& b);

}  // namespace holant

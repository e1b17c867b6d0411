#include "holant/grid.hpp"

#include <algorithm>
#include <string>

#include "holant/error.hpp"

namespace holant {

SignatureGrid build_grid(Hypergraph graph, std::vector<Signature> assignment) {
  if (static_cast<int>(assignment.size()) != graph.n())
    throw ValidationError("grid needs exactly one signature per vertex (" +
                          std::to_string(graph.n()) + " vertices, " +
                          std::to_string(assignment.size()) + " signatures)");
  for (std::size_t v = 0; v < assignment.size(); ++v)
    if (assignment[v].is_identically_zero())
      throw ValidationError("vertex " + std::to_string(v) +
                            " carries the all-zero signature, which is rejected");
  if (graph.has_colours()) {
    // Same colour must mean same signature, otherwise colour-preserving
    // homomorphisms would not respect the signature assignment.
    for (int u = 0; u < graph.n(); ++u)
      for (int v = u + 1; v < graph.n(); ++v)
        if (graph.colour(u) == graph.colour(v) &&
            assignment[static_cast<std::size_t>(u)] != assignment[static_cast<std::size_t>(v)])
          throw ValidationError("vertices " + std::to_string(u) + " and " +
                                std::to_string(v) +
                                " share a colour but carry different signatures");
  }
  return SignatureGrid{std::move(graph), std::move(assignment)};
}

bool SignatureSet::in_zero_part(int idx) const {
  return std::find(zero_part.begin(), zero_part.end(), idx) != zero_part.end();
}

SignatureSet make_signature_set(std::vector<Signature> members) {
  SignatureSet set;
  for (auto& s : members) {
    bool seen = false;
    for (const auto& m : set.members)
      if (m == s) {
        seen = true;
        break;
      }
    if (!seen) set.members.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < set.members.size(); ++i)
    if (set.members[i].eval(0).is_zero()) set.zero_part.push_back(static_cast<int>(i));
  return set;
}

SignatureSet signature_set_of(const SignatureGrid& grid) {
  return make_signature_set(grid.assignment);
}

std::vector<int> signature_colouring(const SignatureGrid& grid) {
  SignatureSet set = signature_set_of(grid);
  std::vector<int> colouring;
  colouring.reserve(grid.assignment.size());
  for (const auto& s : grid.assignment) {
    for (std::size_t i = 0; i < set.members.size(); ++i)
      if (set.members[i] == s) {
        colouring.push_back(static_cast<int>(i));
        break;
      }
  }
  return colouring;
}

}  // namespace holant

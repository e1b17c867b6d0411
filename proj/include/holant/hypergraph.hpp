#pragma once

#include <optional>
#include <string>
#include <vector>

namespace holant {

// Hypergraph: n vertices 0..n-1 and a multiset of hyperedges. Each hyperedge
// is a set of vertices (stored sorted, repeats rejected); multiplicity is a
// count per distinct edge. Empty edges are legal: the hitting-set dual and
// zero columns of mod-p matrices genuinely produce them.
class Hypergraph {
 public:
  explicit Hypergraph(int n = 0);

  int n() const { return n_; }

  // Sorts, validates, and merges into an existing distinct edge if present.
  void add_edge(std::vector<int> verts, long mult = 1);

  // Distinct edges in lexicographic order, with parallel multiplicities.
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  const std::vector<long>& mult() const { return mult_; }
  int distinct_edge_count() const { return static_cast<int>(edges_.size()); }
  long edge_count() const;  // with multiplicity

  int rank() const;  // max edge cardinality, 0 when there are no edges
  // Common edge size when all edges agree (0 for an empty edge set).
  std::optional<int> uniformity() const;
  bool is_uniform(int d) const { return uniformity() == d; }
  bool is_simple() const;

  long degree(int v) const;  // with multiplicity
  // Indices into edges() of the distinct edges containing v.
  const std::vector<int>& incident(int v) const;

  bool has_colours() const { return colours_.has_value(); }
  const std::vector<int>& colours() const;
  void set_colours(std::vector<int> colours);
  int colour(int v) const { return colours()[static_cast<std::size_t>(v)]; }

  // Structural (labelled) equality, including colours and multiplicities.
  bool operator==(const Hypergraph& o) const;
  bool operator!=(const Hypergraph& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void check_vertex(int v) const;

  int n_;
  std::vector<std::vector<int>> edges_;
  std::vector<long> mult_;
  std::optional<std::vector<int>> colours_;
  mutable std::vector<std::vector<int>> incident_;
  mutable bool incident_valid_ = false;
};

// Convenience builders used all over the tests.
Hypergraph complete_graph(int n);               // K_n, 2-uniform
Hypergraph cycle_graph(int n);                  // C_n
Hypergraph path_graph(int n);                   // path on n vertices
Hypergraph single_edge(int r);                  // one r-edge on fresh vertices

}  // namespace holant

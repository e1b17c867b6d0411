#include "holant/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "holant/error.hpp"

namespace holant {

Hypergraph::Hypergraph(int n) : n_(n) {
  if (n < 0) throw ValidationError("vertex count must be non-negative");
}

void Hypergraph::check_vertex(int v) const {
  if (v < 0 || v >= n_)
    throw ValidationError("vertex id " + std::to_string(v) + " out of range [0, " +
                          std::to_string(n_) + ")");
}

void Hypergraph::add_edge(std::vector<int> verts, long mult) {
  if (mult < 1) throw ValidationError("edge multiplicity must be positive");
  std::sort(verts.begin(), verts.end());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    check_vertex(verts[i]);
    if (i > 0 && verts[i] == verts[i - 1])
      throw ValidationError("hyperedge contains a repeated vertex");
  }
  auto it = std::lower_bound(edges_.begin(), edges_.end(), verts);
  if (it != edges_.end() && *it == verts) {
    mult_[static_cast<std::size_t>(it - edges_.begin())] += mult;
  } else {
    mult_.insert(mult_.begin() + (it - edges_.begin()), mult);
    edges_.insert(it, std::move(verts));
  }
  incident_valid_ = false;
}

long Hypergraph::edge_count() const {
  return std::accumulate(mult_.begin(), mult_.end(), 0L);
}

int Hypergraph::rank() const {
  std::size_t r = 0;
  for (const auto& e : edges_) r = std::max(r, e.size());
  return static_cast<int>(r);
}

std::optional<int> Hypergraph::uniformity() const {
  if (edges_.empty()) return 0;
  std::size_t d = edges_.front().size();
  for (const auto& e : edges_)
    if (e.size() != d) return std::nullopt;
  return static_cast<int>(d);
}

bool Hypergraph::is_simple() const {
  for (long m : mult_)
    if (m != 1) return false;
  return true;
}

long Hypergraph::degree(int v) const {
  check_vertex(v);
  long deg = 0;
  for (int ei : incident(v)) deg += mult_[static_cast<std::size_t>(ei)];
  return deg;
}

const std::vector<int>& Hypergraph::incident(int v) const {
  check_vertex(v);
  if (!incident_valid_) {
    incident_.assign(static_cast<std::size_t>(n_), {});
    for (std::size_t ei = 0; ei < edges_.size(); ++ei)
      for (int u : edges_[ei]) incident_[static_cast<std::size_t>(u)].push_back(static_cast<int>(ei));
    incident_valid_ = true;
  }
  return incident_[static_cast<std::size_t>(v)];
}

const std::vector<int>& Hypergraph::colours() const {
  if (!colours_) throw ValidationError("hypergraph has no colouring");
  return *colours_;
}

void Hypergraph::set_colours(std::vector<int> colours) {
  if (static_cast<int>(colours.size()) != n_)
    throw ValidationError("colouring must assign every vertex exactly one colour");
  colours_ = std::move(colours);
}

bool Hypergraph::operator==(const Hypergraph& o) const {
  return n_ == o.n_ && edges_ == o.edges_ && mult_ == o.mult_ && colours_ == o.colours_;
}

std::string Hypergraph::str() const {
  std::ostringstream out;
  out << "n=" << n_ << " edges={";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) out << ", ";
    out << "{";
    for (std::size_t j = 0; j < edges_[i].size(); ++j) {
      if (j) out << ",";
      out << edges_[i][j];
    }
    out << "}";
    if (mult_[i] != 1) out << "x" << mult_[i];
  }
  out << "}";
  return out.str();
}

Hypergraph complete_graph(int n) {
  Hypergraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge({u, v});
  return g;
}

Hypergraph cycle_graph(int n) {
  if (n < 3) throw ValidationError("cycle needs at least 3 vertices");
  Hypergraph g(n);
  for (int v = 0; v < n; ++v) g.add_edge({v, (v + 1) % n});
  return g;
}

Hypergraph path_graph(int n) {
  Hypergraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge({v, v + 1});
  return g;
}

Hypergraph single_edge(int r) {
  Hypergraph g(r);
  std::vector<int> e(static_cast<std::size_t>(r));
  std::iota(e.begin(), e.end(), 0);
  g.add_edge(e);
  return g;
}

}  // namespace holant

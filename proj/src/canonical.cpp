#include "holant/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "holant/error.hpp"

namespace holant {

namespace {

constexpr int kComponentVertexCap = 12;
constexpr long kPermutationBudget = 5'000'000;

struct Component {
  std::vector<int> verts;               // original ids, ascending
  std::vector<std::vector<int>> edges;  // local ids into verts
  std::vector<long> mult;
};

// Union-find over vertices; edges glue their members together.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

std::string encode_component(const Component& comp, const std::vector<int>& colour,
                             const std::vector<int>& new_id) {
  std::vector<std::pair<std::vector<int>, long>> edges;
  edges.reserve(comp.edges.size());
  for (std::size_t i = 0; i < comp.edges.size(); ++i) {
    std::vector<int> e;
    e.reserve(comp.edges[i].size());
    for (int v : comp.edges[i]) e.push_back(new_id[static_cast<std::size_t>(v)]);
    std::sort(e.begin(), e.end());
    edges.emplace_back(std::move(e), comp.mult[i]);
  }
  std::sort(edges.begin(), edges.end());

  std::ostringstream out;
  out << "n=" << comp.verts.size() << ";c=";
  // Colours listed in new-id order.
  std::vector<int> cols(comp.verts.size(), 0);
  for (std::size_t local = 0; local < comp.verts.size(); ++local)
    cols[static_cast<std::size_t>(new_id[local])] = colour[local];
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out << ",";
    out << cols[i];
  }
  out << ";e=";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out << "|";
    for (std::size_t j = 0; j < edges[i].first.size(); ++j) {
      if (j) out << ",";
      out << edges[i].first[j];
    }
    out << "x" << edges[i].second;
  }
  return out.str();
}

// Iterative refinement: vertices get string labels built from colour, degree
// and the labels seen across incident edges; classes are the label groups.
// The class order is derived from sorted label strings, so it is invariant
// under relabelling - which is what makes the within-class search exact.
std::vector<std::vector<int>> refine_classes(const Component& comp,
                                             const std::vector<int>& colour) {
  std::size_t m = comp.verts.size();
  std::vector<std::vector<int>> incident(m);
  for (std::size_t ei = 0; ei < comp.edges.size(); ++ei)
    for (int v : comp.edges[ei]) incident[static_cast<std::size_t>(v)].push_back(static_cast<int>(ei));

  std::vector<int> label(m, 0);
  {
    std::vector<std::string> init(m);
    for (std::size_t v = 0; v < m; ++v) {
      long deg = 0;
      std::vector<std::pair<std::size_t, long>> sizes;
      for (int ei : incident[v]) {
        deg += comp.mult[static_cast<std::size_t>(ei)];
        sizes.emplace_back(comp.edges[static_cast<std::size_t>(ei)].size(),
                           comp.mult[static_cast<std::size_t>(ei)]);
      }
      std::sort(sizes.begin(), sizes.end());
      std::ostringstream s;
      s << colour[v] << "|" << deg << "|";
      for (auto& [sz, mu] : sizes) s << sz << ":" << mu << ";";
      init[v] = s.str();
    }
    std::map<std::string, int> order;
    for (const auto& s : init) order.emplace(s, 0);
    int next = 0;
    for (auto& [_, id] : order) id = next++;
    for (std::size_t v = 0; v < m; ++v) label[v] = order[init[v]];
  }

  for (std::size_t round = 0; round < m; ++round) {
    std::vector<std::string> sig(m);
    for (std::size_t v = 0; v < m; ++v) {
      std::vector<std::string> nbr;
      for (int ei : incident[v]) {
        std::vector<int> others;
        for (int u : comp.edges[static_cast<std::size_t>(ei)])
          if (static_cast<std::size_t>(u) != v) others.push_back(label[static_cast<std::size_t>(u)]);
        std::sort(others.begin(), others.end());
        std::ostringstream s;
        s << comp.edges[static_cast<std::size_t>(ei)].size() << ":"
          << comp.mult[static_cast<std::size_t>(ei)] << ":";
        for (int l : others) s << l << ",";
        nbr.push_back(s.str());
      }
      std::sort(nbr.begin(), nbr.end());
      std::ostringstream s;
      s << label[v] << "#";
      for (const auto& t : nbr) s << t << "/";
      sig[v] = s.str();
    }
    std::map<std::string, int> order;
    for (const auto& s : sig) order.emplace(s, 0);
    int next = 0;
    for (auto& [_, id] : order) id = next++;
    bool changed = false;
    for (std::size_t v = 0; v < m; ++v) {
      int nl = order[sig[v]];
      if (nl != label[v]) changed = true;
      label[v] = nl;
    }
    if (!changed) break;
  }

  int num_classes = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::vector<int>> classes(static_cast<std::size_t>(num_classes));
  for (std::size_t v = 0; v < m; ++v)
    classes[static_cast<std::size_t>(label[v])].push_back(static_cast<int>(v));
  return classes;
}

// Minimal encoding over all class-respecting vertex orderings, plus the
// ordering that achieves it.
std::pair<std::string, std::vector<int>> canonical_component(
    const Component& comp, const std::vector<int>& colour) {
  if (comp.verts.size() > kComponentVertexCap)
    throw GuardError("canonical form: component with " +
                     std::to_string(comp.verts.size()) + " vertices exceeds the cap of " +
                     std::to_string(kComponentVertexCap));

  auto classes = refine_classes(comp, colour);

  long total = 1;
  for (const auto& cls : classes) {
    long f = 1;
    for (std::size_t j = 2; j <= cls.size(); ++j) {
      f *= static_cast<long>(j);
      if (f > kPermutationBudget) break;
    }
    total *= f;
    if (total > kPermutationBudget)
      throw GuardError("canonical form: permutation search exceeds the budget of " +
                       std::to_string(kPermutationBudget));
  }

  std::size_t m = comp.verts.size();
  std::vector<std::vector<int>> arrangement = classes;
  std::string best;
  std::vector<int> best_order;
  bool first = true;

  while (true) {
    std::vector<int> new_id(m, 0);
    int next = 0;
    for (const auto& cls : arrangement)
      for (int v : cls) new_id[static_cast<std::size_t>(v)] = next++;
    std::string enc = encode_component(comp, colour, new_id);
    if (first || enc < best) {
      best = enc;
      best_order = new_id;
      first = false;
    }
    // Odometer over per-class permutations.
    std::size_t c = arrangement.size();
    while (c > 0 && !std::next_permutation(arrangement[c - 1].begin(), arrangement[c - 1].end()))
      --c;
    if (c == 0) break;
  }
  return {best, best_order};
}

}  // namespace

CanonicalForm canonical_form(const Hypergraph& h) {
  int n = h.n();
  Dsu dsu(n);
  long empty_edge_mult = 0;
  for (std::size_t ei = 0; ei < h.edges().size(); ++ei) {
    const auto& e = h.edges()[ei];
    if (e.empty()) {
      empty_edge_mult += h.mult()[ei];
      continue;
    }
    for (std::size_t j = 1; j < e.size(); ++j) dsu.unite(e[0], e[j]);
  }

  std::map<int, Component> by_root;
  std::map<int, std::pair<int, int>> locate;  // vertex -> (root, local id)
  for (int v = 0; v < n; ++v) {
    int root = dsu.find(v);
    auto& comp = by_root[root];
    locate[v] = {root, static_cast<int>(comp.verts.size())};
    comp.verts.push_back(v);
  }
  for (std::size_t ei = 0; ei < h.edges().size(); ++ei) {
    const auto& e = h.edges()[ei];
    if (e.empty()) continue;
    auto& comp = by_root[dsu.find(e[0])];
    std::vector<int> local;
    local.reserve(e.size());
    for (int v : e) local.push_back(locate[v].second);
    comp.edges.push_back(std::move(local));
    comp.mult.push_back(h.mult()[ei]);
  }

  struct Done {
    std::string enc;
    const Component* comp;
    std::vector<int> order;  // local id -> id within component
  };
  std::vector<Done> done;
  for (auto& [root, comp] : by_root) {
    std::vector<int> colour(comp.verts.size(), 0);
    if (h.has_colours())
      for (std::size_t i = 0; i < comp.verts.size(); ++i)
        colour[i] = h.colour(comp.verts[i]);
    auto [enc, order] = canonical_component(comp, colour);
    done.push_back({std::move(enc), &comp, std::move(order)});
  }
  std::sort(done.begin(), done.end(),
            [](const Done& a, const Done& b) { return a.enc < b.enc; });

  // Assemble the relabelled hypergraph: components in encoding order,
  // vertices renumbered by each component's optimal ordering.
  Hypergraph out(n);
  std::vector<int> new_of_old(static_cast<std::size_t>(n), 0);
  int base = 0;
  for (const auto& d : done) {
    for (std::size_t local = 0; local < d.comp->verts.size(); ++local)
      new_of_old[static_cast<std::size_t>(d.comp->verts[local])] =
          base + d.order[local];
    base += static_cast<int>(d.comp->verts.size());
  }
  for (std::size_t ei = 0; ei < h.edges().size(); ++ei) {
    std::vector<int> e;
    e.reserve(h.edges()[ei].size());
    for (int v : h.edges()[ei]) e.push_back(new_of_old[static_cast<std::size_t>(v)]);
    out.add_edge(std::move(e), h.mult()[ei]);
  }
  if (h.has_colours()) {
    std::vector<int> cols(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
      cols[static_cast<std::size_t>(new_of_old[static_cast<std::size_t>(v)])] = h.colour(v);
    out.set_colours(std::move(cols));
  }

  std::ostringstream enc;
  enc << "N=" << n << ";E0=" << empty_edge_mult;
  for (const auto& d : done) enc << "||" << d.enc;
  return {enc.str(), std::move(out)};
}

bool is_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.n() != b.n() || a.distinct_edge_count() != b.distinct_edge_count() ||
      a.edge_count() != b.edge_count() || a.has_colours() != b.has_colours())
    return false;
  return canonical_form(a).encoding == canonical_form(b).encoding;
}

bool brute_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.n() != b.n() || a.has_colours() != b.has_colours()) return false;
  int n = a.n();
  if (n > 8) throw GuardError("brute isomorphism check capped at 8 vertices");

  auto key = [](const Hypergraph& g, const std::vector<int>& perm) {
    std::vector<std::pair<std::vector<int>, long>> edges;
    for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
      std::vector<int> e;
      for (int v : g.edges()[ei]) e.push_back(perm[static_cast<std::size_t>(v)]);
      std::sort(e.begin(), e.end());
      edges.emplace_back(std::move(e), g.mult()[ei]);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
  };

  std::vector<int> identity(static_cast<std::size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  auto target = key(b, identity);

  std::vector<int> perm = identity;
  do {
    if (a.has_colours()) {
      bool ok = true;
      for (int v = 0; v < n && ok; ++v)
        ok = a.colour(v) == b.colour(perm[static_cast<std::size_t>(v)]);
      if (!ok) continue;
    }
    if (key(a, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace holant

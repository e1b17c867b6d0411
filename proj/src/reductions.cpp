#include "holant/reductions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "holant/error.hpp"
#include "holant/eval.hpp"
#include "holant/hombasis.hpp"

namespace holant {

namespace {

void validate_vcsp(const VcspInstance& inst) {
  if (inst.n_variables < 0) throw ValidationError("vcsp: negative variable count");
  if (inst.k < 0) throw ValidationError("vcsp: negative weight parameter");
  for (const auto& c : inst.constraints) {
    if (c.arity != static_cast<long>(c.scope.size()))
      throw ValidationError("vcsp: declared arity does not match the scope length");
    std::vector<int> seen = c.scope;
    std::sort(seen.begin(), seen.end());
    for (size_t i = 0; i < seen.size(); ++i) {
      if (seen[i] < 0 || seen[i] >= inst.n_variables)
        throw ValidationError("vcsp: scope variable out of range");
      if (i > 0 && seen[i] == seen[i - 1])
        throw ValidationError(
            "vcsp: repeated variable in a scope; symmetric constraints on "
            "Hamming weight need distinct scope entries");
    }
  }
}

// Single common signature of a grid, for the gadgets that require one.
const Signature& only_signature(const SignatureGrid& grid, const char* what) {
  static const Signature empty;
  if (grid.graph.n() == 0)
    throw ValidationError(std::string(what) + ": empty grid");
  for (int v = 1; v < grid.graph.n(); ++v)
    if (grid.sig(v) != grid.sig(0))
      throw ValidationError(std::string(what) + ": needs a single-signature grid");
  (void)empty;
  return grid.sig(0);
}

void require_graph_grid(const SignatureGrid& grid, const char* what) {
  if (grid.graph.distinct_edge_count() > 0 && !grid.graph.is_uniform(2))
    throw ValidationError(std::string(what) + ": underlying hypergraph must be a graph (rank 2)");
}

// Smallest j >= 1 with s(j) != 0; the tail rules make this decidable from a
// bounded scan. One step past the table settles a geometric tail, one full
// period settles a periodic one.
std::optional<long> positive_support(const Signature& s) {
  long reach = s.max_index();
  if (s.tail_kind() == TailKind::Geometric) reach += 1;
  if (s.tail_kind() == TailKind::Periodic) reach += s.tail_period();
  for (long j = 1; j <= reach; ++j)
    if (!(s.eval(j) == ExactScalar(0))) return j;
  return std::nullopt;
}

bool is_connected(const Hypergraph& g) {
  int n = g.n();
  if (n <= 1) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& e : g.edges())
    for (size_t i = 1; i < e.size(); ++i) parent[find(e[i])] = find(e[0]);
  int root = find(0);
  for (int v = 1; v < n; ++v)
    if (find(v) != root) return false;
  return true;
}

}  // namespace

std::pair<SignatureGrid, long> vcsp_to_holant(const VcspInstance& inst) {
  validate_vcsp(inst);
  std::vector<std::vector<int>> incidence(inst.n_variables);
  for (int ci = 0; ci < static_cast<int>(inst.constraints.size()); ++ci)
    for (int x : inst.constraints[ci].scope) incidence[x].push_back(ci);

  Hypergraph graph(static_cast<int>(inst.constraints.size()));
  for (int x = 0; x < inst.n_variables; ++x) {
    if (incidence[x].empty())
      throw ValidationError(
          "vcsp_to_holant: variable " + std::to_string(x) +
          " occurs in no constraint; eliminate free variables first (they "
          "only contribute a binomial factor to Z)");
    graph.add_edge(incidence[x]);
  }
  std::vector<Signature> assignment;
  assignment.reserve(inst.constraints.size());
  for (const auto& c : inst.constraints) assignment.push_back(c.function);
  return {build_grid(std::move(graph), std::move(assignment)), inst.k};
}

VcspInstance holant_to_vcsp(const SignatureGrid& grid, long k) {
  if (k < 0) throw ValidationError("holant_to_vcsp: negative weight parameter");
  VcspInstance out;
  out.k = k;

  // One variable per edge copy, numbered edge-major.
  const auto& edges = grid.graph.edges();
  std::vector<long> first_var(edges.size() + 1, 0);
  for (size_t ei = 0; ei < edges.size(); ++ei)
    first_var[ei + 1] = first_var[ei] + grid.graph.mult()[ei];
  out.n_variables = static_cast<int>(first_var[edges.size()]);

  for (int v = 0; v < grid.graph.n(); ++v) {
    VcspConstraint c;
    c.function = grid.sig(v);
    for (int ei : grid.graph.incident(v))
      for (long copy = 0; copy < grid.graph.mult()[ei]; ++copy)
        c.scope.push_back(static_cast<int>(first_var[ei] + copy));
    c.arity = static_cast<long>(c.scope.size());
    out.constraints.push_back(std::move(c));
  }
  return out;
}

bool verify_certificate(const GadgetCertificate& cert, long long budget) {
  ExactScalar lhs = holant_bruteforce(cert.target, cert.target_k, budget).value;
  ExactScalar rhs =
      cert.scale * holant_bruteforce(cert.source, cert.source_k, budget).value +
      cert.offset;
  return lhs == rhs;
}

GadgetCertificate pad_gadget(const SignatureGrid& grid, long k, int d) {
  if (d < 3) throw ValidationError("pad_gadget: target rank must be at least 3");
  if (k < 0) throw ValidationError("pad_gadget: negative weight parameter");
  require_graph_grid(grid, "pad_gadget");
  const Signature& s = only_signature(grid, "pad_gadget");
  if (!(s.eval(0) == ExactScalar(1)))
    throw ValidationError(
        "pad_gadget: signature must be normalized to s(0) = 1, otherwise the "
        "pads of unselected edges distort the value; apply normalize_signature");
  if (s.eval(1) == ExactScalar(0))
    throw ValidationError("pad_gadget: s(1) = 0, the pads would zero out every "
                          "selected edge; use bridge_lift instead");

  int n = grid.graph.n();
  long copies = grid.graph.edge_count();
  Hypergraph target(n + static_cast<int>(copies) * (d - 2));
  std::vector<Signature> assignment = grid.assignment;
  int next = n;
  for (size_t ei = 0; ei < grid.graph.edges().size(); ++ei) {
    for (long c = 0; c < grid.graph.mult()[ei]; ++c) {
      std::vector<int> verts = grid.graph.edges()[ei];
      for (int j = 0; j < d - 2; ++j) {
        verts.push_back(next++);
        assignment.push_back(s);
      }
      target.add_edge(verts);
    }
  }
  GadgetCertificate cert;
  cert.source = grid;
  cert.source_k = k;
  cert.target = build_grid(std::move(target), std::move(assignment));
  cert.target_k = k;
  cert.scale = s.eval(1).pow(k * (d - 2));
  cert.offset = ExactScalar(0);
  return cert;
}

BridgeGadget find_bridge_gadget(int d, int search_cap) {
  if (d < 2) throw ValidationError("find_bridge_gadget: rank must be at least 2");
  if (search_cap < 1) throw ValidationError("find_bridge_gadget: cap must be positive");
  for (int k = 1; k <= search_cap; ++k) {
    // The enumerator guards its own caps; exceeding them surfaces as the
    // explicit error demanded here.
    for (const auto& pat : enumerate_uniform_hypergraphs(k, d)) {
      if (pat.n() <= 2) continue;  // no interior, the lift would be the identity
      std::vector<int> ones;
      bool ok = true;
      for (int v = 0; v < pat.n() && ok; ++v) {
        long deg = pat.degree(v);
        if (deg == 1)
          ones.push_back(v);
        else if (deg != 2)
          ok = false;
      }
      if (!ok || ones.size() != 2) continue;
      if (!is_connected(pat)) continue;
      if (d >= 3) {
        // The two endpoints must share an edge; at rank 2 that would force
        // the bare edge, so there the endpoints sit at distance two or more.
        bool adjacent = false;
        for (const auto& e : pat.edges())
          if (std::binary_search(e.begin(), e.end(), ones[0]) &&
              std::binary_search(e.begin(), e.end(), ones[1]))
            adjacent = true;
        if (!adjacent) continue;
      }
      return {pat, ones[0], ones[1]};
    }
  }
  throw GuardError("find_bridge_gadget: no qualifying gadget with at most " +
                   std::to_string(search_cap) +
                   " edges; raise the cap (one exists for every rank)");
}

GadgetCertificate bridge_lift(const SignatureGrid& grid, long k, int d,
                              const BridgeGadget& bridge) {
  if (k < 0) throw ValidationError("bridge_lift: negative weight parameter");
  require_graph_grid(grid, "bridge_lift");
  const Signature& s = only_signature(grid, "bridge_lift");
  if (!(s.eval(0) == ExactScalar(1)))
    throw ValidationError(
        "bridge_lift: signature must be normalized to s(0) = 1, otherwise "
        "unused bridge interiors distort the value; apply normalize_signature");
  if (!(s.eval(1) == ExactScalar(0)))
    throw ValidationError("bridge_lift: s(1) != 0; use pad_gadget instead");
  if (s.eval(2) == ExactScalar(0))
    throw ValidationError(
        "bridge_lift: s(2) = 0; no edge gadget applies when the first "
        "positive support is at 3 or beyond");

  const Hypergraph& b = bridge.graph;
  if (!b.is_uniform(d))
    throw ValidationError("bridge_lift: gadget is not uniform of the requested rank");
  if (bridge.x == bridge.y || bridge.x < 0 || bridge.y < 0 || bridge.x >= b.n() ||
      bridge.y >= b.n() || b.degree(bridge.x) != 1 || b.degree(bridge.y) != 1)
    throw ValidationError("bridge_lift: x and y must be two distinct degree-1 vertices");
  for (int v = 0; v < b.n(); ++v)
    if (v != bridge.x && v != bridge.y && b.degree(v) != 2)
      throw ValidationError("bridge_lift: interior gadget vertices must have degree 2");
  if (!is_connected(b)) throw ValidationError("bridge_lift: gadget must be connected");

  // Interior vertices of each copy get a fresh block; x and y land on the
  // edge's endpoints.
  std::vector<int> interior;
  for (int v = 0; v < b.n(); ++v)
    if (v != bridge.x && v != bridge.y) interior.push_back(v);

  int n = grid.graph.n();
  long copies = grid.graph.edge_count();
  Hypergraph target(n + static_cast<int>(copies * interior.size()));
  std::vector<Signature> assignment = grid.assignment;
  int next = n;
  for (size_t ei = 0; ei < grid.graph.edges().size(); ++ei) {
    const auto& e = grid.graph.edges()[ei];
    for (long c = 0; c < grid.graph.mult()[ei]; ++c) {
      std::vector<int> where(b.n(), -1);
      where[bridge.x] = e[1];
      where[bridge.y] = e[0];
      for (int v : interior) {
        where[v] = next++;
        assignment.push_back(s);
      }
      for (const auto& be : b.edges()) {
        std::vector<int> mapped;
        for (int v : be) mapped.push_back(where[v]);
        target.add_edge(mapped);
      }
    }
  }
  GadgetCertificate cert;
  cert.source = grid;
  cert.source_k = k;
  cert.target = build_grid(std::move(target), std::move(assignment));
  cert.target_k = k * b.edge_count();
  cert.scale = s.eval(2).pow(k * (b.n() - 2));
  cert.offset = ExactScalar(0);
  return cert;
}

Hypergraph gen_regular_connected(int d, int b, int i) {
  if (d < 2) throw ValidationError("gen_regular_connected: rank must be at least 2");
  if (b < 1) throw ValidationError("gen_regular_connected: degree must be at least 1");
  if (b == 1) {
    if (i < 1) throw ValidationError("gen_regular_connected: size index must be positive");
    return single_edge(d);
  }
  if (i < 2)
    throw ValidationError("gen_regular_connected: the inductive step needs i >= 2");

  Hypergraph base = gen_regular_connected(d, b - 1, i);
  int n0 = base.n();
  int m = i * d;  // number of copies
  Hypergraph out(m * n0);
  for (int j = 0; j < m; ++j)
    for (const auto& e : base.edges()) {
      std::vector<int> verts;
      for (int v : e) verts.push_back(j * n0 + v);
      out.add_edge(verts);
    }
  // One new edge per (row, arc): the edge takes the row-p vertex of d
  // cyclically consecutive copies. The arc offset shifts by one per row, so
  // consecutive copies always share some edge and the result is connected.
  for (int p = 0; p < n0; ++p) {
    int offset = p % m;
    for (int arc = 0; arc < i; ++arc) {
      std::vector<int> verts;
      for (int t = 0; t < d; ++t)
        verts.push_back(((offset + arc * d + t) % m) * n0 + p);
      out.add_edge(verts);
    }
  }
  return out;
}

namespace {

long long pm_search(const Hypergraph& g, std::vector<char>& covered, int from,
                    long long& nodes, long long budget) {
  if (++nodes > budget)
    throw GuardError("count_perfect_matchings: search budget exceeded");
  int n = g.n();
  int v = from;
  while (v < n && covered[v]) ++v;
  if (v == n) return 1;
  long long total = 0;
  for (int ei : g.incident(v)) {
    const auto& e = g.edges()[ei];
    bool free = true;
    for (int u : e)
      if (covered[u]) {
        free = false;
        break;
      }
    if (!free) continue;
    for (int u : e) covered[u] = 1;
    total += g.mult()[ei] * pm_search(g, covered, v + 1, nodes, budget);
    for (int u : e) covered[u] = 0;
  }
  return total;
}

}  // namespace

long long count_perfect_matchings(const Hypergraph& g, long long budget) {
  std::vector<char> covered(g.n(), 0);
  long long nodes = 0;
  return pm_search(g, covered, 0, nodes, budget);
}

namespace {

PmInstance trivially_zero(const Hypergraph& g, const Signature& s) {
  // More edges than exist: the Holant sum is empty, matching #PerfMatch = 0.
  std::vector<Signature> assignment(g.n(), s);
  return {build_grid(g, std::move(assignment)), g.edge_count() + 1, ExactScalar(1)};
}

}  // namespace

PmInstance pm_gadget_graph(const Hypergraph& g, const Signature& s) {
  if (g.distinct_edge_count() > 0 && !g.is_uniform(2))
    throw ValidationError("pm_gadget_graph: input must be a graph");
  if (!(s.eval(0) == ExactScalar(0)))
    throw ValidationError("pm_gadget_graph: needs s(0) = 0 (otherwise see the "
                          "size-forced hypergraph mode)");
  auto b_opt = positive_support(s);
  if (!b_opt)
    throw ValidationError("pm_gadget_graph: signature vanishes on positive integers");
  long b = *b_opt;
  int n = g.n();
  if (n % 2 != 0) return trivially_zero(g, s);

  if (b == 1) {
    std::vector<Signature> assignment(n, s);
    return {build_grid(g, std::move(assignment)), n / 2, s.eval(1).pow(n)};
  }

  // Each vertex gets a (b-1)-clique wired to it, eating b-1 of its slots;
  // cliques are matched up pairwise so their vertices reach degree b too.
  // Pairing is by vertex index, keeping the construction reproducible.
  int cs = static_cast<int>(b) - 1;
  Hypergraph gp(n + n * cs);
  auto clique_vertex = [&](int v, int j) { return n + v * cs + j; };
  for (size_t ei = 0; ei < g.edges().size(); ++ei)
    gp.add_edge(g.edges()[ei], g.mult()[ei]);
  long new_edges = 0;
  for (int v = 0; v < n; ++v) {
    for (int a = 0; a < cs; ++a) {
      for (int bb = a + 1; bb < cs; ++bb) {
        gp.add_edge({clique_vertex(v, a), clique_vertex(v, bb)});
        ++new_edges;
      }
      gp.add_edge({v, clique_vertex(v, a)});
      ++new_edges;
    }
  }
  for (int t = 0; t < n / 2; ++t)
    for (int j = 0; j < cs; ++j) {
      gp.add_edge({clique_vertex(2 * t, j), clique_vertex(2 * t + 1, j)});
      ++new_edges;
    }
  long k = n / 2 + new_edges;
  ExactScalar scale = s.eval(b).pow(gp.n());
  std::vector<Signature> assignment(gp.n(), s);
  return {build_grid(std::move(gp), std::move(assignment)), k, scale};
}

namespace {

// Shared gadget branch of the hypergraph reductions: attach a connected
// (b-1)-regular d-uniform hypergraph to every vertex and complete the
// leftover gadget vertices to degree b across groups of d original vertices.
PmInstance hyper_gadget_branch(const Hypergraph& g, const Signature& s, int d,
                               long b, bool oversize) {
  int n = g.n();
  Hypergraph f = single_edge(d);
  if (b - 1 >= 2 || oversize) {
    int i = 2;
    while (true) {
      f = gen_regular_connected(d, static_cast<int>(b) - 1, i);
      bool big_enough = f.n() >= (d - 1) * (static_cast<int>(b) - 1);
      if (big_enough && (!oversize || f.edge_count() > g.edge_count())) break;
      if (++i > 64)
        throw InternalError("pm_gadget_hyper: gadget size search did not converge");
    }
  }
  int nf = f.n();
  int picked = (d - 1) * (static_cast<int>(b) - 1);
  int leftover = nf - picked;

  Hypergraph gp(n + n * nf);
  auto gadget_vertex = [&](int v, int j) { return n + v * nf + j; };
  for (size_t ei = 0; ei < g.edges().size(); ++ei)
    gp.add_edge(g.edges()[ei], g.mult()[ei]);
  long new_edges = 0;
  for (int v = 0; v < n; ++v) {
    for (const auto& e : f.edges()) {
      std::vector<int> verts;
      for (int u : e) verts.push_back(gadget_vertex(v, u));
      gp.add_edge(verts);
      ++new_edges;
    }
    for (int si = 0; si < static_cast<int>(b) - 1; ++si) {
      std::vector<int> verts{v};
      for (int t = 0; t < d - 1; ++t)
        verts.push_back(gadget_vertex(v, si * (d - 1) + t));
      gp.add_edge(verts);
      ++new_edges;
    }
  }
  // Degree completion: per group of d original vertices, the c-th leftover
  // vertices of the d gadget copies form one new hyperedge, so every edge
  // straddles copies and no accidental duplicate arises.
  for (int grp = 0; grp < n / d; ++grp)
    for (int c = 0; c < leftover; ++c) {
      std::vector<int> verts;
      for (int t = 0; t < d; ++t)
        verts.push_back(gadget_vertex(grp * d + t, picked + c));
      gp.add_edge(verts);
      ++new_edges;
    }
  long k = n / d + new_edges;
  ExactScalar scale = s.eval(b).pow(gp.n());
  std::vector<Signature> assignment(gp.n(), s);
  return {build_grid(std::move(gp), std::move(assignment)), k, scale};
}

}  // namespace

PmInstance pm_gadget_hyper(const Hypergraph& g, const Signature& s, PmMode mode) {
  auto d_opt = g.uniformity();
  if (!d_opt || *d_opt < 2)
    throw ValidationError("pm_gadget_hyper: input must be d-uniform with d >= 2");
  int d = *d_opt;
  auto b_opt = positive_support(s);
  if (!b_opt)
    throw ValidationError("pm_gadget_hyper: signature vanishes on positive integers");
  long b = *b_opt;

  if (mode == PmMode::ZeroSig) {
    if (!(s.eval(0) == ExactScalar(0)))
      throw ValidationError("pm_gadget_hyper: zero-sig mode needs s(0) = 0");
    if (g.n() % d != 0) return trivially_zero(g, s);
    if (b == 1) {
      std::vector<Signature> assignment(g.n(), s);
      return {build_grid(g, std::move(assignment)), g.n() / d, s.eval(1).pow(g.n())};
    }
    return hyper_gadget_branch(g, s, d, b, false);
  }

  if (s.eval(0) == ExactScalar(0))
    throw ValidationError("pm_gadget_hyper: size-forced mode needs s(0) != 0");
  if (b < 3)
    throw ValidationError(
        "pm_gadget_hyper: size-forced mode needs s(1) = s(2) = 0 with support "
        "further out (found earlier positive support)");
  if (g.n() % d != 0) return trivially_zero(g, s);
  return hyper_gadget_branch(g, s, d, b, true);
}

Hypergraph dedup_hypergraph(const Hypergraph& g) {
  // Group vertices by their incidence among distinct edges; keep the first of
  // each group. Kept vertices pin the identity of every edge, so shrunken
  // edges stay pairwise distinct.
  std::map<std::vector<int>, int> first_with;
  std::vector<int> keep;
  std::vector<char> kept(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    if (first_with.emplace(g.incident(v), v).second) {
      keep.push_back(v);
      kept[v] = 1;
    }
  }
  std::vector<int> relabel(g.n(), -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) relabel[keep[i]] = i;

  Hypergraph out(static_cast<int>(keep.size()));
  for (const auto& e : g.edges()) {
    std::vector<int> verts;
    for (int v : e)
      if (kept[v]) verts.push_back(relabel[v]);
    out.add_edge(verts);
  }
  return out;
}

std::pair<SignatureGrid, long> hitting_set_holant(const Hypergraph& g, long k) {
  if (k < 0) throw ValidationError("hitting_set_holant: negative k");
  Hypergraph deduped = dedup_hypergraph(g);
  Hypergraph dual(deduped.distinct_edge_count());
  for (int v = 0; v < deduped.n(); ++v) dual.add_edge(deduped.incident(v));
  std::vector<Signature> assignment(dual.n(), Signature::hw_ge1());
  return {build_grid(std::move(dual), std::move(assignment)), k};
}

std::pair<SignatureGrid, long> build_codeword_instance(const MatrixModP& a, long k) {
  if (k < 0) throw ValidationError("codeword instance: negative weight");
  if (a.p < 2) throw ValidationError("codeword instance: modulus must be at least 2");
  for (long q = 2; q * q <= a.p; ++q)
    if (a.p % q == 0)
      throw ValidationError("codeword instance: modulus must be prime");
  if (a.rows < 0 || a.cols < 0 ||
      static_cast<int>(a.entries.size()) != a.rows)
    throw ValidationError("codeword instance: matrix dimensions do not match");
  for (const auto& row : a.entries) {
    if (static_cast<int>(row.size()) != a.cols)
      throw ValidationError("codeword instance: matrix dimensions do not match");
    for (long e : row)
      if (e != 0 && e != 1)
        throw ValidationError(
            "codeword instance: entries must be 0 or 1; a coefficient of 2 or "
            "more has no hyperedge encoding (parallel copies are selected "
            "independently)");
  }
  Hypergraph graph(a.rows);
  for (int c = 0; c < a.cols; ++c) {
    std::vector<int> verts;
    for (int r = 0; r < a.rows; ++r)
      if (a.entries[r][c] == 1) verts.push_back(r);
    graph.add_edge(verts);
  }
  std::vector<Signature> assignment(a.rows, Signature::s_p(static_cast<int>(a.p)));
  return {build_grid(std::move(graph), std::move(assignment)), k};
}

std::pair<SignatureGrid, long> build_factor_instance(
    const Hypergraph& h, const std::vector<long>& degree_set, long k) {
  if (k < 0) throw ValidationError("factor instance: negative k");
  if (degree_set.empty()) throw ValidationError("factor instance: empty degree set");
  for (long v : degree_set)
    if (v < 0) throw ValidationError("factor instance: negative degree in the set");
  if (std::find(degree_set.begin(), degree_set.end(), 0L) == degree_set.end())
    throw ValidationError(
        "factor instance: the degree set must contain 0, because vertices "
        "untouched by the chosen edges keep degree 0");
  Signature s = Signature::indicator(degree_set);
  std::vector<Signature> assignment(h.n(), s);
  return {build_grid(h, std::move(assignment)), k};
}

}  // namespace holant

#include "holant/hombasis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "holant/canonical.hpp"
#include "holant/error.hpp"
#include "holant/fingerprint.hpp"

namespace holant {

namespace {

void validate_partition(const VertexPartition& p, const char* what) {
  std::vector<char> seen(p.n, 0);
  for (const auto& block : p.blocks) {
    if (block.empty()) throw ValidationError(std::string(what) + ": empty block");
    for (int v : block) {
      if (v < 0 || v >= p.n)
        throw ValidationError(std::string(what) + ": vertex out of range");
      if (seen[v]) throw ValidationError(std::string(what) + ": vertex repeated");
      seen[v] = 1;
    }
  }
  for (int v = 0; v < p.n; ++v)
    if (!seen[v]) throw ValidationError(std::string(what) + ": vertex not covered");
}

// Factorials up to the partition cap fit comfortably in 64 bits.
long long small_factorial(int t) {
  long long f = 1;
  for (int i = 2; i <= t; ++i) f *= i;
  return f;
}

}  // namespace

VertexPartition VertexPartition::discrete(int n) {
  VertexPartition p;
  p.n = n;
  for (int v = 0; v < n; ++v) p.blocks.push_back({v});
  return p;
}

VertexPartition VertexPartition::coarsest(int n) {
  VertexPartition p;
  p.n = n;
  if (n > 0) {
    p.blocks.emplace_back();
    for (int v = 0; v < n; ++v) p.blocks.back().push_back(v);
  }
  return p;
}

long long mobius(const VertexPartition& sigma, const VertexPartition& rho) {
  if (sigma.n != rho.n)
    throw ValidationError("mobius: partitions refer to different vertex sets");
  validate_partition(sigma, "mobius");
  validate_partition(rho, "mobius");
  std::vector<int> rho_block(rho.n, -1);
  for (int b = 0; b < static_cast<int>(rho.blocks.size()); ++b)
    for (int v : rho.blocks[b]) rho_block[v] = b;
  // Count how many sigma-blocks land in each rho-block; a sigma-block split
  // across two rho-blocks means sigma does not refine rho.
  std::vector<int> pieces(rho.blocks.size(), 0);
  for (const auto& block : sigma.blocks) {
    int target = rho_block[block.front()];
    for (int v : block)
      if (rho_block[v] != target)
        throw ValidationError("mobius: first partition does not refine the second");
    ++pieces[target];
  }
  long long value = 1;
  for (int t : pieces) {
    value *= small_factorial(t - 1);
    if ((t - 1) % 2 == 1) value = -value;
  }
  return value;
}

long long mobius(const VertexPartition& rho) {
  return mobius(VertexPartition::discrete(rho.n), rho);
}

Hypergraph quotient(const Hypergraph& h, const VertexPartition& rho) {
  if (rho.n != h.n())
    throw ValidationError("quotient: partition size does not match the hypergraph");
  validate_partition(rho, "quotient");

  // Order blocks by minimum element so the quotient labelling is canonical in
  // the partition, not in the caller's block order.
  std::vector<std::vector<int>> blocks = rho.blocks;
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::vector<int> block_of(rho.n, -1);
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    for (int v : blocks[b]) block_of[v] = b;

  Hypergraph q(static_cast<int>(blocks.size()));
  if (h.has_colours()) {
    std::vector<int> colours(blocks.size());
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      colours[b] = h.colour(blocks[b].front());
      for (int v : blocks[b])
        if (h.colour(v) != colours[b])
          throw ValidationError("quotient: block merges vertices of different colours");
    }
    q.set_colours(colours);
  }

  std::set<std::vector<int>> seen;
  for (const auto& e : h.edges()) {
    std::vector<int> image;
    for (int v : e) image.push_back(block_of[v]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (seen.insert(image).second) q.add_edge(image);
  }
  return q;
}

namespace {

struct HomSearch {
  const Hypergraph* h = nullptr;
  const Hypergraph* g = nullptr;
  bool injective = false;
  bool use_colours = false;
  std::set<std::vector<int>> target_edges;
  std::vector<std::vector<int>> check_at;  // pattern edges closed once v is mapped
  std::vector<int> image;
  std::vector<char> used;
  long long count = 0;

  void run(int v) {
    int nh = h->n();
    if (v == nh) {
      ++count;
      return;
    }
    int ng = g->n();
    for (int t = 0; t < ng; ++t) {
      if (injective && used[t]) continue;
      if (use_colours && h->colour(v) != g->colour(t)) continue;
      image[v] = t;
      bool ok = true;
      for (int ei : check_at[v]) {
        std::vector<int> mapped;
        for (int u : h->edges()[ei]) mapped.push_back(image[u]);
        std::sort(mapped.begin(), mapped.end());
        mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
        if (!target_edges.count(mapped)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (injective) used[t] = 1;
      run(v + 1);
      if (injective) used[t] = 0;
    }
  }
};

long long count_maps(const Hypergraph& h, const Hypergraph& g, bool injective) {
  if (h.has_colours() != g.has_colours())
    throw ValidationError("homomorphism count: one side is coloured, the other is not");
  if (injective && h.n() > g.n()) return 0;

  HomSearch search;
  search.h = &h;
  search.g = &g;
  search.injective = injective;
  search.use_colours = h.has_colours();
  for (const auto& e : g.edges()) search.target_edges.insert(e);

  // An empty pattern edge must land on an empty target edge no matter the map.
  search.check_at.assign(h.n(), {});
  for (int ei = 0; ei < static_cast<int>(h.edges().size()); ++ei) {
    const auto& e = h.edges()[ei];
    if (e.empty()) {
      if (!search.target_edges.count({})) return 0;
      continue;
    }
    search.check_at[e.back()].push_back(ei);  // edges are stored sorted
  }
  search.image.assign(h.n(), -1);
  search.used.assign(g.n(), 0);
  search.run(0);
  return search.count;
}

}  // namespace

long long count_hom(const Hypergraph& h, const Hypergraph& g) {
  return count_maps(h, g, false);
}

long long count_emb(const Hypergraph& h, const Hypergraph& g) {
  return count_maps(h, g, true);
}

long long count_emb_mobius(const Hypergraph& h, const Hypergraph& g,
                           const VertexPartition& sigma) {
  if (sigma.n != h.n())
    throw ValidationError("count_emb_mobius: partition does not match the pattern");
  validate_partition(sigma, "count_emb_mobius");
  int m = static_cast<int>(sigma.blocks.size());
  long long total = 0;
  // Coarsenings of sigma correspond to partitions of sigma's blocks.
  for_each_set_partition(m, [&](const SetPartition& grouping) {
    VertexPartition rho;
    rho.n = sigma.n;
    long long mu = 1;
    for (const auto& group : grouping.blocks) {
      std::vector<int> merged;
      for (int bi : group)
        merged.insert(merged.end(), sigma.blocks[bi].begin(), sigma.blocks[bi].end());
      rho.blocks.push_back(std::move(merged));
      int t = static_cast<int>(group.size());
      mu *= small_factorial(t - 1);
      if ((t - 1) % 2 == 1) mu = -mu;
    }
    if (h.has_colours()) {
      for (const auto& block : rho.blocks)
        for (int v : block)
          if (h.colour(v) != h.colour(block.front())) return;  // colour-inconsistent
    }
    total += mu * count_hom(quotient(h, rho), g);
  });
  return total;
}

long long count_emb_mobius(const Hypergraph& h, const Hypergraph& g) {
  return count_emb_mobius(h, g, VertexPartition::discrete(h.n()));
}

namespace {

struct AutSearch {
  const Hypergraph* h = nullptr;
  std::set<std::vector<int>> edge_set;
  std::map<std::vector<int>, long> mult_of;
  std::vector<std::vector<int>> check_at;
  std::vector<int> image;
  std::vector<char> used;
  long long count = 0;

  void run(int v) {
    int n = h->n();
    if (v == n) {
      // The vertex map is a bijection and every edge image is an edge, so the
      // image of the distinct edge set is the edge set; multiplicities still
      // have to line up.
      for (int ei = 0; ei < static_cast<int>(h->edges().size()); ++ei) {
        std::vector<int> mapped;
        for (int u : h->edges()[ei]) mapped.push_back(image[u]);
        std::sort(mapped.begin(), mapped.end());
        if (mult_of.at(mapped) != h->mult()[ei]) return;
      }
      ++count;
      return;
    }
    for (int t = 0; t < n; ++t) {
      if (used[t]) continue;
      if (h->has_colours() && h->colour(v) != h->colour(t)) continue;
      if (h->degree(v) != h->degree(t)) continue;
      image[v] = t;
      bool ok = true;
      for (int ei : check_at[v]) {
        std::vector<int> mapped;
        for (int u : h->edges()[ei]) mapped.push_back(image[u]);
        std::sort(mapped.begin(), mapped.end());
        if (!edge_set.count(mapped)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[t] = 1;
      run(v + 1);
      used[t] = 0;
    }
  }
};

}  // namespace

long long count_aut(const Hypergraph& h) {
  AutSearch search;
  search.h = &h;
  search.check_at.assign(h.n(), {});
  for (int ei = 0; ei < static_cast<int>(h.edges().size()); ++ei) {
    const auto& e = h.edges()[ei];
    search.edge_set.insert(e);
    search.mult_of[e] = h.mult()[ei];
    if (!e.empty()) search.check_at[e.back()].push_back(ei);
  }
  search.image.assign(h.n(), -1);
  search.used.assign(h.n(), 0);
  search.run(0);
  return search.count;
}

long long count_sub(const Hypergraph& h, const Hypergraph& g) {
  long long emb = count_emb(h, g);
  long long aut = count_aut(h);
  if (aut == 0) throw InternalError("count_sub: automorphism count came out zero");
  if (emb % aut != 0)
    throw InternalError("count_sub: embedding count not divisible by automorphisms");
  return emb / aut;
}

namespace {

// All colour tuples of the given length over 0..palette-1; a single empty
// tuple when the palette is absent.
std::vector<std::vector<int>> colour_tuples(int length, int palette) {
  std::vector<std::vector<int>> out;
  if (palette <= 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur(length, 0);
  while (true) {
    out.push_back(cur);
    int i = length - 1;
    while (i >= 0 && cur[i] == palette - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::vector<Hypergraph> sorted_by_encoding(std::map<std::string, Hypergraph>&& found) {
  std::vector<Hypergraph> out;
  out.reserve(found.size());
  for (auto& [enc, g] : found) out.push_back(std::move(g));
  return out;
}

}  // namespace

std::vector<Hypergraph> enumerate_uniform_hypergraphs(int k, int r, int palette) {
  if (k < 1) throw ValidationError("pattern enumeration: edge count must be at least 1");
  if (r < 1) throw ValidationError("pattern enumeration: rank must be at least 1");
  if (k > kEnumEdgeCap || r > kEnumRankCap)
    throw GuardError("pattern enumeration cap exceeded (k <= " +
                     std::to_string(kEnumEdgeCap) + ", r <= " +
                     std::to_string(kEnumRankCap) + ")");
  if (palette < 0) throw ValidationError("pattern enumeration: negative palette");

  // Seed with the single-edge pattern, then repeatedly attach one more edge in
  // every way that reuses j old vertices, deduplicating by canonical form.
  std::map<std::string, Hypergraph> level;
  {
    std::vector<int> base(r);
    for (int i = 0; i < r; ++i) base[i] = i;
    for (const auto& colours : colour_tuples(r, palette)) {
      Hypergraph g(r);
      g.add_edge(base);
      if (palette > 0) g.set_colours(colours);
      auto canon = canonical_form(g);
      level.emplace(canon.encoding, canon.relabelled);
    }
  }
  for (int step = 2; step <= k; ++step) {
    std::map<std::string, Hypergraph> next;
    for (const auto& [enc, pat] : level) {
      int n = pat.n();
      for (int j = 0; j <= r && j <= n; ++j) {
        std::vector<int> subset(j);
        // Odometer over j-subsets of the existing vertices.
        std::vector<int> idx(j);
        for (int i = 0; i < j; ++i) idx[i] = i;
        while (true) {
          std::vector<int> edge(idx.begin(), idx.end());
          for (int i = 0; i < r - j; ++i) edge.push_back(n + i);
          bool duplicate = false;
          if (j == r) {
            const auto& es = pat.edges();
            duplicate = std::binary_search(es.begin(), es.end(), edge);
          }
          if (!duplicate) {
            for (const auto& fresh : colour_tuples(r - j, palette)) {
              Hypergraph g(n + r - j);
              for (int ei = 0; ei < static_cast<int>(pat.edges().size()); ++ei)
                g.add_edge(pat.edges()[ei], pat.mult()[ei]);
              g.add_edge(edge);
              if (palette > 0) {
                std::vector<int> colours;
                for (int v = 0; v < n; ++v) colours.push_back(pat.colour(v));
                colours.insert(colours.end(), fresh.begin(), fresh.end());
                g.set_colours(colours);
              }
              auto canon = canonical_form(g);
              next.emplace(canon.encoding, canon.relabelled);
            }
          }
          if (j == 0) break;
          int i = j - 1;
          while (i >= 0 && idx[i] == n - j + i) --i;
          if (i < 0) break;
          ++idx[i];
          for (int t = i + 1; t < j; ++t) idx[t] = idx[t - 1] + 1;
        }
      }
    }
    level = std::move(next);
  }
  return sorted_by_encoding(std::move(level));
}

std::vector<Hypergraph> enumerate_uniform_hypergraphs_upto(int k, int r, int palette) {
  if (k < 0) throw ValidationError("pattern enumeration: negative edge count");
  std::vector<Hypergraph> out;
  for (int j = 1; j <= k; ++j) {
    auto level = enumerate_uniform_hypergraphs(j, r, palette);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

namespace {

int validate_pattern(const Hypergraph& f, const char* what) {
  if (f.n() < 1)
    throw ValidationError(std::string(what) + ": pattern has no vertices");
  if (f.edges().empty())
    throw ValidationError(std::string(what) + ": pattern has no edges");
  if (!f.is_simple())
    throw ValidationError(std::string(what) + ": pattern has repeated edges");
  auto r = f.uniformity();
  if (!r.has_value() || *r < 1)
    throw ValidationError(std::string(what) + ": pattern is not uniform");
  for (int v = 0; v < f.n(); ++v)
    if (f.degree(v) == 0)
      throw ValidationError(std::string(what) + ": pattern has an isolated vertex");
  return *r;
}

ExactScalar signature_weight(const Hypergraph& h, const SignatureSet* set,
                             const Signature* single) {
  ExactScalar w(1);
  for (int v = 0; v < h.n(); ++v) {
    long deg = h.degree(v);
    const Signature& s = set ? set->members[h.colour(v)] : *single;
    w = w * s.eval(deg);
    if (w == ExactScalar(0)) return w;
  }
  return w;
}

// Shared engine for the expansion coefficients: walks every k-edge pattern H,
// weights it by 1/#Aut(H) * prod_v s(deg v), and spreads mu over the
// r-uniform quotients. A target encoding restricts the walk to one pattern.
std::map<std::string, ExactScalar> zeta_sweep(long k, const SignatureSet* set,
                                              const Signature* single, int r,
                                              const std::string* only_encoding) {
  if (k < 1 || k > kEnumEdgeCap)
    throw GuardError("expansion coefficients need 1 <= k <= " +
                     std::to_string(kEnumEdgeCap));
  int palette = set ? static_cast<int>(set->members.size()) : 0;
  std::map<std::string, ExactScalar> coeff;
  for (const auto& h : enumerate_uniform_hypergraphs(static_cast<int>(k), r, palette)) {
    ExactScalar weight = signature_weight(h, set, single);
    if (weight == ExactScalar(0)) continue;
    weight = weight / ExactScalar(count_aut(h));
    for_each_set_partition(h.n(), [&](const SetPartition& part) {
      if (h.has_colours()) {
        for (const auto& block : part.blocks)
          for (int v : block)
            if (h.colour(v) != h.colour(block.front())) return;
      }
      VertexPartition rho{h.n(), part.blocks};
      Hypergraph q = quotient(h, rho);
      if (!q.is_uniform(r)) return;  // shrunk edges never map onto r-edges
      std::string enc = canonical_form(q).encoding;
      if (only_encoding && enc != *only_encoding) return;
      auto it = coeff.find(enc);
      ExactScalar add = weight * ExactScalar(mobius(rho));
      if (it == coeff.end())
        coeff.emplace(enc, add);
      else
        it->second = it->second + add;
    });
  }
  return coeff;
}

void require_normalized(const Signature& s, const char* what) {
  if (!(s.eval(0) == ExactScalar(1)))
    throw ValidationError(std::string(what) +
                          ": signature must be normalized to s(0) = 1 "
                          "(apply normalize_signature first)");
}

}  // namespace

ExactScalar zeta_coefficient(long k, const Signature& s, const Hypergraph& f) {
  require_normalized(s, "zeta_coefficient");
  validate_pattern(f, "zeta_coefficient");
  if (f.has_colours())
    throw ValidationError("zeta_coefficient: coloured pattern needs the signature-set overload");
  if (static_cast<long>(f.edges().size()) > k) return ExactScalar(0);
  int r = *f.uniformity();
  std::string enc = canonical_form(f).encoding;
  auto coeff = zeta_sweep(k, nullptr, &s, r, &enc);
  auto it = coeff.find(enc);
  return it == coeff.end() ? ExactScalar(0) : it->second;
}

ExactScalar zeta_coefficient(long k, const SignatureSet& set, const Hypergraph& f) {
  if (set.members.empty()) throw ValidationError("zeta_coefficient: empty signature set");
  for (const auto& s : set.members) require_normalized(s, "zeta_coefficient");
  validate_pattern(f, "zeta_coefficient");
  if (!f.has_colours())
    throw ValidationError("zeta_coefficient: pattern must be coloured by set members");
  for (int v = 0; v < f.n(); ++v)
    if (f.colour(v) < 0 || f.colour(v) >= static_cast<int>(set.members.size()))
      throw ValidationError("zeta_coefficient: pattern colour outside the signature set");
  if (static_cast<long>(f.edges().size()) > k) return ExactScalar(0);
  int r = *f.uniformity();
  std::string enc = canonical_form(f).encoding;
  auto coeff = zeta_sweep(k, &set, nullptr, r, &enc);
  auto it = coeff.find(enc);
  return it == coeff.end() ? ExactScalar(0) : it->second;
}

ExactScalar zeta_closed_form(long k, const Signature& s, const Hypergraph& f) {
  require_normalized(s, "zeta_closed_form");
  validate_pattern(f, "zeta_closed_form");
  if (static_cast<long>(f.edges().size()) != k)
    throw ValidationError("zeta_closed_form: only applies when the pattern has exactly k edges");
  int max_deg = 1;
  for (int v = 0; v < f.n(); ++v) max_deg = std::max(max_deg, static_cast<int>(f.degree(v)));
  // table[i] holds chi(i + 1); isolated vertices are excluded by validation,
  // so every degree lands inside it.
  auto table = fingerprint_table(max_deg, s);
  ExactScalar prod(1);
  for (int v = 0; v < f.n(); ++v) {
    int deg = static_cast<int>(f.degree(v));
    prod = prod * table[static_cast<std::size_t>(deg - 1)];
  }
  return prod / ExactScalar(count_aut(f));
}

namespace {

HomExpansion expansion_from_sweep(long k, const SignatureSet* set,
                                  const Signature* single, int r) {
  HomExpansion out;
  out.k = k;
  out.rank = r;
  if (k == 0) return out;
  auto coeff = zeta_sweep(k, set, single, r, nullptr);
  int palette = set ? static_cast<int>(set->members.size()) : 0;
  for (const auto& pat :
       enumerate_uniform_hypergraphs_upto(static_cast<int>(k), r, palette)) {
    auto it = coeff.find(canonical_form(pat).encoding);
    if (it == coeff.end() || it->second == ExactScalar(0)) continue;
    out.terms.push_back({pat, it->second});
  }
  return out;
}

}  // namespace

HomExpansion hom_expansion(long k, const Signature& s, int r) {
  if (k < 0) throw ValidationError("hom_expansion: negative k");
  require_normalized(s, "hom_expansion");
  return expansion_from_sweep(k, nullptr, &s, r);
}

HomExpansion hom_expansion(long k, const SignatureSet& set, int r) {
  if (k < 0) throw ValidationError("hom_expansion: negative k");
  if (set.members.empty()) throw ValidationError("hom_expansion: empty signature set");
  for (const auto& s : set.members) require_normalized(s, "hom_expansion");
  return expansion_from_sweep(k, &set, nullptr, r);
}

ExactScalar evaluate_expansion(const HomExpansion& expansion, const Hypergraph& g) {
  ExactScalar total(0);
  for (const auto& term : expansion.terms)
    total = total + term.coefficient * ExactScalar(count_hom(term.pattern, g));
  return total;
}

Hypergraph tensor_product(const Hypergraph& g, const Hypergraph& h) {
  if (g.has_colours() || h.has_colours())
    throw ValidationError("tensor_product: coloured factors are not supported");
  auto rg = g.uniformity();
  auto rh = h.uniformity();
  if (!rg.has_value() || !rh.has_value() || *rg < 1 || *rh < 1)
    throw ValidationError("tensor_product: both factors must be uniform with edges");
  if (*rg != *rh) throw ValidationError("tensor_product: factors have mixed ranks");

  int nh = h.n();
  Hypergraph prod(g.n() * nh);
  for (int ei = 0; ei < static_cast<int>(g.edges().size()); ++ei) {
    const auto& eg = g.edges()[ei];
    for (int ej = 0; ej < static_cast<int>(h.edges().size()); ++ej) {
      std::vector<int> perm = h.edges()[ej];
      long mult = g.mult()[ei] * h.mult()[ej];
      // One product edge per bijection between the two edges.
      do {
        std::vector<int> verts;
        for (size_t i = 0; i < eg.size(); ++i)
          verts.push_back(eg[i] * nh + perm[i]);
        prod.add_edge(verts, mult);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return prod;
}

HomExpansion dedekind_interpolate(
    const std::function<ExactScalar(const Hypergraph&)>& oracle, long k, int r) {
  if (k < 0) throw ValidationError("dedekind_interpolate: negative k");
  HomExpansion out;
  out.k = k;
  out.rank = r;
  if (k == 0) return out;

  auto candidates = enumerate_uniform_hypergraphs_upto(static_cast<int>(k), r);
  int m = static_cast<int>(candidates.size());

  // Evaluation points: every hypergraph spanned by a nonempty subset of some
  // candidate's edges. Hom counts between candidates and these points are
  // enough to reach full rank.
  std::map<std::string, Hypergraph> point_pool;
  for (const auto& cand : candidates) {
    const auto& edges = cand.edges();
    int ec = static_cast<int>(edges.size());
    for (int mask = 1; mask < (1 << ec); ++mask) {
      std::vector<int> verts;
      for (int i = 0; i < ec; ++i)
        if (mask & (1 << i)) verts.insert(verts.end(), edges[i].begin(), edges[i].end());
      std::sort(verts.begin(), verts.end());
      verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
      std::vector<int> relabel(cand.n(), -1);
      for (int i = 0; i < static_cast<int>(verts.size()); ++i) relabel[verts[i]] = i;
      Hypergraph sub(static_cast<int>(verts.size()));
      for (int i = 0; i < ec; ++i) {
        if (!(mask & (1 << i))) continue;
        std::vector<int> e;
        for (int v : edges[i]) e.push_back(relabel[v]);
        sub.add_edge(e);
      }
      auto canon = canonical_form(sub);
      point_pool.emplace(canon.encoding, canon.relabelled);
    }
  }
  std::vector<const Hypergraph*> points;
  points.reserve(point_pool.size());
  for (const auto& [enc, g] : point_pool) points.push_back(&g);
  std::sort(points.begin(), points.end(), [](const Hypergraph* a, const Hypergraph* b) {
    if (a->edges().size() != b->edges().size())
      return a->edges().size() < b->edges().size();
    return canonical_form(*a).encoding < canonical_form(*b).encoding;
  });

  // Row reduction happens on augmented copies; the oracle runs only on points
  // that actually extend the rank.
  std::vector<std::vector<ExactScalar>> reduced;
  std::vector<ExactScalar> reduced_rhs;
  std::vector<int> pivots;
  for (const Hypergraph* pt : points) {
    if (static_cast<int>(pivots.size()) == m) break;
    std::vector<ExactScalar> row;
    row.reserve(m);
    for (const auto& cand : candidates)
      row.push_back(ExactScalar(count_hom(cand, *pt)));

    std::vector<ExactScalar> work = row;
    ExactScalar work_rhs(0);
    bool have_rhs = false;
    for (size_t i = 0; i < reduced.size(); ++i) {
      ExactScalar factor = work[pivots[i]];
      if (factor == ExactScalar(0)) continue;
      for (int c = 0; c < m; ++c) work[c] = work[c] - factor * reduced[i][c];
      if (have_rhs) work_rhs = work_rhs - factor * reduced_rhs[i];
    }
    int pivot = -1;
    for (int c = 0; c < m; ++c)
      if (!(work[c] == ExactScalar(0))) {
        pivot = c;
        break;
      }
    if (pivot < 0) continue;

    // Redo the reduction with the oracle value carried along.
    work = row;
    work_rhs = oracle(*pt);
    have_rhs = true;
    for (size_t i = 0; i < reduced.size(); ++i) {
      ExactScalar factor = work[pivots[i]];
      if (factor == ExactScalar(0)) continue;
      for (int c = 0; c < m; ++c) work[c] = work[c] - factor * reduced[i][c];
      work_rhs = work_rhs - factor * reduced_rhs[i];
    }
    ExactScalar inv = work[pivot];
    for (int c = 0; c < m; ++c) work[c] = work[c] / inv;
    work_rhs = work_rhs / inv;
    reduced.push_back(std::move(work));
    reduced_rhs.push_back(work_rhs);
    pivots.push_back(pivot);
  }
  if (static_cast<int>(pivots.size()) < m)
    throw InternalError("dedekind_interpolate: Hom matrix is rank-deficient over the point pool");

  // Back-substitute so each row is zero on every other pivot column.
  for (int i = m - 1; i >= 0; --i) {
    for (int e = 0; e < i; ++e) {
      ExactScalar factor = reduced[e][pivots[i]];
      if (factor == ExactScalar(0)) continue;
      for (int c = 0; c < m; ++c)
        reduced[e][c] = reduced[e][c] - factor * reduced[i][c];
      reduced_rhs[e] = reduced_rhs[e] - factor * reduced_rhs[i];
    }
  }
  std::vector<ExactScalar> solution(m, ExactScalar(0));
  for (int i = 0; i < m; ++i) solution[pivots[i]] = reduced_rhs[i];
  for (int j = 0; j < m; ++j) {
    if (solution[j] == ExactScalar(0)) continue;
    out.terms.push_back({candidates[j], solution[j]});
  }
  return out;
}

}  // namespace holant

#include "holant/eval.hpp"

#include <algorithm>
#include <functional>

#include "holant/error.hpp"
#include "holant/fingerprint.hpp"

namespace holant {

namespace {

void require_nonnegative_k(long k) {
  if (k < 0) throw ValidationError("k must be non-negative");
}

// s(2) * s(0) = s(1)^2 is the cheap necessary condition for the geometric
// form; full verification would re-run the classifier.
void spot_check_geometric(const Signature& s, int vertex) {
  if (s.eval(2) * s.eval(0) != s.eval(1) * s.eval(1))
    throw ValidationError("signature at vertex " + std::to_string(vertex) +
                          " fails the geometric spot check s(2)s(0) = s(1)^2");
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Brute:
      return "brute";
    case Method::FptT1:
      return "fpt_t1";
    case Method::FptZeros:
      return "fpt_zeros";
  }
  throw InternalError("unreachable method");
}

HolantResult holant_bruteforce(const SignatureGrid& grid, long k, long long budget) {
  require_nonnegative_k(k);
  const Hypergraph& g = grid.graph;

  std::vector<int> copies;  // distinct-edge index, one entry per copy
  for (int ei = 0; ei < g.distinct_edge_count(); ++ei)
    for (long c = 0; c < g.mult()[static_cast<std::size_t>(ei)]; ++c)
      copies.push_back(ei);
  long total = static_cast<long>(copies.size());

  HolantResult result;
  result.method = Method::Brute;
  if (k > total) {
    result.value = 0;
    return result;
  }
  mpz_class count = binomial(total, k);
  if (count > mpz_class(static_cast<long>(budget)))
    throw GuardError("brute force needs " + count.get_str() +
                     " subsets, over the budget of " + std::to_string(budget));

  // Untouched vertices contribute s_v(0); vertices with s_v(0) = 0 must all
  // be touched or the term dies. Tracking both lets a leaf cost O(k * rank).
  int n = g.n();
  long zero_vertices = 0;
  ExactScalar base_product(1);
  std::vector<bool> zero_at(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v) {
    ExactScalar s0 = grid.sig(v).eval(0);
    if (s0.is_zero()) {
      zero_at[static_cast<std::size_t>(v)] = true;
      ++zero_vertices;
    } else {
      base_product *= s0;
    }
  }

  std::vector<long> deg(static_cast<std::size_t>(n), 0);
  std::vector<int> touched;
  long zero_touched = 0;
  ExactScalar sum(0);

  std::function<void(long, long)> choose = [&](long start, long remaining) {
    if (remaining == 0) {
      ++result.work.subsets;
      if (zero_touched < zero_vertices) return;
      ExactScalar term = base_product;
      for (int v : touched) {
        if (!zero_at[static_cast<std::size_t>(v)])
          term /= grid.sig(v).eval(0);
        term *= grid.sig(v).eval(deg[static_cast<std::size_t>(v)]);
      }
      sum += term;
      return;
    }
    for (long i = start; i <= total - remaining; ++i) {
      const auto& edge = g.edges()[static_cast<std::size_t>(copies[static_cast<std::size_t>(i)])];
      for (int v : edge) {
        if (deg[static_cast<std::size_t>(v)]++ == 0) {
          touched.push_back(v);
          if (zero_at[static_cast<std::size_t>(v)]) ++zero_touched;
        }
      }
      choose(i + 1, remaining - 1);
      for (int v : edge) {
        if (--deg[static_cast<std::size_t>(v)] == 0) {
          touched.pop_back();
          if (zero_at[static_cast<std::size_t>(v)]) --zero_touched;
        }
      }
    }
  };
  choose(0, k);

  result.value = sum;
  return result;
}

EdgeClassPartition t1_edge_classes(const SignatureGrid& grid) {
  EdgeClassPartition part;
  const Hypergraph& g = grid.graph;

  std::map<ExactScalar, int> ratio_index;
  std::vector<int> ratio_of(static_cast<std::size_t>(g.n()), 0);
  for (int v = 0; v < g.n(); ++v) {
    ExactScalar s0 = grid.sig(v).eval(0);
    if (s0.is_zero())
      throw ValidationError("vertex " + std::to_string(v) +
                            " has s(0) = 0; use holant_fpt_zeros");
    ratio_index.emplace(grid.sig(v).eval(1) / s0, 0);
  }
  int next = 0;
  for (auto& [_, idx] : ratio_index) idx = next++;
  part.ratios.resize(static_cast<std::size_t>(next));
  for (auto& [ratio, idx] : ratio_index) part.ratios[static_cast<std::size_t>(idx)] = ratio;
  for (int v = 0; v < g.n(); ++v)
    ratio_of[static_cast<std::size_t>(v)] =
        ratio_index[grid.sig(v).eval(1) / grid.sig(v).eval(0)];

  for (int ei = 0; ei < g.distinct_edge_count(); ++ei) {
    std::vector<int> lambda(static_cast<std::size_t>(next), 0);
    for (int v : g.edges()[static_cast<std::size_t>(ei)])
      ++lambda[static_cast<std::size_t>(ratio_of[static_cast<std::size_t>(v)])];
    part.classes[lambda] += g.mult()[static_cast<std::size_t>(ei)];
  }
  return part;
}

HolantResult holant_fpt_t1(const SignatureGrid& grid, long k) {
  require_nonnegative_k(k);
  if (!grid.graph.uniformity())
    throw ValidationError("holant_fpt_t1 needs a uniform grid; call uniformize first");
  for (int v = 0; v < grid.graph.n(); ++v) {
    if (grid.sig(v).eval(0).is_zero())
      throw ValidationError("vertex " + std::to_string(v) +
                            " has s(0) = 0; use holant_fpt_zeros");
    spot_check_geometric(grid.sig(v), v);
  }

  EdgeClassPartition part = t1_edge_classes(grid);
  std::vector<std::pair<std::vector<int>, long long>> classes(part.classes.begin(),
                                                              part.classes.end());
  std::size_t z = part.ratios.size();

  // Suffix sums let us prune compositions that cannot reach k.
  std::vector<long long> suffix(classes.size() + 1, 0);
  for (std::size_t i = classes.size(); i > 0; --i)
    suffix[i - 1] = suffix[i] + classes[i - 1].second;

  HolantResult result;
  result.method = Method::FptT1;

  ExactScalar sum(0);
  std::vector<long> exponent(z, 0);

  std::function<void(std::size_t, long, mpz_class)> compose =
      [&](std::size_t idx, long remaining, mpz_class binoms) {
        if (remaining > suffix[idx]) return;
        if (idx == classes.size()) {
          ++result.work.compositions;
          ExactScalar term{mpq_class(binoms)};
          for (std::size_t i = 0; i < z; ++i)
            term *= part.ratios[i].pow(exponent[i]);
          sum += term;
          return;
        }
        const auto& [lambda, size] = classes[idx];
        long cap = std::min<long long>(remaining, size);
        for (long take = 0; take <= cap; ++take) {
          if (take > 0)
            for (std::size_t i = 0; i < z; ++i)
              exponent[i] += lambda[i];
          // binomial updated incrementally would also work; recompute is
          // cheap at these class counts
          if (take == 0) {
            compose(idx + 1, remaining, binoms);
          } else {
            compose(idx + 1, remaining - take, binoms * binomial(mpz_class(static_cast<long>(size)), take));
          }
        }
        for (std::size_t i = 0; i < z; ++i)
          exponent[i] -= lambda[i] * cap;
      };
  compose(0, k, 1);

  ExactScalar zeros_product(1);
  for (int v = 0; v < grid.graph.n(); ++v) zeros_product *= grid.sig(v).eval(0);
  result.value = sum * zeros_product;
  return result;
}

ZeroEdgeClasses zero_edge_classes(const SignatureGrid& grid) {
  ZeroEdgeClasses out;
  const Hypergraph& g = grid.graph;

  std::vector<int> n0_local(static_cast<std::size_t>(g.n()), -1);
  for (int v = 0; v < g.n(); ++v)
    if (grid.sig(v).eval(0).is_zero()) {
      n0_local[static_cast<std::size_t>(v)] = static_cast<int>(out.n0.size());
      out.n0.push_back(v);
    }

  std::map<ExactScalar, int> ratio_index;
  for (int v = 0; v < g.n(); ++v) {
    if (n0_local[static_cast<std::size_t>(v)] >= 0) continue;
    ratio_index.emplace(grid.sig(v).eval(1) / grid.sig(v).eval(0), 0);
  }
  int next = 0;
  for (auto& [_, idx] : ratio_index) idx = next++;
  out.ratios.resize(static_cast<std::size_t>(next));
  for (auto& [ratio, idx] : ratio_index) out.ratios[static_cast<std::size_t>(idx)] = ratio;

  for (int ei = 0; ei < g.distinct_edge_count(); ++ei) {
    const auto& edge = g.edges()[static_cast<std::size_t>(ei)];
    ZeroClassKey key;
    key.mu.assign(static_cast<std::size_t>(next), 0);
    for (int v : edge) {
      int local = n0_local[static_cast<std::size_t>(v)];
      if (local >= 0)
        key.w.push_back(local);
      else
        ++key.mu[static_cast<std::size_t>(
            ratio_index[grid.sig(v).eval(1) / grid.sig(v).eval(0)])];
    }
    if (key.w.size() == edge.size()) {
      out.g0.emplace_back(key.w, g.mult()[static_cast<std::size_t>(ei)]);
    } else {
      out.classes[key] += g.mult()[static_cast<std::size_t>(ei)];
    }
  }
  return out;
}

HolantResult holant_fpt_zeros(const SignatureGrid& grid, long k) {
  require_nonnegative_k(k);
  const Hypergraph& g = grid.graph;
  if (!g.uniformity())
    throw ValidationError("holant_fpt_zeros needs a uniform grid; call uniformize first");
  for (int v = 0; v < g.n(); ++v)
    if (!grid.sig(v).eval(0).is_zero()) spot_check_geometric(grid.sig(v), v);

  HolantResult result;
  result.method = Method::FptZeros;

  ZeroEdgeClasses part = zero_edge_classes(grid);
  long r = g.rank();
  long x = static_cast<long>(part.n0.size());
  if (x > k * r) {
    // k edges of size r cannot touch that many vertices; some s(0) = 0
    // factor survives in every term.
    result.value = 0;
    result.note = "zero-signature vertices exceed k*rank; value is 0";
    return result;
  }

  ExactScalar nonzero_product(1);
  for (int v = 0; v < g.n(); ++v)
    if (!grid.sig(v).eval(0).is_zero()) nonzero_product *= grid.sig(v).eval(0);

  std::vector<std::pair<ZeroClassKey, long long>> classes(part.classes.begin(),
                                                          part.classes.end());
  std::size_t z = part.ratios.size();

  std::vector<long long> suffix(classes.size() + 1, 0);
  for (std::size_t i = classes.size(); i > 0; --i)
    suffix[i - 1] = suffix[i] + classes[i - 1].second;

  std::vector<long> deg(static_cast<std::size_t>(x), 0);  // per N_0 vertex
  std::vector<long> exponent(z, 0);
  ExactScalar sum(0);

  // Inner layer: compositions of the remaining k over the (W, mu) classes.
  std::function<void(std::size_t, long, mpz_class)> compose =
      [&](std::size_t idx, long remaining, mpz_class binoms) {
        if (remaining > suffix[idx]) return;
        if (idx == classes.size()) {
          ++result.work.compositions;
          ExactScalar term{mpq_class(binoms)};
          for (long q = 0; q < x; ++q) {
            ExactScalar f =
                grid.sig(part.n0[static_cast<std::size_t>(q)]).eval(deg[static_cast<std::size_t>(q)]);
            if (f.is_zero()) return;
            term *= f;
          }
          for (std::size_t i = 0; i < z; ++i)
            term *= part.ratios[i].pow(exponent[i]);
          sum += term * nonzero_product;
          return;
        }
        const auto& [key, size] = classes[idx];
        long cap = std::min<long long>(remaining, size);
        for (long take = 0; take <= cap; ++take) {
          if (take > 0) {
            for (std::size_t i = 0; i < z; ++i)
              exponent[i] += key.mu[i] * 1;
            for (int w : key.w) deg[static_cast<std::size_t>(w)] += 1;
          }
          if (take == 0) {
            compose(idx + 1, remaining, binoms);
          } else {
            compose(idx + 1, remaining - take, binoms * binomial(mpz_class(static_cast<long>(size)), take));
          }
        }
        for (std::size_t i = 0; i < z; ++i) exponent[i] -= key.mu[i] * cap;
        for (int w : key.w) deg[static_cast<std::size_t>(w)] -= cap;
      };

  // Outer layer: how many copies of each distinct edge inside N_0 to take.
  std::function<void(std::size_t, long, mpz_class)> choose_g0 =
      [&](std::size_t idx, long used, mpz_class binoms) {
        if (idx == part.g0.size()) {
          compose(0, k - used, binoms);
          return;
        }
        const auto& [edge, mult] = part.g0[idx];
        long cap = std::min(mult, k - used);
        for (long take = 0; take <= cap; ++take) {
          if (take > 0)
            for (int w : edge) deg[static_cast<std::size_t>(w)] += 1;
          choose_g0(idx + 1, used + take,
                    take == 0 ? binoms : binoms * binomial(mult, take));
        }
        for (int w : edge) deg[static_cast<std::size_t>(w)] -= cap;
      };
  choose_g0(0, 0, 1);

  result.value = sum;
  return result;
}

SignatureGrid uniformize(const SignatureGrid& grid) {
  const Hypergraph& g = grid.graph;
  if (g.uniformity()) return grid;

  int r = g.rank();
  std::size_t min_size = g.edges().front().size();
  for (const auto& e : g.edges()) min_size = std::min(min_size, e.size());
  int fresh = r - static_cast<int>(min_size);

  Hypergraph padded(g.n() + fresh);
  for (int ei = 0; ei < g.distinct_edge_count(); ++ei) {
    std::vector<int> e = g.edges()[static_cast<std::size_t>(ei)];
    // Pad with the first r - |e| fresh vertices. Distinct edges stay
    // distinct: they still differ on their original parts.
    for (int j = 0; j < r - static_cast<int>(g.edges()[static_cast<std::size_t>(ei)].size()); ++j)
      e.push_back(g.n() + j);
    padded.add_edge(std::move(e), g.mult()[static_cast<std::size_t>(ei)]);
  }
  if (g.has_colours()) {
    std::vector<int> cols = g.colours();
    int fresh_colour = cols.empty() ? 0 : *std::max_element(cols.begin(), cols.end()) + 1;
    cols.resize(static_cast<std::size_t>(g.n() + fresh), fresh_colour);
    padded.set_colours(std::move(cols));
  }

  std::vector<Signature> assignment = grid.assignment;
  for (int j = 0; j < fresh; ++j) assignment.push_back(Signature::one());
  return build_grid(std::move(padded), std::move(assignment));
}

HolantResult holant_auto(const SignatureGrid& grid, long k, long long budget, int bound) {
  require_nonnegative_k(k);
  SignatureSet set = signature_set_of(grid);
  SignatureType verdict = classify(set, bound);

  if (verdict.tag == TypeTag::T1 && verdict.exact) {
    bool was_uniform = grid.graph.uniformity().has_value();
    const SignatureGrid* work = &grid;
    SignatureGrid padded;
    if (!was_uniform) {
      padded = uniformize(grid);
      work = &padded;
    }
    HolantResult result = set.zero_part.empty() ? holant_fpt_t1(*work, k)
                                                : holant_fpt_zeros(*work, k);
    result.note = std::string("type T[1] (exact); fpt route") +
                  (was_uniform ? "" : " after uniformize");
    return result;
  }

  HolantResult result = holant_bruteforce(grid, k, budget);
  switch (verdict.tag) {
    case TypeTag::Tinf:
      result.note = "type T[inf] (witness a=" + std::to_string(verdict.witness->a) +
                    "); no tractable algorithm known; brute force";
      break;
    case TypeTag::T2:
      result.note = "type T[2] at bound " + std::to_string(verdict.bound) +
                    "; no tractable algorithm known; brute force";
      break;
    case TypeTag::T1:
      result.note = "type T[1] only relative to bound " + std::to_string(verdict.bound) +
                    "; not certified geometric, brute force";
      break;
  }
  return result;
}

}  // namespace holant

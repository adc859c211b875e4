#pragma once

#include "fanex/canonical.hpp"
#include "fanex/extremal.hpp"
#include "fanex/fan_detect.hpp"
#include "fanex/graph.hpp"
#include "fanex/graph6.hpp"
#include "fanex/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iterator>
#include <future>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace fanex {

inline constexpr int kEnumerationCap = 11;
inline constexpr int kBruteExCap = 10;
inline constexpr int kBruteSpexCap = 9;

/// Caps may be raised (or lowered) through FAN_EXTREMAL_MAX_N; never above
/// what canonical labeling supports.
inline int effective_cap(int default_cap) {
  if (const char* env = std::getenv("FAN_EXTREMAL_MAX_N"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) throw std::invalid_argument("FAN_EXTREMAL_MAX_N must be a nonnegative integer");
    return static_cast<int>(std::min<long>(v, kCanonicalMaxOrder));
  }
  return default_cap;
}

inline void check_cap(int n, int default_cap, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + ": negative order");
  const int cap = effective_cap(default_cap);
  if (n > cap)
    throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(n) + " exceeds cap " +
                                std::to_string(cap) + " (set FAN_EXTREMAL_MAX_N to override)");
}

namespace detail {

inline Graph add_vertex(const Graph& parent, std::uint32_t neighbors) {
  const int m = parent.order();
  GraphBuilder b = GraphBuilder(m + 1);
  for (auto [u, v] : parent.edges()) b.add_edge(u, v);
  for (int u = 0; u < m; ++u)
    if ((neighbors >> u) & 1u) b.add_edge(u, m);
  return b.build();
}

/// (degree, sum of neighbor degrees); the augmentation picks its canonical
/// deletion vertex among those maximizing this.
inline std::vector<std::uint64_t> vertex_invariants(const Graph& g) {
  const auto deg = g.degrees();
  std::vector<std::uint64_t> inv(deg.size());
  for (int v = 0; v < g.order(); ++v) {
    std::uint64_t s = 0;
    for (int w = 0; w < g.order(); ++w)
      if (g.adjacent_unchecked(v, w)) s += static_cast<std::uint64_t>(deg[static_cast<std::size_t>(w)]);
    inv[static_cast<std::size_t>(v)] = (static_cast<std::uint64_t>(deg[static_cast<std::size_t>(v)]) << 32) | s;
  }
  return inv;
}

/// Accepted child with its canonical code.
struct CanonHash {
  std::size_t operator()(CanonCode c) const {
    return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(c) ^ static_cast<std::uint64_t>(c >> 64) * 0x9e3779b97f4a7c15ull);
  }
};

struct Child {
  Graph graph;
  CanonCode code;
};

/// Children of `parent` whose canonical parent is `parent`, one per
/// isomorphism class. The new vertex must be in the automorphism orbit of the
/// canonical deletion vertex: the max-invariant vertex at the latest
/// canonical position.
inline std::vector<Child> canonical_children(const Graph& parent) {
  const int m = parent.order();
  const int n = m + 1;
  std::vector<Child> out;
  std::unordered_set<CanonCode, CanonHash> seen;
  auto hash_seen = [&](CanonCode c) { return !seen.insert(c).second; };
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    Graph child = add_vertex(parent, s);
    const auto inv = vertex_invariants(child);
    const auto top = *std::max_element(inv.begin(), inv.end());
    if (inv[static_cast<std::size_t>(m)] != top) continue;
    int ties = 0;
    for (auto x : inv) ties += x == top;
    const auto lab = canonical_labeling(child);
    if (ties > 1) {
      int chosen = -1;
      for (int p = n - 1; p >= 0 && chosen < 0; --p)
        if (inv[static_cast<std::size_t>(lab.order[static_cast<std::size_t>(p)])] == top) chosen = lab.order[static_cast<std::size_t>(p)];
      if (chosen != m) {
        std::vector<int> rest_new, rest_chosen;
        for (int v = 0; v < n; ++v) {
          if (v != m) rest_new.push_back(v);
          if (v != chosen) rest_chosen.push_back(v);
        }
        const auto marked_new = canonical_labeling(child, {rest_new, {m}}).code;
        const auto marked_chosen = canonical_labeling(child, {rest_chosen, {chosen}}).code;
        if (marked_new != marked_chosen) continue;
      }
    }
    if (hash_seen(lab.code)) continue;
    out.push_back({std::move(child), lab.code});
  }
  return out;
}

template <class Keep, class Visit>
void augment(const Graph& g, int target, Keep& keep, Visit& visit) {
  if (g.order() == target) {
    visit(g);
    return;
  }
  for (auto& c : canonical_children(g)) {
    if (!keep(c.graph, target)) continue;
    augment(c.graph, target, keep, visit);
  }
}

/// All accepted nodes at `level`, in generation order (deterministic).
template <class Keep>
std::vector<Graph> nodes_at_level(int level, Keep& keep) {
  std::vector<Graph> frontier{empty_graph(1)};
  for (int m = 1; m < level; ++m) {
    std::vector<Graph> next;
    for (const auto& g : frontier)
      for (auto& c : canonical_children(g))
        if (keep(c.graph, level)) next.push_back(std::move(c.graph));
    frontier = std::move(next);
  }
  return frontier;
}

struct AlwaysKeep {
  bool operator()(const Graph&, int) const { return true; }
};

}  // namespace detail

/// Visits one representative of every isomorphism class of graphs on n
/// vertices. Returns the number of classes.
inline std::uint64_t enumerate_graphs(int n, const std::function<void(const Graph&)>& visitor) {
  check_cap(n, kEnumerationCap, "enumerate_graphs");
  if (n == 0) {
    visitor(empty_graph(0));
    return 1;
  }
  std::uint64_t count = 0;
  detail::AlwaysKeep keep;
  auto visit = [&](const Graph& g) {
    ++count;
    visitor(g);
  };
  detail::augment(empty_graph(1), n, keep, visit);
  return count;
}

inline std::uint64_t count_graphs(int n) {
  return enumerate_graphs(n, [](const Graph&) {});
}

enum class CensusKind { ex, spex };

struct CensusResult {
  CensusKind kind = CensusKind::ex;
  int n = 0;
  FanParams params;
  std::int64_t max_edges = 0;           // ex census
  double max_rho = 0.0;                 // spex census
  std::vector<std::string> witnesses;   // canonical graph6, sorted
  std::uint64_t scanned = 0;            // F-free graphs reached at order n
  double wall_ms = 0.0;
};

inline constexpr double kSpexTieTolerance = 1e-9;

namespace detail {

inline bool fan_free(const Graph& g, const FanParams& params) {
  if (g.order() < params.fan_order() * params.t) return true;
  const auto r = contains_disjoint_fans(g, params);
  if (r.status == PackingStatus::budget_exhausted)
    throw std::runtime_error("fan packing search exhausted its budget during census");
  return r.status == PackingStatus::absent;
}

/// Top-level split: nodes at `split` become independent tasks, each expanded
/// to order n; results merge in task order.
inline int split_level(int n) { return std::max(1, std::min(n, n - 3)); }

template <class Task, class Result>
std::vector<Result> run_tasks(const std::vector<Graph>& roots, int jobs, Task task) {
  std::vector<Result> results(roots.size());
  if (jobs <= 1 || roots.size() <= 1) {
    for (std::size_t i = 0; i < roots.size(); ++i) results[i] = task(roots[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < roots.size(); i = next++) results[i] = task(roots[i]);
  };
  std::vector<std::future<void>> pool;
  for (int j = 0; j < jobs; ++j) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
  return results;
}

/// Edge count of the best certified F-free construction on n vertices, or 0.
inline std::int64_t construction_lower_bound(int n, const FanParams& params) {
  std::int64_t best = 0;
  for (int n1 = params.k; n1 <= n - params.t + 1; ++n1) {
    const Graph g = build_extremal(n, params.t, params.k, n1);
    if (g.edge_count() > best && fan_free(g, params)) best = g.edge_count();
  }
  return best;
}

}  // namespace detail

/// Exact ex(n, t·(P1 ∨ P_2k)) by exhaustive isomorph-free generation.
/// F-freeness is hereditary, so non-free nodes are not extended; a node is
/// also cut when completing it to order n cannot reach the best count seen.
inline CensusResult brute_ex(int n, FanParams params, int jobs = 1) {
  params.validate();
  check_cap(n, kBruteExCap, "brute_ex");
  const auto start = std::chrono::steady_clock::now();
  CensusResult out;
  out.kind = CensusKind::ex;
  out.n = n;
  out.params = params;
  if (n == 0) {
    out.witnesses = {to_graph6(empty_graph(0))};
    out.scanned = 1;
    return out;
  }

  const std::int64_t seed = detail::construction_lower_bound(n, params);

  struct Local {
    std::int64_t best = -1;
    std::set<std::string> witnesses;
    std::uint64_t scanned = 0;
  };
  auto completion_bound = [n](const Graph& g) {
    std::int64_t b = g.edge_count();
    for (int j = g.order(); j < n; ++j) b += j;
    return b;
  };
  auto task = [&](const Graph& root) {
    Local local;
    auto keep = [&](const Graph& g, int) {
      if (completion_bound(g) < std::max(seed, local.best)) return false;
      return detail::fan_free(g, params);
    };
    auto visit = [&](const Graph& g) {
      ++local.scanned;
      if (g.edge_count() > local.best) {
        local.best = g.edge_count();
        local.witnesses.clear();
      }
      if (g.edge_count() == local.best) local.witnesses.insert(canonical_graph6(g));
    };
    detail::augment(root, n, keep, visit);
    return local;
  };

  auto root_keep = [&](const Graph& g, int) { return detail::fan_free(g, params) && completion_bound(g) >= seed; };
  const auto roots = detail::nodes_at_level(detail::split_level(n), root_keep);
  const auto parts = detail::run_tasks<decltype(task), Local>(roots, jobs, task);

  out.max_edges = -1;
  for (const auto& p : parts) out.max_edges = std::max(out.max_edges, p.best);
  std::set<std::string> merged;
  for (const auto& p : parts) {
    out.scanned += p.scanned;
    if (p.best == out.max_edges) merged.insert(p.witnesses.begin(), p.witnesses.end());
  }
  out.witnesses.assign(merged.begin(), merged.end());
  for (const auto& w : out.witnesses) {
    const Graph g = from_graph6(w);
    if (!detail::fan_free(g, params) || g.edge_count() != out.max_edges)
      throw std::logic_error("census witness failed re-certification");
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// Exact spex(n, t·(P1 ∨ P_2k)); witnesses are all classes within
/// kSpexTieTolerance of the maximum.
inline CensusResult brute_spex(int n, FanParams params, int jobs = 1) {
  params.validate();
  check_cap(n, kBruteSpexCap, "brute_spex");
  if (n < 1) throw std::invalid_argument("brute_spex needs n >= 1");
  const auto start = std::chrono::steady_clock::now();
  CensusResult out;
  out.kind = CensusKind::spex;
  out.n = n;
  out.params = params;

  struct Candidate {
    double rho;
    std::string g6;
  };
  struct Local {
    double best = -1.0;
    std::vector<Candidate> candidates;
    std::uint64_t scanned = 0;
  };
  auto task = [&](const Graph& root) {
    Local local;
    auto keep = [&](const Graph& g, int) { return detail::fan_free(g, params); };
    auto visit = [&](const Graph& g) {
      ++local.scanned;
      const double rho = spectral_radius(g, 1e-12).rho;
      if (rho < local.best - kSpexTieTolerance) return;
      local.best = std::max(local.best, rho);
      local.candidates.push_back({rho, canonical_graph6(g)});
      std::erase_if(local.candidates, [&](const Candidate& c) { return c.rho < local.best - kSpexTieTolerance; });
    };
    detail::augment(root, n, keep, visit);
    return local;
  };
  auto root_keep = [&](const Graph& g, int) { return detail::fan_free(g, params); };
  const auto roots = detail::nodes_at_level(detail::split_level(n), root_keep);
  const auto parts = detail::run_tasks<decltype(task), Local>(roots, jobs, task);

  out.max_rho = -1.0;
  for (const auto& p : parts) out.max_rho = std::max(out.max_rho, p.best);
  std::set<std::string> merged;
  for (const auto& p : parts) {
    out.scanned += p.scanned;
    for (const auto& c : p.candidates)
      if (c.rho >= out.max_rho - kSpexTieTolerance) merged.insert(c.g6);
  }
  out.witnesses.assign(merged.begin(), merged.end());
  for (const auto& w : out.witnesses) {
    const Graph g = from_graph6(w);
    if (!detail::fan_free(g, params) || spectral_radius(g, 1e-12).rho < out.max_rho - kSpexTieTolerance)
      throw std::logic_error("census witness failed re-certification");
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------------------
// Matchings.

/// Maximum matching size by Edmonds' blossom algorithm.
inline int matching_number(const Graph& g) {
  const int n = g.order();
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<int>> adj(un);
  for (auto [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> match(un, -1), parent(un), base(un), queue;
  std::vector<char> used(un), blossom(un);

  auto lca = [&](int a, int b) {
    std::vector<char> seen(un, 0);
    while (true) {
      a = base[static_cast<std::size_t>(a)];
      seen[static_cast<std::size_t>(a)] = 1;
      if (match[static_cast<std::size_t>(a)] == -1) break;
      a = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(a)])];
    }
    while (true) {
      b = base[static_cast<std::size_t>(b)];
      if (seen[static_cast<std::size_t>(b)]) return b;
      b = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(b)])];
    }
  };
  auto mark_path = [&](int v, int b, int child) {
    while (base[static_cast<std::size_t>(v)] != b) {
      blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(v)])] = 1;
      blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(match[static_cast<std::size_t>(v)])])] = 1;
      parent[static_cast<std::size_t>(v)] = child;
      child = match[static_cast<std::size_t>(v)];
      v = parent[static_cast<std::size_t>(match[static_cast<std::size_t>(v)])];
    }
  };
  auto find_path = [&](int root) {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    std::iota(base.begin(), base.end(), 0);
    used[static_cast<std::size_t>(root)] = 1;
    queue.assign(1, root);
    for (std::size_t qh = 0; qh < queue.size(); ++qh) {
      const int v = queue[qh];
      for (int to : adj[static_cast<std::size_t>(v)]) {
        if (base[static_cast<std::size_t>(v)] == base[static_cast<std::size_t>(to)] || match[static_cast<std::size_t>(v)] == to)
          continue;
        if (to == root || (match[static_cast<std::size_t>(to)] != -1 &&
                           parent[static_cast<std::size_t>(match[static_cast<std::size_t>(to)])] != -1)) {
          const int cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n; ++i) {
            if (blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(i)])]) {
              base[static_cast<std::size_t>(i)] = cur;
              if (!used[static_cast<std::size_t>(i)]) {
                used[static_cast<std::size_t>(i)] = 1;
                queue.push_back(i);
              }
            }
          }
        } else if (parent[static_cast<std::size_t>(to)] == -1) {
          parent[static_cast<std::size_t>(to)] = v;
          if (match[static_cast<std::size_t>(to)] == -1) return to;
          used[static_cast<std::size_t>(match[static_cast<std::size_t>(to)])] = 1;
          queue.push_back(match[static_cast<std::size_t>(to)]);
        }
      }
    }
    return -1;
  };

  int size = 0;
  for (int v = 0; v < n; ++v) {
    if (match[static_cast<std::size_t>(v)] != -1) continue;
    int end = find_path(v);
    if (end == -1) continue;
    ++size;
    while (end != -1) {
      const int pv = parent[static_cast<std::size_t>(end)];
      const int ppv = match[static_cast<std::size_t>(pv)];
      match[static_cast<std::size_t>(end)] = pv;
      match[static_cast<std::size_t>(pv)] = end;
      end = ppv;
    }
  }
  return size;
}

/// e(g) <= ν(g)·(Δ(g) + 1).
inline bool check_md_bound(const Graph& g) {
  return g.edge_count() <= static_cast<std::int64_t>(matching_number(g)) * (g.max_degree() + 1);
}

/// |A_1 ∩ ... ∩ A_m| >= Σ|A_i| − (m−1)|A_1 ∪ ... ∪ A_m|.
inline bool intersection_bound_check(const std::vector<std::set<int>>& sets) {
  if (sets.empty()) return true;
  std::set<int> inter = sets.front();
  std::set<int> uni;
  long long total = 0;
  for (const auto& s : sets) {
    total += static_cast<long long>(s.size());
    uni.insert(s.begin(), s.end());
    std::set<int> next;
    std::set_intersection(inter.begin(), inter.end(), s.begin(), s.end(), std::inserter(next, next.end()));
    inter = std::move(next);
  }
  const long long m = static_cast<long long>(sets.size());
  return static_cast<long long>(inter.size()) >= total - (m - 1) * static_cast<long long>(uni.size());
}

}  // namespace fanex

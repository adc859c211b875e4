#pragma once

#include "fanex/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanex {

/// The forbidden graph t(P_1 ∨ P_{2k}).
struct FanParams {
  int t = 1;
  int k = 3;

  void validate() const {
    if (t < 1) throw std::invalid_argument("fan copy count t must be >= 1, got " + std::to_string(t));
    if (k < 3) throw std::invalid_argument("half-path length k must be >= 3, got " + std::to_string(k));
  }
  int fan_order() const { return 2 * k + 1; }
};

struct FanCopy {
  int center = -1;
  std::vector<int> path;  // 2k vertices, consecutive ones adjacent, all adjacent to center
  friend bool operator==(const FanCopy&, const FanCopy&) = default;
};

struct FanWitness {
  std::vector<FanCopy> copies;
  friend bool operator==(const FanWitness&, const FanWitness&) = default;
};

/// Re-checks a witness against the adjacency relation: each copy is a fan on
/// 2k+1 distinct vertices and the copies are pairwise vertex-disjoint.
inline bool verify_witness(const Graph& g, const FanWitness& w, int k) {
  VertexSet seen(static_cast<std::size_t>(g.order()));
  auto claim = [&](int v) {
    if (v < 0 || v >= g.order() || seen.test(static_cast<std::size_t>(v))) return false;
    seen.set(static_cast<std::size_t>(v));
    return true;
  };
  for (const auto& c : w.copies) {
    if (static_cast<int>(c.path.size()) != 2 * k) return false;
    if (!claim(c.center)) return false;
    for (std::size_t i = 0; i < c.path.size(); ++i) {
      if (!claim(c.path[i])) return false;
      if (!g.adjacent_unchecked(c.center, c.path[i])) return false;
      if (i > 0 && !g.adjacent_unchecked(c.path[i - 1], c.path[i])) return false;
    }
  }
  return true;
}

namespace detail {

/// Components at or below this size use subset dynamic programming.
inline constexpr std::size_t kPathDpLimit = 20;

/// Upper bound on the order of any path inside G[s]: a path meets an
/// independent set I in at most |s \ I| + 1 vertices.
inline std::size_t path_order_bound(const Graph& g, const VertexSet& s) {
  VertexSet rest = s;
  std::size_t independent = 0;
  while (rest.any()) {
    std::size_t pick = rest.size();
    int best = -1;
    rest.for_each([&](std::size_t v) {
      int d = g.degree_in(static_cast<int>(v), rest);
      if (best < 0 || d < best) {
        best = d;
        pick = v;
      }
    });
    ++independent;
    VertexSet nb = g.neighbors(static_cast<int>(pick));
    rest -= nb;
    rest.reset(pick);
  }
  const std::size_t total = s.count();
  return std::min(total, 2 * (total - independent) + 1);
}

inline VertexSet reach_from(const Graph& g, const VertexSet& seeds, const VertexSet& within) {
  VertexSet comp = seeds & within;
  VertexSet frontier = comp;
  while (frontier.any()) {
    VertexSet next(within.size());
    frontier.for_each([&](std::size_t v) {
      auto r = g.row(static_cast<int>(v));
      for (std::size_t i = 0; i < next.word_count(); ++i) next.data()[i] |= r[i];
    });
    next &= within;
    next -= comp;
    comp |= next;
    frontier = std::move(next);
  }
  return comp;
}

inline std::optional<std::vector<int>> path_by_subset_dp(const Graph& g, const VertexSet& comp, int m) {
  const auto verts = comp.members();
  const std::size_t c = verts.size();
  std::vector<std::uint32_t> adj(c, 0);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (i != j && g.adjacent_unchecked(verts[i], verts[j])) adj[i] |= std::uint32_t{1} << j;

  std::vector<std::uint32_t> ends(std::size_t{1} << c, 0);
  for (std::size_t i = 0; i < c; ++i) ends[std::size_t{1} << i] = std::uint32_t{1} << i;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << c); ++mask) {
    const std::uint32_t here = ends[mask];
    if (!here) continue;
    const int pc = std::popcount(mask);
    if (pc == m) {
      std::vector<int> path;
      std::uint32_t cur_mask = mask;
      int cur = std::countr_zero(here);
      while (true) {
        path.push_back(verts[static_cast<std::size_t>(cur)]);
        const std::uint32_t prev_mask = cur_mask ^ (std::uint32_t{1} << cur);
        if (!prev_mask) break;
        const std::uint32_t prev = ends[prev_mask] & adj[static_cast<std::size_t>(cur)];
        cur = std::countr_zero(prev);
        cur_mask = prev_mask;
      }
      return path;
    }
    if (pc > m) continue;
    std::uint32_t e = here;
    while (e) {
      const int end = std::countr_zero(e);
      e &= e - 1;
      std::uint32_t ext = adj[static_cast<std::size_t>(end)] & ~mask;
      while (ext) {
        const int u = std::countr_zero(ext);
        ext &= ext - 1;
        ends[mask | (std::uint32_t{1} << u)] |= std::uint32_t{1} << u;
      }
    }
  }
  return std::nullopt;
}

/// Depth-first path extension with reachability and independent-set bounds.
/// Visits every simple path (as an ordered sequence) that the bounds cannot
/// rule out; `on_full` sees each path of exactly m vertices and returns true
/// to stop. `steps` counts expansions and is checked against `step_budget`.
class PathExplorer {
 public:
  PathExplorer(const Graph& g, const VertexSet& allowed, int m, std::uint64_t* steps = nullptr,
               std::uint64_t step_budget = UINT64_MAX)
      : g_(g), allowed_(allowed), m_(static_cast<std::size_t>(m)), used_(allowed.size()), steps_(steps),
        budget_(step_budget) {}

  /// Returns true iff stopped by the callback.
  bool run(const std::function<bool(const std::vector<int>&)>& on_full) {
    on_full_ = &on_full;
    auto starts = allowed_.members();
    std::stable_sort(starts.begin(), starts.end(), [&](int a, int b) {
      return g_.degree_in(a, allowed_) < g_.degree_in(b, allowed_);
    });
    for (int s : starts) {
      path_.assign(1, s);
      used_.set(static_cast<std::size_t>(s));
      bool stop = extend(s);
      used_.reset(static_cast<std::size_t>(s));
      if (stop || out_of_budget_) return stop;
    }
    return false;
  }

  bool out_of_budget() const { return out_of_budget_; }

 private:
  bool extend(int end) {
    if (steps_ && ++*steps_ > budget_) {
      out_of_budget_ = true;
      return false;
    }
    if (path_.size() == m_) return (*on_full_)(path_);
    const VertexSet free = allowed_ - used_;
    VertexSet cand = g_.neighbors(end) & free;
    if (cand.none()) return false;
    const VertexSet reach = reach_from(g_, cand, free);
    if (path_.size() + reach.count() < m_) return false;
    if (path_.size() + path_order_bound(g_, reach) < m_) return false;

    auto order = cand.members();
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g_.degree_in(a, free) < g_.degree_in(b, free); });
    for (int u : order) {
      path_.push_back(u);
      used_.set(static_cast<std::size_t>(u));
      bool stop = extend(u);
      used_.reset(static_cast<std::size_t>(u));
      path_.pop_back();
      if (stop || out_of_budget_) return stop;
    }
    return false;
  }

  const Graph& g_;
  const VertexSet& allowed_;
  std::size_t m_;
  VertexSet used_;
  std::vector<int> path_;
  std::uint64_t* steps_;
  std::uint64_t budget_;
  bool out_of_budget_ = false;
  const std::function<bool(const std::vector<int>&)>* on_full_ = nullptr;
};

}  // namespace detail

/// A path on m vertices inside G[allowed], if one exists. Exact.
inline std::optional<std::vector<int>> find_path_within(const Graph& g, const VertexSet& allowed, int m) {
  if (m < 1) throw std::invalid_argument("path order must be >= 1");
  if (allowed.count() < static_cast<std::size_t>(m)) return std::nullopt;
  if (m == 1) return std::vector<int>{static_cast<int>(allowed.first())};
  for (const auto& comp : components(g, allowed)) {
    const std::size_t size = comp.count();
    if (size < static_cast<std::size_t>(m)) continue;
    if (detail::path_order_bound(g, comp) < static_cast<std::size_t>(m)) continue;
    if (size <= detail::kPathDpLimit) {
      if (auto p = detail::path_by_subset_dp(g, comp, m)) return p;
      continue;
    }
    std::optional<std::vector<int>> found;
    detail::PathExplorer explorer(g, comp, m);
    explorer.run([&](const std::vector<int>& p) {
      found = p;
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

inline std::optional<std::vector<int>> find_path(const Graph& g, int m) {
  return find_path_within(g, VertexSet::full(static_cast<std::size_t>(g.order())), m);
}

/// True iff g contains P_m as a subgraph.
inline bool has_path_on(const Graph& g, int m) { return find_path(g, m).has_value(); }

inline bool is_p2k_free(const Graph& g, int k) {
  if (k < 3) throw std::invalid_argument("k must be >= 3");
  return !has_path_on(g, 2 * k);
}

namespace detail {

/// Candidate centers inside `avail`: degree >= 2k there, ordered by degree
/// (descending) then label.
inline std::vector<int> fan_centers(const Graph& g, const VertexSet& avail, int k) {
  std::vector<std::pair<int, int>> ranked;
  avail.for_each([&](std::size_t v) {
    int d = g.degree_in(static_cast<int>(v), avail);
    if (d >= 2 * k) ranked.emplace_back(-d, static_cast<int>(v));
  });
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> out;
  out.reserve(ranked.size());
  for (auto [nd, v] : ranked) out.push_back(v);
  return out;
}

inline std::optional<FanCopy> find_fan_within(const Graph& g, const VertexSet& avail, int k) {
  for (int c : fan_centers(g, avail, k)) {
    VertexSet nb = g.neighbors(c) & avail;
    if (auto p = find_path_within(g, nb, 2 * k)) return FanCopy{c, *p};
  }
  return std::nullopt;
}

}  // namespace detail

/// A single P_1 ∨ P_{2k}, searched center-first.
inline std::optional<FanWitness> contains_fan(const Graph& g, int k) {
  if (k < 3) throw std::invalid_argument("k must be >= 3");
  auto copy = detail::find_fan_within(g, VertexSet::full(static_cast<std::size_t>(g.order())), k);
  if (!copy) return std::nullopt;
  FanWitness w{{*copy}};
  if (!verify_witness(g, w, k)) throw std::logic_error("fan search produced an invalid witness");
  return w;
}

enum class PackingStatus { found, absent, budget_exhausted };

inline const char* to_string(PackingStatus s) {
  switch (s) {
    case PackingStatus::found: return "found";
    case PackingStatus::absent: return "absent";
    case PackingStatus::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

struct PackingResult {
  PackingStatus status = PackingStatus::absent;
  std::optional<FanWitness> witness;
  std::uint64_t nodes = 0;

  bool found() const { return status == PackingStatus::found; }
  bool absent() const { return status == PackingStatus::absent; }
};

inline constexpr std::uint64_t kDefaultPackingBudget = 10'000'000;

namespace detail {

class PackingSearch {
 public:
  PackingSearch(const Graph& g, FanParams p, std::uint64_t budget) : g_(g), p_(p), budget_(budget) {}

  PackingResult run() {
    const auto n = static_cast<std::size_t>(g_.order());
    PackingResult out;
    const bool ok = search(VertexSet::full(n), p_.t, VertexSet(n));
    out.nodes = nodes_;
    if (ok) {
      out.status = PackingStatus::found;
      out.witness = FanWitness{chosen_};
    } else {
      out.status = exhausted_ ? PackingStatus::budget_exhausted : PackingStatus::absent;
    }
    return out;
  }

 private:
  bool tick() {
    if (++nodes_ > budget_) exhausted_ = true;
    return !exhausted_;
  }

  /// Greedy fan transversal: repeatedly delete the center of some fan. If the
  /// remainder becomes fan-free after fewer than `need` deletions, no `need`
  /// disjoint fans exist (each must meet the deleted set).
  bool transversal_rules_out(VertexSet rest, int need) {
    for (int removed = 0; removed < need; ++removed) {
      auto fan = find_fan_within(g_, rest, p_.k);
      if (!fan) return true;
      rest.reset(static_cast<std::size_t>(fan->center));
    }
    return false;
  }

  bool search(const VertexSet& avail, int need, const VertexSet& non_center) {
    if (!tick()) return false;
    if (need == 0) return true;
    if (avail.count() < static_cast<std::size_t>(need) * static_cast<std::size_t>(p_.fan_order())) return false;
    if (transversal_rules_out(avail, need)) return false;

    int center = -1;
    for (int c : fan_centers(g_, avail, p_.k)) {
      if (!non_center.test(static_cast<std::size_t>(c))) {
        center = c;
        break;
      }
    }
    if (center < 0) return false;

    // Branch 1: `center` is the center of a copy. Try every distinct vertex set
    // of a P_{2k} in its neighborhood.
    const VertexSet nb = g_.neighbors(center) & avail;
    std::set<std::vector<int>> tried;
    bool success = false;
    PathExplorer explorer(g_, nb, 2 * p_.k, &nodes_, budget_);
    explorer.run([&](const std::vector<int>& path) {
      std::vector<int> key = path;
      std::sort(key.begin(), key.end());
      if (!tried.insert(key).second) return false;
      VertexSet rest = avail;
      rest.reset(static_cast<std::size_t>(center));
      for (int v : path) rest.reset(static_cast<std::size_t>(v));
      chosen_.push_back(FanCopy{center, path});
      if (search(rest, need - 1, non_center)) {
        success = true;
        return true;
      }
      chosen_.pop_back();
      return exhausted_;
    });
    if (explorer.out_of_budget()) exhausted_ = true;
    if (success) return true;
    if (exhausted_) return false;

    // Branch 2: `center` is not a center (it may still lie on a path).
    VertexSet marked = non_center;
    marked.set(static_cast<std::size_t>(center));
    return search(avail, need, marked);
  }

  const Graph& g_;
  FanParams p_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<FanCopy> chosen_;
};

}  // namespace detail

/// Exact search for t vertex-disjoint copies of P_1 ∨ P_{2k}. Reports
/// budget_exhausted (distinct from absent) when the node budget runs out.
inline PackingResult contains_disjoint_fans(const Graph& g, FanParams params,
                                            std::uint64_t budget = kDefaultPackingBudget) {
  params.validate();
  PackingResult out;
  if (params.t == 1) {
    out.witness = contains_fan(g, params.k);
    out.status = out.witness ? PackingStatus::found : PackingStatus::absent;
    out.nodes = 1;
    return out;
  }
  out = detail::PackingSearch(g, params, budget).run();
  if (out.witness && !verify_witness(g, *out.witness, params.k))
    throw std::logic_error("packing search produced an invalid witness");
  return out;
}

}  // namespace fanex

#pragma once

#include "fanex/graph.hpp"
#include "fanex/graph6.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanex {

/// Upper triangle of the canonically relabeled adjacency matrix, one bit per
/// vertex pair. Only comparable between graphs of the same order.
using CanonCode = unsigned __int128;

inline constexpr int kCanonicalMaxOrder = 16;

struct CanonicalLabeling {
  CanonCode code = 0;
  std::vector<int> order;  // order[p] = vertex placed at canonical position p
  int leaves = 0;          // search-tree leaves visited
};

namespace detail {

struct Partition {
  std::array<int, kCanonicalMaxOrder> lab{};
  std::uint32_t starts = 0;  // bit p set when a cell begins at position p
};

class CanonSearch {
 public:
  CanonSearch(const Graph& g) : n_(g.order()) {
    for (int v = 0; v < n_; ++v) adj_[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(g.mask(v));
  }

  CanonicalLabeling run(Partition p) {
    std::vector<int> prefix;
    search(p, prefix);
    CanonicalLabeling out;
    out.code = best_code_;
    out.order.assign(best_.begin(), best_.begin() + n_);
    out.leaves = leaves_;
    return out;
  }

 private:
  using Perm = std::array<int, kCanonicalMaxOrder>;

  std::uint32_t all_starts() const { return n_ == 32 ? ~0u : ((1u << n_) - 1u); }

  // Split every cell by the vector of neighbor counts into each cell until
  // the partition is equitable. Sub-cells are ordered by that vector, so the
  // result depends only on the ordered input partition up to isomorphism.
  void refine(Partition& p) const {
    while (true) {
      std::array<std::uint32_t, kCanonicalMaxOrder> cell_mask{};
      std::array<int, kCanonicalMaxOrder> cell_of{};
      int cells = 0;
      for (int pos = 0; pos < n_; ++pos) {
        if ((p.starts >> pos) & 1u) ++cells;
        const int v = p.lab[static_cast<std::size_t>(pos)];
        cell_mask[static_cast<std::size_t>(cells - 1)] |= 1u << v;
        cell_of[static_cast<std::size_t>(v)] = cells - 1;
      }
      if (cells == n_) return;
      std::array<CanonCode, kCanonicalMaxOrder> key{};
      for (int v = 0; v < n_; ++v) {
        CanonCode k = static_cast<CanonCode>(cell_of[static_cast<std::size_t>(v)]) << 64;
        for (int c = 0; c < cells; ++c) {
          const auto cnt = static_cast<std::uint64_t>(std::popcount(adj_[static_cast<std::size_t>(v)] &
                                                                    cell_mask[static_cast<std::size_t>(c)]));
          k |= static_cast<CanonCode>(cnt) << (60 - 4 * c);
        }
        key[static_cast<std::size_t>(v)] = k;
      }
      std::sort(p.lab.begin(), p.lab.begin() + n_,
                [&](int a, int b) { return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)]; });
      std::uint32_t starts = 1u;
      for (int pos = 1; pos < n_; ++pos)
        if (key[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(pos)])] !=
            key[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(pos - 1)])])
          starts |= 1u << pos;
      if (std::popcount(starts) == cells) {
        p.starts = starts;
        return;
      }
      p.starts = starts;
    }
  }

  CanonCode leaf_code(const Partition& p) const {
    CanonCode code = 0;
    int bit = 0;
    for (int j = 1; j < n_; ++j) {
      const std::uint32_t row = adj_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(j)])];
      for (int i = 0; i < j; ++i, ++bit)
        if ((row >> p.lab[static_cast<std::size_t>(i)]) & 1u) code |= CanonCode{1} << (127 - bit);
    }
    return code;
  }

  void record_automorphism(const Perm& from, const Partition& to) {
    Perm g{};
    bool identity = true;
    for (int pos = 0; pos < n_; ++pos) {
      g[static_cast<std::size_t>(from[static_cast<std::size_t>(pos)])] = to.lab[static_cast<std::size_t>(pos)];
      identity = identity && from[static_cast<std::size_t>(pos)] == to.lab[static_cast<std::size_t>(pos)];
    }
    if (!identity && autos_.size() < 64) autos_.push_back(g);
  }

  void search(Partition p, std::vector<int>& prefix) {
    refine(p);
    if (p.starts == all_starts()) {
      ++leaves_;
      const CanonCode code = leaf_code(p);
      if (!have_first_) {
        have_first_ = true;
        first_code_ = code;
        first_ = p.lab;
      } else if (code == first_code_) {
        record_automorphism(first_, p);
      }
      if (!have_best_ || code > best_code_) {
        have_best_ = true;
        best_code_ = code;
        best_ = p.lab;
      } else if (code == best_code_) {
        record_automorphism(best_, p);
      }
      return;
    }
    int begin = 0;
    while (true) {
      int end = begin + 1;
      while (end < n_ && !((p.starts >> end) & 1u)) ++end;
      if (end - begin > 1) break;
      begin = end;
    }
    int end = begin + 1;
    while (end < n_ && !((p.starts >> end) & 1u)) ++end;

    std::vector<int> tried;
    for (int pos = begin; pos < end; ++pos) {
      const int v = p.lab[static_cast<std::size_t>(pos)];
      if (!tried.empty() && equivalent_to_tried(v, tried, prefix)) continue;
      tried.push_back(v);
      Partition child = p;
      std::swap(child.lab[static_cast<std::size_t>(begin)], child.lab[static_cast<std::size_t>(pos)]);
      child.starts |= 1u << (begin + 1);
      prefix.push_back(v);
      search(child, prefix);
      prefix.pop_back();
    }
  }

  // v lies in the orbit of some tried vertex under the automorphisms found so
  // far that fix every prefix vertex.
  bool equivalent_to_tried(int v, const std::vector<int>& tried, const std::vector<int>& prefix) const {
    std::array<int, kCanonicalMaxOrder> parent{};
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    for (const auto& g : autos_) {
      bool fixes = true;
      for (int u : prefix) fixes = fixes && g[static_cast<std::size_t>(u)] == u;
      if (!fixes) continue;
      for (int x = 0; x < n_; ++x) {
        const int a = find(x);
        const int b = find(g[static_cast<std::size_t>(x)]);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
      }
    }
    const int root = find(v);
    for (int u : tried)
      if (find(u) == root) return true;
    return false;
  }

  int n_;
  std::array<std::uint32_t, kCanonicalMaxOrder> adj_{};
  std::vector<Perm> autos_;
  Perm first_{};
  Perm best_{};
  CanonCode first_code_ = 0;
  CanonCode best_code_ = 0;
  bool have_first_ = false;
  bool have_best_ = false;
  int leaves_ = 0;
};

}  // namespace detail

/// Canonical labeling respecting an ordered initial coloring: vertices of
/// cells[i] land before those of cells[i+1]. Vertices missing from `cells`
/// form one trailing cell. With no cells, all vertices start together.
inline CanonicalLabeling canonical_labeling(const Graph& g, const std::vector<std::vector<int>>& cells = {}) {
  const int n = g.order();
  if (n > kCanonicalMaxOrder)
    throw std::invalid_argument("canonical labeling supports at most " + std::to_string(kCanonicalMaxOrder) + " vertices");
  if (n == 0) return {};
  detail::Partition p;
  std::uint32_t used = 0;
  int pos = 0;
  auto place_cell = [&](const std::vector<int>& cell) {
    if (cell.empty()) return;
    p.starts |= 1u << pos;
    for (int v : cell) {
      if (v < 0 || v >= n) throw std::out_of_range("initial cell vertex out of range");
      if ((used >> v) & 1u) throw std::invalid_argument("initial cells overlap");
      used |= 1u << v;
      p.lab[static_cast<std::size_t>(pos++)] = v;
    }
  };
  for (const auto& cell : cells) place_cell(cell);
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (!((used >> v) & 1u)) rest.push_back(v);
  place_cell(rest);
  return detail::CanonSearch(g).run(p);
}

inline CanonCode canonical_code(const Graph& g) { return canonical_labeling(g).code; }

/// g relabeled so that canonical position p becomes vertex p.
inline Graph canonical_form(const Graph& g) {
  const auto lab = canonical_labeling(g);
  std::vector<int> perm(static_cast<std::size_t>(g.order()));
  for (std::size_t p = 0; p < lab.order.size(); ++p) perm[static_cast<std::size_t>(lab.order[p])] = static_cast<int>(p);
  return permute(g, perm);
}

inline std::string canonical_graph6(const Graph& g) { return to_graph6(canonical_form(g)); }

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  return canonical_code(a) == canonical_code(b);
}

}  // namespace fanex

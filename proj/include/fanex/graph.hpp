#pragma once

#include "fanex/bitset.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fanex {

/// Subset of the vertex labels {0..n-1} of some graph.
using VertexSet = Bitset;

inline VertexSet vertex_range(std::size_t n, std::size_t begin, std::size_t end) {
  if (begin > end || end > n) throw std::out_of_range("vertex range outside graph");
  VertexSet s(n);
  for (std::size_t v = begin; v < end; ++v) s.set(v);
  return s;
}

class Graph;

/// Mutable adjacency used to assemble a Graph; freeze with build().
class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : n_(check_order(n)), words_((static_cast<std::size_t>(n) + 63) / 64),
                                 rows_(static_cast<std::size_t>(n) * words_, 0) {}

  int order() const { return n_; }

  void add_edge(int u, int v) {
    check_pair(u, v);
    set_bit(u, v);
    set_bit(v, u);
  }
  void remove_edge(int u, int v) {
    check_pair(u, v);
    clear_bit(u, v);
    clear_bit(v, u);
  }
  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (rows_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] >> (v & 63)) & 1u;
  }

  Graph build() const;

 private:
  static int check_order(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    return n;
  }
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  }
  void check_pair(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  }
  void set_bit(int u, int v) {
    rows_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] |= std::uint64_t{1} << (v & 63);
  }
  void clear_bit(int u, int v) {
    rows_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] &= ~(std::uint64_t{1} << (v & 63));
  }

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;

  friend class Graph;
};

/// Immutable simple undirected graph. Row v is a bitset of N(v); graphs with
/// more than 64 vertices use multi-word rows.
class Graph {
 public:
  Graph() = default;

  int order() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  bool adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (row(u)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }

  std::span<const std::uint64_t> row(int v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }

  /// Single-word adjacency mask; only valid when order() <= 64.
  std::uint64_t mask(int v) const { return words_ ? rows_[static_cast<std::size_t>(v)] : 0; }

  VertexSet neighbors(int v) const {
    check_vertex(v);
    VertexSet s(static_cast<std::size_t>(n_));
    std::copy(row(v).begin(), row(v).end(), s.data());
    return s;
  }

  int degree(int v) const {
    check_vertex(v);
    int d = 0;
    for (auto w : row(v)) d += std::popcount(w);
    return d;
  }

  /// |N(v) ∩ s|.
  int degree_in(int v, const VertexSet& s) const {
    int d = 0;
    auto r = row(v);
    for (std::size_t i = 0; i < words_; ++i) d += std::popcount(r[i] & s.data()[i]);
    return d;
  }

  std::int64_t edge_count() const { return edge_count_; }

  int max_degree() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
  }
  int min_degree() const {
    if (n_ == 0) return 0;
    int best = n_;
    for (int v = 0; v < n_; ++v) best = std::min(best, degree(v));
    return best;
  }

  std::vector<int> degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = degree(v);
    return d;
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (adjacent_unchecked(u, v)) out.emplace_back(u, v);
    return out;
  }

  bool adjacent_unchecked(int u, int v) const {
    return (rows_[static_cast<std::size_t>(u) * words_ + (static_cast<std::size_t>(v) >> 6)] >> (v & 63)) & 1u;
  }

  GraphBuilder to_builder() const {
    GraphBuilder b(n_);
    b.rows_ = rows_;
    return b;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  }

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::int64_t edge_count_ = 0;

  friend class GraphBuilder;
};

inline Graph GraphBuilder::build() const {
  Graph g;
  g.n_ = n_;
  g.words_ = words_;
  g.rows_ = rows_;
  std::int64_t degree_sum = 0;
  for (auto w : rows_) degree_sum += std::popcount(w);
  g.edge_count_ = degree_sum / 2;
  return g;
}

// ---------------------------------------------------------------------------
// Constructors. Vertex labels are documented per constructor; joins and unions
// place the left operand's block first.

inline Graph empty_graph(int n) { return GraphBuilder(n).build(); }

inline Graph complete_graph(int n) {
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) b.add_edge(u, v);
  return b.build();
}

/// P_m on 0-1-...-(m-1).
inline Graph path_graph(int m) {
  GraphBuilder b(m);
  for (int v = 0; v + 1 < m; ++v) b.add_edge(v, v + 1);
  return b.build();
}

inline Graph cycle_graph(int m) {
  if (m < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  GraphBuilder b(m);
  for (int v = 0; v < m; ++v) b.add_edge(v, (v + 1) % m);
  return b.build();
}

/// K_{a,b}: side A is 0..a-1, side B is a..a+b-1.
inline Graph complete_bipartite_graph(int a, int b) {
  GraphBuilder g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) g.add_edge(u, v);
  return g.build();
}

/// K_{1,m} with center 0.
inline Graph star_graph(int m) { return complete_bipartite_graph(1, m); }

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen_graph() {
  GraphBuilder b(10);
  for (int i = 0; i < 5; ++i) {
    b.add_edge(i, (i + 1) % 5);
    b.add_edge(5 + i, 5 + (i + 2) % 5);
    b.add_edge(i, i + 5);
  }
  return b.build();
}

/// Circulant graph on m vertices: i ~ i±s (mod m) for every s in offsets.
inline Graph circulant_graph(int m, const std::vector<int>& offsets) {
  GraphBuilder b(m);
  for (int i = 0; i < m; ++i)
    for (int s : offsets) {
      if (s <= 0 || 2 * s > m) throw std::invalid_argument("circulant offset out of range");
      b.add_edge(i, (i + s) % m);
    }
  return b.build();
}

/// Vertices of g first, then h; all g-h edges added.
inline Graph join(const Graph& g, const Graph& h) {
  const int a = g.order();
  GraphBuilder b(a + h.order());
  for (auto [u, v] : g.edges()) b.add_edge(u, v);
  for (auto [u, v] : h.edges()) b.add_edge(a + u, a + v);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < h.order(); ++v) b.add_edge(u, a + v);
  return b.build();
}

/// Blocks laid out in list order.
inline Graph disjoint_union(const std::vector<Graph>& gs) {
  int total = 0;
  for (const auto& g : gs) total += g.order();
  GraphBuilder b(total);
  int offset = 0;
  for (const auto& g : gs) {
    for (auto [u, v] : g.edges()) b.add_edge(offset + u, offset + v);
    offset += g.order();
  }
  return b.build();
}

/// G[S]; members of S keep their relative order (i-th smallest member -> i).
inline Graph induced(const Graph& g, const VertexSet& s) {
  if (s.size() != static_cast<std::size_t>(g.order()))
    throw std::invalid_argument("vertex set universe does not match graph order");
  const auto members = s.members();
  GraphBuilder b(static_cast<int>(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (g.adjacent_unchecked(members[i], members[j])) b.add_edge(static_cast<int>(i), static_cast<int>(j));
  return b.build();
}

inline Graph induced(const Graph& g, const std::vector<int>& members) {
  VertexSet s(static_cast<std::size_t>(g.order()));
  for (int v : members) {
    if (v < 0 || v >= g.order()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    s.set(static_cast<std::size_t>(v));
  }
  return induced(g, s);
}

inline int degree(const Graph& g, int v) { return g.degree(v); }
inline int min_degree(const Graph& g) { return g.min_degree(); }
inline int max_degree(const Graph& g) { return g.max_degree(); }

/// Connected components as vertex sets, ordered by smallest member.
inline std::vector<VertexSet> components(const Graph& g, const VertexSet& within) {
  std::vector<VertexSet> out;
  VertexSet left = within;
  while (left.any()) {
    VertexSet comp(left.size());
    VertexSet frontier(left.size());
    frontier.set(left.first());
    while (frontier.any()) {
      comp |= frontier;
      VertexSet next(left.size());
      frontier.for_each([&](std::size_t v) {
        auto r = g.row(static_cast<int>(v));
        for (std::size_t i = 0; i < next.word_count(); ++i) next.data()[i] |= r[i];
      });
      next &= left;
      next -= comp;
      frontier = std::move(next);
    }
    left -= comp;
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  return components(g, VertexSet::full(static_cast<std::size_t>(g.order()))).size() == 1;
}

/// Relabel: vertex v becomes perm[v].
inline Graph permute(const Graph& g, const std::vector<int>& perm) {
  if (perm.size() != static_cast<std::size_t>(g.order())) throw std::invalid_argument("permutation size mismatch");
  GraphBuilder b(g.order());
  for (auto [u, v] : g.edges()) b.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return b.build();
}

}  // namespace fanex

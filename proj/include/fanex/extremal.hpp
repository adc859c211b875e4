#pragma once

#include "fanex/fan_detect.hpp"
#include "fanex/graph.hpp"
#include "fanex/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fanex {

/// One member K_{t-1} ∨ (H ∨ n2·K_1) of the extremal family, H on n1 vertices.
struct FamilySpec {
  int n = 0;
  int t = 1;
  int k = 3;
  int n1 = 0;

  int n2() const { return n - n1 - t + 1; }
  /// r = n1 - (n - t + 1)/2, a half-integer in general.
  Rational r() const { return Rational(n1) - make_rational(n - t + 1, 2); }
  /// (k-1)·n1 even means H can be (k-1)-regular; otherwise nearly regular.
  bool inner_regular() const { return ((k - 1) * n1) % 2 == 0; }

  void validate() const {
    FanParams{t, k}.validate();
    if (n1 < k)
      throw std::invalid_argument("infeasible family: n1 = " + std::to_string(n1) + " < k = " + std::to_string(k));
    if (n2() < 0)
      throw std::invalid_argument("infeasible family: n2 = n - n1 - t + 1 = " + std::to_string(n2()) + " < 0");
  }
};

/// e(K_{t-1} ∨ H) = C(t-1,2) + (t-1)(n1+n2) + floor((k-1)n1/2) + n1·n2.
inline std::int64_t edge_formula(std::int64_t n1, std::int64_t n2, std::int64_t t, std::int64_t k) {
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("edge_formula needs n1, n2 >= 0");
  if (t < 1) throw std::invalid_argument("edge_formula needs t >= 1");
  return (t - 1) * (t - 2) / 2 + (t - 1) * (n1 + n2) + ((k - 1) * n1) / 2 + n1 * n2;
}

struct ExOptimum {
  int n1 = 0;
  std::int64_t value = 0;
};

/// The maximizing n1 of edge_formula over n1 + n2 = n - t + 1:
/// floor((n-t+1)/2 + (k-1)/4) if 2n - 2t + k ≡ 0 (mod 4), else the ceiling.
inline ExOptimum optimal_n1_ex(int n, int t, int k) {
  FanParams{t, k}.validate();
  const std::int64_t total = static_cast<std::int64_t>(n) - t + 1;
  if (total < 0) throw std::invalid_argument("order n too small for t");
  const Rational centre = make_rational(2 * total + k - 1, 4);
  const bool use_floor = ((2 * static_cast<std::int64_t>(n) - 2 * t + k) % 4 + 4) % 4 == 0;
  const auto n1 = static_cast<std::int64_t>(use_floor ? floor_of(centre) : ceil_of(centre));
  if (n1 > total)
    throw std::invalid_argument("order n = " + std::to_string(n) + " too small: optimal n1 exceeds n - t + 1");
  return {static_cast<int>(n1), edge_formula(n1, total - n1, t, k)};
}

/// All spectrally optimal n1 values (one or two, ascending).
inline std::vector<int> optimal_n1_spex(int n, int t, int k) {
  FanParams{t, k}.validate();
  if (n < t) throw std::invalid_argument("order n too small for t");
  const bool k_odd = k % 2 == 1;
  if (t == 1) {
    if (k_odd) {
      if (n % 2 == 0) return {n / 2};
      return {(n - 1) / 2, (n + 1) / 2};
    }
    switch (n % 4) {
      case 0: return {n / 2};
      case 1: return {(n - 1) / 2};
      case 3: return {(n + 1) / 2};
      default: return {n / 2 - 1, n / 2 + 1};
    }
  }
  const int total = n - t + 1;
  const int residue = (n - t) % 4;
  if (k_odd || residue == 2 || residue == 3) return {(total + 1) / 2};
  if (residue == 0) return {total / 2};
  return {(n - t + 3) / 2};  // ceil((n-t+2)/2) with n - t ≡ 1 (mod 4)
}

/// r with n1 = (n-t+1)/2 + r at the spectral optimum, t >= 2.
inline Rational r_of_spec(int n, int t, int k) {
  FanParams{t, k}.validate();
  if (t < 2) throw std::invalid_argument("r_of_spec covers t >= 2 only");
  const int residue = (n - t) % 4;
  if (k % 2 == 1) return (n - t) % 2 == 1 ? Rational(0) : make_rational(1, 2);
  switch (residue) {
    case 3: return Rational(0);
    case 0: return make_rational(-1, 2);
    case 1: return Rational(1);
    default: return make_rational(1, 2);
  }
}

struct InnerGraphReport {
  Graph graph;
  std::vector<int> degrees;
  std::optional<int> deficient_vertex;
  std::vector<int> component_sizes;
};

namespace detail {

/// Component sizes in [k, 2k-1] summing to n1. For odd k-1 the remainder is
/// spread in pairs so that at most one part is odd.
inline std::vector<int> inner_component_sizes(int n1, int k) {
  const int parts = n1 / k;
  std::vector<int> sizes(static_cast<std::size_t>(parts), k);
  int rem = n1 - parts * k;
  const bool odd_degree = (k - 1) % 2 == 1;
  std::size_t i = 0;
  if (odd_degree) {
    for (; rem >= 2; rem -= 2, ++i) sizes[i % sizes.size()] += 2;
    if (rem == 1) {
      // The odd part must stay below 2k: pick the smallest part.
      auto it = std::min_element(sizes.begin(), sizes.end());
      *it += 1;
    }
  } else {
    for (; rem > 0; --rem, ++i) sizes[i % sizes.size()] += 1;
  }
  return sizes;
}

/// (k-1)-regular on m vertices; nearly (k-1)-regular with vertex m-1
/// deficient when (k-1)·m is odd.
inline Graph inner_component(int m, int k) {
  const int d = k - 1;
  std::vector<int> offsets;
  for (int s = 1; s <= d / 2; ++s) offsets.push_back(s);
  GraphBuilder b(m);
  for (int i = 0; i < m; ++i)
    for (int s : offsets) b.add_edge(i, (i + s) % m);
  if (d % 2 == 1) {
    if (m % 2 == 0) {
      for (int i = 0; i < m / 2; ++i) b.add_edge(i, i + m / 2);
    } else {
      // Chords of length (m-1)/2 match 0..m-2, leaving m-1 one short.
      const int h = (m - 1) / 2;
      for (int i = 0; i < h; ++i) b.add_edge(i, i + h);
    }
  }
  return b.build();
}

}  // namespace detail

/// P_{2k}-free (k-1)-regular graph on n1 vertices, or nearly (k-1)-regular
/// (exactly one vertex of degree k-2) when (k-1)·n1 is odd.
inline InnerGraphReport build_inner(int n1, int k) {
  if (k < 3) throw std::invalid_argument("k must be >= 3");
  if (n1 < k) throw std::invalid_argument("build_inner needs n1 >= k (n1 = " + std::to_string(n1) + ")");
  InnerGraphReport rep;
  rep.component_sizes = detail::inner_component_sizes(n1, k);
  std::vector<Graph> parts;
  parts.reserve(rep.component_sizes.size());
  for (int m : rep.component_sizes) parts.push_back(detail::inner_component(m, k));
  rep.graph = disjoint_union(parts);
  rep.degrees = rep.graph.degrees();
  for (int v = 0; v < n1; ++v)
    if (rep.degrees[static_cast<std::size_t>(v)] == k - 2) rep.deficient_vertex = v;
  return rep;
}

/// K_{t-1} ∨ (H ∨ n2·K_1), blocks labeled in that order:
/// [0, t-1) clique, [t-1, t-1+n1) inner graph H, the rest independent.
inline Graph build_extremal(const FamilySpec& spec) {
  spec.validate();
  Graph inner = build_inner(spec.n1, spec.k).graph;
  return join(complete_graph(spec.t - 1), join(inner, empty_graph(spec.n2())));
}

inline Graph build_extremal(int n, int t, int k, int n1) { return build_extremal(FamilySpec{n, t, k, n1}); }

struct MembershipReport {
  bool member = false;
  std::string diagnostic;  // empty when member
};

/// Checks g against K_{t-1} ∨ 𝒦^{k-1}_{n1,n2}(P_{2k}) in build_extremal's block order.
inline MembershipReport verify_membership(const Graph& g, int n1, int t, int k) {
  const FamilySpec spec{g.order(), t, k, n1};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    return {false, e.what()};
  }
  const int n = g.order();
  const int v1_begin = t - 1;
  const int v2_begin = t - 1 + n1;

  for (int u = 0; u < v1_begin; ++u)
    if (g.degree(u) != n - 1) return {false, "K_{t-1} block not universal"};
  for (int u = v1_begin; u < v2_begin; ++u)
    for (int v = v2_begin; v < n; ++v)
      if (!g.adjacent_unchecked(u, v)) return {false, "V₁–V₂ not complete bipartite"};
  for (int u = v2_begin; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.adjacent_unchecked(u, v)) return {false, "V₂ not independent"};

  const VertexSet v1 = vertex_range(static_cast<std::size_t>(n), static_cast<std::size_t>(v1_begin),
                                     static_cast<std::size_t>(v2_begin));
  int short_count = 0;
  for (int u = v1_begin; u < v2_begin; ++u) {
    const int d = g.degree_in(u, v1);
    if (d > k - 1) return {false, "degree excess in V₁"};
    short_count += (k - 1) - d;
  }
  const int allowed_short = spec.inner_regular() ? 0 : 1;
  if (short_count > allowed_short) return {false, "degree deficit"};
  if (short_count < allowed_short) return {false, "degree parity violated"};
  if (has_path_on(induced(g, v1), 2 * k)) return {false, "V₁ contains P_{2k}"};
  return {true, {}};
}

struct FinaBounds {
  Rational lower;
  Rational upper;
};

/// (n/4)(n + k + 2t - 7/2) and n²/4 + (2t + k - 2)n/4.
inline FinaBounds fina_bounds(int n, int t, int k) {
  const Rational nn(n);
  const Rational lower = nn / 4 * (nn + k + 2 * t - make_rational(7, 2));
  const Rational upper = nn * nn / 4 + Rational(2 * t + k - 2) * nn / 4;
  return {lower, upper};
}

}  // namespace fanex

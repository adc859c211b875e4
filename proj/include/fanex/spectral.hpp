#pragma once

#include "fanex/extremal.hpp"
#include "fanex/graph.hpp"
#include "fanex/linalg.hpp"
#include "fanex/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fanex {

struct SpectralResult {
  double rho = 0.0;
  std::vector<double> vector;  // max entry 1
  double residual = 0.0;       // ‖A·x − ρx‖∞ for the returned x
  int iterations = 0;
  std::string method;          // "power" or "jacobi"
};

namespace detail {

inline std::vector<std::vector<int>> adjacency_lists(const Graph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.order()));
  for (auto [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

inline double eigen_residual(const std::vector<std::vector<int>>& adj, const std::vector<double>& x, double rho) {
  double worst = 0.0;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    double s = 0.0;
    for (int w : adj[v]) s += x[static_cast<std::size_t>(w)];
    worst = std::max(worst, std::abs(s - rho * x[v]));
  }
  return worst;
}

inline constexpr int kJacobiFallbackLimit = 256;

}  // namespace detail

/// Largest adjacency eigenvalue. Power iteration on A + Δ·I with a
/// Rayleigh-quotient estimate; cyclic Jacobi takes over for n <= 256 when the
/// residual does not reach tol within the iteration budget.
inline SpectralResult spectral_radius(const Graph& g, double tol = 1e-10) {
  const int n = g.order();
  if (n < 1) throw std::invalid_argument("spectral_radius of the empty graph");
  if (!(tol > 0)) throw std::invalid_argument("spectral_radius needs tol > 0");
  const auto adj = detail::adjacency_lists(g);
  const auto un = static_cast<std::size_t>(n);
  SpectralResult out;
  out.method = "power";
  if (g.edge_count() == 0) {
    out.vector.assign(un, 1.0);
    return out;
  }

  const double shift = g.max_degree();
  std::vector<double> x(un, 1.0);
  std::vector<double> ax(un);
  const int budget = 20000 + 50 * n;
  for (int it = 1; it <= budget; ++it) {
    double xx = 0.0;
    double xax = 0.0;
    for (std::size_t v = 0; v < un; ++v) {
      double s = 0.0;
      for (int w : adj[v]) s += x[static_cast<std::size_t>(w)];
      ax[v] = s;
      xx += x[v] * x[v];
      xax += x[v] * s;
    }
    const double mu = xax / xx;
    double res = 0.0;
    for (std::size_t v = 0; v < un; ++v) res = std::max(res, std::abs(ax[v] - mu * x[v]));
    out.iterations = it;
    out.rho = mu;
    if (res <= tol) {
      out.residual = res;
      out.vector = x;
      return out;
    }
    double top = 0.0;
    for (std::size_t v = 0; v < un; ++v) {
      x[v] = ax[v] + shift * x[v];
      top = std::max(top, x[v]);
    }
    for (auto& xv : x) xv /= top;
  }

  if (n <= detail::kJacobiFallbackLimit) {
    Matrix a(un, un);
    for (auto [u, v] : g.edges()) a(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) =
        a(static_cast<std::size_t>(v), static_cast<std::size_t>(u)) = 1.0;
    const auto eig = jacobi_eigen(std::move(a));
    out.method = "jacobi";
    out.rho = eig.values.back();
    double top = 0.0;
    for (std::size_t v = 0; v < un; ++v) top = std::max(top, std::abs(eig.vectors(v, un - 1)));
    for (std::size_t v = 0; v < un; ++v) x[v] = std::abs(eig.vectors(v, un - 1)) / top;
  }
  out.vector = x;
  out.residual = detail::eigen_residual(adj, x, out.rho);
  return out;
}

/// Perron root of a small nonnegative matrix; falls back to Jacobi on the
/// symmetrized matrix when the Collatz–Wielandt bracket does not close.
inline double matrix_spectral_radius(const Matrix& m, double tol = 1e-13) {
  const auto p = perron_root(m, tol);
  if (p.converged) return p.rho;
  return largest_eigenvalue_symmetrized(m);
}

inline double matrix_spectral_radius(const RationalMatrix& m, double tol = 1e-13) {
  return matrix_spectral_radius(m.to_double(), tol);
}

// ---------------------------------------------------------------------------
// Quotient matrices.

struct QuotientSpec {
  std::vector<VertexSet> partition;
  RationalMatrix exact;  // (i,j) = average number of block-j neighbors over block i
  Matrix matrix;
  bool equitable = false;
};

inline QuotientSpec quotient(const Graph& g, std::vector<VertexSet> partition) {
  const auto n = static_cast<std::size_t>(g.order());
  VertexSet seen(n);
  for (const auto& block : partition) {
    if (block.size() != n) throw std::invalid_argument("partition block universe does not match graph order");
    if (block.none()) throw std::invalid_argument("partition has an empty block");
    if (block.intersects(seen)) throw std::invalid_argument("partition blocks overlap");
    seen |= block;
  }
  if (seen.count() != n) throw std::invalid_argument("partition does not cover every vertex");

  const std::size_t s = partition.size();
  QuotientSpec q;
  q.exact = RationalMatrix(s, s);
  q.equitable = true;
  for (std::size_t i = 0; i < s; ++i) {
    const auto members = partition[i].members();
    for (std::size_t j = 0; j < s; ++j) {
      long long total = 0;
      int first = -1;
      for (std::size_t v : members) {
        const int d = g.degree_in(static_cast<int>(v), partition[j]);
        if (first < 0) first = d;
        else if (d != first) q.equitable = false;
        total += d;
      }
      q.exact(i, j) = make_rational(total, static_cast<long long>(members.size()));
    }
  }
  q.matrix = q.exact.to_double();
  q.partition = std::move(partition);
  return q;
}

// ---------------------------------------------------------------------------
// The t = 1 two-block matrix A_τ = [[k-1, n/2-τ], [n/2+τ, 0]].

inline RationalMatrix build_A_tau(int n, int k, const Rational& tau) {
  const Rational half = make_rational(n, 2);
  if (half - tau < 0 || half + tau < 0) throw std::invalid_argument("A_tau needs |tau| <= n/2");
  return RationalMatrix{{Rational(k - 1), half - tau}, {half + tau, Rational(0)}};
}

/// ½(k−1+√(n²+(k−1)²−4τ²)).
inline double rho_A_tau(int n, int k, const Rational& tau) {
  const Rational radicand = Rational(n) * n + Rational(k - 1) * (k - 1) - 4 * tau * tau;
  if (radicand < 0) throw std::invalid_argument("rho_A_tau: negative radicand");
  return 0.5 * ((k - 1) + std::sqrt(to_double(radicand)));
}

// ---------------------------------------------------------------------------
// Three-block matrices on (K_{t-1}, V1, V2) with |V1| = h + r, |V2| = h - r,
// h = (n-t+1)/2.

inline RationalMatrix build_B_r(int n, int t, int k, const Rational& r, int d1, int d2) {
  FanParams{t, k}.validate();
  if (t < 2) throw std::invalid_argument("B_r needs t >= 2 (use A_tau for t = 1)");
  const Rational h = make_rational(n - t + 1, 2);
  const Rational a = h + r;
  const Rational b = h - r;
  if (a < 0 || b < 0) throw std::invalid_argument("B_r needs (n-t+1)/2 ± r >= 0");
  return RationalMatrix{{Rational(t - 2), a, b}, {Rational(t - 1), Rational(d1), b}, {Rational(t - 1), a, Rational(d2)}};
}

/// build_B_r in floating point for sweeps. Entries are multiples of 1/2, so
/// for half-integer r this equals build_B_r(...).to_double() exactly.
inline Matrix build_B_r_numeric(int n, int t, int k, double r, int d1, int d2) {
  FanParams{t, k}.validate();
  if (t < 2) throw std::invalid_argument("B_r needs t >= 2 (use A_tau for t = 1)");
  const double h = 0.5 * (n - t + 1);
  if (h + r < 0 || h - r < 0) throw std::invalid_argument("B_r needs (n-t+1)/2 ± r >= 0");
  return Matrix{{t - 2.0, h + r, h - r}, {t - 1.0, double(d1), h - r}, {t - 1.0, h + r, double(d2)}};
}

inline RationalMatrix build_A_r(int n, int t, int k, const Rational& r) { return build_B_r(n, t, k, r, k - 1, 0); }

/// Blocks of size ceil((n-t+1)/2) (inner graph) and floor((n-t+1)/2).
inline RationalMatrix build_A_floorceil(int n, int t, int k) {
  FanParams{t, k}.validate();
  if (t < 2) throw std::invalid_argument("build_A_floorceil needs t >= 2");
  const Rational c(ceil_of(make_rational(n - t + 1, 2)));
  const Rational f(floor_of(make_rational(n - t + 1, 2)));
  return RationalMatrix{{Rational(t - 2), c, f}, {Rational(t - 1), Rational(k - 1), f}, {Rational(t - 1), c, Rational(0)}};
}

/// Which version of a closed-form polynomial to produce: as printed in the
/// source derivation, or with the constant terms re-derived from det(xI − M).
enum class Transcription { printed, corrected };

/// f_r(x) = det(xI − B_r).
inline Polynomial charpoly_Br(int n, int t, int k, const Rational& r, int d1, int d2) {
  FanParams{t, k}.validate();
  const Rational N(n), T(t), D1(d1), D2(d2);
  const Rational c2 = -(D1 + D2 + T - 2);
  const Rational c1 = -((T - 1) * (N - T + 1) - (D1 + D2) * (T - 2) + (N - T + 1) * (N - T + 1) / 4 - D1 * D2 - r * r);
  const Rational c0 = (D1 + D2) * (T - 1) * (N - T + 1) / 2 - r * (D1 - D2) * (T - 1) - D1 * D2 * (T - 2) -
                      T * (T - 1) * (T - 1) / 4 - N * T * (N - 2 * T + 2) / 4 + r * r * T;
  return monic_cubic(c2, c1, c0);
}

/// h(x) = det(xI − build_A_floorceil).
inline Polynomial charpoly_A_floorceil(int n, int t, int k) {
  const Rational T(t), K(k);
  const Rational c(ceil_of(make_rational(n - t + 1, 2)));
  const Rational f(floor_of(make_rational(n - t + 1, 2)));
  const Rational c2 = -(K + T - 3);
  const Rational c1 = -(Rational(n - t + 1) * (T - 1) + f * c - (K - 1) * (T - 2));
  const Rational c0 = -T * f * c + (K - 1) * (T - 1) * f;
  return monic_cubic(c2, c1, c0);
}

struct PolynomialPair {
  Polynomial first;
  Polynomial second;
};

/// Characteristic polynomials of A_{-1/2} (first) and A_{1/2} (second).
inline PolynomialPair charpoly_case22(int n, int t, int k, Transcription form = Transcription::printed) {
  const Rational N(n), T(t), K(k);
  const Rational c2 = -(K + T - 3);
  const Rational c1 = -((T - 1) * (N - T + 1) - (K - 1) * (T - 2) + (N - T) * (N - T) / 4 + (N - T) / 2);
  // Printed: ... + 1; det(xI − A_{-1/2}) has ... − 1 in the same factor.
  const Rational tail = form == Transcription::printed ? Rational(1) : Rational(-1);
  const Rational f0 = -(N - T + 2) / 4 * (T * N - (T - 1) * (2 * K + T - 1) + tail);
  const Rational h0 = -(N - T) / 4 * (T * (N + 2) - (T - 1) * (2 * K + T - 1) - 1);
  return {monic_cubic(c2, c1, f0), monic_cubic(c2, c1, h0)};
}

/// Characteristic polynomials of A_1 (first, ψ) and A_0 (second, σ).
inline PolynomialPair charpoly_case23(int n, int t, int k, Transcription form = Transcription::printed) {
  const Rational N(n), T(t), K(k);
  const Rational c2 = -(K + T - 3);
  const Rational base = (N + T - 1) * (N + T - 1) - 4 * K * (T - 2) - (2 * T - 3) * (2 * T - 3);
  const Rational psi1 = -(base - 7) / 4;
  const Rational sig1 = -(base - 3) / 4;
  const Rational psi0 = -(N - T - 1) / 4 * (T * N - (T - 1) * (2 * K + T - 2) + 2 * T);
  // Printed: leading factor (n-t-1)/4; det(xI − A_0) has (n-t+1)/4.
  const Rational sig_lead = form == Transcription::printed ? Rational((N - T - 1) / 4) : Rational((N - T + 1) / 4);
  const Rational sig0 = -sig_lead * (T * N - (T - 1) * (2 * K + T - 2));
  return {monic_cubic(c2, psi1, psi0), monic_cubic(c2, sig1, sig0)};
}

struct PerronComponents {
  double rho = 0.0;
  double y1 = 0.0;  // common entry on the inner block
  double y2 = 0.0;  // common entry on the independent block
};

/// Perron vector (1, y1, y2) of build_A_floorceil from its closed forms
/// y1 = (ρ+1)/(ρ+⌈h⌉−k+1), y2 = (ρ+1)/(ρ+⌊h⌋).
inline PerronComponents perron_components_A(int n, int t, int k) {
  if (t < 2) throw std::invalid_argument("perron_components_A needs t >= 2");
  const double rho = matrix_spectral_radius(build_A_floorceil(n, t, k));
  const double c = to_double(Rational(ceil_of(make_rational(n - t + 1, 2))));
  const double f = to_double(Rational(floor_of(make_rational(n - t + 1, 2))));
  return {rho, (rho + 1) / (rho + c - k + 1), (rho + 1) / (rho + f)};
}

// ---------------------------------------------------------------------------
// Upper bound for joins: ρ(G_1 ∨ ... ∨ G_s) <= ρ(D), D_ii = Δ(G_i), D_ij = |G_j|.

struct JoinBlock {
  int order = 0;
  int max_degree = 0;
};

struct BoundingMatrix {
  Matrix matrix;
  double rho = 0.0;
};

inline BoundingMatrix bounding_matrix_D(const std::vector<JoinBlock>& blocks) {
  if (blocks.size() < 2) throw std::invalid_argument("bounding matrix needs at least two blocks");
  const std::size_t s = blocks.size();
  Matrix d(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    if (blocks[i].order < 1) throw std::invalid_argument("join block of order < 1");
    if (blocks[i].max_degree < 0 || blocks[i].max_degree >= blocks[i].order)
      throw std::invalid_argument("join block max degree out of range");
    for (std::size_t j = 0; j < s; ++j) d(i, j) = i == j ? blocks[i].max_degree : blocks[j].order;
  }
  return {d, matrix_spectral_radius(d)};
}

// ---------------------------------------------------------------------------
// Partitions of build_extremal's vertex set (blocks K_{t-1}, V1, V2 in order).

/// Coarse partition (K_{t-1}, V1, V2), empty blocks omitted. Equitable exactly
/// when the inner graph is regular.
inline std::vector<VertexSet> extremal_partition(const FamilySpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n);
  const auto a = static_cast<std::size_t>(spec.t - 1);
  const auto b = a + static_cast<std::size_t>(spec.n1);
  std::vector<VertexSet> out;
  for (auto [lo, hi] : {std::pair{std::size_t{0}, a}, std::pair{a, b}, std::pair{b, n}})
    if (hi > lo) out.push_back(vertex_range(n, lo, hi));
  return out;
}

/// K_{t-1}, each V1 vertex alone, V2: equitable for every inner graph, since
/// K_{t-1} and V2 see all of V1 and each other uniformly.
inline std::vector<VertexSet> extremal_fine_partition(const FamilySpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n);
  const auto a = static_cast<std::size_t>(spec.t - 1);
  const auto b = a + static_cast<std::size_t>(spec.n1);
  std::vector<VertexSet> out;
  if (a > 0) out.push_back(vertex_range(n, 0, a));
  for (std::size_t v = a; v < b; ++v) out.push_back(vertex_range(n, v, v + 1));
  if (n > b) out.push_back(vertex_range(n, b, n));
  return out;
}

/// K_{t-1}, the regular inner components merged, singletons for the inner
/// component holding the deficient vertex, V2. At most 2k+2 blocks.
inline std::vector<VertexSet> extremal_compact_partition(const FamilySpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n);
  const auto a = static_cast<std::size_t>(spec.t - 1);
  const auto b = a + static_cast<std::size_t>(spec.n1);
  const auto inner = build_inner(spec.n1, spec.k);
  std::vector<VertexSet> out;
  if (a > 0) out.push_back(vertex_range(n, 0, a));
  VertexSet regular(n);
  std::vector<VertexSet> singles;
  std::size_t lo = a;
  for (int size : inner.component_sizes) {
    const std::size_t hi = lo + static_cast<std::size_t>(size);
    const bool deficient = inner.deficient_vertex && static_cast<std::size_t>(*inner.deficient_vertex) + a >= lo &&
                           static_cast<std::size_t>(*inner.deficient_vertex) + a < hi;
    for (std::size_t v = lo; v < hi; ++v) {
      if (deficient) singles.push_back(vertex_range(n, v, v + 1));
      else regular.set(v);
    }
    lo = hi;
  }
  if (regular.count() > 0) out.push_back(regular);
  for (auto& s : singles) out.push_back(std::move(s));
  if (n > b) out.push_back(vertex_range(n, b, n));
  return out;
}

/// ρ(build_extremal(spec)) through an equitable quotient, without forming
/// the graph's full eigenproblem.
inline double extremal_rho(const FamilySpec& spec) {
  const Graph g = build_extremal(spec);
  auto q = quotient(g, spec.inner_regular() ? extremal_partition(spec) : extremal_compact_partition(spec));
  if (!q.equitable) throw std::logic_error("extremal partition unexpectedly not equitable");
  return matrix_spectral_radius(q.matrix);
}

}  // namespace fanex

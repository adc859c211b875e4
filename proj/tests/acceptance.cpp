// Acceptance gate: one PASS/FAIL line per criterion, details indented below.
// FANEX_ACCEPTANCE_LONG=1 adds the optional n = 9..10 census runs.

#include "fanex/fanex.hpp"
#include "support/naive.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

using namespace fanex;

namespace {

struct Verdict {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void fail(const std::string& why) {
    pass = false;
    if (details.size() < 25) details.push_back(why);
  }
  void note(const std::string& line) { details.push_back(line); }
};

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  os << std::setprecision(12);
  (os << ... << parts);
  return os.str();
}

bool long_run() {
  const char* env = std::getenv("FANEX_ACCEPTANCE_LONG");
  return env && std::string(env) == "1";
}

int failures = 0;

void criterion(const std::string& id, const std::string& title, double budget_seconds,
               const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.fail(cat("exception: ", e.what()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) v.fail(cat("runtime ", secs, " s exceeds the ", budget_seconds, " s budget"));
  if (!v.pass) ++failures;
  std::cout << (v.pass ? "PASS " : "FAIL ") << id << ' ' << title << ": " << v.summary << " ["
            << std::fixed << std::setprecision(2) << secs << " s / " << budget_seconds << " s]"
            << std::defaultfloat << '\n';
  for (const auto& d : v.details) std::cout << "    " << d << '\n';
  std::cout.flush();
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

Rational random_rational(std::mt19937_64& rng) {
  return make_rational(std::uniform_int_distribution<std::int64_t>(-1000, 1000)(rng),
                       std::uniform_int_distribution<std::int64_t>(1, 50)(rng));
}

// Model matrix of the construction: A_r (t >= 2) or A_tau (t = 1).
double model_rho(const FamilySpec& spec) {
  if (spec.t >= 2) {
    const Rational r = Rational(spec.n1) - make_rational(spec.n - spec.t + 1, 2);
    return matrix_spectral_radius(build_A_r(spec.n, spec.t, spec.k, r));
  }
  return rho_A_tau(spec.n, spec.k, Rational(spec.n1) - make_rational(spec.n, 2));
}

Verdict construction_formula() {
  Verdict v;
  int tuples = 0;
  for (int k = 3; k <= 8; ++k)
    for (int t = 1; t <= 4; ++t)
      for (int n = t * (2 * k + 1) + 5; n <= 60; ++n) {
        ++tuples;
        const auto opt = optimal_n1_ex(n, t, k);
        const Graph g = build_extremal(n, t, k, opt.n1);
        if (g.edge_count() != opt.value)
          v.fail(cat("n=", n, " t=", t, " k=", k, ": e=", g.edge_count(), " formula=", opt.value));
        const auto packing = contains_disjoint_fans(g, {t, k});
        if (packing.status != PackingStatus::absent)
          v.fail(cat("n=", n, " t=", t, " k=", k, ": fan search ", to_string(packing.status)));
      }
  v.summary = cat(tuples, " tuples, exact edge counts, all certified free");
  if (!v.pass) v.summary = cat(tuples, " tuples, ", v.details.size(), "+ problems");
  return v;
}

Verdict difference_identity() {
  Verdict v;
  int tuples = 0;
  for (int n = 50; n <= 300; ++n)
    for (int t = 2; t <= 6; ++t)
      for (int k = 3; k <= 8; ++k) {
        ++tuples;
        const auto diff = optimal_n1_ex(n, t, k).value - optimal_n1_ex(n - 1, t - 1, k).value;
        if (diff != n - 1) v.fail(cat("n=", n, " t=", t, " k=", k, ": difference ", diff));
      }
  v.summary = cat(tuples, " tuples, exact integer equality");
  return v;
}

Verdict quotient_exactness() {
  Verdict v;
  int via_quotient = 0, via_direct = 0;
  double worst_quotient = 0, worst_direct = 0;
  for (int t = 1; t <= 4; ++t)
    for (int k = 3; k <= 8; ++k)
      for (int n = 2 * k + t; n <= 200; ++n) {
        std::vector<int> choices = optimal_n1_spex(n, t, k);
        choices.push_back(optimal_n1_ex(n, t, k).n1);
        std::sort(choices.begin(), choices.end());
        choices.erase(std::unique(choices.begin(), choices.end()), choices.end());
        for (int n1 : choices) {
          const FamilySpec spec{n, t, k, n1};
          if (n1 < k || n1 > n - t + 1 || !spec.inner_regular()) continue;
          const Graph g = build_extremal(spec);
          const double model = model_rho(spec);
          const auto q = quotient(g, extremal_partition(spec));
          if (!q.equitable) v.fail(cat("n=", n, " t=", t, " k=", k, " n1=", n1, ": partition not equitable"));
          const double dq = std::abs(matrix_spectral_radius(q.matrix) - model);
          worst_quotient = std::max(worst_quotient, dq);
          ++via_quotient;
          if (dq > 1e-9) v.fail(cat("quotient n=", n, " t=", t, " k=", k, " n1=", n1, ": |diff|=", dq));
          if (n <= 120) {
            const double dd = std::abs(spectral_radius(g, 1e-11).rho - model);
            worst_direct = std::max(worst_direct, dd);
            ++via_direct;
            if (dd > 1e-9) v.fail(cat("direct n=", n, " t=", t, " k=", k, " n1=", n1, ": |diff|=", dd));
          }
        }
      }
  v.summary = cat(via_quotient, " graphs via quotient (max |diff| ", worst_quotient, "), ", via_direct,
                  " via direct eigensolver (max |diff| ", worst_direct, "), tol 1e-9");
  return v;
}

Verdict two_block_closed_form() {
  Verdict v;
  const Rational half = make_rational(1, 2);
  const std::vector<Rational> taus{Rational(0), half, -half, Rational(1), Rational(-1)};
  double worst = 0, tightest = 1e300;
  int tuples = 0;
  for (int n = 10; n <= 200; ++n)
    for (int k = 3; k <= 8; ++k) {
      ++tuples;
      for (const auto& tau : taus) {
        const double closed = rho_A_tau(n, k, tau);
        const double solver = largest_eigenvalue_symmetrized(build_A_tau(n, k, tau).to_double());
        const double d = std::abs(closed - solver);
        worst = std::max(worst, d);
        if (d > 1e-12) v.fail(cat("n=", n, " k=", k, " tau=", to_fraction_string(tau), ": |diff|=", d));
      }
      const double r0 = rho_A_tau(n, k, 0), rh = rho_A_tau(n, k, half), r1 = rho_A_tau(n, k, 1);
      tightest = std::min({tightest, r0 - rh, rh - r1});
      if (!(r0 > rh + 1e-7 && rh > r1 + 1e-7)) v.fail(cat("ordering fails at n=", n, " k=", k));
    }
  v.summary = cat(tuples, " (n,k) pairs x 5 tau, max |closed - solver| ", worst, " (tol 1e-12), smallest ordering gap ",
                  tightest, " (margin 1e-7)");
  return v;
}

Verdict polynomial_regression() {
  Verdict v;
  std::mt19937_64 rng(2024);
  const Rational half = make_rational(1, 2);
  const std::vector<Rational> rs{Rational(0), half, -half, Rational(1), Rational(-1)};
  std::map<std::string, int> mismatched_tuples;
  std::map<std::string, Rational> constant_delta_example;
  int tuples = 0;
  double worst_residual_ratio = 0;
  for (int n = 20; n <= 80; n += 6)
    for (int t = 2; t <= 5; ++t)
      for (int k = 3; k <= 8; ++k) {
        ++tuples;
        const std::vector<std::pair<int, int>> degree_pairs{{k - 1, 0}, {k - 2, 1}, {2, 2}};
        std::vector<std::pair<std::string, std::pair<Polynomial, RationalMatrix>>> checks;
        for (const auto& r : rs)
          for (auto [d1, d2] : degree_pairs)
            checks.push_back({"f_r", {charpoly_Br(n, t, k, r, d1, d2), build_B_r(n, t, k, r, d1, d2)}});
        checks.push_back({"floor/ceil A", {charpoly_A_floorceil(n, t, k), build_A_floorceil(n, t, k)}});
        const auto case22 = charpoly_case22(n, t, k);
        const auto case23 = charpoly_case23(n, t, k);
        checks.push_back({"f (A_-1/2)", {case22.first, build_A_r(n, t, k, -half)}});
        checks.push_back({"h (A_1/2)", {case22.second, build_A_r(n, t, k, half)}});
        checks.push_back({"psi (A_1)", {case23.first, build_A_r(n, t, k, 1)}});
        checks.push_back({"sigma (A_0)", {case23.second, build_A_r(n, t, k, 0)}});

        std::map<std::string, bool> bad;
        for (const auto& [name, pm] : checks) {
          const auto& [poly, matrix] = pm;
          for (int i = 0; i < 20; ++i) {
            const Rational x = random_rational(rng);
            if (poly(x) != characteristic_determinant(matrix, x)) {
              bad[name] = true;
              if (!constant_delta_example.count(name))
                constant_delta_example[name] = poly(Rational(0)) - characteristic_determinant(matrix, Rational(0));
              break;
            }
          }
          if (name == "f_r") {
            const double rho = matrix_spectral_radius(matrix);
            const double ratio = std::abs(poly(rho)) / (1e-6 * n * n * n);
            worst_residual_ratio = std::max(worst_residual_ratio, ratio);
            if (ratio > 1) v.fail(cat("root residual too large at n=", n, " t=", t, " k=", k));
          }
        }
        for (const auto& [name, flag] : bad)
          if (flag) ++mismatched_tuples[name];
      }
  for (const auto& [name, count] : mismatched_tuples) {
    v.pass = false;
    v.note(cat(name, ": printed form differs from det(xI - M) on ", count, " of ", tuples,
               " tuples; constant-term gap ", to_fraction_string(constant_delta_example[name]), " at the first one"));
  }
  if (!mismatched_tuples.empty())
    v.note("f gap equals -(n-t+2)/2 and sigma gap equals (tn-(t-1)(2k+t-2))/2; corrected forms agree exactly");
  v.summary = cat(tuples, " tuples x 20 rational points; ", mismatched_tuples.size(),
                  " printed polynomial(s) disagree; max root residual / (1e-6 n^3) = ", worst_residual_ratio);
  return v;
}

Verdict ordering_chains() {
  Verdict v;
  const std::vector<std::pair<double, std::string>> chain{{0.0, "0"}, {0.5, "1/2"}, {-0.5, "-1/2"}, {1.0, "1"}, {-1.0, "-1"}};
  const std::vector<std::pair<double, std::string>> beyond{{1.5, "3/2"}, {-1.5, "-3/2"}, {2.0, "2"}, {-2.0, "-2"}};
  struct Tally {
    int checked = 0;
    int violated = 0;
    int last_bad_n = 0;
  };
  Tally equal_d, unequal_d, a_chain;
  std::map<std::string, int> by_link;
  std::map<int, int> first_clean_n;  // t -> smallest n with no violation from there on
  for (int n = 30; n <= 200; ++n)
    for (int t = 2; t <= 5; ++t)
      for (int k = 3; k <= 8; ++k)
        for (int d1 = 0; d1 <= k - 1; ++d1)
          for (int d2 = 0; d2 <= d1; ++d2) {
            std::vector<double> rho;
            for (const auto& [r, name] : chain) rho.push_back(matrix_spectral_radius(build_B_r_numeric(n, t, k, r, d1, d2)));
            bool ok = true;
            for (std::size_t i = 0; i + 1 < rho.size(); ++i)
              if (!(rho[i] > rho[i + 1] + 1e-7)) {
                ok = false;
                ++by_link[cat("rho(B_", chain[i].second, ") > rho(B_", chain[i + 1].second, ")", d1 == d2 ? " [d1=d2]" : "")];
              }
            for (const auto& [r, name] : beyond)
              if (!(rho.back() > matrix_spectral_radius(build_B_r_numeric(n, t, k, r, d1, d2)) + 1e-7)) {
                ok = false;
                ++by_link[cat("rho(B_-1) > rho(B_", name, ")")];
              }
            Tally& bucket = d1 == d2 ? equal_d : unequal_d;
            ++bucket.checked;
            if (!ok) {
              ++bucket.violated;
              bucket.last_bad_n = std::max(bucket.last_bad_n, n);
            }
            if (d1 == k - 1 && d2 == 0) {
              ++a_chain.checked;
              if (!ok) {
                ++a_chain.violated;
                a_chain.last_bad_n = std::max(a_chain.last_bad_n, n);
                first_clean_n[t] = std::max(first_clean_n[t], n + 1);
              }
            }
          }
  auto line = [](const std::string& what, const Tally& tally) {
    return cat(what, ": ", tally.violated, " of ", tally.checked, " tuples violate",
               tally.violated ? cat(" (largest failing n = ", tally.last_bad_n, ")") : std::string());
  };
  v.note(line("d1 = d2", equal_d));
  v.note(line("d1 > d2", unequal_d));
  v.note(line("A_r chain (d1 = k-1, d2 = 0)", a_chain));
  for (int t = 2; t <= 5; ++t)
    v.note(first_clean_n.count(t) ? cat("A_r chain holds for every n >= ", first_clean_n[t], " at t = ", t)
                                  : cat("A_r chain holds on the whole grid at t = ", t));
  for (const auto& [link, count] : by_link) v.note(cat("  failing link ", link, ": ", count));
  if (equal_d.violated) v.note("for d1 = d2 the outer blocks swap under r -> -r, so rho(B_r) = rho(B_-r) exactly");
  v.pass = equal_d.violated == 0 && unequal_d.violated == 0;
  v.summary = cat(equal_d.checked + unequal_d.checked, " tuples n in [30,200], t in [2,5], k in [3,8], d1 >= d2; ",
                  equal_d.violated + unequal_d.violated, " violate with margin 1e-7");
  return v;
}

Verdict spectral_optimality() {
  Verdict v;
  int comparisons = 0, bound_checks = 0;
  double worst_gap = 0;
  for (int n = 40; n <= 200; ++n)
    for (int t = 1; t <= 4; ++t)
      for (int k = 3; k <= 6; ++k) {
        const int lo = k, hi = n - t + 1;
        std::map<int, double> rho;
        auto rho_at = [&](int n1) {
          auto it = rho.find(n1);
          if (it != rho.end()) return it->second;
          const FamilySpec spec{n, t, k, n1};
          const double value = extremal_rho(spec);
          if (!spec.inner_regular()) {
            std::vector<JoinBlock> blocks;
            if (t >= 2) blocks.push_back({t - 1, t - 2});
            blocks.push_back({n1, k - 1});
            if (spec.n2() > 0) blocks.push_back({spec.n2(), 0});
            ++bound_checks;
            if (blocks.size() >= 2 && value > bounding_matrix_D(blocks).rho + 1e-9)
              v.fail(cat("join bound violated at n=", n, " t=", t, " k=", k, " n1=", n1));
          }
          return rho[n1] = value;
        };
        for (int best : optimal_n1_spex(n, t, k)) {
          if (best < lo || best > hi) {
            v.fail(cat("optimal n1 ", best, " infeasible at n=", n, " t=", t, " k=", k));
            continue;
          }
          for (int other = std::max(lo, best - 3); other <= std::min(hi, best + 3); ++other) {
            if (other == best) continue;
            ++comparisons;
            const double gap = rho_at(other) - rho_at(best);
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-9)
              v.fail(cat("n=", n, " t=", t, " k=", k, ": n1=", other, " beats n1=", best, " by ", gap));
          }
        }
      }
  v.summary = cat(comparisons, " window comparisons, largest rho(other) - rho(optimal) = ", worst_gap,
                  " (tol 1e-9); ", bound_checks, " join-bound checks");
  return v;
}

Verdict fina_bounds_exact() {
  Verdict v;
  int tuples = 0;
  for (int n = 60; n <= 200; ++n)
    for (int t = 1; t <= 4; ++t)
      for (int k = 3; k <= 8; ++k) {
        ++tuples;
        const auto b = fina_bounds(n, t, k);
        const Rational f(optimal_n1_ex(n, t, k).value);
        if (!(b.lower < f && f < b.upper)) v.fail(cat("n=", n, " t=", t, " k=", k));
      }
  v.summary = cat(tuples, " tuples, lower < f < upper in exact rationals");
  return v;
}

Verdict oracle_suite() {
  Verdict v;
  const std::uint64_t known[] = {1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668};
  std::vector<std::uint64_t> generated;
  for (int n = 0; n <= 9; ++n) {
    generated.push_back(count_graphs(n));
    if (generated.back() != known[n]) v.fail(cat("enumeration n=", n, ": ", generated.back(), " != ", known[n]));
  }
  // Independent route: labeled graphs with brute canonical codes for n <= 7,
  // then hash-set dedup of one-vertex extensions for n = 8, 9.
  std::vector<std::uint64_t> derived(10, 0);
  std::vector<Graph> layer;
  for (int n = 1; n <= 7; ++n) {
    const auto codes = naive::class_codes(n);
    derived[static_cast<std::size_t>(n)] = codes.size();
    if (n == 7) {
      layer.clear();
      for (auto c : codes) layer.push_back(naive::from_brute_code(7, c));
    }
  }
  for (int n = 8; n <= 9; ++n) {
    std::unordered_set<CanonCode, detail::CanonHash> seen;
    std::vector<Graph> next;
    for (const auto& g : layer)
      for (std::uint32_t s = 0; s < (1u << (n - 1)); ++s) {
        const Graph child = naive::add_vertex(g, s);
        if (seen.insert(canonical_code(child)).second) next.push_back(child);
      }
    derived[static_cast<std::size_t>(n)] = seen.size();
    layer = std::move(next);
  }
  for (int n = 1; n <= 9; ++n)
    if (derived[static_cast<std::size_t>(n)] != known[n])
      v.fail(cat("independent count n=", n, ": ", derived[static_cast<std::size_t>(n)]));
  v.note(cat("class counts n=4,5,7: ", generated[4], ", ", generated[5], ", ", generated[7],
             " (generator) / ", derived[4], ", ", derived[5], ", ", derived[7], " (independent)"));

  // Census runs.
  for (int n = 7; n <= 8; ++n) {
    const auto c = brute_ex(n, {1, 3});
    const std::int64_t construction = detail::construction_lower_bound(n, {1, 3});
    v.note(cat("brute_ex(", n, ") = ", c.max_edges, ", construction ", construction, ", edge formula ",
               optimal_n1_ex(n, 1, 3).value, ", witnesses ", c.witnesses.size(), ", ", fixed(c.wall_ms, 1), " ms"));
    if (c.max_edges < construction) v.fail(cat("brute_ex(", n, ") below the construction"));
    for (const auto& w : c.witnesses)
      if (naive::contains_fan_packing(from_graph6(w), 1, 3)) v.fail(cat("witness ", w, " contains a fan"));
  }

  // Fast and naive fan detection on every class of order 7 and 8.
  std::uint64_t compared = 0, disagreements = 0;
  for (int n = 7; n <= 8; ++n)
    enumerate_graphs(n, [&](const Graph& g) {
      ++compared;
      const auto fast = contains_disjoint_fans(g, {1, 3});
      const bool slow = naive::contains_fan_packing(g, 1, 3);
      if (fast.status == PackingStatus::budget_exhausted || fast.found() != slow ||
          (fast.witness && !verify_witness(g, *fast.witness, 3)))
        ++disagreements;
    });
  if (disagreements) v.fail(cat(disagreements, " fan-detection disagreements"));
  v.note(cat("fan detection compared on ", compared, " classes (n = 7, 8): ", disagreements, " disagreements"));

  if (long_run()) {
    for (int n = 9; n <= 10; ++n) {
      const auto c = brute_ex(n, {1, 3});
      v.note(cat("[long] brute_ex(", n, ") = ", c.max_edges, ", construction ",
                 detail::construction_lower_bound(n, {1, 3}), ", ", fixed(c.wall_ms / 1000, 1), " s"));
      if (c.max_edges < detail::construction_lower_bound(n, {1, 3})) v.fail(cat("brute_ex(", n, ") below construction"));
    }
  }
  v.summary = cat("counts n<=9 match on both routes, census n=7,8 complete, ", compared, " classes cross-checked");
  if (!v.pass) v.summary = "see details";
  return v;
}

Verdict small_n_report() {
  Verdict v;
  v.note("n  ex(brute)  f(formula)  spex(brute)  rho(best construction)");
  const int ex_max = long_run() ? 10 : 9;
  const int spex_max = long_run() ? 9 : 8;
  for (int n = 7; n <= ex_max; ++n) {
    const auto ex = brute_ex(n, {1, 3});
    std::string spex_text = "-", construction_text = "-";
    if (n <= spex_max) {
      spex_text = fixed(brute_spex(n, {1, 3}).max_rho, 6);
      double best = 0;
      for (int n1 = 3; n1 <= n; ++n1) best = std::max(best, spectral_radius(build_extremal(n, 1, 3, n1)).rho);
      construction_text = fixed(best, 6);
    }
    std::ostringstream row;
    row << std::left << std::setw(3) << n << std::setw(11) << ex.max_edges << std::setw(12)
        << optimal_n1_ex(n, 1, 3).value << std::setw(13) << spex_text << construction_text;
    v.note(row.str());
  }
  v.summary = "small-n comparison tabulated (t=1, k=3), no assertion";
  return v;
}

}  // namespace

int main() {
  criterion("C1", "construction/formula agreement", 120, construction_formula);
  criterion("C2", "difference identity f(n,t) - f(n-1,t-1) = n-1", 1, difference_identity);
  criterion("C3", "quotient exactness", 120, quotient_exactness);
  criterion("C4", "closed form of rho(A_tau) and its ordering", 1, two_block_closed_form);
  criterion("C5", "characteristic polynomial regression", 10, polynomial_regression);
  criterion("C6", "ordering chains of rho(B_r)", 5, ordering_chains);
  criterion("C7", "spectral n1 optimality", 60, spectral_optimality);
  criterion("C8", "rational bounds around the optimal edge count", 1, fina_bounds_exact);
  criterion("C9", "oracle suite", 600, oracle_suite);
  criterion("C10", "small-n report", 600, small_n_report);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " of 10 criteria failed\n";
  return failures ? 1 : 0;
}

#include "fanex/fanex.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace fanex;

namespace {

enum Exit { kOk = 0, kPropertyFails = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Output {
  bool json = false;
  bool csv = false;
  double tol = 1e-10;
};

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    Range r{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    if (r.lo > r.hi) throw UsageError("empty range '" + text + "'");
    return r;
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const UsageError*>(&e)) throw;
    throw UsageError("malformed range '" + text + "' (expected a or a:b)");
  }
}

std::string fmt(double x, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

void print_human(const Json& j) {
  for (const auto& [key, value] : j.items()) {
    std::cout << key << '=';
    if (value.is_string()) std::cout << value.get<std::string>();
    else std::cout << value.dump();
    std::cout << '\n';
  }
}

void emit(const Output& out, const Json& j) {
  if (out.json) std::cout << j.dump(2) << '\n';
  else print_human(j);
}

// Exact ρ-matrix for the construction: A_r (t >= 2) or A_tau (t = 1).
Json model_matrix_report(const FamilySpec& spec) {
  Json j;
  if (spec.t >= 2) {
    const Rational r = Rational(spec.n1) - make_rational(spec.n - spec.t + 1, 2);
    const auto a = build_A_r(spec.n, spec.t, spec.k, r);
    j["r"] = to_fraction_string(r);
    j["rho_A_r"] = matrix_spectral_radius(a);
  } else {
    const Rational tau = Rational(spec.n1) - make_rational(spec.n, 2);
    j["tau"] = to_fraction_string(tau);
    j["rho_A_tau"] = rho_A_tau(spec.n, spec.k, tau);
  }
  return j;
}

int cmd_construct(const Output& out, int n, FanParams params, std::optional<int> n1_opt, bool spectral) {
  params.validate();
  const int t = params.t, k = params.k;
  if (n < t * params.fan_order())
    throw UsageError("degenerate size: n = " + std::to_string(n) + " < t(2k+1) = " +
                     std::to_string(t * params.fan_order()) + ", the forbidden graph does not fit");
  const int n1 = n1_opt ? *n1_opt : (spectral ? optimal_n1_spex(n, t, k).front() : optimal_n1_ex(n, t, k).n1);
  if (n1 < k || n1 > n - t + 1)
    throw UsageError("n1 window infeasible: need " + std::to_string(k) + " <= n1 <= " + std::to_string(n - t + 1));
  const FamilySpec spec{n, t, k, n1};
  const Graph g = build_extremal(spec);

  Json j;
  j["graph6"] = to_graph6(g);
  j["n"] = n;
  j["t"] = t;
  j["k"] = k;
  j["n1"] = n1;
  j["n2"] = spec.n2();
  j["edges"] = g.edge_count();
  j["edge_formula"] = edge_formula(n1, spec.n2(), t, k);
  j["rho"] = spectral_radius(g, out.tol).rho;
  j.update(model_matrix_report(spec));
  j["inner_regular"] = spec.inner_regular();
  if (n < 2 * t * params.fan_order()) j["note"] = "formula regime unverified";

  int code = kOk;
  if (n <= 40) {
    const auto r = contains_disjoint_fans(g, params);
    j["certified"] = to_string(r.status);
    if (r.status == PackingStatus::found) code = kPropertyFails;
    if (r.status == PackingStatus::budget_exhausted) code = kBudget;
  } else {
    j["certified"] = "skipped";
  }
  emit(out, j);
  return code;
}

int cmd_exnum(const Output& out, int n, FanParams params) {
  const auto opt = optimal_n1_ex(n, params.t, params.k);
  emit(out, Json{{"n", n}, {"t", params.t}, {"k", params.k}, {"n1", opt.n1}, {"f", opt.value}});
  return kOk;
}

int cmd_spexnum(const Output& out, int n, FanParams params) {
  const auto options = optimal_n1_spex(n, params.t, params.k);
  Json rhos = Json::array();
  for (int n1 : options) {
    if (n1 < params.k || n1 > n - params.t + 1) throw UsageError("n too small for the spectral construction");
    rhos.push_back(extremal_rho({n, params.t, params.k, n1}));
  }
  Json j{{"n", n}, {"t", params.t}, {"k", params.k}, {"n1", options}, {"rho", rhos}};
  if (params.t >= 2) j["r"] = to_fraction_string(r_of_spec(n, params.t, params.k));
  emit(out, j);
  return kOk;
}

int cmd_table(const Output& out, const Range& ns, const Range& ts, const Range& ks) {
  Json rows = Json::array();
  const bool csv = !out.json;
  if (csv) std::cout << "n,t,k,n1_ex,f,n1_spex,lower,upper\n";
  for (int n = ns.lo; n <= ns.hi; ++n)
    for (int t = ts.lo; t <= ts.hi; ++t)
      for (int k = ks.lo; k <= ks.hi; ++k) {
        if (n - t + 1 < k) continue;
        const auto ex = optimal_n1_ex(n, t, k);
        const auto spex = optimal_n1_spex(n, t, k);
        const auto bounds = fina_bounds(n, t, k);
        std::string spex_text;
        for (std::size_t i = 0; i < spex.size(); ++i) spex_text += (i ? "|" : "") + std::to_string(spex[i]);
        if (csv) {
          std::cout << n << ',' << t << ',' << k << ',' << ex.n1 << ',' << ex.value << ',' << spex_text << ','
                    << to_fraction_string(bounds.lower) << ',' << to_fraction_string(bounds.upper) << '\n';
        } else {
          rows.push_back({{"n", n}, {"t", t}, {"k", k}, {"n1_ex", ex.n1}, {"f", ex.value}, {"n1_spex", spex},
                          {"lower", to_fraction_string(bounds.lower)}, {"upper", to_fraction_string(bounds.upper)}});
        }
      }
  if (!csv) std::cout << rows.dump(2) << '\n';
  return kOk;
}

std::vector<std::string> read_graph_inputs(const std::string& in) {
  std::vector<std::string> lines;
  auto collect = [&](std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) lines.push_back(line);
    }
  };
  if (in == "-") {
    collect(std::cin);
  } else if (std::filesystem::is_regular_file(in)) {
    std::ifstream file(in);
    collect(file);
  } else {
    lines.push_back(in);  // literal graph6 text
  }
  if (lines.empty()) throw UsageError("no graphs in input");
  return lines;
}

int cmd_check(const Output& out, const std::string& in, FanParams params, std::uint64_t budget) {
  params.validate();
  int code = kOk;
  Json results = Json::array();
  for (const auto& text : read_graph_inputs(in)) {
    Graph g;
    try {
      g = from_graph6(text);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const auto r = contains_disjoint_fans(g, params, budget);
    Json j{{"graph6", text}, {"n", g.order()}, {"edges", g.edge_count()}, {"status", to_string(r.status)}};
    if (r.witness) j["witness"] = witness_to_json(*r.witness);
    if (r.status == PackingStatus::found) code = std::max<int>(code, kPropertyFails);
    if (r.status == PackingStatus::budget_exhausted) code = kBudget;
    if (!out.json) {
      const char* verdict = r.status == PackingStatus::found    ? "contains fan"
                            : r.status == PackingStatus::absent ? "fan-free"
                                                                : "undetermined (budget exhausted)";
      std::cout << text << ": " << verdict << '\n';
    }
    results.push_back(std::move(j));
  }
  if (out.json) std::cout << (results.size() == 1 ? results[0] : results).dump(2) << '\n';
  return code;
}

int cmd_oracle(const Output& out, const std::string& kind, int n, FanParams params, int jobs) {
  if (jobs < 1) throw UsageError("--jobs must be >= 1");
  CensusResult c;
  if (kind == "ex") c = brute_ex(n, params, jobs);
  else if (kind == "spex") c = brute_spex(n, params, jobs);
  else throw UsageError("oracle kind must be ex or spex");
  const Json j = census_to_json(c);
  if (out.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << (kind == "ex" ? "max_edges=" + std::to_string(c.max_edges) : "max_rho=" + fmt(c.max_rho)) << '\n'
              << "witnesses=" << c.witnesses.size() << '\n';
    for (const auto& w : c.witnesses) std::cout << "  " << w << '\n';
    std::cout << "scanned=" << c.scanned << '\n' << "wall_ms=" << fmt(c.wall_ms, 6) << '\n';
  }
  return kOk;
}

int cmd_quotient(const Output& out, int n, FanParams params, const std::string& r_text, std::optional<int> d1_opt,
                 std::optional<int> d2_opt) {
  params.validate();
  if (params.t < 2) throw UsageError("quotient needs t >= 2");
  Rational r;
  try {
    r = parse_rational(r_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const int d1 = d1_opt.value_or(params.k - 1);
  const int d2 = d2_opt.value_or(0);
  RationalMatrix b;
  try {
    b = build_B_r(n, params.t, params.k, r, d1, d2);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double rho = matrix_spectral_radius(b);
  const Polynomial poly = charpoly_Br(n, params.t, params.k, r, d1, d2);
  const Json j{{"n", n},
               {"t", params.t},
               {"k", params.k},
               {"r", to_fraction_string(r)},
               {"d1", d1},
               {"d2", d2},
               {"matrix", matrix_to_json(b)},
               {"rho", rho},
               {"polynomial", polynomial_to_json(poly)},
               {"residual", std::abs(poly(rho))}};
  emit(out, j);
  return kOk;
}

int cmd_sample(const Output& out, int n, double p, FanParams params, std::uint64_t seed) {
  params.validate();
  if (n < 0 || p < 0 || p > 1) throw UsageError("sample needs n >= 0 and 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  GraphBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) b.add_edge(u, v);
  const Graph g = b.build();
  const auto r = contains_disjoint_fans(g, params);
  Json j{{"graph6", to_graph6(g)}, {"n", n}, {"edges", g.edge_count()}, {"seed", seed}, {"status", to_string(r.status)}};
  if (n > 0) j["rho"] = spectral_radius(g, out.tol).rho;
  emit(out, j);
  return r.status == PackingStatus::budget_exhausted ? kBudget : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal and spectral extremal numbers for disjoint even fans"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.json, "JSON output");
  app.add_flag("--csv", out.csv, "CSV output (table)");
  app.add_option("--tol", out.tol, "eigen-residual tolerance")->check(CLI::PositiveNumber);

  int n = 0;
  FanParams params;
  auto add_ntk = [&](CLI::App* sub) {
    sub->add_option("--n", n, "order")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--t", params.t, "number of fan copies")->required()->check(CLI::PositiveNumber);
    sub->add_option("--k", params.k, "fan path has 2k vertices")->required()->check(CLI::Range(3, 1000));
  };

  auto* construct = app.add_subcommand("construct", "build and certify an extremal graph");
  add_ntk(construct);
  std::optional<int> n1;
  bool spectral = false;
  construct->add_option("--n1", n1, "size of the inner block");
  construct->add_flag("--spectral", spectral, "use the spectral choice of n1");

  auto* exnum = app.add_subcommand("exnum", "optimal n1 and edge count");
  add_ntk(exnum);
  auto* spexnum = app.add_subcommand("spexnum", "optimal n1 for the spectral radius");
  add_ntk(spexnum);

  auto* table = app.add_subcommand("table", "grid of optimal values (CSV)");
  std::string n_range, t_range, k_range;
  table->add_option("--n", n_range, "a:b")->required();
  table->add_option("--t", t_range, "a:b")->required();
  table->add_option("--k", k_range, "a:b")->required();

  auto* check = app.add_subcommand("check", "test graphs for t disjoint fans");
  std::string in;
  std::uint64_t budget = 10'000'000;
  check->add_option("--in", in, "graph6 file, '-' for stdin, or graph6 text")->required();
  check->add_option("--t", params.t)->required()->check(CLI::PositiveNumber);
  check->add_option("--k", params.k)->required()->check(CLI::Range(3, 1000));
  check->add_option("--budget", budget, "search node budget");

  auto* oracle = app.add_subcommand("oracle", "exhaustive census (ex or spex)");
  std::string kind;
  int jobs = 1;
  oracle->add_option("kind", kind, "ex or spex")->required()->check(CLI::IsMember({"ex", "spex"}));
  add_ntk(oracle);
  oracle->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* quot = app.add_subcommand("quotient", "three-block model matrix B_r");
  add_ntk(quot);
  std::string r_text = "0";
  std::optional<int> d1, d2;
  quot->add_option("--r", r_text, "offset r (rational, e.g. -1/2)");
  quot->add_option("--d1", d1, "degree inside V1 (default k-1)");
  quot->add_option("--d2", d2, "degree inside V2 (default 0)");

  auto* sample = app.add_subcommand("sample", "random graph with a fan verdict");
  double p = 0.5;
  std::uint64_t seed = 1;
  add_ntk(sample);
  sample->add_option("--p", p, "edge probability");
  sample->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (out.json && out.csv) {
    std::cerr << "error: --json and --csv are exclusive\n";
    return kUsage;
  }

  try {
    if (*construct) return cmd_construct(out, n, params, n1, spectral);
    if (*exnum) return cmd_exnum(out, n, params);
    if (*spexnum) return cmd_spexnum(out, n, params);
    if (*table) return cmd_table(out, parse_range(n_range), parse_range(t_range), parse_range(k_range));
    if (*check) return cmd_check(out, in, params, budget);
    if (*oracle) return cmd_oracle(out, kind, n, params, jobs);
    if (*quot) return cmd_quotient(out, n, params, r_text, d1, d2);
    if (*sample) return cmd_sample(out, n, p, params, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return std::string_view(e.what()).find("budget") != std::string_view::npos ? kBudget : kUsage;
  }
  return kUsage;
}

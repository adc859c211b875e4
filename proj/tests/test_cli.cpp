#include "fanex/canonical.hpp"
#include "fanex/extremal.hpp"
#include "fanex/graph6.hpp"
#include "fanex/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

using namespace fanex;
using Catch::Approx;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = std::string(FANEX_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe);
  Run r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

}  // namespace

TEST_CASE("construct prints the small extremal graph") {
  const auto r = run("construct --n 7 --t 1 --k 3");
  CHECK(r.code == 0);
  const auto kv = key_values(r.out);
  CHECK(kv.at("edges") == "16");
  CHECK(isomorphic(from_graph6(kv.at("graph6")), join(cycle_graph(4), empty_graph(3))));
  CHECK(kv.at("certified") == "absent");
}

TEST_CASE("construct rejects degenerate sizes") {
  CHECK(run("construct --n 6 --t 1 --k 3").code == 2);
  CHECK(run("construct --n 20 --t 1 --k 3 --n1 2").code == 2);
  CHECK(run("construct --n 20 --t 1 --k 3 --n1 21").code == 2);
  CHECK(run("construct --n 20 --t 0 --k 3").code == 2);
  CHECK(run("construct --n 20 --t 1").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("construct with the spectral choice reports both radii") {
  const auto r = run("construct --n 30 --t 2 --k 3 --spectral --json");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("n1") == optimal_n1_spex(30, 2, 3).front());
  CHECK(j.at("r") == "1/2");
  CHECK(j.at("rho").get<double>() == Approx(j.at("rho_A_r").get<double>()).margin(1e-9));
  CHECK(j.at("certified") == "absent");
  const Graph g = from_graph6(j.at("graph6").get<std::string>());
  CHECK(g.edge_count() == j.at("edges").get<std::int64_t>());
}

TEST_CASE("exnum and spexnum") {
  const auto kv = key_values(run("exnum --n 100 --t 1 --k 3").out);
  CHECK(kv.at("n1") == "51");
  CHECK(kv.at("f") == "2550");
  const auto s = run("spexnum --n 22 --t 2 --k 4 --json");
  REQUIRE(s.code == 0);
  const Json j = Json::parse(s.out);
  CHECK(j.at("n1") == Json::array({10}));
  CHECK(j.at("r") == "-1/2");
}

TEST_CASE("check verdicts and exit codes") {
  const std::string k7 = to_graph6(complete_graph(7));
  const auto r = run("check --in '" + k7 + "' --t 1 --k 3");
  CHECK(r.code == 1);
  CHECK(r.out.find("contains fan") != std::string::npos);
  const auto free = run("check --in '" + to_graph6(build_extremal(7, 1, 3, 4)) + "' --t 1 --k 3");
  CHECK(free.code == 0);
  CHECK(free.out.find("fan-free") != std::string::npos);
  CHECK(run("check --in 'C~~' --t 1 --k 3").code == 2);
  CHECK(run("check --in '" + to_graph6(complete_graph(21)) + "' --t 3 --k 3 --budget 2").code == 3);

  const auto path = std::filesystem::temp_directory_path() / "fanex_check_input.g6";
  {
    std::ofstream file(path);
    file << to_graph6(build_extremal(7, 1, 3, 4)) << '\n' << k7 << '\n';
  }
  const auto both = run("check --in " + path.string() + " --t 1 --k 3 --json");
  CHECK(both.code == 1);
  const Json j = Json::parse(both.out);
  REQUIRE(j.size() == 2);
  CHECK(j[0].at("status") == "absent");
  CHECK(j[1].at("status") == "found");
  CHECK(witness_from_json(j[1].at("witness")).copies.size() == 1);
  std::filesystem::remove(path);
}

TEST_CASE("oracle census is independent of the worker count") {
  const auto serial = run("oracle ex --n 7 --t 1 --k 3 --jobs 1 --json");
  const auto parallel = run("oracle ex --n 7 --t 1 --k 3 --jobs 4 --json");
  REQUIRE(serial.code == 0);
  REQUIRE(parallel.code == 0);
  Json a = Json::parse(serial.out), b = Json::parse(parallel.out);
  CHECK(a.at("max_edges").get<int>() >= 16);
  a.erase("wall_ms");
  b.erase("wall_ms");
  CHECK(a == b);
  const auto spex = Json::parse(run("oracle spex --n 6 --t 1 --k 3 --json").out);
  CHECK(spex.at("max_rho").get<double>() == Approx(5).margin(1e-9));
  CHECK(run("oracle ex --n 12 --t 1 --k 3").code == 2);
  CHECK(run("oracle nope --n 5 --t 1 --k 3").code == 2);
}

TEST_CASE("table CSV") {
  const auto r = run("table --n 20:22 --t 1:2 --k 3:4");
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "n,t,k,n1_ex,f,n1_spex,lower,upper");
  int rows = 0;
  std::string line;
  while (std::getline(is, line)) {
    ++rows;
    int n = 0, t = 0, k = 0, n1 = 0;
    long long f = 0;
    char comma = 0;
    std::istringstream row(line);
    row >> n >> comma >> t >> comma >> k >> comma >> n1 >> comma >> f;
    CHECK(n1 == optimal_n1_ex(n, t, k).n1);
    CHECK(f == optimal_n1_ex(n, t, k).value);
  }
  CHECK(rows == 12);
  CHECK(run("table --n 5:3 --t 1 --k 3").code == 2);
  CHECK(Json::parse(run("table --n 20 --t 1 --k 3 --json").out).size() == 1);
}

TEST_CASE("quotient report") {
  const auto r = run("quotient --n 30 --t 2 --k 3 --r -1/2 --json");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(matrix_from_json(j.at("matrix")) == build_B_r(30, 2, 3, make_rational(-1, 2), 2, 0));
  CHECK(polynomial_from_json(j.at("polynomial")).degree() == 3);
  CHECK(j.at("residual").get<double>() <= 1e-6 * 30 * 30 * 30);
  CHECK(run("quotient --n 30 --t 1 --k 3").code == 2);
  CHECK(run("quotient --n 30 --t 2 --k 3 --r x").code == 2);
}

TEST_CASE("sample is reproducible") {
  const auto a = run("sample --n 10 --t 1 --k 3 --seed 7 --json");
  const auto b = run("sample --n 10 --t 1 --k 3 --seed 7 --json");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out).at("seed") == 7);
}

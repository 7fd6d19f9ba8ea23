#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bending/runner.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace bending;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("bending_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run cli(const std::string& args) {
  const fs::path o = scratch() / "stdout.txt", e = scratch() / "stderr.txt";
  const std::string cmd = std::string("\"") + BENDING_CLI_PATH + "\" " + args +
                          " >\"" + o.string() + "\" 2>\"" + e.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(o), slurp(e)};
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> v;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      v.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  v.push_back(cur);
  return v;
}

// Leaf through the points at signed distance t along the real diameter,
// perpendicular to it.
std::string perp_leaf(double t, double w) {
  const double h = std::acos(std::tanh(t));
  return "{\"endpoints\": [" + shortest(h) + ", " + shortest(kTwoPi - h) +
         "], \"weight\": " + shortest(w) + "}";
}

}  // namespace

TEST_CASE("shortest round-trip formatting") {
  CHECK(shortest(0.1) == "0.1");
  CHECK(shortest(3.0) == "3");
  const double v = 0.32402713683194267;
  CHECK(std::stod(shortest(v)) == v);
}

TEST_CASE("eval") {
  Run r = cli("eval --kind bL --L 1 --x 0.324");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) > 3.1);
  CHECK(r.out.find("second-branch") != std::string::npos);

  r = cli("eval --kind bL --L 1 --x 0.4");
  CHECK(r.code == 2);
  CHECK(r.err.find("sech(L)/2") != std::string::npos);

  r = cli("eval --kind r --s 0.25");
  CHECK(r.code == 0);
  CHECK(r.out == "0.549306144334055\n");

  r = cli("eval --kind fbcy --L 1");
  CHECK(r.out == "4.2378601764589\n");

  r = cli("eval --kind cL --L 1 --r 0");
  CHECK(r.out == "0 first-branch\n");

  r = cli("eval --kind teich --L 1 --dT 0.1");
  CHECK(std::stod(r.out) == doctest::Approx(1.41461767384762).epsilon(1e-14));

  CHECK(cli("eval --kind nope --L 1").code == 2);
  CHECK(cli("eval --kind bL --L 1").code == 2);
  CHECK(cli("eval --kind bL --L abc --x 0.1").code == 2);
  CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("table") {
  const Run r = cli("table --kind bL --L 1 --samples 200");
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == "x,value,branch");
  const auto first = split(rows[1], ',');
  CHECK(first[0] == "0");
  CHECK(first[1] == "0");
  const auto last = split(rows.back(), ',');
  CHECK(std::abs(std::stod(last[0]) - 0.5 / std::cosh(1.0)) < 1e-15);
  CHECK(std::abs(std::stod(last[1]) - kPi) < 1e-9);

  int flips = 0;
  double flip_x = 0.0, step = std::stod(split(rows[2], ',')[0]);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const auto a = split(rows[i - 1], ','), b = split(rows[i], ',');
    if (a[2] != b[2] && b[2] != "endpoint") {
      ++flips;
      flip_x = std::stod(b[0]);
    }
    CHECK(std::stod(b[1]) >= std::stod(a[1]));
  }
  CHECK(flips == 1);
  CHECK(std::abs(flip_x - 1.0 / (2.0 * std::sqrt(1.0 + std::exp(2.0)))) <= step);

  // --out writes the same bytes.
  const fs::path p = scratch() / "table.csv";
  CHECK(cli("table --kind bL --L 1 --samples 200 --out \"" + p.string() + "\"").code == 0);
  CHECK(slurp(p) == r.out);

  CHECK(cli("table --kind bL --L 1 --samples 10 --out /nonexistent/dir/t.csv").code == 3);
  CHECK(cli("table --kind bL --L -1 --samples 10").code == 2);
  CHECK(cli("table --kind bL --L 1 --samples 1").code == 2);
  CHECK(cli("table --kind bL --L 1 --format json").code == 2);

  const Run t = cli("table --kind teich --L 1 --samples 50");
  CHECK(t.code == 0);
  CHECK(std::abs(std::stod(split(lines(t.out).back(), ',')[1]) - kPi) < 1e-12);
}

TEST_CASE("verify is deterministic and reports violations") {
  const fs::path a = scratch() / "a.json", b = scratch() / "b.json";
  const std::string args = "verify halfplane-lemma --L 0.5 --r 0.5 --trials 10000 --seed 7";
  REQUIRE(cli(args + " --out \"" + a.string() + "\"").code == 0);
  REQUIRE(cli(args + " --out \"" + b.string() + "\"").code == 0);
  json ja = json::parse(slurp(a)), jb = json::parse(slurp(b));
  CHECK(ja["violations"] == 0);
  CHECK(ja["trials"] == 10000);
  CHECK(ja["seed"] == 7);
  CHECK(ja["config"]["L"] == 0.5);
  CHECK(ja.contains("wall_time"));
  ja.erase("wall_time");
  jb.erase("wall_time");
  CHECK(ja.dump() == jb.dump());

  // Byte-level: the files differ at most on the wall_time line.
  const auto la = lines(slurp(a)), lb = lines(slurp(b));
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i].find("wall_time") == std::string::npos) CHECK(la[i] == lb[i]);
  }

  const Run w = cli("verify wedge --k 0.8 --L 1");
  CHECK(w.code == 0);
  const json jw = json::parse(w.out);
  CHECK(jw["violations"] == 0);
  CHECK(jw["details"]["bending"].get<double>() == doctest::Approx(0.2 * kPi));

  CHECK(cli("verify trig --trials 2000 --seed 3").code == 0);
  // Demanding more than floating point can deliver is a violation.
  const Run strict = cli("verify trig --trials 2000 --seed 3 --tol 1e-30");
  CHECK(strict.code == 1);
  CHECK(json::parse(strict.out)["violations"].get<long>() > 0);

  CHECK(cli("verify area-lemma --trials 6 --seed 1").code == 0);
  CHECK(cli("verify bers-kernel --trials 4 --seed 1").code == 0);

  CHECK(cli("verify nonsense").code == 2);
  CHECK(cli("verify halfplane-lemma --L 2 --r 2 --trials 5").code == 2);
  CHECK(cli("verify halfplane-lemma --L 0.5 --r 0.5 --trials 5 --out /nonexistent/x.json").code == 3);
}

TEST_CASE("lamination files") {
  const fs::path one = write_file("one.json", "{\"leaves\": [" + perp_leaf(0.0, 2.5) + "]}");
  Run r = cli("lamination --input \"" + one.string() + "\" --L 1");
  CHECK(r.code == 0);
  CHECK(r.out == "2.5\n");

  const fs::path two = write_file(
      "two.json", "{\"leaves\": [" + perp_leaf(0.0, 1) + ", " + perp_leaf(0.4, 1) + "]}");
  r = cli("lamination --input \"" + two.string() + "\" --L 0.3");
  CHECK(r.out == "1\n");
  r = cli("lamination --input \"" + two.string() + "\" --L 0.5");
  CHECK(r.out == "2\n");

  const fs::path overlap = write_file(
      "overlap.json",
      "{\"leaves\": [{\"endpoints\": [0, 3.14159], \"weight\": 1},"
      " {\"endpoints\": [1.5, 4.7], \"weight\": 1}]}");
  r = cli("lamination --input \"" + overlap.string() + "\" --L 1");
  CHECK(r.code == 2);
  CHECK(r.err.find("cross") != std::string::npos);

  const fs::path tri = write_file(
      "tri.json",
      "{\"leaves\": [{\"endpoints\": [0, 1], \"weight\": 1},"
      " {\"endpoints\": [2, 3], \"weight\": 1},"
      " {\"endpoints\": [4, 5], \"weight\": 1}]}");
  r = cli("lamination --input \"" + tri.string() + "\" --L 1");
  CHECK(r.code == 2);
  CHECK(r.err.find("leaves 0, 1 and 2") != std::string::npos);

  CHECK(cli("lamination --input \"" + write_file("bad.json", "{nope").string() + "\" --L 1").code == 2);
  CHECK(cli("lamination --input \"" +
            write_file("neg.json", "{\"leaves\": [{\"endpoints\": [0, 1], \"weight\": -1}]}").string() +
            "\" --L 1").code == 2);
  CHECK(cli("lamination --input /nonexistent/lam.json --L 1").code == 3);
}

TEST_CASE("supnorm") {
  Run r = cli("supnorm --map koebe");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["lower"].get<double>() >= 1.5 - 1e-3);
  // Rounding in 1 - |z|^2 near the edge of the grid.
  CHECK(j["lower"].get<double>() <= 1.5 + 1e-9);
  CHECK(j["converged"] == true);

  r = cli("supnorm --map wedge --params 0.8");
  j = json::parse(r.out);
  CHECK(j["lower"].get<double>() == doctest::Approx(0.18).epsilon(1e-3));

  CHECK(cli("supnorm --map wedge").code == 2);
  CHECK(cli("supnorm --map unknown").code == 2);
}

TEST_CASE("in-process dispatch") {
  RunConfig c;
  c.subcommand = "eval";
  c.kind = "aw";
  c.s = 0.25;
  std::ostringstream out, err;
  CHECK(dispatch(c, out, err) == kExitOk);
  CHECK(out.str() == "0.549306144334055\n");

  c.subcommand = "bogus";
  CHECK(dispatch(c, out, err) == kExitUsage);

  const FiniteLamination mu = parse_lamination(
      "{\"leaves\": [" + perp_leaf(-0.4, 1) + ", " + perp_leaf(0.0, 1) + ", " +
      perp_leaf(0.4, 1) + "]}");
  CHECK(norm_L(mu, 0.9) == 3.0);
  CHECK(norm_L(mu, 0.5) == 2.0);
  CHECK_THROWS_AS(parse_lamination("{\"leaves\": [{\"endpoints\": [7, 1], \"weight\": 1}]}"),
                  InvalidLamination);
}

#include "bending/runner.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "bending/bounds.hpp"
#include "bending/dome.hpp"
#include "bending/rng.hpp"
#include "bending/schwarzian.hpp"
#include "bending/verify.hpp"

namespace bending {

using nlohmann::json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(fmt::format("--{} is required", flag));
  return *v;
}

json config_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["kind"] = c.kind;
  auto opt = [&](const char* name, const std::optional<double>& v) {
    if (v) j[name] = *v;
  };
  opt("L", c.L);
  opt("x", c.x);
  opt("r", c.r);
  opt("s", c.s);
  opt("k", c.k);
  opt("dT", c.dT);
  opt("tol", c.tol);
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  if (!c.input.empty()) j["input"] = c.input;
  return j;
}

// Runs body and maps library errors onto exit codes.
template <class F>
int guarded(std::ostream& err, F body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitUsage;
  }
}

// Writes text to cfg.out, or to out when no path was given.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw IoError("cannot open output file '" + cfg.out + "'");
  f << text;
  f.flush();
  if (!f) throw IoError("failed writing '" + cfg.out + "'");
}

std::string g15(double v) { return fmt::format("{:.15g}", v); }

}  // namespace

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------

int cmd_eval(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string& kind = c.kind;
    std::optional<BoundEvaluation> e;
    double value = 0.0;
    if (kind == "bL") {
      e = b_L(need(c.L, "L"), need(c.x, "x"));
    } else if (kind == "cL") {
      e = c_L(need(c.L, "L"), need(c.r, "r"));
    } else if (kind == "teich") {
      e = bending_from_teich(need(c.L, "L"), need(c.dT, "dT"));
    } else if (kind == "r") {
      value = r_of_s(need(c.s, "s"));
    } else if (kind == "aw") {
      value = ahlfors_weill(need(c.s, "s"));
    } else if (kind == "fbcy") {
      value = f_bcy(need(c.L, "L"));
    } else {
      throw UsageError("unknown --kind '" + kind +
                       "' (expected bL, cL, r, aw, teich, fbcy)");
    }
    if (e) {
      out << g15(e->value) << " " << to_string(e->branch) << "\n";
    } else {
      out << g15(value) << "\n";
    }
    return int{kExitOk};
  });
}

int cmd_table(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double L = need(c.L, "L");
    if (c.samples < 2) throw UsageError("--samples must be at least 2");
    std::function<BoundEvaluation(double)> f;
    double top = 0.0;
    if (c.kind == "bL") {
      top = b_L_x_max(L);
      f = [L](double x) { return b_L(L, x); };
    } else if (c.kind == "cL") {
      top = c_L_r_max(L);
      f = [L](double r) { return c_L(L, r); };
    } else if (c.kind == "teich") {
      top = teich_max(L);
      f = [L](double d) { return bending_from_teich(L, d); };
    } else {
      throw UsageError("table --kind must be bL, cL or teich");
    }
    std::string text = "x,value,branch\n";
    const int n = c.samples;
    for (int i = 0; i < n; ++i) {
      const double x = i + 1 == n ? top : top * i / (n - 1);
      const BoundEvaluation e = f(x);
      text += shortest(x) + "," + shortest(e.value) + "," +
              to_string(e.branch) + "\n";
    }
    emit(c, out, text);
    return int{kExitOk};
  });
}

// ---------------------------------------------------------------------------
// verify targets

namespace {

// Uniform draws in a fixed order.
template <std::size_t N>
std::array<double, N> draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, N> out;
  for (double& v : out) v = unit(rng);
  return out;
}

struct Outcome {
  VerificationReport rep;
  json details = json::object();
};

Outcome verify_halfplane(const RunConfig& c) {
  Outcome o;
  o.rep = run_lemma_trials(need(c.L, "L"), need(c.r, "r"), c.trials, c.seed);
  return o;
}

Outcome verify_area(const RunConfig& c) {
  const double tol = c.tol.value_or(1e-6);
  Outcome o;
  o.rep.target = "area-lemma";
  o.rep.seed = c.seed;
  o.rep.bound_value = kPi / 4.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double min_seen = INFINITY;
  for (long i = 0; i < c.trials; ++i) {
    std::mt19937_64 rng = trial_rng(c.seed, static_cast<std::uint64_t>(i));
    double v = 0.0;
    if (i % 2 == 0) {
      // Moebius image of the unit disk, evaluated at the image of a random
      // interior point.
      const auto u = draw<10>(rng);
      const Complex a = std::polar(0.9 * u[0], kTwoPi * u[1]);
      const MoebiusMap m(Complex(u[2] + 0.5, u[3] - 0.5),
                         Complex(u[4] - 0.5, u[5] - 0.5),
                         Complex(u[6] - 0.5, u[7] - 0.5),
                         Complex(u[8] + 0.5, u[9] - 0.5));
      const RoundDisk omega = RoundDisk::disk(0.0, 1.0).transformed(m);
      const Complex z = m(a);
      v = area_lemma_quadrature(disk_domain(omega), z, tol * 1e-2);
    } else {
      const double gamma = 0.3 + 2.6 * unit(rng);
      const double phi0 = 0.1 + (kTwoPi - gamma - 0.2) * unit(rng);
      const Complex p = std::polar(1.0, kTwoPi * unit(rng));
      const Complex q = -p * std::polar(1.0, 0.5 * (unit(rng) - 0.5));
      const AreaDomain d = lune_domain(p, q, phi0, gamma);
      // Interior point: pull back a point of the sector.
      const double ang = phi0 + gamma * (0.1 + 0.8 * unit(rng));
      const Complex zeta = std::polar(0.2 + 4.0 * unit(rng), ang);
      const Complex z = (p - q * zeta) / (1.0 - zeta);
      v = area_lemma_quadrature(d, z, tol * 1e-2);
    }
    ++o.rep.trials;
    o.rep.max_observed = std::max(o.rep.max_observed, v);
    min_seen = std::min(min_seen, v);
    if (v > kPi / 4.0 + tol) ++o.rep.violations;
  }
  o.details["min_observed"] = min_seen;
  o.details["tol"] = tol;
  return o;
}

Outcome verify_kernel(const RunConfig& c) {
  const double tol = c.tol.value_or(1e-6);
  Outcome o;
  o.rep.target = "bers-kernel";
  o.rep.seed = c.seed;
  o.rep.bound_value = 1.5;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const LambdaField one = [](Complex) { return Complex(1.0); };
  double worst_rel = 0.0;
  for (long i = 0; i < c.trials; ++i) {
    std::mt19937_64 rng = trial_rng(c.seed, static_cast<std::uint64_t>(i));
    const auto u = draw<5>(rng);
    const Complex z = std::polar(1.2 + 8.8 * u[0], kTwoPi * u[1]);
    const KernelSample s = bers_kernel_sample(one, z, true, 1e-11);
    const double rel = std::abs(s.value - s.reference) / std::abs(s.reference);
    worst_rel = std::max(worst_rel, rel);
    const LambdaField lam =
        unimodular_field(4.0 * u[2] - 2.0, 4.0 * u[3] - 2.0, 4.0 * u[4] - 2.0);
    const double ratio = bers_kernel_sample(lam, z, false, 1e-11).norm;
    ++o.rep.trials;
    o.rep.max_observed = std::max({o.rep.max_observed, s.norm, ratio});
    if (rel > tol || s.norm > 1.5 + tol || ratio > 1.5 + tol) {
      ++o.rep.violations;
    }
  }
  o.details["max_relative_error_lambda_one"] = worst_rel;
  o.details["tol"] = tol;
  return o;
}

Outcome verify_wedge(const RunConfig& c) {
  const double k = need(c.k, "k");
  const double L = need(c.L, "L");
  const double s = (1.0 - k * k) / 2.0;
  Outcome o;
  o.rep.target = "wedge";
  o.rep.seed = c.seed;
  const WedgeDome dome = wedge_dome(k);
  const double bend = norm_L(dome.lamination(), L);
  const double bound = b_L(L, s).value;
  o.rep.trials = 2;
  o.rep.bound_value = bound;
  o.rep.max_observed = bend;
  if (bend > bound + 1e-12) ++o.rep.violations;
  o.details["sup_schwarzian"] = s;
  o.details["bending"] = bend;
  if (k < 1.0) {
    const ThicknessEstimate t = wedge_thickness(k, 10000);
    const double tb = thickness_bound(s);
    o.details["thickness"] = t.value;
    o.details["thickness_bound"] = tb;
    if (t.value > tb + 1e-3) ++o.rep.violations;
  }
  return o;
}

Outcome verify_trig(const RunConfig& c) {
  const double tol = c.tol.value_or(1e-10);
  Outcome o;
  o.rep.target = "trig";
  o.rep.seed = c.seed;
  o.rep.bound_value = tol;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long i = 0; i < c.trials; ++i) {
    std::mt19937_64 rng = trial_rng(c.seed, static_cast<std::uint64_t>(i));
    const double alpha = kPi * (1e-3 + 0.998 * unit(rng));
    const double beta = (kPi - alpha) * (1e-3 + 0.998 * unit(rng));
    const double cside = ideal_triangle_side(alpha, beta).c;
    const double dev = std::max(
        {std::abs(std::cosh(cside) - ideal_triangle_cosh(alpha, beta)) /
             std::cosh(cside),
         std::abs(std::sinh(cside) - ideal_triangle_sinh(alpha, beta)) /
             std::cosh(cside),
         std::abs(std::exp(-cside) - ideal_triangle_exp_neg(alpha, beta))});
    ++o.rep.trials;
    o.rep.max_observed = std::max(o.rep.max_observed, dev);
    if (dev > tol) ++o.rep.violations;
  }
  return o;
}

}  // namespace

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (c.trials < 1) throw UsageError("--trials must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    if (c.kind == "halfplane-lemma") {
      o = verify_halfplane(c);
    } else if (c.kind == "area-lemma") {
      o = verify_area(c);
    } else if (c.kind == "bers-kernel") {
      o = verify_kernel(c);
    } else if (c.kind == "wedge") {
      o = verify_wedge(c);
    } else if (c.kind == "trig") {
      o = verify_trig(c);
    } else {
      throw UsageError("unknown verify target '" + c.kind +
                       "' (expected halfplane-lemma, area-lemma, "
                       "bers-kernel, wedge, trig)");
    }
    o.rep.wall_time = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    json j;
    j["target"] = o.rep.target;
    j["trials"] = o.rep.trials;
    j["violations"] = o.rep.violations;
    j["max_observed"] = o.rep.max_observed;
    j["bound_value"] = o.rep.bound_value;
    j["seed"] = o.rep.seed;
    j["wall_time"] = o.rep.wall_time;
    j["details"] = o.details;
    j["config"] = config_json(c);
    emit(c, out, j.dump(2) + "\n");
    return int{o.rep.violations == 0 ? kExitOk : kExitViolation};
  });
}

// ---------------------------------------------------------------------------

FiniteLamination parse_lamination(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object() || !j.contains("leaves") || !j["leaves"].is_array()) {
    throw InvalidLamination("expected an object with a \"leaves\" array");
  }
  std::vector<Leaf> leaves;
  for (std::size_t i = 0; i < j["leaves"].size(); ++i) {
    const json& l = j["leaves"][i];
    if (!l.is_object() || !l.contains("endpoints") || !l.contains("weight") ||
        !l["endpoints"].is_array() || l["endpoints"].size() != 2 ||
        !l["endpoints"][0].is_number() || !l["endpoints"][1].is_number() ||
        !l["weight"].is_number()) {
      throw InvalidLamination(fmt::format(
          "leaf {} needs \"endpoints\": [t1, t2] and a numeric \"weight\"", i));
    }
    const double t1 = l["endpoints"][0].get<double>();
    const double t2 = l["endpoints"][1].get<double>();
    for (double t : {t1, t2}) {
      if (!(t >= 0.0 && t < kTwoPi)) {
        throw InvalidLamination(
            fmt::format("leaf {} endpoint {} outside [0, 2pi)", i, t));
      }
    }
    try {
      leaves.push_back({Geodesic(t1, t2), l["weight"].get<double>()});
    } catch (const DomainError& e) {
      throw InvalidLamination(fmt::format("leaf {}: {}", i, e.what()));
    }
  }
  return FiniteLamination(std::move(leaves));
}

FiniteLamination read_lamination(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_lamination(ss.str());
}

int cmd_lamination_norm(const RunConfig& c, std::ostream& out,
                        std::ostream& err) {
  return guarded(err, [&] {
    if (c.input.empty()) throw UsageError("--input is required");
    const double L = need(c.L, "L");
    const FiniteLamination mu = read_lamination(c.input);
    out << g15(norm_L(mu, L)) << "\n";
    return int{kExitOk};
  });
}

int cmd_supnorm(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (c.map.empty()) throw UsageError("--map is required");
    const AnalyticMap f = registered_map(c.map, c.params);
    SupNormGrid grid;
    if (c.tol) grid.tol = *c.tol;
    SupNormEstimate est;
    bool converged = true;
    try {
      est = sup_norm_estimate(schwarzian_field(f), grid);
    } catch (const BudgetExceeded& e) {
      est = e.estimate;
      converged = false;
    }
    json j;
    j["map"] = c.map;
    j["params"] = c.params;
    j["lower"] = est.lower;
    j["upper"] = est.upper;
    j["samples"] = est.samples;
    j["levels"] = est.levels;
    j["converged"] = converged;
    emit(c, out, j.dump(2) + "\n");
    return int{kExitOk};
  });
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.subcommand == "eval") return cmd_eval(c, out, err);
  if (c.subcommand == "table") return cmd_table(c, out, err);
  if (c.subcommand == "verify") return cmd_verify(c, out, err);
  if (c.subcommand == "lamination") return cmd_lamination_norm(c, out, err);
  if (c.subcommand == "supnorm") return cmd_supnorm(c, out, err);
  err << "error: unknown subcommand '" << c.subcommand << "'\n";
  return kExitUsage;
}

}  // namespace bending

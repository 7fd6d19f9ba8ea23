#include "bending/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace bending {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

void require_positive_L(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw DomainError(fmt::format("L = {} must be positive", L));
  }
}

// Pull a value within kThresholdTol of [lo, hi] back inside; raise beyond.
double clamp_domain(double v, double lo, double hi, const std::string& what) {
  if (std::isnan(v) || v < lo - kThresholdTol || v > hi + kThresholdTol) {
    throw DomainError(what);
  }
  return std::clamp(v, lo, hi);
}

double r_domain(double L, double r) {
  const double r_max = c_L_r_max(L);
  return clamp_domain(
      r, 0.0, r_max,
      fmt::format("r = {} violates sinh(L) sinh(r) <= 1 (r <= {} for L = {})",
                  r, r_max, L));
}

double x_domain(double L, double x) {
  const double x_max = b_L_x_max(L);
  return clamp_domain(
      x, 0.0, x_max,
      fmt::format("x = {} outside [0, sech(L)/2] = [0, {}] for L = {}", x,
                  x_max, L));
}

double s_domain(double s) {
  if (!(s >= 0.0 && s < 0.5)) {
    throw DomainError(fmt::format("s = {} outside [0, 1/2)", s));
  }
  return s;
}

// Thresholds are themselves rounded, so "equal" means within a few ulps.
bool at(double v, double threshold) {
  return std::abs(v - threshold) <=
         8.0 * std::numeric_limits<double>::epsilon() * std::abs(threshold);
}

Branch pick(double v, double breakpoint) {
  if (at(v, breakpoint)) return Branch::Endpoint;
  return v < breakpoint ? Branch::First : Branch::Second;
}

}  // namespace

std::string to_string(Branch b) {
  switch (b) {
    case Branch::First:
      return "first-branch";
    case Branch::Second:
      return "second-branch";
    case Branch::Endpoint:
      return "endpoint";
  }
  return "?";
}

double f_bcy(double L) {
  const double top = 2.0 * std::asinh(1.0);
  if (!(L > 0.0) || L > top + kThresholdTol) {
    throw DomainError(
        fmt::format("L = {} outside (0, 2 asinh(1)] = (0, {}]", L, top));
  }
  return 2.0 * std::acos(clamp_unit(-std::sinh(std::min(L, top) / 2.0)));
}

// ---------------------------------------------------------------------------

double c_L_breakpoint(double L) {
  require_positive_L(L);
  return std::asinh(std::exp(-L));
}

double c_L_r_max(double L) {
  require_positive_L(L);
  return std::asinh(1.0 / std::sinh(L));
}

double c_L_first(double L, double r) {
  r = r_domain(L, r);
  return 2.0 * std::atan(std::exp(L) * std::sinh(r));
}

double c_L_second(double L, double r) {
  r = r_domain(L, r);
  if (r == 0.0) return 0.0;  // limit of the first branch; second is 0/0
  // The range end is a square-root singularity; an ulp of r there costs 1e-8.
  if (at(r, c_L_r_max(L))) return kPi;
  // acos(c) as 2 atan2(sqrt(1-c), sqrt(1+c)), both halves factored.
  const double sr = std::sinh(r), sl = std::sinh(L);
  return 2.0 * std::atan2(std::sqrt(sr * (sr + sl)),
                          std::sqrt(std::max(0.0, 1.0 - sr * sl)));
}

BoundEvaluation c_L(double L, double r) {
  r = r_domain(L, r);
  BoundEvaluation e;
  e.kind = "cL";
  e.L = L;
  e.arg = r;
  e.branch = pick(std::sinh(r), std::exp(-L));
  e.value = e.branch == Branch::Second ? c_L_second(L, r) : c_L_first(L, r);
  return e;
}

double r_of_s(double s) {
  s = s_domain(s);
  return 0.5 * (std::log1p(2.0 * s) - std::log1p(-2.0 * s));
}

// ---------------------------------------------------------------------------

double b_L_breakpoint(double L) {
  require_positive_L(L);
  return 0.5 / std::sqrt(1.0 + std::exp(2.0 * L));
}

double b_L_x_max(double L) {
  require_positive_L(L);
  return 0.5 / std::cosh(L);
}

double b_L_first(double L, double x) {
  x = x_domain(L, x);
  return 2.0 * std::atan(2.0 * std::exp(L) * x / std::sqrt(1.0 - 4.0 * x * x));
}

double b_L_second(double L, double x) {
  x = x_domain(L, x);
  if (at(x, b_L_x_max(L))) return kPi;
  const double w = std::sqrt(1.0 - 4.0 * x * x);
  const double sl = std::sinh(L);
  return 2.0 * std::atan2(std::sqrt(2.0 * x * (2.0 * x + sl * w)),
                          std::sqrt(w * std::max(0.0, w - 2.0 * x * sl)));
}

BoundEvaluation b_L(double L, double x) {
  x = x_domain(L, x);
  BoundEvaluation e;
  e.kind = "bL";
  e.L = L;
  e.arg = x;
  e.branch = pick(x, b_L_breakpoint(L));
  e.value = e.branch == Branch::Second ? b_L_second(L, x) : b_L_first(L, x);
  return e;
}

double b_L_small_x_ratio(double L, double x) {
  require_positive_L(L);
  const double top = std::min(1e-3, b_L_x_max(L));
  if (!(x > 0.0 && x <= top)) {
    throw DomainError(fmt::format("x = {} outside (0, {}]", x, top));
  }
  return b_L(L, x).value / (4.0 * std::exp(L) * x);
}

double ahlfors_weill(double s) { return std::atanh(2.0 * s_domain(s)); }

double teich_max(double L) {
  require_positive_L(L);
  return 1.0 / (3.0 * std::cosh(L));
}

BoundEvaluation bending_from_teich(double L, double dT) {
  const double top = teich_max(L);
  dT = clamp_domain(dT, 0.0, top,
                    fmt::format("dT = {} outside [0, sech(L)/3] = [0, {}] "
                                "for L = {}",
                                dT, top, L));
  BoundEvaluation e = b_L(L, std::min(1.5 * dT, b_L_x_max(L)));
  e.kind = "teich";
  e.arg = dT;
  return e;
}

}  // namespace bending

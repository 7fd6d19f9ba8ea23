#pragma once

// Closed-form bound functions with branch bookkeeping.

#include <string>

#include "bending/errors.hpp"

namespace bending {

enum class Branch { First, Second, Endpoint };

std::string to_string(Branch b);

struct BoundEvaluation {
  double value = 0.0;
  Branch branch = Branch::First;
  std::string kind;  // "cL", "bL", ...
  double L = 0.0;
  double arg = 0.0;  // r, x or dT
};

struct ReferenceConstants {
  static constexpr double nehari_univalent = 0.5;
  static constexpr double nehari_necessary = 1.5;
  static constexpr double bcy_norm1_bound = 4.238;
  static constexpr double emm_constant = 0.73;
  static constexpr double g_at_1 = 0.948;
};

// Slack applied at every domain threshold before raising.
inline constexpr double kThresholdTol = 1e-13;

// 2 acos(-sinh(L/2)) for 0 < L <= 2 asinh(1).
double f_bcy(double L);

// Breakpoint sinh(r) = e^{-L}, i.e. r = asinh(e^{-L}).
double c_L_breakpoint(double L);
// Largest admissible r: sinh(r) = 1/sinh(L).
double c_L_r_max(double L);
BoundEvaluation c_L(double L, double r);
// The two branch formulas, unguarded by the breakpoint (domain still
// checked). Used for continuity checks.
double c_L_first(double L, double r);
double c_L_second(double L, double r);

// (1/2) log((1+2s)/(1-2s)), 0 <= s < 1/2.
double r_of_s(double s);

// 1 / (2 sqrt(1 + e^{2L})).
double b_L_breakpoint(double L);
// sech(L) / 2.
double b_L_x_max(double L);
BoundEvaluation b_L(double L, double x);
double b_L_first(double L, double x);
double b_L_second(double L, double x);
// b_L(L, x) / (4 e^L x) for 0 < x <= min(1e-3, sech(L)/2).
double b_L_small_x_ratio(double L, double x);

// atanh(2s), 0 <= s < 1/2.
double ahlfors_weill(double s);

// sech(L) / 3.
double teich_max(double L);
// b_L(L, 3 dT / 2) for 0 <= dT <= sech(L)/3.
BoundEvaluation bending_from_teich(double L, double dT);

}  // namespace bending

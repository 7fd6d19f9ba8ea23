#pragma once

// Numerical checks of the half-plane lemma, the area inequality and the
// derivative kernel: a rejection sampler, the piecewise case function, and
// quadrature over circular regions.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bending/dome.hpp"
#include "bending/hyp_core.hpp"

namespace bending {

// ---------------------------------------------------------------------------
// Half-plane lemma

struct LemmaConfig {
  double L;
  double r;
  HalfPlaneH2 H1, H2, H3;
  PointH2 z1, z2, z3;
};

// Checks every hypothesis of the lemma; on failure names the first one
// violated in *why.
bool lemma_config_valid(const LemmaConfig& cfg, std::string* why = nullptr);

// Rejection sampler. z1 = 0 and H1 the lower half-disk. H2 is drawn from
// three families: crossing the positive real axis at a random point and
// angle, random ideal endpoints, or equal to H1. Deterministic in seed.
LemmaConfig sample_lemma_config(double L, double r, std::uint64_t seed,
                                long max_rejections = 100000);

struct LemmaCheck {
  bool intersects = false;
  double angle = 0.0;
  double bound = 0.0;
  bool pass = false;
};

LemmaCheck check_lemma_tech(const LemmaConfig& cfg);

struct VerificationReport {
  std::string target;
  long trials = 0;
  long violations = 0;
  double max_observed = 0.0;
  double bound_value = 0.0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds
};

// trials configurations with seeds derived from (seed, trial index).
VerificationReport run_lemma_trials(double L, double r, long trials,
                                    std::uint64_t seed);

// phi2hat with tan(phi2hat / 2) = 1 / sinh(L).
double phi2hat(double L);
double case_function_f(double a, double L, double phi2hat);
double case_function_first(double a, double L);
double case_function_second(double a, double L);

// ---------------------------------------------------------------------------
// Area inequality

// Finite Boolean combination of round disks on the sphere.
struct CircularRegion {
  enum class Kind { Intersection, Union };
  Kind kind = Kind::Intersection;
  std::vector<RoundDisk> disks;
  bool contains(Complex z) const;
};

// Omega* (where the integral runs) together with the hyperbolic area form
// of the complementary domain Omega.
struct AreaDomain {
  CircularRegion omega_star;
  std::function<double(Complex)> rho_omega;
};

// Omega a round disk (or half-plane), Omega* its closed complement.
AreaDomain disk_domain(const RoundDisk& omega);
// Omega the convex lune between two circular arcs from p to q meeting at
// interior angle gamma in (0, pi). In zeta = (z - p)/(z - q) the lune is
// the sector phi0 < arg zeta < phi0 + gamma, which must avoid arg 0 (the
// image of infinity) so that the lune is bounded.
AreaDomain lune_domain(Complex p, Complex q, double phi0, double gamma);
// Image of a lune or disk domain under a Moebius map of the sphere.
AreaDomain transformed(const AreaDomain& d, const MoebiusMap& m);

// (1 / rho_Omega(z)) * integral over Omega* of |xi - z|^{-4} dA(xi).
// Polar coordinates about z: the radial integral is exact, the angular one
// adaptive Gauss-Kronrod between the directions where the integrand kinks.
double area_lemma_quadrature(const AreaDomain& domain, Complex z,
                             double tol = 1e-10);

// ---------------------------------------------------------------------------
// Derivative kernel on the exterior of the unit disk

using LambdaField = std::function<Complex(Complex)>;

struct KernelSample {
  Complex z;
  Complex value;
  Complex reference;  // -6/z^4 for lambda = 1, NaN otherwise
  double norm;        // |value| / (4 / (|z|^2 - 1)^2)
};

// -(6/pi) * integral over the unit disk of lambda(xi) / (xi - z)^4 dA.
Complex bers_kernel(const LambdaField& lambda, Complex z, double tol = 1e-10);
KernelSample bers_kernel_sample(const LambdaField& lambda, Complex z,
                                bool lambda_is_one, double tol = 1e-10);

struct LipschitzResult {
  double max_ratio = 0.0;
  bool pass = false;
  std::vector<double> ratios;
};

// Ratio of the kernel's pointwise hyperbolic norm to lambda_sup at each
// point; pass when every ratio is <= 3/2 + tol.
LipschitzResult lipschitz_check(const LambdaField& lambda, double lambda_sup,
                                const std::vector<Complex>& points,
                                double tol = 1e-8);

// exp(i (a Re xi + b Im xi + c |xi|^2)); sup norm exactly 1.
LambdaField unimodular_field(double a, double b, double c);

}  // namespace bending

#include "bending/dome.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bending/bounds.hpp"

namespace bending {

RoundDisk::RoundDisk(double a, Complex b, double c) : a_(a), b_(b), c_(c) {
  const double disc = std::norm(b) - a * c;
  if (!(disc > 0.0)) throw DomainError("degenerate circle");
  const double s = 1.0 / std::sqrt(disc);
  a_ *= s;
  b_ *= s;
  c_ *= s;
}

RoundDisk RoundDisk::disk(Complex centre, double radius) {
  if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
  return {1.0 / radius, centre / radius,
          (std::norm(centre) - radius * radius) / radius};
}

RoundDisk RoundDisk::exterior(Complex centre, double radius) {
  return disk(centre, radius).complement();
}

RoundDisk RoundDisk::half_plane(Complex point, Complex inward_normal) {
  if (std::abs(inward_normal) == 0.0) {
    throw DomainError("half-plane normal must be nonzero");
  }
  const Complex n = inward_normal / std::abs(inward_normal);
  return {0.0, n, 2.0 * (std::conj(n) * point).real()};
}

double RoundDisk::q(Complex z) const {
  return a_ * std::norm(z) - 2.0 * (std::conj(b_) * z).real() + c_;
}

RoundDisk RoundDisk::transformed(const MoebiusMap& m) const {
  // q'(w) = (w 1)^* N^* H N (w 1)^T with N = m^{-1}, H = [[A, -B], [-B*, C]].
  const MoebiusMap n = m.inverse();
  const Complex na = n.a(), nb = n.b(), nc = n.c(), nd = n.d();
  const Complex h11 = a_, h12 = -b_, h21 = -std::conj(b_), h22 = c_;
  // K = H N
  const Complex k11 = h11 * na + h12 * nc, k12 = h11 * nb + h12 * nd;
  const Complex k21 = h21 * na + h22 * nc, k22 = h21 * nb + h22 * nd;
  // N^* K
  const Complex r11 = std::conj(na) * k11 + std::conj(nc) * k21;
  const Complex r12 = std::conj(na) * k12 + std::conj(nc) * k22;
  const Complex r22 = std::conj(nb) * k12 + std::conj(nd) * k22;
  return {r11.real(), -r12, r22.real()};
}

double RoundDisk::area_form(Complex z) const {
  const double v = q(z);
  if (!(v < 0.0)) throw DomainError("point is not inside the disk");
  return 4.0 / (v * v);
}

double inversive_product(const RoundDisk& d1, const RoundDisk& d2) {
  return (d1.B() * std::conj(d2.B())).real() -
         0.5 * (d1.A() * d2.C() + d2.A() * d1.C());
}

double dist_h3(const PointH3& p, const PointH3& q) {
  const double num = std::norm(p.w - q.w) + (p.h - q.h) * (p.h - q.h);
  // acosh(1 + x) = 2 asinh(sqrt(x/2))
  return 2.0 * std::asinh(std::sqrt(num / (4.0 * p.h * q.h)));
}

double HalfSpaceH3::sinh_signed_distance(const PointH3& p) const {
  if (!(p.h > 0.0)) throw DomainError("point must lie above the boundary");
  return (disk_.q(p.w) + disk_.A() * p.h * p.h) / (2.0 * p.h);
}

double HalfSpaceH3::distance_to_plane(const PointH3& p) const {
  return std::asinh(std::abs(sinh_signed_distance(p)));
}

double ext_dihedral(const HalfSpaceH3& h1, const HalfSpaceH3& h2) {
  const double i = inversive_product(h1.disk(), h2.disk());
  if (std::abs(i) > 1.0 + kTangencyEps) {
    throw DisjointError("boundary planes are disjoint");
  }
  return std::acos(std::clamp(i, -1.0, 1.0));
}

// ---------------------------------------------------------------------------

FiniteLamination WedgeDome::lamination() const {
  if (bending_weight <= 0.0) return FiniteLamination({});
  return FiniteLamination({{Geodesic(0.0, kPi), bending_weight}});
}

WedgeDome wedge_dome(double k) {
  if (!(k > 0.0 && k <= 1.0)) {
    throw DomainError(fmt::format("wedge parameter k = {} outside (0, 1]", k));
  }
  const double top = k * kPi;
  // Each face is the support plane over the maximal disk of the wedge
  // complement bounded by that edge line.
  HalfSpaceH3 f1(RoundDisk::half_plane(0.0, Complex(0.0, -1.0)));
  HalfSpaceH3 f2(
      RoundDisk::half_plane(0.0, Complex(0.0, 1.0) * std::polar(1.0, top)));
  WedgeDome d{k, f1, f2, {0.0, top}, 0.0};
  d.bending_weight = ext_dihedral(f1, f2);
  return d;
}

double dome_distance(const PointH3& p, const WedgeDome& dome) {
  if (!(p.h > 0.0)) throw DomainError("point must lie in upper half-space");
  double best = INFINITY;
  for (double edge : dome.edge_angle) {
    const Complex local = p.w * std::polar(1.0, -edge);
    // Foot on the vertical plane keeps the coordinate along the edge line.
    const double d = local.real() >= 0.0
                         ? std::asinh(std::abs(local.imag()) / p.h)
                         : std::asinh(std::abs(p.w) / p.h);
    best = std::min(best, d);
  }
  return best;
}

PointH3 inner_dome_point(double k, double rho, double psi) {
  const double a = k * kPi / 2.0;
  if (!(std::abs(psi) < a) || !(rho > 0.0)) {
    throw DomainError("point outside the wedge");
  }
  const double c = std::cos(psi) / std::cos(a);
  return {std::polar(rho, a + psi), rho * std::sqrt(std::max(c * c - 1.0, 0.0))};
}

namespace {

// Support plane of the wedge's dome over the inscribed disk centred at
// t e^{ia}, radius t sin a.
HalfSpaceH3 inscribed_plane(double a, double t) {
  return HalfSpaceH3(RoundDisk::disk(std::polar(t, a), t * std::sin(a)));
}

double distance_to_inner_dome(double a, const PointH3& p) {
  auto f = [&](double logt) {
    return inscribed_plane(a, std::exp(logt)).distance_to_plane(p);
  };
  const double lo = std::log(std::abs(p.w) + p.h) - 12.0;
  const double hi = lo + 24.0;
  constexpr int kScan = 480;
  double best = INFINITY, arg = lo;
  for (int i = 0; i <= kScan; ++i) {
    const double x = lo + (hi - lo) * i / kScan;
    const double v = f(x);
    if (v < best) {
      best = v;
      arg = x;
    }
  }
  // Golden-section polish on the bracketing cells.
  const double step = (hi - lo) / kScan;
  double l = arg - step, r = arg + step;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = r - g * (r - l), d = l + g * (r - l);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 80; ++i) {
    if (fc < fd) {
      r = d;
      d = c;
      fd = fc;
      c = r - g * (r - l);
      fc = f(c);
    } else {
      l = c;
      c = d;
      fc = fd;
      d = l + g * (r - l);
      fd = f(d);
    }
  }
  return std::min({best, fc, fd});
}

}  // namespace

ThicknessEstimate wedge_thickness(double k, int samples) {
  if (!(k > 0.0 && k < 1.0)) {
    throw DomainError(fmt::format("thickness needs 0 < k < 1, got {}", k));
  }
  if (samples < 2) throw DomainError("need at least two samples");
  const WedgeDome dome = wedge_dome(k);
  const double a = k * kPi / 2.0;
  ThicknessEstimate est;
  const int half = samples / 2;
  for (int i = 0; i < half; ++i) {
    const double psi = a * (2.0 * (i + 0.5) / half - 1.0);
    est.inner_to_outer = std::max(
        est.inner_to_outer, dome_distance(inner_dome_point(k, 1.0, psi), dome));
  }
  // Face points (s, 1) up to horizontal offset 10; the other face is the
  // mirror image across the bisector.
  const int rest = samples - half;
  for (int i = 0; i < rest; ++i) {
    const double s = 10.0 * i / (rest - 1);
    est.outer_to_inner =
        std::max(est.outer_to_inner, distance_to_inner_dome(a, {s, 1.0}));
  }
  est.value = std::max(est.inner_to_outer, est.outer_to_inner);
  est.samples = samples;
  return est;
}

// ---------------------------------------------------------------------------

std::pair<double, double> dual_eigenvalues(double n, double t) {
  if (!(n >= 0.0)) throw DomainError("Schwarzian norm must be nonnegative");
  const double s = std::exp(-2.0 * t);
  return {s * (1.0 + 2.0 * n), s * (1.0 - 2.0 * n)};
}

double dual_transform(double x) {
  if (std::abs(1.0 + x) < 1e-14) {
    throw SingularityError("eigenvalue -1: conversion undefined");
  }
  return (1.0 - x) / (1.0 + x);
}

std::pair<double, double> epstein_principal_curvatures(double n, double t) {
  const auto [lp, lm] = dual_eigenvalues(n, t);
  return {dual_transform(lp), dual_transform(lm)};
}

std::pair<double, double> convexity_times(double s) {
  if (!(s >= 0.0 && s < 0.5)) {
    throw DomainError(fmt::format("s = {} outside [0, 1/2)", s));
  }
  return {0.5 * std::log1p(2.0 * s), 0.5 * std::log1p(-2.0 * s)};
}

double thickness_bound(double s) { return r_of_s(s); }

}  // namespace bending

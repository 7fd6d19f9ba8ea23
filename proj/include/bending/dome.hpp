#pragma once

// Round disks on the sphere at infinity, the half-spaces they bound in the
// upper half-space model of H^3, the bent dome over a wedge complement, and
// the Epstein curvature formulas.

#include <functional>
#include <utility>

#include "bending/hyp_core.hpp"
#include "bending/lamination.hpp"

namespace bending {

// Oriented generalised circle, stored as the Hermitian form
//   q(z) = A|z|^2 - 2 Re(conj(B) z) + C,  |B|^2 - AC = 1,
// with the disk being {q < 0}. A < 0 means the disk contains infinity.
class RoundDisk {
 public:
  static RoundDisk disk(Complex centre, double radius);
  static RoundDisk exterior(Complex centre, double radius);
  // {z : Re(conj(n) (z - point)) > 0}, n the inward normal.
  static RoundDisk half_plane(Complex point, Complex inward_normal);

  double A() const { return a_; }
  Complex B() const { return b_; }
  double C() const { return c_; }

  double q(Complex z) const;
  bool contains(Complex z) const { return q(z) < 0.0; }
  bool contains_infinity() const { return a_ < 0.0; }
  bool is_line() const { return std::abs(a_) < 1e-15; }
  // Only for circles (not lines).
  Complex centre() const { return b_ / a_; }
  double radius() const { return 1.0 / std::abs(a_); }

  RoundDisk complement() const { return {-a_, -b_, -c_}; }
  // Image disk under a Moebius map of the sphere.
  RoundDisk transformed(const MoebiusMap& m) const;
  // Hyperbolic area form 4 / q(z)^2 of the disk's Poincare metric.
  double area_form(Complex z) const;

 private:
  RoundDisk(double a, Complex b, double c);
  double a_;
  Complex b_;
  double c_;
};

// Inversive product of two oriented circles: cosine of the angle between
// inward normals where they cross, +-cosh of the separation otherwise.
double inversive_product(const RoundDisk& d1, const RoundDisk& d2);

// Point of the upper half-space: horizontal coordinate w, height h > 0.
struct PointH3 {
  Complex w;
  double h;
};

double dist_h3(const PointH3& p, const PointH3& q);

// Half-space bounded by the hyperbolic plane over the circle, on the side
// of the disk.
class HalfSpaceH3 {
 public:
  explicit HalfSpaceH3(RoundDisk d) : disk_(d) {}
  const RoundDisk& disk() const { return disk_; }
  // sinh of the signed distance to the boundary plane, negative inside.
  double sinh_signed_distance(const PointH3& p) const;
  double distance_to_plane(const PointH3& p) const;

 private:
  RoundDisk disk_;
};

// Exterior dihedral angle in [0, pi]; DisjointError for disjoint planes.
double ext_dihedral(const HalfSpaceH3& h1, const HalfSpaceH3& h2);

// Dome over the complement of the wedge {0 < arg z < k pi}: the vertical
// half-planes above the two edge rays, meeting along the vertical line over
// 0. The wedge is the image of the upper half-plane under z^k.
struct WedgeDome {
  double k;
  HalfSpaceH3 face1;     // over the ray arg = 0
  HalfSpaceH3 face2;     // over the ray arg = k pi
  double edge_angle[2];  // directions of the two rays
  double bending_weight;
  FiniteLamination lamination() const;
};

WedgeDome wedge_dome(double k);

// Distance to the union of the two faces (each a half-plane of its
// vertical plane, bounded by the bending line).
double dome_distance(const PointH3& p, const WedgeDome& dome);

// Points of the dome of the wedge itself: the envelope of hemispheres over
// disks inscribed in the wedge. psi in (-k pi/2, k pi/2) measures the
// horizontal angle from the bisector, rho the horizontal modulus.
PointH3 inner_dome_point(double k, double rho, double psi);

struct ThicknessEstimate {
  double inner_to_outer = 0.0;  // sup over the wedge's dome of d(., faces)
  double outer_to_inner = 0.0;  // sup over the faces of d(., wedge's dome)
  double value = 0.0;           // max of the two
  int samples = 0;
};

// Sampled (lower) estimate of the hull thickness for 0 < k < 1. Dilations
// about 0 preserve both boundary components, so one sweep of the angular
// coordinate covers each of them.
ThicknessEstimate wedge_thickness(double k, int samples = 10000);

// Principal curvatures of the Epstein surface where the Schwarzian has
// pointwise norm n, after normal flow for time t. First entry comes from
// the dual eigenvalue e^{-2t}(1 + 2n).
std::pair<double, double> dual_eigenvalues(double n, double t);
std::pair<double, double> epstein_principal_curvatures(double n, double t);
// (1 - x) / (1 + x); maps dual eigenvalues to curvatures and back.
double dual_transform(double x);

struct EpsteinCurvatureField {
  std::function<double(Complex)> norm;  // pointwise Schwarzian norm
  double t = 0.0;
  std::pair<double, double> at(Complex z) const {
    return epstein_principal_curvatures(norm(z), t);
  }
};

// t0 = log(1 + 2s)/2, t1 = log(1 - 2s)/2.
std::pair<double, double> convexity_times(double s);
double thickness_bound(double s);

}  // namespace bending

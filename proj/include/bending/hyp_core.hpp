#pragma once

// Primitives for the hyperbolic plane in the Poincare disk model.
//
// Metric convention: curvature -1, length density 2/(1-|z|^2), so the area
// form is 4/(1-|z|^2)^2. In the upper half-plane the density is 1/Im(z).
// Geodesics are stored by their ideal endpoints (angles on the unit circle).

#include <complex>
#include <numbers>

#include "bending/errors.hpp"

namespace bending {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Interior points must satisfy |z| < 1 - kBoundaryEps.
inline constexpr double kBoundaryEps = 1e-14;
// |inversive product| within this band of 1 is classified as asymptotic.
inline constexpr double kTangencyEps = 1e-10;

// Point of the Riemann sphere: a finite complex number or infinity.
struct ExtComplex {
  Complex value{};
  bool infinite = false;

  ExtComplex() = default;
  ExtComplex(Complex z) : value(z) {}  // NOLINT: implicit by intent
  ExtComplex(double x) : value(x) {}   // NOLINT

  static ExtComplex infinity() {
    ExtComplex e;
    e.infinite = true;
    return e;
  }
  bool is_finite() const { return !infinite; }
};

// Reduce an angle into [0, 2pi).
double wrap_angle(double theta);
// Length of the counter-clockwise arc from angle a to angle b, in [0, 2pi).
double ccw_arc(double a, double b);

// Orientation-preserving Moebius transformation z -> (az+b)/(cz+d).
class MoebiusMap {
 public:
  MoebiusMap() = default;
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);

  static MoebiusMap identity() { return {}; }
  // z -> e^{i theta} (z - a) / (1 - conj(a) z); requires |a| < 1.
  static MoebiusMap disk_automorphism(Complex a, double theta);
  // Hyperbolic translation of signed length d along the real diameter.
  static MoebiusMap translation(double d);
  static MoebiusMap rotation(double theta);
  // Cayley transform, disk -> upper half-plane: z -> i(1+z)/(1-z).
  static MoebiusMap cayley();
  // The map sending z0 -> 0, z_inf -> infinity, z1 -> 1.
  static MoebiusMap from_three_points(ExtComplex z0, ExtComplex z_inf,
                                      ExtComplex z1);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }

  // Scale so that ad - bc = 1.
  MoebiusMap normalized() const;
  MoebiusMap inverse() const;
  // (this * other)(z) = this(other(z)).
  MoebiusMap operator*(const MoebiusMap& other) const;

  ExtComplex apply(ExtComplex z) const;
  // Finite image of a finite point; throws DomainError at the pole.
  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  Complex second_derivative(Complex z) const;
  Complex third_derivative(Complex z) const;
  // Image of the boundary point e^{i theta} for maps preserving the unit
  // circle, returned as an angle.
  double apply_to_angle(double theta) const;

 private:
  Complex a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

class PointH2 {
 public:
  explicit PointH2(Complex z);
  Complex z() const { return z_; }

 private:
  Complex z_;
};

// Unoriented geodesic with ideal endpoints e^{ip}, e^{iq}, 0 <= p < q < 2pi.
class Geodesic {
 public:
  Geodesic(double theta1, double theta2);
  double p() const { return p_; }
  double q() const { return q_; }
  Complex endpoint_p() const { return std::polar(1.0, p_); }
  Complex endpoint_q() const { return std::polar(1.0, q_); }
  bool same_as(const Geodesic& other, double tol = 1e-12) const;

 private:
  double p_;
  double q_;
};

// Closed half-plane bounded by a geodesic. side = +1 selects the component
// whose ideal boundary is the counter-clockwise arc from p to q, side = -1
// the other one. Equivalently, the half-plane lies on the right of its
// boundary oriented from arc_start() to arc_end().
class HalfPlaneH2 {
 public:
  HalfPlaneH2(Geodesic boundary, int side);
  // Half-plane whose ideal boundary is the ccw arc from start to end.
  static HalfPlaneH2 from_arc(double start, double end);

  const Geodesic& boundary() const { return boundary_; }
  int side() const { return side_; }
  double arc_start() const;
  double arc_end() const;
  double arc_length() const { return ccw_arc(arc_start(), arc_end()); }
  HalfPlaneH2 complement() const { return {boundary_, -side_}; }
  bool same_as(const HalfPlaneH2& other, double tol = 1e-12) const;

 private:
  Geodesic boundary_;
  int side_;
};

// Triangle with one ideal vertex, finite angles alpha, beta and finite side c.
struct IdealTriangleSolve {
  double alpha;
  double beta;
  double c;
};

double dist_h2(const PointH2& p, const PointH2& q);
double dist_point_geodesic(const PointH2& p, const Geodesic& g);
// Positive in the interior of h, negative outside, zero on the boundary.
double signed_distance(const HalfPlaneH2& h, const PointH2& p);

// Cosine of the crossing angle (|t| < 1) or cosh of the distance (t >= 1).
// Crossing angles are measured between the geodesics oriented p -> q.
double inversive_product(const Geodesic& g1, const Geodesic& g2);
bool geodesics_cross(const Geodesic& g1, const Geodesic& g2);
double geodesic_distance(const Geodesic& g1, const Geodesic& g2);

// Exterior angle in [0, pi] between half-planes, i.e. the angle between
// their outward normals along the common boundary point.
double ext_angle_halfplanes(const HalfPlaneH2& h1, const HalfPlaneH2& h2);
// Closed half-planes meet at most at an ideal point.
bool halfplanes_disjoint(const HalfPlaneH2& h1, const HalfPlaneH2& h2,
                         double tol = 1e-12);

IdealTriangleSolve ideal_triangle_side(double alpha, double beta);
// The three closed forms tied to the ideal-vertex triangle.
double ideal_triangle_cosh(double alpha, double beta);
double ideal_triangle_sinh(double alpha, double beta);
double ideal_triangle_exp_neg(double alpha, double beta);

// Isometry S with S(0) the foot of the perpendicular from base to g and
// S(real diameter) = g. Unit-speed parametrisation of g: S(tanh(u/2)).
MoebiusMap geodesic_frame(const Geodesic& g, const PointH2& base);

Geodesic transform(const MoebiusMap& m, const Geodesic& g);
HalfPlaneH2 transform(const MoebiusMap& m, const HalfPlaneH2& h);
PointH2 transform(const MoebiusMap& m, const PointH2& p);

Complex disk_to_upper(Complex z);
Complex upper_to_disk(Complex w);

}  // namespace bending

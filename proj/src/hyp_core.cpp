#include "bending/hyp_core.hpp"

#include <algorithm>
#include <cmath>

namespace bending {

namespace {

const Complex kI{0.0, 1.0};

// Cross-ratio pieces for oriented geodesics a->b and c->d on the unit
// circle: cr = (a-c)(b-d) / ((a-d)(b-c)), which is real for concyclic
// points. Negative cr <=> the geodesics cross.
struct CrossRatio {
  double num_abs;
  double den_abs;
  bool crossing;
};

CrossRatio cross_ratio(Complex a, Complex b, Complex c, Complex d) {
  const Complex num = (a - c) * (b - d);
  const Complex den = (a - d) * (b - c);
  const double x = (num * std::conj(den)).real();
  return {std::abs(num), std::abs(den), x < 0.0};
}

}  // namespace

double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double ccw_arc(double a, double b) { return wrap_angle(b - a); }

// ---------------------------------------------------------------------------
// MoebiusMap

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (std::abs(a * d - b * c) == 0.0) {
    throw DomainError("Moebius map with vanishing determinant");
  }
}

MoebiusMap MoebiusMap::disk_automorphism(Complex a, double theta) {
  if (std::abs(a) >= 1.0) {
    throw DomainError("disk automorphism centre must lie in the unit disk");
  }
  const Complex u = std::polar(1.0, theta / 2.0);
  return MoebiusMap(u, -u * a, -std::conj(a) / u, 1.0 / u).normalized();
}

MoebiusMap MoebiusMap::translation(double d) {
  const double t = std::tanh(d / 2.0);
  return MoebiusMap(1.0, t, t, 1.0).normalized();
}

MoebiusMap MoebiusMap::rotation(double theta) {
  const Complex u = std::polar(1.0, theta / 2.0);
  return MoebiusMap(u, 0.0, 0.0, 1.0 / u);
}

MoebiusMap MoebiusMap::cayley() {
  return MoebiusMap(kI, kI, -1.0, 1.0).normalized();
}

MoebiusMap MoebiusMap::from_three_points(ExtComplex z0, ExtComplex z_inf,
                                         ExtComplex z1) {
  if (z0.infinite) {
    return MoebiusMap(0.0, z1.value - z_inf.value, 1.0, -z_inf.value)
        .normalized();
  }
  if (z_inf.infinite) {
    return MoebiusMap(1.0, -z0.value, 0.0, z1.value - z0.value).normalized();
  }
  if (z1.infinite) {
    return MoebiusMap(1.0, -z0.value, 1.0, -z_inf.value).normalized();
  }
  const Complex s = z1.value - z_inf.value;
  const Complex t = z1.value - z0.value;
  return MoebiusMap(s, -z0.value * s, t, -z_inf.value * t).normalized();
}

MoebiusMap MoebiusMap::normalized() const {
  const Complex root = std::sqrt(determinant());
  return MoebiusMap(a_ / root, b_ / root, c_ / root, d_ / root);
}

MoebiusMap MoebiusMap::inverse() const {
  return MoebiusMap(d_, -b_, -c_, a_).normalized();
}

MoebiusMap MoebiusMap::operator*(const MoebiusMap& o) const {
  return MoebiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                    c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_)
      .normalized();
}

ExtComplex MoebiusMap::apply(ExtComplex z) const {
  if (z.infinite) {
    if (c_ == Complex{0.0}) return ExtComplex::infinity();
    return a_ / c_;
  }
  const Complex den = c_ * z.value + d_;
  if (den == Complex{0.0}) return ExtComplex::infinity();
  return (a_ * z.value + b_) / den;
}

Complex MoebiusMap::operator()(Complex z) const {
  const ExtComplex w = apply(z);
  if (w.infinite) throw DomainError("point is the pole of the Moebius map");
  return w.value;
}

Complex MoebiusMap::derivative(Complex z) const {
  const Complex den = c_ * z + d_;
  return determinant() / (den * den);
}

Complex MoebiusMap::second_derivative(Complex z) const {
  const Complex den = c_ * z + d_;
  return -2.0 * c_ * determinant() / (den * den * den);
}

Complex MoebiusMap::third_derivative(Complex z) const {
  const Complex den = c_ * z + d_;
  const Complex den2 = den * den;
  return 6.0 * c_ * c_ * determinant() / (den2 * den2);
}

double MoebiusMap::apply_to_angle(double theta) const {
  return wrap_angle(std::arg((*this)(std::polar(1.0, theta))));
}

// ---------------------------------------------------------------------------
// Points, geodesics, half-planes

PointH2::PointH2(Complex z) : z_(z) {
  if (!(std::abs(z) < 1.0 - kBoundaryEps)) {
    throw DomainError("point is not in the open unit disk");
  }
}

Geodesic::Geodesic(double theta1, double theta2) {
  double a = wrap_angle(theta1);
  double b = wrap_angle(theta2);
  if (a > b) std::swap(a, b);
  const double gap = b - a;
  if (!(gap > 1e-14 && gap < kTwoPi - 1e-14)) {
    throw DomainError("geodesic endpoints coincide");
  }
  p_ = a;
  q_ = b;
}

namespace {
double angle_gap(double a, double b) {
  const double d = ccw_arc(a, b);
  return std::min(d, kTwoPi - d);
}
}  // namespace

bool Geodesic::same_as(const Geodesic& o, double tol) const {
  const bool direct = angle_gap(p_, o.p_) <= tol && angle_gap(q_, o.q_) <= tol;
  const bool swapped =
      angle_gap(p_, o.q_) <= tol && angle_gap(q_, o.p_) <= tol;
  return direct || swapped;
}

HalfPlaneH2::HalfPlaneH2(Geodesic boundary, int side)
    : boundary_(boundary), side_(side >= 0 ? 1 : -1) {}

HalfPlaneH2 HalfPlaneH2::from_arc(double start, double end) {
  Geodesic g(start, end);
  return {g, wrap_angle(start) == g.p() ? 1 : -1};
}

double HalfPlaneH2::arc_start() const {
  return side_ > 0 ? boundary_.p() : boundary_.q();
}

double HalfPlaneH2::arc_end() const {
  return side_ > 0 ? boundary_.q() : boundary_.p();
}

bool HalfPlaneH2::same_as(const HalfPlaneH2& o, double tol) const {
  return angle_gap(arc_start(), o.arc_start()) <= tol &&
         angle_gap(arc_end(), o.arc_end()) <= tol;
}

// ---------------------------------------------------------------------------
// Metric quantities

double dist_h2(const PointH2& p, const PointH2& q) {
  const double ratio =
      std::abs(p.z() - q.z()) / std::abs(1.0 - std::conj(p.z()) * q.z());
  return 2.0 * std::atanh(std::min(ratio, 1.0));
}

double signed_distance(const HalfPlaneH2& h, const PointH2& p) {
  // Move p to the origin; the half-plane then subtends a visual angle
  // delta, and sinh(dist) = |cot(delta / 2)|.
  const MoebiusMap t = MoebiusMap::disk_automorphism(p.z(), 0.0);
  const double delta =
      ccw_arc(t.apply_to_angle(h.arc_start()), t.apply_to_angle(h.arc_end()));
  return -std::asinh(std::cos(delta / 2.0) / std::sin(delta / 2.0));
}

double dist_point_geodesic(const PointH2& p, const Geodesic& g) {
  return std::abs(signed_distance(HalfPlaneH2(g, 1), p));
}

double inversive_product(const Geodesic& g1, const Geodesic& g2) {
  const CrossRatio cr = cross_ratio(g1.endpoint_p(), g1.endpoint_q(),
                                    g2.endpoint_p(), g2.endpoint_q());
  const double s = cr.crossing ? -1.0 : 1.0;
  if (cr.den_abs == 0.0) return 1.0;
  const double t =
      (cr.den_abs + s * cr.num_abs) / (cr.den_abs - s * cr.num_abs);
  return std::abs(t) >= 1.0 ? std::abs(t) : t;
}

bool geodesics_cross(const Geodesic& g1, const Geodesic& g2) {
  return std::abs(inversive_product(g1, g2)) < 1.0 - kTangencyEps;
}

double geodesic_distance(const Geodesic& g1, const Geodesic& g2) {
  const CrossRatio cr = cross_ratio(g1.endpoint_p(), g1.endpoint_q(),
                                    g2.endpoint_p(), g2.endpoint_q());
  if (cr.crossing) return 0.0;
  // cosh d = (1 + x) / (1 - x) with x = tanh^2(d/2) the smaller of cr, 1/cr.
  const double x = std::min(cr.num_abs, cr.den_abs) /
                   std::max(cr.num_abs, cr.den_abs);
  return 2.0 * std::atanh(std::sqrt(x));
}

double ext_angle_halfplanes(const HalfPlaneH2& h1, const HalfPlaneH2& h2) {
  // Orient each boundary so its half-plane lies on the right; the outward
  // normals are then the tangents rotated by the same quarter turn, and
  // the exterior angle is the angle between the oriented boundaries.
  const CrossRatio cr = cross_ratio(
      std::polar(1.0, h1.arc_start()), std::polar(1.0, h1.arc_end()),
      std::polar(1.0, h2.arc_start()), std::polar(1.0, h2.arc_end()));
  if (cr.crossing) {
    // |cr| = tan^2(theta / 2)
    return 2.0 * std::atan2(std::sqrt(cr.num_abs), std::sqrt(cr.den_abs));
  }
  if (cr.num_abs <= cr.den_abs) return 0.0;  // nested or internally tangent
  // cr > 1: t = -(cr + 1)/(cr - 1) <= -1.
  const double excess = 2.0 * cr.den_abs / (cr.num_abs - cr.den_abs);
  if (excess <= kTangencyEps) return kPi;  // externally tangent / opposite
  throw DisjointError(
      "half-plane boundaries are disjoint and neither half-plane contains "
      "the other");
}

bool halfplanes_disjoint(const HalfPlaneH2& h1, const HalfPlaneH2& h2,
                         double tol) {
  // A half-plane is the hull of its ideal arc, so closed half-planes are
  // disjoint in H^2 exactly when their ideal arcs overlap at most in an
  // endpoint. The complement arc of h1 runs ccw from end1 to start1.
  const double room = kTwoPi - h1.arc_length();
  double offset = ccw_arc(h1.arc_end(), h2.arc_start());
  if (offset > kTwoPi - tol) offset = 0.0;
  return offset + h2.arc_length() <= room + tol;
}

// ---------------------------------------------------------------------------
// Triangles with one ideal vertex

namespace {
void check_ideal_triangle_angles(double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0 && alpha < kPi && beta < kPi)) {
    throw DomainError("ideal-vertex triangle angles must lie in (0, pi)");
  }
  if (alpha + beta > kPi + 1e-13) {
    throw DomainError(
        "no triangle with one ideal vertex: alpha + beta exceeds pi");
  }
}
}  // namespace

IdealTriangleSolve ideal_triangle_side(double alpha, double beta) {
  check_ideal_triangle_angles(alpha, beta);
  const double c = -(std::log(std::tan(alpha / 2.0)) +
                     std::log(std::tan(beta / 2.0)));
  return {alpha, beta, std::max(c, 0.0)};
}

double ideal_triangle_cosh(double alpha, double beta) {
  check_ideal_triangle_angles(alpha, beta);
  return (std::cos(alpha) * std::cos(beta) + 1.0) /
         (std::sin(alpha) * std::sin(beta));
}

double ideal_triangle_sinh(double alpha, double beta) {
  check_ideal_triangle_angles(alpha, beta);
  return (std::cos(alpha) + std::cos(beta)) /
         (std::sin(alpha) * std::sin(beta));
}

double ideal_triangle_exp_neg(double alpha, double beta) {
  check_ideal_triangle_angles(alpha, beta);
  return std::tan(alpha / 2.0) * std::tan(beta / 2.0);
}

// ---------------------------------------------------------------------------

MoebiusMap geodesic_frame(const Geodesic& g, const PointH2& base) {
  const MoebiusMap to_origin = MoebiusMap::disk_automorphism(base.z(), 0.0);
  const double p = to_origin.apply_to_angle(g.p());
  const double q = to_origin.apply_to_angle(g.q());
  const double arc = ccw_arc(p, q);
  const double short_arc = std::min(arc, kTwoPi - arc);
  const double mid = arc <= kPi ? p + arc / 2.0 : q + short_arc / 2.0;
  const double foot = std::asinh(std::cos(short_arc / 2.0) /
                                 std::sin(short_arc / 2.0));
  const MoebiusMap local = MoebiusMap::rotation(mid) *
                           MoebiusMap::translation(foot) *
                           MoebiusMap::rotation(kPi / 2.0);
  return to_origin.inverse() * local;
}

Geodesic transform(const MoebiusMap& m, const Geodesic& g) {
  return {m.apply_to_angle(g.p()), m.apply_to_angle(g.q())};
}

HalfPlaneH2 transform(const MoebiusMap& m, const HalfPlaneH2& h) {
  return HalfPlaneH2::from_arc(m.apply_to_angle(h.arc_start()),
                               m.apply_to_angle(h.arc_end()));
}

PointH2 transform(const MoebiusMap& m, const PointH2& p) {
  return PointH2(m(p.z()));
}

Complex disk_to_upper(Complex z) { return kI * (1.0 + z) / (1.0 - z); }

Complex upper_to_disk(Complex w) { return (w - kI) / (w + kI); }

}  // namespace bending

#include <cmath>
#include <random>

#include "bending/hyp_core.hpp"
#include "doctest.h"

using namespace bending;

namespace {

// log 3 = acosh(5/3)
constexpr double kLog3 = 1.09861228866810969;

MoebiusMap random_automorphism(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Complex a = std::polar(0.95 * std::sqrt(u(rng)), kTwoPi * u(rng));
  return MoebiusMap::disk_automorphism(a, kTwoPi * u(rng));
}

PointH2 random_point(std::mt19937_64& rng, double rmax = 0.95) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = rmax * std::sqrt(u(rng));
  return PointH2(std::polar(r, kTwoPi * u(rng)));
}

Geodesic random_geodesic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (;;) {
    const double a = u(rng), b = u(rng);
    if (std::abs(a - b) > 1e-6) return Geodesic(a, b);
  }
}

bool interleaved(const Geodesic& g, const Geodesic& h) {
  const bool p_in = g.p() < h.p() && h.p() < g.q();
  const bool q_in = g.p() < h.q() && h.q() < g.q();
  return p_in != q_in;
}

}  // namespace

TEST_CASE("moebius maps act projectively") {
  const MoebiusMap id;
  const Complex z(0.3, 0.1);
  CHECK(std::abs(id(z) - z) == 0.0);

  const MoebiusMap inv(0.0, 1.0, 1.0, 0.0);  // z -> 1/z
  const ExtComplex w = inv.apply(ExtComplex::infinity());
  CHECK(w.is_finite());
  CHECK(std::abs(w.value) == 0.0);
  CHECK(inv.apply(0.0).infinite);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const MoebiusMap m(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                       Complex(u(rng), u(rng)), Complex(u(rng), u(rng)));
    const MoebiusMap n = m.normalized();
    CHECK(std::abs(std::abs(n.determinant()) - 1.0) < 1e-12);
    const Complex p(u(rng), u(rng));
    CHECK(std::abs(n.inverse()(n(p)) - p) < 1e-10 * (1.0 + std::abs(p)));
    const MoebiusMap e = n * n.inverse();
    CHECK(std::abs(e(p) - p) < 1e-10 * (1.0 + std::abs(p)));
  }
}

TEST_CASE("moebius composition is associative") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const MoebiusMap a = random_automorphism(rng);
    const MoebiusMap b = random_automorphism(rng);
    const MoebiusMap c = random_automorphism(rng);
    const Complex z = random_point(rng).z();
    CHECK(std::abs(((a * b) * c)(z) - (a * (b * c))(z)) < 1e-12);
    CHECK(std::abs((a * b)(z) - a(b(z))) < 1e-12);
  }
}

TEST_CASE("three-point normalisation") {
  const Complex z0(0.2, 0.4), zi(-1.0, 0.3), z1(0.5, -0.7);
  const MoebiusMap m = MoebiusMap::from_three_points(z0, zi, z1);
  CHECK(std::abs(m(z0)) < 1e-14);
  CHECK(m.apply(zi).infinite);
  CHECK(std::abs(m(z1) - 1.0) < 1e-14);
  const MoebiusMap n =
      MoebiusMap::from_three_points(z0, ExtComplex::infinity(), z1);
  CHECK(std::abs(n(z1) - 1.0) < 1e-14);
  CHECK(n.apply(ExtComplex::infinity()).infinite);
}

TEST_CASE("moebius derivatives match difference quotients") {
  std::mt19937_64 rng(3);
  const MoebiusMap m = random_automorphism(rng);
  const Complex z(0.1, -0.2);
  const double h = 1e-5;
  const Complex fd = (m(z + h) - m(z - h)) / (2.0 * h);
  CHECK(std::abs(fd - m.derivative(z)) < 1e-8);
  const Complex fd2 =
      (m.derivative(z + h) - m.derivative(z - h)) / (2.0 * h);
  CHECK(std::abs(fd2 - m.second_derivative(z)) < 1e-7);
  const Complex fd3 =
      (m.second_derivative(z + h) - m.second_derivative(z - h)) / (2.0 * h);
  CHECK(std::abs(fd3 - m.third_derivative(z)) < 1e-6);
}

TEST_CASE("points must lie in the open disk") {
  CHECK_THROWS_AS(PointH2(1.0), DomainError);
  CHECK_THROWS_AS(PointH2(Complex(0.0, 1.0 - 1e-15)), DomainError);
  CHECK_NOTHROW(PointH2(0.999999));
  CHECK_THROWS_AS(Geodesic(1.0, 1.0 + kTwoPi), DomainError);
}

TEST_CASE("hyperbolic distance") {
  CHECK(dist_h2(PointH2(0.0), PointH2(0.0)) == 0.0);
  CHECK(dist_h2(PointH2(0.0), PointH2(0.5)) == doctest::Approx(kLog3).epsilon(1e-15));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const PointH2 p = random_point(rng), q = random_point(rng),
                  s = random_point(rng);
    const MoebiusMap m = random_automorphism(rng);
    const double d = dist_h2(p, q);
    CHECK(std::abs(dist_h2(transform(m, p), transform(m, q)) - d) <
          1e-10 * (1.0 + d));
    CHECK(std::abs(dist_h2(q, p) - d) < 1e-12);
    CHECK(dist_h2(p, s) <= dist_h2(p, q) + dist_h2(q, s) + 1e-12);
  }
}

TEST_CASE("distance from a point to a geodesic") {
  // Geodesic perpendicular to the diameter in direction psi at Euclidean
  // radius rho: its closest point to 0 is rho e^{i psi}.
  for (double rho : {0.1, 0.5, 0.9}) {
    for (double psi : {0.0, 1.0, 4.0}) {
      const double x = dist_h2(PointH2(0.0), PointH2(rho));
      const double half = std::acos(std::tanh(x));
      const Geodesic g(psi - half, psi + half);
      CHECK(dist_point_geodesic(PointH2(0.0), g) ==
            doctest::Approx(x).epsilon(1e-12));
      CHECK(dist_point_geodesic(PointH2(std::polar(rho, psi)), g) < 1e-12);
    }
  }
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Geodesic g = random_geodesic(rng);
    const PointH2 p = random_point(rng, 0.9);
    const MoebiusMap m = random_automorphism(rng);
    const double d = dist_point_geodesic(p, g);
    CHECK(std::abs(dist_point_geodesic(transform(m, p), transform(m, g)) - d) <
          1e-10 * (1.0 + d));
  }
}

TEST_CASE("signed distance sides") {
  const HalfPlaneH2 lower = HalfPlaneH2::from_arc(kPi, kTwoPi);
  CHECK(signed_distance(lower, PointH2(Complex(0.0, -0.5))) > 0.0);
  CHECK(signed_distance(lower, PointH2(Complex(0.0, 0.5))) < 0.0);
  CHECK(std::abs(signed_distance(lower, PointH2(0.3))) < 1e-15);
  CHECK(signed_distance(lower, PointH2(Complex(0.0, -0.5))) ==
        doctest::Approx(kLog3));
  CHECK(lower.complement().arc_start() == doctest::Approx(0.0));
}

TEST_CASE("inversive product") {
  const Geodesic g(0.0, kPi), h(kPi / 2, 3 * kPi / 2);
  CHECK(inversive_product(g, g) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(inversive_product(g, h)) < 1e-15);
  CHECK(geodesics_cross(g, h));
  CHECK_FALSE(geodesics_cross(g, Geodesic(0.0, 1.0)));  // asymptotic

  // Disjoint pair: acosh(t) against the sampled minimum of the distance
  // from points of one geodesic to the other.
  std::mt19937_64 rng(8);
  int checked = 0;
  while (checked < 50) {
    const Geodesic a = random_geodesic(rng), b = random_geodesic(rng);
    const double t = inversive_product(a, b);
    if (t < 1.05) continue;
    const MoebiusMap f = geodesic_frame(a, PointH2(0.0));
    auto d = [&](double u) {
      return dist_point_geodesic(PointH2(f(std::tanh(u / 2.0))), b);
    };
    double lo = -30.0, hi = 30.0;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (d(m1) < d(m2)) hi = m2; else lo = m1;
    }
    CHECK(std::abs(std::acosh(t) - d(0.5 * (lo + hi))) < 1e-8);
    CHECK(std::abs(geodesic_distance(a, b) - std::acosh(t)) < 1e-8);
    ++checked;
  }
}

TEST_CASE("crossing test agrees with endpoint interleaving") {
  std::mt19937_64 rng(21);
  int agree = 0;
  for (int i = 0; i < 10000; ++i) {
    const Geodesic a = random_geodesic(rng), b = random_geodesic(rng);
    agree += geodesics_cross(a, b) == interleaved(a, b);
  }
  CHECK(agree == 10000);
}

TEST_CASE("exterior angle between half-planes") {
  const HalfPlaneH2 h1 = HalfPlaneH2::from_arc(0.0, kPi);
  CHECK(ext_angle_halfplanes(h1, h1) == 0.0);
  for (double psi : {0.3, 1.0, kPi / 2, 2.5}) {
    const HalfPlaneH2 h2 = HalfPlaneH2::from_arc(psi, psi + kPi);
    CHECK(ext_angle_halfplanes(h1, h2) == doctest::Approx(psi).epsilon(1e-12));
    CHECK(ext_angle_halfplanes(h2, h1) == doctest::Approx(psi).epsilon(1e-12));
  }
  // Nested with a shared endpoint, and strictly nested.
  CHECK(ext_angle_halfplanes(h1, HalfPlaneH2::from_arc(0.0, 1.0)) == 0.0);
  CHECK(ext_angle_halfplanes(h1, HalfPlaneH2::from_arc(0.5, 1.0)) == 0.0);
  // Opposite sides of one geodesic, and externally tangent.
  CHECK(ext_angle_halfplanes(h1, h1.complement()) == doctest::Approx(kPi));
  CHECK(ext_angle_halfplanes(h1, HalfPlaneH2::from_arc(kPi, 4.0)) ==
        doctest::Approx(kPi));
  CHECK_THROWS_AS(ext_angle_halfplanes(h1, HalfPlaneH2::from_arc(4.0, 5.0)),
                  DisjointError);
  CHECK(halfplanes_disjoint(h1, HalfPlaneH2::from_arc(4.0, 5.0)));
  CHECK(halfplanes_disjoint(h1, HalfPlaneH2::from_arc(kPi, 4.0)));
  CHECK_FALSE(halfplanes_disjoint(h1, HalfPlaneH2::from_arc(3.0, 4.0)));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  int done = 0;
  while (done < 1000) {
    const HalfPlaneH2 a = HalfPlaneH2::from_arc(u(rng), u(rng));
    const HalfPlaneH2 b = HalfPlaneH2::from_arc(u(rng), u(rng));
    if (!geodesics_cross(a.boundary(), b.boundary())) continue;
    const MoebiusMap m = random_automorphism(rng);
    CHECK(std::abs(ext_angle_halfplanes(transform(m, a), transform(m, b)) -
                   ext_angle_halfplanes(a, b)) < 1e-10);
    CHECK(std::abs(std::abs(std::cos(ext_angle_halfplanes(a, b))) -
                   std::abs(inversive_product(a.boundary(), b.boundary()))) <
          1e-10);
    ++done;
  }
}

TEST_CASE("triangle with one ideal vertex") {
  CHECK(ideal_triangle_side(kPi / 3, kPi / 3).c ==
        doctest::Approx(kLog3).epsilon(1e-14));
  CHECK(std::acosh(5.0 / 3.0) == doctest::Approx(kLog3).epsilon(1e-14));
  CHECK(ideal_triangle_side(kPi / 2, kPi / 2).c == doctest::Approx(0.0));
  CHECK_THROWS_AS(ideal_triangle_side(2.0, 1.5), DomainError);
  CHECK_THROWS_AS(ideal_triangle_side(0.0, 1.0), DomainError);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = kPi * (1e-3 + 0.998 * u(rng));
    const double b = (kPi - a) * (1e-3 + 0.998 * u(rng));
    const double c = ideal_triangle_side(a, b).c;
    CHECK(std::abs(std::exp(-c) - ideal_triangle_exp_neg(a, b)) < 1e-12);
    const double ch = ideal_triangle_cosh(a, b);
    const double sh = ideal_triangle_sinh(a, b);
    CHECK(std::abs(sh * sh + 1.0 - ch * ch) < 1e-10 * ch * ch);
  }
}

TEST_CASE("geodesic frames") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const Geodesic g = random_geodesic(rng);
    const PointH2 base = random_point(rng, 0.8);
    const MoebiusMap s = geodesic_frame(g, base);
    const PointH2 foot(s(0.0));
    CHECK(dist_point_geodesic(foot, g) < 1e-10);
    CHECK(std::abs(dist_h2(base, foot) - dist_point_geodesic(base, g)) < 1e-9);
    const Geodesic image = transform(s, Geodesic(0.0, kPi));
    CHECK(image.same_as(g, 1e-9));
    // Unit speed.
    CHECK(dist_h2(PointH2(s(0.0)), PointH2(s(std::tanh(0.35)))) ==
          doctest::Approx(0.7).epsilon(1e-10));
  }
}

TEST_CASE("model conversion") {
  CHECK(std::abs(disk_to_upper(0.0) - Complex(0.0, 1.0)) < 1e-15);
  const Complex z(0.2, -0.4);
  CHECK(std::abs(upper_to_disk(disk_to_upper(z)) - z) < 1e-15);
  CHECK(std::abs(MoebiusMap::cayley()(z) - disk_to_upper(z)) < 1e-15);
}

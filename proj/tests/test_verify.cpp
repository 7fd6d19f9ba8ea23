#include <cmath>
#include <random>

#include "bending/bounds.hpp"
#include "bending/verify.hpp"
#include "doctest.h"

using namespace bending;

namespace {

MoebiusMap random_moebius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const MoebiusMap m(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                       Complex(u(rng), u(rng)), Complex(u(rng), u(rng)));
    if (std::abs(m.determinant()) > 0.1) return m.normalized();
  }
}

constexpr double kQuarterPi = kPi / 4.0;

}  // namespace

TEST_CASE("sampled lemma configurations satisfy the hypotheses") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const LemmaConfig cfg = sample_lemma_config(0.5, 0.5, seed);
    std::string why;
    CHECK_MESSAGE(lemma_config_valid(cfg, &why), why);
    CHECK(std::abs(cfg.z1.z()) == 0.0);
    CHECK(signed_distance(cfg.H1, cfg.z1) == doctest::Approx(0.0));
    CHECK(std::abs(signed_distance(cfg.H2, cfg.z2)) < 1e-9);
    CHECK(std::abs(signed_distance(cfg.H3, cfg.z3)) < 1e-9);
    CHECK(dist_h2(cfg.z1, cfg.z2) <= 0.5 + 1e-12);
    CHECK(dist_h2(cfg.z1, cfg.z3) <= 0.5 + 1e-12);
    CHECK(halfplanes_disjoint(cfg.H1, cfg.H3));
    CHECK(halfplanes_disjoint(cfg.H2, cfg.H3));
    CHECK(signed_distance(cfg.H2, cfg.z1) <= 1e-12);
    CHECK(signed_distance(cfg.H1, cfg.z2) <= 1e-12);
  }
  const LemmaConfig a = sample_lemma_config(0.7, 0.3, 99);
  const LemmaConfig b = sample_lemma_config(0.7, 0.3, 99);
  CHECK(a.H2.same_as(b.H2, 0.0));
  CHECK(a.H3.same_as(b.H3, 0.0));
  CHECK(a.z2.z() == b.z2.z());
  CHECK_THROWS_AS(sample_lemma_config(2.0, 2.0, 1), DomainError);
}

TEST_CASE("lemma check") {
  LemmaConfig cfg = sample_lemma_config(0.5, 0.5, 3);
  cfg.H2 = cfg.H1;
  cfg.z2 = cfg.z1;
  const LemmaCheck c = check_lemma_tech(cfg);
  CHECK(c.intersects);
  CHECK(c.angle == 0.0);
  CHECK(c.pass);
  CHECK(c.bound == doctest::Approx(c_L(0.5, 0.5).value));

  // Violated hypothesis: H3 meets H1.
  LemmaConfig far = sample_lemma_config(0.5, 0.5, 4);
  far.H3 = far.H1;
  CHECK_FALSE(lemma_config_valid(far));
  CHECK_THROWS_AS(check_lemma_tech(far), ConfigInvalid);
}

TEST_CASE("lemma trials find no violations") {
  for (double L : {0.2, 0.8}) {
    const double r = std::asinh(1.0 / std::sinh(L));
    const VerificationReport rep = run_lemma_trials(L, r, 2000, 17);
    CHECK(rep.trials == 2000);
    CHECK(rep.violations == 0);
    CHECK(rep.max_observed <= rep.bound_value + 1e-9);
    CHECK(rep.max_observed > 0.0);
    CHECK(rep.bound_value == doctest::Approx(kPi));
  }
  const auto a = run_lemma_trials(0.5, 0.5, 300, 7);
  const auto b = run_lemma_trials(0.5, 0.5, 300, 7);
  CHECK(a.max_observed == b.max_observed);
}

TEST_CASE("case function") {
  for (double L : {0.2, 0.7, 1.5}) {
    const double p2 = phi2hat(L);
    CHECK(std::tan(p2 / 2.0) == doctest::Approx(1.0 / std::sinh(L)));
    CHECK(case_function_f(0.0, L, p2) == 0.0);
    CHECK(std::abs(case_function_first(p2 / 2, L) - kPi / 2) < 1e-12);
    CHECK(std::abs(case_function_second(p2 / 2, L) - kPi / 2) < 1e-12);
    CHECK(std::abs(case_function_f(p2, L, p2) - kPi) < 1e-12);
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double v = case_function_f(p2 * i / 1000.0, L, p2);
      CHECK(v - prev > -1e-12);
      prev = v;
    }
    for (double frac : {0.1, 0.5, 0.9, 1.0}) {
      const double r = frac * std::asinh(1.0 / std::sinh(L));
      const double p3 = 2.0 * std::atan(1.0 / std::sinh(r));
      CHECK(std::abs(case_function_f(kPi - p3, L, p2) - c_L(L, r).value) < 1e-12);
    }
    CHECK_THROWS_AS(case_function_f(p2 + 0.01, L, p2), DomainError);
    CHECK_THROWS_AS(case_function_f(-0.01, L, p2), DomainError);
  }
}

TEST_CASE("area lemma equality cases") {
  const double disk = area_lemma_quadrature(disk_domain(RoundDisk::disk(0.0, 1.0)), 0.0);
  CHECK(std::abs(disk - kQuarterPi) < 1e-9);
  const double half = area_lemma_quadrature(
      disk_domain(RoundDisk::half_plane(0.0, Complex(0.0, 1.0))), Complex(0.0, 1.0));
  CHECK(std::abs(half - kQuarterPi) < 1e-9);
  // Any interior point of a round disk is an equality case.
  const double off = area_lemma_quadrature(
      disk_domain(RoundDisk::disk(Complex(1.0, -2.0), 3.0)), Complex(2.5, -1.0));
  CHECK(std::abs(off - kQuarterPi) < 1e-9);
  CHECK_THROWS_AS(area_lemma_quadrature(disk_domain(RoundDisk::disk(0.0, 1.0)), 2.0),
                  DomainError);
}

TEST_CASE("area lemma on moebius images and lunes") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const AreaDomain base = disk_domain(RoundDisk::disk(0.0, 1.0));
  for (int i = 0; i < 20; ++i) {
    const MoebiusMap m = random_moebius(rng);
    const Complex z = std::polar(0.9 * u(rng), kTwoPi * u(rng));
    Complex w;
    try {
      w = m(z);
    } catch (const DomainError&) {
      continue;
    }
    const double v = area_lemma_quadrature(transformed(base, m), w, 1e-9);
    CHECK(std::abs(v - kQuarterPi) < 1e-7);
  }

  int lunes = 0;
  while (lunes < 20) {
    const double gamma = 0.2 + 2.7 * u(rng);
    const double phi0 = 0.05 + (kTwoPi - gamma - 0.1) * u(rng);
    const AreaDomain lune = lune_domain(Complex(-1.0, 0.0), Complex(1.0, 0.0), phi0, gamma);
    // Interior point: zeta on the bisecting ray.
    const Complex zeta = std::polar(0.2 + 3.0 * u(rng), phi0 + gamma * (0.1 + 0.8 * u(rng)));
    const Complex z = (Complex(-1.0, 0.0) - zeta) / (1.0 - zeta);
    const double v = area_lemma_quadrature(lune, z, 1e-9);
    CHECK(v <= kQuarterPi + 1e-8);
    CHECK(v > 0.0);
    // Moebius invariance.
    const MoebiusMap m = MoebiusMap::disk_automorphism(std::polar(0.3, 1.0), 0.4);
    const double w = area_lemma_quadrature(transformed(lune, m), m(z), 1e-9);
    CHECK(std::abs(w - v) < 1e-7);
    ++lunes;
  }
}

TEST_CASE("lune geometry") {
  // gamma = pi/2 about the segment [-1, 1], sector below arg 0.
  const AreaDomain l = lune_domain(Complex(-1.0, 0.0), Complex(1.0, 0.0), kPi, kPi / 2);
  CHECK_FALSE(l.omega_star.contains(0.0));
  CHECK(l.omega_star.contains(Complex(0.0, 5.0)));
  CHECK_THROWS_AS(lune_domain(-1.0, 1.0, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(lune_domain(-1.0, 1.0, 1.0, kPi), DomainError);
}

TEST_CASE("derivative kernel") {
  const LambdaField one = [](Complex) { return Complex(1.0, 0.0); };
  const LambdaField zero = [](Complex) { return Complex(0.0, 0.0); };
  CHECK(std::abs(bers_kernel(one, 2.0) - Complex(-0.375, 0.0)) < 1e-9);
  CHECK(std::abs(bers_kernel(zero, 2.0)) == 0.0);
  CHECK_THROWS_AS(bers_kernel(one, 1.0 + 1e-7), DomainError);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Complex z = std::polar(1.2 + 8.8 * u(rng), kTwoPi * u(rng));
    const KernelSample s = bers_kernel_sample(one, z, true, 1e-10);
    const Complex ref = -6.0 / (z * z * z * z);
    CHECK(std::abs(s.reference - ref) < 1e-15 * std::abs(ref));
    CHECK(std::abs(s.value - ref) <= 1e-6 * std::abs(ref));
  }

  const double expected[][2] = {{1.5, 0.462962962962963},
                                {2.0, 0.84375},
                                {5.0, 1.3824},
                                {10.0, 1.47015},
                                {50.0, 1.49880024}};
  std::vector<Complex> pts;
  for (const auto& e : expected) pts.push_back(std::polar(e[0], 0.3));
  const LipschitzResult res = lipschitz_check(one, 1.0, pts);
  REQUIRE(res.ratios.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(res.ratios[i] - expected[i][1]) < 1e-6);
    if (i > 0) CHECK(res.ratios[i] > res.ratios[i - 1]);
  }
  CHECK(res.pass);
  CHECK(res.max_ratio <= 1.5);
  CHECK(res.ratios[3] >= 1.47);

  for (int trial = 0; trial < 3; ++trial) {
    const LambdaField lam = unimodular_field(4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0,
                                             4.0 * u(rng) - 2.0);
    CHECK(std::abs(std::abs(lam(Complex(0.3, 0.2))) - 1.0) < 1e-15);
    std::vector<Complex> sample;
    for (int i = 0; i < 20; ++i) {
      sample.push_back(std::polar(1.05 + 5.0 * u(rng), kTwoPi * u(rng)));
    }
    const LipschitzResult r = lipschitz_check(lam, 1.0, sample, 1e-6);
    CHECK(r.pass);
    CHECK(r.max_ratio <= 1.5 + 1e-6);
  }
}

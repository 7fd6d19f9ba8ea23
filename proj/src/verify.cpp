#include "bending/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "bending/bounds.hpp"
#include "bending/rng.hpp"

namespace bending {

namespace {
const Complex kI{0.0, 1.0};
constexpr double kOnBoundaryTol = 1e-9;
constexpr double kSideTol = 1e-12;
}  // namespace

// ---------------------------------------------------------------------------
// Half-plane lemma

bool lemma_config_valid(const LemmaConfig& c, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (std::sinh(c.L) * std::sinh(c.r) > 1.0 + kThresholdTol) {
    return fail("sinh(L) sinh(r) > 1");
  }
  if (!halfplanes_disjoint(c.H3, c.H1)) return fail("H3 meets H1");
  if (!halfplanes_disjoint(c.H3, c.H2)) return fail("H3 meets H2");
  if (dist_h2(c.z1, c.z2) > c.L + 1e-12) return fail("d(z1, z2) > L");
  if (dist_h2(c.z1, c.z3) > c.r + 1e-12) return fail("d(z1, z3) > r");
  if (signed_distance(c.H2, c.z1) > kSideTol) return fail("z1 inside H2");
  if (signed_distance(c.H1, c.z2) > kSideTol) return fail("z2 inside H1");
  const HalfPlaneH2* hs[] = {&c.H1, &c.H2, &c.H3};
  const PointH2* zs[] = {&c.z1, &c.z2, &c.z3};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(signed_distance(*hs[i], *zs[i])) > kOnBoundaryTol) {
      return fail(fmt::format("z{} not on the boundary of H{}", i + 1, i + 1));
    }
  }
  if (why) why->clear();
  return true;
}

namespace {

// Point on g at distance <= reach from the origin, uniform in arclength;
// false when g is out of reach.
bool point_within(const Geodesic& g, double reach, std::mt19937_64& rng,
                  PointH2& out) {
  const PointH2 origin(0.0);
  const double d0 = dist_point_geodesic(origin, g);
  if (d0 > reach) return false;
  const double umax = std::acosh(std::max(1.0, std::cosh(reach) / std::cosh(d0)));
  std::uniform_real_distribution<double> u(-umax, umax);
  out = PointH2(geodesic_frame(g, origin)(std::tanh(u(rng) / 2.0)));
  return true;
}

}  // namespace

LemmaConfig sample_lemma_config(double L, double r, std::uint64_t seed,
                                long max_rejections) {
  if (!(L > 0.0) || !(r >= 0.0) ||
      std::sinh(L) * std::sinh(r) > 1.0 + kThresholdTol) {
    throw DomainError(fmt::format(
        "lemma needs L > 0, r >= 0 and sinh(L) sinh(r) <= 1 (L = {}, r = {})",
        L, r));
  }
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const HalfPlaneH2 h1 = HalfPlaneH2::from_arc(kPi, kTwoPi);
  const PointH2 z1(0.0);

  for (long rejected = 0; rejected <= max_rejections; ++rejected) {
    // H2
    const double family = unit(rng);
    HalfPlaneH2 h2 = h1;
    if (family < 0.45) {
      const double s = (L + 1.0) * unit(rng);
      const double theta = kPi * unit(rng);
      const MoebiusMap m =
          MoebiusMap::translation(s) * MoebiusMap::rotation(theta);
      double e1 = m.apply_to_angle(0.0), e2 = m.apply_to_angle(kPi);
      if (unit(rng) < 0.5) {
        e1 = kPi - e1;  // mirror across the imaginary axis
        e2 = kPi - e2;
      }
      if (unit(rng) < 0.5) std::swap(e1, e2);
      h2 = HalfPlaneH2::from_arc(e1, e2);
    } else if (family < 0.9) {
      const double e1 = kTwoPi * unit(rng);
      const double e2 = e1 + kTwoPi * (1e-3 + (1.0 - 2e-3) * unit(rng));
      h2 = HalfPlaneH2::from_arc(e1, e2);
    }
    PointH2 z2(0.0);
    if (!point_within(h2.boundary(), L, rng, z2)) continue;

    // H3 at distance d3 <= r from the origin, facing away from it.
    const double d3 = r * unit(rng);
    const double omega = kTwoPi * unit(rng);
    const double half = std::acos(std::tanh(d3));
    const HalfPlaneH2 h3 = HalfPlaneH2::from_arc(omega - half, omega + half);
    PointH2 z3(0.0);
    if (!point_within(h3.boundary(), r, rng, z3)) continue;

    LemmaConfig cfg{L, r, h1, h2, h3, z1, z2, z3};
    if (lemma_config_valid(cfg)) return cfg;
  }
  throw RejectionBudgetExceeded(fmt::format(
      "no valid configuration after {} rejections (L = {}, r = {})",
      max_rejections, L, r));
}

LemmaCheck check_lemma_tech(const LemmaConfig& cfg) {
  LemmaCheck out;
  std::string why;
  if (!lemma_config_valid(cfg, &why)) throw ConfigInvalid(why);
  try {
    out.bound = c_L(cfg.L, cfg.r).value;
    try {
      out.angle = ext_angle_halfplanes(cfg.H1, cfg.H2);
      out.intersects = true;
    } catch (const DisjointError&) {
      out.intersects = false;
      out.angle = std::numeric_limits<double>::quiet_NaN();
    }
  } catch (const Error& e) {
    throw ConfigInvalid(e.what());
  }
  out.pass = out.intersects && out.angle <= out.bound + 1e-9;
  return out;
}

VerificationReport run_lemma_trials(double L, double r, long trials,
                                    std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.target = "halfplane-lemma";
  rep.seed = seed;
  rep.bound_value = c_L(L, r).value;
  for (long i = 0; i < trials; ++i) {
    const LemmaConfig cfg = sample_lemma_config(
        L, r, splitmix64(seed ^ static_cast<std::uint64_t>(i)));
    const LemmaCheck chk = check_lemma_tech(cfg);
    ++rep.trials;
    if (!chk.pass) ++rep.violations;
    if (chk.intersects) rep.max_observed = std::max(rep.max_observed, chk.angle);
  }
  rep.wall_time = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return rep;
}

double phi2hat(double L) {
  if (!(L > 0.0)) throw DomainError("L must be positive");
  return 2.0 * std::atan(1.0 / std::sinh(L));
}

double case_function_first(double a, double L) {
  return 2.0 * std::atan(std::exp(L) * std::tan(a / 2.0));
}

// acos(cos a - sin a sinh L), through half angles so that the value near pi
// keeps full precision.
double case_function_second(double a, double L) {
  const double s = std::sin(a / 2.0), c = std::cos(a / 2.0);
  const double sl = std::sinh(L);
  return 2.0 * std::atan2(std::sqrt(std::max(0.0, s * (s + c * sl))),
                          std::sqrt(std::max(0.0, c * (c - s * sl))));
}

double case_function_f(double a, double L, double phi2) {
  if (!(L > 0.0)) throw DomainError("L must be positive");
  if (!(a >= 0.0 && a <= phi2 + kThresholdTol)) {
    throw DomainError(
        fmt::format("a = {} outside [0, phi2hat] = [0, {}]", a, phi2));
  }
  a = std::min(a, phi2);
  if (std::abs(a - phi2) <= 8.0 * std::numeric_limits<double>::epsilon() * phi2) {
    return kPi;
  }
  return a <= phi2 / 2.0 ? case_function_first(a, L)
                         : case_function_second(a, L);
}

// ---------------------------------------------------------------------------
// Regions and rays

bool CircularRegion::contains(Complex z) const {
  if (kind == Kind::Intersection) {
    return std::all_of(disks.begin(), disks.end(),
                       [&](const RoundDisk& d) { return d.contains(z); });
  }
  return std::any_of(disks.begin(), disks.end(),
                     [&](const RoundDisk& d) { return d.contains(z); });
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Intervals = std::vector<std::pair<double, double>>;

// {s > 0 : q(z + s u) < 0} for the disk d.
Intervals ray_in_disk(const RoundDisk& d, Complex z, Complex u) {
  const double a = d.A();
  const double b = d.A() * (std::conj(z) * u).real() -
                   (std::conj(d.B()) * u).real();
  const double c = d.q(z);
  Intervals out;
  auto push = [&](double lo, double hi) {
    lo = std::max(lo, 0.0);
    if (hi > lo) out.emplace_back(lo, hi);
  };
  if (a == 0.0) {
    // 2 b s + c < 0
    if (b == 0.0) {
      if (c < 0.0) push(0.0, kInf);
    } else if (b > 0.0) {
      push(0.0, -c / (2.0 * b));
    } else {
      push(-c / (2.0 * b), kInf);
    }
    return out;
  }
  const double disc = b * b - a * c;
  if (disc <= 0.0) {
    if (a < 0.0) push(0.0, kInf);
    return out;
  }
  const double sq = std::sqrt(disc);
  const double qq = -(b + std::copysign(sq, b));
  double s1 = qq / a, s2 = c / qq;
  if (s1 > s2) std::swap(s1, s2);
  if (a > 0.0) {
    push(s1, s2);
  } else {
    push(0.0, s1);
    push(s2, kInf);
  }
  return out;
}

Intervals intersect(const Intervals& x, const Intervals& y) {
  Intervals out;
  for (auto [a, b] : x) {
    for (auto [c, d] : y) {
      const double lo = std::max(a, c), hi = std::min(b, d);
      if (hi > lo) out.emplace_back(lo, hi);
    }
  }
  return out;
}

Intervals unite(Intervals x) {
  std::sort(x.begin(), x.end());
  Intervals out;
  for (auto iv : x) {
    if (!out.empty() && iv.first <= out.back().second) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

Intervals ray_in_region(const CircularRegion& reg, Complex z, Complex u) {
  if (reg.disks.empty()) return {};
  if (reg.kind == CircularRegion::Kind::Intersection) {
    Intervals acc{{0.0, kInf}};
    for (const RoundDisk& d : reg.disks) acc = intersect(acc, ray_in_disk(d, z, u));
    return acc;
  }
  Intervals all;
  for (const RoundDisk& d : reg.disks) {
    const Intervals iv = ray_in_disk(d, z, u);
    all.insert(all.end(), iv.begin(), iv.end());
  }
  return unite(std::move(all));
}

// Points where two boundary circles meet.
std::vector<Complex> boundary_crossings(const RoundDisk& d1,
                                        const RoundDisk& d2) {
  std::vector<Complex> pts;
  if (d1.is_line() && d2.is_line()) {
    // Re(conj(B) z) = C / 2 for both.
    const Complex b1 = d1.B(), b2 = d2.B();
    const double det = b1.real() * b2.imag() - b1.imag() * b2.real();
    if (std::abs(det) < 1e-15) return pts;
    const double r1 = d1.C() / 2.0, r2 = d2.C() / 2.0;
    pts.emplace_back((r1 * b2.imag() - r2 * b1.imag()) / det,
                     (b1.real() * r2 - b2.real() * r1) / det);
    return pts;
  }
  const RoundDisk& circ = d1.is_line() ? d2 : d1;
  const RoundDisk& other = d1.is_line() ? d1 : d2;
  const Complex c = circ.centre();
  const double rad = circ.radius();
  // other.q(c + rad e^{i t}) = alpha cos t + beta sin t + gamma
  const double alpha = 2.0 * rad * (other.A() * c.real() - other.B().real());
  const double beta = 2.0 * rad * (other.A() * c.imag() - other.B().imag());
  const double gamma = other.q(c) + other.A() * rad * rad;
  const double amp = std::hypot(alpha, beta);
  if (amp == 0.0 || std::abs(gamma) > amp) return pts;
  const double base = std::atan2(beta, alpha);
  const double off = std::acos(std::clamp(-gamma / amp, -1.0, 1.0));
  pts.push_back(c + std::polar(rad, base + off));
  pts.push_back(c + std::polar(rad, base - off));
  return pts;
}

// Directions from z at which the angular integrand fails to be smooth.
std::vector<double> kink_directions(const CircularRegion& reg, Complex z) {
  std::vector<double> dirs;
  for (const RoundDisk& d : reg.disks) {
    if (d.is_line()) {
      const double along = std::arg(d.B() * kI);
      dirs.push_back(wrap_angle(along));
      dirs.push_back(wrap_angle(along + kPi));
    } else {
      const Complex v = d.centre() - z;
      const double dist = std::abs(v);
      if (dist > d.radius()) {
        const double spread = std::asin(d.radius() / dist);
        dirs.push_back(wrap_angle(std::arg(v) + spread));
        dirs.push_back(wrap_angle(std::arg(v) - spread));
      }
    }
  }
  for (std::size_t i = 0; i < reg.disks.size(); ++i) {
    for (std::size_t j = i + 1; j < reg.disks.size(); ++j) {
      for (Complex p : boundary_crossings(reg.disks[i], reg.disks[j])) {
        dirs.push_back(wrap_angle(std::arg(p - z)));
      }
    }
  }
  dirs.push_back(0.0);
  dirs.push_back(kTwoPi);
  std::sort(dirs.begin(), dirs.end());
  std::vector<double> out;
  for (double d : dirs) {
    if (out.empty() || d - out.back() > 1e-13) out.push_back(d);
  }
  return out;
}

}  // namespace

AreaDomain disk_domain(const RoundDisk& omega) {
  return {CircularRegion{CircularRegion::Kind::Intersection,
                         {omega.complement()}},
          [omega](Complex z) { return omega.area_form(z); }};
}

AreaDomain lune_domain(Complex p, Complex q, double phi0, double gamma) {
  if (!(gamma > 0.0 && gamma < kPi)) {
    throw DomainError("lune angle must lie in (0, pi)");
  }
  phi0 = wrap_angle(phi0);
  if (!(phi0 > 0.0 && phi0 + gamma < kTwoPi)) {
    throw DomainError("lune sector must avoid arg 0 (the image of infinity)");
  }
  if (std::abs(p - q) == 0.0) throw DomainError("lune vertices coincide");
  // zeta = (z - p)/(z - q); its inverse pulls the sector's sides back.
  const MoebiusMap zeta(1.0, -p, 1.0, -q);
  const MoebiusMap back = zeta.inverse();
  const RoundDisk side1 =
      RoundDisk::half_plane(0.0, kI * std::polar(1.0, phi0)).transformed(back);
  const RoundDisk side2 =
      RoundDisk::half_plane(0.0, -kI * std::polar(1.0, phi0 + gamma))
          .transformed(back);
  const double mu = kPi / gamma;
  const Complex turn = std::polar(1.0, -(phi0 + gamma / 2.0));
  auto rho = [=](Complex z) {
    // omega = (turn * zeta)^mu maps the lune onto the right half-plane.
    const Complex zt = (z - p) / (z - q);
    const Complex w = std::pow(turn * zt, mu);
    const Complex dzeta = (p - q) / ((z - q) * (z - q));
    const Complex dw = mu * w / zt * dzeta;
    if (!(w.real() > 0.0)) throw DomainError("point is not inside the lune");
    return std::norm(dw) / (w.real() * w.real());
  };
  return {CircularRegion{CircularRegion::Kind::Union,
                         {side1.complement(), side2.complement()}},
          rho};
}

AreaDomain transformed(const AreaDomain& d, const MoebiusMap& m) {
  CircularRegion reg{d.omega_star.kind, {}};
  for (const RoundDisk& disk : d.omega_star.disks) {
    reg.disks.push_back(disk.transformed(m));
  }
  const MoebiusMap inv = m.inverse();
  auto base = d.rho_omega;
  return {reg, [base, inv](Complex w) {
            return base(inv(w)) * std::norm(inv.derivative(w));
          }};
}

double area_lemma_quadrature(const AreaDomain& domain, Complex z, double tol) {
  if (!(tol >= 1e-12)) throw DomainError("quadrature tolerance too small");
  if (domain.omega_star.contains(z)) {
    throw DomainError("evaluation point lies in the integration region");
  }
  auto g = [&](double theta) {
    const Complex u = std::polar(1.0, theta);
    double acc = 0.0;
    for (auto [a, b] : ray_in_region(domain.omega_star, z, u)) {
      acc += 1.0 / (a * a) - (std::isinf(b) ? 0.0 : 1.0 / (b * b));
    }
    return 0.5 * acc;
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const std::vector<double> cuts = kink_directions(domain.omega_star, z);
  double total = 0.0;
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // Chord lengths vanish like a square root at tangent directions; the
    // cosine map theta = a + (b - a)(1 - cos(pi t))/2 smooths that out.
    const double a = cuts[i], w = cuts[i + 1] - cuts[i];
    auto h = [&](double t) {
      return g(a + 0.5 * w * (1.0 - std::cos(kPi * t))) * 0.5 * w * kPi *
             std::sin(kPi * t);
    };
    double err = 0.0;
    total += GK::integrate(h, 0.0, 1.0, 25, tol * 1e-2, &err);
    err_total += err;
  }
  if (!(err_total <= tol * std::max(1.0, std::abs(total))) ||
      !std::isfinite(total)) {
    throw QuadratureNonConvergent(fmt::format(
        "angular quadrature error estimate {} above tolerance {}", err_total,
        tol));
  }
  return total / domain.rho_omega(z);
}

// ---------------------------------------------------------------------------
// Kernel

Complex bers_kernel(const LambdaField& lambda, Complex z, double tol) {
  if (!(std::abs(z) > 1.0 + 1e-6)) {
    throw DomainError("kernel point must satisfy |z| > 1 + 1e-6");
  }
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  // Inner radial integral by adaptive Gauss-Kronrod; outer periodic
  // trapezoid rule in the angle, doubled until it settles.
  auto radial = [&](double phi) {
    const Complex e = std::polar(1.0, phi);
    auto f = [&](double s) {
      const Complex d = s * e - z;
      const Complex d2 = d * d;
      return lambda(s * e) * s / (d2 * d2);
    };
    return GK::integrate(f, 0.0, 1.0, 15, tol * 1e-2);
  };
  int n = 32;
  Complex sum = 0.0;
  for (int j = 0; j < n; ++j) sum += radial(kTwoPi * j / n);
  Complex prev = sum * (kTwoPi / n);
  for (int level = 0; level < 10; ++level) {
    for (int j = 0; j < n; ++j) sum += radial(kTwoPi * (j + 0.5) / n);
    n *= 2;
    const Complex cur = sum * (kTwoPi / n);
    if (std::abs(cur - prev) <= tol * std::max(std::abs(cur), 1e-300) ||
        std::abs(cur - prev) < 1e-300) {
      return -(6.0 / kPi) * cur;
    }
    prev = cur;
  }
  throw QuadratureNonConvergent("angular trapezoid rule did not settle");
}

KernelSample bers_kernel_sample(const LambdaField& lambda, Complex z,
                                bool lambda_is_one, double tol) {
  KernelSample s;
  s.z = z;
  s.value = bers_kernel(lambda, z, tol);
  const Complex z2 = z * z;
  s.reference = lambda_is_one
                    ? -6.0 / (z2 * z2)
                    : Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  const double m = std::norm(z) - 1.0;
  s.norm = std::abs(s.value) * m * m / 4.0;
  return s;
}

LipschitzResult lipschitz_check(const LambdaField& lambda, double lambda_sup,
                                const std::vector<Complex>& points,
                                double tol) {
  if (!(lambda_sup > 0.0)) throw DomainError("lambda sup norm must be > 0");
  LipschitzResult res;
  for (Complex z : points) {
    const double ratio =
        bers_kernel_sample(lambda, z, false, 1e-10).norm / lambda_sup;
    res.ratios.push_back(ratio);
    res.max_ratio = std::max(res.max_ratio, ratio);
  }
  res.pass = res.max_ratio <= 1.5 + tol;
  return res;
}

LambdaField unimodular_field(double a, double b, double c) {
  return [=](Complex xi) {
    return std::polar(1.0, a * xi.real() + b * xi.imag() + c * std::norm(xi));
  };
}

}  // namespace bending

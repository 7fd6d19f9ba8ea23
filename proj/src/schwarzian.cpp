#include "bending/schwarzian.hpp"

#include <algorithm>
#include <cmath>

namespace bending {

namespace {

const Complex kI{0.0, 1.0};

// Jet of outer o inner, given outer's jet at inner(z).
Jet chain(const Jet& outer, const Jet& inner) {
  const Complex g1 = inner.d1;
  const Complex g2 = inner.d2;
  const Complex g3 = inner.d3;
  return {outer.f, outer.d1 * g1, outer.d2 * g1 * g1 + outer.d1 * g2,
          outer.d3 * g1 * g1 * g1 + 3.0 * outer.d2 * g1 * g2 +
              outer.d1 * g3};
}

Jet moebius_jet(const MoebiusMap& m, Complex z) {
  return {m(z), m.derivative(z), m.second_derivative(z),
          m.third_derivative(z)};
}

double distance_to_edge(Model model, Complex z) {
  return model == Model::Disk ? 1.0 - std::abs(z) : z.imag();
}

void require_domain(Model model, Complex z) {
  if (!in_model_domain(model, z)) {
    throw DomainError("point outside the model domain");
  }
}

}  // namespace

bool in_model_domain(Model model, Complex z) {
  if (model == Model::Disk) return std::abs(z) < 1.0 - kBoundaryEps;
  return z.imag() > 0.0;
}

double area_form(Model model, Complex z) {
  require_domain(model, z);
  if (model == Model::Disk) {
    const double s = 1.0 - std::norm(z);
    return 4.0 / (s * s);
  }
  return 1.0 / (z.imag() * z.imag());
}

// ---------------------------------------------------------------------------

AnalyticMap::AnalyticMap(std::string name, Model model, bool closed,
                         JetFn jet, ValueFn f)
    : name_(std::move(name)),
      model_(model),
      closed_form_(closed),
      jet_(std::move(jet)),
      value_(std::move(f)) {}

AnalyticMap AnalyticMap::closed_form(std::string name, Model model,
                                     JetFn jet) {
  ValueFn f = [jet](Complex z) { return jet(z).f; };
  return AnalyticMap(std::move(name), model, true, std::move(jet),
                     std::move(f));
}

AnalyticMap AnalyticMap::finite_difference(std::string name, Model model,
                                           ValueFn f) {
  JetFn jet = [f, model](Complex z) { return contour_jet(f, model, z); };
  return AnalyticMap(std::move(name), model, false, std::move(jet),
                     std::move(f));
}

Jet AnalyticMap::jet(Complex z) const { return jet_(z); }

Complex AnalyticMap::operator()(Complex z) const { return value_(z); }

Jet contour_jet(const AnalyticMap::ValueFn& f, Model model, Complex z) {
  // f^(n)(z) = n! / (2 pi i) \oint f(w) / (w - z)^{n+1} dw on a circle of
  // radius h, discretised by the N-point trapezoid rule. Aliasing error
  // decays like (h / R)^N, R the distance to the nearest singularity.
  constexpr int kN = 64;
  const double h = 0.5 * distance_to_edge(model, z);
  if (!(h > 0.0)) throw DomainError("point outside the model domain");
  Complex s1, s2, s3;
  for (int j = 0; j < kN; ++j) {
    const Complex w = std::polar(1.0, kTwoPi * j / kN);
    const Complex v = f(z + h * w);
    const Complex wi = std::conj(w);
    s1 += v * wi;
    s2 += v * wi * wi;
    s3 += v * wi * wi * wi;
  }
  return {f(z), s1 / (kN * h), 2.0 * s2 / (kN * h * h),
          6.0 * s3 / (kN * h * h * h)};
}

// ---------------------------------------------------------------------------
// Registry

AnalyticMap moebius_map(const MoebiusMap& m, Model model) {
  return AnalyticMap::closed_form(
      "moebius", model, [m](Complex z) { return moebius_jet(m, z); });
}

AnalyticMap koebe() {
  return AnalyticMap::closed_form("koebe", Model::Disk, [](Complex z) {
    const Complex u = 1.0 - z;
    const Complex u2 = u * u;
    const Complex u4 = u2 * u2;
    return Jet{z / u2, (1.0 + z) / (u2 * u), 2.0 * (z + 2.0) / u4,
               6.0 * (z + 3.0) / (u4 * u)};
  });
}

namespace {
Jet power_jet(Complex w, double k) {
  const Complex p = std::pow(w, k);
  return {p, k * p / w, k * (k - 1.0) * p / (w * w),
          k * (k - 1.0) * (k - 2.0) * p / (w * w * w)};
}

void check_wedge_k(double k) {
  if (!(k > 0.0 && k <= 2.0)) {
    throw DomainError("wedge exponent must lie in (0, 2]");
  }
}
}  // namespace

AnalyticMap wedge_upper(double k) {
  check_wedge_k(k);
  return AnalyticMap::closed_form("wedge-upper", Model::UpperHalfPlane,
                                  [k](Complex z) { return power_jet(z, k); });
}

AnalyticMap wedge_disk(double k) {
  check_wedge_k(k);
  return AnalyticMap::closed_form("wedge", Model::Disk, [k](Complex z) {
    const Complex u = 1.0 - z;
    const Complex c1 = 2.0 * kI / (u * u);
    const Jet cayley{kI * (1.0 + z) / u, c1, 2.0 * c1 / u,
                     6.0 * c1 / (u * u)};
    return chain(power_jet(cayley.f, k), cayley);
  });
}

AnalyticMap exp_map(Complex a) {
  return AnalyticMap::closed_form("exp", Model::Disk, [a](Complex z) {
    const Complex e = std::exp(a * z);
    return Jet{e, a * e, a * a * e, a * a * a * e};
  });
}

AnalyticMap strip_map() {
  return AnalyticMap::closed_form("strip", Model::Disk, [](Complex z) {
    const Complex p = 1.0 + z;
    const Complex m = 1.0 - z;
    return Jet{std::log(p / m), 1.0 / p + 1.0 / m,
               -1.0 / (p * p) + 1.0 / (m * m),
               2.0 / (p * p * p) + 2.0 / (m * m * m)};
  });
}

std::vector<std::string> registered_map_names() {
  return {"moebius", "koebe", "wedge", "wedge-upper", "exp", "strip"};
}

AnalyticMap registered_map(const std::string& name,
                           const std::vector<double>& params) {
  auto want = [&](std::size_t n) {
    if (params.size() != n) {
      throw DomainError("map '" + name + "' takes " + std::to_string(n) +
                        " parameter(s)");
    }
  };
  if (name == "moebius") {
    want(3);
    return moebius_map(MoebiusMap::disk_automorphism(
        Complex(params[0], params[1]), params[2]));
  }
  if (name == "koebe") {
    want(0);
    return koebe();
  }
  if (name == "wedge") {
    want(1);
    return wedge_disk(params[0]);
  }
  if (name == "wedge-upper") {
    want(1);
    return wedge_upper(params[0]);
  }
  if (name == "exp") {
    want(1);
    return exp_map(params[0]);
  }
  if (name == "strip") {
    want(0);
    return strip_map();
  }
  throw DomainError("unknown map '" + name + "'");
}

AnalyticMap compose(const MoebiusMap& m, const AnalyticMap& f) {
  return AnalyticMap::closed_form(f.name() + "+post", f.model(),
                                  [m, f](Complex z) {
                                    const Jet inner = f.jet(z);
                                    return chain(moebius_jet(m, inner.f),
                                                 inner);
                                  });
}

AnalyticMap compose(const AnalyticMap& f, const MoebiusMap& m) {
  return AnalyticMap::closed_form(f.name() + "+pre", f.model(),
                                  [m, f](Complex z) {
                                    const Jet inner = moebius_jet(m, z);
                                    return chain(f.jet(inner.f), inner);
                                  });
}

// ---------------------------------------------------------------------------

Complex schwarzian_at(const AnalyticMap& f, Complex z) {
  const Jet j = f.jet(z);
  if (std::abs(j.d1) < 1e-14) {
    throw CriticalPointError("f' vanishes: Schwarzian undefined");
  }
  const Complex r = j.d2 / j.d1;
  return j.d3 / j.d1 - 1.5 * r * r;
}

double QuadDifferentialField::cauchy_riemann_residual(Complex z,
                                                      double h) const {
  const Complex dx = (phi_(z + h) - phi_(z - h)) / (2.0 * h);
  const Complex dy = (phi_(z + kI * h) - phi_(z - kI * h)) / (2.0 * h);
  const Complex dzbar = 0.5 * (dx + kI * dy);
  const Complex dz = 0.5 * (dx - kI * dy);
  const double scale = std::max({std::abs(dz), std::abs(phi_(z)), 1e-300});
  return std::abs(dzbar) / scale;
}

QuadDifferentialField schwarzian_field(const AnalyticMap& f) {
  return {[f](Complex z) { return schwarzian_at(f, z); }, f.model()};
}

QuadDifferentialField pullback(const QuadDifferentialField& phi,
                               const MoebiusMap& m, Model source) {
  return {[phi, m](Complex z) {
            const Complex d = m.derivative(z);
            return phi(m(z)) * d * d;
          },
          source};
}

double pointwise_norm(const QuadDifferentialField& phi, Complex z) {
  return std::abs(phi(z)) / area_form(phi.model(), z);
}

// ---------------------------------------------------------------------------

SupNormEstimate sup_norm_on_grid(const QuadDifferentialField& phi,
                                 double r_max, int n_radial, int n_angular) {
  if (!(r_max > 0.0) || n_radial < 1 || n_angular < 1) {
    throw DomainError("invalid sup-norm grid");
  }
  auto sample = [&](int i, int j) {
    const double r = std::tanh(0.5 * r_max * i / n_radial);
    const Complex z = std::polar(r, kTwoPi * j / n_angular);
    const Complex w = phi.model() == Model::Disk ? z : disk_to_upper(z);
    return pointwise_norm(phi, w);
  };

  std::vector<double> prev(n_angular), cur(n_angular);
  const double centre = sample(0, 0);
  SupNormEstimate est;
  est.n_radial = n_radial;
  est.n_angular = n_angular;
  est.levels = 1;
  est.lower = centre;
  est.samples = 1;
  double jump = 0.0;
  std::fill(prev.begin(), prev.end(), centre);
  for (int i = 1; i <= n_radial; ++i) {
    for (int j = 0; j < n_angular; ++j) {
      cur[j] = sample(i, j);
      est.lower = std::max(est.lower, cur[j]);
      jump = std::max(jump, std::abs(cur[j] - prev[j]));
    }
    for (int j = 0; j < n_angular; ++j) {
      jump = std::max(jump, std::abs(cur[j] - cur[(j + 1) % n_angular]));
    }
    est.samples += n_angular;
    std::swap(prev, cur);
  }
  est.upper = est.lower + jump;
  est.history.push_back(est.lower);
  return est;
}

SupNormEstimate sup_norm_estimate(const QuadDifferentialField& phi,
                                  const SupNormGrid& grid) {
  if (grid.max_levels < 1 || !(grid.tol > 0.0)) {
    throw DomainError("invalid sup-norm refinement settings");
  }
  int nr = grid.n_radial;
  int na = grid.n_angular;
  SupNormEstimate best = sup_norm_on_grid(phi, grid.r_max, nr, na);
  std::vector<double> history = best.history;
  long total = best.samples;
  for (int level = 2; level <= grid.max_levels; ++level) {
    nr *= 2;
    na *= 2;
    SupNormEstimate next = sup_norm_on_grid(phi, grid.r_max, nr, na);
    total += next.samples;
    history.push_back(next.lower);
    const double change = std::abs(next.lower - best.lower);
    best = next;
    best.levels = level;
    best.samples = total;
    best.history = history;
    // Absolute floor: fields that vanish identically only carry rounding.
    if (change <= std::max(grid.tol * std::abs(next.lower), 1e-13)) return best;
  }
  throw BudgetExceeded("sup-norm estimate did not settle within " +
                           std::to_string(grid.max_levels) + " levels",
                       best);
}

}  // namespace bending

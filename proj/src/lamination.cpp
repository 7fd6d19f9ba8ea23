#include "bending/lamination.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "bending/rng.hpp"

namespace bending {

namespace {

constexpr double kOnLeafTol = 1e-12;

bool inside_arc(const Geodesic& g, double x) { return g.p() < x && x < g.q(); }

// Midpoints of the gaps between consecutive endpoint angles.
std::vector<double> gap_midpoints(const std::vector<Leaf>& leaves,
                                  const std::vector<std::size_t>& idx) {
  std::vector<double> a;
  for (std::size_t i : idx) {
    a.push_back(leaves[i].geodesic.p());
    a.push_back(leaves[i].geodesic.q());
  }
  std::sort(a.begin(), a.end());
  std::vector<double> mids;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double from = a[i];
    const double len = i + 1 < a.size() ? a[i + 1] - from : kTwoPi - from + a[0];
    if (len > 1e-13) mids.push_back(wrap_angle(from + len / 2.0));
  }
  return mids;
}

// Ideal endpoints (x, y) of a geodesic crossing every indexed leaf.
bool common_transversal(const std::vector<Leaf>& leaves,
                        const std::vector<std::size_t>& idx, double& x,
                        double& y) {
  if (idx.empty()) return false;
  const std::vector<double> mids = gap_midpoints(leaves, idx);
  std::map<std::vector<bool>, double> seen;
  for (double m : mids) {
    std::vector<bool> side, flip;
    for (std::size_t i : idx) {
      const bool s = inside_arc(leaves[i].geodesic, m);
      side.push_back(s);
      flip.push_back(!s);
    }
    auto hit = seen.find(flip);
    if (hit != seen.end()) {
      x = hit->second;
      y = m;
      return true;
    }
    seen.emplace(std::move(side), m);
  }
  return false;
}

}  // namespace

FiniteLamination::FiniteLamination(std::vector<Leaf> leaves)
    : leaves_(std::move(leaves)) {
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    const double w = leaves_[i].weight;
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidLamination(
          fmt::format("leaf {} has non-positive weight {}", i, w));
    }
    for (std::size_t j = 0; j < i; ++j) {
      const Geodesic& a = leaves_[j].geodesic;
      const Geodesic& b = leaves_[i].geodesic;
      if (a.same_as(b)) {
        throw InvalidLamination(fmt::format("leaves {} and {} coincide", j, i));
      }
      if (geodesics_cross(a, b)) {
        throw InvalidLamination(fmt::format("leaves {} and {} cross", j, i));
      }
    }
  }
  find_transversal();
}

void FiniteLamination::find_transversal() {
  std::vector<std::size_t> all(leaves_.size());
  std::iota(all.begin(), all.end(), 0);
  double x = 0.0, y = 0.0;
  if (leaves_.empty()) {
    stacked_ = true;
    return;
  }
  if (!common_transversal(leaves_, all, x, y)) {
    stacked_ = false;
    // In the dual tree a set of edges lies on one path iff every three do.
    const std::size_t n = leaves_.size();
    for (std::size_t i = 0; i < n && not_stacked_reason_.empty(); ++i) {
      for (std::size_t j = i + 1; j < n && not_stacked_reason_.empty(); ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          double a = 0.0, b = 0.0;
          if (!common_transversal(leaves_, {i, j, k}, a, b)) {
            not_stacked_reason_ = fmt::format(
                "leaves {}, {} and {} have no common transversal", i, j, k);
            break;
          }
        }
      }
    }
    if (not_stacked_reason_.empty()) {
      not_stacked_reason_ = "no geodesic crosses every leaf";
    }
    return;
  }
  stacked_ = true;

  // Send x -> 0, y -> infinity; the transversal becomes a ray from 0 and a
  // leaf with endpoints u, v meets it at modulus sqrt(|u||v|).
  const Complex cx = std::polar(1.0, x);
  const Complex cy = std::polar(1.0, y);
  auto param = [&](const Geodesic& g) {
    const Complex u = (g.endpoint_p() - cx) / (g.endpoint_p() - cy);
    const Complex v = (g.endpoint_q() - cx) / (g.endpoint_q() - cy);
    return 0.5 * (std::log(std::abs(u)) + std::log(std::abs(v)));
  };
  std::vector<std::pair<double, std::size_t>> keyed;
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    keyed.emplace_back(param(leaves_[i].geodesic), i);
  }
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first - keyed[i - 1].first < 1e-12) {
      throw InvalidLamination(
          fmt::format("leaves {} and {} meet the transversal at the same point",
                      keyed[i - 1].second, keyed[i].second));
    }
  }
  for (const auto& k : keyed) order_.push_back(k.second);
}

const std::vector<std::size_t>& FiniteLamination::order() const {
  if (!stacked_) throw NotStackedError(not_stacked_reason_);
  return order_;
}

double FiniteLamination::total_weight() const {
  double s = 0.0;
  for (const Leaf& l : leaves_) s += l.weight;
  return s;
}

FiniteLamination FiniteLamination::transformed(const MoebiusMap& m) const {
  std::vector<Leaf> out;
  for (const Leaf& l : leaves_) {
    out.push_back({transform(m, l.geodesic), l.weight});
  }
  return FiniteLamination(std::move(out));
}

// ---------------------------------------------------------------------------

double transverse_measure(const FiniteLamination& mu,
                          const TransverseArc& arc) {
  double total = 0.0;
  for (const Leaf& leaf : mu.leaves()) {
    const HalfPlaneH2 h(leaf.geodesic, 1);
    const double sa = signed_distance(h, arc.a);
    const double sb = signed_distance(h, arc.b);
    const bool on_a = std::abs(sa) <= kOnLeafTol;
    const bool on_b = std::abs(sb) <= kOnLeafTol;
    if (on_a && on_b) {
      throw TangencyError("arc runs along a leaf");
    }
    if (on_a || on_b) {
      if (!arc.open) {
        throw TangencyError("closed arc ends on a leaf");
      }
      continue;
    }
    if ((sa < 0.0) != (sb < 0.0)) total += leaf.weight;
  }
  return total;
}

double norm_L(const FiniteLamination& mu, double L) {
  if (!(L > 0.0)) throw DomainError("L must be positive");
  const std::vector<std::size_t>& ord = mu.order();
  const auto& leaves = mu.leaves();
  double best = 0.0;
  for (std::size_t i = 0; i < ord.size(); ++i) {
    double run = 0.0;
    for (std::size_t j = i; j < ord.size(); ++j) {
      if (j > i && !(geodesic_distance(leaves[ord[i]].geodesic,
                                       leaves[ord[j]].geodesic) <
                     L - 1e-12)) {
        break;  // distance only grows further along the transversal
      }
      run += leaves[ord[j]].weight;
      best = std::max(best, run);
    }
  }
  return best;
}

double good_partition_bound(const GoodPartitionData& data) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < data.halfplanes.size(); ++i) {
    try {
      sum += ext_angle_halfplanes(data.halfplanes[i], data.halfplanes[i + 1]);
    } catch (const DisjointError&) {
      throw NotGoodError(
          fmt::format("half-planes {} and {} are disjoint", i, i + 1));
    }
  }
  return sum;
}

BentChain bent_chain(const std::vector<double>& lengths,
                     const std::vector<double>& bends) {
  if (lengths.empty() || bends.size() + 1 != lengths.size()) {
    throw DomainError("need one bend between each pair of segments");
  }
  BentChain chain;
  chain.bends = bends;
  MoebiusMap frame;
  chain.vertices.push_back(frame(0.0));
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0)) throw DomainError("segment lengths must be > 0");
    chain.faces.push_back(
        HalfPlaneH2::from_arc(std::arg(frame(-1.0)), std::arg(frame(1.0))));
    frame = frame * MoebiusMap::translation(lengths[i]);
    chain.vertices.push_back(frame(0.0));
    if (i < bends.size()) {
      if (!(bends[i] >= 0.0 && bends[i] < kPi)) {
        throw DomainError("bends must lie in [0, pi)");
      }
      frame = frame * MoebiusMap::rotation(bends[i]);
    }
  }
  return chain;
}

PointH2 point_on_geodesic(const Geodesic& g, double u) {
  return PointH2(geodesic_frame(g, PointH2(0.0))(std::tanh(u / 2.0)));
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

// Point at distance t from a along the geodesic ray from a through b.
PointH2 along(const PointH2& a, const PointH2& b, double t) {
  const MoebiusMap to0 = MoebiusMap::disk_automorphism(a.z(), 0.0);
  const Complex bb = to0(b.z());
  const Complex dir = bb / std::abs(bb);
  return PointH2(to0.inverse()(std::tanh(t / 2.0) * dir));
}

struct ArcTally {
  double length = 0.0;
  double mass = 0.0;
};

ArcTally tally(const FiniteLamination& mu, const std::vector<PointH2>& pts) {
  ArcTally t;
  std::vector<bool> met(mu.size(), false);
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    t.length += dist_h2(pts[s], pts[s + 1]);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const HalfPlaneH2 h(mu.leaves()[i].geodesic, 1);
      const double sa = signed_distance(h, pts[s]);
      const double sb = signed_distance(h, pts[s + 1]);
      if (sa == 0.0 || sb == 0.0 || (sa < 0.0) != (sb < 0.0)) met[i] = true;
    }
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (met[i]) t.mass += mu.leaves()[i].weight;
  }
  return t;
}

template <class F>
double golden_min(F f, double lo, double hi, int iters, double& arg) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iters; ++k) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  arg = 0.5 * (a + b);
  return f(arg);
}

// Ends of the shortest segment between two leaves, by nested golden-section
// search over the arclength parameters (distance is jointly convex).
std::pair<PointH2, PointH2> closest_points(const Geodesic& g1,
                                           const Geodesic& g2) {
  const MoebiusMap f1 = geodesic_frame(g1, PointH2(0.0));
  const MoebiusMap f2 = geodesic_frame(g2, PointH2(0.0));
  constexpr double kSpan = 14.0;
  constexpr int kIters = 90;
  auto p1 = [&](double u) { return PointH2(f1(std::tanh(u / 2.0))); };
  auto p2 = [&](double v) { return PointH2(f2(std::tanh(v / 2.0))); };
  auto inner = [&](double u, double& v) {
    const PointH2 a = p1(u);
    return golden_min([&](double s) { return dist_h2(a, p2(s)); }, -kSpan,
                      kSpan, kIters, v);
  };
  double u = 0.0, v = 0.0;
  golden_min([&](double s) { return inner(s, v); }, -kSpan, kSpan, kIters, u);
  inner(u, v);
  return {p1(u), p2(v)};
}

}  // namespace

OracleResult norm_L_oracle(const FiniteLamination& mu, double L, int samples,
                           std::uint64_t seed) {
  OracleResult res;
  const std::size_t n = mu.size();
  if (n == 0) return res;
  auto consider = [&](const std::vector<PointH2>& pts) {
    const ArcTally t = tally(mu, pts);
    ++res.arcs;
    if (t.length < L && t.mass > res.value) {
      res.value = t.mass;
      res.best_length = t.length;
    }
  };

  // Short crossings of single leaves, then extended shortest segments.
  for (std::size_t i = 0; i < n; ++i) {
    const Geodesic& g = mu.leaves()[i].geodesic;
    const MoebiusMap f = geodesic_frame(g, PointH2(0.0));
    const double eps = std::min(1e-6, L / 4.0);
    const Complex on = f(0.0);
    const Complex off = f.derivative(0.0) * Complex(0.0, 1.0);
    const Complex dir = off / std::abs(off);
    const PointH2 mid(on);
    const PointH2 side(on + 1e-3 * dir * (1.0 - std::norm(on)));
    consider({along(mid, side, -eps), along(mid, side, eps)});
    for (std::size_t j = i + 1; j < n; ++j) {
      auto [a, b] = closest_points(g, mu.leaves()[j].geodesic);
      const double d = dist_h2(a, b);
      if (!(d < L)) continue;
      const double delta = std::min(1e-4, (L - d) / 4.0);
      consider({along(b, a, d + delta), along(a, b, d + delta)});
    }
  }

  // Random piecewise-geodesic arcs with 1..3 segments.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 rng = trial_rng(seed, static_cast<std::uint64_t>(s));
    const std::size_t i = rng() % n;
    const std::size_t j = rng() % n;
    const PointH2 a =
        point_on_geodesic(mu.leaves()[i].geodesic, 4.0 * unit(rng) - 2.0);
    const PointH2 b =
        point_on_geodesic(mu.leaves()[j].geodesic, 4.0 * unit(rng) - 2.0);
    const int segments = 1 + static_cast<int>(rng() % 3);
    std::vector<PointH2> pts{a};
    const MoebiusMap to0 = MoebiusMap::disk_automorphism(a.z(), 0.0);
    const Complex bb = to0(b.z());
    for (int k = 1; k < segments; ++k) {
      const double frac = static_cast<double>(k) / segments;
      const double spread = 0.3 * unit(rng) * std::abs(bb) + 1e-3;
      const Complex jitter = std::polar(spread, kTwoPi * unit(rng));
      Complex w = frac * bb + jitter;
      if (std::abs(w) > 0.999) w *= 0.999 / std::abs(w);
      pts.push_back(PointH2(to0.inverse()(w)));
    }
    pts.push_back(b);
    const double delta = 1e-3 * unit(rng);
    if (segments == 1 && i == j) {
      const PointH2 other(to0.inverse()(std::polar(0.1, kTwoPi * unit(rng))));
      pts.back() = other;
    }
    // Push both ends slightly past the leaves they sit on.
    pts.front() = along(pts[1], pts.front(), dist_h2(pts[1], pts.front()) + delta);
    const std::size_t m = pts.size();
    pts.back() = along(pts[m - 2], pts.back(),
                       dist_h2(pts[m - 2], pts.back()) + delta);
    consider(pts);
  }
  return res;
}

FiniteLamination random_stacked_lamination(std::mt19937_64& rng, int n,
                                           double span) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    std::vector<double> pos(n);
    for (double& p : pos) p = span * (unit(rng) - 0.5);
    std::sort(pos.begin(), pos.end());
    std::vector<Leaf> leaves;
    for (double x : pos) {
      const double tilt = kPi / 2.0 + 0.6 * (unit(rng) - 0.5);
      const MoebiusMap m =
          MoebiusMap::translation(x) * MoebiusMap::rotation(tilt);
      leaves.push_back({Geodesic(m.apply_to_angle(0.0), m.apply_to_angle(kPi)),
                        0.1 + 2.9 * unit(rng)});
    }
    try {
      FiniteLamination mu(std::move(leaves));
      if (mu.stacked()) return mu;
    } catch (const InvalidLamination&) {
    }
  }
}

}  // namespace bending

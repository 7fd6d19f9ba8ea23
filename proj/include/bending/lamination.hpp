#pragma once

// Finite measured laminations: weighted disjoint geodesics.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bending/hyp_core.hpp"

namespace bending {

struct Leaf {
  Geodesic geodesic;
  double weight;
};

class FiniteLamination {
 public:
  // Throws InvalidLamination on non-positive weights, coincident leaves or
  // crossing leaves.
  explicit FiniteLamination(std::vector<Leaf> leaves);

  const std::vector<Leaf>& leaves() const { return leaves_; }
  std::size_t size() const { return leaves_.size(); }
  double total_weight() const;

  // A geodesic crossing every leaf exists.
  bool stacked() const { return stacked_; }
  // Leaf indices in order along a common transversal. Throws
  // NotStackedError naming three leaves with no common transversal.
  const std::vector<std::size_t>& order() const;

  FiniteLamination transformed(const MoebiusMap& m) const;

 private:
  void find_transversal();
  std::vector<Leaf> leaves_;
  bool stacked_ = false;
  std::vector<std::size_t> order_;
  std::string not_stacked_reason_;
};

struct TransverseArc {
  PointH2 a;
  PointH2 b;
  bool open = true;
};

// Total weight of leaves separating the arc's endpoints. Endpoints within
// 1e-12 of a leaf: the leaf is dropped for open arcs, TangencyError for
// closed ones.
double transverse_measure(const FiniteLamination& mu, const TransverseArc& arc);

// Largest weight of a run of consecutive leaves (transversal order) whose
// outermost members are at distance < L.
double norm_L(const FiniteLamination& mu, double L);

struct GoodPartitionData {
  std::vector<HalfPlaneH2> halfplanes;
};

// Sum of consecutive exterior angles; NotGoodError if two consecutive
// half-planes are disjoint.
double good_partition_bound(const GoodPartitionData& data);

// Piecewise geodesic built turtle-style from the origin heading along +x:
// walk lengths[i], then turn left by bends[i] (bends has one entry fewer).
// faces[i] is the half-plane to the right of segment i, extended to its
// full geodesic; consecutive faces meet at exterior angle bends[i].
struct BentChain {
  std::vector<Complex> vertices;  // start, the bend points, end
  std::vector<HalfPlaneH2> faces;
  std::vector<double> bends;
};
BentChain bent_chain(const std::vector<double>& lengths,
                     const std::vector<double>& bends);

// Point at signed arclength u along g, measured from the foot of the
// perpendicular dropped from the origin.
PointH2 point_on_geodesic(const Geodesic& g, double u);

// Brute-force lower estimate of norm_L from explicit arcs of length < L:
// random piecewise-geodesic arcs with up to three segments joining points
// on two leaves, plus, per pair of leaves, a golden-section search for the
// shortest joining segment which is then extended slightly at both ends.
struct OracleResult {
  double value = 0.0;
  double best_length = 0.0;  // length of the arc realising value
  long arcs = 0;
};
OracleResult norm_L_oracle(const FiniteLamination& mu, double L, int samples,
                           std::uint64_t seed);

// Random stacked lamination of n leaves crossing the real diameter at
// sorted positions in [-span/2, span/2], each tilted a little away from
// perpendicular; weights uniform in [0.1, 3].
FiniteLamination random_stacked_lamination(std::mt19937_64& rng, int n,
                                           double span = 3.0);

}  // namespace bending

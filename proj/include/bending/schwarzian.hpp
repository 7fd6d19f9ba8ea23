#pragma once

// Schwarzian derivatives, quadratic differentials and their hyperbolic
// sup norms.

#include <functional>
#include <string>
#include <vector>

#include "bending/errors.hpp"
#include "bending/hyp_core.hpp"

namespace bending {

enum class Model { Disk, UpperHalfPlane };

// f and its first three derivatives at a point.
struct Jet {
  Complex f, d1, d2, d3;
};

class AnalyticMap {
 public:
  using JetFn = std::function<Jet(Complex)>;
  using ValueFn = std::function<Complex(Complex)>;

  static AnalyticMap closed_form(std::string name, Model model, JetFn jet);
  // Derivatives come from a Cauchy-integral stencil on a circle inside the
  // model domain. Slower and less accurate than closed forms.
  static AnalyticMap finite_difference(std::string name, Model model,
                                       ValueFn f);

  Jet jet(Complex z) const;
  Complex operator()(Complex z) const;
  const std::string& name() const { return name_; }
  Model model() const { return model_; }
  bool is_closed_form() const { return closed_form_; }

 private:
  AnalyticMap(std::string name, Model model, bool closed, JetFn jet,
              ValueFn f);
  std::string name_;
  Model model_;
  bool closed_form_;
  JetFn jet_;
  ValueFn value_;
};

// Registered maps with closed-form derivatives.
AnalyticMap moebius_map(const MoebiusMap& m, Model model = Model::Disk);
AnalyticMap koebe();                  // z / (1 - z)^2
AnalyticMap wedge_upper(double k);    // z^k on the upper half-plane
AnalyticMap wedge_disk(double k);     // (i(1+z)/(1-z))^k
AnalyticMap exp_map(Complex a);       // exp(a z)
AnalyticMap strip_map();              // log((1+z)/(1-z))

// Lookup by name: moebius [a_re a_im theta], koebe, wedge [k],
// wedge-upper [k], exp [a], strip.
AnalyticMap registered_map(const std::string& name,
                           const std::vector<double>& params);
std::vector<std::string> registered_map_names();

// m o f and f o m, derivatives by the chain rule.
AnalyticMap compose(const MoebiusMap& m, const AnalyticMap& f);
AnalyticMap compose(const AnalyticMap& f, const MoebiusMap& m);

// Derivatives of f at z by the contour stencil, whatever f's flag says.
Jet contour_jet(const AnalyticMap::ValueFn& f, Model model, Complex z);

Complex schwarzian_at(const AnalyticMap& f, Complex z);

bool in_model_domain(Model model, Complex z);
// Hyperbolic area form at z (4/(1-|z|^2)^2 or 1/y^2).
double area_form(Model model, Complex z);

class QuadDifferentialField {
 public:
  QuadDifferentialField(std::function<Complex(Complex)> phi, Model model)
      : phi_(std::move(phi)), model_(model) {}
  Complex operator()(Complex z) const { return phi_(z); }
  Model model() const { return model_; }
  // |d/dz-bar phi| relative to |d phi / dz|, central differences of step h.
  double cauchy_riemann_residual(Complex z, double h = 1e-5) const;
  bool holomorphic_at(Complex z, double h = 1e-5) const {
    return cauchy_riemann_residual(z, h) < 1e-6;
  }

 private:
  std::function<Complex(Complex)> phi_;
  Model model_;
};

QuadDifferentialField schwarzian_field(const AnalyticMap& f);
// (m^* phi)(z) = phi(m(z)) m'(z)^2.
QuadDifferentialField pullback(const QuadDifferentialField& phi,
                               const MoebiusMap& m,
                               Model source = Model::Disk);

double pointwise_norm(const QuadDifferentialField& phi, Complex z);

struct SupNormGrid {
  double r_max = 12.0;  // hyperbolic radius
  int n_radial = 48;
  int n_angular = 96;
  double tol = 1e-6;    // relative change between levels
  int max_levels = 5;
};

struct SupNormEstimate {
  double lower = 0.0;
  double upper = 0.0;   // lower + largest jump between neighbouring samples
  long samples = 0;
  int n_radial = 0;
  int n_angular = 0;
  int levels = 0;
  std::vector<double> history;  // lower bound per level
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, SupNormEstimate best)
      : Error(what), estimate(std::move(best)) {}
  SupNormEstimate estimate;
};

// One level: samples at hyperbolic polar nodes (i r_max / n_radial,
// 2 pi j / n_angular) around 0 in the disk. Upper half-plane fields are
// sampled at the Cayley images of those nodes.
SupNormEstimate sup_norm_on_grid(const QuadDifferentialField& phi,
                                 double r_max, int n_radial, int n_angular);
SupNormEstimate sup_norm_estimate(const QuadDifferentialField& phi,
                                  const SupNormGrid& grid = {});

}  // namespace bending

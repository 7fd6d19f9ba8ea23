#include <iostream>

#include "CLI11.hpp"
#include "bending/runner.hpp"

using bending::RunConfig;

namespace {

void numeric_flags(CLI::App* app, RunConfig& c) {
  auto opt = [&](const char* name, std::optional<double>& slot,
                 const char* help) {
    app->add_option_function<double>(
        name, [&slot](const double& v) { slot = v; }, help);
  };
  opt("--L", c.L, "length scale L > 0");
  opt("--x", c.x, "Schwarzian sup-norm argument of bL");
  opt("--r", c.r, "radius argument of cL");
  opt("--s", c.s, "sup-norm argument in [0, 1/2)");
  opt("--k", c.k, "wedge exponent in (0, 1]");
  opt("--dT", c.dT, "Teichmueller distance");
  opt("--tol", c.tol, "tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds relating Schwarzian norms to bending"};
  app.require_subcommand(1);
  RunConfig c;

  auto* eval = app.add_subcommand("eval", "evaluate one bound function");
  eval->add_option("--kind", c.kind, "bL, cL, r, aw, teich, fbcy")->required();
  numeric_flags(eval, c);

  auto* table = app.add_subcommand("table", "tabulate a bound as CSV");
  table->add_option("--kind", c.kind, "bL, cL, teich")->required();
  table->add_option("--samples", c.samples, "number of rows");
  table->add_option("--out", c.out, "output path (default stdout)");
  table->add_option("--format", c.format, "csv")
      ->check(CLI::IsMember({"csv"}));
  numeric_flags(table, c);

  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify
      ->add_option("target", c.kind,
                   "halfplane-lemma, area-lemma, bers-kernel, wedge, trig")
      ->required();
  verify->add_option("--trials", c.trials, "number of trials");
  verify->add_option("--seed", c.seed, "base seed");
  verify->add_option("--samples", c.samples, "sample count");
  verify->add_option("--out", c.out, "report path (default stdout)");
  verify->add_option("--format", c.format, "json")
      ->check(CLI::IsMember({"json"}));
  numeric_flags(verify, c);

  auto* lam = app.add_subcommand("lamination", "norm of a lamination file");
  lam->add_option("--input", c.input, "lamination JSON file")->required();
  numeric_flags(lam, c);

  auto* sup = app.add_subcommand("supnorm", "sup norm of a Schwarzian");
  sup->add_option("--map", c.map, "koebe, wedge, wedge-upper, exp, strip, moebius")
      ->required();
  sup->add_option("--params", c.params, "map parameters");
  sup->add_option("--out", c.out, "output path (default stdout)");
  numeric_flags(sup, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bending::kExitUsage;
  }
  for (CLI::App* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  return bending::dispatch(c, std::cout, std::cerr);
}

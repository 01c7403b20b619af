// steerkit command line: one subcommand per pipeline stage, JSON on stdout.
#include <iostream>

#include <CLI11.hpp>

#include "steerkit/runner.hpp"

using namespace steerkit;
using runner::json;

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string mode, regions, ensemble;
  std::optional<std::size_t> realizations, threads, budget, bins, max_steps;
};

runner::RunConfig resolve(const Overrides &o) {
  auto cfg = runner::load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.mode.empty()) cfg.steer.mode = steering::mode_from_string(o.mode);
  if (!o.regions.empty()) {
    try {
      cfg.regions = glassfloor::parse_region_family(o.regions);
    } catch (const std::exception &e) {
      throw runner::ConfigError("--regions", e.what());
    }
  }
  if (!o.ensemble.empty()) {
    try {
      cfg.ensemble = glassfloor::ensemble_from_string(o.ensemble);
    } catch (const std::exception &e) {
      throw runner::ConfigError("--ensemble", e.what());
    }
  }
  if (o.realizations) cfg.realizations = *o.realizations;
  if (o.threads) cfg.threads = *o.threads;
  if (o.budget) {
    cfg.locality_budget = *o.budget;
    cfg.steer.locality_budget = *o.budget;
  }
  if (o.bins) cfg.bins = *o.bins;
  if (o.max_steps) cfg.steer.max_steps = *o.max_steps;
  return cfg;
}

void emit(const json &j, const std::string &out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    runner::write_text(out, text);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"steerkit: steering, classification and glass-floor estimates for small quantum models"};
  app.require_subcommand(1);
  Overrides o;

  auto common = [&](CLI::App *c) {
    c->add_option("-c,--config", o.config, "JSON run configuration")->required();
    c->add_option("--seed", o.seed, "master seed (overrides the config)");
  };
  auto *build = app.add_subcommand("build", "describe the Hamiltonian of a model");
  auto *spectrum = app.add_subcommand("spectrum", "exact spectrum of a commuting Pauli model");
  auto *steer = app.add_subcommand("steer", "run the steering protocol");
  auto *classify = app.add_subcommand("classify", "frustration classification");
  auto *gf = app.add_subcommand("glassfloor", "p, energy floor and temperature floor");
  auto *ens = app.add_subcommand("ensemble", "glass floor over disorder realizations");
  auto *fit = app.add_subcommand("fit", "finite-size scaling of T/gap");
  for (auto *c : {build, spectrum, steer, classify, gf, ens, fit}) common(c);
  for (auto *c : {build, spectrum, steer, classify, gf, fit}) c->add_option("-o,--out", o.out, "write JSON here");
  ens->add_option("-o,--out", o.out, "directory for realizations.csv and summary.json");
  steer->add_option("--mode", o.mode, "exact or symbolic");
  steer->add_option("--max-steps", o.max_steps, "step cap");
  steer->add_option("--budget", o.budget, "flip-operator locality budget (0 = unlimited)");
  classify->add_option("--budget", o.budget, "parent-Hamiltonian locality budget");
  for (auto *c : {gf, ens, fit}) {
    c->add_option("--regions", o.regions, "region family, e.g. windows:2, subsets:2, half, hubbard");
    c->add_option("--ensemble", o.ensemble, "canonical-full, canonical-sector or grand-canonical");
  }
  classify->add_option("--regions", o.regions, "extra regions for the distinguishability check");
  for (auto *c : {ens, fit}) {
    c->add_option("--realizations", o.realizations, "disorder realizations")->check(CLI::PositiveNumber);
    c->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--bins", o.bins, "histogram bins")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto cfg = resolve(o);
    json j;
    if (build->parsed()) j = runner::cmd_build(cfg);
    else if (spectrum->parsed()) j = runner::cmd_spectrum(cfg);
    else if (steer->parsed()) j = runner::cmd_steer(cfg);
    else if (classify->parsed()) j = runner::cmd_classify(cfg);
    else if (gf->parsed()) j = runner::cmd_glassfloor(cfg);
    else if (fit->parsed()) j = runner::cmd_fit(cfg);
    else if (ens->parsed()) {
      j = runner::cmd_ensemble(cfg, o.out);
      if (!o.out.empty()) {
        std::cout << json{{"files", j["files"]}, {"failures", j["failures"]}}.dump(2) << "\n";
        return 0;
      }
    }
    emit(j, o.out);
    return 0;
  } catch (const runner::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

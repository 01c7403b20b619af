#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "steerkit/analysis.hpp"
#include "steerkit/glassfloor.hpp"
#include "steerkit/models.hpp"
#include "steerkit/steering.hpp"

namespace steerkit::runner {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Malformed configuration. `path` is the JSON field path, e.g. "model.n".
class ConfigError : public std::invalid_argument {
public:
  ConfigError(std::string path, const std::string &msg)
      : std::invalid_argument(path + ": " + msg), path_(std::move(path)) {}
  const std::string &path() const { return path_; }

private:
  std::string path_;
};

struct SteerOptions {
  steering::Mode mode = steering::Mode::symbolic;
  std::size_t max_steps = 10000;
  std::optional<double> target_energy;
  std::size_t steps_after_target = 0;
  std::size_t locality_budget = 0;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  models::ModelSpec model;
  std::uint64_t seed = 0;
  std::optional<glassfloor::RegionFamily> regions;
  std::optional<glassfloor::Ensemble> ensemble;
  std::size_t realizations = 100;
  std::vector<std::size_t> sizes;  // fit: system sizes to sweep
  std::optional<std::size_t> bins;  // histogram bins; Freedman-Diaconis when absent
  std::optional<std::size_t> threads;
  std::size_t locality_budget = 3;  // classify
  bool split_parity = false;        // fit
  SteerOptions steer;
  json fit_data;  // optional explicit [{n, values}] for fit
};

// {"schema_version": 1, "model": {...}, ...}; unknown keys are rejected with their path
RunConfig parse_config(const json &j);
RunConfig load_config(const std::string &path);
models::ModelSpec parse_model(const json &j, const std::string &path = "model");
json model_to_json(const models::ModelSpec &m);

// --- io ---
// finite doubles as numbers, +-infinity as "inf"/"-inf", NaN as null
json number(double x);
// shortest round-trip decimal; "inf" for infinity
std::string format_double(double x);
void write_text(const std::string &path, const std::string &text);
std::string read_text(const std::string &path);
std::string to_csv(const std::vector<std::string> &header, const std::vector<std::vector<std::string>> &rows);

// --- statistics ---
struct Histogram {
  std::string label;
  std::size_t n = 0;  // system size
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  double mean = 0, std = 0;
  std::size_t total = 0;
  bool normalized = false;  // counts are raw; density = counts / (total * width)
};

// Freedman-Diaconis bin count, at least 1
std::size_t freedman_diaconis_bins(const std::vector<double> &values);
Histogram histogram(const std::vector<double> &values, const std::string &label, std::size_t n,
                    std::optional<std::size_t> bins = std::nullopt);
json to_json(const Histogram &h);

struct LinearFit {
  double slope = 0, intercept = 0, r2 = 0;
  std::size_t points = 0;
};
// least squares y = slope x + intercept; faults with fewer than two distinct x
LinearFit least_squares(const std::vector<double> &x, const std::vector<double> &y);

struct SizeSummary {
  std::size_t n = 0;
  double mean = 0, variance = 0;
  std::size_t count = 0;
};
SizeSummary summarize(std::size_t n, const std::vector<double> &values);

struct ScalingFit {
  LinearFit mean;      // log mean vs log N
  LinearFit variance;  // log variance vs log N (zero variances skipped)
  std::optional<LinearFit> odd_mean, even_mean;
};
// faults with fewer than three distinct sizes
ScalingFit scaling_fit(const std::vector<SizeSummary> &sizes, bool split_parity = false);
json to_json(const ScalingFit &f);

// hubbard for Fermi-Hubbard, subsets:2 for other fermion models, windows:2 for spins
glassfloor::RegionFamily default_regions(const models::ModelSpec &m);

// --- disorder ensembles ---
// per-realization seed: SplitMix64 mix of (master, index)
std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index);
// STEERKIT_THREADS when set, else the hardware concurrency; never below 1
std::size_t default_threads();

struct RealizationRow {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;
  double e_gs = 0, gap = 0, p = 0, t_eff_min = 0, t_over_gap = 0;
};

struct EnsembleResult {
  models::ModelSpec model;
  std::string regions;
  glassfloor::Ensemble ensemble = glassfloor::Ensemble::canonical_full;
  std::vector<RealizationRow> rows;  // realization order
  std::size_t failures = 0;
  std::vector<Histogram> histograms;  // p and T/gap over successful rows

  std::vector<double> column(const std::string &name) const;  // "p", "t_over_gap", ...
};

EnsembleResult run_ensemble(const RunConfig &cfg, std::optional<std::size_t> threads = std::nullopt);
std::string rows_csv(const EnsembleResult &r);
json to_json(const EnsembleResult &r);

// --- pipeline ---
// Ground manifold of any model with the smallest eigenvalue of every local term
analysis::ClassifyInput classify_input(const models::ModelSpec &spec, std::size_t locality_budget);
json to_json(const glassfloor::GlassFloorReport &r);
json to_json(const analysis::ClassifyReport &r);
json to_json(const steering::ProtocolReport &r, bool include_steps = true);

// --- subcommands; each returns the JSON document it would print ---
json cmd_build(const RunConfig &cfg);
json cmd_spectrum(const RunConfig &cfg);
json cmd_steer(const RunConfig &cfg);
json cmd_classify(const RunConfig &cfg);
json cmd_glassfloor(const RunConfig &cfg);
// writes <out>/realizations.csv and <out>/summary.json when out is nonempty
json cmd_ensemble(const RunConfig &cfg, const std::string &out = "");
json cmd_fit(const RunConfig &cfg);

}  // namespace steerkit::runner

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "steerkit/runner.hpp"

namespace steerkit::runner {

std::uint64_t realization_seed(std::uint64_t master, std::uint64_t index) {
  // SplitMix64 finalizer over a combination of both inputs
  std::uint64_t z = master * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t default_threads() {
  if (const char *env = std::getenv("STEERKIT_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return std::size_t(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

glassfloor::RegionFamily default_regions(const models::ModelSpec &m) {
  if (m.kind == models::Kind::fermi_hubbard) return glassfloor::parse_region_family("hubbard");
  const bool fermions = m.kind == models::Kind::syk_dirac || m.kind == models::Kind::syk_majorana;
  return glassfloor::parse_region_family(fermions ? "subsets:2" : "windows:2");
}

std::vector<double> EnsembleResult::column(const std::string &name) const {
  std::vector<double> out;
  for (auto &r : rows) {
    if (!r.ok) continue;
    if (name == "p") out.push_back(r.p);
    else if (name == "e_gs") out.push_back(r.e_gs);
    else if (name == "gap") out.push_back(r.gap);
    else if (name == "t_eff_min") out.push_back(r.t_eff_min);
    else if (name == "t_over_gap") out.push_back(r.t_over_gap);
    else throw std::invalid_argument("unknown column '" + name + "'");
  }
  return out;
}

namespace {

std::vector<double> finite(const std::vector<double> &v) {
  std::vector<double> out;
  for (double x : v)
    if (std::isfinite(x)) out.push_back(x);
  return out;
}

}  // namespace

EnsembleResult run_ensemble(const RunConfig &cfg, std::optional<std::size_t> threads) {
  EnsembleResult res;
  res.model = cfg.model;
  const auto family = cfg.regions.value_or(default_regions(cfg.model));
  res.regions = glassfloor::to_string(family);
  // validates the family against the model before any work starts
  glassfloor::expand(family, cfg.model);
  res.rows.resize(cfg.realizations);

  const std::size_t workers = std::max<std::size_t>(1, std::min(threads.value_or(cfg.threads.value_or(default_threads())),
                                                                cfg.realizations));
  std::vector<glassfloor::Ensemble> used(cfg.realizations, cfg.ensemble.value_or(glassfloor::Ensemble::canonical_full));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.realizations; i = next++) {
      RealizationRow row;
      row.index = i;
      row.seed = realization_seed(cfg.seed, i);
      try {
        models::ModelSpec spec = cfg.model;
        spec.seed = row.seed;
        auto rep = glassfloor::run_glass_floor(spec, family, cfg.ensemble);
        row.e_gs = rep.e_gs;
        row.gap = rep.gap;
        row.p = rep.p;
        row.t_eff_min = rep.temperature.t;
        row.t_over_gap = rep.t_over_gap;
        used[i] = rep.ensemble;
      } catch (const std::exception &e) {
        row.ok = false;
        row.error = e.what();
      }
      res.rows[i] = std::move(row);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto &t : pool) t.join();
  }

  for (auto &r : res.rows) res.failures += r.ok ? 0 : 1;
  for (std::size_t i = 0; i < res.rows.size(); ++i)
    if (res.rows[i].ok) {
      res.ensemble = used[i];
      break;
    }
  const std::size_t n = cfg.model.kind == models::Kind::fermi_hubbard ? cfg.model.lx * cfg.model.ly : cfg.model.n;
  res.histograms.push_back(histogram(res.column("p"), "p", n, cfg.bins));
  res.histograms.push_back(histogram(finite(res.column("t_over_gap")), "T/gap", n, cfg.bins));
  return res;
}

std::string rows_csv(const EnsembleResult &r) {
  std::vector<std::vector<std::string>> rows;
  for (auto &x : r.rows) {
    if (!x.ok) {
      rows.push_back({std::to_string(x.index), std::to_string(x.seed), "", "", "", "", "", x.error});
      continue;
    }
    rows.push_back({std::to_string(x.index), std::to_string(x.seed), format_double(x.e_gs), format_double(x.gap),
                    format_double(x.p), format_double(x.t_eff_min), format_double(x.t_over_gap), ""});
  }
  return to_csv({"index", "seed", "E_GS", "gap", "p", "T_eff_min", "T_over_gap", "error"}, rows);
}

json to_json(const EnsembleResult &r) {
  json h = json::array();
  for (auto &x : r.histograms) h.push_back(to_json(x));
  std::size_t infinite = 0;
  for (auto &x : r.rows) infinite += (x.ok && std::isinf(x.t_over_gap)) ? 1 : 0;
  return {{"model", model_to_json(r.model)},
          {"regions", r.regions},
          {"ensemble", glassfloor::to_string(r.ensemble)},
          {"realizations", r.rows.size()},
          {"failures", r.failures},
          {"infinite_temperature", infinite},
          {"histograms", h}};
}

}  // namespace steerkit::runner

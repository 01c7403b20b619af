#include <cmath>
#include <filesystem>

#include "steerkit/fermion.hpp"
#include "steerkit/runner.hpp"

namespace steerkit::runner {

namespace {

bool is_commuting(const models::ModelSpec &m) { return m.commuting_pauli(); }

cph::CommutingHamiltonian commuting(const models::ModelSpec &spec) {
  if (!is_commuting(spec)) throw std::invalid_argument("model.kind: needs a commuting Pauli model");
  return spec.kind == models::Kind::ising_chain ? models::build_ising(spec.n, spec.sign, spec.boundary, spec.axis)
                                                : models::build_commuting(spec.terms);
}

json fermion_terms(const fermion::Operator &op) {
  json out = json::array();
  for (auto &t : op.terms) {
    json ops = json::array();
    for (auto &l : t.ops) ops.push_back({l.mode, l.dagger});
    out.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}}, {"ops", ops}});
  }
  return out;
}

json pauli_terms(const cph::CommutingHamiltonian &h) {
  json out = json::array();
  for (std::size_t i = 0; i < h.num_terms(); ++i)
    out.push_back({{"pauli", h.term(i).to_string()}, {"coeff", h.coeffs()[i]}});
  return out;
}

}  // namespace

json cmd_build(const RunConfig &cfg) {
  const auto &m = cfg.model;
  json j{{"schema_version", kSchemaVersion}, {"model", model_to_json(m)}};
  switch (m.kind) {
    case models::Kind::ising_chain:
    case models::Kind::commuting_pauli_custom: {
      auto h = commuting(m);
      j["qubits"] = h.n();
      j["terms"] = pauli_terms(h);
      j["relations"] = h.num_relations();
      j["generators"] = h.num_generators();
      j["interaction_range"] = h.interaction_range();
      break;
    }
    case models::Kind::heisenberg_chain: {
      auto h = models::build_heisenberg(m.n, m.spin, m.boundary);
      json bonds = json::array();
      const std::size_t nb = m.boundary == models::Boundary::periodic ? (m.n == 2 ? 1 : m.n) : m.n - 1;
      for (std::size_t i = 0; i < nb; ++i) bonds.push_back({i, (i + 1) % m.n});
      j["sites"] = m.n;
      j["local_dim"] = h.basis.local_dim;
      j["dim"] = h.dim();
      j["bonds"] = bonds;
      j["hermiticity_error"] = number(h.hermiticity_error());
      break;
    }
    case models::Kind::syk_dirac: {
      auto s = models::build_syk_dirac(m.n, m.mu, m.seed, m.variance);
      json couplings = json::array();
      for (std::size_t i = 0; i < s.index.size(); ++i)
        couplings.push_back({{"ijkl", s.index[i]}, {"J", {s.coupling[i].real(), s.coupling[i].imag()}}});
      j["modes"] = s.modes;
      j["couplings"] = couplings;
      j["terms"] = fermion_terms(s.op);
      break;
    }
    case models::Kind::syk_majorana: {
      auto s = models::build_syk_majorana(m.n, m.seed, m.variance);
      json couplings = json::array();
      for (std::size_t i = 0; i < s.index.size(); ++i) couplings.push_back({{"ijkl", s.index[i]}, {"J", s.coupling[i]}});
      json paulis = json::array();
      for (std::size_t i = 0; i < s.paulis.size(); ++i)
        paulis.push_back({{"pauli", s.paulis[i].to_string()}, {"coeff", s.weights[i]}});
      j["modes"] = s.modes;
      j["majoranas"] = 2 * s.modes;
      j["couplings"] = couplings;
      j["jordan_wigner"] = paulis;
      break;
    }
    case models::Kind::fermi_hubbard: {
      auto op = models::build_fermi_hubbard(m.lx, m.ly, m.t, m.u, m.boundary);
      json bonds = json::array();
      for (auto &[a, b] : models::lattice_bonds(m.lx, m.ly, m.boundary)) bonds.push_back({a, b});
      j["modes"] = op.modes;
      j["bonds"] = bonds;
      j["terms"] = fermion_terms(op);
      break;
    }
  }
  return j;
}

json cmd_spectrum(const RunConfig &cfg) {
  auto h = commuting(cfg.model);
  auto levels = cph::merge_levels(cph::enumerate_spectrum(h));
  json lv = json::array();
  for (auto &l : levels) lv.push_back({{"energy", number(l.energy)}, {"multiplicity", l.multiplicity}});
  return {{"model", model_to_json(cfg.model)},
          {"qubits", h.n()},
          {"terms", h.num_terms()},
          {"relations", h.num_relations()},
          {"ground_energy", number(levels.front().energy)},
          {"ground_degeneracy", levels.front().multiplicity},
          {"gap", levels.size() > 1 ? number(levels[1].energy - levels[0].energy) : json(nullptr)},
          {"levels", lv}};
}

json cmd_steer(const RunConfig &cfg) {
  auto h = commuting(cfg.model);
  steering::ProtocolOptions opt;
  opt.seed = cfg.seed;
  opt.mode = cfg.steer.mode;
  opt.max_steps = cfg.steer.max_steps;
  opt.target_energy = cfg.steer.target_energy;
  opt.steps_after_target = cfg.steer.steps_after_target;
  opt.locality_budget = cfg.steer.locality_budget;
  auto rep = steering::run_protocol(h, opt);
  json j = to_json(rep);
  j["model"] = model_to_json(cfg.model);
  j["mode"] = steering::to_string(opt.mode);
  j["seed"] = cfg.seed;
  return j;
}

json cmd_classify(const RunConfig &cfg) {
  auto in = classify_input(cfg.model, cfg.locality_budget);
  if (cfg.regions) {
    if (cfg.regions->kind != glassfloor::FamilyKind::explicit_list)
      in.extra_regions = glassfloor::expand(*cfg.regions, cfg.model);
    else
      in.extra_regions = cfg.regions->regions;
  }
  json j = to_json(analysis::classify(in));
  j["model"] = model_to_json(cfg.model);
  j["locality_budget"] = cfg.locality_budget;
  return j;
}

json cmd_glassfloor(const RunConfig &cfg) {
  auto sys = glassfloor::prepare_system(cfg.model, cfg.ensemble);
  const auto family = cfg.regions.value_or(default_regions(cfg.model));
  auto rep = glassfloor::run_glass_floor(sys, glassfloor::expand(family, cfg.model), cfg.seed + 1);
  json j = to_json(rep);
  j["model"] = model_to_json(cfg.model);
  j["region_family"] = glassfloor::to_string(family);
  if (sys.ensemble == glassfloor::Ensemble::grand_canonical) j["mu"] = number(sys.mu);
  return j;
}

json cmd_ensemble(const RunConfig &cfg, const std::string &out) {
  auto res = run_ensemble(cfg);
  json j = to_json(res);
  j["seed"] = cfg.seed;
  if (!out.empty()) {
    const auto dir = std::filesystem::path(out);
    write_text((dir / "realizations.csv").string(), rows_csv(res));
    write_text((dir / "summary.json").string(), j.dump(2) + "\n");
    j["files"] = {(dir / "realizations.csv").string(), (dir / "summary.json").string()};
  }
  return j;
}

json cmd_fit(const RunConfig &cfg) {
  std::vector<SizeSummary> sizes;
  json per = json::array();
  if (!cfg.fit_data.is_null()) {
    for (auto &d : cfg.fit_data) sizes.push_back(summarize(d["n"].get<std::size_t>(), d["values"].get<std::vector<double>>()));
  } else {
    if (cfg.sizes.empty()) throw ConfigError("sizes", "fit needs sizes or fit_data");
    for (std::size_t n : cfg.sizes) {
      RunConfig c = cfg;
      c.model.n = n;
      try {
        c.model.validate();
      } catch (const std::invalid_argument &e) {
        throw ConfigError("sizes", e.what());
      }
      auto res = run_ensemble(c);
      std::vector<double> v;
      for (double x : res.column("t_over_gap"))
        if (std::isfinite(x)) v.push_back(x);
      sizes.push_back(summarize(n, v));
    }
  }
  for (auto &s : sizes)
    per.push_back({{"n", s.n}, {"mean", number(s.mean)}, {"variance", number(s.variance)}, {"count", s.count}});
  json j{{"quantity", cfg.fit_data.is_null() ? "T/gap" : "values"},
         {"sizes", per},
         {"fit", to_json(scaling_fit(sizes, cfg.split_parity))}};
  if (cfg.fit_data.is_null()) {
    j["model"] = model_to_json(cfg.model);
    j["realizations"] = cfg.realizations;
    j["regions"] = glassfloor::to_string(cfg.regions.value_or(default_regions(cfg.model)));
  }
  return j;
}

}  // namespace steerkit::runner

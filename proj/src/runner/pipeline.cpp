#include <algorithm>
#include <cmath>
#include <map>

#include "steerkit/fermion.hpp"
#include "steerkit/runner.hpp"

namespace steerkit::runner {

namespace {

json region_json(const analysis::Region &r) { return r.sites; }

cph::CommutingHamiltonian commuting(const models::ModelSpec &spec) {
  return spec.kind == models::Kind::ising_chain ? models::build_ising(spec.n, spec.sign, spec.boundary, spec.axis)
                                                : models::build_commuting(spec.terms);
}

// smallest eigenvalue of each group of fermion terms sharing a mode set, with modes
// relabelled in order onto a local Fock space
std::vector<double> fermion_term_minima(const fermion::Operator &op) {
  std::map<std::vector<std::size_t>, std::vector<const fermion::Term *>> groups;
  for (auto &t : op.terms) {
    std::vector<std::size_t> modes;
    for (auto &l : t.ops) modes.push_back(l.mode);
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    groups[modes].push_back(&t);
  }
  std::vector<double> out;
  for (auto &[modes, terms] : groups) {
    fermion::Operator local;
    local.modes = modes.size();
    for (auto *t : terms) {
      std::vector<fermion::Ladder> ops;
      for (auto &l : t->ops)
        ops.push_back({std::size_t(std::lower_bound(modes.begin(), modes.end(), l.mode) - modes.begin()), l.dagger});
      local.add(t->coeff, ops);
    }
    auto h = fermion::to_dense(local, fermion::fock_basis(local.modes));
    out.push_back(ed::eigh(h.matrix, false).values[0]);
  }
  return out;
}

}  // namespace

analysis::ClassifyInput classify_input(const models::ModelSpec &spec, std::size_t locality_budget) {
  spec.validate();
  analysis::ClassifyInput in;
  in.locality_budget = locality_budget;
  in.periodic = spec.boundary == models::Boundary::periodic && spec.kind != models::Kind::commuting_pauli_custom;
  switch (spec.kind) {
    case models::Kind::ising_chain:
    case models::Kind::commuting_pauli_custom: {
      auto h = commuting(spec);
      auto gm = analysis::commuting_ground_manifold(h);
      in.basis = ed::Basis::spins(h.n(), 2);
      in.states = gm.states;
      in.energy = gm.energy;
      for (double c : h.coeffs()) in.term_minima.push_back(-std::abs(c));
      in.commuting_pauli = true;
      return in;
    }
    case models::Kind::heisenberg_chain: {
      auto h = models::build_heisenberg(spec.n, spec.spin, spec.boundary);
      auto gm = ed::ground_manifold(ed::diagonalize(h));
      in.basis = h.basis;
      in.states = gm.states;
      in.energy = gm.energy;
      const std::size_t bonds = spec.boundary == models::Boundary::periodic ? (spec.n == 2 ? 1 : spec.n) : spec.n - 1;
      in.term_minima.assign(bonds, -spec.spin * (spec.spin + 1));
      return in;
    }
    case models::Kind::syk_majorana: {
      auto sys = glassfloor::prepare_system(spec);
      auto s = models::build_syk_majorana(spec.n, spec.seed, spec.variance);
      in.basis = sys.basis;
      in.states = sys.states;
      in.energy = sys.energy;
      for (double w : s.weights) in.term_minima.push_back(-std::abs(w));
      return in;
    }
    case models::Kind::syk_dirac:
    case models::Kind::fermi_hubbard: {
      auto sys = glassfloor::prepare_system(spec);
      auto op = spec.kind == models::Kind::syk_dirac
                    ? models::build_syk_dirac(spec.n, spec.mu, spec.seed, spec.variance).op
                    : models::build_fermi_hubbard(spec.lx, spec.ly, spec.t, spec.u, spec.boundary);
      in.basis = sys.basis;
      in.states = sys.states;
      in.energy = sys.energy;
      in.term_minima = fermion_term_minima(op);
      in.periodic = false;
      return in;
    }
  }
  return in;
}

json to_json(const glassfloor::GlassFloorReport &r) {
  json table = json::array(), regions = json::array();
  for (auto &row : r.table) regions.push_back(region_json(row.region));
  for (auto &row : r.table)
    table.push_back({{"region", region_json(row.region)},
                     {"p", number(row.p)},
                     {"basis_p", number(row.basis_p)},
                     {"rank", row.rank}});
  json t{{"T_eff_min", number(r.temperature.t)},
         {"beta", number(r.temperature.beta)},
         {"infinite", r.temperature.infinite},
         {"residual", number(r.temperature.residual)}};
  return {{"model", r.model},
          {"regions", regions},
          {"ensemble", glassfloor::to_string(r.ensemble)},
          {"p", number(r.p)},
          {"achieving_region", region_json(r.achieving)},
          {"fidelity_bound", number(r.fidelity_bound)},
          {"energy_bound", number(r.energy_bound)},
          {"normalized_energy_bound", number(r.normalized_energy)},
          {"E_GS", number(r.e_gs)},
          {"gap", number(r.gap)},
          {"degeneracy", r.degeneracy},
          {"T_eff_min", number(r.temperature.t)},
          {"temperature", t},
          {"T_over_gap", number(r.t_over_gap)},
          {"region_monotone", r.region_monotone},
          {"cross_check", r.cross_check < 0 ? json(nullptr) : number(r.cross_check)},
          {"per_region_table", table}};
}

json to_json(const analysis::ClassifyReport &r) {
  json scqs = json::array();
  for (auto &s : r.scqs)
    scqs.push_back({{"region", region_json(s.region)}, {"rank", s.rank}, {"trivial", s.trivial}, {"subspace", s.subspace}});
  json regions = json::array();
  for (auto &e : r.regions)
    regions.push_back({{"region", region_json(e.region)},
                       {"p", number(e.p)},
                       {"trivial_scq", e.trivial_scq},
                       {"distinguishable", e.distinguishable}});
  json parent = nullptr;
  if (r.parent)
    parent = {{"verdict", analysis::to_string(r.parent->verdict)},
              {"max_range", r.parent->max_range},
              {"ground_dim", r.parent->ground_dim},
              {"projector_distance", number(r.parent->projector_distance)},
              {"method", r.parent->method},
              {"scq_count", r.parent->scqs.size()}};
  return {{"verdict", analysis::to_string(r.verdict)},
          {"reason", r.reason},
          {"evidence",
           {{"frustration_free", r.frustration_free},
            {"degenerate", r.degenerate},
            {"trivial_scq_exists", r.trivial_scq_exists},
            {"bipartite_indistinguishable", r.indistinguishable},
            {"parent_hamiltonian", parent},
            {"scqs", scqs},
            {"regions", regions}}}};
}

json to_json(const steering::ProtocolReport &r, bool include_steps) {
  json j{{"stage1_complete", r.stage1_complete},
         {"stage1_steps", r.stage1_steps},
         {"fallback_used", r.fallback_used},
         {"complete", r.complete},
         {"stop_reason", r.stop_reason},
         {"final_energy_vector", r.final_v.to_string()},
         {"final_energy", number(r.final_energy)},
         {"nonlocal_steps", r.nonlocal_steps},
         {"steps_taken", r.steps.size()}};
  if (!include_steps) return j;
  json steps = json::array();
  for (auto &s : r.steps) {
    json e{{"step", s.step}, {"stage", s.stage}, {"j", s.j},           {"sign", s.sign},
           {"accepted", s.accepted}, {"support", s.support}, {"fallback", s.fallback}};
    if (s.energy) e["energy"] = number(*s.energy);
    if (s.exact_energy) e["exact_energy"] = number(*s.exact_energy);
    if (s.gs_population) e["gs_population"] = number(*s.gs_population);
    if (s.trace_distance) e["trace_distance"] = number(*s.trace_distance);
    steps.push_back(std::move(e));
  }
  j["steps"] = steps;
  return j;
}

}  // namespace steerkit::runner

#include <fstream>
#include <set>
#include <sstream>

#include "steerkit/runner.hpp"

namespace steerkit::runner {

namespace {

std::string join(const std::string &path, const std::string &key) { return path.empty() ? key : path + "." + key; }

void check_keys(const json &j, const std::string &path, const std::set<std::string> &allowed) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "config" : path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(join(path, it.key()), "unknown field");
}

std::uint64_t get_uint(const json &j, const std::string &path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    throw ConfigError(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

double get_double(const json &j, const std::string &path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

std::string get_string(const json &j, const std::string &path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const json &j, const std::string &path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

template <class F>
auto wrap(const std::string &path, F &&f) {
  try {
    return f();
  } catch (const ConfigError &) {
    throw;
  } catch (const std::exception &e) {
    throw ConfigError(path, e.what());
  }
}

glassfloor::RegionFamily parse_regions(const json &j, const std::string &path) {
  if (j.is_string()) return wrap(path, [&] { return glassfloor::parse_region_family(j.get<std::string>()); });
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a family name or a list of site lists");
  glassfloor::RegionFamily f;
  f.kind = glassfloor::FamilyKind::explicit_list;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].empty()) throw ConfigError(p, "expected a nonempty list of sites");
    analysis::Region r;
    for (std::size_t k = 0; k < j[i].size(); ++k) r.sites.push_back(get_uint(j[i][k], p + "[" + std::to_string(k) + "]"));
    f.regions.push_back(std::move(r));
  }
  return f;
}

}  // namespace

models::ModelSpec parse_model(const json &j, const std::string &path) {
  check_keys(j, path, {"kind", "n", "sign", "axis", "spin", "boundary", "mu", "variance", "seed", "lx", "ly", "t", "u",
                       "n_up", "n_down", "particles", "terms"});
  models::ModelSpec m;
  if (!j.contains("kind")) throw ConfigError(join(path, "kind"), "required");
  m.kind = wrap(join(path, "kind"), [&] { return models::kind_from_string(get_string(j["kind"], join(path, "kind"))); });
  if (j.contains("n")) m.n = get_uint(j["n"], join(path, "n"));
  if (j.contains("sign")) {
    if (!j["sign"].is_number_integer()) throw ConfigError(join(path, "sign"), "expected +1 or -1");
    m.sign = j["sign"].get<int>();
  }
  if (j.contains("axis")) {
    auto a = get_string(j["axis"], join(path, "axis"));
    if (a.size() != 1) throw ConfigError(join(path, "axis"), "expected one of X, Y, Z");
    m.axis = a[0];
  }
  if (j.contains("spin")) m.spin = get_double(j["spin"], join(path, "spin"));
  if (j.contains("boundary"))
    m.boundary = wrap(join(path, "boundary"),
                      [&] { return models::boundary_from_string(get_string(j["boundary"], join(path, "boundary"))); });
  if (j.contains("mu")) m.mu = get_double(j["mu"], join(path, "mu"));
  if (j.contains("variance")) m.variance = get_double(j["variance"], join(path, "variance"));
  if (j.contains("seed")) m.seed = get_uint(j["seed"], join(path, "seed"));
  if (j.contains("lx")) m.lx = get_uint(j["lx"], join(path, "lx"));
  if (j.contains("ly")) m.ly = get_uint(j["ly"], join(path, "ly"));
  if (j.contains("t")) m.t = get_double(j["t"], join(path, "t"));
  if (j.contains("u")) m.u = get_double(j["u"], join(path, "u"));
  if (j.contains("n_up")) m.n_up = get_uint(j["n_up"], join(path, "n_up"));
  if (j.contains("n_down")) m.n_down = get_uint(j["n_down"], join(path, "n_down"));
  if (j.contains("particles")) m.particles = get_uint(j["particles"], join(path, "particles"));
  if (j.contains("terms")) {
    const auto &t = j["terms"];
    const std::string tp = join(path, "terms");
    if (!t.is_array()) throw ConfigError(tp, "expected a list of terms");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string p = tp + "[" + std::to_string(i) + "]";
      cph::Term term;
      if (t[i].is_string()) {
        term.op = wrap(p, [&] { return pauli::PauliOp::from_string(t[i].get<std::string>()); });
      } else {
        check_keys(t[i], p, {"pauli", "coeff"});
        if (!t[i].contains("pauli")) throw ConfigError(p + ".pauli", "required");
        term.op = wrap(p + ".pauli", [&] { return pauli::PauliOp::from_string(get_string(t[i]["pauli"], p + ".pauli")); });
        if (t[i].contains("coeff")) term.coeff = get_double(t[i]["coeff"], p + ".coeff");
      }
      m.terms.push_back(std::move(term));
    }
  }
  try {
    m.validate();
  } catch (const std::invalid_argument &e) {
    // validate() reports "model.<field>: message"
    std::string msg = e.what();
    const auto colon = msg.find(": ");
    std::string field = colon == std::string::npos ? path : msg.substr(0, colon);
    if (field.rfind("model.", 0) == 0) field = join(path, field.substr(6));
    throw ConfigError(field, colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
  return m;
}

json model_to_json(const models::ModelSpec &m) {
  json j;
  j["kind"] = models::to_string(m.kind);
  switch (m.kind) {
    case models::Kind::ising_chain:
      j["n"] = m.n;
      j["sign"] = m.sign;
      j["axis"] = std::string(1, m.axis);
      j["boundary"] = m.boundary == models::Boundary::periodic ? "periodic" : "open";
      break;
    case models::Kind::heisenberg_chain:
      j["n"] = m.n;
      j["spin"] = m.spin;
      j["boundary"] = m.boundary == models::Boundary::periodic ? "periodic" : "open";
      break;
    case models::Kind::syk_dirac:
      j["n"] = m.n;
      j["mu"] = m.mu;
      j["variance"] = m.variance;
      j["seed"] = m.seed;
      if (m.particles) j["particles"] = *m.particles;
      break;
    case models::Kind::syk_majorana:
      j["n"] = m.n;
      j["variance"] = m.variance;
      j["seed"] = m.seed;
      break;
    case models::Kind::fermi_hubbard:
      j["lx"] = m.lx;
      j["ly"] = m.ly;
      j["t"] = m.t;
      j["u"] = m.u;
      j["boundary"] = m.boundary == models::Boundary::periodic ? "periodic" : "open";
      if (m.n_up) j["n_up"] = *m.n_up;
      if (m.n_down) j["n_down"] = *m.n_down;
      break;
    case models::Kind::commuting_pauli_custom: {
      json terms = json::array();
      for (auto &t : m.terms) terms.push_back({{"pauli", t.op.to_string()}, {"coeff", t.coeff}});
      j["terms"] = terms;
      break;
    }
  }
  return j;
}

RunConfig parse_config(const json &j) {
  check_keys(j, "", {"schema_version", "model", "seed", "regions", "ensemble", "realizations", "sizes", "bins",
                           "threads", "locality_budget", "split_parity", "steer", "fit_data"});
  RunConfig c;
  if (!j.contains("schema_version")) throw ConfigError("schema_version", "required");
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion)
    throw ConfigError("schema_version", "unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  if (!j.contains("model")) throw ConfigError("model", "required");
  c.model = parse_model(j["model"], "model");
  if (j.contains("seed")) c.seed = get_uint(j["seed"], "seed");
  if (j.contains("regions")) c.regions = parse_regions(j["regions"], "regions");
  if (j.contains("ensemble"))
    c.ensemble = wrap("ensemble", [&] { return glassfloor::ensemble_from_string(get_string(j["ensemble"], "ensemble")); });
  if (j.contains("realizations")) {
    c.realizations = get_uint(j["realizations"], "realizations");
    if (c.realizations < 1) throw ConfigError("realizations", "must be at least 1");
  }
  if (j.contains("sizes")) {
    if (!j["sizes"].is_array()) throw ConfigError("sizes", "expected a list of system sizes");
    for (std::size_t i = 0; i < j["sizes"].size(); ++i)
      c.sizes.push_back(get_uint(j["sizes"][i], "sizes[" + std::to_string(i) + "]"));
  }
  if (j.contains("bins")) {
    c.bins = get_uint(j["bins"], "bins");
    if (*c.bins < 1) throw ConfigError("bins", "must be at least 1");
  }
  if (j.contains("threads")) {
    c.threads = get_uint(j["threads"], "threads");
    if (*c.threads < 1) throw ConfigError("threads", "must be at least 1");
  }
  if (j.contains("locality_budget")) c.locality_budget = get_uint(j["locality_budget"], "locality_budget");
  if (j.contains("split_parity")) c.split_parity = get_bool(j["split_parity"], "split_parity");
  if (j.contains("steer")) {
    const auto &s = j["steer"];
    check_keys(s, "steer", {"mode", "max_steps", "target_energy", "steps_after_target", "locality_budget"});
    if (s.contains("mode"))
      c.steer.mode = wrap("steer.mode", [&] { return steering::mode_from_string(get_string(s["mode"], "steer.mode")); });
    if (s.contains("max_steps")) c.steer.max_steps = get_uint(s["max_steps"], "steer.max_steps");
    if (s.contains("target_energy")) c.steer.target_energy = get_double(s["target_energy"], "steer.target_energy");
    if (s.contains("steps_after_target"))
      c.steer.steps_after_target = get_uint(s["steps_after_target"], "steer.steps_after_target");
    if (s.contains("locality_budget")) c.steer.locality_budget = get_uint(s["locality_budget"], "steer.locality_budget");
  }
  if (j.contains("fit_data")) {
    const auto &d = j["fit_data"];
    if (!d.is_array()) throw ConfigError("fit_data", "expected a list of {n, values}");
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::string p = "fit_data[" + std::to_string(i) + "]";
      check_keys(d[i], p, {"n", "values"});
      if (!d[i].contains("n")) throw ConfigError(p + ".n", "required");
      get_uint(d[i]["n"], p + ".n");
      if (!d[i].contains("values") || !d[i]["values"].is_array() || d[i]["values"].empty())
        throw ConfigError(p + ".values", "expected a nonempty list of numbers");
      for (std::size_t k = 0; k < d[i]["values"].size(); ++k)
        get_double(d[i]["values"][k], p + ".values[" + std::to_string(k) + "]");
    }
    c.fit_data = d;
  }
  return c;
}

RunConfig load_config(const std::string &path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const std::exception &e) {
    throw ConfigError("config", e.what());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace steerkit::runner

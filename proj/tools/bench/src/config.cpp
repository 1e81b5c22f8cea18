#include "cavelim/bench/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace cavelim::bench {

namespace {

/// Reads keys of one JSON object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& node, std::string name) : node_(node), name_(std::move(name)) {
    if (!node_.is_null() && !node_.is_object()) throw SpecError("config: '" + name_ + "' must be an object");
  }

  bool has(const std::string& key) const { return node_.is_object() && node_.contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return node_.at(key);
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    try {
      return node_.at(key).get<T>();
    } catch (const json::exception&) {
      throw SpecError("config: " + name_ + "." + key + " has the wrong type");
    }
  }

  void finish() const {
    if (!node_.is_object()) return;
    for (const auto& [key, value] : node_.items()) {
      if (!used_.count(key)) throw SpecError("config: unknown key " + name_ + "." + key);
    }
  }

 private:
  const json& node_;
  std::string name_;
  std::set<std::string> used_;
};

std::vector<double> grid_or(Section& s, const std::string& key, std::vector<double> fallback) {
  if (!s.has(key)) {
    s.get<json>(key, json());
    return fallback;
  }
  return parse_grid(s.raw(key), key);
}

std::vector<Index> cutoffs_or(Section& s, const std::string& key, std::vector<Index> fallback) {
  std::vector<Index> out = fallback;
  if (s.has(key)) {
    out.clear();
    for (double v : parse_grid(s.raw(key), key)) {
      if (v != std::floor(v)) throw SpecError("config: " + key + " must hold integers");
      out.push_back(static_cast<Index>(v));
    }
  } else {
    s.get<json>(key, json());
  }
  if (out.empty()) throw SpecError("config: " + key + " is empty");
  return out;
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw SpecError("config: " + what + " must be positive");
}

void require_cutoff(Index cutoff, const std::string& what, const Budget& b) {
  if (cutoff < 2) throw SpecError("config: " + what + " must be at least 2");
  if (cutoff > b.max_cutoff) {
    throw BudgetError("config: " + what + " = " + std::to_string(cutoff) + " exceeds the cutoff budget " +
                      std::to_string(b.max_cutoff) + " (use --large-run)");
  }
}

void require_sites(int n, const Budget& b) {
  if (n > b.max_sites) {
    throw BudgetError("config: N = " + std::to_string(n) + " exceeds the chain budget " +
                      std::to_string(b.max_sites) + " (use --large-run)");
  }
}

void require_increasing(const std::vector<Index>& v, const std::string& what) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) throw SpecError("config: " + what + " must be strictly increasing");
  }
}

cplx parse_complex(const json& node, const std::string& what) {
  if (node.is_number()) return {node.get<double>(), 0.0};
  if (node.is_array() && node.size() == 2) return {node[0].get<double>(), node[1].get<double>()};
  throw SpecError("config: " + what + " must be a number or [re, im]");
}

SylvesterRoute parse_route(const std::string& name) {
  if (name == "auto") return SylvesterRoute::Auto;
  if (name == "vectorized") return SylvesterRoute::Vectorized;
  if (name == "schur") return SylvesterRoute::Schur;
  throw SpecError("config: unknown route '" + name + "'");
}

std::string route_name(SylvesterRoute r) {
  switch (r) {
    case SylvesterRoute::Vectorized:
      return "vectorized";
    case SylvesterRoute::Schur:
      return "schur";
    case SylvesterRoute::Auto:
      break;
  }
  return "auto";
}

}  // namespace

std::vector<double> parse_grid(const json& node, const std::string& name) {
  std::vector<double> out;
  if (node.is_number()) {
    out.push_back(node.get<double>());
  } else if (node.is_array()) {
    for (const auto& v : node) {
      if (!v.is_number()) throw SpecError("config: " + name + " must hold numbers");
      out.push_back(v.get<double>());
    }
  } else if (node.is_object()) {
    if (!node.contains("start") || !node.contains("stop") || !node.contains("count")) {
      throw SpecError("config: " + name + " grid needs start, stop and count");
    }
    if (!node.at("start").is_number() || !node.at("stop").is_number() ||
        !node.at("count").is_number_integer()) {
      throw SpecError("config: " + name + " grid entries must be numbers");
    }
    const double a = node.at("start").get<double>();
    const double b = node.at("stop").get<double>();
    const long n = node.at("count").get<long>();
    if (n < 1) throw SpecError("config: " + name + " count must be positive");
    if (n == 1) return {a};
    for (long i = 0; i + 1 < n; ++i) {
      out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.push_back(b);
  } else {
    throw SpecError("config: " + name + " must be a number, an array or a {start, stop, count} grid");
  }
  if (out.empty()) throw SpecError("config: " + name + " grid is empty");
  return out;
}

json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("config: cannot open " + path.string());
  std::string first;
  std::getline(in, first);
  try {
    if (!first.empty() && first[0] == '#') {
      const json manifest = json::parse(first.substr(1));
      if (!manifest.contains("config")) throw SpecError("config: manifest line has no config");
      return manifest.at("config");
    }
    std::stringstream rest;
    rest << first << '\n' << in.rdbuf();
    return json::parse(rest.str());
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("config: ") + e.what());
  }
}

std::string experiment_of(const json& config, const std::string& fallback) {
  if (!config.contains("experiment")) return fallback;
  const std::string tag = config.at("experiment").get<std::string>();
  if (std::find(kExperiments.begin(), kExperiments.end(), tag) == kExperiments.end()) {
    throw SpecError("config: unknown experiment '" + tag + "'");
  }
  return tag;
}

// ---- optomech-sweep --------------------------------------------------------

OptomechSweepConfig parse_optomech_sweep(const json& model, const json& numerics, const Budget& b) {
  OptomechSweepConfig c;
  Section m(model, "model");
  c.omega0s = grid_or(m, "omega0", c.omega0s);
  c.gs = grid_or(m, "g", c.gs);
  c.eta = m.get("eta", c.eta);
  m.finish();

  Section n(numerics, "numerics");
  c.deltas = grid_or(n, "delta", parse_grid(json{{"start", -3.0}, {"stop", -0.3}, {"count", 12}}, "delta"));
  c.mirror_cutoff = n.get<Index>("mirror_cutoff", c.mirror_cutoff);
  c.cavity_cutoff = n.get<Index>("cavity_cutoff", c.cavity_cutoff);
  c.check_extra = n.get<Index>("check_extra", c.check_extra);
  c.convergence_tol = n.get("convergence_tol", c.convergence_tol);
  n.finish();

  for (double w : c.omega0s) require_positive(w, "model.omega0");
  for (double g : c.gs) {
    if (!(g >= 0.0)) throw SpecError("config: model.g must be non-negative");
  }
  if (c.mirror_cutoff < 3) throw SpecError("config: mirror_cutoff must be at least 3");
  if (c.check_extra < 1) throw SpecError("config: check_extra must be positive");
  require_cutoff(c.mirror_cutoff + c.check_extra, "mirror_cutoff + check_extra", b);
  require_cutoff(c.cavity_cutoff, "cavity_cutoff", b);
  require_positive(c.convergence_tol, "convergence_tol");
  return c;
}

json to_json(const OptomechSweepConfig& c) {
  return {{"model", {{"omega0", c.omega0s}, {"g", c.gs}, {"eta", c.eta}}},
          {"numerics",
           {{"delta", c.deltas},
            {"mirror_cutoff", c.mirror_cutoff},
            {"cavity_cutoff", c.cavity_cutoff},
            {"check_extra", c.check_extra},
            {"convergence_tol", c.convergence_tol}}}};
}

// ---- ising-cool ------------------------------------------------------------

IsingCoolConfig parse_ising_cool(const json& model, const json& numerics, const Budget& b) {
  IsingCoolConfig c;
  IsingCoolSettings& s = c.settings;
  Section m(model, "model");
  s.params.n_sites = m.get("n_sites", s.params.n_sites);
  s.params.h = m.get("h", s.params.h);
  s.params.j = m.get("j", s.params.j);
  s.params.g = m.get("g", s.params.g);
  if (m.has("omega_c") && !m.raw("omega_c").is_null()) {
    s.params.omega_c = m.get<double>("omega_c", 0.0);
    s.omega_c_from_gap = false;
  } else {
    m.get<json>("omega_c", json());
  }
  m.finish();

  Section n(numerics, "numerics");
  s.degeneracy_tol = n.get("degeneracy_tol", s.degeneracy_tol);
  s.t_final = n.get("t_final", s.t_final);
  s.n_times = n.get<Index>("n_times", s.n_times);
  s.cavity_cutoff = n.get<Index>("cavity_cutoff", s.cavity_cutoff);
  s.rtol = n.get("rtol", s.rtol);
  s.atol = n.get("atol", s.atol);
  s.compute_full = n.get("full_model", s.compute_full);
  n.finish();

  validate(s.params);
  require_sites(s.params.n_sites, b);
  require_cutoff(s.cavity_cutoff, "cavity_cutoff", b);
  require_positive(s.t_final, "t_final");
  require_positive(s.rtol, "rtol");
  require_positive(s.atol, "atol");
  if (s.n_times < 2) throw SpecError("config: n_times must be at least 2");
  return c;
}

json to_json(const IsingCoolConfig& c) {
  const IsingCoolSettings& s = c.settings;
  json model{{"n_sites", s.params.n_sites}, {"h", s.params.h}, {"j", s.params.j}, {"g", s.params.g}};
  model["omega_c"] = s.omega_c_from_gap ? json() : json(s.params.omega_c);
  return {{"model", model},
          {"numerics",
           {{"degeneracy_tol", s.degeneracy_tol},
            {"t_final", s.t_final},
            {"n_times", s.n_times},
            {"cavity_cutoff", s.cavity_cutoff},
            {"rtol", s.rtol},
            {"atol", s.atol},
            {"full_model", s.compute_full}}}};
}

// ---- rabi-spectrum ---------------------------------------------------------

RabiSpectrumConfig parse_rabi_spectrum(const json& model, const json& numerics, const Budget& b) {
  RabiSpectrumConfig c;
  RabiSpectrumSettings& s = c.settings;
  s.params.nbar = 1.0;
  Section m(model, "model");
  s.params.omega0 = m.get("omega0", s.params.omega0);
  s.params.omega_c = m.get("omega_c", s.params.omega_c);
  s.params.g = m.get("g", s.params.g);
  s.params.nbar = m.get("nbar", s.params.nbar);
  m.finish();

  Section n(numerics, "numerics");
  s.cutoffs = cutoffs_or(n, "cutoffs", s.cutoffs);
  s.dense_cap = n.get<Index>("dense_cap", s.dense_cap);
  s.near_count = n.get<Index>("near_count", s.near_count);
  if (n.has("near_shift")) {
    s.near_shift = parse_complex(n.raw("near_shift"), "near_shift");
  } else {
    n.get<json>("near_shift", json());
  }
  c.drift_nbar = n.get("drift_nbar", c.drift_nbar);
  c.drift_cutoffs = cutoffs_or(n, "drift_cutoffs", c.drift_cutoffs);
  c.drift_count = n.get<Index>("drift_count", c.drift_count);
  n.finish();

  validate(s.params);
  for (Index l : s.cutoffs) require_cutoff(l, "cutoffs", b);
  for (Index l : c.drift_cutoffs) require_cutoff(l, "drift_cutoffs", b);
  require_increasing(c.drift_cutoffs, "drift_cutoffs");
  if (!(c.drift_nbar >= 0.0)) throw SpecError("config: drift_nbar must be non-negative");
  if (s.near_count < 1 || c.drift_count < 1) throw SpecError("config: eigenvalue counts must be positive");
  if (s.dense_cap > kDenseLiouvilleCap && b.max_cutoff <= kDeskBudget.max_cutoff) {
    throw BudgetError("config: dense_cap above the default needs --large-run");
  }
  return c;
}

json to_json(const RabiSpectrumConfig& c) {
  const RabiSpectrumSettings& s = c.settings;
  return {{"model",
           {{"omega0", s.params.omega0},
            {"omega_c", s.params.omega_c},
            {"g", s.params.g},
            {"nbar", s.params.nbar}}},
          {"numerics",
           {{"cutoffs", s.cutoffs},
            {"dense_cap", s.dense_cap},
            {"near_count", s.near_count},
            {"near_shift", {s.near_shift.real(), s.near_shift.imag()}},
            {"drift_nbar", c.drift_nbar},
            {"drift_cutoffs", c.drift_cutoffs},
            {"drift_count", c.drift_count}}}};
}

// ---- rabi-thermal ----------------------------------------------------------

RabiThermalConfig parse_rabi_thermal(const json& model, const json& numerics, const Budget& b) {
  RabiThermalConfig c;
  Section m(model, "model");
  c.omega0 = m.get("omega0", c.omega0);
  c.omega_c = m.get("omega_c", c.omega_c);
  c.gs = grid_or(m, "g", c.gs);
  m.finish();

  Section n(numerics, "numerics");
  c.nbars = grid_or(n, "nbar", c.nbars);
  c.cutoffs = cutoffs_or(n, "cutoffs", c.cutoffs);
  c.convergence_tol = n.get("convergence_tol", c.convergence_tol);
  n.finish();

  for (double nb : c.nbars) {
    if (!(nb >= 0.0)) throw SpecError("config: nbar must be non-negative");
  }
  if (c.cutoffs.size() < 2) throw SpecError("config: cutoffs needs at least two entries");
  require_increasing(c.cutoffs, "cutoffs");
  for (Index l : c.cutoffs) require_cutoff(l, "cutoffs", b);
  require_positive(c.convergence_tol, "convergence_tol");
  return c;
}

json to_json(const RabiThermalConfig& c) {
  return {{"model", {{"omega0", c.omega0}, {"omega_c", c.omega_c}, {"g", c.gs}}},
          {"numerics",
           {{"nbar", c.nbars}, {"cutoffs", c.cutoffs}, {"convergence_tol", c.convergence_tol}}}};
}

// ---- alpha-solve -----------------------------------------------------------

AlphaSolveSettings parse_alpha_solve(const json& model, const json& numerics, const Budget& b) {
  AlphaSolveSettings s;
  Section m(model, "model");
  const std::string kind = m.get<std::string>("kind", "rabi");
  if (kind == "rabi") {
    RabiParams p;
    p.omega0 = m.get("omega0", p.omega0);
    p.omega_c = m.get("omega_c", p.omega_c);
    p.g = m.get("g", p.g);
    p.nbar = m.get("nbar", p.nbar);
    validate(p);
    s.model = p;
  } else if (kind == "ising") {
    IsingCavityParams p;
    p.n_sites = m.get("n_sites", p.n_sites);
    p.h = m.get("h", p.h);
    p.j = m.get("j", p.j);
    p.g = m.get("g", p.g);
    p.omega_c = m.get("omega_c", p.omega_c);
    validate(p);
    require_sites(p.n_sites, b);
    s.model = p;
  } else if (kind == "optomech") {
    OptomechParams p;
    p.omega0 = m.get("omega0", p.omega0);
    p.delta = m.get("delta", p.delta);
    p.g = m.get("g", p.g);
    p.eta = m.get("eta", p.eta);
    p.mirror_cutoff = m.get<Index>("mirror_cutoff", p.mirror_cutoff);
    validate(p);
    require_cutoff(p.mirror_cutoff, "mirror_cutoff", b);
    s.model = p;
  } else {
    throw SpecError("config: unknown model.kind '" + kind + "'");
  }
  m.finish();

  Section n(numerics, "numerics");
  s.route = parse_route(n.get<std::string>("route", "auto"));
  n.finish();
  return s;
}

json to_json(const AlphaSolveSettings& s) {
  json model;
  if (const auto* p = std::get_if<RabiParams>(&s.model)) {
    model = {{"kind", "rabi"}, {"omega0", p->omega0}, {"omega_c", p->omega_c}, {"g", p->g}, {"nbar", p->nbar}};
  } else if (const auto* p = std::get_if<IsingCavityParams>(&s.model)) {
    model = {{"kind", "ising"}, {"n_sites", p->n_sites}, {"h", p->h}, {"j", p->j},
             {"g", p->g},       {"omega_c", p->omega_c}};
  } else if (const auto* p = std::get_if<OptomechParams>(&s.model)) {
    model = {{"kind", "optomech"}, {"omega0", p->omega0}, {"delta", p->delta}, {"g", p->g},
             {"eta", p->eta},      {"mirror_cutoff", p->mirror_cutoff}};
  }
  return {{"model", model}, {"numerics", {{"route", route_name(s.route)}}}};
}

}  // namespace cavelim::bench

#pragma once

// Experiment configuration: the in-memory form, named presets for the
// published experiments, and the JSON document format.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmsearch/bfoa.hpp"
#include "swarmsearch/field.hpp"
#include "swarmsearch/landscape.hpp"
#include "swarmsearch/metrics.hpp"
#include "swarmsearch/ssa.hpp"

namespace swarmsearch {

enum class Algorithm { SSA, BFOA };

inline std::string_view to_string(Algorithm a) { return a == Algorithm::SSA ? "ssa" : "bfoa"; }

struct ExperimentConfig {
  std::string name = "experiment";
  Algorithm algorithm = Algorithm::SSA;
  Schedule schedule;
  Lattice grid{100, 100};
  std::size_t agents = 0;
  std::vector<FieldParams> field{FieldParams{}};  // one shared entry or one per phase
  DirectionWeights direction_weights;
  BfoaParams bfoa;
  std::uint64_t seed = 1;
  std::vector<long> snapshot_steps;
  std::size_t replicates = 1;
  std::string output_dir;  // empty: caller's default
  std::optional<std::size_t> capture_radius;
  double adaptation_threshold = kDefaultAdaptationThreshold;
  bool check_invariants = false;

  bool operator==(const ExperimentConfig&) const = default;

  std::size_t radius() const { return capture_radius.value_or(default_capture_radius(grid)); }

  SsaConfig ssa_config(std::uint64_t run_seed) const {
    SsaConfig c;
    c.schedule = schedule;
    c.phase_params = field;
    c.direction_weights = direction_weights;
    c.n_ants = agents;
    c.lattice = grid;
    c.seed = run_seed;
    c.check_invariants = check_invariants;
    return c;
  }
};

inline void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError("field '" + field + "': " + why);
  };
  try {
    validate(c.schedule);
  } catch (const std::invalid_argument& e) {
    fail("schedule", e.what());
  }
  if (c.grid.width < 2 || c.grid.height < 2) fail("grid", "width and height must be >= 2");
  if (c.agents == 0) fail("agents", "must be >= 1");
  if (c.replicates < 1) fail("replicates", "must be >= 1");
  if (!(c.adaptation_threshold > 0.0 && c.adaptation_threshold <= 1.0)) {
    fail("adaptation_threshold", "must be in (0, 1]");
  }
  for (long t : c.snapshot_steps) {
    if (t < 0 || t > c.schedule.t_max) fail("snapshot_steps", "every step must lie in [0, t_max]");
  }
  if (c.algorithm == Algorithm::SSA) {
    if (c.agents > c.grid.size()) fail("agents", "more ants than lattice cells");
    if (c.field.empty() || (c.field.size() != 1 && c.field.size() != c.schedule.phases.size())) {
      fail("field", "give one parameter set or one per phase");
    }
    for (const FieldParams& fp : c.field) {
      if (!(fp.eta >= 0.0)) fail("field.eta", "must be >= 0");
      if (!(fp.p >= 0.0)) fail("field.p", "must be >= 0");
      if (!(fp.k >= 0.0 && fp.k <= 1.0)) fail("field.k", "must be in [0, 1]");
      if (!(fp.beta >= 0.0)) fail("field.beta", "must be >= 0");
      if (!(fp.gamma >= 0.0)) fail("field.gamma", "must be >= 0");
    }
    try {
      validate(c.direction_weights);
    } catch (const ConfigError& e) {
      fail("direction_weights", e.what());
    }
  } else {
    if (c.schedule.phases.size() != 1) fail("schedule", "BFOA runs take a single phase");
    if (c.agents != c.bfoa.S) fail("agents", "must equal bfoa.S");
    try {
      validate(c.bfoa);
    } catch (const ConfigError& e) {
      fail("bfoa", e.what());
    }
    const auto steps = static_cast<long>(c.bfoa.Ned * c.bfoa.Nre * c.bfoa.Nc);
    if (steps != c.schedule.t_max) fail("t_max", "must equal bfoa.Ned * bfoa.Nre * bfoa.Nc");
  }
}

// ---------------------------------------------------------------- presets

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "passino1", "passino2", "passino3"};
  return names;
}

inline std::string_view preset_description(std::string_view name) {
  if (name == "fig2") return "maximize F0a, 3000 ants, 1000 steps, 100x100";
  if (name == "fig3") return "maximize F0a, then maximize F0b from t=1001; 3000 ants, 1150 steps";
  if (name == "fig4") return "maximize F0a, then minimize F0a from t=251; 2000 ants, 500 steps";
  if (name == "fig5") return "minimize F6, then maximize F0a from t=301; 3000 ants, 600 steps";
  if (name == "passino1") return "minimize nutrient landscape 1, 50 ants, 400 steps, 30x30, beta=6";
  if (name == "passino2") return "minimize nutrient landscape 2, 50 ants, 400 steps, 30x30";
  if (name == "passino3") return "minimize then maximize nutrient landscape 1 within 400 steps, 30x30";
  return "";
}

inline std::optional<ExperimentConfig> find_preset(std::string_view name) {
  const TestFunction f0a = make_function(FunctionId::F0a);
  ExperimentConfig c;
  c.name = std::string(name);
  c.algorithm = Algorithm::SSA;
  c.grid = Lattice(100, 100);
  if (name == "fig2") {
    c.agents = 3000;
    c.schedule = {{{0, f0a, Objective::Maximize}}, 1000};
    c.field = {FieldParams{0.07, 1.93, 0.015, 3.5, 0.2}};
    c.snapshot_steps = {0, 50, 100, 500, 1000};
  } else if (name == "fig3") {
    c.agents = 3000;
    c.schedule = {{{0, f0a, Objective::Maximize}, {1001, make_function(FunctionId::F0b), Objective::Maximize}},
                  1150};
    c.field = {FieldParams{0.07, 1.93, 0.015, 3.5, 0.2}};
    c.snapshot_steps = {0, 500, 1000, 1010, 1050, 1080, 1100, 1150};
  } else if (name == "fig4") {
    c.agents = 2000;
    c.schedule = {{{0, f0a, Objective::Maximize}, {251, f0a, Objective::Minimize}}, 500};
    c.field = {FieldParams{0.10, 1.90, 1.0, 3.5, 0.2}};
    c.snapshot_steps = {50, 150, 250, 300, 350, 400, 450, 500};
  } else if (name == "fig5") {
    c.agents = 3000;
    c.schedule = {{{0, make_function(FunctionId::F6), Objective::Minimize}, {301, f0a, Objective::Maximize}}, 600};
    c.field = {FieldParams{0.01, 1.90, 1.0, 3.5, 0.2}};
    c.snapshot_steps = {20, 100, 300, 320, 400, 500, 600};
  } else if (name == "passino1" || name == "passino2" || name == "passino3") {
    const TestFunction nutrient = name == "passino2" ? passino_nutrient_2() : passino_nutrient_1();
    c.grid = Lattice(30, 30);
    c.agents = 50;
    if (name == "passino3") {
      c.schedule = {{{0, nutrient, Objective::Minimize}, {201, nutrient, Objective::Maximize}}, 400};
    } else {
      c.schedule = {{{0, nutrient, Objective::Minimize}}, 400};
    }
    c.field = {FieldParams{0.1, 1.9, 1.0, name == "passino1" ? 6.0 : 7.0, 0.2}};
    c.snapshot_steps = {0, 100, 200, 300, 400};
  } else {
    return std::nullopt;
  }
  c.bfoa = default_bfoa_params(c.schedule.phases.front().function.domain);
  c.bfoa.S = 50;
  return c;
}

// The BFOA run matched to an SSA configuration: same first-phase habitat and
// objective, same grid, S = 50 and Nre * Nc = t_max with a single
// elimination-dispersal event.
inline ExperimentConfig bfoa_counterpart(const ExperimentConfig& ssa) {
  ExperimentConfig b = ssa;
  b.name = ssa.name + "-bfoa";
  b.algorithm = Algorithm::BFOA;
  b.schedule.phases.resize(1);
  b.field = {FieldParams{}};
  b.bfoa = default_bfoa_params(b.schedule.phases.front().function.domain);
  b.bfoa.Ned = 1;
  b.bfoa.Nre = 4;
  b.bfoa.Nc = static_cast<std::size_t>(ssa.schedule.t_max) / 4;
  b.bfoa.S = 50;
  b.agents = b.bfoa.S;
  b.schedule.t_max = static_cast<long>(b.bfoa.Ned * b.bfoa.Nre * b.bfoa.Nc);
  std::erase_if(b.snapshot_steps, [&](long t) { return t > b.schedule.t_max; });
  return b;
}

// ---------------------------------------------------------------- JSON

using nlohmann::json;

// Parse and validation failures carry the line of the offending input
// where one is known.
class ConfigParseError : public ConfigError {
public:
  ConfigParseError(const std::string& what, std::size_t line) : ConfigError(what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

namespace detail {

inline void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) throw ConfigError("field '" + where + "': expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (std::string_view allowed : keys) known = known || allowed == k;
    if (!known) throw ConfigError("field '" + (where.empty() ? k : where + "." + k) + "': unknown key");
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + (where.empty() ? key : where + "." + key) + "': missing or wrong type");
  }
}

template <typename T>
void get_opt(const json& obj, const std::string& key, const std::string& where, T& out) {
  if (obj.contains(key)) out = get<T>(obj, key, where);
}

inline json interval_to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

inline Interval interval_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("field '" + where + "': expected [lo, hi]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Vec2 vec_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("field '" + where + "': expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline json function_to_json(const TestFunction& f) {
  json j;
  j["id"] = std::string(to_string(f.id));
  j["domain"] = {{"x", detail::interval_to_json(f.domain.x)}, {"y", detail::interval_to_json(f.domain.y)}};
  if (f.id == FunctionId::GaussMix) {
    json terms = json::array();
    for (const GaussTerm& t : f.terms) {
      terms.push_back({{"center", {t.center.x, t.center.y}}, {"weight", t.weight}, {"spread", t.spread}});
    }
    j["terms"] = terms;
    j["offset"] = f.offset;
    if (f.floor) j["floor"] = *f.floor;
  }
  return j;
}

// Accepts an id string ("F0a", "passino1", "passino2") or a full object.
inline TestFunction function_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "passino1") return passino_nutrient_1();
    if (s == "passino2") return passino_nutrient_2();
    const auto id = parse_function_id(s);
    if (!id || *id == FunctionId::GaussMix) throw ConfigError("field '" + where + "': unknown function '" + s + "'");
    return make_function(*id);
  }
  detail::reject_unknown(j, where, {"id", "domain", "terms", "offset", "floor"});
  const auto id_str = detail::get<std::string>(j, "id", where);
  const auto id = parse_function_id(id_str);
  if (!id) throw ConfigError("field '" + where + ".id': unknown function '" + id_str + "'");
  TestFunction f = make_function(*id);
  if (j.contains("domain")) {
    const json& d = j["domain"];
    detail::reject_unknown(d, where + ".domain", {"x", "y"});
    f.domain.x = detail::interval_from_json(d.at("x"), where + ".domain.x");
    f.domain.y = detail::interval_from_json(d.at("y"), where + ".domain.y");
  }
  if (*id == FunctionId::GaussMix) {
    if (j.contains("terms")) {
      const json& terms = j["terms"];
      if (!terms.is_array()) throw ConfigError("field '" + where + ".terms': expected an array");
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tw = where + ".terms[" + std::to_string(i) + "]";
        detail::reject_unknown(terms[i], tw, {"center", "weight", "spread"});
        GaussTerm t;
        t.center = detail::vec_from_json(terms[i].at("center"), tw + ".center");
        t.weight = detail::get<double>(terms[i], "weight", tw);
        t.spread = detail::get<double>(terms[i], "spread", tw);
        f.terms.push_back(t);
      }
    }
    detail::get_opt(j, "offset", where, f.offset);
    if (j.contains("floor")) f.floor = detail::get<double>(j, "floor", where);
  } else if (j.contains("terms") || j.contains("offset") || j.contains("floor")) {
    throw ConfigError("field '" + where + "': terms/offset/floor apply to GaussMix only");
  }
  try {
    validate(f);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("field '" + where + "': " + e.what());
  }
  return f;
}

inline json field_to_json(const FieldParams& fp) {
  return {{"eta", fp.eta}, {"p", fp.p}, {"k", fp.k}, {"beta", fp.beta}, {"gamma", fp.gamma}};
}

inline FieldParams field_from_json(const json& j, const std::string& where, FieldParams base) {
  detail::reject_unknown(j, where, {"eta", "p", "k", "beta", "gamma"});
  detail::get_opt(j, "eta", where, base.eta);
  detail::get_opt(j, "p", where, base.p);
  detail::get_opt(j, "k", where, base.k);
  detail::get_opt(j, "beta", where, base.beta);
  detail::get_opt(j, "gamma", where, base.gamma);
  return base;
}

inline json bfoa_to_json(const BfoaParams& p) {
  return {{"S", p.S},         {"Nc", p.Nc},
          {"Ns", p.Ns},       {"Nre", p.Nre},
          {"Ned", p.Ned},     {"p_ed", p.p_ed},
          {"step_size", p.step_size}, {"d_attract", p.d_attract},
          {"w_attract", p.w_attract}, {"h_repellent", p.h_repellent},
          {"w_repellent", p.w_repellent}};
}

inline BfoaParams bfoa_from_json(const json& j, BfoaParams base) {
  const std::string w = "bfoa";
  detail::reject_unknown(j, w,
                         {"S", "Nc", "Ns", "Nre", "Ned", "p_ed", "step_size", "d_attract", "w_attract",
                          "h_repellent", "w_repellent"});
  detail::get_opt(j, "S", w, base.S);
  detail::get_opt(j, "Nc", w, base.Nc);
  detail::get_opt(j, "Ns", w, base.Ns);
  detail::get_opt(j, "Nre", w, base.Nre);
  detail::get_opt(j, "Ned", w, base.Ned);
  detail::get_opt(j, "p_ed", w, base.p_ed);
  detail::get_opt(j, "step_size", w, base.step_size);
  detail::get_opt(j, "d_attract", w, base.d_attract);
  detail::get_opt(j, "w_attract", w, base.w_attract);
  detail::get_opt(j, "h_repellent", w, base.h_repellent);
  detail::get_opt(j, "w_repellent", w, base.w_repellent);
  return base;
}

inline json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["algorithm"] = std::string(to_string(c.algorithm));
  j["grid"] = {{"width", c.grid.width}, {"height", c.grid.height}};
  j["agents"] = c.agents;
  j["t_max"] = c.schedule.t_max;
  json phases = json::array();
  for (std::size_t i = 0; i < c.schedule.phases.size(); ++i) {
    const Phase& ph = c.schedule.phases[i];
    json pj{{"t_start", ph.t_start}, {"function", function_to_json(ph.function)},
            {"objective", std::string(to_string(ph.objective))}};
    if (c.field.size() > 1) pj["field"] = field_to_json(c.field[i]);
    phases.push_back(pj);
  }
  j["schedule"] = phases;
  if (c.field.size() == 1) j["field"] = field_to_json(c.field.front());
  j["direction_weights"] = c.direction_weights.w;
  j["bfoa"] = bfoa_to_json(c.bfoa);
  j["seed"] = c.seed;
  j["snapshot_steps"] = c.snapshot_steps;
  j["replicates"] = c.replicates;
  if (!c.output_dir.empty()) j["output_dir"] = c.output_dir;
  if (c.capture_radius) j["capture_radius"] = *c.capture_radius;
  j["adaptation_threshold"] = c.adaptation_threshold;
  j["check_invariants"] = c.check_invariants;
  return j;
}

// Builds a config from a parsed document. A "preset" key supplies the base
// values; every other key overrides them.
inline ExperimentConfig from_json(const json& j) {
  detail::reject_unknown(j, "",
                         {"preset", "name", "algorithm", "grid", "agents", "t_max", "schedule", "field",
                          "direction_weights", "bfoa", "seed", "snapshot_steps", "replicates", "output_dir",
                          "capture_radius", "adaptation_threshold", "check_invariants"});
  ExperimentConfig c;
  if (j.contains("preset")) {
    const auto name = detail::get<std::string>(j, "preset", "");
    auto p = find_preset(name);
    if (!p) throw ConfigError("field 'preset': unknown preset '" + name + "'");
    c = *p;
  }
  detail::get_opt(j, "name", "", c.name);
  if (j.contains("algorithm")) {
    const auto a = detail::get<std::string>(j, "algorithm", "");
    if (a == "ssa") c.algorithm = Algorithm::SSA;
    else if (a == "bfoa") c.algorithm = Algorithm::BFOA;
    else throw ConfigError("field 'algorithm': expected \"ssa\" or \"bfoa\"");
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    detail::reject_unknown(g, "grid", {"width", "height"});
    const auto w = detail::get<std::size_t>(g, "width", "grid");
    const auto h = detail::get<std::size_t>(g, "height", "grid");
    if (w < 2 || h < 2) throw ConfigError("field 'grid': width and height must be >= 2");
    c.grid = Lattice(w, h);
  }
  detail::get_opt(j, "agents", "", c.agents);
  detail::get_opt(j, "t_max", "", c.schedule.t_max);

  FieldParams shared = c.field.size() == 1 ? c.field.front() : FieldParams{};
  if (j.contains("field")) shared = field_from_json(j["field"], "field", shared);
  if (j.contains("schedule")) {
    const json& s = j["schedule"];
    if (!s.is_array()) throw ConfigError("field 'schedule': expected an array of phases");
    c.schedule.phases.clear();
    std::vector<FieldParams> per_phase;
    bool any_override = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string w = "schedule[" + std::to_string(i) + "]";
      detail::reject_unknown(s[i], w, {"t_start", "function", "objective", "field"});
      Phase ph;
      ph.t_start = detail::get<long>(s[i], "t_start", w);
      if (!s[i].contains("function")) throw ConfigError("field '" + w + ".function': missing");
      ph.function = function_from_json(s[i]["function"], w + ".function");
      const auto obj = parse_objective(detail::get<std::string>(s[i], "objective", w));
      if (!obj) throw ConfigError("field '" + w + ".objective': expected \"max\" or \"min\"");
      ph.objective = *obj;
      c.schedule.phases.push_back(ph);
      if (s[i].contains("field")) {
        any_override = true;
        per_phase.push_back(field_from_json(s[i]["field"], w + ".field", shared));
      } else {
        per_phase.push_back(shared);
      }
    }
    c.field = any_override ? per_phase : std::vector<FieldParams>{shared};
  } else if (j.contains("field")) {
    c.field = {shared};
  }
  if (j.contains("direction_weights")) {
    const json& w = j["direction_weights"];
    if (!w.is_array() || w.size() != 5) throw ConfigError("field 'direction_weights': expected 5 numbers");
    for (std::size_t i = 0; i < 5; ++i) {
      if (!w[i].is_number()) throw ConfigError("field 'direction_weights': expected 5 numbers");
      c.direction_weights.w[i] = w[i].get<double>();
    }
  }
  if (j.contains("bfoa")) c.bfoa = bfoa_from_json(j["bfoa"], c.bfoa);
  detail::get_opt(j, "seed", "", c.seed);
  if (j.contains("snapshot_steps")) c.snapshot_steps = detail::get<std::vector<long>>(j, "snapshot_steps", "");
  detail::get_opt(j, "replicates", "", c.replicates);
  detail::get_opt(j, "output_dir", "", c.output_dir);
  if (j.contains("capture_radius")) c.capture_radius = detail::get<std::size_t>(j, "capture_radius", "");
  detail::get_opt(j, "adaptation_threshold", "", c.adaptation_threshold);
  detail::get_opt(j, "check_invariants", "", c.check_invariants);
  validate(c);
  return c;
}

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

// Parses a config document. A bare preset name is accepted as shorthand
// for {"preset": name}.
inline ExperimentConfig load_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigParseError("parse error at line " + std::to_string(line) + ": " + e.what(), line);
  }
  if (j.is_string()) j = json{{"preset", j.get<std::string>()}};
  return from_json(j);
}

inline std::string serialize(const ExperimentConfig& c) { return to_json(c).dump(2) + "\n"; }

}  // namespace swarmsearch

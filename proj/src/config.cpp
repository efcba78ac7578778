#include "maee/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "maee/errors.hpp"
#include "maee/units.hpp"

namespace maee {

namespace {

using nlohmann::json;

// Reads keys from one object section, remembering which were consumed so
// leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& doc, std::string path) : path_(std::move(path)) {
    if (doc.is_null()) return;
    if (!doc.is_object()) throw ConfigError(path_ + ": expected an object");
    doc_ = &doc;
  }

  bool has(const char* key) const { return doc_ && doc_->contains(key); }

  std::optional<double> number(const char* key) {
    if (!has(key)) return std::nullopt;
    used_.insert(key);
    const json& v = (*doc_)[key];
    if (!v.is_number()) throw ConfigError(key_path(key) + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(key_path(key) + ": must be finite");
    return x;
  }

  std::optional<std::int64_t> integer(const char* key) {
    if (!has(key)) return std::nullopt;
    used_.insert(key);
    const json& v = (*doc_)[key];
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (x == std::floor(x) && std::abs(x) < 9e15) {
        return static_cast<std::int64_t>(x);
      }
    }
    throw ConfigError(key_path(key) + ": expected an integer");
  }

  const json* raw(const char* key) {
    if (!has(key)) return nullptr;
    used_.insert(key);
    return &(*doc_)[key];
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void reject_unknown() const {
    if (!doc_) return;
    for (const auto& item : doc_->items()) {
      if (!used_.count(item.key())) {
        throw ConfigError(key_path(item.key()) + ": unknown key");
      }
    }
  }

 private:
  const json* doc_ = nullptr;
  std::string path_;
  std::set<std::string> used_;
};

const json& child(const json& doc, const char* key) {
  static const json null_doc;
  return doc.contains(key) ? doc[key] : null_doc;
}

void parse_motor(const json& doc, MotorParamsd& m) {
  Section s(doc, "motor");
  if (auto v = s.integer("rotor_teeth")) {
    if (*v < 1 || *v > 100000) throw ConfigError("motor.rotor_teeth: must be positive");
    m.rotor_teeth = static_cast<int>(*v);
  }
  if (auto v = s.number("flux")) m.flux = *v;
  if (auto v = s.number("voltage")) m.voltage = *v;
  if (auto v = s.number("resistance")) m.resistance = *v;
  if (auto v = s.number("inductance")) m.inductance = *v;
  if (auto v = s.number("screw_radius")) m.screw_radius = *v;
  if (auto v = s.number("step_angle")) m.step_angle = *v;
  if (auto v = s.number("omega_max")) m.omega_max = *v;
  s.reject_unknown();
}

void parse_channel(const json& doc, ChannelParams& cp) {
  Section s(doc, "channel");
  if (auto v = s.number("wavelength")) cp.wavelength = *v;
  if (auto v = s.integer("num_paths")) {
    if (*v < 1 || *v > 100000) throw ConfigError("channel.num_paths: must be positive");
    cp.num_paths = static_cast<int>(*v);
  }
  if (auto v = s.number("distance")) cp.distance = *v;
  if (auto v = s.number("pathloss_exp")) cp.pathloss_exp = *v;
  if (s.has("ref_pathloss_dB") && s.has("ref_pathloss")) {
    throw ConfigError("channel: give either ref_pathloss_dB or ref_pathloss, not both");
  }
  if (auto v = s.number("ref_pathloss_dB")) cp.ref_pathloss = db_to_linear(*v);
  if (auto v = s.number("ref_pathloss")) cp.ref_pathloss = *v;
  if (s.has("noise_power_dBm") && s.has("noise_power_W")) {
    throw ConfigError("channel: give either noise_power_dBm or noise_power_W, not both");
  }
  if (auto v = s.number("noise_power_dBm")) cp.noise_power = dbm_to_watt(*v);
  if (auto v = s.number("noise_power_W")) cp.noise_power = *v;
  s.reject_unknown();
}

void parse_system(const json& doc, const ChannelParams& cp, SystemConfigd& sc) {
  Section s(doc, "system");
  sc.array_len = s.number("array_len").value_or(2.0 * cp.wavelength);
  sc.init_pos = s.number("init_pos").value_or(0.5 * sc.array_len);
  if (auto v = s.number("block_T")) sc.block_T = *v;
  if (s.has("P_max_dBm") && s.has("P_max_W")) {
    throw ConfigError("system: give either P_max_dBm or P_max_W, not both");
  }
  if (auto v = s.number("P_max_dBm")) sc.max_power = dbm_to_watt(*v);
  if (auto v = s.number("P_max_W")) sc.max_power = *v;
  if (s.has("P_s_dBm") && s.has("P_s_W")) {
    throw ConfigError("system: give either P_s_dBm or P_s_W, not both");
  }
  if (auto v = s.number("P_s_dBm")) sc.static_power = dbm_to_watt(*v);
  if (auto v = s.number("P_s_W")) sc.static_power = *v;
  if (auto v = s.number("grid_step")) sc.grid_step = *v;
  s.reject_unknown();
}

void parse_solver(const json& doc, SolverSettings& settings) {
  Section s(doc, "solver");
  if (auto v = s.number("eps")) settings.eps = *v;
  if (auto v = s.integer("max_iters")) {
    if (*v < 1 || *v > 1000000) throw ConfigError("solver.max_iters: must be in [1, 1e6]");
    settings.max_iters = static_cast<int>(*v);
  }
  if (auto v = s.integer("power_grid_size")) {
    if (*v < 2) throw ConfigError("solver.power_grid_size: must be at least 2");
    settings.power_grid_size = static_cast<std::size_t>(*v);
  }
  s.reject_unknown();
}

SweepSpec parse_sweep(const json& doc, std::uint64_t seed_base) {
  Section s(doc, "sweep");
  SweepSpec spec;
  spec.seed_base = seed_base;
  if (const json* p = s.raw("param")) {
    if (!p->is_string()) throw ConfigError("sweep.param: expected a string");
    spec.param = parse_sweep_param(p->get<std::string>());
  } else {
    throw ConfigError("sweep.param: required");
  }
  if (const json* v = s.raw("values")) {
    if (!v->is_array()) throw ConfigError("sweep.values: expected an array");
    for (const json& x : *v) {
      if (!x.is_number()) throw ConfigError("sweep.values: expected numbers");
      spec.values.push_back(x.get<double>());
    }
  }
  if (auto n = s.integer("realizations")) {
    if (*n < 1 || *n > 100000000) throw ConfigError("sweep.realizations: must be positive");
    spec.realizations = static_cast<int>(*n);
  }
  if (const json* v = s.raw("schemes")) {
    if (!v->is_array()) throw ConfigError("sweep.schemes: expected an array");
    spec.schemes.clear();
    for (const json& x : *v) {
      if (!x.is_string()) throw ConfigError("sweep.schemes: expected strings");
      try {
        spec.schemes.push_back(parse_scheme(x.get<std::string>()));
      } catch (const ConfigError& e) {
        throw ConfigError(std::string("sweep.schemes: ") + e.what());
      }
    }
  }
  s.reject_unknown();
  return spec;
}

}  // namespace

void validate(const RunConfig& config) {
  try {
    validate(config.motor);
    validate(config.channel);
    validate(config.system);
  } catch (const ModelError& e) {
    throw ConfigError(e.what());
  }
  if (!(config.solver.eps > 0.0)) throw ConfigError("solver.eps: must be positive");
  if (config.solver.max_iters < 1) throw ConfigError("solver.max_iters: must be positive");
  if (config.solver.power_grid_size < 2) {
    throw ConfigError("solver.power_grid_size: must be at least 2");
  }
  (void)build_grid(config.system, config.motor);
  if (config.sweep) {
    validate(*config.sweep);
    for (double value : config.sweep->values) {
      (void)apply_sweep_value(config.scenario(), config.sweep->param, value);
    }
  }
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object() && !doc.is_null()) {
    throw ConfigError("config: top level must be an object");
  }
  RunConfig config;
  Section top(doc, "");
  for (const char* section : {"motor", "channel", "system", "solver", "sweep"}) {
    (void)top.raw(section);
  }
  if (auto v = top.integer("seed_base")) {
    if (*v < 0) throw ConfigError("seed_base: must be non-negative");
    config.seed_base = static_cast<std::uint64_t>(*v);
  }
  top.reject_unknown();

  static const json empty_object = json::object();
  const json& d = doc.is_null() ? empty_object : doc;
  parse_motor(child(d, "motor"), config.motor);
  parse_channel(child(d, "channel"), config.channel);
  parse_system(child(d, "system"), config.channel, config.system);
  parse_solver(child(d, "solver"), config.solver);
  if (d.contains("sweep")) config.sweep = parse_sweep(d["sweep"], config.seed_base);
  validate(config);
  return config;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = text.find_first_not_of(" \t\r\n") == std::string::npos
              ? json::object()
              : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json to_json(const RunConfig& c) {
  json doc;
  doc["motor"] = {{"rotor_teeth", c.motor.rotor_teeth},
                  {"flux", c.motor.flux},
                  {"voltage", c.motor.voltage},
                  {"resistance", c.motor.resistance},
                  {"inductance", c.motor.inductance},
                  {"screw_radius", c.motor.screw_radius},
                  {"step_angle", c.motor.step_angle},
                  {"omega_max", c.motor.omega_max}};
  doc["channel"] = {{"wavelength", c.channel.wavelength},
                    {"num_paths", c.channel.num_paths},
                    {"distance", c.channel.distance},
                    {"pathloss_exp", c.channel.pathloss_exp},
                    {"ref_pathloss", c.channel.ref_pathloss},
                    {"noise_power_W", c.channel.noise_power}};
  doc["system"] = {{"array_len", c.system.array_len},
                   {"init_pos", c.system.init_pos},
                   {"block_T", c.system.block_T},
                   {"P_max_W", c.system.max_power},
                   {"P_s_W", c.system.static_power}};
  if (c.system.grid_step) doc["system"]["grid_step"] = *c.system.grid_step;
  doc["solver"] = {{"eps", c.solver.eps},
                   {"max_iters", c.solver.max_iters},
                   {"power_grid_size", c.solver.power_grid_size}};
  if (c.sweep) {
    json schemes = json::array();
    for (Scheme s : c.sweep->schemes) schemes.push_back(std::string(to_string(s)));
    doc["sweep"] = {{"param", std::string(to_string(c.sweep->param))},
                    {"values", c.sweep->values},
                    {"realizations", c.sweep->realizations},
                    {"schemes", schemes}};
  }
  doc["seed_base"] = c.seed_base;
  return doc;
}

std::string serialize_config(const RunConfig& config) {
  return to_json(config).dump(2) + "\n";
}

}  // namespace maee

#ifndef MAEE_CONFIG_HPP
#define MAEE_CONFIG_HPP

// Run configuration: a JSON document with optional sections
//
//   { "motor":   { "rotor_teeth", "flux", "voltage", "resistance",
//                  "inductance", "screw_radius", "step_angle", "omega_max" },
//     "channel": { "wavelength", "num_paths", "distance", "pathloss_exp",
//                  "ref_pathloss_dB" | "ref_pathloss",
//                  "noise_power_dBm" | "noise_power_W" },
//     "system":  { "array_len", "init_pos", "block_T",
//                  "P_max_dBm" | "P_max_W", "P_s_dBm" | "P_s_W", "grid_step" },
//     "solver":  { "eps", "max_iters", "power_grid_size" },
//     "sweep":   { "param", "values", "realizations", "schemes" },
//     "seed_base": 0 }
//
// Missing keys take the AM2224 / 30 m link defaults; array_len defaults to
// two wavelengths and init_pos to the array centre. Unknown keys are errors.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "maee/bench.hpp"
#include "maee/channel.hpp"
#include "maee/motor.hpp"
#include "maee/objective.hpp"
#include "maee/solver.hpp"
#include "json.hpp"

namespace maee {

struct RunConfig {
  MotorParamsd motor;
  ChannelParams channel;
  SystemConfigd system;
  SolverSettings solver;
  std::optional<SweepSpec> sweep;
  std::uint64_t seed_base = 0;

  Scenario scenario() const { return {motor, channel, system, solver}; }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws ConfigError (message prefixed with the key path) on any violation.
void validate(const RunConfig& config);

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

// Linear-unit document that parses back to an identical RunConfig.
nlohmann::json to_json(const RunConfig& config);
std::string serialize_config(const RunConfig& config);

}  // namespace maee

#endif  // MAEE_CONFIG_HPP

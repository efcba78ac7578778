// ma_ee: motor curves, single-realization solves and Monte-Carlo sweeps for
// the energy-efficient movable-antenna link.
//
// Configuration precedence: command-line flags > config file (--config or
// $MA_EE_CONFIG) > built-in defaults.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maee/bench.hpp"
#include "maee/channel.hpp"
#include "maee/config.hpp"
#include "maee/csv.hpp"
#include "maee/errors.hpp"
#include "maee/motor.hpp"
#include "maee/solver.hpp"

namespace {

using namespace maee;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
};

RunConfig resolve_config(const CommonOptions& common) {
  std::string path = common.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("MA_EE_CONFIG"); env && *env) path = env;
  }
  return path.empty() ? parse_config_text("{}") : load_config(path);
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_motor_curve(const CommonOptions& common, int points) {
  const RunConfig config = resolve_config(common);
  if (points < 2) throw ConfigError("--points: need at least 2");
  const double omega_end = no_load_speed(config.motor);
  Output out(common.out_path);
  std::ostream& os = out.stream();
  os << "omega_rad_s,torque_nm,power_w\n";
  for (int i = 0; i < points; ++i) {
    const double omega =
        i + 1 == points ? omega_end : omega_end * i / static_cast<double>(points - 1);
    os << format_number(omega) << ','
       << format_number(pull_out_torque(config.motor, omega)) << ','
       << format_number(shaft_power(config.motor, omega)) << '\n';
  }
  return 0;
}

void write_trace_csv(std::ostream& os, const SolveReport& report) {
  os << "candidate,x_t,iteration,eta,power\n";
  for (const CandidateResult& c : report.candidates) {
    for (std::size_t l = 0; l < c.trace.etas.size(); ++l) {
      os << c.index << ',' << format_number(c.position) << ',' << l << ','
         << format_number(c.trace.etas[l]) << ','
         << format_number(c.trace.powers[l]) << '\n';
    }
  }
}

int cmd_solve(const CommonOptions& common, std::optional<std::uint64_t> seed,
              const std::string& scheme_name, const std::string& format,
              bool trace, const std::string& dump_channel) {
  const RunConfig config = resolve_config(common);
  const std::uint64_t realization_seed = seed.value_or(config.seed_base);
  const Scheme scheme = parse_scheme(scheme_name);
  const ChannelRealization cr = sample_realization(config.channel, realization_seed);

  if (!dump_channel.empty()) {
    std::ofstream dump(dump_channel, std::ios::binary);
    if (!dump) throw ConfigError("cannot open " + dump_channel);
    write_realization_csv(dump, cr);
  }

  SolveReport report;
  if (scheme == Scheme::Proposed) {
    report = solve_detailed(config.system, config.motor, cr, config.channel,
                            config.solver);
  } else {
    report.best = run_scheme(scheme, config.scenario(), cr);
  }
  const Solution& s = report.best;

  Output out(common.out_path);
  std::ostream& os = out.stream();
  if (format == "json") {
    nlohmann::json j = {{"scheme", std::string(to_string(s.scheme))},
                        {"seed", realization_seed},
                        {"x_t", s.position},
                        {"x_index", s.position_index},
                        {"P", s.power},
                        {"v", s.speed},
                        {"ee", s.ee},
                        {"tau", s.delay},
                        {"movement", s.movement},
                        {"dinkelbach_iters", s.dinkelbach_iters}};
    os << j.dump() << '\n';
  } else {
    os << "scheme,seed,x_t,x_index,P,v,ee,tau,movement,dinkelbach_iters\n"
       << to_string(s.scheme) << ',' << realization_seed << ','
       << format_number(s.position) << ',' << s.position_index << ','
       << format_number(s.power) << ',' << format_number(s.speed) << ','
       << format_number(s.ee) << ',' << format_number(s.delay) << ','
       << format_number(s.movement) << ',' << s.dinkelbach_iters << '\n';
  }

  if (trace) {
    if (common.out_path.empty()) {
      os << '\n';
      write_trace_csv(os, report);
    } else {
      Output trace_out(common.out_path + ".trace.csv");
      write_trace_csv(trace_out.stream(), report);
    }
  }
  return 0;
}

struct SweepFlags {
  std::string param;
  std::string values;
  std::string schemes;
  std::optional<int> realizations;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

int cmd_sweep(const CommonOptions& common, const SweepFlags& flags) {
  const RunConfig config = resolve_config(common);
  SweepSpec spec = config.sweep.value_or(SweepSpec{});
  const bool from_file = config.sweep.has_value();
  if (!flags.param.empty()) {
    const SweepParam param = parse_sweep_param(flags.param);
    if (!from_file || param != spec.param) spec.values.clear();
    spec.param = param;
  } else if (!from_file) {
    throw ConfigError("--param: required when the config has no sweep section");
  }
  if (!flags.values.empty()) {
    spec.values.clear();
    for (const std::string& item : split(flags.values, ',')) {
      try {
        spec.values.push_back(parse_number(item));
      } catch (const ConfigError& e) {
        throw ConfigError(std::string("--values: ") + e.what());
      }
    }
  }
  if (spec.values.empty()) throw ConfigError("--values: required");
  if (!flags.schemes.empty()) {
    spec.schemes.clear();
    for (const std::string& item : split(flags.schemes, ',')) {
      spec.schemes.push_back(parse_scheme(item));
    }
  }
  if (flags.realizations) spec.realizations = *flags.realizations;
  spec.seed_base = flags.seed.value_or(config.seed_base);

  const SweepResult result = monte_carlo_sweep(spec, config.scenario(), flags.threads);
  Output out(common.out_path);
  write_sweep_csv(out.stream(), result);
  return 0;
}

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--config", common.config_path,
                  "JSON configuration file (default: $MA_EE_CONFIG)");
  cmd->add_option("--out", common.out_path, "Output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficiency optimisation for a stepper-driven movable antenna"};
  app.require_subcommand(1);

  CommonOptions common;

  int points = 1001;
  auto* curve = app.add_subcommand("motor-curve", "Emit (omega, M(omega), P_M(omega)) CSV up to the no-load speed");
  add_common(curve, common);
  curve->add_option("--points", points, "Number of rows")->check(CLI::Range(2, 10000000));

  std::optional<std::uint64_t> solve_seed;
  std::string scheme = "Proposed";
  std::string format = "csv";
  bool trace = false;
  std::string dump_channel;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one channel realization");
  add_common(solve_cmd, common);
  solve_cmd->add_option("--seed", solve_seed, "Realization seed (default: seed_base)");
  solve_cmd->add_option("--scheme", scheme, "Proposed, Benchmark1, Benchmark2 or FPA");
  solve_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  solve_cmd->add_flag("--trace", trace, "Dump the Dinkelbach trace of every candidate");
  solve_cmd->add_option("--dump-channel", dump_channel, "Write the sampled realization as CSV");

  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo sweep of one parameter");
  add_common(sweep_cmd, common);
  sweep_cmd->add_option("--param", sweep_flags.param,
                        "speed, array_len, P_max, block_T or num_paths");
  sweep_cmd->add_option("--values", sweep_flags.values,
                        "Comma-separated values in SI units (m/s, m, W, s, paths)");
  sweep_cmd->add_option("--realizations", sweep_flags.realizations)
      ->check(CLI::Range(1, 100000000));
  sweep_cmd->add_option("--seed", sweep_flags.seed, "Seed base (default: seed_base)");
  sweep_cmd->add_option("--schemes", sweep_flags.schemes, "Comma-separated scheme list");
  sweep_cmd->add_option("--threads", sweep_flags.threads, "Worker threads (0: all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*curve) return cmd_motor_curve(common, points);
    if (*solve_cmd) return cmd_solve(common, solve_seed, scheme, format, trace, dump_channel);
    if (*sweep_cmd) return cmd_sweep(common, sweep_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

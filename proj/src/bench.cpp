#include "maee/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "maee/csv.hpp"
#include "maee/errors.hpp"

namespace maee {

namespace {

SystemConfigd anchored(const SystemConfigd& sc, const PositionGrid& grid) {
  SystemConfigd out = sc;
  out.init_pos = grid.x0();
  return out;
}

[[noreturn]] void bad_value(SweepParam param, double value, const char* why) {
  std::ostringstream os;
  os << "sweep.values: " << to_string(param) << " = " << value << ' ' << why;
  throw ConfigError(os.str());
}

}  // namespace

Solution benchmark1_rate_max(const SystemConfigd& sc, const MotorParamsd& m,
                             const ChannelRealization& cr,
                             const ChannelParams& cp) {
  validate(sc);
  validate(m);
  validate(cp);
  const PositionGrid grid = build_grid(sc, m);
  const SystemConfigd local = anchored(sc, grid);
  const double speed = v_max(m);
  const Eigen::VectorXd gains = channel_gains(cr, cp, grid.candidates);

  Eigen::Index best = grid.x0_index;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double distance = std::abs(grid.candidates[j] - local.init_pos);
    if (!(distance < speed * sc.block_T)) continue;
    const double best_distance = std::abs(grid.candidates[best] - local.init_pos);
    if (gains[j] > gains[best] ||
        (gains[j] == gains[best] && distance < best_distance)) {
      best = j;
    }
  }

  Solution s;
  s.scheme = Scheme::Benchmark1;
  s.position = grid.candidates[best];
  s.position_index = best;
  s.power = sc.max_power;
  s.speed = speed;
  s.movement = std::abs(s.position - local.init_pos);
  s.delay = movement_delay(s.position, local.init_pos, speed);
  s.ee = energy_efficiency(OperatingPoint<double>{s.position, s.power, speed},
                           local, m, gains[best], cp.noise_power);
  return s;
}

Solution benchmark2_fixed_motor_power(const SystemConfigd& sc,
                                      const MotorParamsd& m,
                                      const ChannelRealization& cr,
                                      const ChannelParams& cp,
                                      const SolverSettings& settings) {
  SolveOptions options;
  options.scheme = Scheme::Benchmark2;
  options.decision_motor_power = motor_power(m, 0.5 * v_max(m));
  return solve_detailed(sc, m, cr, cp, settings, options).best;
}

Solution benchmark3_fpa(const SystemConfigd& sc, const MotorParamsd& m,
                        const ChannelRealization& cr, const ChannelParams& cp,
                        const SolverSettings& settings) {
  validate(sc);
  validate(m);
  validate(cp);
  const PositionGrid grid = build_grid(sc, m);
  const SystemConfigd local = anchored(sc, grid);
  const double speed = v_max(m);

  PowerProblem problem;
  problem.gain = channel_gain(cr, cp, local.init_pos);
  problem.noise_power = cp.noise_power;
  problem.max_power = sc.max_power;
  problem.static_power = sc.static_power;
  problem.transmit_span = speed * sc.block_T;
  problem.movement_energy = 0.0;
  const PowerSolution ps =
      dinkelbach_power(problem, settings.eps, settings.max_iters);

  Solution s;
  s.scheme = Scheme::Fpa;
  s.position = local.init_pos;
  s.position_index = grid.x0_index;
  s.power = ps.power;
  s.speed = speed;
  s.ee = energy_efficiency(OperatingPoint<double>{s.position, s.power, speed},
                           local, m, problem.gain, cp.noise_power);
  s.dinkelbach_iters =
      ps.trace.etas.empty() ? 0 : static_cast<int>(ps.trace.etas.size()) - 1;
  return s;
}

Solution run_scheme(Scheme scheme, const Scenario& sc,
                    const ChannelRealization& cr) {
  switch (scheme) {
    case Scheme::Proposed:
      return solve(sc.system, sc.motor, cr, sc.channel, sc.solver);
    case Scheme::Benchmark1:
      return benchmark1_rate_max(sc.system, sc.motor, cr, sc.channel);
    case Scheme::Benchmark2:
      return benchmark2_fixed_motor_power(sc.system, sc.motor, cr, sc.channel,
                                          sc.solver);
    case Scheme::Fpa:
      return benchmark3_fpa(sc.system, sc.motor, cr, sc.channel, sc.solver);
  }
  throw DomainError("run_scheme: unknown scheme");
}

std::string_view to_string(SweepParam param) {
  switch (param) {
    case SweepParam::Speed: return "speed";
    case SweepParam::ArrayLen: return "array_len";
    case SweepParam::MaxPower: return "P_max";
    case SweepParam::BlockT: return "block_T";
    case SweepParam::NumPaths: return "num_paths";
  }
  return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
  for (auto p : {SweepParam::Speed, SweepParam::ArrayLen, SweepParam::MaxPower,
                 SweepParam::BlockT, SweepParam::NumPaths}) {
    if (name == to_string(p)) return p;
  }
  throw ConfigError("sweep.param: unknown parameter '" + std::string(name) +
                    "' (expected speed, array_len, P_max, block_T or num_paths)");
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep.values: must not be empty");
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    if (!(spec.values[i - 1] < spec.values[i])) {
      throw ConfigError("sweep.values: must be strictly increasing");
    }
  }
  if (spec.realizations < 1) {
    throw ConfigError("sweep.realizations: must be at least 1");
  }
  if (spec.schemes.empty()) throw ConfigError("sweep.schemes: must not be empty");
}

const SweepRow& SweepResult::at(double value, Scheme scheme) const {
  for (const SweepRow& row : rows) {
    if (row.param_value == value && row.scheme == scheme) return row;
  }
  throw DomainError("SweepResult: no row for the requested value and scheme");
}

Scenario apply_sweep_value(const Scenario& base, SweepParam param, double value) {
  if (!std::isfinite(value)) bad_value(param, value, "is not finite");
  Scenario out = base;
  switch (param) {
    case SweepParam::Speed:
      if (!(value > 0.0) || value > v_max(base.motor)) {
        bad_value(param, value, "outside (0, v_max]");
      }
      break;
    case SweepParam::ArrayLen:
      if (!(value > 0.0)) bad_value(param, value, "must be positive");
      out.system.array_len = value;
      out.system.init_pos = base.system.init_pos * value / base.system.array_len;
      break;
    case SweepParam::MaxPower:
      if (!(value > 0.0)) bad_value(param, value, "must be positive");
      out.system.max_power = value;
      break;
    case SweepParam::BlockT:
      if (!(value > 0.0)) bad_value(param, value, "must be positive");
      out.system.block_T = value;
      break;
    case SweepParam::NumPaths:
      if (!(value >= 1.0) || value != std::floor(value) || value > 1e6) {
        bad_value(param, value, "must be a positive integer");
      }
      out.channel.num_paths = static_cast<int>(value);
      break;
  }
  try {
    validate(out.system);
    validate(out.motor);
    validate(out.channel);
    (void)build_grid(out.system, out.motor);
  } catch (const std::exception& e) {
    bad_value(param, value, e.what());
  }
  return out;
}

SweepResult monte_carlo_sweep(const SweepSpec& spec, const Scenario& base,
                              unsigned threads) {
  validate(spec);
  std::vector<Scenario> scenarios;
  scenarios.reserve(spec.values.size());
  for (double value : spec.values) {
    scenarios.push_back(apply_sweep_value(base, spec.param, value));
  }

  const std::size_t n_values = spec.values.size();
  const std::size_t n_schemes = spec.schemes.size();
  const auto n_real = static_cast<std::size_t>(spec.realizations);
  // solutions[(v * n_real + r) * n_schemes + s]
  std::vector<Solution> solutions(n_values * n_real * n_schemes);

  auto work = [&](std::size_t item) {
    const std::size_t v = item / n_real;
    const std::size_t r = item % n_real;
    const Scenario& sc = scenarios[v];
    const PositionGrid grid = build_grid(sc.system, sc.motor);
    const ChannelRealization cr = shift_reference(
        sample_realization(sc.channel, spec.seed_base + r), sc.channel, grid.x0());
    for (std::size_t s = 0; s < n_schemes; ++s) {
      Solution sol;
      if (spec.param == SweepParam::Speed && spec.schemes[s] == Scheme::Proposed) {
        SolveOptions options;
        options.speed = spec.values[v];
        sol = solve_detailed(sc.system, sc.motor, cr, sc.channel, sc.solver, options)
                  .best;
      } else {
        sol = run_scheme(spec.schemes[s], sc, cr);
      }
      solutions[item * n_schemes + s] = sol;
    }
  };

  const std::size_t n_items = n_values * n_real;
  unsigned n_threads = threads ? threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(n_items)));
  if (n_threads == 1) {
    for (std::size_t i = 0; i < n_items; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n_items; i = next++) {
          try {
            work(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n_items;
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  SweepResult result;
  result.param = spec.param;
  for (std::size_t v = 0; v < n_values; ++v) {
    for (std::size_t s = 0; s < n_schemes; ++s) {
      double sum_ee = 0.0, sum_move = 0.0, sum_power = 0.0;
      for (std::size_t r = 0; r < n_real; ++r) {
        const Solution& sol = solutions[(v * n_real + r) * n_schemes + s];
        sum_ee += sol.ee;
        sum_move += sol.movement;
        sum_power += sol.power;
      }
      const double n = static_cast<double>(n_real);
      SweepRow row;
      row.param_value = spec.values[v];
      row.scheme = spec.schemes[s];
      row.mean_ee = sum_ee / n;
      row.mean_move = sum_move / n;
      row.mean_power = sum_power / n;
      if (n_real > 1) {
        double ss = 0.0;
        for (std::size_t r = 0; r < n_real; ++r) {
          const double d = solutions[(v * n_real + r) * n_schemes + s].ee - row.mean_ee;
          ss += d * d;
        }
        row.std_ee = std::sqrt(ss / (n - 1.0));
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << "param,scheme,mean_ee,std_ee,mean_move_m,mean_power_w\n";
  for (const SweepRow& row : result.rows) {
    os << format_number(row.param_value) << ',' << to_string(row.scheme) << ','
       << format_number(row.mean_ee) << ',' << format_number(row.std_ee) << ','
       << format_number(row.mean_move) << ',' << format_number(row.mean_power)
       << '\n';
  }
}

}  // namespace maee

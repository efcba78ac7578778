#include "maee/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "maee/errors.hpp"

namespace maee {

namespace {

// Ranking used by the enumeration: higher key wins, then less movement, then
// the lower index (candidates are visited in index order).
bool better(double key, double movement, double best_key, double best_movement) {
  if (key != best_key) return key > best_key;
  return movement < best_movement;
}

SystemConfigd anchored(const SystemConfigd& sc, const PositionGrid& grid) {
  SystemConfigd out = sc;
  out.init_pos = grid.x0();
  return out;
}

void validate_inputs(const SystemConfigd& sc, const MotorParamsd& m,
                     const ChannelParams& cp) {
  validate(sc);
  validate(m);
  validate(cp);
}

}  // namespace

PositionGrid build_grid(const SystemConfigd& sc, const MotorParamsd& m) {
  const double step = sc.grid_step.value_or(step_size(m));
  if (!(step > 0.0)) throw ConfigError("system.grid_step: must be positive");
  // The relative slack keeps A = k d_s from flooring to k - 1.
  const double ratio = sc.array_len / step;
  const auto count = static_cast<Eigen::Index>(std::floor(ratio * (1.0 + 1e-12)));
  if (count < 1) {
    std::ostringstream os;
    os << "system.array_len: " << sc.array_len
       << " m is shorter than one step of " << step << " m";
    throw ConfigError(os.str());
  }
  PositionGrid grid;
  grid.step = step;
  grid.candidates =
      Eigen::VectorXd::LinSpaced(count, 0.0, static_cast<double>(count - 1)) * step;

  const double q = sc.init_pos / step;
  auto index = static_cast<Eigen::Index>(std::floor(q));
  if (q - std::floor(q) > 0.5) ++index;
  grid.x0_index = std::clamp<Eigen::Index>(index, 0, count - 1);
  return grid;
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Proposed: return "Proposed";
    case Scheme::Benchmark1: return "Benchmark1";
    case Scheme::Benchmark2: return "Benchmark2";
    case Scheme::Fpa: return "FPA";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (auto s : {Scheme::Proposed, Scheme::Benchmark1, Scheme::Benchmark2,
                 Scheme::Fpa}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

double PowerProblem::ratio(double power) const {
  if (movement_energy == 0.0) {
    return ee_asymptotic(power, gain, noise_power, static_power);
  }
  const double r = rate(gain, power, noise_power);
  return transmit_span * r /
         (transmit_span * (power + static_power) + movement_energy);
}

std::optional<double> dinkelbach_power_update(double eta_prev, double gain,
                                              double noise_power,
                                              double max_power) {
  if (!(gain > 0.0)) return std::nullopt;
  if (!(eta_prev > 0.0)) {
    throw DomainError("dinkelbach_power_update: eta must be positive");
  }
  const double water_level = 1.0 / (eta_prev * std::numbers::ln2);
  const double power = std::max(water_level - noise_power / gain, 0.0);
  return std::min(power, max_power);
}

PowerSolution dinkelbach_power(const PowerProblem& problem, double eps,
                               int max_iters) {
  if (!(eps > 0.0)) throw DomainError("dinkelbach_power: eps must be positive");
  PowerSolution out;
  if (!(problem.gain > 0.0)) {
    out.trace.converged = true;
    return out;
  }
  double power = problem.max_power;
  double eta = problem.ratio(power);
  out.trace.powers.push_back(power);
  out.trace.etas.push_back(eta);
  for (int iter = 0; iter < max_iters; ++iter) {
    const double next_power = *dinkelbach_power_update(
        eta, problem.gain, problem.noise_power, problem.max_power);
    const double next_eta = problem.ratio(next_power);
    out.trace.powers.push_back(next_power);
    out.trace.etas.push_back(next_eta);
    const bool done = std::abs(next_eta - eta) < eps;
    power = next_power;
    eta = next_eta;
    if (done) {
      out.trace.converged = true;
      break;
    }
  }
  out.power = power;
  out.eta = eta;
  return out;
}

PowerSolution dinkelbach_power(double x_t, const PositionGrid& grid,
                               const SystemConfigd& sc, const MotorParamsd& m,
                               const ChannelRealization& cr,
                               const ChannelParams& cp,
                               const SolverSettings& settings) {
  const double speed = v_max(m);
  const double distance = std::abs(x_t - grid.x0());
  if (!(distance < speed * sc.block_T)) {
    std::ostringstream os;
    os << "destination " << x_t << " m is not reachable within the block ("
       << distance << " m >= " << speed * sc.block_T << " m)";
    throw FeasibilityError(os.str());
  }
  PowerProblem problem;
  problem.gain = channel_gain(cr, cp, x_t);
  problem.noise_power = cp.noise_power;
  problem.max_power = sc.max_power;
  problem.static_power = sc.static_power;
  problem.transmit_span = speed * sc.block_T - distance;
  problem.movement_energy = motor_power(m, speed) * distance;
  return dinkelbach_power(problem, settings.eps, settings.max_iters);
}

SolveReport solve_detailed(const SystemConfigd& sc, const MotorParamsd& m,
                           const ChannelRealization& cr,
                           const ChannelParams& cp,
                           const SolverSettings& settings,
                           const SolveOptions& options) {
  validate_inputs(sc, m, cp);
  const PositionGrid grid = build_grid(sc, m);
  const SystemConfigd local = anchored(sc, grid);
  const double speed = options.speed.value_or(v_max(m));
  if (!(speed > 0.0) || speed > v_max(m)) {
    std::ostringstream os;
    os << "speed " << speed << " m/s outside (0, " << v_max(m) << "]";
    throw DomainError(os.str());
  }
  const double true_motor_power = motor_power(m, speed);
  const double decision_motor_power =
      options.decision_motor_power.value_or(true_motor_power);
  const Eigen::VectorXd gains = channel_gains(cr, cp, grid.candidates);

  SolveReport report;
  report.candidates.reserve(static_cast<std::size_t>(grid.size()));
  bool have_best = false;
  double best_key = 0.0;
  const CandidateResult* best = nullptr;

  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    CandidateResult c;
    c.index = j;
    c.position = grid.candidates[j];
    c.gain = gains[j];
    const double distance = std::abs(c.position - local.init_pos);
    c.reachable = distance < speed * sc.block_T;
    if (c.reachable) {
      PowerProblem problem;
      problem.gain = c.gain;
      problem.noise_power = cp.noise_power;
      problem.max_power = sc.max_power;
      problem.static_power = sc.static_power;
      problem.transmit_span = speed * sc.block_T - distance;
      problem.movement_energy = decision_motor_power * distance;
      PowerSolution ps = dinkelbach_power(problem, settings.eps, settings.max_iters);
      c.power = ps.power;
      c.decision_ee = ps.eta;
      c.trace = std::move(ps.trace);
      c.ee = energy_efficiency(OperatingPoint<double>{c.position, c.power, speed},
                               local, m, c.gain, cp.noise_power);
    }
    report.candidates.push_back(std::move(c));
  }

  for (const CandidateResult& c : report.candidates) {
    if (!c.reachable) continue;
    const double key = options.decision_motor_power ? c.decision_ee : c.ee;
    const double movement = std::abs(c.position - local.init_pos);
    if (!have_best ||
        better(key, movement, best_key, std::abs(best->position - local.init_pos))) {
      have_best = true;
      best_key = key;
      best = &c;
    }
  }

  // x0 is always reachable, so `best` is set.
  Solution& s = report.best;
  s.scheme = options.scheme;
  s.position = best->position;
  s.position_index = best->index;
  s.power = best->power;
  s.speed = speed;
  s.ee = best->ee;
  s.movement = std::abs(best->position - local.init_pos);
  s.delay = movement_delay(best->position, local.init_pos, speed);
  s.dinkelbach_iters =
      best->trace.etas.empty() ? 0 : static_cast<int>(best->trace.etas.size()) - 1;
  return report;
}

Solution solve(const SystemConfigd& sc, const MotorParamsd& m,
               const ChannelRealization& cr, const ChannelParams& cp,
               const SolverSettings& settings) {
  return solve_detailed(sc, m, cr, cp, settings).best;
}

Solution brute_force_oracle(const SystemConfigd& sc, const MotorParamsd& m,
                            const ChannelRealization& cr,
                            const ChannelParams& cp,
                            std::size_t power_grid_size) {
  validate_inputs(sc, m, cp);
  if (power_grid_size < 2) {
    throw DomainError("brute_force_oracle: power grid needs at least 2 points");
  }
  const PositionGrid grid = build_grid(sc, m);
  const SystemConfigd local = anchored(sc, grid);
  const double speed = v_max(m);
  const double step = sc.max_power / static_cast<double>(power_grid_size - 1);

  Solution best;
  best.scheme = Scheme::Proposed;
  bool have_best = false;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double x = grid.candidates[j];
    const double distance = std::abs(x - local.init_pos);
    if (!(distance < speed * sc.block_T)) continue;
    const double gain = channel_gain(cr, cp, x);
    for (std::size_t i = 0; i < power_grid_size; ++i) {
      const double power = i + 1 == power_grid_size
                               ? sc.max_power
                               : step * static_cast<double>(i);
      const double ee = energy_efficiency(OperatingPoint<double>{x, power, speed},
                                          local, m, gain, cp.noise_power);
      if (!have_best || better(ee, distance, best.ee, best.movement)) {
        have_best = true;
        best.position = x;
        best.position_index = j;
        best.power = power;
        best.ee = ee;
        best.movement = distance;
      }
    }
  }
  best.speed = speed;
  best.delay = movement_delay(best.position, local.init_pos, speed);
  return best;
}

}  // namespace maee

#ifndef MAEE_SOLVER_HPP
#define MAEE_SOLVER_HPP

// Joint position / speed / power EE maximisation.
//
// EE increases with the lead-screw speed for any fixed destination, so the
// motor always runs at v_max. For a fixed destination the remaining power
// problem is a concave-over-affine fractional program solved by Dinkelbach
// iterations with a closed-form inner step; the destination is then picked
// by enumerating the discrete step grid.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "maee/channel.hpp"
#include "maee/motor.hpp"
#include "maee/objective.hpp"

namespace maee {

// Candidate positions {0, d_s, ..., (J_x - 1) d_s}, J_x = floor(A / d_s).
struct PositionGrid {
  double step = 0.0;
  Eigen::VectorXd candidates;
  Eigen::Index x0_index = 0;  // candidate nearest to the requested x0

  Eigen::Index size() const { return candidates.size(); }
  double x0() const { return candidates[x0_index]; }
};

// Ties in the x0 snap go to the lower index. Throws ConfigError if the array
// is shorter than one step.
PositionGrid build_grid(const SystemConfigd& sc, const MotorParamsd& m);

enum class Scheme { Proposed, Benchmark1, Benchmark2, Fpa };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

struct SolverSettings {
  double eps = 1e-9;                      // |eta_l - eta_{l-1}| stop threshold
  int max_iters = 100;
  std::size_t power_grid_size = 100000;   // brute-force oracle resolution

  friend bool operator==(const SolverSettings&, const SolverSettings&) = default;
};

struct DinkelbachTrace {
  std::vector<double> etas;    // eta^(0), eta^(1), ...
  std::vector<double> powers;  // P^(0) = P_max, P^(1), ...
  bool converged = false;
};

// Single-destination power problem
//
//   max_{0 <= P <= P_max}  a R(P) / (a (P + P_s) + G),
//
// with a = v T - |x_t - x0| and G = P_M |x_t - x0|. Dividing through by v
// gives back the block EE.
struct PowerProblem {
  double gain = 0.0;
  double noise_power = 1.0;
  double max_power = 1.0;
  double static_power = 0.0;
  double transmit_span = 1.0;    // a [m]
  double movement_energy = 0.0;  // G [W m]

  // Objective value at `power`; with G = 0 this is exactly R / (P + P_s).
  double ratio(double power) const;
};

// argmax_P of a R(P) - eta (a (P + P_s) + G):
// min([1 / (eta ln 2) - sigma^2 / gain]^+, P_max). Returns nullopt for a
// zero channel, where the rate vanishes for every P.
std::optional<double> dinkelbach_power_update(double eta_prev, double gain,
                                              double noise_power,
                                              double max_power);

struct PowerSolution {
  double power = 0.0;
  double eta = 0.0;
  DinkelbachTrace trace;
};

PowerSolution dinkelbach_power(const PowerProblem& problem, double eps,
                               int max_iters = 100);

// Builds the PowerProblem for destination x_t at v_max and solves it. Throws
// FeasibilityError if |x_t - x0| >= v_max T.
PowerSolution dinkelbach_power(double x_t, const PositionGrid& grid,
                               const SystemConfigd& sc, const MotorParamsd& m,
                               const ChannelRealization& cr,
                               const ChannelParams& cp,
                               const SolverSettings& settings = {});

struct Solution {
  Scheme scheme = Scheme::Proposed;
  double position = 0.0;  // x_t*
  Eigen::Index position_index = 0;
  double power = 0.0;     // P*
  double speed = 0.0;     // v*
  double ee = 0.0;        // under the speed-dependent motor model
  double delay = 0.0;     // tau
  double movement = 0.0;  // |x_t* - x0|
  int dinkelbach_iters = 0;
};

struct CandidateResult {
  Eigen::Index index = 0;
  double position = 0.0;
  double gain = 0.0;
  bool reachable = false;
  double power = 0.0;
  double decision_ee = 0.0;  // objective the search ranked by
  double ee = 0.0;           // under the speed-dependent motor model
  DinkelbachTrace trace;
};

struct SolveOptions {
  Scheme scheme = Scheme::Proposed;
  // Forces the lead-screw speed instead of v_max.
  std::optional<double> speed;
  // Constant motor power used for the decisions; reported EE still uses the
  // speed-dependent model.
  std::optional<double> decision_motor_power;
};

struct SolveReport {
  Solution best;
  std::vector<CandidateResult> candidates;
};

SolveReport solve_detailed(const SystemConfigd& sc, const MotorParamsd& m,
                           const ChannelRealization& cr,
                           const ChannelParams& cp,
                           const SolverSettings& settings = {},
                           const SolveOptions& options = {});

Solution solve(const SystemConfigd& sc, const MotorParamsd& m,
               const ChannelRealization& cr, const ChannelParams& cp,
               const SolverSettings& settings = {});

// Exhaustive search over every reachable candidate and a uniform power grid
// of `power_grid_size` points on [0, P_max].
Solution brute_force_oracle(const SystemConfigd& sc, const MotorParamsd& m,
                            const ChannelRealization& cr,
                            const ChannelParams& cp,
                            std::size_t power_grid_size = 100000);

}  // namespace maee

#endif  // MAEE_SOLVER_HPP

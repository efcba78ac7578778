#ifndef MAEE_BENCH_HPP
#define MAEE_BENCH_HPP

// Baseline schemes and the Monte-Carlo sweep harness.
//
// Every scheme reports its EE under the speed-dependent motor model, so the
// schemes are compared against one physical ground truth.

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "maee/channel.hpp"
#include "maee/motor.hpp"
#include "maee/objective.hpp"
#include "maee/solver.hpp"

namespace maee {

struct Scenario {
  MotorParamsd motor;
  ChannelParams channel;
  SystemConfigd system;
  SolverSettings solver;
};

// Position maximising |h(x)|^2 over the reachable candidates (ties: least
// movement), transmitting at P_max with v = v_max.
Solution benchmark1_rate_max(const SystemConfigd& sc, const MotorParamsd& m,
                             const ChannelRealization& cr,
                             const ChannelParams& cp);

// Enumeration and Dinkelbach power as in `solve`, but the decisions assume
// the constant motor power P_M(v_max / 2).
Solution benchmark2_fixed_motor_power(const SystemConfigd& sc,
                                      const MotorParamsd& m,
                                      const ChannelRealization& cr,
                                      const ChannelParams& cp,
                                      const SolverSettings& settings = {});

// Antenna kept at the (snapped) initial position; Dinkelbach power.
Solution benchmark3_fpa(const SystemConfigd& sc, const MotorParamsd& m,
                        const ChannelRealization& cr, const ChannelParams& cp,
                        const SolverSettings& settings = {});

Solution run_scheme(Scheme scheme, const Scenario& scenario,
                    const ChannelRealization& cr);

enum class SweepParam { Speed, ArrayLen, MaxPower, BlockT, NumPaths };

std::string_view to_string(SweepParam param);
SweepParam parse_sweep_param(std::string_view name);

struct SweepSpec {
  SweepParam param = SweepParam::ArrayLen;
  std::vector<double> values;  // SI units (m/s, m, W, s, paths)
  int realizations = 200;
  std::uint64_t seed_base = 0;
  std::vector<Scheme> schemes = {Scheme::Proposed, Scheme::Benchmark1,
                                 Scheme::Benchmark2, Scheme::Fpa};

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

void validate(const SweepSpec& spec);

struct SweepRow {
  double param_value = 0.0;
  Scheme scheme = Scheme::Proposed;
  double mean_ee = 0.0;
  double std_ee = 0.0;  // sample standard deviation, 0 for one realization
  double mean_move = 0.0;
  double mean_power = 0.0;
};

struct SweepResult {
  SweepParam param = SweepParam::ArrayLen;
  std::vector<SweepRow> rows;  // value-major, schemes in spec order

  const SweepRow& at(double value, Scheme scheme) const;
};

// Scenario with the swept parameter set to `value`. Sweeping the array
// length keeps x0 at the same fraction of A. Throws ConfigError for values
// the parameter cannot take.
Scenario apply_sweep_value(const Scenario& base, SweepParam param, double value);

// Realization i uses seed seed_base + i, with its phase reference moved to
// the snapped initial position so that every swept value sees the same
// channel around x0. Work is spread over `threads` workers (0: hardware
// concurrency); the reduction runs in index order, so the result does not
// depend on scheduling.
SweepResult monte_carlo_sweep(const SweepSpec& spec, const Scenario& base,
                              unsigned threads = 0);

// Columns: param,scheme,mean_ee,std_ee,mean_move_m,mean_power_w.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

}  // namespace maee

#endif  // MAEE_BENCH_HPP

#ifndef MAEE_OBJECTIVE_HPP
#define MAEE_OBJECTIVE_HPP

// Block-level rate, energy and energy-efficiency (EE) model.
//
// A coherence block of length T is split into a movement stage of duration
// tau = |x_t - x0| / v, during which only the motor draws power, and a
// transmission stage of T - tau at radiated power P plus static power P_s.
// EE = (T - tau) R / E_total, in bits/Hz/J.

#include <cmath>
#include <optional>
#include <sstream>

#include "maee/errors.hpp"
#include "maee/motor.hpp"
#include "maee/units.hpp"

namespace maee {

template <typename Scalar = double>
struct SystemConfig {
  Scalar array_len = Scalar(0.12);               // A [m]
  Scalar init_pos = Scalar(0.06);                // x0 [m]
  Scalar block_T = Scalar(0.05);                 // T [s]
  Scalar max_power = dbm_to_watt(Scalar(46));    // P_max [W]
  Scalar static_power = dbm_to_watt(Scalar(30)); // P_s [W]
  // Replaces omega_D * l0 as the grid step when set.
  std::optional<Scalar> grid_step;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

using SystemConfigd = SystemConfig<double>;

template <typename Scalar>
void validate(const SystemConfig<Scalar>& sc) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ModelError(std::string("system.") + what);
  };
  require(sc.array_len > Scalar(0), "array_len: must be positive");
  require(sc.init_pos >= Scalar(0) && sc.init_pos <= sc.array_len,
          "init_pos: must lie in [0, array_len]");
  require(sc.block_T > Scalar(0), "block_T: must be positive");
  require(sc.max_power > Scalar(0), "max_power: must be positive");
  require(sc.static_power >= Scalar(0), "static_power: must be non-negative");
  require(!sc.grid_step || *sc.grid_step > Scalar(0),
          "grid_step: must be positive");
}

template <typename Scalar = double>
struct OperatingPoint {
  Scalar position;  // x_t [m]
  Scalar power;     // P [W]
  Scalar speed;     // v [m/s]
};

// log2(1 + P gain / sigma^2) in bits/s/Hz.
template <typename Scalar>
Scalar rate(Scalar gain, Scalar power, Scalar noise_power) {
  using std::log2;
  if (!(noise_power > Scalar(0))) {
    throw DomainError("rate: noise power must be positive");
  }
  if (!(gain >= Scalar(0)) || !(power >= Scalar(0))) {
    throw DomainError("rate: gain and power must be non-negative");
  }
  return log2(Scalar(1) + power * gain / noise_power);
}

template <typename Scalar>
Scalar movement_delay(Scalar x_t, Scalar x0, Scalar speed) {
  using std::abs;
  if (!(speed > Scalar(0))) {
    throw DomainError("movement_delay: speed must be positive");
  }
  return abs(x_t - x0) / speed;
}

// Throws DomainError unless 0 <= P <= P_max, 0 < v <= v_max and the
// destination is reachable within the block (|x_t - x0| <= v T).
template <typename Scalar>
void check_feasible(const OperatingPoint<Scalar>& op,
                    const SystemConfig<Scalar>& sc,
                    const MotorParams<Scalar>& m) {
  using std::abs;
  const Scalar distance = abs(op.position - sc.init_pos);
  const bool power_ok = op.power >= Scalar(0) && op.power <= sc.max_power;
  const bool speed_ok = op.speed > Scalar(0) && op.speed <= v_max(m);
  if (power_ok && speed_ok && distance <= op.speed * sc.block_T) return;

  std::ostringstream os;
  os << "infeasible operating point: ";
  if (!power_ok) {
    os << "power " << op.power << " W outside [0, " << sc.max_power << "]";
  } else if (!speed_ok) {
    os << "speed " << op.speed << " m/s outside (0, " << v_max(m) << "]";
  } else {
    os << "|x_t - x0| = " << distance << " m exceeds v T = "
       << op.speed * sc.block_T << " m";
  }
  throw DomainError(os.str());
}

// Movement time, clamped to the block length against rounding at v T = |dx|.
template <typename Scalar>
Scalar block_delay(const OperatingPoint<Scalar>& op,
                   const SystemConfig<Scalar>& sc) {
  using std::min;
  return min(movement_delay(op.position, sc.init_pos, op.speed), sc.block_T);
}

// E_total = tau P_M(v) + (T - tau)(P + P_s).
template <typename Scalar>
Scalar total_energy(const OperatingPoint<Scalar>& op,
                    const SystemConfig<Scalar>& sc,
                    const MotorParams<Scalar>& m) {
  check_feasible(op, sc, m);
  const Scalar tau = block_delay(op, sc);
  return tau * motor_power(m, op.speed) +
         (sc.block_T - tau) * (op.power + sc.static_power);
}

// R / (P + P_s): the EE without movement, and the T -> infinity limit.
template <typename Scalar>
Scalar ee_asymptotic(Scalar power, Scalar gain, Scalar noise_power,
                     Scalar static_power) {
  if (!(power >= Scalar(0))) {
    throw DomainError("ee_asymptotic: power must be non-negative");
  }
  if (!(power + static_power > Scalar(0))) {
    throw DomainError("ee_asymptotic: P + P_s must be positive");
  }
  return rate(gain, power, noise_power) / (power + static_power);
}

// (T - tau) R / E_total. Zero when the whole block is spent moving; exactly
// R / (P + P_s) when the antenna stays put.
template <typename Scalar>
Scalar energy_efficiency(const OperatingPoint<Scalar>& op,
                         const SystemConfig<Scalar>& sc,
                         const MotorParams<Scalar>& m, Scalar gain,
                         Scalar noise_power) {
  check_feasible(op, sc, m);
  if (op.position == sc.init_pos) {
    return ee_asymptotic(op.power, gain, noise_power, sc.static_power);
  }
  const Scalar tau = block_delay(op, sc);
  if (tau >= sc.block_T) return Scalar(0);
  const Scalar energy = total_energy(op, sc, m);
  if (!(energy > Scalar(0))) {
    throw DomainError("energy_efficiency: total energy is zero");
  }
  return (sc.block_T - tau) * rate(gain, op.power, noise_power) / energy;
}

// f(v) = P_M(v) / (v T - |x_t - x0|), the per-metre movement overhead that
// appears in the recast EE = R / (P + P_s + f(v) |x_t - x0|).
template <typename Scalar>
Scalar movement_overhead(Scalar speed, Scalar distance,
                         const SystemConfig<Scalar>& sc,
                         const MotorParams<Scalar>& m) {
  const Scalar span = speed * sc.block_T - distance;
  if (!(span > Scalar(0))) {
    throw DomainError("movement_overhead: destination not strictly reachable");
  }
  return motor_power(m, speed) / span;
}

template <typename Scalar>
Scalar energy_efficiency_recast(const OperatingPoint<Scalar>& op,
                                const SystemConfig<Scalar>& sc,
                                const MotorParams<Scalar>& m, Scalar gain,
                                Scalar noise_power) {
  using std::abs;
  const Scalar distance = abs(op.position - sc.init_pos);
  const Scalar overhead =
      distance > Scalar(0) ? movement_overhead(op.speed, distance, sc, m) * distance
                           : Scalar(0);
  return rate(gain, op.power, noise_power) /
         (op.power + sc.static_power + overhead);
}

}  // namespace maee

#endif  // MAEE_OBJECTIVE_HPP

#ifndef MAEE_MOTOR_HPP
#define MAEE_MOTOR_HPP

// Electromechanical model of a lead-screw stepper drive: pull-out torque,
// shaft power, speed limits and the step-induced position increment.
//
// All quantities are SI (rad, rad/s, m, m/s, N·m, W). The functions are
// templated on the scalar type so the same code can be evaluated in long
// double when checking the double-precision path.

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "maee/errors.hpp"

namespace maee {

template <typename Scalar = double>
struct MotorParams {
  int rotor_teeth = 6;                       // p
  Scalar flux = Scalar(0.023);               // psi_M [Wb]
  Scalar voltage = Scalar(11.94);            // V [V]
  Scalar resistance = Scalar(75);            // R [ohm]
  Scalar inductance = Scalar(0.0656);        // L [H]
  Scalar screw_radius = Scalar(0.005);       // l0 [m]
  Scalar step_angle = Scalar(M_PI / 12.0);   // omega_D [rad]
  Scalar omega_max = Scalar(552);            // [rad/s]

  template <typename Other>
  MotorParams<Other> cast() const {
    return {rotor_teeth,       Other(flux),         Other(voltage),
            Other(resistance), Other(inductance),   Other(screw_radius),
            Other(step_angle), Other(omega_max)};
  }

  friend bool operator==(const MotorParams&, const MotorParams&) = default;
};

using MotorParamsd = MotorParams<double>;

// AM2224 high-speed stepper with a 5 mm lead screw.
template <typename Scalar = double>
MotorParams<Scalar> am2224() {
  return MotorParams<Scalar>{};
}

// Pull-out torque M(omega) = p psi V / sqrt(R^2 + w^2 L^2)
//                            - p w psi^2 R / (R^2 + w^2 L^2).
// Defined for every omega >= 0; negative beyond the no-load speed.
template <typename Scalar>
Scalar pull_out_torque(const MotorParams<Scalar>& m, Scalar omega) {
  using std::sqrt;
  if (!(omega >= Scalar(0))) {
    throw DomainError("pull_out_torque: angular speed must be non-negative");
  }
  const Scalar p = Scalar(m.rotor_teeth);
  const Scalar impedance_sq =
      m.resistance * m.resistance + omega * omega * m.inductance * m.inductance;
  return p * m.flux * m.voltage / sqrt(impedance_sq) -
         p * omega * m.flux * m.flux * m.resistance / impedance_sq;
}

// dM/domega, used by the speed-monotonicity argument.
template <typename Scalar>
Scalar pull_out_torque_slope(const MotorParams<Scalar>& m, Scalar omega) {
  using std::sqrt;
  const Scalar p = Scalar(m.rotor_teeth);
  const Scalar r2 = m.resistance * m.resistance;
  const Scalar l2 = m.inductance * m.inductance;
  const Scalar z2 = r2 + omega * omega * l2;
  const Scalar first = -p * m.flux * m.voltage * omega * l2 / (z2 * sqrt(z2));
  const Scalar second =
      p * m.flux * m.flux * m.resistance * (r2 - omega * omega * l2) / (z2 * z2);
  return first - second;
}

// Mechanical output power omega * M(omega), without the omega_max limit.
template <typename Scalar>
Scalar shaft_power(const MotorParams<Scalar>& m, Scalar omega) {
  return omega * pull_out_torque(m, omega);
}

template <typename Scalar>
Scalar step_size(const MotorParams<Scalar>& m) {
  return m.step_angle * m.screw_radius;
}

template <typename Scalar>
Scalar v_max(const MotorParams<Scalar>& m) {
  return m.omega_max * m.screw_radius;
}

// Closed-form root of M(omega) = 0: omega_M = V R / sqrt(psi^2 R^2 - V^2 L^2).
template <typename Scalar>
Scalar no_load_speed(const MotorParams<Scalar>& m) {
  using std::sqrt;
  const Scalar disc = m.flux * m.flux * m.resistance * m.resistance -
                      m.voltage * m.voltage * m.inductance * m.inductance;
  if (!(disc > Scalar(0))) {
    throw ModelError("no finite no-load speed: psi_M^2 R^2 <= V^2 L^2");
  }
  return m.voltage * m.resistance / sqrt(disc);
}

// Same root located numerically by TOMS 748 on the torque curve. The upper
// bracket is grown geometrically until the torque changes sign.
template <typename Scalar>
Scalar no_load_speed_bracketed(const MotorParams<Scalar>& m) {
  // Throws ModelError on a missing root before any bracketing is attempted.
  (void)no_load_speed(m);
  auto torque = [&m](Scalar w) { return pull_out_torque(m, w); };
  Scalar hi = m.resistance / m.inductance;
  while (torque(hi) > Scalar(0)) hi *= Scalar(2);
  const Scalar lo = Scalar(0);
  std::uintmax_t max_iter = 200;
  auto tol = boost::math::tools::eps_tolerance<Scalar>(
      std::numeric_limits<Scalar>::digits - 3);
  auto [a, b] = boost::math::tools::toms748_solve(torque, lo, hi, torque(lo),
                                                  torque(hi), tol, max_iter);
  return (a + b) / Scalar(2);
}

// P_M(v) = (v / l0) M(v / l0) for a lead-screw speed 0 <= v <= v_max.
template <typename Scalar>
Scalar motor_power(const MotorParams<Scalar>& m, Scalar v) {
  if (!(v >= Scalar(0)) || v > v_max(m)) {
    std::ostringstream os;
    os << "motor_power: speed " << v << " m/s outside [0, " << v_max(m) << "]";
    throw DomainError(os.str());
  }
  return shaft_power(m, v / m.screw_radius);
}

// Throws ModelError unless every field is positive, the torque curve has a
// finite zero, and omega_max lies strictly below it.
template <typename Scalar>
void validate(const MotorParams<Scalar>& m) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ModelError(std::string("motor.") + what);
  };
  require(m.rotor_teeth > 0, "rotor_teeth: must be positive");
  require(m.flux > Scalar(0), "flux: must be positive");
  require(m.voltage > Scalar(0), "voltage: must be positive");
  require(m.resistance > Scalar(0), "resistance: must be positive");
  require(m.inductance > Scalar(0), "inductance: must be positive");
  require(m.screw_radius > Scalar(0), "screw_radius: must be positive");
  require(m.step_angle > Scalar(0), "step_angle: must be positive");
  require(m.omega_max > Scalar(0), "omega_max: must be positive");
  const Scalar limit = no_load_speed(m);
  if (!(m.omega_max < limit)) {
    std::ostringstream os;
    os << "motor.omega_max: " << m.omega_max << " rad/s exceeds no-load speed "
       << limit << " rad/s";
    throw ModelError(os.str());
  }
}

}  // namespace maee

#endif  // MAEE_MOTOR_HPP

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "maee/channel.hpp"
#include "maee/errors.hpp"
#include "maee/motor.hpp"
#include "maee/objective.hpp"
#include "maee/units.hpp"

using namespace maee;

namespace {

// 40-digit evaluations of the composed example: |dx| = 0.0276 m at 2.76 m/s
// (tau = 10 ms of a 50 ms block), P = P_s = 1 W, 46 dBm against a -81.4 dB
// channel and -80 dBm noise.
constexpr double kComposedRate = 14.815849325883869782;
constexpr double kComposedEnergy = 0.084635942336752717238;
constexpr double kComposedEE = 7.0021548372127780337;

SystemConfigd unit_block() {
  SystemConfigd sc;
  sc.array_len = 0.12;
  sc.init_pos = 0.06;
  sc.block_T = 0.05;
  sc.static_power = 1.0;
  return sc;
}

}  // namespace

TEST(Units, DbmRoundTrip) {
  EXPECT_NEAR(dbm_to_watt(46.0), 39.810717055349725, 1e-12);
  EXPECT_NEAR(dbm_to_watt(30.0), 1.0, 1e-15);
  EXPECT_NEAR(dbm_to_watt(-80.0), 1e-11, 1e-25);
  EXPECT_NEAR(db_to_linear(-40.0), 1e-4, 1e-18);
  for (double dbm = -100.0; dbm <= 60.0; dbm += 0.7) {
    EXPECT_NEAR(watt_to_dbm(dbm_to_watt(dbm)), dbm, 1e-12);
    EXPECT_NEAR(linear_to_db(db_to_linear(dbm)), dbm, 1e-12);
  }
}

TEST(Rate, Examples) {
  EXPECT_EQ(rate(0.0, 5.0, 1e-11), 0.0);
  EXPECT_EQ(rate(1.0, 1.0, 1.0), 1.0);
  const double rho_d = std::pow(10.0, -8.14);
  EXPECT_NEAR(rate(rho_d, dbm_to_watt(46.0), 1e-11), kComposedRate, 1e-11);
  EXPECT_THROW(rate(1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(rate(1.0, -1.0, 1.0), DomainError);
}

TEST(MovementDelay, Examples) {
  EXPECT_EQ(movement_delay(0.05, 0.05, 2.76), 0.0);
  EXPECT_NEAR(movement_delay(0.0876, 0.06, 2.76), 0.01, 1e-15);
  EXPECT_EQ(movement_delay(0.0, 0.1, 2.0), 0.05);
  EXPECT_THROW(movement_delay(0.0, 0.1, 0.0), DomainError);
}

TEST(TotalEnergy, Examples) {
  const auto m = am2224();
  SystemConfigd sc = unit_block();
  EXPECT_NEAR(total_energy(OperatingPoint<double>{0.06, 1.0, 2.76}, sc, m), 0.1, 1e-15);
  EXPECT_NEAR(total_energy(OperatingPoint<double>{0.0876, 1.0, 2.76}, sc, m),
              kComposedEnergy, 1e-14);

  // Whole block spent moving: no transmission energy.
  SystemConfigd edge = sc;
  edge.init_pos = 0.1;
  const OperatingPoint<double> full{0.0, 1.0, 2.0};
  EXPECT_NEAR(total_energy(full, edge, m), 0.05 * motor_power(m, 2.0), 1e-15);
}

TEST(TotalEnergy, RejectsInfeasiblePoints) {
  const auto m = am2224();
  const SystemConfigd sc = unit_block();
  EXPECT_THROW(total_energy(OperatingPoint<double>{0.06, -0.1, 2.0}, sc, m), DomainError);
  EXPECT_THROW(total_energy(OperatingPoint<double>{0.06, 40.0, 2.0}, sc, m), DomainError);
  EXPECT_THROW(total_energy(OperatingPoint<double>{0.06, 1.0, 2.77}, sc, m), DomainError);
  EXPECT_THROW(total_energy(OperatingPoint<double>{0.06, 1.0, 0.0}, sc, m), DomainError);
  // 0.06 m away needs v >= 1.2 m/s in a 50 ms block.
  EXPECT_THROW(total_energy(OperatingPoint<double>{0.0, 1.0, 1.0}, sc, m), DomainError);
}

TEST(EnergyEfficiency, Examples) {
  const auto m = am2224();
  const SystemConfigd sc = unit_block();
  // No movement: reduces to R / (P + P_s) = 2 / 2.
  EXPECT_EQ(energy_efficiency(OperatingPoint<double>{0.06, 1.0, 2.76}, sc, m, 3.0, 1.0), 1.0);

  SystemConfigd edge = sc;
  edge.init_pos = 0.1;
  EXPECT_EQ(energy_efficiency(OperatingPoint<double>{0.0, 1.0, 2.0}, edge, m, 3.0, 1.0), 0.0);

  // Same SNR as 46 dBm into the -81.4 dB channel, but radiated at 1 W so the
  // energy matches the composed example.
  const double gain = std::pow(10.0, -8.14) * dbm_to_watt(46.0);
  const double ee =
      energy_efficiency(OperatingPoint<double>{0.0876, 1.0, 2.76}, sc, m, gain, 1e-11);
  EXPECT_NEAR(ee, kComposedEE, 1e-11);
}

TEST(EnergyEfficiency, ZeroEnergyIsDomainError) {
  const auto m = am2224();
  SystemConfigd sc = unit_block();
  sc.static_power = 0.0;
  EXPECT_THROW(energy_efficiency(OperatingPoint<double>{0.06, 0.0, 2.0}, sc, m, 1.0, 1.0),
               DomainError);
}

TEST(EeAsymptotic, MatchesStationaryEE) {
  const auto m = am2224();
  const SystemConfigd sc = unit_block();
  EXPECT_EQ(ee_asymptotic(0.3, 1e-8, 1e-11, 1.0),
            energy_efficiency(OperatingPoint<double>{0.06, 0.3, 1.5}, sc, m, 1e-8, 1e-11));
  EXPECT_EQ(ee_asymptotic(0.3, 0.0, 1e-11, 1.0), 0.0);
  EXPECT_THROW(ee_asymptotic(0.0, 1.0, 1.0, 0.0), DomainError);
}

TEST(EeAsymptotic, LongBlocksApproachTheLimit) {
  const auto m = am2224();
  SystemConfigd sc = unit_block();
  const OperatingPoint<double> op{0.09, 0.5, 2.76};
  const double limit = ee_asymptotic(0.5, 1e-8, 1e-11, 1.0);
  double prev_gap = INFINITY;
  for (double T : {0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 50.0}) {
    sc.block_T = T;
    const double gap = std::abs(energy_efficiency(op, sc, m, 1e-8, 1e-11) - limit);
    EXPECT_LT(gap, prev_gap) << T;
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap / limit, 1e-4);
}

// EE strictly increases with the lead-screw speed for any fixed destination
// away from x0 and any fixed power.
TEST(SpeedMonotonicity, RandomConfigurations) {
  const auto m = am2224();
  ChannelParams cp;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    SystemConfigd sc;
    sc.block_T = 0.01 + 0.2 * u(rng);
    sc.init_pos = 0.06;
    double x_t;
    do {
      x_t = 0.12 * u(rng);
    } while (x_t == sc.init_pos ||
             std::abs(x_t - sc.init_pos) >= 0.999 * v_max(m) * sc.block_T);
    const double power = sc.max_power * u(rng);
    const double gain = channel_gain(sample_realization(cp, trial), cp, x_t);
    const double v_min = std::abs(x_t - sc.init_pos) / sc.block_T;
    double prev = -1.0;
    for (int i = 1; i <= 50; ++i) {
      const double v = i == 50 ? v_max(m) : v_min + (v_max(m) - v_min) * i / 50.0;
      const double ee =
          energy_efficiency(OperatingPoint<double>{x_t, power, v}, sc, m, gain, cp.noise_power);
      ASSERT_GT(ee, prev - 1e-12 * std::abs(prev)) << "trial " << trial << " v=" << v;
      prev = ee;
    }
    ++checked;
  }
  EXPECT_EQ(checked, 1000);
}

TEST(RecastForm, AgreesWithBlockEE) {
  const auto m = am2224();
  ChannelParams cp;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    SystemConfigd sc;
    const double x_t = 0.12 * u(rng);
    const double v_min = std::abs(x_t - sc.init_pos) / sc.block_T;
    const double v = v_min + (v_max(m) - v_min) * (0.01 + 0.99 * u(rng));
    const OperatingPoint<double> op{x_t, sc.max_power * u(rng), v};
    const double gain = channel_gain(sample_realization(cp, trial), cp, x_t);
    const double a = energy_efficiency(op, sc, m, gain, cp.noise_power);
    const double b = energy_efficiency_recast(op, sc, m, gain, cp.noise_power);
    ASSERT_NEAR(a, b, 1e-12 * std::abs(a)) << trial;
  }
}

TEST(RecastForm, MovementOverheadDecreasesWithSpeed) {
  const auto m = am2224();
  const SystemConfigd sc;
  for (double distance : {0.0013, 0.01, 0.05, 0.1}) {
    const double v_min = distance / sc.block_T;
    for (int i = 1; i < 100; ++i) {
      const double v = v_min + (v_max(m) - v_min) * i / 100.0;
      const double h = 1e-6 * v;
      if (v + h > v_max(m)) continue;
      const double slope = (movement_overhead(v + h, distance, sc, m) -
                            movement_overhead(v - h, distance, sc, m)) / (2 * h);
      ASSERT_LT(slope, 0.0) << "distance " << distance << " v " << v;
    }
  }
}

TEST(RecastForm, StationaryEEIgnoresSpeed) {
  const auto m = am2224();
  const SystemConfigd sc;
  const double ref = energy_efficiency(OperatingPoint<double>{0.06, 0.4, 2.76}, sc, m, 2e-9, 1e-11);
  for (double v : {0.01, 0.3, 1.0, 2.0}) {
    EXPECT_EQ(energy_efficiency(OperatingPoint<double>{0.06, 0.4, v}, sc, m, 2e-9, 1e-11), ref);
  }
}

TEST(SystemConfig, Validation) {
  SystemConfigd sc;
  EXPECT_NO_THROW(validate(sc));
  EXPECT_NEAR(sc.max_power, 39.810717055349725, 1e-12);
  EXPECT_NEAR(sc.static_power, 1.0, 1e-15);
  sc.init_pos = 0.2;
  EXPECT_THROW(validate(sc), ModelError);
  sc = {};
  sc.block_T = 0.0;
  EXPECT_THROW(validate(sc), ModelError);
}

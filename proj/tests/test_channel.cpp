#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "maee/channel.hpp"
#include "maee/errors.hpp"

using namespace maee;

namespace {

constexpr double kPi = std::numbers::pi;

ChannelRealization make(std::vector<std::complex<double>> g, std::vector<double> theta) {
  ChannelRealization cr{Eigen::VectorXcd(g.size()), Eigen::VectorXd(theta.size())};
  for (std::size_t k = 0; k < g.size(); ++k) {
    cr.gains[static_cast<Eigen::Index>(k)] = g[k];
    cr.aods[static_cast<Eigen::Index>(k)] = theta[k];
  }
  return cr;
}

// Direct complex-exponential sum in long double.
std::complex<long double> reference_coeff(const ChannelRealization& cr,
                                          long double wavelength, long double x) {
  const long double pi = std::numbers::pi_v<long double>;
  std::complex<long double> h = 0.0L;
  for (Eigen::Index k = 0; k < cr.num_paths(); ++k) {
    const long double phase =
        2.0L * pi / wavelength * x * std::sin(static_cast<long double>(cr.aods[k]));
    h += std::complex<long double>(cr.gains[k].real(), cr.gains[k].imag()) *
         std::polar(1.0L, phase);
  }
  return h;
}

}  // namespace

TEST(SampleRealization, Deterministic) {
  ChannelParams cp;
  const auto a = sample_realization(cp, 42);
  const auto b = sample_realization(cp, 42);
  std::ostringstream sa, sb;
  write_realization_csv(sa, a);
  write_realization_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str(), [&] {
    std::ostringstream sc;
    write_realization_csv(sc, sample_realization(cp, 43));
    return sc.str();
  }());
}

TEST(SampleRealization, MeanPowerMatchesPathLoss) {
  ChannelParams cp;
  cp.num_paths = 4;
  constexpr int n = 100000;
  double sum = 0.0;
  for (int s = 0; s < n; ++s) sum += sample_realization(cp, s).gains.squaredNorm();
  EXPECT_NEAR(sum / n / cp.mean_gain(), 1.0, 0.02);
}

TEST(SampleRealization, AodsUniformKolmogorovSmirnov) {
  ChannelParams cp;
  constexpr int n = 100000;
  std::vector<double> theta;
  theta.reserve(n);
  for (int s = 0; s < n; ++s) {
    const auto cr = sample_realization(cp, s);
    ASSERT_EQ(cr.num_paths(), cp.num_paths);
    for (Eigen::Index k = 0; k < cr.num_paths(); ++k) {
      ASSERT_GE(cr.aods[k], -kPi / 2);
      ASSERT_LE(cr.aods[k], kPi / 2);
    }
    theta.push_back(cr.aods[0]);
  }
  std::sort(theta.begin(), theta.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = (theta[i] + kPi / 2) / kPi;
    ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / n),
                   std::abs(cdf - static_cast<double>(i + 1) / n)});
  }
  EXPECT_LT(ks, 0.01);
}

TEST(SampleRealization, PathsShareDrawsAcrossPathCounts) {
  ChannelParams two;
  two.num_paths = 2;
  ChannelParams eight;
  eight.num_paths = 8;
  const auto a = sample_realization(two, 5);
  const auto b = sample_realization(eight, 5);
  for (Eigen::Index k = 0; k < 2; ++k) {
    EXPECT_EQ(a.aods[k], b.aods[k]);
    EXPECT_NEAR(std::abs(a.gains[k]) / std::abs(b.gains[k]), 2.0, 1e-12);
  }
}

TEST(ChannelCoeff, TrivialCases) {
  ChannelParams cp;
  const auto broadside = make({{1.0, 0.0}}, {0.0});
  for (double x : {0.0, 0.013, 0.12}) {
    EXPECT_EQ(channel_coeff(broadside, cp, x), std::complex<double>(1.0, 0.0));
  }
  const auto cr = sample_realization(cp, 3);
  const std::complex<double> sum = cr.gains.sum();
  EXPECT_LE(std::abs(channel_coeff(cr, cp, 0.0) - sum), 1e-15 * std::abs(sum));
}

TEST(ChannelCoeff, TwoPathAgainstLongDoubleSum) {
  ChannelParams cp;
  cp.wavelength = 0.06;
  const auto cr = make({{1.0, 0.0}, {0.0, 1.0}}, {kPi / 6, -kPi / 6});
  const auto ref = reference_coeff(cr, 0.06L, 0.03L);
  const auto h = channel_coeff(cr, cp, 0.03);
  EXPECT_NEAR(h.real(), static_cast<double>(ref.real()), 1e-12);
  EXPECT_NEAR(h.imag(), static_cast<double>(ref.imag()), 1e-12);
  // Both phases are +-pi/2 here, so h = j + j(-j) = 1 + j.
  EXPECT_NEAR(h.real(), 1.0, 1e-12);
  EXPECT_NEAR(h.imag(), 1.0, 1e-12);
  EXPECT_NEAR(channel_gain(cr, cp, 0.03), static_cast<double>(std::norm(ref)), 1e-12);
}

TEST(ChannelGain, SinglePathIsConstantExactly) {
  ChannelParams cp;
  cp.num_paths = 1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto cr = sample_realization(cp, seed);
    const double g0 = std::norm(cr.gains[0]);
    for (int i = 0; i < 1000; ++i) {
      ASSERT_EQ(channel_gain(cr, cp, 0.24 * i / 999.0), g0);
    }
  }
}

TEST(ChannelGain, DestructiveSuperposition) {
  ChannelParams cp;
  const auto cr = make({{1.0, 0.0}, {-1.0, 0.0}}, {0.0, 0.0});
  for (double x : {0.0, 0.01, 0.07}) EXPECT_EQ(channel_gain(cr, cp, x), 0.0);
}

TEST(ChannelGain, BoundedAndEqualToCoeffModulus) {
  ChannelParams cp;
  cp.num_paths = 6;
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    const auto cr = sample_realization(cp, seed);
    const double bound = std::pow(cr.gains.cwiseAbs().sum(), 2);
    Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(1000, 0.0, 0.24);
    const Eigen::VectorXd gains = channel_gains(cr, cp, xs);
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
      ASSERT_GE(gains[i], 0.0);
      ASSERT_LE(gains[i], bound * (1.0 + 1e-12));
      ASSERT_NEAR(gains[i], std::norm(channel_coeff(cr, cp, xs[i])),
                  1e-11 * bound);
    }
  }
}

TEST(ShiftReference, MovesPhaseOrigin) {
  ChannelParams cp;
  const auto cr = sample_realization(cp, 9);
  const double origin = 0.0602;
  const auto shifted = shift_reference(cr, cp, origin);
  EXPECT_NEAR(std::abs(channel_coeff(shifted, cp, origin) - cr.gains.sum()), 0.0, 1e-18);
  for (double x : {0.07, 0.1, 0.2}) {
    EXPECT_NEAR(channel_gain(shifted, cp, x), channel_gain(cr, cp, x - origin), 1e-20);
  }
}

TEST(RealizationCsv, RoundTripIsExact) {
  ChannelParams cp;
  cp.num_paths = 5;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto cr = sample_realization(cp, seed);
    std::stringstream ss;
    write_realization_csv(ss, cr);
    const auto back = read_realization_csv(ss);
    ASSERT_EQ(back.gains, cr.gains);
    ASSERT_EQ(back.aods, cr.aods);
  }
}

TEST(RealizationCsv, RejectsMalformedInput) {
  std::istringstream no_header("0,1,2,0.1\n");
  EXPECT_THROW(read_realization_csv(no_header), ConfigError);
  std::istringstream bad_angle("path,gain_re,gain_im,aod_rad\n0,1,0,2.0\n");
  EXPECT_THROW(read_realization_csv(bad_angle), ConfigError);
  std::istringstream bad_number("path,gain_re,gain_im,aod_rad\n0,x,0,0.1\n");
  EXPECT_THROW(read_realization_csv(bad_number), ConfigError);
}

TEST(ChannelParams, Validation) {
  ChannelParams cp;
  EXPECT_NO_THROW(validate(cp));
  cp.num_paths = 0;
  EXPECT_THROW(validate(cp), ModelError);
  cp = {};
  cp.noise_power = 0.0;
  EXPECT_THROW(validate(cp), ModelError);
}

#include "maee/channel.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "maee/csv.hpp"
#include "maee/errors.hpp"

namespace maee {

namespace {

constexpr double kPi = std::numbers::pi;

// 53-bit uniform on [0, 1) straight from the engine bits; std::uniform_real
// and std::normal_distribution are implementation-defined.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller pair of independent standard normals.
std::pair<double, double> standard_normal_pair(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return {radius * std::cos(2.0 * kPi * u2), radius * std::sin(2.0 * kPi * u2)};
}

double wavenumber(const ChannelParams& cp) { return 2.0 * kPi / cp.wavelength; }

}  // namespace

double ChannelParams::mean_gain() const {
  return ref_pathloss * std::pow(distance, -pathloss_exp);
}

void validate(const ChannelParams& cp) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ModelError(std::string("channel.") + what);
  };
  require(cp.wavelength > 0.0, "wavelength: must be positive");
  require(cp.num_paths >= 1, "num_paths: must be at least 1");
  require(cp.distance > 0.0, "distance: must be positive");
  require(cp.pathloss_exp > 0.0, "pathloss_exp: must be positive");
  require(cp.ref_pathloss > 0.0, "ref_pathloss: must be positive");
  require(cp.noise_power > 0.0, "noise_power: must be positive");
}

ChannelRealization sample_realization(const ChannelParams& cp,
                                      std::uint64_t seed) {
  validate(cp);
  std::mt19937_64 rng(seed);
  const auto paths = static_cast<Eigen::Index>(cp.num_paths);
  const double component_std = std::sqrt(cp.mean_gain() / cp.num_paths / 2.0);
  ChannelRealization cr{Eigen::VectorXcd(paths), Eigen::VectorXd(paths)};
  for (Eigen::Index k = 0; k < paths; ++k) {
    auto [re, im] = standard_normal_pair(rng);
    cr.gains[k] = {component_std * re, component_std * im};
    cr.aods[k] = -0.5 * kPi + kPi * uniform01(rng);
  }
  return cr;
}

std::complex<double> channel_coeff(const ChannelRealization& cr,
                                   const ChannelParams& cp, double x) {
  const std::complex<double> j(0.0, 1.0);
  const Eigen::ArrayXd phase = wavenumber(cp) * x * cr.aods.array().sin();
  return (cr.gains.array() * (j * phase.cast<std::complex<double>>()).exp())
      .sum();
}

double channel_gain(const ChannelRealization& cr, const ChannelParams& cp,
                    double x) {
  const double kx = wavenumber(cp) * x;
  const Eigen::ArrayXd sines = cr.aods.array().sin();
  double gain = cr.gains.squaredNorm();
  for (Eigen::Index k = 0; k < cr.num_paths(); ++k) {
    for (Eigen::Index l = k + 1; l < cr.num_paths(); ++l) {
      const std::complex<double> cross = cr.gains[k] * std::conj(cr.gains[l]);
      gain += 2.0 * std::real(cross * std::polar(1.0, kx * (sines[k] - sines[l])));
    }
  }
  return gain > 0.0 ? gain : 0.0;
}

Eigen::VectorXd channel_gains(const ChannelRealization& cr,
                              const ChannelParams& cp,
                              const Eigen::Ref<const Eigen::VectorXd>& xs) {
  Eigen::VectorXd out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    out[i] = channel_gain(cr, cp, xs[i]);
  }
  return out;
}

ChannelRealization shift_reference(const ChannelRealization& cr,
                                   const ChannelParams& cp, double origin) {
  ChannelRealization out = cr;
  const double ko = wavenumber(cp) * origin;
  for (Eigen::Index k = 0; k < cr.num_paths(); ++k) {
    out.gains[k] *= std::polar(1.0, -ko * std::sin(cr.aods[k]));
  }
  return out;
}

void write_realization_csv(std::ostream& os, const ChannelRealization& cr) {
  os << "path,gain_re,gain_im,aod_rad\n";
  for (Eigen::Index k = 0; k < cr.num_paths(); ++k) {
    os << k << ',' << format_exact(cr.gains[k].real()) << ','
       << format_exact(cr.gains[k].imag()) << ',' << format_exact(cr.aods[k])
       << '\n';
  }
}

ChannelRealization read_realization_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("path,gain_re,gain_im,aod_rad", 0) != 0) {
    throw ConfigError("realization csv: missing header");
  }
  std::vector<std::complex<double>> gains;
  std::vector<double> aods;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4) {
      throw ConfigError("realization csv: expected 4 fields in '" + line + "'");
    }
    gains.emplace_back(parse_number(fields[1]), parse_number(fields[2]));
    const double aod = parse_number(fields[3]);
    if (std::abs(aod) > 0.5 * kPi) {
      throw ConfigError("realization csv: aod outside [-pi/2, pi/2]");
    }
    aods.push_back(aod);
  }
  if (gains.empty()) throw ConfigError("realization csv: no paths");
  ChannelRealization cr{Eigen::VectorXcd(gains.size()),
                        Eigen::VectorXd(aods.size())};
  for (std::size_t k = 0; k < gains.size(); ++k) {
    cr.gains[static_cast<Eigen::Index>(k)] = gains[k];
    cr.aods[static_cast<Eigen::Index>(k)] = aods[k];
  }
  return cr;
}

}  // namespace maee

#ifndef MAEE_CHANNEL_HPP
#define MAEE_CHANNEL_HPP

// Field-response multipath channel between the movable transmit antenna at
// position x on the linear array and a fixed single-antenna receiver:
//
//   h(x) = sum_k g_k exp(j (2 pi / lambda) x sin(theta_k)),
//
// with the phase reference at x = 0.

#include <complex>
#include <cstdint>
#include <iosfwd>

#include <Eigen/Dense>

namespace maee {

struct ChannelParams {
  double wavelength = 0.06;    // lambda [m]
  int num_paths = 4;           // L
  double distance = 30.0;      // d [m]
  double pathloss_exp = 2.8;   // alpha
  double ref_pathloss = 1e-4;  // rho, linear power ratio at 1 m (-40 dB)
  double noise_power = 1e-11;  // sigma^2 [W] (-80 dBm)

  // Total mean channel power rho d^-alpha, split evenly across the paths.
  double mean_gain() const;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

void validate(const ChannelParams& cp);

struct ChannelRealization {
  Eigen::VectorXcd gains;  // g_k
  Eigen::VectorXd aods;    // theta_k in [-pi/2, pi/2]

  Eigen::Index num_paths() const { return gains.size(); }
};

// g_k ~ CN(0, rho d^-alpha / L) and theta_k ~ U[-pi/2, pi/2], i.i.d. The draw
// is a pure function of (cp, seed); path k consumes the same random draws
// whatever L is, so sweeps over L share common random numbers.
ChannelRealization sample_realization(const ChannelParams& cp,
                                      std::uint64_t seed);

std::complex<double> channel_coeff(const ChannelRealization& cr,
                                   const ChannelParams& cp, double x);

// |h(x)|^2, expanded as sum_k |g_k|^2 + 2 Re sum_{k<l} g_k conj(g_l) e^{j(phi_k - phi_l)}
// so a single path yields |g_1|^2 exactly, independent of x.
double channel_gain(const ChannelRealization& cr, const ChannelParams& cp,
                    double x);

// Vectorised channel_gain over a set of positions.
Eigen::VectorXd channel_gains(const ChannelRealization& cr,
                              const ChannelParams& cp,
                              const Eigen::Ref<const Eigen::VectorXd>& xs);

// Equivalent realization whose phase reference sits at `origin` instead of 0,
// i.e. h'(x) = h(x - origin) and h'(origin) = sum_k g_k. CSCG gains are
// rotation invariant, so this preserves the sampling distribution.
ChannelRealization shift_reference(const ChannelRealization& cr,
                                   const ChannelParams& cp, double origin);

// CSV with header `path,gain_re,gain_im,aod_rad`; the reader accepts what the
// writer produces and throws ConfigError otherwise.
void write_realization_csv(std::ostream& os, const ChannelRealization& cr);
ChannelRealization read_realization_csv(std::istream& is);

}  // namespace maee

#endif  // MAEE_CHANNEL_HPP

#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "isac/resource_grid.hpp"

namespace isac {

/// Sentinel SNR meaning "add no noise".
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

/// One point-like scatterer seen bistatically.
struct Target {
    double bistatic_range_m = 0.0; ///< transmitter -> target -> receiver path length
    double velocity_mps = 0.0;     ///< bistatic-equivalent radial velocity
    std::complex<double> amplitude{1.0, 0.0};
};

struct ChannelConfig {
    std::vector<Target> targets;
    double snr_db = kNoNoise; ///< per-used-RE SNR
    std::uint64_t seed = 0;
};

/// Doppler shift of a target moving at v: f_d = 2 v f_c / c.
double doppler_from_velocity(double velocity_mps, double fc_hz);

/// Frequency-domain multi-target channel:
///   y(m,n) = sum_k beta_k exp(+j 2 pi n T0 f_dk) exp(-j 2 pi m df tau_k) v(m,n)
/// with tau_k = range_k / c. Noiseless; the kinds matrix is carried through.
/// Targets at or beyond the unambiguous range c/df are rejected (ConfigError).
ResourceGrid apply_channel(const ResourceGrid& tx, const ChannelConfig& cfg);

/// Adds i.i.d. circular complex Gaussian noise to every non-Empty RE. The
/// total noise power equals P_sig / 10^(snr_db/10), where P_sig is the mean
/// squared magnitude over non-Empty REs. Deterministic given the seed.
/// snr_db = kNoNoise returns the grid unchanged; an all-Empty grid is a
/// UsageError (the SNR reference is undefined).
ResourceGrid add_awgn(const ResourceGrid& grid, double snr_db, std::uint64_t seed);

} // namespace isac

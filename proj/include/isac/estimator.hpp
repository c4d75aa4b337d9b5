#pragma once

#include <vector>

#include <Eigen/Dense>

#include "isac/resource_grid.hpp"

namespace isac {

/// Range periodogram: per-column IFFT magnitudes averaged over the used
/// OFDM symbols. Bin l maps to bistatic range l * bin_scale_m.
struct RangeProfile {
    Eigen::VectorXd magnitudes; ///< length oversample * M, >= 0
    double bin_scale_m = 0.0;   ///< c / (oversample * scs * M)
    int oversample = 1;         ///< IFFT size multiplier m_a
};

/// Doppler periodogram: per-row FFT magnitudes averaged over the used
/// subcarriers. Bins above the midpoint represent negative Doppler.
/// bin_scale_hz derives from the symbol spacing the Doppler ramp actually
/// advances by (cyclic prefix included).
struct DopplerProfile {
    Eigen::VectorXd magnitudes; ///< length oversample * N
    double bin_scale_hz = 0.0;  ///< 1 / (T0 * oversample * N)
    int oversample = 1;         ///< FFT size multiplier n_a
};

struct Detection {
    double bistatic_range_m = 0.0;
    double velocity_mps = 0.0;   ///< filled by the Doppler stage
    double peak_magnitude = 0.0; ///< normalized to the profile maximum
};

struct SensingMetrics {
    double range_resolution_m;
    double max_range_m;
    double velocity_resolution_mps;
    double max_velocity_mps;
    double ambiguity_interval_m;
};

/// Point-wise division: g(m,n) = y(m,n) / v(m,n) where the reference symbol
/// v(m,n) is nonzero, else 0. Dimensions must match.
Eigen::MatrixXcd divide(const ResourceGrid& received, const ResourceGrid& reference);

/// Magnitudes of the (oversample * M)-point IFFT of every used column of g,
/// averaged. Columns that are entirely zero do not enter the average.
RangeProfile range_profile(const Eigen::MatrixXcd& g, const Numerology& numerology,
                           int oversample);

/// Greedy peak picker: up to k_expected circular local maxima in descending
/// magnitude, each at least rel_threshold times the global maximum and at
/// least min_sep_bins (circularly) away from previously selected peaks.
/// Returned sorted by bin; empty when nothing clears the threshold.
std::vector<Eigen::Index> detect_peaks(const Eigen::VectorXd& magnitudes, int k_expected,
                                       Eigen::Index min_sep_bins, double rel_threshold);

/// Bistatic range of a range-profile bin: l * c / (oversample * scs * M).
double range_from_bin(Eigen::Index bin, const Numerology& numerology, int oversample);

/// Removes a delay ramp: g'(m,n) = g(m,n) * exp(+j 2 pi m scs delay_s).
Eigen::MatrixXcd compensate_delay(const Eigen::MatrixXcd& g, double delay_s,
                                  const Numerology& numerology);

/// Magnitudes of the (oversample * N)-point FFT of every used row of g,
/// averaged. Rows that are entirely zero do not enter the average.
DopplerProfile doppler_profile(const Eigen::MatrixXcd& g, const Numerology& numerology,
                               int oversample);

/// Velocity of a Doppler-profile bin, d * c / (2 Ts fc oversample N), with
/// bins above the midpoint mapping to negative velocities.
double velocity_from_bin(Eigen::Index bin, const Numerology& numerology, int oversample);

/// Wraps a DFT bin into a signed frequency index: bins above length/2 count
/// down from zero.
Eigen::Index signed_bin(Eigen::Index bin, Eigen::Index length);

/// Range/velocity resolutions and maxima plus the ghost ambiguity interval
/// c / (2 comb_size scs).
SensingMetrics metrics(const Numerology& numerology, int comb_size);

/// Coarsest per-subcarrier time-sampling stride of a reference grid, in OFDM
/// symbols: the largest over subcarriers of the gcd of the gaps between that
/// subcarrier's occupied symbols. A stride g makes the Doppler periodogram
/// repeat exactly every 1/(g T0) Hz. Returns 0 when no subcarrier is occupied
/// at two or more symbols.
int time_sampling_stride(const ResourceGrid& reference);

/// Largest signed-bin window within which a stride-g Doppler periodogram has
/// no replicated peaks.
Eigen::Index alias_free_window_bins(const DopplerProfile& profile, int stride);

/// Argmax over the signed-bin window [-window, +window]; ties resolve to the
/// smaller positive bin. Returns the raw (unsigned) bin index.
Eigen::Index peak_bin_in_window(const Eigen::VectorXd& magnitudes, Eigen::Index window_bins);

} // namespace isac

#include "isac/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace isac {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform (0, 1] and [0, 1) doubles from the raw engine output; pinned here
/// instead of std::uniform_real_distribution so that noise streams are
/// identical across standard libraries.
double unit_open(std::uint64_t w) { return (static_cast<double>(w >> 11) + 1.0) * 0x1p-53; }
double unit_half_open(std::uint64_t w) { return static_cast<double>(w >> 11) * 0x1p-53; }

} // namespace

double doppler_from_velocity(double velocity_mps, double fc_hz) {
    return 2.0 * velocity_mps * fc_hz / kSpeedOfLight;
}

ResourceGrid apply_channel(const ResourceGrid& tx, const ChannelConfig& cfg) {
    tx.numerology.validate();
    const auto& num = tx.numerology;
    for (std::size_t k = 0; k < cfg.targets.size(); ++k) {
        const Target& t = cfg.targets[k];
        if (!(t.bistatic_range_m >= 0.0) || t.bistatic_range_m >= num.max_range_m())
            throw ConfigError("target " + std::to_string(k) + " bistatic range " +
                              std::to_string(t.bistatic_range_m) +
                              " m outside the unambiguous interval [0, " +
                              std::to_string(num.max_range_m()) + " m)");
        if (!std::isfinite(t.amplitude.real()) || !std::isfinite(t.amplitude.imag()) ||
            !std::isfinite(t.velocity_mps))
            throw ConfigError("target " + std::to_string(k) + " has non-finite parameters");
    }

    ResourceGrid rx;
    rx.numerology = num;
    rx.kinds = tx.kinds;
    rx.symbols = Eigen::MatrixXcd::Zero(tx.rows(), tx.cols());

    const std::complex<double> j{0.0, 1.0};
    const double t0 = num.full_symbol_s();
    for (const Target& t : cfg.targets) {
        const double tau = t.bistatic_range_m / kSpeedOfLight;
        const double fd = doppler_from_velocity(t.velocity_mps, num.fc_hz);
        Eigen::VectorXcd delay_ramp(tx.rows());
        for (Eigen::Index m = 0; m < tx.rows(); ++m)
            delay_ramp(m) = std::exp(-j * (kTwoPi * static_cast<double>(m) * num.scs_hz * tau));
        Eigen::RowVectorXcd doppler_ramp(tx.cols());
        for (Eigen::Index n = 0; n < tx.cols(); ++n)
            doppler_ramp(n) = std::exp(j * (kTwoPi * static_cast<double>(n) * t0 * fd));
        rx.symbols += t.amplitude * (delay_ramp * doppler_ramp).cwiseProduct(tx.symbols);
    }
    return rx;
}

ResourceGrid add_awgn(const ResourceGrid& grid, double snr_db, std::uint64_t seed) {
    if (snr_db == kNoNoise)
        return grid;
    const Eigen::Index used = (grid.kinds.array() != 0).count();
    if (used == 0)
        throw UsageError("add_awgn on an all-Empty grid: signal power undefined");

    double signal_power = 0.0;
    for (Eigen::Index n = 0; n < grid.cols(); ++n)
        for (Eigen::Index m = 0; m < grid.rows(); ++m)
            if (grid.kinds(m, n) != 0)
                signal_power += std::norm(grid.symbols(m, n));
    signal_power /= static_cast<double>(used);

    const double noise_power = signal_power * std::pow(10.0, -snr_db / 10.0);
    const double sigma = std::sqrt(noise_power / 2.0);

    ResourceGrid out = grid;
    std::mt19937_64 rng(seed);
    for (Eigen::Index n = 0; n < grid.cols(); ++n) {
        for (Eigen::Index m = 0; m < grid.rows(); ++m) {
            if (grid.kinds(m, n) == 0)
                continue;
            const double u1 = unit_open(rng());
            const double u2 = unit_half_open(rng());
            const double r = std::sqrt(-2.0 * std::log(u1));
            out.symbols(m, n) += std::complex<double>(sigma * r * std::cos(kTwoPi * u2),
                                                      sigma * r * std::sin(kTwoPi * u2));
        }
    }
    return out;
}

} // namespace isac

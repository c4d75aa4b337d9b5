#include "isac/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "isac/transform.hpp"

namespace isac {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_oversample(int oversample) {
    if (oversample < 1)
        throw UsageError("oversampling factor must be >= 1, got " +
                         std::to_string(oversample));
}

Eigen::Index circular_distance(Eigen::Index a, Eigen::Index b, Eigen::Index length) {
    const Eigen::Index d = std::abs(a - b);
    return std::min(d, length - d);
}

} // namespace

Eigen::MatrixXcd divide(const ResourceGrid& received, const ResourceGrid& reference) {
    if (received.rows() != reference.rows() || received.cols() != reference.cols())
        throw UsageError("divide: received and reference grids differ in shape");
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(received.rows(), received.cols());
    for (Eigen::Index n = 0; n < g.cols(); ++n)
        for (Eigen::Index m = 0; m < g.rows(); ++m) {
            const std::complex<double> v = reference.symbols(m, n);
            if (v != std::complex<double>(0.0, 0.0))
                g(m, n) = received.symbols(m, n) / v;
        }
    return g;
}

RangeProfile range_profile(const Eigen::MatrixXcd& g, const Numerology& numerology,
                           int oversample) {
    check_oversample(oversample);
    const Eigen::Index size = static_cast<Eigen::Index>(oversample) * g.rows();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(size);
    Eigen::Index used = 0;
    for (Eigen::Index n = 0; n < g.cols(); ++n) {
        if ((g.col(n).array() == std::complex<double>(0.0, 0.0)).all())
            continue;
        acc += inverse_dft(g.col(n), size).cwiseAbs();
        ++used;
    }
    RangeProfile profile;
    profile.magnitudes = used > 0 ? (acc / static_cast<double>(used)).eval() : acc;
    profile.bin_scale_m = kSpeedOfLight / (static_cast<double>(oversample) *
                                           numerology.scs_hz * static_cast<double>(g.rows()));
    profile.oversample = oversample;
    return profile;
}

std::vector<Eigen::Index> detect_peaks(const Eigen::VectorXd& magnitudes, int k_expected,
                                       Eigen::Index min_sep_bins, double rel_threshold) {
    if (k_expected < 1)
        throw UsageError("detect_peaks: k_expected must be >= 1");
    const Eigen::Index length = magnitudes.size();
    if (length == 0)
        return {};
    const double global_max = magnitudes.maxCoeff();
    if (!(global_max > 0.0))
        return {};
    const double threshold = rel_threshold * global_max;

    std::vector<Eigen::Index> candidates;
    for (Eigen::Index i = 0; i < length; ++i) {
        const double v = magnitudes(i);
        if (v < threshold)
            continue;
        const double prev = magnitudes((i + length - 1) % length);
        const double next = magnitudes((i + 1) % length);
        if (v >= prev && v >= next)
            candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (magnitudes(a) != magnitudes(b))
            return magnitudes(a) > magnitudes(b);
        return a < b;
    });

    std::vector<Eigen::Index> selected;
    for (Eigen::Index c : candidates) {
        if (static_cast<int>(selected.size()) == k_expected)
            break;
        const bool clear = std::all_of(selected.begin(), selected.end(), [&](Eigen::Index s) {
            return circular_distance(c, s, length) >= min_sep_bins;
        });
        if (clear)
            selected.push_back(c);
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

double range_from_bin(Eigen::Index bin, const Numerology& numerology, int oversample) {
    check_oversample(oversample);
    const Eigen::Index size =
        static_cast<Eigen::Index>(oversample) * numerology.subcarriers();
    if (bin < 0 || bin >= size)
        throw UsageError("range_from_bin: bin " + std::to_string(bin) +
                         " outside [0, " + std::to_string(size) + ")");
    return static_cast<double>(bin) * kSpeedOfLight /
           (static_cast<double>(oversample) * numerology.scs_hz *
            static_cast<double>(numerology.subcarriers()));
}

Eigen::MatrixXcd compensate_delay(const Eigen::MatrixXcd& g, double delay_s,
                                  const Numerology& numerology) {
    Eigen::VectorXcd ramp(g.rows());
    const std::complex<double> j{0.0, 1.0};
    for (Eigen::Index m = 0; m < g.rows(); ++m)
        ramp(m) = std::exp(j * (kTwoPi * static_cast<double>(m) * numerology.scs_hz * delay_s));
    return ramp.asDiagonal() * g;
}

DopplerProfile doppler_profile(const Eigen::MatrixXcd& g, const Numerology& numerology,
                               int oversample) {
    check_oversample(oversample);
    const Eigen::Index size = static_cast<Eigen::Index>(oversample) * g.cols();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(size);
    Eigen::Index used = 0;
    for (Eigen::Index m = 0; m < g.rows(); ++m) {
        if ((g.row(m).array() == std::complex<double>(0.0, 0.0)).all())
            continue;
        acc += forward_dft(g.row(m).transpose(), size).cwiseAbs();
        ++used;
    }
    DopplerProfile profile;
    profile.magnitudes = used > 0 ? (acc / static_cast<double>(used)).eval() : acc;
    profile.bin_scale_hz =
        1.0 / (numerology.full_symbol_s() * static_cast<double>(size));
    profile.oversample = oversample;
    return profile;
}

Eigen::Index signed_bin(Eigen::Index bin, Eigen::Index length) {
    return bin > length / 2 ? bin - length : bin;
}

double velocity_from_bin(Eigen::Index bin, const Numerology& numerology, int oversample) {
    check_oversample(oversample);
    const Eigen::Index size = static_cast<Eigen::Index>(oversample) * numerology.symbols();
    if (bin < 0 || bin >= size)
        throw UsageError("velocity_from_bin: bin " + std::to_string(bin) +
                         " outside [0, " + std::to_string(size) + ")");
    return static_cast<double>(signed_bin(bin, size)) * kSpeedOfLight /
           (2.0 * numerology.symbol_s() * numerology.fc_hz * static_cast<double>(size));
}

SensingMetrics metrics(const Numerology& numerology, int comb_size) {
    if (comb_size != 2 && comb_size != 4 && comb_size != 6 && comb_size != 12)
        throw ConfigError("comb size must be one of 2, 4, 6, 12, got " +
                          std::to_string(comb_size));
    SensingMetrics m;
    m.range_resolution_m =
        kSpeedOfLight / (numerology.scs_hz * static_cast<double>(numerology.subcarriers()));
    m.max_range_m = kSpeedOfLight / numerology.scs_hz;
    m.velocity_resolution_mps = kSpeedOfLight / (2.0 * numerology.symbol_s() *
                                                 numerology.fc_hz *
                                                 static_cast<double>(numerology.symbols()));
    m.max_velocity_mps = kSpeedOfLight / (2.0 * numerology.symbol_s() * numerology.fc_hz);
    m.ambiguity_interval_m =
        kSpeedOfLight / (2.0 * static_cast<double>(comb_size) * numerology.scs_hz);
    return m;
}

int time_sampling_stride(const ResourceGrid& reference) {
    int stride = 0;
    for (Eigen::Index m = 0; m < reference.rows(); ++m) {
        int row_gcd = 0;
        Eigen::Index last = -1;
        for (Eigen::Index n = 0; n < reference.cols(); ++n) {
            if (reference.kinds(m, n) == 0)
                continue;
            if (last >= 0)
                row_gcd = std::gcd(row_gcd, static_cast<int>(n - last));
            last = n;
        }
        stride = std::max(stride, row_gcd);
    }
    return stride;
}

Eigen::Index alias_free_window_bins(const DopplerProfile& profile, int stride) {
    const Eigen::Index length = profile.magnitudes.size();
    if (stride <= 1)
        return length / 2;
    const Eigen::Index replica_spacing = length / stride;
    return std::max<Eigen::Index>(1, (replica_spacing - 1) / 2);
}

Eigen::Index peak_bin_in_window(const Eigen::VectorXd& magnitudes, Eigen::Index window_bins) {
    const Eigen::Index length = magnitudes.size();
    if (length == 0)
        throw UsageError("peak_bin_in_window: empty profile");
    const Eigen::Index w = std::clamp<Eigen::Index>(window_bins, 0, length / 2);
    Eigen::Index best = 0;
    for (Eigen::Index d = 0; d <= w && d < length; ++d)
        if (magnitudes(d) > magnitudes(best))
            best = d;
    for (Eigen::Index d = length - w; d < length; ++d)
        if (magnitudes(d) > magnitudes(best))
            best = d;
    return best;
}

} // namespace isac

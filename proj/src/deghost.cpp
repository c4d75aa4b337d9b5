#include "isac/deghost.hpp"

#include <cmath>
#include <string>

#include "isac/transform.hpp"

namespace isac {

const char* to_string(FuseMethod method) {
    return method == FuseMethod::Hadamard ? "hadamard" : "joint_ifft";
}

FusedProfile combine_hadamard(const RangeProfile& prs, const RangeProfile& dmrs) {
    if (prs.magnitudes.size() != dmrs.magnitudes.size())
        throw UsageError("combine_hadamard: profile lengths differ (" +
                         std::to_string(prs.magnitudes.size()) + " vs " +
                         std::to_string(dmrs.magnitudes.size()) +
                         "); use match_lengths first");
    const double scale_gap = std::abs(prs.bin_scale_m - dmrs.bin_scale_m);
    if (scale_gap > 1e-9 * prs.bin_scale_m)
        throw UsageError("combine_hadamard: bin scales differ; use match_lengths first");
    FusedProfile fused;
    fused.magnitudes = prs.magnitudes.cwiseProduct(dmrs.magnitudes);
    fused.bin_scale_m = prs.bin_scale_m;
    fused.method = FuseMethod::Hadamard;
    return fused;
}

std::pair<RangeProfile, RangeProfile> match_lengths(const Eigen::MatrixXcd& g_a,
                                                    const Numerology& numerology_a,
                                                    const Eigen::MatrixXcd& g_b,
                                                    const Numerology& numerology_b,
                                                    int base_oversample) {
    if (numerology_a.scs_hz != numerology_b.scs_hz)
        throw UsageError("match_lengths: grids use different subcarrier spacings");
    const Eigen::Index target =
        static_cast<Eigen::Index>(base_oversample) * std::max(g_a.rows(), g_b.rows());
    auto factor_for = [target](Eigen::Index rows) {
        if (rows < 1 || target % rows != 0)
            throw UsageError("match_lengths: bandwidths are incommensurate (" +
                             std::to_string(rows) + " subcarriers cannot fill " +
                             std::to_string(target) + " bins with an integer factor)");
        return static_cast<int>(target / rows);
    };
    return {range_profile(g_a, numerology_a, factor_for(g_a.rows())),
            range_profile(g_b, numerology_b, factor_for(g_b.rows()))};
}

Eigen::VectorXcd column_collapse(const Eigen::MatrixXcd& g) {
    return g.rowwise().sum();
}

Eigen::VectorXcd normalize_max(const Eigen::VectorXcd& g_tot) {
    const double max_mag = g_tot.cwiseAbs().maxCoeff();
    if (!(max_mag > 0.0))
        throw UsageError("normalize_max: zero vector has no maximum to scale by");
    return g_tot / max_mag;
}

FusedProfile joint_profile(const Eigen::VectorXcd& g_prs, const Eigen::VectorXcd& g_dmrs,
                           const Numerology& numerology, int oversample) {
    if (oversample < 1)
        throw UsageError("joint_profile: oversampling factor must be >= 1");
    const Eigen::Index len = std::max(g_prs.size(), g_dmrs.size());
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(len);
    sum.head(g_prs.size()) += g_prs;
    sum.head(g_dmrs.size()) += g_dmrs;
    const Eigen::Index size = static_cast<Eigen::Index>(oversample) * len;
    FusedProfile fused;
    fused.magnitudes = inverse_dft(sum, size).cwiseAbs();
    fused.bin_scale_m =
        kSpeedOfLight / (static_cast<double>(oversample) * numerology.scs_hz *
                         static_cast<double>(len));
    fused.method = FuseMethod::JointIfft;
    return fused;
}

std::vector<Detection> classify(const FusedProfile& fused, int k_expected,
                                Eigen::Index min_sep_bins, double rel_threshold) {
    const auto bins = detect_peaks(fused.magnitudes, k_expected, min_sep_bins, rel_threshold);
    const double global_max = bins.empty() ? 1.0 : fused.magnitudes.maxCoeff();
    std::vector<Detection> detections;
    detections.reserve(bins.size());
    for (Eigen::Index bin : bins) {
        Detection d;
        d.bistatic_range_m = static_cast<double>(bin) * fused.bin_scale_m;
        d.velocity_mps = 0.0;
        d.peak_magnitude = fused.magnitudes(bin) / global_max;
        detections.push_back(d);
    }
    return detections;
}

} // namespace isac

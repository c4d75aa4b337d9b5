#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "isac/estimator.hpp"

namespace isac {

/// Which fusion removed the ghosts: the element-wise product of two range
/// profiles (comb 2/4) or the joint IFFT of the collapsed, normalized
/// division matrices (comb 6/12).
enum class FuseMethod { Hadamard, JointIfft };

const char* to_string(FuseMethod method);

/// Ghost-free range profile. Fusion preserves the input bin scale, so range
/// resolution and the maximum unambiguous range are unchanged.
struct FusedProfile {
    Eigen::VectorXd magnitudes;
    double bin_scale_m = 0.0;
    FuseMethod method = FuseMethod::Hadamard;
};

/// Element-wise product of two equal-length, equal-scale range profiles.
/// Ghost lattices of the two references only intersect at true targets, so
/// the product peaks only there. Mismatched profiles are a UsageError; bring
/// them to a common length with match_lengths first.
FusedProfile combine_hadamard(const RangeProfile& prs, const RangeProfile& dmrs);

/// Computes the two range profiles at a common length and bin scale by
/// enlarging the IFFT factor of the smaller-bandwidth grid. base_oversample
/// applies to the wider grid. Throws UsageError when no integer factor can
/// match the sizes.
std::pair<RangeProfile, RangeProfile> match_lengths(const Eigen::MatrixXcd& g_a,
                                                    const Numerology& numerology_a,
                                                    const Eigen::MatrixXcd& g_b,
                                                    const Numerology& numerology_b,
                                                    int base_oversample);

/// g_tot(m) = sum over columns of g(m, n).
Eigen::VectorXcd column_collapse(const Eigen::MatrixXcd& g);

/// Divides by the maximum magnitude so max |out| = 1. Zero vectors are a
/// UsageError.
Eigen::VectorXcd normalize_max(const Eigen::VectorXcd& g_tot);

/// r(l) = |IFFT(g_prs + g_dmrs)| at size oversample * max(len); the shorter
/// vector is zero-padded first. Symmetric in its two inputs.
FusedProfile joint_profile(const Eigen::VectorXcd& g_prs, const Eigen::VectorXcd& g_dmrs,
                           const Numerology& numerology, int oversample);

/// Peaks of the fused profile as range detections (velocity left to the
/// Doppler stage). Fewer than k_expected peaks above threshold yields a
/// partial list.
std::vector<Detection> classify(const FusedProfile& fused, int k_expected,
                                Eigen::Index min_sep_bins, double rel_threshold);

} // namespace isac

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "isac/numerology.hpp"

namespace isac {

/// Integer split of PRBs and slots between communication (PDSCH) and one
/// sensing (PRS) allocation per target, maximizing
///
///   F = alpha0 * m0 * n0 * r0 / throughput_norm
///       - sum_k [ gamma_k_range    / (range_norm    * m_k) * (c / scs)
///               + gamma_k_velocity / (velocity_norm * n_k) * (c / (2 Ts fc)) ]
///
/// subject to every entry >= 1, sum m_i = total_prb, sum n_i = total_slots.
struct AllocProblem {
    struct TargetWeights {
        double range_weight = 1.0;    ///< gamma_{k,1}
        double velocity_weight = 1.0; ///< gamma_{k,2}
    };

    int total_prb = 272;   ///< M_max
    int total_slots = 80;  ///< N_max
    double alpha0 = 2.0;   ///< communication weight
    std::vector<TargetWeights> targets;
    double r0_bits = 0.0;  ///< PDSCH bits per PRB-slot
    Numerology numerology;

    /// Normalization constants. Zero (the default) selects the value of the
    /// metric when all resources go to one use:
    ///   throughput_norm = r0 * total_prb * total_slots
    ///   range_norm      = (c / scs) / total_prb
    ///   velocity_norm   = (c / (2 Ts fc)) / total_slots
    double throughput_norm = 0.0;
    double range_norm = 0.0;
    double velocity_norm = 0.0;

    int target_count() const { return static_cast<int>(targets.size()); }
    double resolved_throughput_norm() const;
    double resolved_range_norm() const;
    double resolved_velocity_norm() const;
    double range_metric() const { return kSpeedOfLight / numerology.scs_hz; }
    double velocity_metric() const {
        return kSpeedOfLight / (2.0 * numerology.symbol_s() * numerology.fc_hz);
    }
    void validate() const;
};

struct AllocPlan {
    int comm_prb = 0;   ///< m_0
    int comm_slots = 0; ///< n_0
    std::vector<std::pair<int, int>> sensing; ///< (m_k, n_k) per target
    double objective = 0.0;
};

/// Objective value of a feasible plan; constraint violations are a
/// UsageError.
double objective(const AllocPlan& plan, const AllocProblem& problem);

/// Globally optimal plan. Exact: enumerates the communication split and
/// distributes the sensing residual per resource dimension by dynamic
/// programming over the separable per-target terms. Ties break toward larger
/// comm_prb, then larger comm_slots, then lexicographically larger sensing
/// PRB and slot vectors.
AllocPlan solve(const AllocProblem& problem);

/// F over the full sensing lattice for K = 1: entry (i, j) is the objective
/// with m_1 = i + 1 and n_1 = j + 1. Dimensions (total_prb - 1) by
/// (total_slots - 1). The lattice argmax equals solve()'s plan.
Eigen::MatrixXd surface(const AllocProblem& problem);

} // namespace isac

#include "isac/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace isac {
namespace {

double comm_term(const AllocProblem& p, int m0, int n0) {
    return p.alpha0 * static_cast<double>(m0) * static_cast<double>(n0) * p.r0_bits /
           p.resolved_throughput_norm();
}

double range_term(const AllocProblem& p, int k, int m) {
    return p.targets[k].range_weight / (p.resolved_range_norm() * static_cast<double>(m)) *
           p.range_metric();
}

double velocity_term(const AllocProblem& p, int k, int n) {
    return p.targets[k].velocity_weight /
           (p.resolved_velocity_norm() * static_cast<double>(n)) * p.velocity_metric();
}

/// Minimum-cost split of each feasible total among the K targets, one term
/// per target. cost(k, s) is the best cost of distributing s units over
/// targets k..K-1, each getting at least 1. Reconstruction prefers the
/// largest share for the earliest target among exact cost ties, which makes
/// the solver's tie-break match a lexicographic "larger first" enumeration.
class SplitTable {
public:
    template <typename TermFn>
    SplitTable(int k_count, int max_total, TermFn term) : k_(k_count), max_(max_total) {
        cost_.assign(static_cast<std::size_t>(k_ + 1) * (max_ + 1),
                     std::numeric_limits<double>::infinity());
        at(k_, 0) = 0.0;
        for (int k = k_ - 1; k >= 0; --k) {
            const int remaining = k_ - 1 - k; // targets after k, each needs >= 1
            for (int s = k_ - k; s <= max_; ++s) {
                double best = std::numeric_limits<double>::infinity();
                for (int share = 1; share <= s - remaining; ++share) {
                    const double c = term(k, share) + at(k + 1, s - share);
                    if (c < best)
                        best = c;
                }
                at(k, s) = best;
            }
        }
        terms_.resize(static_cast<std::size_t>(k_) * (max_ + 1));
        for (int k = 0; k < k_; ++k)
            for (int share = 1; share <= max_; ++share)
                terms_[static_cast<std::size_t>(k) * (max_ + 1) + share] = term(k, share);
    }

    double best_cost(int total) const { return at(0, total); }

    std::vector<int> reconstruct(int total) const {
        std::vector<int> shares(k_);
        int s = total;
        for (int k = 0; k < k_; ++k) {
            const int remaining = k_ - 1 - k;
            int chosen = -1;
            for (int share = s - remaining; share >= 1; --share) {
                if (term_at(k, share) + at(k + 1, s - share) == at(k, s)) {
                    chosen = share;
                    break;
                }
            }
            shares[k] = chosen;
            s -= chosen;
        }
        return shares;
    }

private:
    double& at(int k, int s) { return cost_[static_cast<std::size_t>(k) * (max_ + 1) + s]; }
    double at(int k, int s) const {
        return cost_[static_cast<std::size_t>(k) * (max_ + 1) + s];
    }
    double term_at(int k, int share) const {
        return terms_[static_cast<std::size_t>(k) * (max_ + 1) + share];
    }

    int k_;
    int max_;
    std::vector<double> cost_;
    std::vector<double> terms_;
};

} // namespace

double AllocProblem::resolved_throughput_norm() const {
    if (throughput_norm > 0.0)
        return throughput_norm;
    return r0_bits * static_cast<double>(total_prb) * static_cast<double>(total_slots);
}

double AllocProblem::resolved_range_norm() const {
    if (range_norm > 0.0)
        return range_norm;
    return range_metric() / static_cast<double>(total_prb);
}

double AllocProblem::resolved_velocity_norm() const {
    if (velocity_norm > 0.0)
        return velocity_norm;
    return velocity_metric() / static_cast<double>(total_slots);
}

void AllocProblem::validate() const {
    numerology.validate();
    const int k = target_count();
    if (k < 1)
        throw ConfigError("allocation problem needs at least one sensing target");
    if (total_prb <= k || total_slots <= k)
        throw ConfigError("infeasible allocation problem: " + std::to_string(total_prb) +
                          " PRBs x " + std::to_string(total_slots) + " slots cannot host " +
                          std::to_string(k) + " sensing targets plus communication");
    if (!(alpha0 > 0.0))
        throw ConfigError("alpha0 must be positive");
    for (const auto& t : targets)
        if (!(t.range_weight > 0.0) || !(t.velocity_weight > 0.0))
            throw ConfigError("target weights must be positive");
    if (!(r0_bits > 0.0))
        throw ConfigError("r0 must be positive");
}

double objective(const AllocPlan& plan, const AllocProblem& problem) {
    problem.validate();
    const int k = problem.target_count();
    if (static_cast<int>(plan.sensing.size()) != k)
        throw UsageError("plan has " + std::to_string(plan.sensing.size()) +
                         " sensing entries for " + std::to_string(k) + " targets");
    long prb_sum = plan.comm_prb;
    long slot_sum = plan.comm_slots;
    if (plan.comm_prb < 1 || plan.comm_slots < 1)
        throw UsageError("plan allocates no resources to communication");
    for (const auto& [m, n] : plan.sensing) {
        if (m < 1 || n < 1)
            throw UsageError("plan allocates no resources to a sensing target");
        prb_sum += m;
        slot_sum += n;
    }
    if (prb_sum != problem.total_prb || slot_sum != problem.total_slots)
        throw UsageError("plan does not exhaust the resource budget (" +
                         std::to_string(prb_sum) + "/" + std::to_string(problem.total_prb) +
                         " PRBs, " + std::to_string(slot_sum) + "/" +
                         std::to_string(problem.total_slots) + " slots)");

    // Range terms accumulate before velocity terms so that swapping two
    // identical targets' allocations yields the bit-identical objective.
    double range_sum = 0.0;
    for (int i = 0; i < k; ++i)
        range_sum += range_term(problem, i, plan.sensing[i].first);
    double velocity_sum = 0.0;
    for (int i = 0; i < k; ++i)
        velocity_sum += velocity_term(problem, i, plan.sensing[i].second);
    return comm_term(problem, plan.comm_prb, plan.comm_slots) - range_sum - velocity_sum;
}

AllocPlan solve(const AllocProblem& problem) {
    problem.validate();
    const int k = problem.target_count();
    const SplitTable prb_table(k, problem.total_prb - 1,
                               [&](int t, int m) { return range_term(problem, t, m); });
    const SplitTable slot_table(k, problem.total_slots - 1,
                                [&](int t, int n) { return velocity_term(problem, t, n); });

    bool have_best = false;
    double best_objective = 0.0;
    int best_m0 = 0, best_n0 = 0;
    for (int m0 = problem.total_prb - k; m0 >= 1; --m0) {
        const double prb_cost = prb_table.best_cost(problem.total_prb - m0);
        for (int n0 = problem.total_slots - k; n0 >= 1; --n0) {
            const double f =
                comm_term(problem, m0, n0) - prb_cost - slot_table.best_cost(problem.total_slots - n0);
            // Iteration order (descending m0, n0) realizes the tie-break:
            // strictly-better only.
            if (!have_best || f > best_objective) {
                have_best = true;
                best_objective = f;
                best_m0 = m0;
                best_n0 = n0;
            }
        }
    }

    AllocPlan plan;
    plan.comm_prb = best_m0;
    plan.comm_slots = best_n0;
    const auto prbs = prb_table.reconstruct(problem.total_prb - best_m0);
    const auto slots = slot_table.reconstruct(problem.total_slots - best_n0);
    plan.sensing.reserve(k);
    for (int i = 0; i < k; ++i)
        plan.sensing.emplace_back(prbs[i], slots[i]);
    plan.objective = objective(plan, problem);
    return plan;
}

Eigen::MatrixXd surface(const AllocProblem& problem) {
    problem.validate();
    if (problem.target_count() != 1)
        throw UsageError("surface is defined for exactly one target, got " +
                         std::to_string(problem.target_count()));
    Eigen::MatrixXd f(problem.total_prb - 1, problem.total_slots - 1);
    AllocPlan plan;
    plan.sensing.resize(1);
    for (int m1 = 1; m1 <= problem.total_prb - 1; ++m1) {
        for (int n1 = 1; n1 <= problem.total_slots - 1; ++n1) {
            plan.comm_prb = problem.total_prb - m1;
            plan.comm_slots = problem.total_slots - n1;
            plan.sensing[0] = {m1, n1};
            f(m1 - 1, n1 - 1) = objective(plan, problem);
        }
    }
    return f;
}

} // namespace isac

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "isac/allocator.hpp"

using namespace isac;

namespace {

AllocProblem toy_problem() {
    AllocProblem p;
    p.total_prb = 8;
    p.total_slots = 4;
    p.alpha0 = 2.0;
    p.targets = {{1.0, 1.0}};
    p.r0_bits = 298.59375;
    return p;
}

/// Exhaustive oracle: enumerates every feasible plan, evaluates objective(),
/// keeps the strictly better candidate. Enumeration order (descending comm
/// then descending sensing shares) realizes the documented tie-break.
struct BruteForce {
    const AllocProblem& problem;
    AllocPlan best;
    bool have_best = false;

    void search_splits(int k, int remaining, std::vector<int>& shares,
                       std::vector<std::vector<int>>& out) {
        const int targets = problem.target_count();
        if (k == targets - 1) {
            shares[k] = remaining;
            out.push_back(shares);
            return;
        }
        for (int share = remaining - (targets - 1 - k); share >= 1; --share) {
            shares[k] = share;
            search_splits(k + 1, remaining - share, shares, out);
        }
    }

    AllocPlan run() {
        const int targets = problem.target_count();
        for (int m0 = problem.total_prb - targets; m0 >= 1; --m0) {
            std::vector<std::vector<int>> prb_splits;
            std::vector<int> shares(targets);
            search_splits(0, problem.total_prb - m0, shares, prb_splits);
            for (int n0 = problem.total_slots - targets; n0 >= 1; --n0) {
                std::vector<std::vector<int>> slot_splits;
                search_splits(0, problem.total_slots - n0, shares, slot_splits);
                for (const auto& prbs : prb_splits) {
                    for (const auto& slots : slot_splits) {
                        AllocPlan plan;
                        plan.comm_prb = m0;
                        plan.comm_slots = n0;
                        for (int k = 0; k < targets; ++k)
                            plan.sensing.emplace_back(prbs[k], slots[k]);
                        plan.objective = objective(plan, problem);
                        if (!have_best || plan.objective > best.objective) {
                            best = plan;
                            have_best = true;
                        }
                    }
                }
            }
        }
        return best;
    }
};

bool same_plan(const AllocPlan& a, const AllocPlan& b) {
    return a.comm_prb == b.comm_prb && a.comm_slots == b.comm_slots && a.sensing == b.sensing;
}

} // namespace

TEST_CASE("objective is symmetric under swapping identical targets") {
    AllocProblem p = toy_problem();
    p.total_prb = 12;
    p.total_slots = 8;
    p.targets = {{1.0, 1.0}, {1.0, 1.0}};
    AllocPlan plan;
    plan.comm_prb = 5;
    plan.comm_slots = 4;
    plan.sensing = {{3, 1}, {4, 3}};
    AllocPlan swapped = plan;
    std::swap(swapped.sensing[0], swapped.sensing[1]);
    CHECK(objective(plan, p) == objective(swapped, p)); // bit-identical
}

TEST_CASE("objective hand value: everything normalized to one") {
    AllocProblem p;
    p.total_prb = 2;
    p.total_slots = 2;
    p.alpha0 = 1.0;
    p.targets = {{1.0, 1.0}};
    p.r0_bits = 1.0;
    p.throughput_norm = 1.0;
    p.range_norm = p.range_metric();       // range term becomes 1/m
    p.velocity_norm = p.velocity_metric(); // velocity term becomes 1/n
    AllocPlan plan;
    plan.comm_prb = 1;
    plan.comm_slots = 1;
    plan.sensing = {{1, 1}};
    CHECK(objective(plan, p) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("objective matches independently computed values on the toy problem") {
    const AllocProblem p = toy_problem();
    auto eval = [&](int m0, int n0, int m1, int n1) {
        AllocPlan plan;
        plan.comm_prb = m0;
        plan.comm_slots = n0;
        plan.sensing = {{m1, n1}};
        return objective(plan, p);
    };
    CHECK(eval(7, 3, 1, 1) == doctest::Approx(-10.6875).epsilon(1e-12));
    CHECK(eval(4, 2, 4, 2) == doctest::Approx(-3.5).epsilon(1e-12));
    CHECK(eval(1, 1, 7, 3) == doctest::Approx(-2.4136904761904763).epsilon(1e-12));
}

TEST_CASE("objective validates the constraints") {
    const AllocProblem p = toy_problem();
    AllocPlan plan;
    plan.comm_prb = 7;
    plan.comm_slots = 3;
    plan.sensing = {{1, 1}};
    CHECK_NOTHROW(objective(plan, p));
    plan.comm_prb = 6; // sum short by one PRB
    CHECK_THROWS_AS(objective(plan, p), UsageError);
    plan.comm_prb = 8;
    plan.sensing = {{0, 1}}; // zero allocation
    CHECK_THROWS_AS(objective(plan, p), UsageError);
    plan.sensing = {};
    CHECK_THROWS_AS(objective(plan, p), UsageError);
}

TEST_CASE("solve equals exhaustive enumeration on the toy problem") {
    const AllocProblem p = toy_problem();
    const AllocPlan solved = solve(p);
    BruteForce oracle{p};
    const AllocPlan brute = oracle.run();
    CHECK(same_plan(solved, brute));
    CHECK(solved.objective == doctest::Approx(brute.objective).epsilon(1e-12));
    CHECK(solved.sensing[0].first == 7);
    CHECK(solved.sensing[0].second == 3);
}

TEST_CASE("two identical targets split an even residual symmetrically") {
    AllocProblem p;
    p.total_prb = 10;
    p.total_slots = 6;
    p.alpha0 = 2.0;
    p.targets = {{1.0, 1.0}, {1.0, 1.0}};
    p.r0_bits = 298.59375;
    const AllocPlan solved = solve(p);
    BruteForce oracle{p};
    CHECK(same_plan(solved, oracle.run()));
    if ((p.total_prb - solved.comm_prb) % 2 == 0)
        CHECK(solved.sensing[0].first == solved.sensing[1].first);
    if ((p.total_slots - solved.comm_slots) % 2 == 0)
        CHECK(solved.sensing[0].second == solved.sensing[1].second);
}

TEST_CASE("vanishing communication weight drives everything to sensing") {
    AllocProblem p = toy_problem();
    p.alpha0 = 1e-9;
    const AllocPlan plan = solve(p);
    CHECK(plan.comm_prb == 1);
    CHECK(plan.comm_slots == 1);
}

TEST_CASE("solve equals the oracle on randomized small problems, ties included") {
    std::mt19937_64 rng(2024);
    auto weight = [&] { return 0.1 + 2.9 * (double(rng() >> 11) * 0x1p-53); };
    for (int trial = 0; trial < 30; ++trial) {
        AllocProblem p;
        const int k = 1 + static_cast<int>(rng() % 2);
        p.total_prb = k + 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(14 - k));
        p.total_slots = k + 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(6 - k));
        p.alpha0 = weight();
        for (int i = 0; i < k; ++i)
            p.targets.push_back({weight(), weight()});
        if (k == 2 && trial % 3 == 0)
            p.targets[1] = p.targets[0]; // force exact ties
        p.r0_bits = 298.59375;
        const AllocPlan solved = solve(p);
        BruteForce oracle{p};
        const AllocPlan brute = oracle.run();
        CAPTURE(trial);
        CHECK(same_plan(solved, brute));
        CHECK(solved.objective ==
              doctest::Approx(brute.objective).epsilon(1e-12).scale(std::abs(brute.objective)));
    }
}

TEST_CASE("scaling all weights scales the objective and keeps the plan") {
    AllocProblem p = toy_problem();
    p.targets = {{0.7, 1.3}};
    const AllocPlan base = solve(p);
    AllocProblem scaled = p;
    const double factor = 7.25;
    scaled.alpha0 *= factor;
    scaled.targets[0].range_weight *= factor;
    scaled.targets[0].velocity_weight *= factor;
    const AllocPlan rescaled = solve(scaled);
    CHECK(same_plan(base, rescaled));
    CHECK(rescaled.objective == doctest::Approx(factor * base.objective).epsilon(1e-12));
}

TEST_CASE("surface matches solve and has the documented shape") {
    const AllocProblem p = toy_problem();
    const Eigen::MatrixXd f = surface(p);
    CHECK(f.rows() == p.total_prb - 1);
    CHECK(f.cols() == p.total_slots - 1);

    Eigen::Index best_row = 0, best_col = 0;
    f.maxCoeff(&best_row, &best_col);
    const AllocPlan plan = solve(p);
    CHECK(best_row + 1 == plan.sensing[0].first);
    CHECK(best_col + 1 == plan.sensing[0].second);
    CHECK(f(best_row, best_col) == doctest::Approx(plan.objective).epsilon(1e-12));

    // far corner leaves a single PRB-slot for communication
    AllocPlan corner;
    corner.comm_prb = 1;
    corner.comm_slots = 1;
    corner.sensing = {{p.total_prb - 1, p.total_slots - 1}};
    CHECK(f(p.total_prb - 2, p.total_slots - 2) ==
          doctest::Approx(objective(corner, p)).epsilon(1e-12));
}

TEST_CASE("infeasible and malformed problems are rejected") {
    AllocProblem p = toy_problem();
    p.total_prb = 1; // cannot host comm + target
    CHECK_THROWS_AS(solve(p), ConfigError);
    p = toy_problem();
    p.targets = {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
    p.total_slots = 4; // equals K -> infeasible
    CHECK_THROWS_AS(solve(p), ConfigError);
    p = toy_problem();
    p.targets.clear();
    CHECK_THROWS_AS(solve(p), ConfigError);
    p = toy_problem();
    p.r0_bits = 0.0;
    CHECK_THROWS_AS(solve(p), ConfigError);

    AllocProblem two = toy_problem();
    two.total_prb = 10;
    two.targets = {{1.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(surface(two), UsageError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "isac/scenario.hpp"

using namespace isac;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_scenario_text(text, "test.cfg");
        return "";
    } catch (const ConfigError& e) {
        return e.what();
    }
}

const char* kBenchmark = R"(
# two-target benchmark
numerology.scs_khz = 120
numerology.fc_ghz = 28
numerology.n_prb = 16
numerology.n_slots = 4
prs.comb_size = 4
prs.slots = 0,2
pdsch.slots = 1,3
target.0.range_m = 700
target.0.velocity_mps = 5
target.1.range_m = 900
target.1.velocity_mps = 5
channel.snr_db = inf
channel.seed = 9
)";

} // namespace

TEST_CASE("defaults parse from an empty config") {
    const ScenarioConfig cfg = parse_scenario_text("", "empty.cfg");
    CHECK(cfg.numerology.scs_hz == 120e3);
    CHECK(cfg.numerology.fc_hz == 28e9);
    CHECK(cfg.prs.comb_size == 4);
    CHECK(cfg.dmrs.symbol_positions == std::vector<int>{3, 8, 12});
    CHECK(cfg.pdsch.code_rate.num == 490);
    CHECK(cfg.pdsch.code_rate.den == 1024);
    CHECK(cfg.channel.snr_db == kNoNoise);
    CHECK(cfg.range_oversample == 4);
    CHECK(cfg.detector.rel_threshold == 0.5);
    CHECK(cfg.algorithm == Algorithm::Auto);
    CHECK_FALSE(cfg.alloc.has_value());
    CHECK(cfg.table_scs_khz == std::vector<int>{15, 30, 60, 120, 240});
}

TEST_CASE("a full scenario file parses, ranges and comments included") {
    const ScenarioConfig cfg = parse_scenario_text(kBenchmark, "bench.cfg");
    CHECK(cfg.numerology.n_prb == 16);
    CHECK(cfg.prs.slots == std::vector<int>{0, 2});
    CHECK(cfg.pdsch.slots == std::vector<int>{1, 3});
    CHECK(cfg.dmrs.slots == cfg.pdsch.slots);
    REQUIRE(cfg.channel.targets.size() == 2);
    CHECK(cfg.channel.targets[1].bistatic_range_m == 900.0);
    CHECK(cfg.channel.targets[0].amplitude == std::complex<double>(1.0, 0.0));
    CHECK(cfg.channel.seed == 9);

    const ScenarioConfig ranged =
        parse_scenario_text("prs.slots = 0-3\nnumerology.n_slots = 8\npdsch.slots = 4-7\n",
                            "r.cfg");
    CHECK(ranged.prs.slots == std::vector<int>{0, 1, 2, 3});
    CHECK(ranged.pdsch.slots == std::vector<int>{4, 5, 6, 7});
}

TEST_CASE("errors carry file and line anchors") {
    const std::string err = error_of("numerology.scs_khz = 120\nprs.comb_size = 3\n");
    CHECK(err.find("test.cfg:2") != std::string::npos);
    CHECK(err.find("2, 4, 6, 12") != std::string::npos);

    const std::string unknown = error_of("\n\nno.such.key = 1\n");
    CHECK(unknown.find("test.cfg:3") != std::string::npos);
    CHECK(unknown.find("unknown key") != std::string::npos);

    const std::string syntax = error_of("just a line\n");
    CHECK(syntax.find("test.cfg:1") != std::string::npos);
}

TEST_CASE("cross-field validation") {
    CHECK(error_of("prs.slots = 0,1\npdsch.slots = 1,2\nnumerology.n_slots = 4\n")
              .find("disjoint") != std::string::npos);
    CHECK(error_of("target.0.range_m = 999999\n").find("unambiguous") != std::string::npos);
    CHECK(error_of("prs.slots = 9\nnumerology.n_slots = 4\n").find("slot") != std::string::npos);
    CHECK(error_of("detector.rel_threshold = 1.5\n").find("[0, 1]") != std::string::npos);
    CHECK(error_of("numerology.scs_khz = 100\n").find("15/30/60/120/240") != std::string::npos);
    CHECK(error_of("table.comb = 2,3\n").find("comb") != std::string::npos);
    CHECK(error_of("prs.slots = 0\nprs.slots = 1\n").find("duplicate") != std::string::npos);
}

TEST_CASE("target amplitudes parse into complex coefficients") {
    const ScenarioConfig cfg = parse_scenario_text("target.0.range_m = 100\n"
                                                   "target.0.amplitude_re = 0.5\n"
                                                   "target.0.amplitude_im = -0.25\n",
                                                   "amp.cfg");
    REQUIRE(cfg.channel.targets.size() == 1);
    CHECK(cfg.channel.targets[0].amplitude == std::complex<double>(0.5, -0.25));
}

TEST_CASE("snr accepts inf and numbers") {
    CHECK(parse_scenario_text("channel.snr_db = inf\n", "s.cfg").channel.snr_db == kNoNoise);
    CHECK(parse_scenario_text("channel.snr_db = 12.5\n", "s.cfg").channel.snr_db == 12.5);
    CHECK(error_of("channel.snr_db = loud\n").find("number") != std::string::npos);
}

TEST_CASE("algorithm selection and pairing warnings") {
    CHECK(parse_scenario_text("deghost.algorithm = hadamard\n", "a.cfg").algorithm ==
          Algorithm::Hadamard);
    CHECK(parse_scenario_text("deghost.algorithm = joint_ifft\n", "a.cfg").algorithm ==
          Algorithm::JointIfft);
    CHECK(error_of("deghost.algorithm = fancy\n").find("auto") != std::string::npos);

    const ScenarioConfig mismatched =
        parse_scenario_text("prs.comb_size = 12\ndeghost.algorithm = hadamard\n", "w.cfg");
    REQUIRE(mismatched.warnings.size() == 1);
    CHECK(mismatched.warnings[0].find("overlap") != std::string::npos);
    CHECK(method_for_comb(2) == FuseMethod::Hadamard);
    CHECK(method_for_comb(4) == FuseMethod::Hadamard);
    CHECK(method_for_comb(6) == FuseMethod::JointIfft);
    CHECK(method_for_comb(12) == FuseMethod::JointIfft);
}

TEST_CASE("allocation block: defaults, r0 tie-in and validation") {
    const ScenarioConfig cfg = parse_scenario_text(
        "alloc.total_prb = 16\nalloc.total_slots = 8\nalloc.alpha0 = 2\n", "alloc.cfg");
    REQUIRE(cfg.alloc.has_value());
    CHECK(cfg.alloc->total_prb == 16);
    CHECK(cfg.alloc->targets.size() == 1);
    CHECK(cfg.alloc->r0_bits == doctest::Approx(298.59375).epsilon(1e-12));

    const ScenarioConfig weighted = parse_scenario_text("alloc.target.0.range_weight = 0.5\n"
                                                        "alloc.target.0.velocity_weight = 1.5\n"
                                                        "alloc.target.1.range_weight = 2\n"
                                                        "alloc.target.1.velocity_weight = 2\n"
                                                        "alloc.r0 = 100\n",
                                                        "alloc2.cfg");
    REQUIRE(weighted.alloc.has_value());
    CHECK(weighted.alloc->targets.size() == 2);
    CHECK(weighted.alloc->r0_bits == 100.0);

    CHECK(error_of("alloc.total_prb = 1\n").find("infeasible") != std::string::npos);
}

TEST_CASE("simulation without PRS slots is a config error") {
    const ScenarioConfig cfg = parse_scenario_text("", "e.cfg");
    CHECK_THROWS_AS(run_simulation(cfg), ConfigError);
}

TEST_CASE("run_simulation is deterministic for a fixed config") {
    ScenarioConfig cfg = parse_scenario_text(kBenchmark, "bench.cfg");
    cfg.channel.snr_db = 10.0;
    const SimulationResult a = run_simulation(cfg);
    const SimulationResult b = run_simulation(cfg);
    REQUIRE(a.detections.size() == b.detections.size());
    for (std::size_t i = 0; i < a.detections.size(); ++i) {
        CHECK(a.detections[i].bistatic_range_m == b.detections[i].bistatic_range_m);
        CHECK(a.detections[i].velocity_mps == b.detections[i].velocity_mps);
        CHECK(a.detections[i].peak_magnitude == b.detections[i].peak_magnitude);
    }
    CHECK(a.prs_profile.magnitudes == b.prs_profile.magnitudes);
    REQUIRE(a.fused.has_value());
    CHECK(a.fused->magnitudes == b.fused->magnitudes);

    cfg.channel.seed += 1;
    const SimulationResult c = run_simulation(cfg);
    CHECK(a.prs_profile.magnitudes != c.prs_profile.magnitudes);
}

TEST_CASE("zero-target scenarios produce no detections") {
    ScenarioConfig cfg = parse_scenario_text(kBenchmark, "bench.cfg");
    cfg.channel.targets.clear();
    const SimulationResult result = run_simulation(cfg);
    CHECK(result.detections.empty());
    CHECK(result.sensing_metrics.max_range_m == doctest::Approx(2498.27).epsilon(1e-5));
}

TEST_CASE("auto algorithm follows the comb size in the pipeline") {
    ScenarioConfig cfg = parse_scenario_text(kBenchmark, "bench.cfg");
    cfg.prs.comb_size = 12;
    const SimulationResult result = run_simulation(cfg);
    CHECK(result.method == FuseMethod::JointIfft);
    REQUIRE(result.fused.has_value());
    CHECK(result.dmrs_profile.has_value());
}

TEST_CASE("prs-only scenarios skip fusion but still detect (with ghosts)") {
    ScenarioConfig cfg = parse_scenario_text(kBenchmark, "bench.cfg");
    cfg.pdsch.slots.clear();
    cfg.dmrs.slots.clear();
    cfg.channel.targets.resize(1);
    const SimulationResult result = run_simulation(cfg);
    CHECK_FALSE(result.fused.has_value());
    CHECK_FALSE(result.dmrs_profile.has_value());
    CHECK(result.payload_bits == 0);
    CHECK(!result.detections.empty());
}

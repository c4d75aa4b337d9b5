#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isac/allocator.hpp"
#include "isac/channel.hpp"
#include "isac/deghost.hpp"
#include "isac/estimator.hpp"
#include "isac/refsig.hpp"

namespace isac {

struct DetectorConfig {
    int k_expected = 2;
    int min_sep_bins = 0;           ///< 0 selects 4 * range oversample
    double rel_threshold = 0.5;
    double max_velocity_mps = 0.0;  ///< 0 selects the alias-free window
};

enum class Algorithm { Auto, Hadamard, JointIfft };

/// Every knob of a scenario file. simulate needs the sensing part, allocate
/// the alloc part; both can live in one file.
struct ScenarioConfig {
    Numerology numerology;
    PrsConfig prs;
    DmrsConfig dmrs;
    PdschConfig pdsch;
    ChannelConfig channel;
    int range_oversample = 4;   ///< m_a
    int doppler_oversample = 4; ///< n_a
    DetectorConfig detector;
    Algorithm algorithm = Algorithm::Auto;
    std::optional<AllocProblem> alloc;
    std::vector<int> table_scs_khz{15, 30, 60, 120, 240};
    std::vector<int> table_comb{2, 4, 6, 12};
    std::vector<std::string> warnings; ///< non-fatal cross-field findings

    bool has_comm() const { return !pdsch.slots.empty(); }
    int resolved_min_sep_bins() const {
        return detector.min_sep_bins > 0 ? detector.min_sep_bins : 4 * range_oversample;
    }
};

/// Parses a flat "key = value" file ('#' starts a comment). Unknown keys and
/// invalid or inconsistent values raise ConfigError with file:line anchors.
ScenarioConfig parse_scenario_file(const std::string& path);

/// Same parser over an in-memory buffer; `name` replaces the path in errors.
ScenarioConfig parse_scenario_text(const std::string& text, const std::string& name);

struct SimulationResult {
    RangeProfile prs_profile;
    std::optional<RangeProfile> dmrs_profile;
    std::optional<FusedProfile> fused;
    std::optional<DopplerProfile> doppler; ///< after compensating the strongest detection
    std::vector<Detection> detections;
    SensingMetrics sensing_metrics;
    std::size_t payload_bits = 0;
    FuseMethod method = FuseMethod::Hadamard;
};

/// Full generate -> channel -> estimate -> de-ghost -> Doppler pipeline.
SimulationResult run_simulation(const ScenarioConfig& config);

/// Fusion algorithm a comb size calls for: Hadamard for comb 2/4, joint IFFT
/// for comb 6/12.
FuseMethod method_for_comb(int comb_size);

} // namespace isac

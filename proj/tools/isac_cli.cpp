#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isac/report.hpp"
#include "isac/scenario.hpp"

namespace {

// Exit codes: 0 success, 2 configuration error, 3 simulation with no
// detections above threshold.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNoDetection = 3;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

void print_warnings(const isac::ScenarioConfig& config, bool quiet) {
    if (quiet)
        return;
    for (const auto& w : config.warnings)
        std::cerr << "warning: " << w << '\n';
}

int run_simulate(const Options& opt) {
    isac::ScenarioConfig config = isac::parse_scenario_file(opt.config_path);
    if (opt.seed)
        config.channel.seed = *opt.seed;
    print_warnings(config, opt.quiet);

    const isac::SimulationResult result = isac::run_simulation(config);
    isac::write_simulation_outputs(opt.out_dir, result, config);

    if (!opt.quiet) {
        std::cout << "detections: " << result.detections.size() << '\n';
        for (const auto& d : result.detections)
            std::cout << "  range_m=" << isac::format_number(d.bistatic_range_m)
                      << " velocity_mps=" << isac::format_number(d.velocity_mps)
                      << " peak=" << isac::format_number(d.peak_magnitude) << '\n';
        if (result.fused)
            std::cout << "fusion: " << isac::to_string(result.method) << '\n';
        if (config.has_comm())
            std::cout << "payload_bits: " << result.payload_bits << '\n';
        std::cout << "outputs written to " << opt.out_dir << '\n';
    }
    return result.detections.empty() ? kNoDetection : kOk;
}

int run_ambiguity_table(const std::string& config_path, std::vector<int> scs_khz,
                        std::vector<int> combs) {
    isac::ScenarioConfig config; // defaults cover the full table
    if (!config_path.empty())
        config = isac::parse_scenario_file(config_path);
    if (scs_khz.empty())
        scs_khz = config.table_scs_khz;
    if (combs.empty())
        combs = config.table_comb;
    std::cout << isac::ambiguity_table_text(scs_khz, combs);
    return kOk;
}

int run_allocate(const Options& opt) {
    isac::ScenarioConfig config = isac::parse_scenario_file(opt.config_path);
    if (!config.alloc)
        throw isac::ConfigError(opt.config_path + ": no allocation problem configured (set alloc.* keys)");
    print_warnings(config, opt.quiet);

    const isac::AllocPlan plan = isac::solve(*config.alloc);
    Eigen::MatrixXd surface_values;
    const bool with_surface = config.alloc->target_count() == 1;
    if (with_surface)
        surface_values = isac::surface(*config.alloc);
    isac::write_allocation_outputs(opt.out_dir, plan, with_surface ? &surface_values : nullptr);

    if (!opt.quiet) {
        std::cout << "comm: " << plan.comm_prb << " PRB x " << plan.comm_slots << " slots\n";
        for (std::size_t k = 0; k < plan.sensing.size(); ++k)
            std::cout << "target " << k << ": " << plan.sensing[k].first << " PRB x "
                      << plan.sensing[k].second << " slots\n";
        std::cout << "objective: " << isac::format_number(plan.objective) << '\n'
                  << "outputs written to " << opt.out_dir << '\n';
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM integrated sensing and communication simulator"};
    app.require_subcommand(1);

    Options opt;
    std::vector<int> scs_khz;
    std::vector<int> combs;
    std::string table_config;

    auto* simulate =
        app.add_subcommand("simulate", "generate, transmit, estimate and de-ghost a scenario");
    simulate->add_option("config", opt.config_path, "scenario file")->required();
    simulate->add_option("--out", opt.out_dir, "output directory");
    simulate->add_option("--seed", opt.seed, "override channel.seed");
    simulate->add_flag("--quiet", opt.quiet, "suppress the stdout summary");

    auto* table = app.add_subcommand("ambiguity-table",
                                     "print the ghost ambiguity interval per SCS and comb size");
    table->add_option("config", table_config, "optional file providing table.* keys");
    table->add_option("--scs", scs_khz, "subcarrier spacings in kHz")->delimiter(',');
    table->add_option("--comb", combs, "comb sizes")->delimiter(',');

    auto* allocate =
        app.add_subcommand("allocate", "solve the PRS/PDSCH resource split for the optimum");
    allocate->add_option("config", opt.config_path, "scenario file with alloc.* keys")->required();
    allocate->add_option("--out", opt.out_dir, "output directory");
    allocate->add_flag("--quiet", opt.quiet, "suppress the stdout summary");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed())
            return run_simulate(opt);
        if (table->parsed())
            return run_ambiguity_table(table_config, scs_khz, combs);
        return run_allocate(opt);
    } catch (const isac::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const isac::MappingError& e) {
        std::cerr << "mapping error: " << e.what() << '\n';
        return kConfigError;
    } catch (const isac::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

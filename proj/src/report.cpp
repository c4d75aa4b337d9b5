#include "isac/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace isac {
namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
    return out;
}

void append_profile_rows(std::ofstream& out, const std::string& label,
                         const Eigen::VectorXd& magnitudes, double bin_scale_m) {
    const double max = magnitudes.size() > 0 ? magnitudes.maxCoeff() : 0.0;
    for (Eigen::Index bin = 0; bin < magnitudes.size(); ++bin) {
        const double normalized = max > 0.0 ? magnitudes(bin) / max : 0.0;
        out << label << ',' << bin << ',' << format_number(bin * bin_scale_m) << ','
            << format_number(magnitudes(bin)) << ',' << format_number(normalized) << '\n';
    }
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string ambiguity_table_text(const std::vector<int>& scs_khz,
                                 const std::vector<int>& combs) {
    std::string text = "scs_khz";
    for (int comb : combs)
        text += ",comb_" + std::to_string(comb);
    text += '\n';
    for (int scs : scs_khz) {
        Numerology numerology;
        numerology.scs_hz = 1e3 * scs;
        numerology.n_prb = 1;
        numerology.n_slots = 1;
        numerology.validate();
        text += std::to_string(scs);
        for (int comb : combs)
            text += ',' + format_number(metrics(numerology, comb).ambiguity_interval_m);
        text += '\n';
    }
    return text;
}

void write_simulation_outputs(const std::string& out_dir, const SimulationResult& result,
                              const ScenarioConfig& config) {
    {
        auto out = open_out(out_dir, "range_profile.csv");
        out << "profile,bin,range_m,magnitude,normalized_magnitude\n";
        append_profile_rows(out, "prs", result.prs_profile.magnitudes,
                            result.prs_profile.bin_scale_m);
        if (result.dmrs_profile)
            append_profile_rows(out, "dmrs", result.dmrs_profile->magnitudes,
                                result.dmrs_profile->bin_scale_m);
        if (result.fused)
            append_profile_rows(out, "fused", result.fused->magnitudes,
                                result.fused->bin_scale_m);
    }
    {
        auto out = open_out(out_dir, "doppler_profile.csv");
        out << "bin,doppler_hz,velocity_mps,magnitude,normalized_magnitude\n";
        if (result.doppler) {
            const auto& profile = *result.doppler;
            const double max =
                profile.magnitudes.size() > 0 ? profile.magnitudes.maxCoeff() : 0.0;
            for (Eigen::Index bin = 0; bin < profile.magnitudes.size(); ++bin) {
                const double hz =
                    static_cast<double>(signed_bin(bin, profile.magnitudes.size())) *
                    profile.bin_scale_hz;
                const double mps = kSpeedOfLight * hz / (2.0 * config.numerology.fc_hz);
                const double normalized = max > 0.0 ? profile.magnitudes(bin) / max : 0.0;
                out << bin << ',' << format_number(hz) << ',' << format_number(mps) << ','
                    << format_number(profile.magnitudes(bin)) << ','
                    << format_number(normalized) << '\n';
            }
        }
    }
    {
        auto out = open_out(out_dir, "detections.txt");
        for (const auto& d : result.detections)
            out << format_number(d.bistatic_range_m) << ',' << format_number(d.velocity_mps)
                << ',' << format_number(d.peak_magnitude) << '\n';
    }
    {
        const auto& m = result.sensing_metrics;
        auto out = open_out(out_dir, "metrics.txt");
        out << "range_resolution_m=" << format_number(m.range_resolution_m) << '\n'
            << "max_range_m=" << format_number(m.max_range_m) << '\n'
            << "velocity_resolution_mps=" << format_number(m.velocity_resolution_mps) << '\n'
            << "max_velocity_mps=" << format_number(m.max_velocity_mps) << '\n'
            << "ambiguity_interval_m=" << format_number(m.ambiguity_interval_m) << '\n';
    }
}

void write_allocation_outputs(const std::string& out_dir, const AllocPlan& plan,
                              const Eigen::MatrixXd* surface_values) {
    {
        auto out = open_out(out_dir, "optimum.txt");
        out << "comm_prb=" << plan.comm_prb << '\n'
            << "comm_slots=" << plan.comm_slots << '\n';
        for (std::size_t k = 0; k < plan.sensing.size(); ++k)
            out << "target_" << k << "_prb=" << plan.sensing[k].first << '\n'
                << "target_" << k << "_slots=" << plan.sensing[k].second << '\n';
        out << "objective=" << format_number(plan.objective) << '\n';
    }
    if (surface_values) {
        auto out = open_out(out_dir, "surface.csv");
        out << "m_sens,n_sens,F\n";
        for (Eigen::Index i = 0; i < surface_values->rows(); ++i)
            for (Eigen::Index j = 0; j < surface_values->cols(); ++j)
                out << (i + 1) << ',' << (j + 1) << ','
                    << format_number((*surface_values)(i, j)) << '\n';
    }
}

} // namespace isac

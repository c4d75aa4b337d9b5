#pragma once

#include <string>
#include <vector>

#include "isac/scenario.hpp"

namespace isac {

/// Number formatting used in every emitted file: 9 significant digits,
/// '.' decimal separator.
std::string format_number(double v);

/// One row per subcarrier spacing, one column per comb size, each cell the
/// ghost ambiguity interval in meters. Rejects unsupported values.
std::string ambiguity_table_text(const std::vector<int>& scs_khz, const std::vector<int>& combs);

/// range_profile.csv, doppler_profile.csv, detections.txt, metrics.txt.
void write_simulation_outputs(const std::string& out_dir, const SimulationResult& result,
                              const ScenarioConfig& config);

/// optimum.txt and, when a surface is given, surface.csv.
void write_allocation_outputs(const std::string& out_dir, const AllocPlan& plan,
                              const Eigen::MatrixXd* surface_values);

} // namespace isac

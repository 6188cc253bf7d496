#pragma once

// Single quench runs and parameter sweeps, with CSV/JSON/SVG artifacts.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nhprobe/config.hpp"
#include "nhprobe/plot.hpp"

namespace nhprobe {

/// Zero modes for nanowire_mzm probes (solved on config.zero_mode_model),
/// nullopt for every other probe.
std::optional<ZeroModePair> zero_modes_for(const RunConfig& config);

/// Builds H and the perturbation for the config and runs the quench engine.
QuenchResult simulate(const RunConfig& config, const std::optional<ZeroModePair>& zm);

/// Same as simulate, plus `<name>.csv`, `<name>.json` and `<name>.svg` in out_dir.
QuenchResult run_quench(const RunConfig& config, const std::filesystem::path& out_dir);

std::string quench_csv(const QuenchResult& result);
nlohmann::json quench_json(const RunConfig& config, const QuenchResult& result);

struct SweepWarning {
  std::size_t index1 = 0;
  std::size_t index2 = 0;
  double value1 = 0.0;
  double value2 = 0.0;
  std::string error;
};

struct PointClass {
  bool predicted_topological = false;
  bool analytic_topological = false;
  double relative_distance = 0.0;  // from the analytic boundary
};

struct PhaseDiagram {
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::vector<double> values;  // values[i1 * n2 + i2], n2 = 1 without axis2
  std::vector<SweepWarning> warnings;
  std::vector<plot::Polyline> boundary;
  double threshold = 0.75;
  // Per-cell comparison with phase_boundary; empty when there is no closed form.
  std::vector<PointClass> classes;

  std::size_t n2() const { return axis2 ? axis2->values.size() : 1; }
  double at(std::size_t i1, std::size_t i2) const { return values[i1 * n2() + i2]; }
};

/// Deep-phase agreement summary: points at relative distance ≥ min_distance
/// from the analytic boundary, and how many L̄ < threshold classifies correctly.
struct AgreementSummary {
  int deep_points = 0;
  int deep_agree = 0;
  int near_points = 0;
  int near_disagree = 0;
  std::vector<std::size_t> deep_misclassified;  // flat cell indices
};
AgreementSummary agreement(const PhaseDiagram& diagram, double min_distance = 0.2);

/// Runs every grid point on `jobs` worker threads. Results are stored in grid
/// order; failing points become NaN with a warning.
PhaseDiagram compute_sweep(const RunConfig& config, int jobs);

/// compute_sweep plus `phase.csv`, `phase.json` and `phase.svg` in out_dir.
PhaseDiagram run_sweep(const RunConfig& config, const std::filesystem::path& out_dir, int jobs);

std::string phase_csv(const PhaseDiagram& diagram);
nlohmann::json phase_json(const RunConfig& config, const PhaseDiagram& diagram);

/// "%.17g" formatting used for every number written to CSV.
std::string csv_number(double v);

}  // namespace nhprobe

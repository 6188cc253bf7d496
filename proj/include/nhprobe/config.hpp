#pragma once

// JSON run configuration shared by the CLI subcommands.
//
//   {
//     "name": "kitaev_mu0.1",
//     "model": "kitaev", "sites": 8, "t": 1, "mu": 0.1, "delta": 1,
//     "probe": {"type": "kitaev_edge", "lambda": 0.1},
//     "beta": 5, "step": 0.05, "sample": 1, "horizon": 200, "window": [100, 200],
//     "axis1": {"field": "mu", "values": [0.1, 0.8]},
//     "axis2": {"field": "delta", "from": 0.2, "to": 2.0, "count": 10}
//   }
//
// Model fields sit at the top level; probe fields live in "probe". Sweep axes
// may name either.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nhprobe/dynamics.hpp"

namespace nhprobe {

/// Malformed or inconsistent configuration. The CLI exits with code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  std::string field;
  std::vector<double> values;
};

struct RunConfig {
  std::string name = "run";
  ModelSpec model = KitaevSpec{};
  ProbeSpec probe = KitaevEdgeProbe{};
  double beta = 5.0;
  TimeGrid grid;
  double t0 = 100.0;
  double t1 = 200.0;
  double dropped_mass = 0.0;
  std::optional<double> degeneracy_tol;
  std::optional<SweepAxis> axis1;
  std::optional<SweepAxis> axis2;
  double threshold = 0.75;

  // Zero-mode solve feeding nanowire_mzm probes: the base model with `sites`
  // replaced and any overridden fields applied.
  NanowireSpec zero_mode_model;
  double edge_fraction = 0.1;

  QuenchOptions quench_options() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Set a model or probe field by its JSON name. Throws ConfigError for names
/// the current model/probe does not have.
void set_field(RunConfig& config, const std::string& field, double value);

nlohmann::json to_json(const ModelSpec& spec);
nlohmann::json to_json(const ProbeSpec& spec);

}  // namespace nhprobe

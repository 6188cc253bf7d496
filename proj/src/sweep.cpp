#include "nhprobe/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "nhprobe/error.hpp"

namespace nhprobe {
namespace {

using nlohmann::json;

json nan_safe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Boundary polylines in (axis1, axis2) coordinates, or vertical markers for
// one-dimensional sweeps (second coordinate NaN).
std::vector<plot::Polyline> boundary_for(const RunConfig& config) {
  std::vector<plot::Polyline> out;
  std::string control;
  try {
    control = phase_boundary_parameter(config.model);
  } catch (const Error&) {
    return out;
  }
  const SweepAxis& a1 = *config.axis1;
  auto critical_at = [&](const std::string& field, double value) {
    RunConfig c = config;
    if (!field.empty()) set_field(c, field, value);
    return phase_boundary(c.model);
  };
  const bool mirrored = std::holds_alternative<KitaevSpec>(config.model) ||
                        std::holds_alternative<NanowireSpec>(config.model);
  // Kitaev (−μ) and the nanowire (−V) have a mirrored boundary.
  auto add = [&](plot::Polyline line, bool mirror_x) {
    out.push_back(line);
    if (!mirrored) return;
    for (auto& p : line) (mirror_x ? p.first : p.second) *= -1.0;
    out.push_back(line);
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!config.axis2) {
    if (a1.field == control) add({{critical_at("", 0.0), nan}}, true);
    return out;
  }
  const SweepAxis& a2 = *config.axis2;
  plot::Polyline line;
  if (a1.field == control) {
    for (double v : a2.values) line.emplace_back(critical_at(a2.field, v), v);
    add(line, true);
  } else if (a2.field == control) {
    for (double v : a1.values) line.emplace_back(v, critical_at(a1.field, v));
    add(line, false);
  }
  return out;
}

std::string axis_label(const SweepAxis& a) { return a.field; }

}  // namespace

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<ZeroModePair> zero_modes_for(const RunConfig& config) {
  if (!needs_zero_modes(config.probe)) return std::nullopt;
  const BdgMatrix bdg = build_bdg(config.zero_mode_model);
  return extract_zero_modes(bdg, config.edge_fraction);
}

QuenchResult simulate(const RunConfig& config, const std::optional<ZeroModePair>& zm) {
  const ModeOperatorSet ops = build_modes(config.model);
  const ComplexMatrix h = build_hamiltonian(config.model, ops);
  const ComplexMatrix perturbation = build_probe(config.probe, ops, zm);
  QuenchResult r = quench_echo(h, perturbation, config.quench_options());
  r.model = config.model;
  r.probe = config.probe;
  return r;
}

std::string quench_csv(const QuenchResult& r) {
  std::string out = "time,le,trace\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    out += csv_number(r.times[i]) + ',' + csv_number(r.le_values[i]) + ',' + csv_number(r.norm_traces[i]) + '\n';
  }
  return out;
}

json quench_json(const RunConfig& config, const QuenchResult& r) {
  json j;
  j["name"] = config.name;
  j["model"] = to_json(config.model);
  j["probe"] = to_json(config.probe);
  j["beta"] = r.beta;
  j["step"] = r.grid.step;
  j["sample"] = r.grid.sample;
  j["horizon"] = r.grid.horizon;
  j["window"] = {r.t0, r.t1};
  j["steady_average"] = r.steady_average;
  j["dropped_mass"] = config.dropped_mass;
  j["times"] = r.times;
  j["le"] = r.le_values;
  j["trace"] = r.norm_traces;
  return j;
}

QuenchResult run_quench(const RunConfig& config, const std::filesystem::path& out_dir) {
  const auto zm = zero_modes_for(config);
  QuenchResult r = simulate(config, zm);
  std::filesystem::create_directories(out_dir);
  json j = quench_json(config, r);
  if (zm) {
    j["zero_modes"] = {{"sites", zm->sites}, {"energies", {zm->energies[0], zm->energies[1]}}, {"phi", zm->phi}};
  }
  plot::write_file(out_dir / (config.name + ".csv"), quench_csv(r));
  plot::write_file(out_dir / (config.name + ".json"), j.dump(2) + "\n");
  plot::LinePlot p;
  p.title = config.name + ": " + model_name(config.model) + " / " + probe_name(config.probe);
  p.xlabel = "t";
  p.ylabel = "L(t)";
  p.x = r.times;
  p.y = r.le_values;
  p.vlines = {r.t0, r.t1};
  plot::write_file(out_dir / (config.name + ".svg"), plot::line_plot_svg(p));
  return r;
}

PhaseDiagram compute_sweep(const RunConfig& config, int jobs) {
  if (!config.axis1) throw ConfigError("config: sweep needs at least axis1");
  PhaseDiagram d;
  d.axis1 = *config.axis1;
  d.axis2 = config.axis2;
  d.threshold = config.threshold;
  const std::size_t n1 = d.axis1.values.size();
  const std::size_t n2 = d.n2();
  const std::size_t total = n1 * n2;
  d.values.assign(total, std::numeric_limits<double>::quiet_NaN());

  const auto zm = zero_modes_for(config);
  std::vector<std::string> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t i1 = k / n2, i2 = k % n2;
      try {
        RunConfig c = config;
        set_field(c, d.axis1.field, d.axis1.values[i1]);
        if (d.axis2) set_field(c, d.axis2->field, d.axis2->values[i2]);
        d.values[k] = simulate(c, zm).steady_average;
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(total, jobs > 0 ? static_cast<std::size_t>(jobs) : hw);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t k = 0; k < total; ++k) {
    if (errors[k].empty()) continue;
    const std::size_t i1 = k / n2, i2 = k % n2;
    d.warnings.push_back({i1, i2, d.axis1.values[i1], d.axis2 ? d.axis2->values[i2] : 0.0, errors[k]});
  }

  d.boundary = boundary_for(config);
  try {
    d.classes.resize(total);
    for (std::size_t k = 0; k < total; ++k) {
      RunConfig c = config;
      set_field(c, d.axis1.field, d.axis1.values[k / n2]);
      if (d.axis2) set_field(c, d.axis2->field, d.axis2->values[k % n2]);
      const PhaseSide side = classify_phase(c.model);
      d.classes[k] = {d.values[k] < d.threshold, side.topological, side.relative_distance};
    }
  } catch (const Error&) {
    d.classes.clear();
  }
  return d;
}

AgreementSummary agreement(const PhaseDiagram& d, double min_distance) {
  AgreementSummary s;
  for (std::size_t k = 0; k < d.classes.size(); ++k) {
    if (!std::isfinite(d.values[k])) continue;
    const PointClass& c = d.classes[k];
    const bool agree = c.predicted_topological == c.analytic_topological;
    if (c.relative_distance >= min_distance) {
      ++s.deep_points;
      if (agree) {
        ++s.deep_agree;
      } else {
        s.deep_misclassified.push_back(k);
      }
    } else {
      ++s.near_points;
      if (!agree) ++s.near_disagree;
    }
  }
  return s;
}

std::string phase_csv(const PhaseDiagram& d) {
  std::string out = d.axis1.field + ',' + (d.axis2 ? d.axis2->field : std::string("axis2")) + ",lbar\n";
  for (std::size_t i1 = 0; i1 < d.axis1.values.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < d.n2(); ++i2) {
      out += csv_number(d.axis1.values[i1]) + ',' + (d.axis2 ? csv_number(d.axis2->values[i2]) : std::string()) +
             ',' + csv_number(d.at(i1, i2)) + '\n';
    }
  }
  return out;
}

json phase_json(const RunConfig& config, const PhaseDiagram& d) {
  json j;
  j["name"] = config.name;
  j["model"] = to_json(config.model);
  j["probe"] = to_json(config.probe);
  j["beta"] = config.beta;
  j["step"] = config.grid.step;
  j["sample"] = config.grid.sample;
  j["horizon"] = config.grid.horizon;
  j["window"] = {config.t0, config.t1};
  j["threshold"] = d.threshold;
  j["axis1"] = {{"field", d.axis1.field}, {"values", d.axis1.values}};
  if (d.axis2) j["axis2"] = {{"field", d.axis2->field}, {"values", d.axis2->values}};
  json grid = json::array();
  for (std::size_t i1 = 0; i1 < d.axis1.values.size(); ++i1) {
    json row = json::array();
    for (std::size_t i2 = 0; i2 < d.n2(); ++i2) row.push_back(nan_safe(d.at(i1, i2)));
    grid.push_back(row);
  }
  j["lbar"] = grid;
  json boundary = json::array();
  for (const auto& line : d.boundary) {
    json pts = json::array();
    for (const auto& [x, y] : line) pts.push_back({nan_safe(x), nan_safe(y)});
    boundary.push_back(pts);
  }
  j["boundary"] = boundary;
  json warnings = json::array();
  for (const auto& w : d.warnings) {
    json item{{"index1", w.index1}, {"value1", w.value1}, {"error", w.error}};
    if (d.axis2) {
      item["index2"] = w.index2;
      item["value2"] = w.value2;
    }
    warnings.push_back(item);
  }
  j["warnings"] = warnings;
  if (!d.classes.empty()) {
    const AgreementSummary s = agreement(d);
    j["classification"] = {{"min_relative_distance", 0.2},
                           {"deep_points", s.deep_points},
                           {"deep_agree", s.deep_agree},
                           {"near_points", s.near_points},
                           {"near_disagree", s.near_disagree},
                           {"deep_misclassified", s.deep_misclassified}};
  }
  return j;
}

PhaseDiagram run_sweep(const RunConfig& config, const std::filesystem::path& out_dir, int jobs) {
  PhaseDiagram d = compute_sweep(config, jobs);
  std::filesystem::create_directories(out_dir);
  plot::write_file(out_dir / "phase.csv", phase_csv(d));
  plot::write_file(out_dir / "phase.json", phase_json(config, d).dump(2) + "\n");
  std::string svg;
  const std::string title = config.name + ": steady-state average";
  if (d.axis2) {
    plot::Heatmap m;
    m.title = title;
    m.xlabel = axis_label(d.axis1);
    m.ylabel = axis_label(*d.axis2);
    m.xs = d.axis1.values;
    m.ys = d.axis2->values;
    m.values = d.values;
    m.boundary = d.boundary;
    svg = plot::heatmap_svg(m);
  } else {
    plot::LinePlot p;
    p.title = title;
    p.xlabel = axis_label(d.axis1);
    p.ylabel = "mean L";
    p.x = d.axis1.values;
    p.y = d.values;
    for (const auto& line : d.boundary) {
      if (!line.empty()) p.vlines.push_back(line.front().first);
    }
    svg = plot::line_plot_svg(p);
  }
  plot::write_file(out_dir / "phase.svg", svg);
  return d;
}

}  // namespace nhprobe

// nhprobe: command-line driver for quench runs, sweeps and diagnostics.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical or
// runtime error.

#include <cmath>
#include <complex>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nhprobe/error.hpp"
#include "nhprobe/linalg/spectral.hpp"
#include "nhprobe/oracles.hpp"
#include "nhprobe/sweep.hpp"

using nlohmann::json;
using namespace nhprobe;

namespace {

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(cplx_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json nan_to_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int cmd_quench(const std::string& path, const std::string& out) {
  const RunConfig c = load_config(path);
  const QuenchResult r = run_quench(c, out);
  std::cout << json{{"name", c.name}, {"steady_average", r.steady_average}, {"window", {r.t0, r.t1}}}.dump()
            << "\n";
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& out, int jobs) {
  const RunConfig c = load_config(path);
  if (!c.axis1) throw ConfigError(path + ": config /axis1: a sweep needs at least one axis");
  const PhaseDiagram d = run_sweep(c, out, jobs);
  for (const auto& w : d.warnings) {
    std::cerr << "warning: point (" << d.axis1.field << "=" << w.value1;
    if (d.axis2) std::cerr << ", " << d.axis2->field << "=" << w.value2;
    std::cerr << ") failed: " << w.error << "\n";
  }
  json summary{{"name", c.name}, {"points", d.values.size()}, {"failed", d.warnings.size()}};
  if (!d.classes.empty()) {
    const AgreementSummary s = agreement(d);
    summary["deep_points"] = s.deep_points;
    summary["deep_agree"] = s.deep_agree;
  }
  std::cout << summary.dump() << "\n";
  return 0;
}

int cmd_zero_modes(const std::string& path) {
  const RunConfig c = load_config(path);
  ModelSpec source;
  if (std::holds_alternative<KitaevSpec>(c.model)) {
    source = c.model;
  } else if (std::holds_alternative<NanowireSpec>(c.model)) {
    source = c.zero_mode_model;
  } else {
    throw ConfigError(path + ": config /model: zero-modes supports the kitaev and nanowire models");
  }
  const BdgMatrix bdg = build_bdg(source);
  const ZeroModePair zm = extract_zero_modes(bdg, c.edge_fraction);
  json j;
  j["model"] = to_json(source);
  j["energies"] = {zm.energies[0], zm.energies[1]};
  j["bulk_gap"] = zm.bulk_gap;
  j["edge_sites"] = zm.edge_sites;
  j["gamma_edge_weights"] = {{"left", zm.gamma_weights.left}, {"right", zm.gamma_weights.right}};
  j["gamma_prime_edge_weights"] = {{"left", zm.gamma_prime_weights.left}, {"right", zm.gamma_prime_weights.right}};
  if (zm.modes_per_site == 2) {
    j["phi"] = zm.phi;
    j["phi_amplitude"] = zm.phi_amplitude;
    j["phi_fit_residual"] = zm.phi_residual;
  }
  json table = json::array();
  for (int s = 0; s < zm.sites; ++s) {
    for (int m = 0; m < zm.modes_per_site; ++m) {
      const Eigen::Index k = static_cast<Eigen::Index>(s) * zm.modes_per_site + m;
      json row{{"site", s + 1}, {"gamma", cplx_json(zm.gamma[k])}, {"gamma_prime", cplx_json(zm.gamma_prime[k])}};
      if (zm.modes_per_site == 2) row["spin"] = m == 0 ? "up" : "down";
      table.push_back(row);
    }
  }
  j["coefficients"] = table;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_validate_probe(const std::string& path) {
  const RunConfig c = load_config(path);
  const ModeOperatorSet ops = build_modes(c.model);
  const ComplexMatrix h = build_hamiltonian(c.model, ops);
  const ComplexMatrix j_op = build_probe(c.probe, ops, zero_modes_for(c));
  const RealVector spectrum = linalg::herm_eigenvalues(h);
  const double tol = c.degeneracy_tol.value_or(default_degeneracy_tol(spectrum));
  ComplexMatrix parity;
  const bool fermionic = ops.statistics() == Statistics::Fermion;
  if (fermionic) parity = total_parity(ops);
  const JordanFormReport r = jordan_form_report(h, j_op, tol, fermionic ? &parity : nullptr);
  json out;
  out["model"] = to_json(c.model);
  out["probe"] = to_json(c.probe);
  out["degeneracy_tol"] = tol;
  out["subspace_dim"] = r.subspace_dim;
  out["cluster_energies"] = std::vector<double>(r.cluster_energies.data(), r.cluster_energies.data() + r.cluster_energies.size());
  out["next_gap"] = nan_to_null(r.next_gap);
  out["nilpotency_index"] = r.nilpotency_index;
  out["rank"] = r.rank;
  out["single_chain"] = r.single_chain;
  out["power_residual"] = r.power_residual;
  out["parity_branch"] = r.parity_branch;
  out["parity_residual"] = nan_to_null(r.parity_residual);
  out["restricted_J"] = matrix_json(r.restricted_J);
  std::cout << out.dump(2) << "\n";
  return 0;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("--") + what + ": cannot parse '" + item + "' as a number");
    }
  }
  if (v.empty()) throw ConfigError(std::string("--") + what + ": empty list");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loschmidt-echo probes of topological zero modes under non-Hermitian quenches"};
  app.require_subcommand(1);

  std::string config, out_dir = ".";
  int jobs = 1;

  auto* quench = app.add_subcommand("quench", "run one quench and write <name>.csv/.json/.svg");
  quench->add_option("config", config, "JSON configuration")->required();
  quench->add_option("-o,--out", out_dir, "output directory");

  auto* sweep = app.add_subcommand("sweep", "run a 1D/2D parameter sweep and write phase.csv/.json/.svg");
  sweep->add_option("config", config, "JSON configuration")->required();
  sweep->add_option("-o,--out", out_dir, "output directory");
  sweep->add_option("-j,--jobs", jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  auto* zero = app.add_subcommand("zero-modes", "solve the BdG problem and print the zero-mode pair");
  zero->add_option("config", config, "JSON configuration")->required();

  auto* validate = app.add_subcommand("validate-probe", "report the Jordan structure of a probe");
  validate->add_option("config", config, "JSON configuration")->required();

  auto* oracle = app.add_subcommand("oracle", "print closed-form reference values");
  oracle->require_subcommand(1);
  double lambda = 0.1, lambda_prime = 0.0, energy = 0.0, time = 1.0;
  std::string amplitudes = "1,0", energies = "0,1";

  auto* jordan = oracle->add_subcommand("jordan", "state evolved under E + λJ for a Jordan block");
  jordan->add_option("--a", amplitudes, "real initial amplitudes, comma separated");
  jordan->add_option("--lambda", lambda);
  jordan->add_option("--E", energy);
  jordan->add_option("--t", time);

  auto* two = oracle->add_subcommand("two-level", "unnormalized ρ(t) for the 2×2 cluster with λ, λ′");
  two->add_option("--lambda", lambda);
  two->add_option("--lambda-prime", lambda_prime);
  two->add_option("--t", time);

  auto* trivial = oracle->add_subcommand("trivial", "first-order ρ(t) for a split cluster");
  trivial->add_option("--E", energies, "ascending energies, comma separated");
  trivial->add_option("--lambda", lambda);
  trivial->add_option("--lambda-prime", lambda_prime);
  trivial->add_option("--t", time);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*quench) return cmd_quench(config, out_dir);
    if (*sweep) return cmd_sweep(config, out_dir, jobs);
    if (*zero) return cmd_zero_modes(config);
    if (*validate) return cmd_validate_probe(config);
    if (*jordan) {
      const std::vector<double> a = parse_list(amplitudes, "a");
      ComplexVector v(static_cast<Eigen::Index>(a.size()));
      for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i];
      const ComplexVector psi = jordan_oracle_state(v, lambda, energy, time);
      json out = json::array();
      for (Eigen::Index i = 0; i < psi.size(); ++i) out.push_back(cplx_json(psi[i]));
      std::cout << json{{"psi", out}}.dump() << "\n";
      return 0;
    }
    if (*two) {
      std::cout << json{{"rho", matrix_json(two_level_oracle_rho(lambda, lambda_prime, time))}}.dump() << "\n";
      return 0;
    }
    if (*trivial) {
      const std::vector<double> e = parse_list(energies, "E");
      const RealVector ev = Eigen::Map<const RealVector>(e.data(), static_cast<Eigen::Index>(e.size()));
      const double ratio = firstorder_gap_ratio(ev, lambda, lambda_prime);
      if (ratio < 10.0) std::cerr << "warning: level spacing is only " << ratio << " times the perturbation\n";
      std::cout << json{{"rho", matrix_json(trivial_phase_firstorder(ev, lambda, lambda_prime, time))}}.dump()
                << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nhprobe::Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

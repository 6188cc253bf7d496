// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes or fails only where listed in
// kKnownFailures (each reason is printed and explained in the README).
// Anything else, including a known failure that starts passing, exits 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "nhprobe/bdg.hpp"
#include "nhprobe/dynamics.hpp"
#include "nhprobe/error.hpp"
#include "nhprobe/linalg/expm.hpp"
#include "nhprobe/linalg/spectral.hpp"
#include "nhprobe/models.hpp"
#include "nhprobe/opalg.hpp"
#include "nhprobe/oracles.hpp"
#include "nhprobe/probes.hpp"
#include "nhprobe/sweep.hpp"

using namespace nhprobe;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Criteria whose targets this implementation does not reach, with the reason.
const std::map<int, std::string> kKnownFailures = {
    {1, "N=8 zero-mode splitting at mu=1.5 is of order lambda; see README, Known deviations"},
    {2, "deep topological cells with large splitting at N=8 read as trivial; see README, Known deviations"},
    {7, "at N=4 even the exact zero-mode probe separates deep phases by only 0.13; see README, Known deviations"},
};

double run_steady(const RunConfig& c) {
  return simulate(c, zero_modes_for(c)).steady_average;
}

RunConfig base(const std::string& json) { return parse_config(json); }

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const RunConfig c0 = base(R"({"model": "kitaev", "sites": 8, "t": 1, "delta": 1,
      "probe": {"type": "kitaev_edge", "lambda": 0.1}, "beta": 5,
      "step": 0.05, "sample": 1, "horizon": 200, "window": [100, 200]})");
  struct Target { double mu, lo, hi; };
  const std::vector<Target> targets{{0.1, 0.4, 0.6}, {0.8, 0.4, 0.6}, {1.5, 0.8, 1.0}, {2.2, 0.9, 1.0}, {2.9, 0.9, 1.0}};
  Outcome o{true, ""};
  double slowest = 0.0;
  for (const auto& t : targets) {
    RunConfig c = c0;
    set_field(c, "mu", t.mu);
    const auto start = Clock::now();
    const double l = run_steady(c);
    slowest = std::max(slowest, seconds_since(start));
    const bool ok = l >= t.lo && l <= t.hi;
    o.pass = o.pass && ok;
    o.detail += "mu=" + fmt("%.1f", t.mu) + ":" + fmt("%.3f", l) + (ok ? " " : "(out) ");
  }
  o.pass = o.pass && slowest < 120.0;
  o.detail += "slowest " + fmt("%.1f", slowest) + " s";
  return o;
}

Outcome criterion2() {
  RunConfig c = base(R"({"model": "kitaev", "sites": 8, "t": 1, "mu": 0, "delta": 1,
      "probe": {"type": "kitaev_edge", "lambda": 0.1}, "beta": 5,
      "step": 0.05, "sample": 1, "horizon": 200, "window": [100, 200],
      "axis1": {"field": "mu", "from": 0, "to": 3, "count": 7},
      "axis2": {"field": "delta", "from": 0.4, "to": 2.0, "count": 5}})");
  const PhaseDiagram d = compute_sweep(c, 0);
  const AgreementSummary s = agreement(d, 0.2);
  Outcome o;
  o.pass = d.warnings.empty() && s.deep_points > 0 && s.deep_agree == s.deep_points;
  o.detail = "deep " + std::to_string(s.deep_agree) + "/" + std::to_string(s.deep_points) + " agree, near-boundary " +
             std::to_string(s.near_disagree) + "/" + std::to_string(s.near_points) + " disagree";
  for (std::size_t k : s.deep_misclassified) {
    o.detail += "; miss (mu=" + fmt("%.2f", d.axis1.values[k / d.n2()]) +
                ", delta=" + fmt("%.2f", d.axis2->values[k % d.n2()]) + ") L=" + fmt("%.3f", d.values[k]);
  }
  return o;
}

Outcome criterion3() {
  RunConfig c = base(R"({"model": "double_kitaev", "sites": 4, "t": 1, "mu": 0.4, "delta": 1,
      "probe": {"type": "double_kitaev_edge", "kappa1": 0.1, "kappa2": 0.1}, "beta": 5,
      "step": 0.05, "sample": 1, "horizon": 200, "window": [100, 200],
      "axis1": {"field": "w", "values": [0, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0]}})");
  const PhaseDiagram d = compute_sweep(c, 0);
  const std::size_t n = d.values.size();
  const double first = d.values.front(), last = d.values.back();
  double dip = first;
  std::size_t at = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d.values[i] < dip) dip = d.values[i], at = i;
  }
  Outcome o;
  const bool has_dip = at != 0 && dip < first && dip < 0.5;
  o.pass = d.warnings.empty() && std::abs(first - 0.5) <= 0.1 && has_dip && last > 0.85;
  o.detail = "L(0)=" + fmt("%.3f", first) + " min L=" + fmt("%.3f", dip) + " at w=" + fmt("%.3g", d.axis1.values[at]) +
             " L(1)=" + fmt("%.3f", last);
  return o;
}

Outcome criterion4() {
  const RunConfig c0 = base(R"({"model": "nanowire", "sites": 5, "t": 1, "mu": 0.5, "alpha": 0.5, "delta": 1,
      "V": 1.5, "probe": {"type": "nanowire_mzm", "lambda": 0.05},
      "zero_modes": {"sites": 50, "V": 1.5}, "beta": 5,
      "step": 0.05, "sample": 1, "horizon": 200, "window": [100, 200]})");
  const auto zm = zero_modes_for(c0);
  Outcome o{true, ""};
  double slowest = 0.0;
  for (auto [v, lo, hi] : {std::tuple{1.5, 0.35, 0.65}, std::tuple{0.2, 0.9, 1.0}}) {
    RunConfig c = c0;
    set_field(c, "V", v);
    const auto start = Clock::now();
    const double l = simulate(c, zm).steady_average;
    slowest = std::max(slowest, seconds_since(start));
    const bool ok = l >= lo && l <= hi;
    o.pass = o.pass && ok;
    o.detail += "V=" + fmt("%.1f", v) + ":" + fmt("%.3f", l) + (ok ? " " : "(out) ");
  }
  o.pass = o.pass && slowest < 900.0;
  o.detail += "slowest " + fmt("%.0f", slowest) + " s";
  return o;
}

Outcome criterion5() {
  const auto start = Clock::now();
  const ZeroModePair zm = extract_zero_modes(build_bdg(NanowireSpec{50, 1.0, 0.5, 0.5, 1.5, 1.0}));
  const double elapsed = seconds_since(start);
  const RealVector e = linalg::herm_eigenvalues(build_bdg(NanowireSpec{50, 1.0, 0.5, 0.5, 1.5, 1.0}).matrix);
  int zeros = 0;
  for (double x : e) zeros += std::abs(x) < 1e-6;
  Outcome o;
  o.pass = std::abs(zm.phi - 0.36) <= 0.02 && zeros == 2 && elapsed < 1.0;
  o.detail = "phi=" + fmt("%.4f", zm.phi) + " zero modes=" + std::to_string(zeros) + " |E|max=" +
             fmt("%.1e", std::max(std::abs(zm.energies[0]), std::abs(zm.energies[1]))) + " in " +
             fmt("%.3f", elapsed) + " s";
  return o;
}

Outcome criterion6() {
  RunConfig c = base(R"({"model": "parafermion", "sites": 5, "h": 1, "g": 1, "d": 3,
      "probe": {"type": "parafermion_exact", "lambda": 0.05}, "beta": 5,
      "step": 0.05, "sample": 1, "horizon": 200, "window": [100, 200],
      "axis1": {"field": "g", "from": 0.6, "to": 1.8, "count": 13}})");
  const PhaseDiagram d = compute_sweep(c, 0);
  const auto& g = d.axis1.values;
  const double at06 = d.values.front(), at18 = d.values.back();
  double crossing = std::nan("");
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double a = d.values[i] - c.threshold, b = d.values[i + 1] - c.threshold;
    if (a >= 0 && b < 0) {
      crossing = g[i] + (g[i + 1] - g[i]) * a / (a - b);
      break;
    }
  }
  Outcome o;
  o.pass = d.warnings.empty() && std::abs(at18 - 1.0 / 3.0) <= 0.07 && at06 >= 0.9 && std::abs(crossing - 1.0) <= 0.3;
  o.detail = "N=5 L(0.6)=" + fmt("%.3f", at06) + " L(1.8)=" + fmt("%.3f", at18) + " crosses 0.67 at g=" +
             fmt("%.3f", crossing);
  return o;
}

Outcome criterion7() {
  RunConfig c = base(R"({"model": "nanowire", "sites": 4, "t": 1, "mu": 0.5, "alpha": 0.5, "delta": 1,
      "V": 1.5, "probe": {"type": "nanowire_aux", "variant": 1, "lambda": 0.05, "phi": 0.36}, "beta": 5,
      "step": 0.05, "sample": 1, "horizon": 110, "window": [90, 110],
      "axis1": {"field": "V", "from": 0, "to": 3, "count": 7},
      "axis2": {"field": "delta", "from": 0.2, "to": 1.8, "count": 5}})");
  Outcome o{true, ""};
  for (int variant = 1; variant <= 4; ++variant) {
    set_field(c, "variant", variant);
    const PhaseDiagram d = compute_sweep(c, 0);
    // Mean L over deep cells (relative distance >= 0.2) on each side of V_c.
    double sum[2] = {0.0, 0.0};
    int count[2] = {0, 0};
    for (std::size_t k = 0; k < d.values.size(); ++k) {
      if (d.classes[k].relative_distance < 0.2 || !std::isfinite(d.values[k])) continue;
      const int side = d.classes[k].analytic_topological ? 1 : 0;
      sum[side] += d.values[k];
      ++count[side];
    }
    const double gap = std::abs(sum[0] / count[0] - sum[1] / count[1]);
    const bool ok = d.warnings.empty() && (variant <= 2 ? gap > 0.25 : gap < 0.1);
    o.pass = o.pass && ok;
    o.detail += "d" + std::to_string(variant) + ":" + fmt("%.3f", gap) + (ok ? " " : "(out) ");
  }
  o.detail += "(7x5 grid, V 0..3, delta 0.2..1.8)";
  return o;
}

Outcome criterion8() {
  const auto start = Clock::now();
  double worst_jordan = 0.0, worst_two = 0.0, worst_first = 0.0;
  for (int n = 2; n <= 5; ++n) {
    std::mt19937 rng(n);
    std::normal_distribution<double> nd;
    ComplexVector a(n);
    for (auto& x : a) x = {nd(rng), nd(rng)};
    for (double t : {0.5, 4.0, 25.0, 50.0}) {
      const ComplexMatrix gen = 0.3 * ComplexMatrix::Identity(n, n) + 0.2 * jordan_generator(n);
      const ComplexVector ref = linalg::expm(cplx(0, -t) * gen) * a;
      worst_jordan = std::max(worst_jordan, (jordan_oracle_state(a, 0.2, 0.3, t) - ref).norm() / ref.norm());
    }
  }
  const DensityMatrix half(ComplexMatrix::Identity(2, 2) / 2.0, kDensityTol);
  for (double ratio : {0.0, 0.01, 0.1, 1.0}) {
    const double lambda = 0.1;
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 1) = ratio * lambda;
    d(1, 0) = lambda;
    const std::vector<double> times{1.0, 10.0, 50.0, 100.0};
    const auto states = evolve_quench(d, half, times, 0.05);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const ComplexMatrix numeric = states[k].trace * states[k].rho.matrix();
      const ComplexMatrix closed = two_level_oracle_rho(lambda, ratio * lambda, times[k]);
      worst_two = std::max(worst_two, (numeric - closed).cwiseAbs().maxCoeff());
    }
  }
  RealVector e(3);
  e << 0.0, 1.0, 2.3;
  const double lambda = 0.01;
  const DensityMatrix third(ComplexMatrix::Identity(3, 3) / 3.0, kDensityTol);
  const ComplexMatrix gen = ComplexMatrix(e.cast<cplx>().asDiagonal()) + lambda * jordan_generator(3);
  for (double t : {1.0, 7.0, 30.0}) {
    const auto s = evolve_quench(gen, third, {t}, t / 200.0);
    worst_first = std::max(worst_first, (s[0].rho.matrix() - trivial_phase_firstorder(e, lambda, 0.0, t)).cwiseAbs().maxCoeff());
  }
  // Large-N dominance: 1/λ′ = 1e4 ≫ t ≫ 1/λ = 10. At t = 80 the pure block
  // only reaches 0.879, see the unit test.
  const int n = 4;
  const ComplexMatrix jn = jordan_generator(n);
  const DensityMatrix mixed(ComplexMatrix::Identity(n, n) / double(n), kDensityTol);
  const auto dom = evolve_quench(0.1 * jn + 1e-4 * jn.adjoint(), mixed, {300.0}, 0.05);
  const double rho_nn = dom[0].rho.matrix()(n - 1, n - 1).real();
  const double elapsed = seconds_since(start);
  Outcome o;
  const double first_bound = 10.0 * lambda * lambda;
  o.pass = worst_jordan < 1e-8 && worst_two < 1e-8 && worst_first < first_bound && rho_nn > 0.9 && elapsed < 10.0;
  o.detail = "jordan " + fmt("%.1e", worst_jordan) + ", two-level " + fmt("%.1e", worst_two) + ", first-order " +
             fmt("%.1e", worst_first) + " (bound " + fmt("%.0e", first_bound) + "), rho_NN " + fmt("%.3f", rho_nn) + ", " +
             fmt("%.2f", elapsed) + " s";
  return o;
}

Outcome criterion9() {
  double fermion = 0.0, majorana = 0.0, para = 0.0, form = 0.0;
  for (int n = 1; n <= 6; ++n) fermion = std::max(fermion, algebra_check(build_fermion_modes(n)).max());
  for (int n = 1; n <= 4; ++n) {
    const auto c = majorana_modes(build_fermion_modes(n));
    const Eigen::Index dim = c[0].rows();
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) {
        const ComplexMatrix expected = (i == j ? 2.0 : 0.0) * ComplexMatrix::Identity(dim, dim);
        majorana = std::max(majorana, (c[i] * c[j] + c[j] * c[i] - expected).cwiseAbs().maxCoeff());
      }
      majorana = std::max(majorana, (c[i] - c[i].adjoint()).cwiseAbs().maxCoeff());
    }
  }
  for (int d : {2, 3, 4})
    for (int sites = 1; sites <= 3; ++sites) para = std::max(para, algebra_check(build_parafermion_modes(sites, d)).max());
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const KitaevSpec spec{n, u(rng), u(rng), std::abs(u(rng))};
      const auto ops = build_modes(spec);
      form = std::max(form, (majorana_form_hamiltonian(spec, ops) - build_hamiltonian(spec, ops)).cwiseAbs().maxCoeff());
    }
  }
  Outcome o;
  o.pass = fermion < 1e-12 && majorana < 1e-12 && para < 1e-12 && form < 1e-10;
  o.detail = "fermion " + fmt("%.1e", fermion) + ", majorana " + fmt("%.1e", majorana) + ", parafermion d=2,3,4 " +
             fmt("%.1e", para) + ", majorana form " + fmt("%.1e", form);
  return o;
}

double min_abs_branch(const ModelSpec& spec) {
  auto f = [&](double k) {
    double m = 1e300;
    for (double e : bulk_spectrum(spec, k).branches) m = std::min(m, std::abs(e));
    return m;
  };
  const int n = 4000;
  double best_k = 0.0, best = f(0.0);
  for (int i = 1; i <= n; ++i) {
    const double k = std::numbers::pi * i / n;
    const double v = f(k);
    if (v < best) best = v, best_k = k;
  }
  double a = std::max(0.0, best_k - std::numbers::pi / n), b = std::min(std::numbers::pi, best_k + std::numbers::pi / n);
  const double r = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double c = b - r * (b - a), d = a + r * (b - a);
    if (f(c) < f(d)) b = d; else a = c;
  }
  return std::min(best, f(0.5 * (a + b)));
}

Outcome criterion10() {
  double folded = 0.0;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  auto compare = [&](const ModelSpec& spec) {
    RealVector exact = linalg::herm_eigenvalues(build_hamiltonian(spec, build_modes(spec)));
    exact.array() -= exact[0];
    folded = std::max(folded, (folded_spectrum(build_bdg(spec)) - exact).cwiseAbs().maxCoeff());
  };
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 5; ++trial) compare(KitaevSpec{n, u(rng), u(rng), std::abs(u(rng))});
  compare(NanowireSpec{2, 1.0, 0.5, 0.5, 1.5, 1.0});
  compare(NanowireSpec{2, 1.0, 0.5, 0.5, 0.2, 1.0});

  double closing = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    closing = std::max(closing, min_abs_branch(KitaevSpec{8, t, 2 * t, 1.0}));
    closing = std::max(closing, min_abs_branch(KitaevSpec{8, t, -2 * t, 0.5}));
  }
  for (auto [delta, mu] : {std::pair{1.0, 0.5}, {0.5, 0.3}, {2.0, -1.0}}) {
    closing = std::max(closing, min_abs_branch(NanowireSpec{5, 1.0, mu, 0.5, std::sqrt(delta * delta + mu * mu), delta}));
  }
  Outcome o;
  o.pass = folded < 1e-8 && closing < 1e-6;
  o.detail = "folded vs exact " + fmt("%.1e", folded) + ", gap at boundary " + fmt("%.1e", closing);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments restrict the run to the listed criterion numbers.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  int unexpected = 0;
  // ctest hides the output of passing tests, so keep a copy next to the binary.
  std::FILE* log = std::fopen("acceptance_results.txt", "w");
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const auto known = kKnownFailures.find(id);
    std::string note;
    if (!o.pass && known != kKnownFailures.end()) {
      note = " [known: " + known->second + "]";
    } else if (o.pass && known != kKnownFailures.end()) {
      note = " [listed as known failure but passed]";
      ++unexpected;
    } else if (!o.pass) {
      ++unexpected;
    }
    char line[2048];
    std::snprintf(line, sizeof line, "criterion %2d: %s  %s (%.1f s)%s\n", id, o.pass ? "PASS" : "FAIL",
                  o.detail.c_str(), seconds_since(start), note.c_str());
    std::fputs(line, stdout);
    std::fflush(stdout);
    if (log) {
      std::fputs(line, log);
      std::fflush(log);
    }
  }
  if (log) std::fclose(log);
  return unexpected == 0 ? 0 : 1;
}

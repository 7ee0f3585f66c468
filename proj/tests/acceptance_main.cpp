// Acceptance harness: prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any fail. Each criterion states its tolerance in the detail text.

#include "sta/scenarios.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

using namespace sta;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct MonitorMax {
  double trace = 0.0;
  double herm = 0.0;
  void absorb(const ScenarioResult& r) {
    trace = std::max(trace, r.max_trace_error);
    herm = std::max(herm, r.max_herm_error);
  }
  void absorb(const EvolveResult& r) {
    trace = std::max(trace, r.max_trace_error);
    herm = std::max(herm, r.max_herm_error);
  }
};

MonitorMax g_monitors;

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

CMatrix random_hermitian(int dim, double scale, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, scale);
  CMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  const CMatrix h = 0.5 * (a + a.adjoint());
  return h;
}

// Random smooth non-degenerate track A + s B + sin(pi s) C on `dim` levels.
// Seeds that produce gap closings or under-resolved grids are skipped.
EigenTrack random_smooth_track(int dim, unsigned seed) {
  for (unsigned attempt = 0;; ++attempt) {
    std::mt19937 rng(seed + 1000003u * attempt);
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) a(n, n) = 1.2 * n + 0.1 * n * n;
    a += random_hermitian(dim, 0.15, rng);
    const CMatrix b = random_hermitian(dim, 0.25, rng);
    const CMatrix c = random_hermitian(dim, 0.25, rng);
    HamiltonianTrack t;
    t.dim = dim;
    t.label = "random-smooth";
    t.generator = [a, b, c](double s) {
      return CMatrix(a + s * b + std::sin(M_PI * s) * c);
    };
    try {
      return build_track(t, 501, Gauge::kParallelTransport);
    } catch (const std::runtime_error&) {
      continue;  // resample deterministically
    }
  }
}

// Column-stacked superoperator of the Lindblad generator; rho(1) follows from
// one matrix exponential, a method independent of the stepwise integrator.
CMatrix exponential_oracle(const CMatrix& h, const std::vector<LindbladOp>& ops,
                           const CMatrix& rho0, double tau) {
  const int d = static_cast<int>(h.rows());
  const CMatrix id = identity(d);
  CMatrix m = -kI * tau * (tensor(id, h) - tensor(h.transpose(), id));
  for (const LindbladOp& l : ops) {
    const CMatrix ldl = l.op.adjoint() * l.op;
    m += (tau * l.rate_sq) *
         (tensor(l.op.conjugate(), l.op) - 0.5 * tensor(id, ldl) -
          0.5 * tensor(ldl.transpose(), id));
  }
  const CMatrix propagator = m.exp();
  const Eigen::Map<const CVector> v0(rho0.data(), d * d);
  const CVector v1 = propagator * v0;
  return Eigen::Map<const CMatrix>(v1.data(), d, d);
}

// --- criterion 1 -----------------------------------------------------------

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<EigenTrack> tracks;
  for (unsigned k = 0; k < 10; ++k) tracks.push_back(random_smooth_track(2, 101u + k));
  for (unsigned k = 0; k < 10; ++k) tracks.push_back(random_smooth_track(4, 201u + k));
  tracks.push_back(build_track(LZModel::linear(1.0, M_PI / 3).track(), 501, Gauge::kAnalytic));
  {
    HamiltonianTrack lt = LZModel::linear(1.0, M_PI / 3).track();
    lt.analytic_eigen = nullptr;
    tracks.push_back(build_track(lt, 501, Gauge::kParallelTransport));
  }
  for (const GatePreset p : {GatePreset::kHadamard, GatePreset::kCnot}) {
    const GateSpec g = GateSpec::preset(p, optimal_phi0(), 1.0);
    for (const GateSpec::Sector& sec : g.sectors())
      tracks.push_back(build_track(g.sector_track(sec.xi), 501, Gauge::kAnalytic));
  }

  int failures = 0;
  double max_zero_gap = 0.0;
  unsigned seed = 555u;
  for (const EigenTrack& track : tracks) {
    if (!energy_second_derivative_check(track, 1.0, 100, seed++)) ++failures;
    const RMatrix opt = optimal_phases(track);
    const double base = shortcut_cost(track, opt, 1.0);
    const double again = shortcut_cost(track, RMatrix(opt + RMatrix::Zero(opt.rows(), opt.cols())), 1.0);
    max_zero_gap = std::max(max_zero_gap, std::abs(again - base));
  }
  const double dt = seconds_since(t0);

  Outcome out;
  out.pass = failures == 0 && max_zero_gap <= 1e-12 && dt <= 30.0;
  std::ostringstream ss;
  ss << "cost minimality on " << tracks.size() << " tracks x 100 perturbations: "
     << (failures == 0 ? "all strict increases" : std::to_string(failures) + " tracks failed")
     << ", zero-perturbation gap " << fmt(max_zero_gap) << " (tol 1e-12), " << fmt(dt)
     << " s (budget 30 s)";
  out.detail = ss.str();
  return out;
}

// --- criterion 2 -----------------------------------------------------------

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream ss;

  const Theorem2Report lin =
      check_theorem2(build_track(LZModel::linear(1.0, M_PI / 3).track(), 2001,
                                 Gauge::kAnalytic),
                     1e-8);
  const double lin_ratio = lin.max_hsa_norm > 0.0 ? lin.max_dhsa_norm / lin.max_hsa_norm : 0.0;
  pass = pass && lin.passes && lin_ratio <= 1e-6;
  ss << "linear sweep residual " << fmt(lin.constancy_residual)
     << " (tol 1e-8), operator drift ratio " << fmt(lin_ratio) << " (tol 1e-6)";

  const Theorem2Report quad =
      check_theorem2(build_track(LZModel::quadratic(1.0, M_PI / 3).track(), 2001,
                                 Gauge::kAnalytic),
                     1e-8);
  const double quad_floor = 1e-2 * (M_PI / 3);
  pass = pass && !quad.passes && quad.constancy_residual >= quad_floor;
  ss << "; quadratic residual " << fmt(quad.constancy_residual) << " (floor "
     << fmt(quad_floor) << ")";

  int gate_failures = 0;
  for (const GatePreset p :
       {GatePreset::kHadamard, GatePreset::kPhase, GatePreset::kPi8, GatePreset::kCnot}) {
    const GateSpec g = GateSpec::preset(p, M_PI, 1.0);
    for (const GateSpec::Sector& sec : g.sectors()) {
      const Theorem2Report rep = check_theorem2(
          build_track(g.sector_track(sec.xi), 2001, Gauge::kAnalytic), 1e-8);
      const double ratio = rep.max_hsa_norm > 0.0 ? rep.max_dhsa_norm / rep.max_hsa_norm : 0.0;
      if (!rep.passes || ratio > 1e-6) ++gate_failures;
    }
  }
  pass = pass && gate_failures == 0;
  const double dt = seconds_since(t0);
  ss << "; gate sectors " << (gate_failures == 0 ? "all constant" : "FAILED") << ", "
     << fmt(dt) << " s (budget 5 s)";
  pass = pass && dt <= 5.0;

  return {pass, ss.str()};
}

// --- criterion 3 -----------------------------------------------------------

Outcome criterion3() {
  const LZModel m = LZModel::linear(1.0, M_PI / 3);
  const double sigma_ad =
      cost_quadrature([&](double s) { return m.hamiltonian(s); }, 1.0, 2001);
  const double sigma_ad_exact = std::sqrt(2.0) * (3.0 / M_PI) * std::log(2.0 + std::sqrt(3.0));
  const double rel_ad = std::abs(sigma_ad - sigma_ad_exact) / sigma_ad_exact;

  const EigenTrack track = build_track(m.track(), 2001, Gauge::kAnalytic);
  const double sigma_sa =
      shortcut_cost(track, policy_phases(PhasePolicy::zero(), track, 1.0), 1.0);
  const double sigma_sa_exact = (M_PI / 3.0) / std::sqrt(2.0);
  const double abs_sa = std::abs(sigma_sa - sigma_sa_exact);

  Outcome out;
  out.pass = rel_ad <= 1e-6 && abs_sa <= 1e-12;
  std::ostringstream ss;
  ss << "reference cost " << fmt(sigma_ad) << " vs closed form " << fmt(sigma_ad_exact)
     << " (rel err " << fmt(rel_ad) << ", tol 1e-6); driving cost " << fmt(sigma_sa)
     << " vs " << fmt(sigma_sa_exact) << " (abs err " << fmt(abs_sa) << ", tol 1e-12)";
  out.detail = ss.str();
  return out;
}

// --- criterion 4 -----------------------------------------------------------

Outcome criterion4() {
  const double p0 = optimal_phi0();
  const double pi_err = std::abs(p0 / M_PI - 0.742);
  const double hs = std::sin(0.5 * p0);
  const double omtau = p0 / (hs * hs);
  const double omtau_err = std::abs(omtau - 2.7602);

  Outcome out;
  out.pass = pi_err <= 0.001 && omtau_err <= 1e-4;
  std::ostringstream ss;
  ss << "optimal amplitude " << fmt(p0 / M_PI) << " pi (target 0.742 +- 0.001), "
     << "matched product omega*tau " << fmt(omtau) << " (target 2.7602 +- 1e-4)";
  out.detail = ss.str();
  return out;
}

// --- criterion 5 -----------------------------------------------------------

Outcome criterion5() {
  const std::vector<double> taus = TauRange{}.values();  // 200-point default grid
  double worst = 0.0;

  const LZModel shape = LZModel::linear(1.0, M_PI / 3);
  for (double tau : taus) {
    const double omega = equal_resource_omega(shape, tau);
    const EnergyCostReport r = lz_costs(LZModel::linear(omega, M_PI / 3), tau);
    worst = std::max(worst, std::abs(r.ratio - 1.0));
  }
  for (const GatePreset p :
       {GatePreset::kHadamard, GatePreset::kPhase, GatePreset::kPi8, GatePreset::kCnot}) {
    const double phi0 = optimal_phi0();
    for (double tau : taus) {
      const double omega = equal_resource_omega(GateSpec::preset(p, phi0, 1.0), tau);
      const GateCostReport r = gate_costs(GateSpec::preset(p, phi0, omega), tau);
      worst = std::max(worst, std::abs(r.ratio - 1.0));
    }
  }

  Outcome out;
  out.pass = worst <= 1e-9;
  out.detail = "matched-resource ratio drift over 200-point grids, sweep + 4 gate presets: " +
               fmt(worst) + " (tol 1e-9)";
  return out;
}

// --- criterion 6 -----------------------------------------------------------

Outcome criterion6() {
  double worst = 1.0;
  std::string worst_model = "none";
  for (const std::string model : {"lz", "hadamard", "phase", "pi8", "cnot"}) {
    ScenarioConfig cfg;
    cfg.model = model;
    cfg.alphas = {0.0};
    cfg.protocols = {Protocol::kTransitionless};
    cfg.tau_range.min = 0.1;
    cfg.tau_range.max = 10.0;
    cfg.tau_range.points = 3;  // log-spaced: 0.1, 1, 10
    cfg.integrator.steps = 10000;
    const ScenarioResult res = run_scenario(cfg);
    g_monitors.absorb(res);
    for (const ScenarioRow& r : res.rows) {
      if (r.fidelity < worst) {
        worst = r.fidelity;
        worst_model = model;
      }
    }
  }

  // The controlled preset on its conventional input lands on the maximally
  // entangled pair (|00> + |11>)/sqrt(2).
  const GateSpec cx = GateSpec::preset(GatePreset::kCnot);
  const CVector bell_target = [] {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
  }();
  const double bell_err =
      (cx.rotated_target(preset_input(GatePreset::kCnot)) - bell_target).norm();

  Outcome out;
  out.pass = worst >= 1.0 - 1e-6 && bell_err <= 1e-6;
  std::ostringstream ss;
  ss << "closed-system driven fidelity >= 1 - 1e-6 across presets and tau in {0.1, 1, 10}: "
     << "worst " << fmt(worst) << " (" << worst_model << "); entangled-pair target error "
     << fmt(bell_err);
  out.detail = ss.str();
  return out;
}

// --- criterion 7 -----------------------------------------------------------

Outcome criterion7() {
  ScenarioConfig cfg;
  cfg.alphas = {0.0};
  cfg.protocols = {Protocol::kAdiabatic};
  cfg.integrator.steps = 2000;  // default 200-point tau grid
  const ScenarioResult res = run_scenario(cfg);
  g_monitors.absorb(res);

  std::vector<double> f;
  for (const ScenarioRow& r : res.rows) f.push_back(r.fidelity);
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / f.size();
  double var = 0.0;
  for (double x : f) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / f.size());

  Outcome out;
  out.pass = sd <= 1e-3 && mean < 1.0 - 1e-3;
  std::ostringstream ss;
  ss << "matched-resource reference fidelity over 200 tau points: mean " << fmt(mean)
     << " (< 1 - 1e-3), standard deviation " << fmt(sd) << " (tol 1e-3)";
  out.detail = ss.str();
  return out;
}

// --- criterion 8 -----------------------------------------------------------

Outcome criterion8() {
  bool pass = true;
  std::ostringstream ss;

  // Dim 2: constant generator vs the exponential oracle.
  {
    const CMatrix h = 0.7 * pauli_z() + 0.3 * pauli_x();
    std::vector<LindbladOp> ops;
    ops.push_back({pauli_z(), 0.05, {}});
    ops.push_back({sigma_plus(), 0.02, {}});
    ops.push_back({sigma_minus(), 0.06, {}});
    CMatrix rho0(2, 2);
    rho0 << Complex(0.7, 0.0), Complex(0.2, -0.1), Complex(0.2, 0.1), Complex(0.3, 0.0);
    IntegratorConfig cfg;
    cfg.steps = 2000;
    const EvolveResult res = integrate(
        sample_generator([&](double) { return h; }, [&](double) { return ops; }, cfg.steps),
        rho0, 1.0, cfg);
    g_monitors.absorb(res);
    const double err = max_abs(res.rho_final - exponential_oracle(h, ops, rho0, 1.0));
    pass = pass && err <= 1e-8;
    ss << "exponential-oracle error dim 2: " << fmt(err);
  }

  // Dim 4.
  {
    const CMatrix h = 0.5 * tensor(pauli_z(), identity(2)) +
                      0.3 * tensor(identity(2), pauli_x()) +
                      0.2 * tensor(pauli_x(), pauli_z());
    std::vector<LindbladOp> ops;
    ops.push_back({tensor(identity(2), pauli_z()), 0.03, {}});
    ops.push_back({tensor(sigma_minus(), identity(2)), 0.04, {}});
    ops.push_back({tensor(sigma_plus(), sigma_minus()), 0.02, {}});
    CVector v1(4), v2(4);
    v1 << 0.5, 0.5, 0.5, 0.5;
    v2 << 0.5, Complex(0.0, 0.5), -0.5, Complex(0.0, -0.5);
    const CMatrix rho0 = 0.6 * projector(v1) + 0.4 * projector(v2);
    IntegratorConfig cfg;
    cfg.steps = 2000;
    const EvolveResult res = integrate(
        sample_generator([&](double) { return h; }, [&](double) { return ops; }, cfg.steps),
        rho0, 1.0, cfg);
    g_monitors.absorb(res);
    const double err = max_abs(res.rho_final - exponential_oracle(h, ops, rho0, 1.0));
    pass = pass && err <= 1e-8;
    ss << ", dim 4: " << fmt(err) << " (tol 1e-8)";
  }

  // Damping fixed point (3/4, 1/4).
  {
    NoiseSpec spec;
    spec.kind = ChannelKind::kGad;
    spec.alpha = 0.1;
    spec.omega_r = 2.0;
    IntegratorConfig cfg;
    cfg.steps = 4000;
    CMatrix rho0 = CMatrix::Zero(2, 2);
    rho0(1, 1) = 1.0;
    const EvolveResult res =
        evolve([](double) { return CMatrix(-pauli_z()); }, rho0, spec, 40.0, cfg);
    g_monitors.absorb(res);
    const double err = std::max(std::abs(res.rho_final(0, 0).real() - 0.75),
                                std::abs(res.rho_final(1, 1).real() - 0.25));
    pass = pass && err <= 1e-4;
    ss << "; damping fixed-point error " << fmt(err) << " (tol 1e-4)";
  }

  // Monitor maxima across every acceptance integration (filled by the other
  // criteria before this line is evaluated).
  pass = pass && g_monitors.trace <= 1e-8 && g_monitors.herm <= 1e-10;
  ss << "; global trace error " << fmt(g_monitors.trace) << " (tol 1e-8), hermiticity error "
     << fmt(g_monitors.herm) << " (tol 1e-10)";
  return {pass, ss.str()};
}

// --- criterion 9 -----------------------------------------------------------

struct CrossingReport {
  bool found = false;
  double alpha = 0.0;
  int prefix = 0;
  bool adiabatic_monotone = true;
};

CrossingReport find_crossing(const std::string& model, ChannelKind channel) {
  CrossingReport rep;
  for (double alpha : {0.05, 0.1, 0.01}) {
    ScenarioConfig cfg;
    cfg.model = model;
    cfg.channel = channel;
    cfg.basis = ChannelBasis::kDrivingHamiltonian;
    cfg.dephasing_convention = DephasingRateConvention::kLinear;
    if (model != "lz") {
      // Sector symmetry makes the heralded fidelity target-proportional for
      // any per-sector dynamics, so the comparison must be unconditioned; at
      // phi0 = pi the herald is deterministic and both protocols start fair.
      cfg.phi0 = M_PI;
      cfg.postselect = false;
    }
    cfg.alphas = {alpha};
    cfg.tau_range.points = 40;
    cfg.integrator.steps = 2000;
    const ScenarioResult res = run_scenario(cfg);
    g_monitors.absorb(res);

    const int n = cfg.tau_range.points;
    std::vector<double> f_ad(n), f_sa(n);
    for (int i = 0; i < n; ++i) {
      f_ad[i] = res.rows[i].fidelity;       // adiabatic block sorts first
      f_sa[i] = res.rows[n + i].fidelity;
    }

    int prefix = 0;
    while (prefix < n && f_sa[prefix] > f_ad[prefix]) ++prefix;
    bool crossed = false;
    for (int j = prefix; j < n; ++j)
      if (f_ad[j] > f_sa[j]) crossed = true;
    bool monotone = true;
    for (int i = 0; i + 1 < n; ++i)
      if (f_ad[i + 1] < f_ad[i] - 1e-9) monotone = false;

    if (prefix >= 3 && prefix < n && crossed) {
      rep.found = true;
      rep.alpha = alpha;
      rep.prefix = prefix;
      rep.adiabatic_monotone = monotone;
      return rep;
    }
  }
  return rep;
}

Outcome criterion9() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream ss;
  bool pass = true;

  const CrossingReport lz = find_crossing("lz", ChannelKind::kDephasing);
  pass = pass && lz.found && lz.adiabatic_monotone;
  ss << "sweep/dephasing: "
     << (lz.found ? "driven protocol leads for " + std::to_string(lz.prefix) +
                        " points then cedes (alpha " + fmt(lz.alpha) + ")"
                  : "NO crossing")
     << ", reference curve " << (lz.adiabatic_monotone ? "non-decreasing" : "NOT monotone");

  for (const std::string model : {"hadamard", "cnot"}) {
    for (const ChannelKind ch : {ChannelKind::kDephasing, ChannelKind::kGad}) {
      const CrossingReport rep = find_crossing(model, ch);
      pass = pass && rep.found;
      ss << "; " << model << "/" << channel_kind_name(ch) << ": "
         << (rep.found ? "crossing (alpha " + fmt(rep.alpha) + ", prefix " +
                             std::to_string(rep.prefix) + ")"
                       : "NO crossing");
    }
  }
  const double dt = seconds_since(t0);
  pass = pass && dt <= 600.0;
  ss << "; " << fmt(dt) << " s (budget 600 s)";
  return {pass, ss.str()};
}

// --- criterion 10 ----------------------------------------------------------

Outcome criterion10() {
  ScenarioConfig cfg;
  cfg.model = "hadamard";
  cfg.channel = ChannelKind::kGad;
  cfg.alphas = {0.0, 0.05};
  cfg.tau_range.min = 0.2;
  cfg.tau_range.max = 5.0;
  cfg.tau_range.points = 3;
  cfg.integrator.steps = 800;

  const ScenarioResult a = run_scenario(cfg);
  const ScenarioResult b = run_scenario(cfg);
  g_monitors.absorb(a);
  g_monitors.absorb(b);
  cfg.threads = 3;
  const ScenarioResult c = run_scenario(cfg);
  g_monitors.absorb(c);

  const bool same_serial = csv_text(a) == csv_text(b);
  const bool same_threaded = csv_text(a) == csv_text(c);
  Outcome out;
  out.pass = same_serial && same_threaded;
  out.detail = std::string("repeated runs byte-identical: serial ") +
               (same_serial ? "yes" : "NO") + ", threaded " + (same_threaded ? "yes" : "NO");
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    Outcome (*fn)();
  };
  // Criterion 8 aggregates integration monitors, so it runs after the others.
  const Entry entries[] = {{1, criterion1}, {2, criterion2},  {3, criterion3},
                           {4, criterion4}, {5, criterion5},  {6, criterion6},
                           {7, criterion7}, {9, criterion9},  {10, criterion10},
                           {8, criterion8}};
  Outcome results[11];
  try {
    for (const Entry& e : entries) results[e.id] = e.fn();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
    return 2;
  }

  int failures = 0;
  for (int id = 1; id <= 10; ++id) {
    const Outcome& r = results[id];
    std::printf("[%s] criterion %d: %s\n", r.pass ? "PASS" : "FAIL", id, r.detail.c_str());
    if (!r.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

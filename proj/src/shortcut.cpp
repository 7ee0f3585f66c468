#include "sta/shortcut.hpp"

#include <cmath>
#include <random>

namespace sta {

namespace {

constexpr double kCouplingTol = 1e-6;  // |<k|m'>| below this counts as uncoupled

// Hermitian H_SA sample at node j for a given phase column.
CMatrix assemble_node(const EigenTrack& track, const RVector& theta, int j, double tau) {
  const CMatrix& v = track.states[j];
  const CMatrix& dv = track.derivs[j];
  const CVector th = theta.cast<Complex>();
  CMatrix raw = kI * (dv * v.adjoint()) - v * th.asDiagonal() * v.adjoint();
  raw /= tau;
  return 0.5 * (raw + raw.adjoint());
}

// Per-node ingredients of the trace-identity cost: g_n = <n'|n'> and
// w_n = Re(i<n'|n>).
void cost_tables(const EigenTrack& track, RMatrix& g, RMatrix& w) {
  const int np = track.points();
  const int nl = track.levels();
  g.resize(nl, np);
  w.resize(nl, np);
  for (int j = 0; j < np; ++j) {
    for (int n = 0; n < nl; ++n) {
      const auto dcol = track.derivs[j].col(n);
      const auto col = track.states[j].col(n);
      g(n, j) = dcol.squaredNorm();
      w(n, j) = std::real(kI * dcol.dot(col));
    }
  }
}

double cost_from_tables(const RMatrix& g, const RMatrix& w, const RMatrix& theta,
                        double spacing, double tau) {
  const int np = static_cast<int>(g.cols());
  RVector integrand(np);
  for (int j = 0; j < np; ++j) {
    double acc = 0.0;
    for (int n = 0; n < g.rows(); ++n) {
      const double th = theta(n, j);
      acc += g(n, j) + th * th + 2.0 * th * w(n, j);
    }
    integrand[j] = std::sqrt(std::max(acc, 0.0));
  }
  return simpson_uniform(integrand, spacing) / tau;
}

}  // namespace

const CMatrix& ShortcutResult::at(double s) const {
  const double h = grid[1] - grid[0];
  const long j = std::lround((s - grid[0]) / h);
  return hsa[static_cast<size_t>(std::clamp<long>(j, 0, points() - 1))];
}

RMatrix optimal_phases(const EigenTrack& track) {
  RMatrix out(track.levels(), track.points());
  for (int j = 0; j < track.points(); ++j)
    for (int n = 0; n < track.levels(); ++n)
      out(n, j) = std::real(-kI * track.derivs[j].col(n).dot(track.states[j].col(n)));
  return out;
}

RMatrix policy_phases(const PhasePolicy& policy, const EigenTrack& track, double tau) {
  const int nl = track.levels();
  const int np = track.points();
  switch (policy.kind) {
    case PhasePolicy::Kind::kZero:
      return RMatrix::Zero(nl, np);
    case PhasePolicy::Kind::kOptimal:
      return optimal_phases(track);
    case PhasePolicy::Kind::kAdiabaticMimic: {
      RMatrix out(nl, np);
      for (int j = 0; j < np; ++j)
        for (int n = 0; n < nl; ++n)
          out(n, j) = -tau * track.energies(n, j) +
                      std::real(kI * track.states[j].col(n).dot(track.derivs[j].col(n)));
      return out;
    }
    case PhasePolicy::Kind::kConstant:
      return RMatrix::Constant(nl, np, policy.constant_theta);
    case PhasePolicy::Kind::kPerLevelConstant: {
      if (policy.level_thetas.size() != nl)
        throw std::invalid_argument("policy_phases: per-level constants must list one "
                                    "theta per level");
      const CMatrix c = overlap_mean(track);
      for (int k = 0; k < nl; ++k)
        for (int m = 0; m < nl; ++m)
          if (k != m && std::abs(c(k, m)) > kCouplingTol &&
              policy.level_thetas[k] != policy.level_thetas[m])
            throw std::invalid_argument(
                "policy_phases: levels " + std::to_string(k) + " and " + std::to_string(m) +
                " are coupled by <k|m'>; their constants must agree");
      RMatrix out(nl, np);
      for (int n = 0; n < nl; ++n) out.row(n).setConstant(policy.level_thetas[n]);
      return out;
    }
    case PhasePolicy::Kind::kCustom:
      if (policy.custom.rows() != nl || policy.custom.cols() != np)
        throw std::invalid_argument("policy_phases: custom theta table is " +
                                    std::to_string(policy.custom.rows()) + "x" +
                                    std::to_string(policy.custom.cols()) +
                                    " but the track grid needs " + std::to_string(nl) + "x" +
                                    std::to_string(np));
      return policy.custom;
  }
  throw std::logic_error("policy_phases: unknown policy kind");
}

ShortcutResult build_shortcut(const EigenTrack& track, const PhasePolicy& policy, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("build_shortcut: tau must be positive");
  ShortcutResult out;
  out.grid = track.grid;
  out.tau = tau;
  out.phases = policy_phases(policy, track, tau);
  out.hsa.resize(track.points());
  for (int j = 0; j < track.points(); ++j) {
    out.hsa[j] = assemble_node(track, out.phases.col(j), j, tau);
    out.max_hsa_norm = std::max(out.max_hsa_norm, hs_norm(out.hsa[j]));
  }
  // d_s witness from interior one-step differences; the endpoint samples use a
  // different derivative stencil, so differencing across them measures stencil
  // mismatch rather than drift.
  const double h = track.spacing();
  for (int j = 1; j + 2 < track.points(); ++j)
    out.max_dhsa_norm = std::max(out.max_dhsa_norm, hs_norm(out.hsa[j + 1] - out.hsa[j]) / h);
  out.time_independent = out.max_dhsa_norm <= kTimeIndependentRatio * out.max_hsa_norm;
  return out;
}

double shortcut_cost(const EigenTrack& track, const RMatrix& phases, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("shortcut_cost: tau must be positive");
  if (phases.rows() != track.levels() || phases.cols() != track.points())
    throw std::invalid_argument("shortcut_cost: phase table does not cover the grid");
  RMatrix g, w;
  cost_tables(track, g, w);
  return cost_from_tables(g, w, phases, track.spacing(), tau);
}

bool energy_second_derivative_check(const EigenTrack& track, double tau,
                                    int n_perturbations, unsigned seed) {
  RMatrix g, w;
  cost_tables(track, g, w);
  const double h = track.spacing();
  const RMatrix theta_opt = optimal_phases(track);
  const double base = cost_from_tables(g, w, theta_opt, h, tau);

  // delta = 0 must reproduce the minimum exactly.
  if (std::abs(cost_from_tables(g, w, theta_opt, h, tau) - base) > 1e-12 * std::max(base, 1.0))
    return false;

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> logamp(std::log(1e-3), std::log(1.0));
  const int np = track.points();
  const int nl = track.levels();
  RMatrix delta(nl, np);
  for (int p = 0; p < n_perturbations; ++p) {
    for (int n = 0; n < nl; ++n) {
      const double a = unit(rng), b = unit(rng), c = unit(rng);
      for (int j = 0; j < np; ++j) {
        const double s = track.grid[j];
        delta(n, j) = a + b * s + c * std::sin(M_PI * s);
      }
    }
    const double peak = delta.cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    delta *= std::exp(logamp(rng)) / peak;
    if (cost_from_tables(g, w, theta_opt + delta, h, tau) <= base) return false;
  }
  return true;
}

Theorem2Report check_theorem2(const EigenTrack& track, double tolerance, double tau,
                              double theta) {
  Theorem2Report rep;
  rep.c_mean = overlap_mean(track);
  for (int j = 0; j < track.points(); ++j) {
    const CMatrix c = track.states[j].adjoint() * track.derivs[j];
    rep.constancy_residual = std::max(rep.constancy_residual, max_abs(c - rep.c_mean));
  }
  rep.passes = rep.constancy_residual <= tolerance;
  ShortcutResult sr = build_shortcut(track, PhasePolicy::constant(theta), tau);
  rep.family_generator = sr.hsa.front();
  rep.max_hsa_norm = sr.max_hsa_norm;
  rep.max_dhsa_norm = sr.max_dhsa_norm;
  return rep;
}

}  // namespace sta

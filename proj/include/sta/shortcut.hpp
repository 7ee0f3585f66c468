#pragma once

// Transitionless-driving construction. Given an eigenstate track |n(s)> of
// H0(s), the driving
//
//   H_SA(s) = (1/tau) [ i sum_n |n'(s)><n(s)|  -  sum_n theta_n(s) |n(s)><n(s)| ]
//
// transports each |n(0)> exactly onto |n(s)> (up to phase) for any choice of
// the real gauge phases theta_n. Phase tables are stored in s-units: an entry
// is tau times the instantaneous phase velocity in physical time, i.e. rad per
// unit s, which keeps the tables tau-independent.

#include "sta/spectral.hpp"

namespace sta {

// max_s ||d_s H_SA|| <= this ratio times max_s ||H_SA|| counts as constant.
inline constexpr double kTimeIndependentRatio = 1e-6;

struct PhasePolicy {
  enum class Kind {
    kZero,            // theta = 0 (the minimal-cost gauge after parallel transport)
    kOptimal,         // theta_n = -i<n'|n>, the cost minimizer in any gauge
    kAdiabaticMimic,  // theta_n = -tau E_n + i<n|n'>: reproduces H0 + CD correction
    kConstant,        // one real constant for every level
    kPerLevelConstant,// per-level constants; valid only across uncoupled blocks
    kCustom,          // explicit table, levels x grid points
  };

  Kind kind = Kind::kZero;
  double constant_theta = 0.0;  // rad per unit s
  RVector level_thetas;
  RMatrix custom;

  static PhasePolicy zero() { return {}; }
  static PhasePolicy optimal() { return {Kind::kOptimal, 0.0, {}, {}}; }
  static PhasePolicy adiabatic_mimic() { return {Kind::kAdiabaticMimic, 0.0, {}, {}}; }
  static PhasePolicy constant(double theta) { return {Kind::kConstant, theta, {}, {}}; }
  static PhasePolicy per_level_constant(RVector thetas) {
    return {Kind::kPerLevelConstant, 0.0, std::move(thetas), {}};
  }
  static PhasePolicy custom_table(RMatrix table) {
    return {Kind::kCustom, 0.0, {}, std::move(table)};
  }
};

struct ShortcutResult {
  RVector grid;
  std::vector<CMatrix> hsa;  // Hermitian samples of H_SA(s_j), angular frequency
  RMatrix phases;            // the realized theta table (levels x points)
  double tau = 1.0;
  double max_hsa_norm = 0.0;   // max_j ||H_SA(s_j)||_HS
  double max_dhsa_norm = 0.0;  // max ||d_s H_SA|| over interior differences
  bool time_independent = false;

  int points() const { return static_cast<int>(grid.size()); }
  // Sample at the nearest grid node.
  const CMatrix& at(double s) const;
};

// The cost-minimizing phase table theta_n(s) = -i<n'(s)|n(s)> (purely real up
// to derivative error; identically zero in the parallel-transport gauge).
RMatrix optimal_phases(const EigenTrack& track);

// Realizes a policy as an explicit table. Rejects custom tables whose shape
// does not cover the grid, and per-level constants that differ across levels
// coupled by <k|m'> (those would break the driving's structure).
RMatrix policy_phases(const PhasePolicy& policy, const EigenTrack& track, double tau);

ShortcutResult build_shortcut(const EigenTrack& track, const PhasePolicy& policy, double tau);

// Energy cost Sigma(tau) = integral_0^1 ||H_SA(s)||_HS ds of the driving with
// the given phase table, evaluated through the trace identity
//   tau^2 Tr[H_SA^2] = sum_n [ <n'|n'> + theta_n^2 + 2 theta_n Re(i<n'|n>) ]
// and composite Simpson quadrature on the track grid.
double shortcut_cost(const EigenTrack& track, const RMatrix& phases, double tau);

// Samples random phase perturbations delta with ||delta||_inf in [1e-3, 1] and
// verifies Sigma(theta_opt + delta) > Sigma(theta_opt) strictly for every one
// (and equality at delta = 0). Returns false on the first violation.
bool energy_second_derivative_check(const EigenTrack& track, double tau,
                                    int n_perturbations, unsigned seed = 20170815u);

struct Theorem2Report {
  double constancy_residual = 0.0;  // max_{s,km} |C_km(s) - mean C_km|
  bool passes = false;
  CMatrix c_mean;            // grid-averaged overlap matrix
  CMatrix family_generator;  // H_SA(0) for the constant-theta policy
  double max_hsa_norm = 0.0;
  double max_dhsa_norm = 0.0;
};

// Tests whether every overlap <k(s)|m'(s)> is constant on the grid within
// `tolerance`; when it is, any constant-theta driving built on the track is a
// time-independent operator.
Theorem2Report check_theorem2(const EigenTrack& track, double tolerance,
                              double tau = 1.0, double theta = 0.0);

}  // namespace sta

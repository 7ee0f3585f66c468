#pragma once

// Built-in driving models: a two-level avoided-crossing sweep and a family of
// single-qubit / controlled gates realized through an auxiliary qubit. Both
// expose closed-form eigensystems, so tracks can be built in the analytic
// gauge, and both carry exact counter-diabatic drivings.

#include "sta/spectral.hpp"

#include <cmath>

namespace sta {

// H0(s) = -omega [ sigma_z + tan(vartheta(s)) sigma_x ], vartheta(0) = 0,
// |vartheta| < pi/2. Energies are -/+ omega sec(vartheta); the ground state
// rotates by vartheta(s)/2 in the xz-plane.
struct LZModel {
  double omega = 1.0;
  double theta_final = M_PI / 3;              // vartheta(1)
  std::function<double(double)> angle;        // s -> vartheta(s)
  std::function<double(double)> angle_deriv;  // s -> d_s vartheta(s)
  bool linear_schedule = true;

  // vartheta(s) = theta_final * s.
  static LZModel linear(double omega = 1.0, double theta_final = M_PI / 3);
  // vartheta(s) = theta_final * s^2 (same endpoints, different path).
  static LZModel quadratic(double omega = 1.0, double theta_final = M_PI / 3);
  // Arbitrary schedule; the angle is validated on a sampling grid.
  static LZModel with_schedule(double omega, double theta_final,
                               std::function<double(double)> angle,
                               std::function<double(double)> angle_deriv);

  CMatrix hamiltonian(double s) const;
  CVector ground_state(double s) const;
  CVector excited_state(double s) const;
  HamiltonianTrack track() const;

  // Counter-diabatic term (vartheta'(s) / (2 tau)) sigma_y.
  CMatrix cd_at(double s, double tau) const;
  // The constant CD operator of a linear schedule; rejects other schedules.
  CMatrix cd_constant(double tau) const;
};

enum class GatePreset { kHadamard, kPhase, kPi8, kCnot };

GatePreset gate_preset_from_name(const std::string& name);
std::string gate_preset_name(GatePreset p);

// Gate on a target system, implemented by steering an auxiliary qubit.
// The target axis states are
//   |n_+> =  cos(eps/2)|0> + e^{i delta} sin(eps/2)|1>
//   |n_-> = -sin(eps/2)|0> + e^{i delta} cos(eps/2)|1>
// and the realized gate applies phase e^{i phi} on the |n_-> component
// (restricted to control |1> when `controlled`). The auxiliary qubit is the
// last tensor factor; each sector k drives it with
//   H_xi(s) = -omega [ cos(phi0 s) sigma_z + sin(phi0 s)(cos xi sigma_x + sin xi sigma_y) ]
// at xi = 0 (identity sector) or xi = phi (rotated sector).
struct GateSpec {
  double epsilon = 0.0;
  double delta = 0.0;
  double phi = 0.0;
  double phi0 = M_PI;  // schedule amplitude, in (0, pi]
  double omega = 1.0;
  bool controlled = false;

  static GateSpec preset(GatePreset p, double phi0 = M_PI, double omega = 1.0);

  int target_dim() const { return controlled ? 4 : 2; }
  int total_dim() const { return 2 * target_dim(); }

  void validate() const;

  CVector axis_plus() const;
  CVector axis_minus() const;

  // Complete orthogonal projector family on the target space with the sector
  // schedule phase xi attached; the realized gate multiplies each sector by
  // e^{i xi}.
  struct Sector {
    CMatrix projector;
    double xi;
  };
  std::vector<Sector> sectors() const;

  CMatrix sector_hamiltonian(double xi, double s) const;
  HamiltonianTrack sector_track(double xi) const;
  // Sector CD operator (phi0 / (2 tau)) (cos xi sigma_y - sin xi sigma_x),
  // constant in s.
  CMatrix sector_cd(double xi, double tau) const;

  // Composite operators on target (x) auxiliary. The composite spectrum is
  // degenerate across sectors, so eigensystem tracks must be built per sector.
  CMatrix hamiltonian(double s) const;
  HamiltonianTrack composite_track() const;
  CMatrix cd_hamiltonian(double tau) const;

  // Action of the ideal gate on a target state.
  CVector rotated_target(const CVector& input) const;
  // The exactly driven composite state
  //   cos(phi0 s / 2) |input>|0> + sin(phi0 s / 2) |rotated>|1>.
  CVector evolved_state(double s, const CVector& input) const;
};

// Conventional input states: |0> for hadamard, |+> for phase and pi8,
// |+>|0> for cnot (which it maps onto a Bell pair).
CVector preset_input(GatePreset p);

// General controlled-evolution frame
//   H(s) = sum_k P_k (x) [ g(s) Hf_k + f(s) Hb ],
// with boundary conditions f(0) = g(1) = 1 and f(1) = g(0) = 0, so every
// sector starts at the shared Hb and ends at its own Hf_k. The projectors
// must form a complete orthogonal family on the target space.
struct ControlledFrame {
  std::vector<CMatrix> projectors;
  std::vector<CMatrix> h_final;
  CMatrix h_begin;
  std::function<double(double)> f, g;

  ControlledFrame(std::vector<CMatrix> projectors, std::vector<CMatrix> h_final,
                  CMatrix h_begin, std::function<double(double)> f,
                  std::function<double(double)> g);

  CMatrix hamiltonian(double s) const;
  HamiltonianTrack track() const;
};

}  // namespace sta

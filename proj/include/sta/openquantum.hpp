#pragma once

// Markovian open-system evolution in the normalized schedule s = t/tau:
//
//   d_s rho = -i tau [H(s), rho] + tau sum_i (gamma_i^2 / 2) (2 L_i rho L_i^dag
//              - {L_i^dag L_i, rho})
//
// Rates enter squared; L operators are qubit channels conjugated into the
// instantaneous eigenbasis of a configurable basis Hamiltonian. Integration is
// fixed-step RK4 with trace/Hermiticity monitors every step and periodic
// positivity checks.

#include "sta/linalg.hpp"

#include <functional>

namespace sta {

enum class ChannelKind { kNone, kGad, kDephasing };
enum class ChannelBasis { kAdiabaticH0, kDrivingHamiltonian };
// Strength of the dephasing dissipator: gamma_d^2 = (alpha omega_r)^2
// ("squared") or gamma_d^2 = alpha omega_r ("linear", the generalized
// amplitude damping scale).
enum class DephasingRateConvention { kSquared, kLinear };

ChannelKind channel_kind_from_name(const std::string& name);
std::string channel_kind_name(ChannelKind k);
ChannelBasis channel_basis_from_name(const std::string& name);
std::string channel_basis_name(ChannelBasis b);
DephasingRateConvention dephasing_convention_from_name(const std::string& name);
std::string dephasing_convention_name(DephasingRateConvention c);

struct NoiseSpec {
  ChannelKind kind = ChannelKind::kNone;
  double alpha = 0.0;    // dimensionless decoherence scale, [0, 0.1]
  double omega_r = 1.0;  // reference frequency entering the rates
  ChannelBasis basis = ChannelBasis::kAdiabaticH0;
  DephasingRateConvention dephasing_convention = DephasingRateConvention::kSquared;
  int qubit_factor = -1;  // tensor factor carrying the channel; -1 = last, 0 = first

  bool active() const { return kind != ChannelKind::kNone && alpha > 0.0; }
  void validate() const;

  // Thermal-ladder rates gamma_-^2 = 3 gamma_+^2 (mean occupation 1/2), so the
  // channel relaxes eigenbasis populations toward (3/4, 1/4).
  double gamma_plus_sq() const { return 0.5 * alpha * omega_r; }
  double gamma_minus_sq() const { return 1.5 * alpha * omega_r; }
  double gamma_dephasing_sq() const;
};

struct LindbladOp {
  CMatrix op;
  double rate_sq = 0.0;  // gamma^2 multiplying the dissipator bracket
  CMatrix ldl;           // cached op^dag op (computed on demand when empty)
};

// Full right-hand side of the master equation above.
CMatrix lindblad_rhs(const CMatrix& rho, const CMatrix& h, const std::vector<LindbladOp>& ops,
                     double tau);

// Channel operators in the eigenbasis of h_basis: the qubit operator is
// embedded on the configured tensor factor and conjugated by the ascending
// eigenvector matrix. Rejects a degenerate h_basis (adjacent gap <= 1e-8);
// composite drivings with sector degeneracies use the frame overload.
std::vector<LindbladOp> channel_ops(const NoiseSpec& spec, const CMatrix& h_basis);

// Sector-resolved eigenbasis for composite drivings:
//   L = sum_k P_k (x) V_k(s) sigma V_k(s)^dag,
// with V_k the ascending eigencolumns of sector k's basis Hamiltonian. A bare
// qubit uses a single 1x1 identity projector.
struct EigenbasisFrame {
  std::vector<CMatrix> projectors;
  std::function<CMatrix(double s, int k)> sector_vecs;
};
std::vector<LindbladOp> channel_ops(const NoiseSpec& spec, const EigenbasisFrame& frame,
                                    double s);

struct IntegratorConfig {
  int steps = 10000;
  double trace_tol = 1e-8;
  double herm_tol = 1e-10;
  double positivity_tol = 1e-6;
  int positivity_interval = 100;  // steps between positivity checks; 0 disables
  bool record_trajectory = false;
};

struct EvolveResult {
  CMatrix rho_final;
  double max_trace_error = 0.0;
  double max_herm_error = 0.0;
  double min_eigenvalue = 1.0;  // smallest eigenvalue seen by the positivity checks
  std::vector<CMatrix> trajectory;
};

// Generator samples at the 2*steps+1 half-step nodes visited by RK4.
struct GeneratorTable {
  int steps = 0;
  std::vector<CMatrix> h;
  std::vector<std::vector<LindbladOp>> ops;
};

GeneratorTable sample_generator(const std::function<CMatrix(double)>& h,
                                const std::function<std::vector<LindbladOp>(double)>& ops,
                                int steps);

// RK4 over s in [0, 1]. Validates rho0 and monitors trace (trace_tol),
// Hermiticity (herm_tol) every step and positivity (positivity_tol) every
// positivity_interval steps; a violation aborts with the step, the s value,
// and the observed error (doubling `steps` is the usual cure).
EvolveResult integrate(const GeneratorTable& table, const CMatrix& rho0, double tau,
                       const IntegratorConfig& cfg = {});

// Convenience wrapper: channels rebuilt from basis_h (default: h itself) at
// every stage node.
EvolveResult evolve(const std::function<CMatrix(double)>& h, const CMatrix& rho0,
                    const NoiseSpec& spec, double tau, const IntegratorConfig& cfg = {},
                    const std::function<CMatrix(double)>& basis_h = nullptr);

// Fixed-step RK4 for closed dynamics d_s psi = -i tau H(s) psi.
CVector schrodinger_propagate(const std::function<CMatrix(double)>& h, const CVector& psi0,
                              double tau, int steps = 4000);

// Fidelity against a pure target: sqrt(<t|rho|t>), clamped to [0, 1].
double fidelity(const CMatrix& rho, const CVector& target);

}  // namespace sta

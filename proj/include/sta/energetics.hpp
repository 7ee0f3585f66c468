#pragma once

// Energy-cost accounting. The cost of a protocol over a window tau is the
// time-averaged Hilbert-Schmidt norm of its generator,
//   Sigma(tau) = (1/tau) integral_0^tau ||H(t)||_HS dt,
// which in the normalized schedule reads integral_0^1 ||H(s)||_HS ds with H(s)
// carrying its own tau scaling. Comparisons between adiabatic and
// transitionless runs are made either at a shared omega ("independent") or at
// omega chosen so both protocols spend the same cost ("equal").

#include "sta/models.hpp"

namespace sta {

struct EnergyCostReport {
  double tau = 0.0;
  double omega = 0.0;
  double sigma_ad = 0.0;      // reference (adiabatic) cost
  double sigma_sa = 0.0;      // transitionless cost, single run
  double sigma_sa_avg = 0.0;  // repetition-weighted; equals sigma_sa when deterministic
  double ratio = 0.0;         // sigma_ad / sigma_sa_avg
};

struct GateCostReport {
  double tau = 0.0;
  double omega = 0.0;
  double phi0 = 0.0;
  double n_avg = 0.0;            // expected heralded repetitions, 1/sin^2(phi0/2)
  double sigma_ad = 0.0;         // 2 omega, x sqrt2 for the controlled family
  double sigma_sa = 0.0;         // (phi0/(omega tau)) * sigma_ad, single run
  double sigma_sa_avg = 0.0;     // n_avg * sigma_sa
  double sigma_sa_direct = 0.0;  // HS norm of the assembled composite CD operator
  double ratio = 0.0;            // sigma_ad / sigma_sa_avg = (omega tau/phi0) sin^2(phi0/2)
};

// Composite-Simpson evaluation of integral_0^1 ||H(s)||_HS ds; n_nodes is
// rounded up to the next odd count. Non-finite samples are rejected.
double cost_quadrature(const std::function<CMatrix(double)>& h, double tau, int n_nodes);

// integral_0^1 |sec(vartheta(s))| ds, the shape factor of the sweep's cost.
double lz_sec_integral(const LZModel& m, int n_nodes = 2001);

// Closed-form costs: sigma_ad = sqrt2 |omega| * sec integral,
// sigma_sa = |vartheta(1)| / (sqrt2 tau).
EnergyCostReport lz_costs(const LZModel& m, double tau, int n_nodes = 2001);

// Probabilistic-gate bookkeeping. sigma_sa follows the per-sector coupling
// convention used by the ratio accounting; the direct operator norm (half of
// it) is reported alongside rather than reconciled.
GateCostReport gate_costs(const GateSpec& g, double tau);

// Root of tan(phi0/2) = phi0 in (0, pi): the schedule amplitude minimizing
// the repetition-weighted transitionless gate cost at fixed resources.
double optimal_phi0();

// omega at which the two protocols cost the same for this tau.
double equal_resource_omega(const LZModel& m, double tau, int n_nodes = 2001);
double equal_resource_omega(const GateSpec& g, double tau);

// Mean omega over a tau family; the reference frequency scale fed into
// decoherence rates.
double omega_r_average(const std::vector<double>& taus,
                       const std::function<double(double)>& omega_of_tau);

}  // namespace sta

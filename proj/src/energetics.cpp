#include "sta/energetics.hpp"

#include <cmath>

namespace sta {

double cost_quadrature(const std::function<CMatrix(double)>& h, double tau, int n_nodes) {
  if (tau <= 0.0) throw std::invalid_argument("cost_quadrature: tau must be positive");
  if (!h) throw std::invalid_argument("cost_quadrature: missing Hamiltonian map");
  if (n_nodes < 3) throw std::invalid_argument("cost_quadrature: need at least 3 nodes");
  if (n_nodes % 2 == 0) ++n_nodes;
  RVector values(n_nodes);
  for (int j = 0; j < n_nodes; ++j) {
    const double s = static_cast<double>(j) / (n_nodes - 1);
    values[j] = hs_norm(h(s));
    if (!std::isfinite(values[j]))
      throw std::runtime_error("cost_quadrature: non-finite ||H|| at s = " + std::to_string(s));
  }
  return simpson_uniform(values, 1.0 / (n_nodes - 1));
}

double lz_sec_integral(const LZModel& m, int n_nodes) {
  if (n_nodes < 3) throw std::invalid_argument("lz_sec_integral: need at least 3 nodes");
  if (n_nodes % 2 == 0) ++n_nodes;
  RVector values(n_nodes);
  for (int j = 0; j < n_nodes; ++j) {
    const double s = static_cast<double>(j) / (n_nodes - 1);
    values[j] = std::abs(1.0 / std::cos(m.angle(s)));
    if (!std::isfinite(values[j]))
      throw std::runtime_error("lz_sec_integral: schedule reaches the crossing at s = " +
                               std::to_string(s));
  }
  return simpson_uniform(values, 1.0 / (n_nodes - 1));
}

EnergyCostReport lz_costs(const LZModel& m, double tau, int n_nodes) {
  if (tau <= 0.0) throw std::invalid_argument("lz_costs: tau must be positive");
  EnergyCostReport r;
  r.tau = tau;
  r.omega = m.omega;
  r.sigma_ad = std::sqrt(2.0) * std::abs(m.omega) * lz_sec_integral(m, n_nodes);
  r.sigma_sa = std::abs(m.angle(1.0)) / (std::sqrt(2.0) * tau);
  r.sigma_sa_avg = r.sigma_sa;  // deterministic protocol, one run
  r.ratio = r.sigma_ad / r.sigma_sa_avg;
  return r;
}

GateCostReport gate_costs(const GateSpec& g, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("gate_costs: tau must be positive");
  g.validate();
  GateCostReport r;
  r.tau = tau;
  r.omega = g.omega;
  r.phi0 = g.phi0;
  const double half_sin = std::sin(0.5 * g.phi0);
  r.n_avg = 1.0 / (half_sin * half_sin);
  const double family = g.controlled ? std::sqrt(2.0) : 1.0;
  r.sigma_ad = 2.0 * g.omega * family;
  r.sigma_sa = (g.phi0 / (g.omega * tau)) * r.sigma_ad;
  r.sigma_sa_avg = r.n_avg * r.sigma_sa;
  r.sigma_sa_direct = hs_norm(g.cd_hamiltonian(tau));
  r.ratio = r.sigma_ad / r.sigma_sa_avg;
  return r;
}

double optimal_phi0() {
  // tan(x/2) - x changes sign once in (0, pi); bisect inside [2, 3].
  auto f = [](double x) { return std::tan(0.5 * x) - x; };
  double lo = 2.0, hi = 3.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double equal_resource_omega(const LZModel& m, double tau, int n_nodes) {
  if (tau <= 0.0) throw std::invalid_argument("equal_resource_omega: tau must be positive");
  return std::abs(m.angle(1.0)) / (2.0 * lz_sec_integral(m, n_nodes) * tau);
}

double equal_resource_omega(const GateSpec& g, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("equal_resource_omega: tau must be positive");
  const double half_sin = std::sin(0.5 * g.phi0);
  return g.phi0 / (half_sin * half_sin * tau);
}

double omega_r_average(const std::vector<double>& taus,
                       const std::function<double(double)>& omega_of_tau) {
  if (taus.empty()) throw std::invalid_argument("omega_r_average: empty tau family");
  if (!omega_of_tau) throw std::invalid_argument("omega_r_average: missing omega map");
  double acc = 0.0;
  for (double t : taus) acc += omega_of_tau(t);
  return acc / static_cast<double>(taus.size());
}

}  // namespace sta

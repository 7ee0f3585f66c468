#include "sta/openquantum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sta {

namespace {

constexpr double kBasisGapTol = 1e-8;

// sigma acting on the configured factor of a dim-d space, identity elsewhere.
CMatrix embed_qubit_op(const CMatrix& sigma, int dim, int factor) {
  if (dim == 2) return sigma;
  if (dim % 2 != 0)
    throw std::invalid_argument("channel_ops: basis dimension must be even to "
                                "carry a qubit channel");
  const int rest = dim / 2;
  if (factor == -1) return tensor(identity(rest), sigma);
  if (factor == 0) return tensor(sigma, identity(rest));
  throw std::invalid_argument("channel_ops: qubit_factor must be -1 (last) or 0 (first)");
}

void append_ops(std::vector<LindbladOp>& out, const NoiseSpec& spec,
                const std::function<CMatrix(const CMatrix&)>& dress) {
  if (spec.kind == ChannelKind::kGad) {
    out.push_back({dress(sigma_plus()), spec.gamma_plus_sq(), {}});
    out.push_back({dress(sigma_minus()), spec.gamma_minus_sq(), {}});
  } else {
    out.push_back({dress(pauli_z()), spec.gamma_dephasing_sq(), {}});
  }
  for (LindbladOp& l : out)
    if (l.ldl.size() == 0) l.ldl = l.op.adjoint() * l.op;
}

void check_density_state(const CMatrix& rho, const IntegratorConfig& cfg) {
  require_hermitian(rho, "integrate: initial state", 1e-10);
  if (std::abs(rho.trace().real() - 1.0) > cfg.trace_tol || std::abs(rho.trace().imag()) > cfg.trace_tol)
    throw std::invalid_argument("integrate: initial state is not normalized");
}

double min_eigenvalue(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()),
                                            Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

ChannelKind channel_kind_from_name(const std::string& name) {
  if (name == "none") return ChannelKind::kNone;
  if (name == "gad") return ChannelKind::kGad;
  if (name == "dephasing") return ChannelKind::kDephasing;
  throw std::invalid_argument("unknown channel '" + name +
                              "' (expected none, gad, or dephasing)");
}

std::string channel_kind_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::kNone: return "none";
    case ChannelKind::kGad: return "gad";
    case ChannelKind::kDephasing: return "dephasing";
  }
  throw std::logic_error("channel_kind_name: unknown kind");
}

ChannelBasis channel_basis_from_name(const std::string& name) {
  if (name == "adiabatic_h0") return ChannelBasis::kAdiabaticH0;
  if (name == "driving_hamiltonian") return ChannelBasis::kDrivingHamiltonian;
  throw std::invalid_argument("unknown channel basis '" + name +
                              "' (expected adiabatic_h0 or driving_hamiltonian)");
}

std::string channel_basis_name(ChannelBasis b) {
  return b == ChannelBasis::kAdiabaticH0 ? "adiabatic_h0" : "driving_hamiltonian";
}

DephasingRateConvention dephasing_convention_from_name(const std::string& name) {
  if (name == "squared") return DephasingRateConvention::kSquared;
  if (name == "linear") return DephasingRateConvention::kLinear;
  throw std::invalid_argument("unknown dephasing convention '" + name +
                              "' (expected squared or linear)");
}

std::string dephasing_convention_name(DephasingRateConvention c) {
  return c == DephasingRateConvention::kSquared ? "squared" : "linear";
}

void NoiseSpec::validate() const {
  if (alpha < 0.0 || alpha > 0.1)
    throw std::invalid_argument("NoiseSpec: alpha must lie in [0, 0.1]");
  if (omega_r <= 0.0 && active())
    throw std::invalid_argument("NoiseSpec: omega_r must be positive for an active channel");
}

double NoiseSpec::gamma_dephasing_sq() const {
  const double scale = alpha * omega_r;
  return dephasing_convention == DephasingRateConvention::kSquared ? scale * scale : scale;
}

CMatrix lindblad_rhs(const CMatrix& rho, const CMatrix& h, const std::vector<LindbladOp>& ops,
                     double tau) {
  CMatrix rhs = -kI * tau * (h * rho - rho * h);
  for (const LindbladOp& l : ops) {
    if (l.rate_sq == 0.0) continue;
    const CMatrix ldl = l.ldl.size() != 0 ? l.ldl : CMatrix(l.op.adjoint() * l.op);
    rhs.noalias() += (tau * l.rate_sq) * (l.op * rho * l.op.adjoint());
    rhs.noalias() -= (0.5 * tau * l.rate_sq) * (ldl * rho + rho * ldl);
  }
  return rhs;
}

std::vector<LindbladOp> channel_ops(const NoiseSpec& spec, const CMatrix& h_basis) {
  spec.validate();
  if (!spec.active()) return {};
  const EigenSystem es = herm_eigen(h_basis);
  for (Eigen::Index n = 0; n + 1 < es.values.size(); ++n)
    if (std::abs(es.values[n + 1] - es.values[n]) <= kBasisGapTol)
      throw std::invalid_argument("channel_ops: basis Hamiltonian has a (near-)degenerate "
                                  "spectrum; use the sector-frame overload");
  const int dim = static_cast<int>(h_basis.rows());
  std::vector<LindbladOp> out;
  append_ops(out, spec, [&](const CMatrix& sigma) {
    const CMatrix emb = embed_qubit_op(sigma, dim, spec.qubit_factor);
    return CMatrix(es.vectors * emb * es.vectors.adjoint());
  });
  return out;
}

std::vector<LindbladOp> channel_ops(const NoiseSpec& spec, const EigenbasisFrame& frame,
                                    double s) {
  spec.validate();
  if (!spec.active()) return {};
  if (frame.projectors.empty() || !frame.sector_vecs)
    throw std::invalid_argument("channel_ops: frame needs projectors and sector eigenvectors");
  std::vector<LindbladOp> out;
  append_ops(out, spec, [&](const CMatrix& sigma) {
    CMatrix acc;
    for (int k = 0; k < static_cast<int>(frame.projectors.size()); ++k) {
      const CMatrix vk = frame.sector_vecs(s, k);
      const CMatrix piece = tensor(frame.projectors[k], CMatrix(vk * sigma * vk.adjoint()));
      acc = (acc.size() == 0) ? piece : CMatrix(acc + piece);
    }
    return acc;
  });
  return out;
}

GeneratorTable sample_generator(const std::function<CMatrix(double)>& h,
                                const std::function<std::vector<LindbladOp>(double)>& ops,
                                int steps) {
  if (steps < 1) throw std::invalid_argument("sample_generator: steps must be >= 1");
  if (!h) throw std::invalid_argument("sample_generator: missing Hamiltonian map");
  GeneratorTable table;
  table.steps = steps;
  const int nodes = 2 * steps + 1;
  table.h.resize(nodes);
  table.ops.resize(nodes);
  for (int j = 0; j < nodes; ++j) {
    const double s = static_cast<double>(j) / (nodes - 1);
    table.h[j] = h(s);
    require_hermitian(table.h[j], "sample_generator: H(s = " + std::to_string(s) + ")", 1e-10);
    if (ops) table.ops[j] = ops(s);
  }
  return table;
}

EvolveResult integrate(const GeneratorTable& table, const CMatrix& rho0, double tau,
                       const IntegratorConfig& cfg) {
  if (tau <= 0.0) throw std::invalid_argument("integrate: tau must be positive");
  if (table.steps < 1 || static_cast<int>(table.h.size()) != 2 * table.steps + 1)
    throw std::invalid_argument("integrate: malformed generator table");
  check_density_state(rho0, cfg);

  EvolveResult res;
  res.rho_final = rho0;
  if (cfg.record_trajectory) res.trajectory.push_back(rho0);

  const double h = 1.0 / table.steps;
  CMatrix k1, k2, k3, k4, mid;
  for (int step = 0; step < table.steps; ++step) {
    const CMatrix& rho = res.rho_final;
    const int b = 2 * step;
    k1 = lindblad_rhs(rho, table.h[b], table.ops[b], tau);
    mid = rho + (0.5 * h) * k1;
    k2 = lindblad_rhs(mid, table.h[b + 1], table.ops[b + 1], tau);
    mid = rho + (0.5 * h) * k2;
    k3 = lindblad_rhs(mid, table.h[b + 1], table.ops[b + 1], tau);
    mid = rho + h * k3;
    k4 = lindblad_rhs(mid, table.h[b + 2], table.ops[b + 2], tau);
    res.rho_final = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double s_now = static_cast<double>(step + 1) / table.steps;
    const double trace_err = std::abs(res.rho_final.trace() - Complex(1.0, 0.0));
    const double herm_err = max_abs(res.rho_final - res.rho_final.adjoint());
    res.max_trace_error = std::max(res.max_trace_error, trace_err);
    res.max_herm_error = std::max(res.max_herm_error, herm_err);
    if (trace_err > cfg.trace_tol)
      throw std::runtime_error("integrate: trace error " + std::to_string(trace_err) +
                               " at step " + std::to_string(step + 1) + " (s = " +
                               std::to_string(s_now) + "); try doubling steps");
    if (herm_err > cfg.herm_tol)
      throw std::runtime_error("integrate: Hermiticity error " + std::to_string(herm_err) +
                               " at step " + std::to_string(step + 1) + " (s = " +
                               std::to_string(s_now) + "); try doubling steps");
    const bool last = step + 1 == table.steps;
    if (cfg.positivity_interval > 0 &&
        ((step + 1) % cfg.positivity_interval == 0 || last)) {
      const double lo = min_eigenvalue(res.rho_final);
      res.min_eigenvalue = std::min(res.min_eigenvalue, lo);
      if (lo < -cfg.positivity_tol)
        throw std::runtime_error("integrate: positivity violation (min eigenvalue " +
                                 std::to_string(lo) + ") at step " + std::to_string(step + 1) +
                                 " (s = " + std::to_string(s_now) + "); try doubling steps");
    }
    if (cfg.record_trajectory) res.trajectory.push_back(res.rho_final);
  }
  return res;
}

EvolveResult evolve(const std::function<CMatrix(double)>& h, const CMatrix& rho0,
                    const NoiseSpec& spec, double tau, const IntegratorConfig& cfg,
                    const std::function<CMatrix(double)>& basis_h) {
  spec.validate();
  std::function<std::vector<LindbladOp>(double)> ops;
  if (spec.active()) {
    const auto basis = basis_h ? basis_h : h;
    ops = [spec, basis](double s) { return channel_ops(spec, basis(s)); };
  }
  return integrate(sample_generator(h, ops, cfg.steps), rho0, tau, cfg);
}

CVector schrodinger_propagate(const std::function<CMatrix(double)>& h, const CVector& psi0,
                              double tau, int steps) {
  if (!h) throw std::invalid_argument("schrodinger_propagate: missing Hamiltonian map");
  if (steps < 1) throw std::invalid_argument("schrodinger_propagate: steps must be >= 1");
  if (tau <= 0.0) throw std::invalid_argument("schrodinger_propagate: tau must be positive");
  const double dt = 1.0 / steps;
  CVector psi = psi0;
  CVector k1, k2, k3, k4;
  for (int step = 0; step < steps; ++step) {
    const double s = step * dt;
    const CMatrix h1 = h(s);
    const CMatrix h2 = h(s + 0.5 * dt);
    const CMatrix h3 = h(s + dt);
    k1 = -kI * tau * (h1 * psi);
    k2 = -kI * tau * (h2 * (psi + 0.5 * dt * k1));
    k3 = -kI * tau * (h2 * (psi + 0.5 * dt * k2));
    k4 = -kI * tau * (h3 * (psi + dt * k3));
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

double fidelity(const CMatrix& rho, const CVector& target) {
  if (rho.rows() != target.size())
    throw std::invalid_argument("fidelity: dimension mismatch");
  const double n2 = target.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("fidelity: zero target state");
  const double p = std::real(target.dot(rho * target)) / n2;
  return std::sqrt(std::clamp(p, 0.0, 1.0));
}

}  // namespace sta

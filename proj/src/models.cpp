#include "sta/models.hpp"

#include <cmath>

namespace sta {

namespace {

constexpr double kBoundaryTol = 1e-10;

void validate_angle(const LZModel& m) {
  if (m.omega <= 0.0) throw std::invalid_argument("LZModel: omega must be positive");
  if (!m.angle || !m.angle_deriv)
    throw std::invalid_argument("LZModel: schedule and its derivative are required");
  if (std::abs(m.angle(0.0)) > kBoundaryTol)
    throw std::invalid_argument("LZModel: vartheta(0) must vanish");
  const int probes = 512;
  for (int j = 0; j <= probes; ++j) {
    const double s = static_cast<double>(j) / probes;
    if (std::abs(m.angle(s)) >= M_PI / 2)
      throw std::invalid_argument("LZModel: |vartheta(s)| must stay below pi/2 (violated at s = " +
                                  std::to_string(s) + ")");
  }
}

}  // namespace

LZModel LZModel::linear(double omega, double theta_final) {
  LZModel m;
  m.omega = omega;
  m.theta_final = theta_final;
  m.angle = [theta_final](double s) { return theta_final * s; };
  m.angle_deriv = [theta_final](double) { return theta_final; };
  m.linear_schedule = true;
  validate_angle(m);
  return m;
}

LZModel LZModel::quadratic(double omega, double theta_final) {
  LZModel m;
  m.omega = omega;
  m.theta_final = theta_final;
  m.angle = [theta_final](double s) { return theta_final * s * s; };
  m.angle_deriv = [theta_final](double s) { return 2.0 * theta_final * s; };
  m.linear_schedule = false;
  validate_angle(m);
  return m;
}

LZModel LZModel::with_schedule(double omega, double theta_final,
                               std::function<double(double)> angle,
                               std::function<double(double)> angle_deriv) {
  LZModel m;
  m.omega = omega;
  m.theta_final = theta_final;
  m.angle = std::move(angle);
  m.angle_deriv = std::move(angle_deriv);
  m.linear_schedule = false;
  validate_angle(m);
  return m;
}

CMatrix LZModel::hamiltonian(double s) const {
  return -omega * (pauli_z() + std::tan(angle(s)) * pauli_x());
}

CVector LZModel::ground_state(double s) const {
  const double half = 0.5 * angle(s);
  CVector v(2);
  v << std::cos(half), std::sin(half);
  return v;
}

CVector LZModel::excited_state(double s) const {
  const double half = 0.5 * angle(s);
  CVector v(2);
  v << -std::sin(half), std::cos(half);
  return v;
}

HamiltonianTrack LZModel::track() const {
  HamiltonianTrack t;
  t.dim = 2;
  t.label = "lz";
  const LZModel m = *this;
  t.generator = [m](double s) { return m.hamiltonian(s); };
  t.analytic_eigen = [m](double s, RVector& vals, CMatrix& vecs, CMatrix& dvecs) {
    const double sec = 1.0 / std::cos(m.angle(s));
    vals.resize(2);
    vals << -m.omega * sec, m.omega * sec;
    vecs.resize(2, 2);
    vecs.col(0) = m.ground_state(s);
    vecs.col(1) = m.excited_state(s);
    dvecs.resize(2, 2);
    const double rate = 0.5 * m.angle_deriv(s);
    dvecs.col(0) = rate * m.excited_state(s);
    dvecs.col(1) = -rate * m.ground_state(s);
  };
  return t;
}

CMatrix LZModel::cd_at(double s, double tau) const {
  if (tau <= 0.0) throw std::invalid_argument("LZModel::cd_at: tau must be positive");
  return (angle_deriv(s) / (2.0 * tau)) * pauli_y();
}

CMatrix LZModel::cd_constant(double tau) const {
  if (!linear_schedule)
    throw std::invalid_argument("LZModel::cd_constant: only a linear schedule yields a "
                                "constant CD operator; use cd_at(s, tau)");
  return cd_at(0.0, tau);
}

GatePreset gate_preset_from_name(const std::string& name) {
  if (name == "hadamard") return GatePreset::kHadamard;
  if (name == "phase") return GatePreset::kPhase;
  if (name == "pi8") return GatePreset::kPi8;
  if (name == "cnot") return GatePreset::kCnot;
  throw std::invalid_argument("unknown gate preset '" + name +
                              "' (expected hadamard, phase, pi8, or cnot)");
}

std::string gate_preset_name(GatePreset p) {
  switch (p) {
    case GatePreset::kHadamard: return "hadamard";
    case GatePreset::kPhase: return "phase";
    case GatePreset::kPi8: return "pi8";
    case GatePreset::kCnot: return "cnot";
  }
  throw std::logic_error("gate_preset_name: unknown preset");
}

GateSpec GateSpec::preset(GatePreset p, double phi0, double omega) {
  GateSpec g;
  g.phi0 = phi0;
  g.omega = omega;
  switch (p) {
    case GatePreset::kHadamard:
      g.epsilon = M_PI / 2;
      g.delta = M_PI / 2;
      g.phi = M_PI / 2;
      break;
    case GatePreset::kPhase:
      g.epsilon = 0.0;
      g.delta = 0.0;
      g.phi = M_PI;
      break;
    case GatePreset::kPi8:
      g.epsilon = 0.0;
      g.delta = 0.0;
      g.phi = M_PI / 4;
      break;
    case GatePreset::kCnot:
      g.epsilon = M_PI / 2;
      g.delta = 0.0;
      g.phi = M_PI;
      g.controlled = true;
      break;
  }
  g.validate();
  return g;
}

void GateSpec::validate() const {
  if (omega <= 0.0) throw std::invalid_argument("GateSpec: omega must be positive");
  if (!(phi0 > 0.0 && phi0 <= M_PI))
    throw std::invalid_argument("GateSpec: phi0 must lie in (0, pi]");
}

CVector GateSpec::axis_plus() const {
  CVector v(2);
  v << std::cos(epsilon / 2), std::exp(kI * delta) * std::sin(epsilon / 2);
  return v;
}

CVector GateSpec::axis_minus() const {
  CVector v(2);
  v << -std::sin(epsilon / 2), std::exp(kI * delta) * std::cos(epsilon / 2);
  return v;
}

std::vector<GateSpec::Sector> GateSpec::sectors() const {
  const CMatrix pp = projector(axis_plus());
  const CMatrix pm = projector(axis_minus());
  if (!controlled) return {{pp, 0.0}, {pm, phi}};
  // Fire the rotated sector only behind control |1>; everything else idles.
  const CMatrix p1m = tensor(projector(CVector(CVector::Unit(2, 1))), pm);
  return {{identity(4) - p1m, 0.0}, {p1m, phi}};
}

CMatrix GateSpec::sector_hamiltonian(double xi, double s) const {
  const double c = std::cos(phi0 * s), n = std::sin(phi0 * s);
  return -omega * (c * pauli_z() + n * (std::cos(xi) * pauli_x() + std::sin(xi) * pauli_y()));
}

HamiltonianTrack GateSpec::sector_track(double xi) const {
  HamiltonianTrack t;
  t.dim = 2;
  t.label = "gate-sector";
  const GateSpec g = *this;
  t.generator = [g, xi](double s) { return g.sector_hamiltonian(xi, s); };
  const double w = omega, p0 = phi0;
  t.analytic_eigen = [w, p0, xi](double s, RVector& vals, CMatrix& vecs, CMatrix& dvecs) {
    const double half = 0.5 * p0 * s;
    const Complex ph = std::exp(kI * xi);
    vals.resize(2);
    vals << -w, w;
    vecs.resize(2, 2);
    vecs(0, 0) = std::cos(half);
    vecs(1, 0) = ph * std::sin(half);
    vecs(0, 1) = -std::sin(half);
    vecs(1, 1) = ph * std::cos(half);
    dvecs.resize(2, 2);
    dvecs.col(0) = (0.5 * p0) * vecs.col(1);
    dvecs.col(1) = (-0.5 * p0) * vecs.col(0);
  };
  return t;
}

CMatrix GateSpec::sector_cd(double xi, double tau) const {
  if (tau <= 0.0) throw std::invalid_argument("GateSpec::sector_cd: tau must be positive");
  return (phi0 / (2.0 * tau)) * (std::cos(xi) * pauli_y() - std::sin(xi) * pauli_x());
}

CMatrix GateSpec::hamiltonian(double s) const {
  CMatrix h = CMatrix::Zero(total_dim(), total_dim());
  for (const Sector& sec : sectors()) h += tensor(sec.projector, sector_hamiltonian(sec.xi, s));
  return h;
}

HamiltonianTrack GateSpec::composite_track() const {
  HamiltonianTrack t;
  t.dim = total_dim();
  t.label = controlled ? "gate-controlled" : "gate-single";
  const GateSpec g = *this;
  t.generator = [g](double s) { return g.hamiltonian(s); };
  return t;
}

CMatrix GateSpec::cd_hamiltonian(double tau) const {
  CMatrix h = CMatrix::Zero(total_dim(), total_dim());
  for (const Sector& sec : sectors()) h += tensor(sec.projector, sector_cd(sec.xi, tau));
  return h;
}

CVector GateSpec::rotated_target(const CVector& input) const {
  if (input.size() != target_dim())
    throw std::invalid_argument("GateSpec::rotated_target: input dimension mismatch");
  CVector out = CVector::Zero(target_dim());
  for (const Sector& sec : sectors()) out += std::exp(kI * sec.xi) * (sec.projector * input);
  return out;
}

CVector GateSpec::evolved_state(double s, const CVector& input) const {
  const double half = 0.5 * phi0 * s;
  CVector aux0 = CVector::Unit(2, 0), aux1 = CVector::Unit(2, 1);
  return std::cos(half) * tensor(input, aux0) +
         std::sin(half) * tensor(rotated_target(input), aux1);
}

CVector preset_input(GatePreset p) {
  CVector zero = CVector::Unit(2, 0);
  CVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  switch (p) {
    case GatePreset::kHadamard: return zero;
    case GatePreset::kPhase:
    case GatePreset::kPi8: return plus;
    case GatePreset::kCnot: return tensor(plus, zero);
  }
  throw std::logic_error("preset_input: unknown preset");
}

ControlledFrame::ControlledFrame(std::vector<CMatrix> projectors_, std::vector<CMatrix> h_final_,
                                 CMatrix h_begin_, std::function<double(double)> f_,
                                 std::function<double(double)> g_)
    : projectors(std::move(projectors_)),
      h_final(std::move(h_final_)),
      h_begin(std::move(h_begin_)),
      f(std::move(f_)),
      g(std::move(g_)) {
  if (projectors.empty() || projectors.size() != h_final.size())
    throw std::invalid_argument("ControlledFrame: need one final Hamiltonian per projector");
  if (!f || !g) throw std::invalid_argument("ControlledFrame: schedules f, g are required");
  if (std::abs(f(0.0) - 1.0) > kBoundaryTol || std::abs(f(1.0)) > kBoundaryTol ||
      std::abs(g(0.0)) > kBoundaryTol || std::abs(g(1.0) - 1.0) > kBoundaryTol)
    throw std::invalid_argument("ControlledFrame: need f(0) = g(1) = 1 and f(1) = g(0) = 0");

  const Eigen::Index dt = projectors.front().rows();
  CMatrix sum = CMatrix::Zero(dt, dt);
  for (size_t k = 0; k < projectors.size(); ++k) {
    const CMatrix& p = projectors[k];
    if (p.rows() != dt || p.cols() != dt)
      throw std::invalid_argument("ControlledFrame: projector dimensions disagree");
    require_hermitian(p, "ControlledFrame projector");
    if (max_abs(p * p - p) > 1e-10)
      throw std::invalid_argument("ControlledFrame: projector " + std::to_string(k) +
                                  " is not idempotent");
    for (size_t l = 0; l < k; ++l)
      if (max_abs(projectors[k] * projectors[l]) > 1e-10)
        throw std::invalid_argument("ControlledFrame: projectors " + std::to_string(l) +
                                    " and " + std::to_string(k) + " are not orthogonal");
    sum += p;
  }
  if (max_abs(sum - identity(static_cast<int>(dt))) > 1e-10)
    throw std::invalid_argument("ControlledFrame: projectors do not resolve the identity");

  require_hermitian(h_begin, "ControlledFrame h_begin");
  for (const CMatrix& h : h_final) {
    require_hermitian(h, "ControlledFrame h_final");
    if (h.rows() != h_begin.rows() || h.cols() != h_begin.cols())
      throw std::invalid_argument("ControlledFrame: sector Hamiltonian dimensions disagree");
  }
}

CMatrix ControlledFrame::hamiltonian(double s) const {
  const Eigen::Index dim = projectors.front().rows() * h_begin.rows();
  CMatrix h = CMatrix::Zero(dim, dim);
  const double fs = f(s), gs = g(s);
  for (size_t k = 0; k < projectors.size(); ++k)
    h += tensor(projectors[k], gs * h_final[k] + fs * h_begin);
  return h;
}

HamiltonianTrack ControlledFrame::track() const {
  HamiltonianTrack t;
  t.dim = static_cast<int>(projectors.front().rows() * h_begin.rows());
  t.label = "controlled-frame";
  const ControlledFrame frame = *this;
  t.generator = [frame](double s) { return frame.hamiltonian(s); };
  return t;
}

}  // namespace sta

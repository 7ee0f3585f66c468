#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sta/shortcut.hpp"
#include "sta/models.hpp"
#include "sta/openquantum.hpp"

#include <cmath>
#include <random>

using namespace sta;

namespace {

constexpr double kTheta0 = M_PI / 3;

EigenTrack lz_analytic(int points = 1001) {
  return build_track(LZModel::linear(1.0, kTheta0).track(), points, Gauge::kAnalytic);
}

EigenTrack lz_numeric(int points = 1001) {
  HamiltonianTrack t = LZModel::linear(1.0, kTheta0).track();
  t.analytic_eigen = nullptr;
  return build_track(t, points, Gauge::kParallelTransport);
}

// A seeded real-symmetric pencil A + s B with well-separated levels.
HamiltonianTrack random_symmetric_track() {
  std::mt19937 rng(3131u);
  std::normal_distribution<double> gauss(0.0, 0.2);
  RMatrix b(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) b(i, j) = b(j, i) = gauss(rng);
  RMatrix a = RMatrix::Zero(3, 3);
  a(0, 0) = 0.0;
  a(1, 1) = 1.3;
  a(2, 2) = 2.9;
  a(0, 1) = a(1, 0) = 0.15;
  HamiltonianTrack t;
  t.dim = 3;
  t.label = "random-symmetric-pencil";
  t.generator = [a, b](double s) { return CMatrix((a + s * b).cast<Complex>()); };
  return t;
}

}  // namespace

TEST_CASE("zero-phase driving on the avoided-crossing track is the closed-form one") {
  const LZModel m = LZModel::linear(1.0, kTheta0);
  const double tau = 0.7;
  const ShortcutResult sr = build_shortcut(lz_analytic(), PhasePolicy::zero(), tau);
  for (double s : {0.0, 0.25, 0.5, 1.0})
    CHECK(max_abs(sr.at(s) - m.cd_at(s, tau)) < 1e-12);
  CHECK(sr.time_independent);
  CHECK(sr.max_hsa_norm == doctest::Approx(kTheta0 / (std::sqrt(2.0) * tau)).epsilon(1e-12));
  for (const CMatrix& h : sr.hsa) CHECK(is_hermitian(h, 1e-10));
}

TEST_CASE("the driving transports the initial eigenstate exactly onto the final one") {
  const LZModel m = LZModel::linear(1.0, kTheta0);
  const double tau = 0.7;
  const CVector psi1 =
      schrodinger_propagate([&](double s) { return m.cd_at(s, tau); },
                            CVector(m.ground_state(0.0)), tau, 400);
  // exp(-i (theta0/2) sigma_y) |0> = (cos(theta0/2), sin(theta0/2)): the final
  // ground state with no extra phase.
  CHECK(std::abs(psi1(0) - Complex(std::cos(kTheta0 / 2), 0.0)) < 1e-10);
  CHECK(std::abs(psi1(1) - Complex(std::sin(kTheta0 / 2), 0.0)) < 1e-10);
  CHECK(std::abs(std::abs(m.ground_state(1.0).dot(psi1)) - 1.0) < 1e-12);
}

TEST_CASE("optimal phases vanish in transport-flat gauges") {
  RMatrix ana = optimal_phases(lz_analytic());
  CHECK(ana.cwiseAbs().maxCoeff() < 1e-12);
  RMatrix num = optimal_phases(lz_numeric());
  CHECK(num.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("shortcut cost matches the closed form and is gauge-sensitive") {
  const EigenTrack track = lz_analytic(2001);
  const RMatrix zero = policy_phases(PhasePolicy::zero(), track, 1.0);
  // Sigma = theta0 / (sqrt(2) tau) for the linear schedule.
  CHECK(shortcut_cost(track, zero, 1.0) ==
        doctest::Approx(0.7404804896930609).epsilon(1e-12));
  CHECK(shortcut_cost(track, zero, 2.5) ==
        doctest::Approx(0.7404804896930609 / 2.5).epsilon(1e-12));

  // A constant nonzero phase costs more: integrand sqrt(2 g + 2 theta^2) with
  // g = (theta0/2)^2.
  const double theta = 0.3;
  const RMatrix shifted = policy_phases(PhasePolicy::constant(theta), track, 1.0);
  const double g = (kTheta0 / 2) * (kTheta0 / 2);
  const double expected = std::sqrt(2.0 * g + 2.0 * theta * theta);
  CHECK(shortcut_cost(track, shifted, 1.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(shortcut_cost(track, shifted, 1.0) > shortcut_cost(track, zero, 1.0));
}

TEST_CASE("zero and optimal phase policies agree after parallel transport") {
  for (const EigenTrack& track :
       {lz_analytic(2001), lz_numeric(2001),
        build_track(random_symmetric_track(), 2001, Gauge::kParallelTransport)}) {
    const double c0 = shortcut_cost(track, policy_phases(PhasePolicy::zero(), track, 1.0), 1.0);
    const double copt =
        shortcut_cost(track, policy_phases(PhasePolicy::optimal(), track, 1.0), 1.0);
    CHECK(std::abs(c0 - copt) < 1e-10 * std::max(1.0, c0));
    CHECK(copt <= c0 + 1e-14);
  }
}

TEST_CASE("random phase perturbations strictly raise the energy cost") {
  CHECK(energy_second_derivative_check(lz_analytic(501), 1.0, 20));
  CHECK(energy_second_derivative_check(lz_numeric(501), 0.8, 20));
  CHECK(energy_second_derivative_check(
      build_track(random_symmetric_track(), 501, Gauge::kParallelTransport), 1.0, 20));
}

TEST_CASE("adiabatic-mimic phases reproduce reference-plus-correction driving") {
  const LZModel m = LZModel::linear(1.0, kTheta0);
  const double tau = 1.7;
  const ShortcutResult sr = build_shortcut(lz_analytic(), PhasePolicy::adiabatic_mimic(), tau);
  for (double s : {0.0, 0.4, 1.0})
    CHECK(max_abs(sr.at(s) - (m.hamiltonian(s) + m.cd_at(s, tau))) < 1e-10);
  CHECK_FALSE(sr.time_independent);  // H0(s) varies along the schedule
}

TEST_CASE("constant phases shift the driving by a multiple of the identity") {
  const double tau = 1.0, theta = 0.4;
  const ShortcutResult sr =
      build_shortcut(lz_analytic(), PhasePolicy::constant(theta), tau);
  const LZModel m = LZModel::linear(1.0, kTheta0);
  CHECK(max_abs(sr.at(0.5) - (m.cd_at(0.5, tau) - (theta / tau) * identity(2))) < 1e-12);
  CHECK(sr.time_independent);
}

TEST_CASE("per-level constants are rejected across coupled levels, allowed across blocks") {
  RVector two(2);
  two << 0.1, 0.2;
  CHECK_THROWS_AS(policy_phases(PhasePolicy::per_level_constant(two), lz_analytic(), 1.0),
                  std::invalid_argument);

  // A diagonal track never couples its levels.
  HamiltonianTrack diag;
  diag.dim = 2;
  diag.label = "diagonal";
  diag.generator = [](double s) { return CMatrix((1.0 + 0.5 * s) * pauli_z()); };
  const EigenTrack dtrack = build_track(diag, 501, Gauge::kParallelTransport);
  const ShortcutResult sr =
      build_shortcut(dtrack, PhasePolicy::per_level_constant(two), 2.0);
  CHECK(sr.time_independent);
  CHECK(sr.max_hsa_norm ==
        doctest::Approx(std::hypot(0.1, 0.2) / 2.0).epsilon(1e-12));

  RMatrix bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(policy_phases(PhasePolicy::custom_table(bad), dtrack, 1.0),
                  std::invalid_argument);
}

TEST_CASE("constancy report distinguishes linear from quadratic schedules") {
  const Theorem2Report lin = check_theorem2(lz_analytic(2001), 1e-8);
  CHECK(lin.passes);
  CHECK(lin.constancy_residual < 1e-8);
  CHECK(max_abs(lin.family_generator - (kTheta0 / 2) * pauli_y()) < 1e-12);
  CHECK(lin.c_mean(1, 0).real() == doctest::Approx(kTheta0 / 2).epsilon(1e-12));

  const Theorem2Report quad = check_theorem2(
      build_track(LZModel::quadratic(1.0, kTheta0).track(), 2001, Gauge::kAnalytic), 1e-8);
  CHECK_FALSE(quad.passes);
  CHECK(quad.constancy_residual > 0.1);

  // theta shifts the family generator by -theta/tau times the identity.
  const Theorem2Report shifted = check_theorem2(lz_analytic(2001), 1e-8, 1.0, 0.4);
  CHECK(max_abs(shifted.family_generator -
                ((kTheta0 / 2) * pauli_y() - 0.4 * identity(2))) < 1e-12);
}

TEST_CASE("gate sector tracks are structurally constant families") {
  const GateSpec g = GateSpec::preset(GatePreset::kHadamard, M_PI, 1.0);
  for (const GateSpec::Sector& sec : g.sectors()) {
    const Theorem2Report rep =
        check_theorem2(build_track(g.sector_track(sec.xi), 2001, Gauge::kAnalytic), 1e-8);
    CHECK(rep.passes);
    CHECK(std::abs(rep.c_mean(1, 0)) == doctest::Approx(M_PI / 2).epsilon(1e-12));
  }
}

#pragma once

// Protocol-comparison scenarios: sweep tau (and the decoherence scale alpha)
// for a model, evolve the adiabatic and transitionless protocols under the
// configured channel, and report fidelities together with the energy-cost
// bookkeeping. In "equal" resource mode the driving frequency omega is chosen
// per tau so both protocols spend the same cost; in "independent" mode omega
// is a user constant and the sigma columns expose where the costs cross.

#include "sta/energetics.hpp"
#include "sta/openquantum.hpp"
#include "sta/shortcut.hpp"

namespace sta {

enum class Protocol { kAdiabatic, kTransitionless };
Protocol protocol_from_name(const std::string& name);
std::string protocol_name(Protocol p);

enum class ResourceMode { kEqual, kIndependent };
ResourceMode resource_mode_from_name(const std::string& name);
std::string resource_mode_name(ResourceMode m);

struct TauRange {
  double min = 0.05;
  double max = 50.0;
  int points = 200;
  bool log_spaced = true;

  std::vector<double> values() const;
};

struct ScenarioConfig {
  std::string model = "lz";  // lz | hadamard | phase | pi8 | cnot
  ChannelKind channel = ChannelKind::kNone;
  ChannelBasis basis = ChannelBasis::kAdiabaticH0;
  DephasingRateConvention dephasing_convention = DephasingRateConvention::kSquared;
  int qubit_factor = -1;
  std::vector<double> alphas{0.0, 0.005, 0.05, 0.1};
  TauRange tau_range;
  ResourceMode resource_mode = ResourceMode::kEqual;
  double omega = 1.0;            // driving frequency in independent mode
  double theta0 = M_PI / 3;      // sweep model: final mixing angle
  double phi0 = 0.0;             // transitionless gate schedule; 0 = optimal_phi0()
  double phi0_adiabatic = M_PI;  // deterministic adiabatic gate schedule
  std::vector<Protocol> protocols{Protocol::kAdiabatic, Protocol::kTransitionless};
  IntegratorConfig integrator;
  bool postselect = true;  // condition gate fidelity on the auxiliary herald
  CVector input_state;     // target-space input; empty = the preset default
  std::string output = "scenario";
  int threads = 1;

  bool is_lz() const { return model == "lz"; }
  double resolved_phi0() const;
  void validate() const;
};

// Strict JSON loader: keys mirror the ScenarioConfig field names; unknown keys
// are rejected.
ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig scenario_from_json_file(const std::string& path);

struct ScenarioRow {
  Protocol protocol = Protocol::kAdiabatic;
  std::string model;
  ChannelKind channel = ChannelKind::kNone;
  ResourceMode resource_mode = ResourceMode::kEqual;
  double tau = 0.0;
  double alpha = 0.0;
  double omega = 0.0;    // driving/bookkeeping frequency at this tau
  double omega_r = 0.0;  // scenario-wide reference frequency
  double fidelity = 0.0;
  double sigma_ad = 0.0;
  double sigma_sa = 0.0;  // repetition-weighted transitionless cost
  double ratio = 0.0;     // sigma_ad / sigma_sa
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<ScenarioRow> rows;  // sorted by (protocol, alpha, tau)
  double omega_r = 0.0;
  double max_trace_error = 0.0;
  double max_herm_error = 0.0;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

inline constexpr const char* kCsvHeader =
    "protocol,model,channel,resource_mode,tau,alpha,omega,omega_r,fidelity,"
    "sigma_ad,sigma_sa,ratio";

std::string csv_text(const ScenarioResult& result);
void write_csv(const ScenarioResult& result, const std::string& path);

// gnuplot script plotting fidelity vs tau from the CSV: one curve per
// (protocol, alpha), adiabatic solid and transitionless dashed, plus the
// cost-boundary marker in independent mode.
std::string plot_script_text(const ScenarioResult& result, const std::string& csv_name);
void write_plot_script(const ScenarioResult& result, const std::string& path,
                       const std::string& csv_name);

}  // namespace sta

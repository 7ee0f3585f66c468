// Command-line front end: scenario sweeps, cost reports, structural
// time-independence checks, and the optimal gate-schedule amplitude.

#include <CLI11.hpp>

#include "sta/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace sta;

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("expected a comma-separated number list");
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw std::invalid_argument("expected a comma-separated name list");
  return out;
}

// Shared scenario flags; every option mirrors a ScenarioConfig field and
// overrides the JSON config when present.
struct ScenarioFlags {
  std::string config_path, model, channel, basis, dephasing_convention, resource_mode;
  std::string alphas, protocols, output;
  double tau_min = 0.0, tau_max = 0.0, omega = 0.0, theta0 = 0.0, phi0 = -1.0,
         phi0_adiabatic = 0.0;
  int tau_points = 0, steps = 0, threads = 0, positivity_interval = -1;
  bool linear_tau = false, no_postselect = false;
  bool has_model_channel = false;

  void attach(CLI::App* cmd, bool with_model_channel) {
    has_model_channel = with_model_channel;
    cmd->add_option("--config", config_path, "JSON config file (flags override its fields)");
    if (with_model_channel) {
      cmd->add_option("--model", model, "lz | hadamard | phase | pi8 | cnot");
      cmd->add_option("--channel", channel, "none | gad | dephasing");
    }
    cmd->add_option("--basis", basis, "channel basis: adiabatic_h0 | driving_hamiltonian");
    cmd->add_option("--dephasing-convention", dephasing_convention,
                    "dephasing rate: squared | linear");
    cmd->add_option("--alphas", alphas, "comma-separated decoherence scales in [0, 0.1]");
    cmd->add_option("--tau-min", tau_min, "smallest tau");
    cmd->add_option("--tau-max", tau_max, "largest tau");
    cmd->add_option("--tau-points", tau_points, "tau grid size");
    cmd->add_flag("--linear-tau", linear_tau, "linearly spaced tau grid (default: log)");
    cmd->add_option("--resource", resource_mode, "equal | independent");
    cmd->add_option("--omega", omega, "driving frequency (independent mode)");
    cmd->add_option("--theta0", theta0, "sweep model: final mixing angle (rad)");
    cmd->add_option("--phi0", phi0, "transitionless gate schedule amplitude (rad); 0 = optimal");
    cmd->add_option("--phi0-adiabatic", phi0_adiabatic,
                    "adiabatic gate schedule amplitude (rad)");
    cmd->add_option("--protocols", protocols, "comma-separated: adiabatic,transitionless");
    cmd->add_option("--steps", steps, "RK4 steps per evolution");
    cmd->add_option("--positivity-interval", positivity_interval,
                    "steps between positivity checks (0 disables)");
    cmd->add_flag("--no-postselect", no_postselect,
                  "report unconditioned gate fidelities instead of heralded ones");
    cmd->add_option("--output", output, "output path stem");
    cmd->add_option("--threads", threads, "worker threads for the sweep");
  }

  ScenarioConfig build(const CLI::App* cmd) const {
    ScenarioConfig cfg;
    if (cmd->count("--config")) cfg = scenario_from_json_file(config_path);
    if (has_model_channel && cmd->count("--model")) cfg.model = model;
    if (has_model_channel && cmd->count("--channel"))
      cfg.channel = channel_kind_from_name(channel);
    if (cmd->count("--basis")) cfg.basis = channel_basis_from_name(basis);
    if (cmd->count("--dephasing-convention"))
      cfg.dephasing_convention = dephasing_convention_from_name(dephasing_convention);
    if (cmd->count("--alphas")) cfg.alphas = parse_double_list(alphas);
    if (cmd->count("--tau-min")) cfg.tau_range.min = tau_min;
    if (cmd->count("--tau-max")) cfg.tau_range.max = tau_max;
    if (cmd->count("--tau-points")) cfg.tau_range.points = tau_points;
    if (cmd->count("--linear-tau")) cfg.tau_range.log_spaced = false;
    if (cmd->count("--resource")) cfg.resource_mode = resource_mode_from_name(resource_mode);
    if (cmd->count("--omega")) cfg.omega = omega;
    if (cmd->count("--theta0")) cfg.theta0 = theta0;
    if (cmd->count("--phi0")) cfg.phi0 = phi0;
    if (cmd->count("--phi0-adiabatic")) cfg.phi0_adiabatic = phi0_adiabatic;
    if (cmd->count("--protocols")) {
      cfg.protocols.clear();
      for (const std::string& name : parse_name_list(protocols))
        cfg.protocols.push_back(protocol_from_name(name));
    }
    if (cmd->count("--steps")) cfg.integrator.steps = steps;
    if (cmd->count("--positivity-interval"))
      cfg.integrator.positivity_interval = positivity_interval;
    if (cmd->count("--no-postselect")) cfg.postselect = false;
    if (cmd->count("--output")) cfg.output = output;
    if (cmd->count("--threads")) cfg.threads = threads;
    return cfg;
  }
};

int emit_scenario(const ScenarioConfig& cfg) {
  const ScenarioResult result = run_scenario(cfg);
  const std::string csv_path = cfg.output + ".csv";
  const std::string gp_path = cfg.output + ".gp";
  write_csv(result, csv_path);
  // Reference the CSV by basename so the script works from its own directory.
  const size_t cut = csv_path.find_last_of('/');
  const std::string csv_name = cut == std::string::npos ? csv_path : csv_path.substr(cut + 1);
  write_plot_script(result, gp_path, csv_name);
  std::printf("model=%s channel=%s resource=%s rows=%zu omega_r=%.12g\n", cfg.model.c_str(),
              channel_kind_name(cfg.channel).c_str(),
              resource_mode_name(cfg.resource_mode).c_str(), result.rows.size(),
              result.omega_r);
  std::printf("monitors: max trace error %.3e, max hermiticity error %.3e\n",
              result.max_trace_error, result.max_herm_error);
  std::printf("wrote %s\nwrote %s\n", csv_path.c_str(), gp_path.c_str());
  return 0;
}

void print_theorem2(const std::string& label, const Theorem2Report& rep) {
  std::printf("%s\n", label.c_str());
  std::printf("  constancy residual = %.6e -> %s\n", rep.constancy_residual,
              rep.passes ? "PASS (structurally time-independent)" : "FAIL");
  std::printf("  max ||dH_SA/ds|| = %.6e, max ||H_SA|| = %.6e\n", rep.max_dhsa_norm,
              rep.max_hsa_norm);
  std::printf("  mean overlap matrix <k|m'>:\n");
  for (Eigen::Index r = 0; r < rep.c_mean.rows(); ++r) {
    std::printf("   ");
    for (Eigen::Index c = 0; c < rep.c_mean.cols(); ++c)
      std::printf(" (%+.6f%+.6fi)", rep.c_mean(r, c).real(), rep.c_mean(r, c).imag());
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transitionless-driving simulator: eigenstate tracks, counter-diabatic "
               "drivings, energy costs, and decoherence scenarios"};
  app.require_subcommand(1);
  std::function<int()> action;

  // ---- run ----
  auto* run_cmd = app.add_subcommand("run", "sweep tau/alpha and write CSV + gnuplot script");
  auto run_flags = std::make_shared<ScenarioFlags>();
  run_flags->attach(run_cmd, true);
  run_cmd->callback([run_cmd, run_flags, &action]() {
    action = [run_cmd, run_flags]() { return emit_scenario(run_flags->build(run_cmd)); };
  });

  // ---- sweep ----
  auto* sweep_cmd =
      app.add_subcommand("sweep", "run several model x channel combinations into a directory");
  auto sweep_flags = std::make_shared<ScenarioFlags>();
  auto sweep_models = std::make_shared<std::string>("lz,hadamard,cnot");
  auto sweep_channels = std::make_shared<std::string>("dephasing,gad");
  sweep_cmd->add_option("--models", *sweep_models, "comma-separated model list");
  sweep_cmd->add_option("--channels", *sweep_channels, "comma-separated channel list");
  sweep_flags->attach(sweep_cmd, false);
  sweep_cmd->callback([sweep_cmd, sweep_flags, sweep_models, sweep_channels, &action]() {
    action = [sweep_cmd, sweep_flags, sweep_models, sweep_channels]() {
      const ScenarioConfig base = sweep_flags->build(sweep_cmd);
      const std::string stem = base.output == "scenario" ? "sweep" : base.output;
      int rc = 0;
      for (const std::string& model : parse_name_list(*sweep_models)) {
        for (const std::string& channel : parse_name_list(*sweep_channels)) {
          ScenarioConfig cfg = base;
          cfg.model = model;
          cfg.channel = channel_kind_from_name(channel);
          cfg.output = stem + "_" + model + "_" + channel;
          rc |= emit_scenario(cfg);
        }
      }
      return rc;
    };
  });

  // ---- cost ----
  auto* cost_cmd = app.add_subcommand("cost", "energy-cost report for one model at one tau");
  auto cost_model = std::make_shared<std::string>("lz");
  auto cost_tau = std::make_shared<double>(1.0);
  auto cost_omega = std::make_shared<double>(1.0);
  auto cost_theta0 = std::make_shared<double>(M_PI / 3);
  auto cost_phi0 = std::make_shared<double>(0.0);
  cost_cmd->add_option("--model", *cost_model, "lz | hadamard | phase | pi8 | cnot");
  cost_cmd->add_option("--tau", *cost_tau, "protocol duration");
  cost_cmd->add_option("--omega", *cost_omega, "driving frequency");
  cost_cmd->add_option("--theta0", *cost_theta0, "sweep final mixing angle (rad)");
  cost_cmd->add_option("--phi0", *cost_phi0, "gate schedule amplitude (rad); 0 = optimal");
  cost_cmd->callback([=, &action]() {
    action = [=]() {
      if (*cost_model == "lz") {
        const LZModel m = LZModel::linear(*cost_omega, *cost_theta0);
        const EnergyCostReport r = lz_costs(m, *cost_tau);
        std::printf("model=lz tau=%.12g omega=%.12g theta0=%.12g\n", r.tau, r.omega,
                    *cost_theta0);
        std::printf("sigma_ad = %.12g\nsigma_sa = %.12g\nratio = %.12g\n", r.sigma_ad,
                    r.sigma_sa, r.ratio);
        std::printf("equal-resource omega at this tau = %.12g\n",
                    equal_resource_omega(m, *cost_tau));
      } else {
        const double p0 = *cost_phi0 > 0.0 ? *cost_phi0 : optimal_phi0();
        const GateSpec g = GateSpec::preset(gate_preset_from_name(*cost_model), p0, *cost_omega);
        const GateCostReport r = gate_costs(g, *cost_tau);
        std::printf("model=%s tau=%.12g omega=%.12g phi0=%.12g (%.6g pi)\n",
                    cost_model->c_str(), r.tau, r.omega, r.phi0, r.phi0 / M_PI);
        std::printf("n_avg = %.12g\nsigma_ad = %.12g\nsigma_sa (single run) = %.12g\n",
                    r.n_avg, r.sigma_ad, r.sigma_sa);
        std::printf("sigma_sa (repetition-weighted) = %.12g\n", r.sigma_sa_avg);
        std::printf("sigma_sa (direct operator norm) = %.12g\nratio = %.12g\n",
                    r.sigma_sa_direct, r.ratio);
        std::printf("equal-resource omega at this tau = %.12g (omega*tau = %.12g)\n",
                    equal_resource_omega(g, *cost_tau), equal_resource_omega(g, *cost_tau) * *cost_tau);
      }
      return 0;
    };
  });

  // ---- check-theorem2 ----
  auto* thm_cmd = app.add_subcommand(
      "check-theorem2", "test whether constant-phase drivings are time-independent operators");
  auto thm_model = std::make_shared<std::string>("lz");
  auto thm_schedule = std::make_shared<std::string>("linear");
  auto thm_gauge = std::make_shared<std::string>("analytic");
  auto thm_points = std::make_shared<int>(2001);
  auto thm_tol = std::make_shared<double>(1e-8);
  auto thm_theta0 = std::make_shared<double>(M_PI / 3);
  auto thm_phi0 = std::make_shared<double>(0.0);
  thm_cmd->add_option("--model", *thm_model, "lz | hadamard | phase | pi8 | cnot");
  thm_cmd->add_option("--schedule", *thm_schedule, "lz schedule: linear | quadratic");
  thm_cmd->add_option("--gauge", *thm_gauge, "track gauge: analytic | numeric");
  thm_cmd->add_option("--grid-points", *thm_points, "track grid size");
  thm_cmd->add_option("--tolerance", *thm_tol, "constancy residual tolerance");
  thm_cmd->add_option("--theta0", *thm_theta0, "sweep final mixing angle (rad)");
  thm_cmd->add_option("--phi0", *thm_phi0, "gate schedule amplitude (rad); 0 = optimal");
  thm_cmd->callback([=, &action]() {
    action = [=]() {
      const Gauge gauge =
          *thm_gauge == "numeric" ? Gauge::kParallelTransport : Gauge::kAnalytic;
      int failures = 0;
      if (*thm_model == "lz") {
        const LZModel m = *thm_schedule == "quadratic" ? LZModel::quadratic(1.0, *thm_theta0)
                                                       : LZModel::linear(1.0, *thm_theta0);
        const Theorem2Report rep =
            check_theorem2(build_track(m.track(), *thm_points, gauge), *thm_tol);
        print_theorem2("lz (" + *thm_schedule + " schedule)", rep);
        failures += rep.passes ? 0 : 1;
      } else {
        const double p0 = *thm_phi0 > 0.0 ? *thm_phi0 : optimal_phi0();
        const GateSpec g = GateSpec::preset(gate_preset_from_name(*thm_model), p0, 1.0);
        for (const GateSpec::Sector& sec : g.sectors()) {
          const Theorem2Report rep = check_theorem2(
              build_track(g.sector_track(sec.xi), *thm_points, gauge), *thm_tol);
          print_theorem2(*thm_model + " sector (xi = " + std::to_string(sec.xi) + ")", rep);
          failures += rep.passes ? 0 : 1;
        }
      }
      return failures == 0 ? 0 : 2;
    };
  });

  // ---- phi0-opt ----
  auto* opt_cmd =
      app.add_subcommand("phi0-opt", "optimal gate schedule amplitude and its bookkeeping");
  opt_cmd->callback([&action]() {
    action = []() {
      const double p0 = optimal_phi0();
      const double hs = std::sin(0.5 * p0);
      std::printf("phi0 = %.12g rad = %.6f pi\n", p0, p0 / M_PI);
      std::printf("n_avg = %.12g\n", 1.0 / (hs * hs));
      std::printf("equal-resource omega*tau = %.12g\n", p0 / (hs * hs));
      return 0;
    };
  });

  CLI11_PARSE(app, argc, argv);
  try {
    return action ? action() : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

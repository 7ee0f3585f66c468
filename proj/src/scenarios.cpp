#include "sta/scenarios.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace sta {

namespace {

using nlohmann::json;

std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

CMatrix lz_basis_vecs(double angle) {
  CMatrix v(2, 2);
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  v(0, 0) = c;
  v(1, 0) = s;
  v(0, 1) = -s;
  v(1, 1) = c;
  return v;
}

CMatrix gate_basis_vecs(double phi0, double xi, double s) {
  CMatrix v(2, 2);
  const double half = 0.5 * phi0 * s;
  const Complex ph = std::exp(kI * xi);
  v(0, 0) = std::cos(half);
  v(1, 0) = ph * std::sin(half);
  v(0, 1) = -std::sin(half);
  v(1, 1) = ph * std::cos(half);
  return v;
}

// Eigencolumns of the constant sector CD operator c (cos xi sigma_y - sin xi
// sigma_x), c > 0: ground (1, -i e^{i xi})/sqrt2, excited (1, i e^{i xi})/sqrt2.
CMatrix cd_basis_vecs(double xi) {
  CMatrix v(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex ph = std::exp(kI * xi);
  v(0, 0) = r;
  v(1, 0) = -kI * ph * r;
  v(0, 1) = r;
  v(1, 1) = kI * ph * r;
  return v;
}

struct RowWork {
  Protocol protocol;
  double alpha;
  double tau;
  size_t slot;
};

// Runs `work` items through `compute` on `threads` workers, each writing its
// own row slot; the first exception wins and is rethrown after join.
void run_rows(const std::vector<RowWork>& work,
              const std::function<void(const RowWork&)>& compute, int threads) {
  if (threads <= 1 || work.size() < 2) {
    for (const RowWork& w : work) compute(w);
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= work.size()) return;
      try {
        compute(work[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(threads, static_cast<int>(work.size()));
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

Protocol protocol_from_name(const std::string& name) {
  if (name == "adiabatic") return Protocol::kAdiabatic;
  if (name == "transitionless") return Protocol::kTransitionless;
  throw std::invalid_argument("unknown protocol '" + name +
                              "' (expected adiabatic or transitionless)");
}

std::string protocol_name(Protocol p) {
  return p == Protocol::kAdiabatic ? "adiabatic" : "transitionless";
}

ResourceMode resource_mode_from_name(const std::string& name) {
  if (name == "equal") return ResourceMode::kEqual;
  if (name == "independent") return ResourceMode::kIndependent;
  throw std::invalid_argument("unknown resource mode '" + name +
                              "' (expected equal or independent)");
}

std::string resource_mode_name(ResourceMode m) {
  return m == ResourceMode::kEqual ? "equal" : "independent";
}

std::vector<double> TauRange::values() const {
  if (points < 1) throw std::invalid_argument("TauRange: points must be >= 1");
  if (min <= 0.0 || max < min) throw std::invalid_argument("TauRange: need 0 < min <= max");
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = min;
    return out;
  }
  for (int k = 0; k < points; ++k) {
    const double u = static_cast<double>(k) / (points - 1);
    out[k] = log_spaced ? min * std::pow(max / min, u) : min + (max - min) * u;
  }
  return out;
}

double ScenarioConfig::resolved_phi0() const { return phi0 > 0.0 ? phi0 : optimal_phi0(); }

void ScenarioConfig::validate() const {
  if (!is_lz()) gate_preset_from_name(model);  // throws for unknown names
  tau_range.values();
  if (alphas.empty()) throw std::invalid_argument("ScenarioConfig: alphas must be non-empty");
  for (double a : alphas)
    if (a < 0.0 || a > 0.1)
      throw std::invalid_argument("ScenarioConfig: every alpha must lie in [0, 0.1]");
  if (omega <= 0.0) throw std::invalid_argument("ScenarioConfig: omega must be positive");
  if (!(theta0 > 0.0 && theta0 < M_PI / 2))
    throw std::invalid_argument("ScenarioConfig: theta0 must lie in (0, pi/2)");
  if (phi0 < 0.0 || phi0 > M_PI)
    throw std::invalid_argument("ScenarioConfig: phi0 must lie in (0, pi] (or 0 for optimal)");
  if (!(phi0_adiabatic > 0.0 && phi0_adiabatic <= M_PI))
    throw std::invalid_argument("ScenarioConfig: phi0_adiabatic must lie in (0, pi]");
  if (protocols.empty())
    throw std::invalid_argument("ScenarioConfig: protocols must be non-empty");
  if (integrator.steps < 1)
    throw std::invalid_argument("ScenarioConfig: integrator.steps must be >= 1");
  if (threads < 1) throw std::invalid_argument("ScenarioConfig: threads must be >= 1");
  if (input_state.size() != 0) {
    const int want = is_lz() ? 2 : GateSpec::preset(gate_preset_from_name(model)).target_dim();
    if (static_cast<int>(input_state.size()) != want)
      throw std::invalid_argument("ScenarioConfig: input_state must have dimension " +
                                  std::to_string(want));
    if (input_state.norm() <= 0.0)
      throw std::invalid_argument("ScenarioConfig: input_state must be non-zero");
  }
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  ScenarioResult result;
  result.config = cfg;

  const std::vector<double> taus = cfg.tau_range.values();

  std::function<double(double)> omega_of_tau;
  if (cfg.is_lz()) {
    const LZModel shape = LZModel::linear(1.0, cfg.theta0);
    const double sec_integral = lz_sec_integral(shape);
    omega_of_tau = cfg.resource_mode == ResourceMode::kEqual
                       ? std::function<double(double)>([th = cfg.theta0, sec_integral](double tau) {
                           return th / (2.0 * sec_integral * tau);
                         })
                       : std::function<double(double)>([w = cfg.omega](double) { return w; });
  } else {
    const double p0 = cfg.resolved_phi0();
    omega_of_tau = cfg.resource_mode == ResourceMode::kEqual
                       ? std::function<double(double)>([p0](double tau) {
                           const double hs = std::sin(0.5 * p0);
                           return p0 / (hs * hs * tau);
                         })
                       : std::function<double(double)>([w = cfg.omega](double) { return w; });
  }
  result.omega_r = cfg.resource_mode == ResourceMode::kEqual
                       ? omega_r_average(taus, omega_of_tau)
                       : cfg.omega;

  std::vector<RowWork> work;
  work.reserve(cfg.protocols.size() * cfg.alphas.size() * taus.size());
  result.rows.resize(cfg.protocols.size() * cfg.alphas.size() * taus.size());
  {
    std::vector<double> alphas_sorted = cfg.alphas;
    std::sort(alphas_sorted.begin(), alphas_sorted.end());
    std::vector<Protocol> protos = cfg.protocols;
    std::sort(protos.begin(), protos.end(), [](Protocol a, Protocol b) {
      return protocol_name(a) < protocol_name(b);
    });
    size_t slot = 0;
    for (Protocol p : protos)
      for (double a : alphas_sorted)
        for (double tau : taus) work.push_back({p, a, tau, slot++});
  }

  std::mutex monitor_mu;
  auto absorb_monitors = [&](const EvolveResult& ev) {
    std::lock_guard<std::mutex> lock(monitor_mu);
    result.max_trace_error = std::max(result.max_trace_error, ev.max_trace_error);
    result.max_herm_error = std::max(result.max_herm_error, ev.max_herm_error);
  };

  std::function<void(const RowWork&)> compute;

  if (cfg.is_lz()) {
    const double th = cfg.theta0;
    const CVector target = LZModel::linear(1.0, th).ground_state(1.0);
    const CMatrix rho0 = projector(CVector(CVector::Unit(2, 0)));
    const double sec_integral = lz_sec_integral(LZModel::linear(1.0, th));
    const EigenbasisFrame h0_frame{
        {CMatrix::Ones(1, 1)},
        [th](double s, int) { return lz_basis_vecs(th * s); }};
    const EigenbasisFrame cd_frame{
        {CMatrix::Ones(1, 1)}, [](double, int) { return cd_basis_vecs(0.0); }};

    compute = [&, th, target, rho0, sec_integral, h0_frame, cd_frame](const RowWork& w) {
      const double omega = omega_of_tau(w.tau);
      NoiseSpec spec;
      spec.kind = cfg.channel;
      spec.alpha = w.alpha;
      spec.omega_r = result.omega_r;
      spec.basis = cfg.basis;
      spec.dephasing_convention = cfg.dephasing_convention;
      spec.qubit_factor = cfg.qubit_factor;

      std::function<CMatrix(double)> hmap;
      const EigenbasisFrame* frame = &h0_frame;
      if (w.protocol == Protocol::kAdiabatic) {
        hmap = [omega, th](double s) {
          return CMatrix(-omega * (pauli_z() + std::tan(th * s) * pauli_x()));
        };
      } else {
        const CMatrix hcd = (th / (2.0 * w.tau)) * pauli_y();
        hmap = [hcd](double) { return hcd; };
        if (spec.basis == ChannelBasis::kDrivingHamiltonian) frame = &cd_frame;
      }
      std::function<std::vector<LindbladOp>(double)> ops;
      if (spec.active())
        ops = [spec, frame](double s) { return channel_ops(spec, *frame, s); };

      const EvolveResult ev =
          integrate(sample_generator(hmap, ops, cfg.integrator.steps), rho0, w.tau,
                    cfg.integrator);
      absorb_monitors(ev);

      ScenarioRow row;
      row.protocol = w.protocol;
      row.model = cfg.model;
      row.channel = cfg.channel;
      row.resource_mode = cfg.resource_mode;
      row.tau = w.tau;
      row.alpha = w.alpha;
      row.omega = omega;
      row.omega_r = result.omega_r;
      row.fidelity = fidelity(ev.rho_final, target);
      row.sigma_ad = std::sqrt(2.0) * omega * sec_integral;
      row.sigma_sa = th / (std::sqrt(2.0) * w.tau);
      row.ratio = row.sigma_ad / row.sigma_sa;
      result.rows[w.slot] = row;
    };
  } else {
    const GatePreset preset = gate_preset_from_name(cfg.model);
    const double p0_cd = cfg.resolved_phi0();
    const GateSpec cd_spec = GateSpec::preset(preset, p0_cd, 1.0);
    const CVector input =
        cfg.input_state.size() != 0 ? cfg.input_state : preset_input(preset);
    const CVector rotated = cd_spec.rotated_target(input);
    const CMatrix rho0 = projector(tensor(input, CVector(CVector::Unit(2, 0))));
    const int dt = cd_spec.target_dim();

    // Target-side projectors and sector phases are shared by every phi0.
    std::vector<CMatrix> projs;
    std::vector<double> xis;
    for (const GateSpec::Sector& sec : cd_spec.sectors()) {
      projs.push_back(sec.projector);
      xis.push_back(sec.xi);
    }

    compute = [&, preset, p0_cd, cd_spec, input, rotated, rho0, dt, projs,
               xis](const RowWork& w) {
      const double omega = omega_of_tau(w.tau);
      NoiseSpec spec;
      spec.kind = cfg.channel;
      spec.alpha = w.alpha;
      spec.omega_r = result.omega_r;
      spec.basis = cfg.basis;
      spec.dephasing_convention = cfg.dephasing_convention;
      spec.qubit_factor = cfg.qubit_factor;

      std::function<CMatrix(double)> hmap;
      EigenbasisFrame frame;
      frame.projectors = projs;
      if (w.protocol == Protocol::kAdiabatic) {
        const GateSpec g = GateSpec::preset(preset, cfg.phi0_adiabatic, omega);
        hmap = [g, projs, xis](double s) {
          CMatrix h = CMatrix::Zero(g.total_dim(), g.total_dim());
          for (size_t k = 0; k < projs.size(); ++k)
            h += tensor(projs[k], g.sector_hamiltonian(xis[k], s));
          return h;
        };
        frame.sector_vecs = [p0 = cfg.phi0_adiabatic, xis](double s, int k) {
          return gate_basis_vecs(p0, xis[k], s);
        };
      } else {
        const CMatrix hcd = cd_spec.cd_hamiltonian(w.tau);
        hmap = [hcd](double) { return hcd; };
        if (spec.basis == ChannelBasis::kDrivingHamiltonian) {
          frame.sector_vecs = [xis](double, int k) { return cd_basis_vecs(xis[k]); };
        } else {
          frame.sector_vecs = [p0_cd, xis](double s, int k) {
            return gate_basis_vecs(p0_cd, xis[k], s);
          };
        }
      }
      std::function<std::vector<LindbladOp>(double)> ops;
      if (spec.active())
        ops = [spec, frame](double s) { return channel_ops(spec, frame, s); };

      const EvolveResult ev =
          integrate(sample_generator(hmap, ops, cfg.integrator.steps), rho0, w.tau,
                    cfg.integrator);
      absorb_monitors(ev);

      // Read the gate off the auxiliary herald |1>.
      double fid = 0.0;
      if (cfg.postselect) {
        const CMatrix p1 = tensor(identity(dt), projector(CVector(CVector::Unit(2, 1))));
        const CMatrix cond = p1 * ev.rho_final * p1;
        const double prob = std::real(cond.trace());
        if (prob >= 1e-12)
          fid = fidelity(CMatrix(partial_trace(cond, 0, {dt, 2}) / prob), rotated);
      } else {
        fid = fidelity(partial_trace(ev.rho_final, 0, {dt, 2}), rotated);
      }

      const GateCostReport costs = gate_costs(GateSpec::preset(preset, p0_cd, omega), w.tau);
      ScenarioRow row;
      row.protocol = w.protocol;
      row.model = cfg.model;
      row.channel = cfg.channel;
      row.resource_mode = cfg.resource_mode;
      row.tau = w.tau;
      row.alpha = w.alpha;
      row.omega = omega;
      row.omega_r = result.omega_r;
      row.fidelity = fid;
      row.sigma_ad = costs.sigma_ad;
      row.sigma_sa = costs.sigma_sa_avg;
      row.ratio = costs.ratio;
      result.rows[w.slot] = row;
    };
  }

  run_rows(work, compute, cfg.threads);
  return result;
}

std::string csv_text(const ScenarioResult& result) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const ScenarioRow& r : result.rows) {
    out << protocol_name(r.protocol) << ',' << r.model << ','
        << channel_kind_name(r.channel) << ',' << resource_mode_name(r.resource_mode) << ','
        << fmt_num(r.tau) << ',' << fmt_num(r.alpha) << ',' << fmt_num(r.omega) << ','
        << fmt_num(r.omega_r) << ',' << fmt_num(r.fidelity) << ',' << fmt_num(r.sigma_ad)
        << ',' << fmt_num(r.sigma_sa) << ',' << fmt_num(r.ratio) << "\n";
  }
  return out.str();
}

void write_csv(const ScenarioResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << csv_text(result);
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

std::string plot_script_text(const ScenarioResult& result, const std::string& csv_name) {
  const ScenarioConfig& cfg = result.config;
  std::string stem = csv_name;
  if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
    stem = stem.substr(0, stem.size() - 4);

  std::vector<double> alphas = cfg.alphas;
  std::sort(alphas.begin(), alphas.end());
  std::vector<Protocol> protos = cfg.protocols;
  std::sort(protos.begin(), protos.end(),
            [](Protocol a, Protocol b) { return protocol_name(a) < protocol_name(b); });

  static const char* kPalette[] = {"#1b6ca8", "#d1495b", "#2e7d32",
                                   "#8e5bb5", "#c98c1f", "#3d3d3d"};
  constexpr int kPaletteSize = 6;

  std::ostringstream out;
  out << "# fidelity vs tau for " << cfg.model << " (" << channel_kind_name(cfg.channel)
      << " channel, " << resource_mode_name(cfg.resource_mode) << " resources)\n"
      << "# usage: gnuplot " << stem << ".gp\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 960,640\n"
      << "set output '" << stem << ".png'\n"
      << "set xlabel 'tau'\n"
      << "set ylabel 'fidelity'\n";
  if (cfg.tau_range.log_spaced) out << "set logscale x\n";
  out << "set yrange [*:1.02]\n"
      << "set key bottom left\n";

  // Cost-crossing marker: in independent mode sigma_ad and sigma_sa cross at
  // one tau; mark it when the sweep brackets it.
  if (cfg.resource_mode == ResourceMode::kIndependent && !result.rows.empty()) {
    double boundary = 0.0;
    bool found = false;
    std::vector<const ScenarioRow*> series;
    for (const ScenarioRow& r : result.rows)
      if (r.protocol == result.rows.front().protocol &&
          r.alpha == result.rows.front().alpha)
        series.push_back(&r);
    for (size_t i = 0; i + 1 < series.size() && !found; ++i) {
      const double a = series[i]->sigma_ad - series[i]->sigma_sa;
      const double b = series[i + 1]->sigma_ad - series[i + 1]->sigma_sa;
      if (a == 0.0 || (a < 0.0) != (b < 0.0)) {
        const double t = (b - a) != 0.0 ? -a / (b - a) : 0.0;
        boundary = series[i]->tau + t * (series[i + 1]->tau - series[i]->tau);
        found = true;
      }
    }
    if (found)
      out << "set arrow from " << fmt_num(boundary) << ",graph 0 to " << fmt_num(boundary)
          << ",graph 1 nohead dashtype 3 lc rgb '#666666'\n";
  }

  out << "plot \\\n";
  bool first = true;
  for (size_t ai = 0; ai < alphas.size(); ++ai) {
    for (Protocol p : protos) {
      if (!first) out << ", \\\n";
      first = false;
      const char* color = kPalette[ai % kPaletteSize];
      const int dash = p == Protocol::kAdiabatic ? 1 : 2;
      out << "  '" << csv_name << "' using 5:(((strcol(1) eq '" << protocol_name(p)
          << "') && (abs($6 - " << fmt_num(alphas[ai]) << ") <= 1e-12)) ? $9 : NaN)"
          << " with lines lw 2 dashtype " << dash << " lc rgb '" << color << "' title '"
          << protocol_name(p) << " alpha=" << fmt_num(alphas[ai]) << "'";
    }
  }
  out << "\n";
  return out.str();
}

void write_plot_script(const ScenarioResult& result, const std::string& path,
                       const std::string& csv_name) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_plot_script: cannot open " + path);
  out << plot_script_text(result, csv_name);
  if (!out) throw std::runtime_error("write_plot_script: write failed for " + path);
}

namespace {

void parse_tau_range(const json& j, TauRange& out) {
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (key == "min") out.min = item.value().get<double>();
    else if (key == "max") out.max = item.value().get<double>();
    else if (key == "points") out.points = item.value().get<int>();
    else if (key == "log_spaced") out.log_spaced = item.value().get<bool>();
    else throw std::invalid_argument("config: unknown tau_range key '" + key + "'");
  }
}

void parse_integrator(const json& j, IntegratorConfig& out) {
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (key == "steps") out.steps = item.value().get<int>();
    else if (key == "trace_tol") out.trace_tol = item.value().get<double>();
    else if (key == "herm_tol") out.herm_tol = item.value().get<double>();
    else if (key == "positivity_tol") out.positivity_tol = item.value().get<double>();
    else if (key == "positivity_interval") out.positivity_interval = item.value().get<int>();
    else throw std::invalid_argument("config: unknown integrator key '" + key + "'");
  }
}

}  // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  ScenarioConfig cfg;
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const json& v = item.value();
    if (key == "model") cfg.model = v.get<std::string>();
    else if (key == "channel") cfg.channel = channel_kind_from_name(v.get<std::string>());
    else if (key == "basis") cfg.basis = channel_basis_from_name(v.get<std::string>());
    else if (key == "dephasing_convention")
      cfg.dephasing_convention = dephasing_convention_from_name(v.get<std::string>());
    else if (key == "qubit_factor") cfg.qubit_factor = v.get<int>();
    else if (key == "alphas") cfg.alphas = v.get<std::vector<double>>();
    else if (key == "tau_range") parse_tau_range(v, cfg.tau_range);
    else if (key == "resource_mode")
      cfg.resource_mode = resource_mode_from_name(v.get<std::string>());
    else if (key == "omega") cfg.omega = v.get<double>();
    else if (key == "theta0") cfg.theta0 = v.get<double>();
    else if (key == "phi0") cfg.phi0 = v.get<double>();
    else if (key == "phi0_adiabatic") cfg.phi0_adiabatic = v.get<double>();
    else if (key == "protocols") {
      cfg.protocols.clear();
      for (const auto& name : v) cfg.protocols.push_back(protocol_from_name(name.get<std::string>()));
    } else if (key == "integrator") parse_integrator(v, cfg.integrator);
    else if (key == "postselect") cfg.postselect = v.get<bool>();
    else if (key == "input_state") {
      const auto rows = v.get<std::vector<std::vector<double>>>();
      cfg.input_state.resize(rows.size());
      for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != 2)
          throw std::invalid_argument("config: input_state entries must be [re, im] pairs");
        cfg.input_state[i] = Complex(rows[i][0], rows[i][1]);
      }
    } else if (key == "output") cfg.output = v.get<std::string>();
    else if (key == "threads") cfg.threads = v.get<int>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig scenario_from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

}  // namespace sta

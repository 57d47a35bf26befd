#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deph/parallel.hpp"
#include "io.hpp"

namespace deph::cli {

namespace {

using nlohmann::json;

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string log_base = "2";
  double tol = witness::kCriteriaTol;
  int restarts = 16;

  witness::EoAOptions eoa() const {
    witness::EoAOptions o;
    o.seed = RngSeed{seed};
    o.restarts = restarts;
    o.log_base = log_base == "e" ? std::numbers::e : 2.0;
    return o;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Seed for every random stream")->capture_default_str();
  app->add_option("--out", c.out, "Output file (default: stdout)");
  app->add_option("--log-base", c.log_base, "Entropy log base")->check(CLI::IsMember({"2", "e"}))->capture_default_str();
  app->add_option("--tol", c.tol, "Criteria tolerance (operator norm)")->check(CLI::NonNegativeNumber)->capture_default_str();
  app->add_option("--restarts", c.restarts, "Optimizer restarts")->check(CLI::PositiveNumber)->capture_default_str();
}

// Output target: --out file when given, the caller's stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw InputError("--out", "cannot open " + path + " for writing");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void write_json(const std::string& path, std::ostream& fallback, const json& j) {
  Sink sink(path, fallback);
  sink.get() << j.dump(2) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path, std::string("invalid JSON: ") + e.what());
  }
}

// ---- trapped-ion -------------------------------------------------------------

struct TrappedIonConfig {
  int steps = 63;
  double t_max = std::numbers::pi;
  std::optional<int> shots;
};

void cmd_trapped_ion(const Common& common, const TrappedIonConfig& cfg, std::ostream& out) {
  const std::size_t n = static_cast<std::size_t>(cfg.steps);
  struct Row {
    double t, qa;
    Complex phi, noisy;
  };
  std::vector<Row> rows(n);
  const witness::EoAOptions opts = common.eoa();
  parallel_for(n, default_thread_count(), [&](std::size_t k) {
    const double t = n == 1 ? 0.0 : cfg.t_max * static_cast<double>(k) / static_cast<double>(n - 1);
    const auto phi = dephasing::dephasing_matrix(models::trapped_ion_channel(t));
    Row r{t, witness::q_a(phi, opts).q_a, phi(1, 3), {}};
    if (cfg.shots) {
      const ComplexMatrix rho = dephasing::apply_channel(phi, dephasing::maximally_coherent_state(4));
      r.noisy = 4.0 * models::simulate_tomography(rho, *cfg.shots, RngSeed{common.seed}.derive(k))(1, 3);
    }
    rows[k] = r;
  });

  Sink sink(common.out, out);
  std::ostream& os = sink.get();
  os << "t,qa,re_phi,im_phi";
  if (cfg.shots) os << ",re_phi_shots,im_phi_shots";
  os << '\n';
  for (const Row& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.qa) << ',' << format_double(r.phi.real()) << ','
       << format_double(r.phi.imag());
    if (cfg.shots) os << ',' << format_double(r.noisy.real()) << ',' << format_double(r.noisy.imag());
    os << '\n';
  }
}

// ---- he-fit --------------------------------------------------------------------

struct HeFitConfig {
  std::string input;
  std::string chi_out;
  double omega_min = -4.0;
  double omega_max = 4.0;
  int omega_steps = 161;
};

void cmd_he_fit(const Common& common, const HeFitConfig& cfg, std::ostream& out) {
  std::ifstream in(cfg.input);
  if (!in) throw InputError(cfg.input, "cannot open file");
  const auto samples = read_fit_csv(in, cfg.input);
  const he::FitResult fit = he::fit_alpha(samples);

  if (!cfg.chi_out.empty()) {
    Sink sink(cfg.chi_out, out);
    std::ostream& os = sink.get();
    os << "omega,chi_fit\n";
    for (int k = 0; k < cfg.omega_steps; ++k) {
      const double w = cfg.omega_steps == 1 ? cfg.omega_min
                                            : cfg.omega_min + (cfg.omega_max - cfg.omega_min) * k / (cfg.omega_steps - 1);
      if (std::abs(w) < 1e-9 || std::abs(w - 2.0) < 1e-9 || std::abs(w + 2.0) < 1e-9) continue;
      os << format_double(w) << ',' << format_double(fit.alpha * he::chi(w)) << '\n';
    }
  }
  write_json(common.out, out, to_json(fit));
}

// ---- gravity ----------------------------------------------------------------------

struct GravityConfig {
  models::GravityInputs inputs;
  std::optional<double> time;
  std::string config;
  int baseline_samples = 100;
  std::string csv;
  int steps = 11;
};

void apply_gravity_config(const json& j, GravityConfig& cfg, const CLI::App& app) {
  if (!j.is_object()) throw InputError("$", "expected a JSON object");
  auto& in = cfg.inputs;
  const std::vector<std::pair<std::string, double*>> fields{
      {"rho_density", &in.density}, {"r_particle", &in.r_particle}, {"r_osc", &in.r_osc}, {"d", &in.d},
      {"d0", &in.d0},               {"omega", &in.omega},           {"temp", &in.temperature}};
  for (const auto& [key, value] : j.items()) {
    const std::string path = "$." + key;
    const std::string flag = "--" + std::string(key == "rho_density" ? "rho-density"
                                                 : key == "r_particle" ? "r-particle"
                                                 : key == "r_osc"      ? "r-osc"
                                                 : key == "omega_is_bare" ? "bare-omega"
                                                                        : key);
    if (const CLI::Option* opt = app.get_option_no_throw(flag); opt != nullptr && opt->count() > 0) continue;  // explicit flags win
    if (key == "omega_is_bare") {
      if (!value.is_boolean()) throw InputError(path, "expected a boolean");
      in.omega_is_bare = value.get<bool>();
      continue;
    }
    if (!value.is_number()) throw InputError(path, "expected a number");
    if (key == "time") {
      cfg.time = value.get<double>();
      continue;
    }
    bool known = false;
    for (const auto& [name, target] : fields) {
      if (name == key) {
        *target = value.get<double>();
        known = true;
      }
    }
    if (!known) throw InputError(path, "unknown field");
  }
}

void cmd_gravity(const Common& common, const GravityConfig& cfg, std::ostream& out) {
  const models::GravityParams p = models::gravity_params(cfg.inputs);
  const double t = cfg.time.value_or(p.t_star());
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("--time", "must be a non-negative number");

  const witness::EoAOptions opts = common.eoa();
  const auto phi = models::gravity_phi(p, t);
  witness::WitnessReport report = witness::q_a(phi, opts);
  if (cfg.baseline_samples > 0) report.baseline = witness::mu_baseline(4, cfg.baseline_samples, RngSeed{common.seed}, opts);

  if (!cfg.csv.empty()) {
    const std::size_t n = static_cast<std::size_t>(cfg.steps);
    std::vector<std::array<double, 3>> rows(n);
    parallel_for(n, default_thread_count(), [&](std::size_t k) {
      const double tk = n == 1 ? t : t * static_cast<double>(k) / static_cast<double>(n - 1);
      const auto phik = models::gravity_phi(p, tk);
      rows[k] = {tk, witness::q_a(phik, opts).q_a, models::max_coherence_decay(phik)};
    });
    Sink sink(cfg.csv, out);
    sink.get() << "t,qa,max_coherence_decay\n";
    for (const auto& r : rows) sink.get() << format_double(r[0]) << ',' << format_double(r[1]) << ',' << format_double(r[2]) << '\n';
  }

  json j = to_json(report);
  j["params"] = to_json(p);
  j["time"] = t;
  j["max_coherence_decay"] = models::max_coherence_decay(phi);
  j["phi"] = to_json(phi.matrix());
  write_json(common.out, out, j);
}

// ---- scan ------------------------------------------------------------------------

struct ScanConfig {
  int d_system = 3;
  int samples = 1000;
  std::string summary;
};

constexpr double kBinWidth = 0.02;
constexpr double kWitnessThreshold = 1e-2;
constexpr double kZeroNegativity = 1e-12;

json scan_summary(const std::vector<models::SampleRecord>& records, const ScanConfig& cfg, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, double>> bins;  // count, min negativity
  std::size_t violations = 0;
  for (const auto& r : records) {
    const auto b = static_cast<std::size_t>(std::max(r.q_a, 0.0) / kBinWidth);
    if (bins.size() <= b) bins.resize(b + 1, {0, 0.0});
    auto& [count, min_n] = bins[b];
    min_n = count == 0 ? r.negativity : std::min(min_n, r.negativity);
    ++count;
    if (r.q_a > kWitnessThreshold && r.negativity <= kZeroNegativity) ++violations;
  }
  json arr = json::array();
  bool monotone = true;
  std::optional<double> prev;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (bins[b].first == 0) continue;
    arr.push_back({{"q_a_lo", b * kBinWidth},
                   {"q_a_hi", (b + 1) * kBinWidth},
                   {"count", bins[b].first},
                   {"min_negativity", bins[b].second}});
    if (prev && bins[b].second < *prev) monotone = false;
    prev = bins[b].second;
  }
  return {{"schema_version", kSchemaVersion},
          {"d_system", cfg.d_system},
          {"samples", records.size()},
          {"seed", seed},
          {"bin_width", kBinWidth},
          {"bins", arr},
          {"min_negativity_nondecreasing", monotone},
          {"witness_violations", violations}};
}

void cmd_scan(const Common& common, const ScanConfig& cfg, std::ostream& out) {
  const auto records = models::scan(cfg.d_system, cfg.samples, RngSeed{common.seed}, common.eoa(), default_thread_count());
  {
    Sink sink(common.out, out);
    std::ostream& os = sink.get();
    os << "sample,qa,negativity\n";
    for (std::size_t k = 0; k < records.size(); ++k)
      os << k << ',' << format_double(records[k].q_a) << ',' << format_double(records[k].negativity) << '\n';
  }
  if (!cfg.summary.empty()) write_json(cfg.summary, out, scan_summary(records, cfg, common.seed));
}

// ---- witness -----------------------------------------------------------------------

struct WitnessConfig {
  std::string input;
  bool coherent = false;
  int baseline_samples = 0;
};

void cmd_witness(const Common& common, const WitnessConfig& cfg, std::ostream& out) {
  ChannelSpec spec = parse_channel_spec(read_json_file(cfg.input));
  const witness::EoAOptions opts = common.eoa();
  witness::WitnessReport report;
  if (const auto* ch = std::get_if<dephasing::PureDephasingChannel>(&spec.channel)) {
    std::optional<ComplexMatrix> rho = spec.system_state;
    if (!rho && cfg.coherent) rho = dephasing::maximally_coherent_state(ch->dim_system());
    report = witness::analyze_channel(*ch, opts, common.tol, rho);
  } else {
    if (spec.system_state || cfg.coherent)
      throw InputError("$.system_state", "negativity needs the unitaries/env_state form of the channel");
    report = witness::q_a(std::get<dephasing::DephasingFactorMatrix>(spec.channel), opts);
  }
  const Index d = static_cast<Index>(std::llround(std::pow(opts.log_base, report.e_a_max)));
  if (cfg.baseline_samples > 0) report.baseline = witness::mu_baseline(d, cfg.baseline_samples, RngSeed{common.seed}, opts);
  write_json(common.out, out, to_json(report));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pure-dephasing channel analysis: NMU witness, separability criteria and model reproductions", "deph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "deph 0.1.0");

  Common common;

  TrappedIonConfig ti;
  auto* ti_cmd = app.add_subcommand("trapped-ion", "Q_A and phi_{01,11} over a time grid for the trapped-ion model");
  add_common(ti_cmd, common);
  ti_cmd->add_option("--steps", ti.steps, "Number of grid points")->check(CLI::PositiveNumber)->capture_default_str();
  ti_cmd->add_option("--t-max", ti.t_max, "Last grid time")->check(CLI::NonNegativeNumber)->capture_default_str();
  ti_cmd->add_option("--shots", ti.shots, "Tomography shots per Pauli setting")->check(CLI::PositiveNumber);

  HeFitConfig hf;
  auto* hf_cmd = app.add_subcommand("he-fit", "Fit alpha to (t, im_phi) samples and sample alpha * chi(omega)");
  add_common(hf_cmd, common);
  hf_cmd->add_option("--input", hf.input, "CSV with columns t,im_phi")->required()->check(CLI::ExistingFile);
  hf_cmd->add_option("--chi-out", hf.chi_out, "CSV output omega,chi_fit");
  hf_cmd->add_option("--omega-min", hf.omega_min)->capture_default_str();
  hf_cmd->add_option("--omega-max", hf.omega_max)->capture_default_str();
  hf_cmd->add_option("--omega-steps", hf.omega_steps)->check(CLI::PositiveNumber)->capture_default_str();

  GravityConfig gr;
  auto* gr_cmd = app.add_subcommand("gravity", "Gravitationally coupled particles and oscillator: Q_A at t*");
  add_common(gr_cmd, common);
  auto& gi = gr.inputs;
  gr_cmd->add_option("--config", gr.config, "JSON file with SI inputs (flags override)")->check(CLI::ExistingFile);
  gr_cmd->add_option("--rho-density", gi.density, "Mass density [kg/m^3]")->capture_default_str();
  gr_cmd->add_option("--r-particle", gi.r_particle, "Particle radius [m]")->capture_default_str();
  gr_cmd->add_option("--r-osc", gi.r_osc, "Oscillator radius [m]")->capture_default_str();
  gr_cmd->add_option("--d", gi.d, "Particle-oscillator distance [m]")->capture_default_str();
  gr_cmd->add_option("--d0", gi.d0, "Superposition splitting [m]")->capture_default_str();
  gr_cmd->add_option("--omega", gi.omega, "Oscillator angular frequency [rad/s]")->capture_default_str();
  gr_cmd->add_flag("--bare-omega", gi.omega_is_bare, "Treat --omega as the bare frequency");
  gr_cmd->add_option("--temp", gi.temperature, "Oscillator temperature [K]")->capture_default_str();
  gr_cmd->add_option("--time", gr.time, "Evaluation time [s] (default pi / omega)");
  gr_cmd->add_option("--baseline-samples", gr.baseline_samples, "Random MU channels for the optimizer floor")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gr_cmd->add_option("--csv", gr.csv, "CSV output t,qa,max_coherence_decay on [0, time]");
  gr_cmd->add_option("--steps", gr.steps, "Grid points for --csv")->check(CLI::PositiveNumber)->capture_default_str();

  ScanConfig sc;
  auto* sc_cmd = app.add_subcommand("scan", "Q_A and negativity of random pure dephasing maps");
  add_common(sc_cmd, common);
  sc_cmd->add_option("--d-system", sc.d_system, "System dimension")->check(CLI::IsMember({2, 3, 4}))->capture_default_str();
  sc_cmd->add_option("--samples", sc.samples, "Number of maps")->check(CLI::PositiveNumber)->capture_default_str();
  sc_cmd->add_option("--summary", sc.summary, "JSON output with minimum negativity per Q_A bin");

  WitnessConfig wc;
  auto* wi_cmd = app.add_subcommand("witness", "Full witness report for a channel given as JSON");
  add_common(wi_cmd, common);
  wi_cmd->add_option("--input", wc.input, "Channel spec JSON")->required()->check(CLI::ExistingFile);
  wi_cmd->add_flag("--coherent", wc.coherent, "Report negativity for the maximally coherent input");
  wi_cmd->add_option("--baseline-samples", wc.baseline_samples, "Random MU channels for the optimizer floor")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (ti_cmd->parsed()) cmd_trapped_ion(common, ti, out);
    if (hf_cmd->parsed()) cmd_he_fit(common, hf, out);
    if (gr_cmd->parsed()) {
      if (!gr.config.empty()) apply_gravity_config(read_json_file(gr.config), gr, *gr_cmd);
      cmd_gravity(common, gr, out);
    }
    if (sc_cmd->parsed()) cmd_scan(common, sc, out);
    if (wi_cmd->parsed()) cmd_witness(common, wc, out);
  } catch (const ConvergenceFailure& e) {
    err << "deph: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NonPositiveInput& e) {
    err << "deph: invalid input: --" << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "deph: invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "deph: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace deph::cli

#include "randstate/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "randstate/closedforms.hpp"
#include "randstate/ensembles.hpp"
#include "randstate/errors.hpp"
#include "randstate/functionals.hpp"
#include "randstate/mc.hpp"
#include "randstate/stats.hpp"

namespace rstate::cli {

using nlohmann::json;

namespace {

// Significance level of the KS checks run by `verify`; chosen to match the
// false-alarm rate of the |z| <= 4 rule used for the mean comparisons.
constexpr double kVerifyKsAlpha = 1e-4;
constexpr std::size_t kMinKsSamples = 1000;
constexpr std::size_t kDerivativeGridPoints = 50;
constexpr double kDerivativeTolerance = 1e-10;

std::size_t default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

std::string verdict(bool pass) { return pass ? "pass" : "fail"; }

struct RunRecord {
  std::string command;
  json parameters = json::object();
  json results = json::object();
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;

  std::string line() const {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["parameters"] = parameters;
    j["results"] = results;
    j["seed"] = seed;
    j["wall_time_ms"] = number(wall_time_ms);
    return j.dump();
  }
};

class Emitter {
 public:
  Emitter(std::ostream& out, const std::string& path) : out_(out) {
    if (!path.empty()) {
      file_.open(path, std::ios::app);
      if (!file_) throw ParameterError("cannot open output file " + path);
    }
  }

  void emit(const RunRecord& record) {
    const std::string line = record.line();
    out_ << line << '\n';
    out_.flush();
    if (file_.is_open()) file_ << line << '\n' << std::flush;
  }

 private:
  std::ostream& out_;
  std::ofstream file_;
};

json ensemble_parameters(const EnsembleSpec& spec) {
  return json{{"m", spec.m}, {"n", spec.n}, {"k", spec.k}};
}

json report_result(const ComparisonReport& r, double display_scale) {
  return json{{"mean", number(r.mc_mean * display_scale)},
              {"stderr", number(r.mc_stderr * display_scale)},
              {"closed_form", number(r.closed_form * display_scale)},
              {"z", number(r.z_score)},
              {"samples", r.count},
              {"verdict", verdict(r.pass)}};
}

struct EnsembleFlags {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 1;

  void add_to(CLI::App* app, bool with_k = true) {
    app->add_option("--m", m, "system dimension")->required();
    app->add_option("--n", n, "environment dimension")->required();
    if (with_k) app->add_option("--k", k, "mixing order of the ensemble E_k")->capture_default_str();
  }

  EnsembleSpec spec() const {
    EnsembleSpec s{m, n, k};
    s.validate();
    return s;
  }
};

// estimate -----------------------------------------------------------------

struct EstimateFlags {
  EnsembleFlags ensemble;
  std::string quantity;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t workers = default_workers();
  std::string out_path;
  bool bits = false;
};

int cmd_estimate(const EstimateFlags& f, std::ostream& out) {
  const auto quantity = parse_quantity(f.quantity);
  if (!quantity || *quantity == Quantity::isospectral_diag_entropy) {
    throw ParameterError("unknown quantity '" + f.quantity +
                         "' (expected entropy, diag-entropy, coherence or subentropy)");
  }
  EstimatorConfig config;
  config.spec = f.ensemble.spec();
  config.quantity = *quantity;
  config.samples = f.samples;
  config.master_seed = f.seed;
  config.workers = f.workers;
  config.validate();

  const ComparisonReport report = run_comparison(config);
  const double scale = f.bits ? 1.0 / std::numbers::ln2 : 1.0;

  RunRecord record;
  record.command = "estimate";
  record.parameters = ensemble_parameters(config.spec);
  record.parameters["quantity"] = std::string(to_string(config.quantity));
  record.parameters["samples"] = config.samples;
  record.parameters["workers"] = config.workers;
  record.parameters["units"] = f.bits ? "bits" : "nats";
  record.results[std::string(to_string(config.quantity))] = report_result(report, scale);
  record.seed = f.seed;
  record.wall_time_ms = report.wall_time_ms;
  Emitter(out, f.out_path).emit(record);
  return report.pass ? kPass : kStatisticalFailure;
}

// verify -------------------------------------------------------------------

struct VerifyFlags {
  EnsembleFlags ensemble;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t workers = default_workers();
  std::string out_path;
};

template <class Fn>
double timed_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  const EnsembleSpec spec = f.ensemble.spec();
  if (f.samples < 2) throw ParameterError("--samples must be at least 2");
  Emitter emitter(out, f.out_path);
  bool all_pass = true;

  auto base_record = [&](const std::string& check) {
    RunRecord r;
    r.command = "verify";
    r.parameters = ensemble_parameters(spec);
    r.parameters["check"] = check;
    r.parameters["samples"] = f.samples;
    r.parameters["workers"] = f.workers;
    r.seed = f.seed;
    return r;
  };

  for (Quantity q : {Quantity::coherence, Quantity::subentropy, Quantity::entropy, Quantity::diag_entropy}) {
    EstimatorConfig config;
    config.spec = spec;
    config.quantity = q;
    config.samples = f.samples;
    config.master_seed = f.seed;
    config.workers = f.workers;
    const ComparisonReport report = run_comparison(config);
    RunRecord r = base_record(std::string(to_string(q)));
    r.results[std::string(to_string(q))] = report_result(report, 1.0);
    r.wall_time_ms = report.wall_time_ms;
    all_pass = all_pass && report.pass;
    emitter.emit(r);
  }

  // Distributional checks need enough samples for the KS asymptotics.
  const std::size_t ks_samples = std::max(f.samples, kMinKsSamples);
  {
    RunRecord r = base_record("gamma_marginal");
    r.parameters["samples"] = ks_samples;
    r.parameters["alpha"] = kVerifyKsAlpha;
    std::vector<double> ks;
    r.wall_time_ms = timed_ms([&] { ks = gamma_marginal_test(spec.m, spec.environment(), ks_samples, f.seed); });
    const double critical = ks_critical_value(kVerifyKsAlpha, ks_samples);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const bool pass = ks[i] < critical;
      all_pass = all_pass && pass;
      r.results["W_" + std::to_string(i + 1) + std::to_string(i + 1)] =
          json{{"statistic", number(ks[i])}, {"threshold", number(critical)}, {"verdict", verdict(pass)}};
    }
    emitter.emit(r);
  }
  {
    RunRecord r = base_record("dirichlet_marginal");
    r.parameters["samples"] = ks_samples;
    r.parameters["alpha"] = kVerifyKsAlpha;
    MarginalConsistency mc;
    r.wall_time_ms = timed_ms([&] { mc = dirichlet_marginal_test(spec, ks_samples, f.seed); });
    const double critical = ks_two_sample_critical_value(kVerifyKsAlpha, ks_samples, ks_samples);
    const bool pass = mc.statistic < critical;
    all_pass = all_pass && pass;
    r.results["rho_11"] =
        json{{"statistic", number(mc.statistic)}, {"threshold", number(critical)}, {"verdict", verdict(pass)}};
    emitter.emit(r);
  }
  {
    RunRecord r = base_record("derivative_principle");
    if (spec.m != 2) {
      r.results["derivative_principle"] = json{{"verdict", "skipped"}, {"reason", "m != 2"}};
    } else {
      const std::size_t n = spec.environment();
      double worst = 0.0;
      r.wall_time_ms = timed_ms([&] {
        for (std::size_t i = 0; i < kDerivativeGridPoints; ++i) {
          const double x = (static_cast<double>(i) + 0.5) / kDerivativeGridPoints;
          worst = std::max(worst, std::abs(derivative_principle_density_m2(n, x) - eigen_density_m2(n, x)));
        }
      });
      const bool pass = worst <= kDerivativeTolerance;
      all_pass = all_pass && pass;
      r.results["derivative_principle"] = json{{"max_abs_diff", number(worst)},
                                               {"threshold", kDerivativeTolerance},
                                               {"grid_points", kDerivativeGridPoints},
                                               {"verdict", verdict(pass)}};
    }
    emitter.emit(r);
  }
  return all_pass ? kPass : kStatisticalFailure;
}

// tables -------------------------------------------------------------------

struct TablesFlags {
  std::vector<std::size_t> m_list;
  std::vector<std::size_t> n_list;
};

std::string csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int cmd_tables(const TablesFlags& f, std::ostream& out, std::ostream& err) {
  if (f.m_list.empty() || f.n_list.empty()) throw ParameterError("--m-list and --n-list must be non-empty");
  std::ostringstream rows;
  std::size_t row_count = 0;
  for (std::size_t m : f.m_list) {
    for (std::size_t n : f.n_list) {
      if (m < 1 || m > n) {
        err << "tables: skipping (m=" << m << ", n=" << n << "): requires 1 <= m <= n\n";
        continue;
      }
      const double s = avg_entropy_page(m, n);
      const double q = avg_subentropy(m, n);
      const double q_max = max_subentropy(m);
      rows << m << ',' << n << ',' << csv_number(s) << ',' << csv_number(avg_diag_entropy(m, n)) << ','
           << csv_number(avg_coherence(m, n)) << ',' << csv_number(q) << ',' << csv_number(q_max) << ',';
      if (m >= 2) {
        const double s_max = std::log(static_cast<double>(m));
        rows << csv_number((s_max - s) / s_max) << ',' << csv_number((q_max - q) / q_max);
      } else {
        rows << ',';
      }
      rows << '\n';
      ++row_count;
    }
  }
  if (row_count == 0) throw ParameterError("no (m, n) pair in the lists satisfies 1 <= m <= n");
  out << "m,n,avg_entropy,avg_diag_entropy,avg_coherence,avg_subentropy,max_subentropy,rel_err_S,rel_err_Q\n"
      << rows.str();
  return kPass;
}

// concentration ------------------------------------------------------------

struct ConcentrationFlags {
  EnsembleFlags ensemble;
  double epsilon = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t workers = default_workers();
  std::string out_path;
};

int cmd_concentration(const ConcentrationFlags& f, std::ostream& out) {
  if (f.ensemble.m < 3) {
    throw ParameterError("the coherence typicality bound is stated only for m >= 3");
  }
  if (!(f.epsilon > 0.0)) throw ParameterError("--epsilon must be positive");
  if (f.samples < 1) throw ParameterError("--samples must be positive");
  const EnsembleSpec spec = f.ensemble.spec();
  ConcentrationResult result;
  RunRecord r;
  r.wall_time_ms = timed_ms([&] { result = empirical_concentration(spec, f.epsilon, f.samples, f.seed, f.workers); });
  const bool pass = result.empirical_fraction <= result.bound;
  r.command = "concentration";
  r.parameters = ensemble_parameters(spec);
  r.parameters["epsilon"] = number(f.epsilon);
  r.parameters["samples"] = f.samples;
  r.parameters["workers"] = f.workers;
  r.results["coherence_tail"] = json{{"empirical_fraction", number(result.empirical_fraction)},
                                     {"exceedances", result.exceedances},
                                     {"bound", number(result.bound)},
                                     {"bound_vacuous", result.bound >= 1.0},
                                     {"center", number(avg_coherence(spec.m, spec.n, spec.k))},
                                     {"verdict", verdict(pass)}};
  r.seed = f.seed;
  Emitter(out, f.out_path).emit(r);
  return pass ? kPass : kStatisticalFailure;
}

// sample -------------------------------------------------------------------

struct SampleFlags {
  EnsembleFlags ensemble;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string what = "state";
};

json real_array(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

int cmd_sample(const SampleFlags& f, std::ostream& out) {
  const EnsembleSpec spec = f.ensemble.spec();
  if (f.what != "state" && f.what != "diag" && f.what != "spectrum") {
    throw ParameterError("--what must be one of state, diag, spectrum");
  }
  RngStream stream(SeedSpec{f.seed, 0});
  for (std::size_t i = 0; i < f.count; ++i) {
    const DensityMatrix rho = sample_mixing_state(stream, spec);
    json line;
    if (f.what == "state") {
      line = json::array();
      for (std::size_t r = 0; r < rho.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < rho.dim(); ++c) {
          const Complex z = rho.matrix()(r, c);
          row.push_back(json::array({number(z.real()), number(z.imag())}));
        }
        line.push_back(std::move(row));
      }
    } else if (f.what == "diag") {
      line = real_array(rho.diagonal());
    } else {
      line = real_array(rho.spectrum().values());
    }
    out << line.dump() << '\n';
  }
  return kPass;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random mixed-state sampler and Monte Carlo verifier for coherence, entropy and subentropy averages"};
  app.require_subcommand(1);

  EstimateFlags estimate_flags;
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo mean of one quantity vs its closed form");
  estimate_flags.ensemble.add_to(estimate);
  estimate->add_option("--quantity", estimate_flags.quantity, "entropy | diag-entropy | coherence | subentropy")
      ->required();
  estimate->add_option("--samples", estimate_flags.samples, "number of sampled states")->required();
  estimate->add_option("--seed", estimate_flags.seed, "master seed")->required();
  estimate->add_option("--workers", estimate_flags.workers, "parallel workers")->capture_default_str();
  estimate->add_option("--out", estimate_flags.out_path, "also append the record to this file");
  estimate->add_flag("--bits", estimate_flags.bits, "display entropies in bits");

  VerifyFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "Run every Monte Carlo and distributional check");
  verify_flags.ensemble.add_to(verify);
  verify->add_option("--samples", verify_flags.samples, "samples per check")->required();
  verify->add_option("--seed", verify_flags.seed, "master seed")->required();
  verify->add_option("--workers", verify_flags.workers, "parallel workers")->capture_default_str();
  verify->add_option("--out", verify_flags.out_path, "also append the records to this file");

  TablesFlags tables_flags;
  auto* tables = app.add_subcommand("tables", "CSV of closed-form averages over an (m, n) grid");
  tables->add_option("--m-list", tables_flags.m_list, "comma-separated m values")->required()->delimiter(',');
  tables->add_option("--n-list", tables_flags.n_list, "comma-separated n values")->required()->delimiter(',');

  ConcentrationFlags conc_flags;
  auto* concentration = app.add_subcommand("concentration", "Empirical coherence tail vs the typicality bound");
  conc_flags.ensemble.add_to(concentration);
  concentration->add_option("--epsilon", conc_flags.epsilon, "deviation threshold")->required();
  concentration->add_option("--samples", conc_flags.samples, "number of sampled states")->required();
  concentration->add_option("--seed", conc_flags.seed, "master seed")->required();
  concentration->add_option("--workers", conc_flags.workers, "parallel workers")->capture_default_str();
  concentration->add_option("--out", conc_flags.out_path, "also append the record to this file");

  SampleFlags sample_flags;
  auto* sample = app.add_subcommand("sample", "Dump sampled states, diagonals or spectra as JSON lines");
  sample_flags.ensemble.add_to(sample);
  sample->add_option("--count", sample_flags.count, "number of states")->required();
  sample->add_option("--seed", sample_flags.seed, "seed")->required();
  sample->add_option("--what", sample_flags.what, "state | diag | spectrum")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*estimate) return cmd_estimate(estimate_flags, out);
    if (*verify) return cmd_verify(verify_flags, out);
    if (*tables) return cmd_tables(tables_flags, out, err);
    if (*concentration) return cmd_concentration(conc_flags, out);
    if (*sample) return cmd_sample(sample_flags, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace rstate::cli

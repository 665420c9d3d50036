#include "sine_moments/cli_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sine_moments/arithmetic.hpp"
#include "sine_moments/cfkrs.hpp"
#include "sine_moments/cue.hpp"
#include "sine_moments/errors.hpp"
#include "sine_moments/moments.hpp"
#include "sine_moments/parallel.hpp"
#include "sine_moments/predictions.hpp"
#include "sine_moments/shifts.hpp"

namespace sine_moments {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string CsvTable::render() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(fields[i]);
    }
    out += "\r\n";
  };
  line(header);
  for (const auto& row : rows) line(row);
  return out;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["argv"] = argv;
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed.empty() ? nlohmann::json(nullptr) : nlohmann::json(seed);
  j["tolerances"] = tolerances;
  nlohmann::json timings = nlohmann::json::object();
  for (const auto& [phase, seconds] : timings_seconds) timings[phase] = format_real(seconds);
  j["timings_seconds"] = timings;
  j["version"] = std::string(kVersion);
  j["output"] = {{"path", output_path},
                 {"fnv1a64", output_fnv1a64},
                 {"bytes", std::to_string(output_bytes)}};
  j["summary"] = summary;
  return j.dump(2) + "\n";
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& flag, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(value)) {
    throw UsageError(flag + ": cannot parse '" + text + "' as a real number");
  }
  return value;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) parts.push_back(item);
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

std::vector<double> parse_reals(const std::string& flag, const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split_commas(text)) values.push_back(parse_real(flag, part));
  if (values.empty()) throw UsageError(flag + ": expected at least one value");
  return values;
}

// Integers may be written as "1000000" or "1e6".
long long parse_integer(const std::string& flag, const std::string& text, long long lo,
                        long long hi) {
  const double value = parse_real(flag, text);
  if (value != std::floor(value) || value < static_cast<double>(lo) ||
      value > static_cast<double>(hi)) {
    throw UsageError(flag + ": expected an integer in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "], got '" + text + "'");
  }
  return static_cast<long long>(value);
}

std::vector<int> parse_integers(const std::string& flag, const std::string& text, int lo, int hi) {
  std::vector<int> values;
  for (const auto& part : split_commas(text)) {
    values.push_back(static_cast<int>(parse_integer(flag, part, lo, hi)));
  }
  if (values.empty()) throw UsageError(flag + ": expected at least one value");
  return values;
}

std::uint64_t parse_seed(const std::string& flag, const std::string& text) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw UsageError(flag + ": expected an unsigned 64-bit integer, got '" + text + "'");
  }
  return value;
}

std::string join_reals(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_real(values[i]);
  }
  return out;
}

struct Options {
  std::string out;
  std::string manifest;
  std::string threads;
  std::string config;

  std::string M;
  std::string mu;
  std::string nu;
  std::string T;
  std::string T0 = "10";
  std::string window = "from_T0";
  std::string nodes_per_gap = "6";
  std::string T_list;
  std::string delta_list;
  std::string N;
  std::string formula = "both";
  std::string samples;
  std::string seed;
  std::string N_list;
  std::string aM = "auto";
  std::string prime_limit;
  std::string j_terms = "0";
  std::string cache;
  std::string t;
  std::string mode = "both";
  std::string trials;
};

struct CommandResult {
  CsvTable table;
  bool numeric_failure = false;
  std::string failure_message;
};

ShiftConfig read_shifts(const Options& o) {
  const int M = static_cast<int>(parse_integer("--M", o.M, 1, kMaxShiftOrder));
  ShiftConfig cfg{parse_reals("--mu", o.mu), parse_reals("--nu", o.nu)};
  if (static_cast<int>(cfg.mu.size()) != M) {
    throw UsageError("--mu: expected " + std::to_string(M) + " values, got " +
                     std::to_string(cfg.mu.size()));
  }
  if (static_cast<int>(cfg.nu.size()) != M) {
    throw UsageError("--nu: expected " + std::to_string(M) + " values, got " +
                     std::to_string(cfg.nu.size()));
  }
  return cfg;
}

double read_am(const std::string& text, int M) {
  if (text == "auto") return M == 1 ? 1.0 : a_m(M, 1'000'000).value;
  const double aM = parse_real("--aM", text);
  if (!(aM > 0.0)) throw UsageError("--aM: must be positive or 'auto'");
  return aM;
}

QuadraturePolicy read_policy(const Options& o) {
  QuadraturePolicy policy;
  policy.nodes_per_gap = parse_real("--nodes-per-gap", o.nodes_per_gap);
  if (!(policy.nodes_per_gap >= 2.0)) throw UsageError("--nodes-per-gap: must be >= 2");
  return policy;
}

Window read_window(const std::string& text) {
  try {
    return parse_window(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--window: expected from_T0 or dyadic, got '" + text + "'");
  }
}

std::vector<std::string> moment_row(const MomentEstimate& e) {
  return {std::to_string(e.cfg.order()),
          join_reals(e.cfg.mu),
          join_reals(e.cfg.nu),
          format_real(e.T0),
          format_real(e.T),
          std::string(to_string(e.window)),
          format_real(e.raw_integral.real()),
          format_real(e.raw_integral.imag()),
          format_real(e.normalized.real()),
          format_real(e.normalized.imag()),
          format_real(e.prediction.real()),
          format_real(e.prediction.imag()),
          std::to_string(e.nodes_used),
          format_real(e.est_quadrature_error)};
}

const std::vector<std::string> kMomentHeader = {
    "M",           "mu",          "nu",        "T0",           "T",
    "window",      "raw_re",      "raw_im",    "normalized_re", "normalized_im",
    "prediction_re", "prediction_im", "nodes_used", "est_quadrature_error"};

CommandResult run_moment(const Options& o, bool scan, RunManifest& manifest) {
  const auto cfg = read_shifts(o);
  const double T0 = parse_real("--T0", o.T0);
  const auto window = read_window(o.window);
  const auto policy = read_policy(o);
  if (!(T0 > 1.0)) throw UsageError("--T0: must exceed 1");
  std::vector<double> T_list;
  if (scan) {
    T_list = parse_reals("--T-list", o.T_list);
    for (std::size_t i = 0; i < T_list.size(); ++i) {
      if (!(T_list[i] > T0) || (i > 0 && !(T_list[i] > T_list[i - 1]))) {
        throw UsageError("--T-list: values must increase and exceed T0");
      }
    }
  } else {
    T_list = {parse_real("--T", o.T)};
    if (!(T_list[0] > T0)) throw UsageError("--T: must exceed T0");
  }
  manifest.tolerances["nodes_per_gap"] = format_real(policy.nodes_per_gap);
  manifest.tolerances["panel_order"] = std::to_string(policy.panel_order);
  manifest.tolerances["rs_correction_terms"] = std::to_string(policy.zeta.rs_correction_terms);

  CommandResult result;
  result.table.header = kMomentHeader;
  for (const auto& e : moment_scan(cfg, T0, T_list, window, policy)) {
    result.table.rows.push_back(moment_row(e));
  }
  return result;
}

CommandResult run_ratio(const Options& o, RunManifest& manifest) {
  const int M = static_cast<int>(parse_integer("--M", o.M, 1, 2));
  const auto deltas = parse_reals("--delta-list", o.delta_list);
  const double T = parse_real("--T", o.T);
  const double T0 = parse_real("--T0", o.T0);
  if (!(T0 > 1.0)) throw UsageError("--T0: must exceed 1");
  if (!(T > T0)) throw UsageError("--T: must exceed T0");
  const auto policy = read_policy(o);
  manifest.tolerances["nodes_per_gap"] = format_real(policy.nodes_per_gap);
  manifest.tolerances["panel_order"] = std::to_string(policy.panel_order);

  CommandResult result;
  result.table.header = {"M",          "delta",        "T",           "empirical_re", "empirical_im",
                         "predicted_re", "predicted_im", "deviation"};
  for (const auto& row : ratio_curve(M, deltas, T, policy, T0)) {
    result.table.rows.push_back({std::to_string(M), format_real(row.delta), format_real(T),
                                 format_real(row.empirical.real()), format_real(row.empirical.imag()),
                                 format_real(row.predicted.real()), format_real(row.predicted.imag()),
                                 format_real(row.deviation)});
  }
  return result;
}

std::vector<std::string> cue_row(const CueEstimate& e) {
  return {std::to_string(e.N),
          std::to_string(e.M),
          std::string(to_string(e.method)),
          format_real(e.value.real()),
          format_real(e.value.imag()),
          format_real(e.std_error),
          std::to_string(e.samples)};
}

const std::vector<std::string> kCueHeader = {"N",        "M",        "method", "value_re",
                                             "value_im", "std_error", "samples"};

CommandResult run_cue_exact(const Options& o, RunManifest&) {
  const int N = static_cast<int>(parse_integer("--N", o.N, 1, 1 << 20));
  const auto cfg = read_shifts(o);
  if (o.formula != "det" && o.formula != "perm" && o.formula != "both") {
    throw UsageError("--formula: expected det, perm or both, got '" + o.formula + "'");
  }
  CommandResult result;
  result.table.header = kCueHeader;
  if (o.formula != "perm") result.table.rows.push_back(cue_row(cue_exact_det(N, cfg)));
  if (o.formula != "det") result.table.rows.push_back(cue_row(cue_exact_perm(N, cfg)));
  return result;
}

CommandResult run_cue_mc(const Options& o, RunManifest& manifest) {
  const int N = static_cast<int>(parse_integer("--N", o.N, 1, kMaxSampleDimension));
  const auto cfg = read_shifts(o);
  const long samples = static_cast<long>(parse_integer("--samples", o.samples, 100, 1'000'000'000));
  const auto seed = parse_seed("--seed", o.seed);
  manifest.seed = std::to_string(seed);
  manifest.tolerances["batches"] = std::to_string(kMcBatches);

  CommandResult result;
  result.table.header = kCueHeader;
  result.table.rows.push_back(cue_row(cue_mc(N, cfg, samples, seed)));
  return result;
}

CommandResult run_cue_scale(const Options& o, RunManifest&) {
  const auto N_list = parse_integers("--N-list", o.N_list, 1, 1 << 20);
  for (std::size_t i = 1; i < N_list.size(); ++i) {
    if (N_list[i] <= N_list[i - 1]) throw UsageError("--N-list: values must increase");
  }
  const auto cfg = read_shifts(o);
  CommandResult result;
  result.table.header = {"N", "scaled_re", "scaled_im", "limit_re", "limit_im", "deviation"};
  for (const auto& row : scaling_check(N_list, cfg)) {
    result.table.rows.push_back({std::to_string(row.N), format_real(row.scaled.real()),
                                 format_real(row.scaled.imag()), format_real(row.limit.real()),
                                 format_real(row.limit.imag()), format_real(row.deviation)});
  }
  return result;
}

CommandResult run_predict(const Options& o, RunManifest&) {
  const auto cfg = read_shifts(o);
  const double aM = read_am(o.aM, cfg.order());
  const auto ratio = sine_kernel_ratio(cfg);
  const auto rhs = conjecture_rhs(cfg, aM);
  const Complex limit = cue_limit(cfg);
  CommandResult result;
  result.table.header = {"M",        "aM",       "method",        "coalescence_detected",
                         "ratio_re", "ratio_im", "conjecture_re", "conjecture_im",
                         "cue_limit_re", "cue_limit_im"};
  result.table.rows.push_back({std::to_string(cfg.order()), format_real(aM),
                               std::string(to_string(ratio.method)),
                               ratio.coalescence_detected ? "true" : "false",
                               format_real(ratio.value.real()), format_real(ratio.value.imag()),
                               format_real(rhs.value.real()), format_real(rhs.value.imag()),
                               format_real(limit.real()), format_real(limit.imag())});
  return result;
}

CommandResult run_arith_am(const Options& o, RunManifest& manifest) {
  const int M = static_cast<int>(parse_integer("--M", o.M, 1, 1000));
  const auto limit = static_cast<std::uint64_t>(
      parse_integer("--prime-limit", o.prime_limit, 100, static_cast<long long>(kMaxSieveLimit)));
  const int j_terms = static_cast<int>(parse_integer("--j-terms", o.j_terms, 0, 100000));
  manifest.tolerances["inner_tail_at_2"] = "1e-15";
  manifest.tolerances["max_tail_bound"] = "1e-06";
  const auto r = a_m(M, limit, j_terms);
  CommandResult result;
  result.table.header = {"M", "prime_limit", "j_terms", "value", "tail_bound"};
  result.table.rows.push_back({std::to_string(r.M), std::to_string(r.prime_limit),
                               std::to_string(r.j_terms), format_real(r.value),
                               format_real(r.tail_bound)});
  return result;
}

CommandResult run_arith_d2(const Options& o, RunManifest& manifest) {
  const auto T = static_cast<std::uint64_t>(
      parse_integer("--T", o.T, 1, static_cast<long long>(kMaxSieveLimit)));
  DivisorTable table;
  bool loaded = false;
  if (!o.cache.empty() && std::filesystem::exists(o.cache)) {
    table = load_sieve_cache(o.cache);
    loaded = table.limit() >= T;
  }
  if (!loaded) {
    table = divisor_sieve(T);
    if (!o.cache.empty()) save_sieve_cache(table, o.cache);
  }
  manifest.summary["cache_hit"] = loaded ? "true" : "false";

  const std::uint64_t d2 = sum_d2(T, table);
  const double d2n = sum_d2_over_n(T, table);
  const double logT = std::log(static_cast<double>(T));
  const double Td = static_cast<double>(T);
  CommandResult result;
  result.table.header = {"T", "sum_d2", "sum_d2_over_n", "d2_ratio", "d2_over_n_ratio"};
  result.table.rows.push_back(
      {std::to_string(T), std::to_string(d2), format_real(d2n),
       format_real(T > 1 ? static_cast<double>(d2) * kPi * kPi / (Td * logT * logT * logT) : 0.0),
       format_real(T > 1 ? d2n * 4.0 * kPi * kPi / (logT * logT * logT * logT) : 0.0)});
  return result;
}

CommandResult run_cfkrs(const Options& o, RunManifest&) {
  const double t = parse_real("--t", o.t);
  if (!(t >= 10.0)) throw UsageError("--t: must be >= 10");
  const auto cfg = read_shifts(o);
  if (o.mode != "zeta" && o.mode != "pole" && o.mode != "both") {
    throw UsageError("--mode: expected zeta, pole or both, got '" + o.mode + "'");
  }
  const double aM = read_am("auto", cfg.order());
  const double scale = std::pow(std::log(t), cfg.order() * cfg.order());
  CommandResult result;
  result.table.header = {"t",        "mode",          "aM",           "value_re",
                         "value_im", "normalized_re", "normalized_im"};
  auto add = [&](const WmResult& w) {
    result.table.rows.push_back({format_real(w.t), std::string(to_string(w.mode)),
                                 format_real(w.aM_used), format_real(w.value.real()),
                                 format_real(w.value.imag()), format_real(w.value.real() / scale),
                                 format_real(w.value.imag() / scale)});
  };
  if (o.mode != "pole") add(wm_leading(t, cfg, aM));
  if (o.mode != "zeta") add(wm_pole(t, cfg, aM));
  return result;
}

inline constexpr double kCue6Tolerance = 1e-9;

CommandResult run_verify_cue6(const Options& o, RunManifest& manifest) {
  const int M = static_cast<int>(parse_integer("--M", o.M, 1, kMaxShiftOrder));
  const long long trials = parse_integer("--trials", o.trials, 1, 10'000'000);
  const auto seed = parse_seed("--seed", o.seed);
  manifest.seed = std::to_string(seed);
  manifest.tolerances["cue6_relative_residual"] = format_real(kCue6Tolerance);

  CommandResult result;
  result.table.header = {"trial", "mu", "nu", "residual"};
  double worst = 0.0;
  for (long long i = 0; i < trials; ++i) {
    const auto cfg = random_shift_config(M, seed, static_cast<std::uint64_t>(i));
    const double r = verify_cue6(cfg);
    worst = std::max(worst, r);
    result.table.rows.push_back(
        {std::to_string(i), join_reals(cfg.mu), join_reals(cfg.nu), format_real(r)});
  }
  manifest.summary["max_residual"] = format_real(worst);
  if (!(worst <= kCue6Tolerance)) {
    result.numeric_failure = true;
    result.failure_message = "verify cue6: max residual " + format_real(worst) + " exceeds 1e-9";
  }
  return result;
}

// Appends "--key value" for every key of the JSON object that argv lacks.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("--config: invalid JSON in '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw UsageError("--config: top level must be an object");

  auto present = [&](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  auto scalar = [](const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_real(v.get<double>());
    return v.dump();
  };

  std::vector<std::string> merged = args;
  for (const auto& [key, value] : j.items()) {
    std::string flag = key.rfind("--", 0) == 0 ? key : "--" + key;
    if (flag == "--config" || present(flag)) continue;
    std::string text;
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) text += ',';
        text += scalar(value[i]);
      }
    } else {
      text = scalar(value);
    }
    merged.push_back(flag);
    merged.push_back(text);
  }
  return merged;
}

void record_options(const CLI::App* app, std::map<std::string, std::string>& config) {
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_name();
    if (name == "--help" || name == "-h,--help" || name.empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
    } else {
      value = opt->get_default_str();
    }
    config[opt->get_single_name()] = value;
  }
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using Clock = std::chrono::steady_clock;
  const auto t_start = Clock::now();
  Options o;
  RunManifest manifest;
  manifest.argv = args;

  CLI::App app{"Shifted zeta moments, sine-kernel predictions and CUE correlations",
               "sine_moments"};
  app.require_subcommand(1);
  app.add_option("--out", o.out, "CSV output path (default: standard output)");
  app.add_option("--manifest", o.manifest, "JSON run manifest path");
  app.add_option("--threads", o.threads, "worker threads");
  app.add_option("--config", o.config, "JSON file of default flag values");

  auto new_command = [](CLI::App* parent, const std::string& name, const std::string& about) {
    CLI::App* sc = parent->add_subcommand(name, about);
    sc->fallthrough();
    return sc;
  };
  auto add_shifts = [&o](CLI::App* sc) {
    sc->add_option("--M", o.M, "order M")->required();
    sc->add_option("--mu", o.mu, "comma-separated mu shifts")->required();
    sc->add_option("--nu", o.nu, "comma-separated nu shifts")->required();
  };
  auto add_quadrature = [&o](CLI::App* sc) {
    sc->add_option("--T0", o.T0, "lower integration limit")->capture_default_str();
    sc->add_option("--window", o.window, "from_T0 or dyadic")->capture_default_str();
    sc->add_option("--nodes-per-gap", o.nodes_per_gap, "Gauss nodes per mean zero gap")
        ->capture_default_str();
  };

  CLI::App* moment = new_command(&app, "moment", "normalized shifted moment over one window");
  add_shifts(moment);
  add_quadrature(moment);
  moment->add_option("--T", o.T, "upper limit (from_T0) or window start (dyadic)")->required();

  CLI::App* scan = new_command(&app, "scan", "moment at every T of a list");
  add_shifts(scan);
  add_quadrature(scan);
  scan->add_option("--T-list", o.T_list, "comma-separated increasing T values")->required();

  CLI::App* ratio = new_command(&app, "ratio", "M(delta, T) / M(0, T) against the sine kernel");
  ratio->add_option("--M", o.M, "1 or 2")->required();
  ratio->add_option("--delta-list", o.delta_list, "comma-separated deltas")->required();
  ratio->add_option("--T", o.T, "upper limit")->required();
  add_quadrature(ratio);

  CLI::App* cue = new_command(&app, "cue", "CUE characteristic polynomial correlations");
  cue->require_subcommand(1);
  CLI::App* cue_exact = new_command(cue, "exact", "finite-N exact formulas");
  cue_exact->add_option("--N", o.N, "matrix size")->required();
  add_shifts(cue_exact);
  cue_exact->add_option("--formula", o.formula, "det, perm or both")->capture_default_str();
  CLI::App* cue_mc_cmd = new_command(cue, "mc", "Monte Carlo over Haar samples");
  cue_mc_cmd->add_option("--N", o.N, "matrix size")->required();
  add_shifts(cue_mc_cmd);
  cue_mc_cmd->add_option("--samples", o.samples, "sample count (>= 100)")->required();
  cue_mc_cmd->add_option("--seed", o.seed, "u64 seed")->required();
  CLI::App* cue_scale = new_command(cue, "scale", "N^{-M^2} f against the N -> inf limit");
  cue_scale->add_option("--N-list", o.N_list, "comma-separated increasing N")->required();
  add_shifts(cue_scale);

  CLI::App* predict = new_command(&app, "predict", "closed-form predictions");
  add_shifts(predict);
  predict->add_option("--aM", o.aM, "auto or a positive real")->capture_default_str();

  CLI::App* arith = new_command(&app, "arith", "arithmetic factors and divisor sums");
  arith->require_subcommand(1);
  CLI::App* arith_am = new_command(arith, "aM", "Euler product a_M");
  arith_am->add_option("--M", o.M, "order M")->required();
  arith_am->add_option("--prime-limit", o.prime_limit, "largest prime multiplied exactly")
      ->required();
  arith_am->add_option("--j-terms", o.j_terms, "inner series length (0 = automatic)")
      ->capture_default_str();
  CLI::App* arith_d2 = new_command(arith, "d2", "sum of d(n)^2 and d(n)^2/n");
  arith_d2->add_option("--T", o.T, "upper limit")->required();
  arith_d2->add_option("--cache", o.cache, "divisor sieve cache file");

  CLI::App* cfkrs = new_command(&app, "cfkrs", "leading-order CFKRS term");
  cfkrs->add_option("--t", o.t, "height t")->required();
  add_shifts(cfkrs);
  cfkrs->add_option("--mode", o.mode, "zeta, pole or both")->capture_default_str();

  CLI::App* verify = new_command(&app, "verify", "identity checks");
  verify->require_subcommand(1);
  CLI::App* verify_cue6_cmd = new_command(verify, "cue6", "permutation sum vs determinant ratio");
  verify_cue6_cmd->add_option("--M", o.M, "order M")->required();
  verify_cue6_cmd->add_option("--trials", o.trials, "random configurations")->required();
  verify_cue6_cmd->add_option("--seed", o.seed, "u64 seed")->required();

  CommandResult result;
  try {
    auto merged = merge_config(args);
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    }

    int threads = 0;
    if (!o.threads.empty()) threads = static_cast<int>(parse_integer("--threads", o.threads, 1, 4096));
    if (const char* env = std::getenv("SINE_MOMENTS_THREADS"); env != nullptr && *env != '\0') {
      threads = static_cast<int>(parse_integer("SINE_MOMENTS_THREADS", env, 1, 4096));
    }
    if (threads > 0) set_thread_count(threads);
    manifest.config["threads"] = std::to_string(thread_count());

    struct Route {
      CLI::App* sub;
      std::string name;
      std::function<CommandResult()> run;
    };
    const std::vector<Route> routes = {
        {moment, "moment", [&] { return run_moment(o, false, manifest); }},
        {scan, "scan", [&] { return run_moment(o, true, manifest); }},
        {ratio, "ratio", [&] { return run_ratio(o, manifest); }},
        {cue_exact, "cue exact", [&] { return run_cue_exact(o, manifest); }},
        {cue_mc_cmd, "cue mc", [&] { return run_cue_mc(o, manifest); }},
        {cue_scale, "cue scale", [&] { return run_cue_scale(o, manifest); }},
        {predict, "predict", [&] { return run_predict(o, manifest); }},
        {arith_am, "arith aM", [&] { return run_arith_am(o, manifest); }},
        {arith_d2, "arith d2", [&] { return run_arith_d2(o, manifest); }},
        {cfkrs, "cfkrs", [&] { return run_cfkrs(o, manifest); }},
        {verify_cue6_cmd, "verify cue6", [&] { return run_verify_cue6(o, manifest); }},
    };
    const Route* chosen = nullptr;
    for (const auto& r : routes) {
      if (r.sub->parsed()) chosen = &r;
    }
    if (chosen == nullptr) {
      err << "usage error: missing subcommand\n";
      return kExitUsage;
    }
    manifest.command = chosen->name;
    for (const CLI::App* a = chosen->sub; a != nullptr; a = a->get_parent()) {
      if (a != &app) record_options(a, manifest.config);
    }

    const auto t_compute = Clock::now();
    result = chosen->run();
    manifest.timings_seconds["setup"] = std::chrono::duration<double>(t_compute - t_start).count();
    manifest.timings_seconds["compute"] =
        std::chrono::duration<double>(Clock::now() - t_compute).count();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const auto t_write = Clock::now();
  const std::string csv = result.table.render();
  try {
    if (o.out.empty() || o.out == "-") {
      out << csv;
      out.flush();
    } else {
      std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open " + o.out + " for writing");
      file << csv;
      if (!file) throw std::runtime_error("write failed: " + o.out);
    }
    manifest.timings_seconds["write"] = std::chrono::duration<double>(Clock::now() - t_write).count();

    if (!o.manifest.empty()) {
      const auto* bytes = reinterpret_cast<const std::byte*>(csv.data());
      char hex[17];
      std::snprintf(hex, sizeof hex, "%016llx",
                    static_cast<unsigned long long>(fnv1a64(std::span(bytes, csv.size()))));
      manifest.output_path = o.out.empty() ? "-" : o.out;
      manifest.output_fnv1a64 = hex;
      manifest.output_bytes = csv.size();
      std::ofstream file(o.manifest, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open " + o.manifest + " for writing");
      file << manifest.to_json();
      if (!file) throw std::runtime_error("write failed: " + o.manifest);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (result.numeric_failure) {
    err << "numeric error: " << result.failure_message << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace sine_moments

#include "qtur/cli.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtur/counting.hpp"
#include "qtur/errors.hpp"
#include "qtur/jumps.hpp"
#include "qtur/steady_state.hpp"
#include "qtur/susceptibility.hpp"
#include "qtur/tur.hpp"

namespace qtur::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kCsv, kJsonl };

struct RunConfig {
  std::string subcommand;
  std::optional<double> A;
  std::optional<double> omega;
  std::optional<double> delta;
  std::string A_range;
  std::string omega_range;
  std::string delta_range;
  std::size_t n = 10000;
  std::uint64_t seed = 42;
  std::string out_path;
  std::string format = "csv";
  int threads = 0;
  bool no_timestamp = false;
  double tau = 200.0;
  std::size_t ntraj = 1000;
  double n_d = 1.0;
  double tolerance = 1e-4;
  double wavelength_nm = 500.0;
  double atom_size_nm = 1.0;
  double alpha_fs = 1.0 / 137.0;
};

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

AxisRange parse_range(const std::string& text, const char* flag, bool need_count) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  const bool ok_size = need_count ? parts.size() == 3 : (parts.size() == 2 || parts.size() == 3);
  if (!ok_size) {
    throw UsageError(std::string(flag) + ": expected " + (need_count ? "lo:hi:n" : "lo:hi[:n]") + ", got '" +
                     text + "'");
  }
  AxisRange r;
  try {
    std::size_t used = 0;
    r.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    r.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    if (parts.size() == 3) {
      const long long n = std::stoll(parts[2], &used);
      if (used != parts[2].size() || n < 1) throw std::invalid_argument("n");
      r.n = static_cast<std::size_t>(n);
    }
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + ": could not parse '" + text + "'");
  }
  if (!(r.lo <= r.hi)) throw UsageError(std::string(flag) + ": need lo <= hi");
  return r;
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string cell_to_csv(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "1" : "0";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      c);
}

void write_table(std::ostream& os, const Table& t, const ordered_json& meta, Format fmt) {
  if (fmt == Format::kCsv) {
    os << "# " << meta.dump() << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_to_csv(row[i]);
      os << '\n';
    }
    return;
  }
  os << ordered_json{{"meta", meta}}.dump() << '\n';
  for (const auto& row : t.rows) {
    ordered_json rec = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { rec[t.columns[i]] = v; }, row[i]);
    }
    os << rec.dump() << '\n';
  }
}

ordered_json axis_json(const AxisRange& r) { return {{"lo", r.lo}, {"hi", r.hi}, {"n", r.n}}; }

std::vector<Cell> tur_row(const TurPoint& pt) {
  return {pt.params.A,         pt.params.omega_gamma,        pt.params.delta_gamma,
          pt.coherence.rho_r,  pt.coherence.rho_i,           pt.stats.mean_current,
          pt.stats.variance,   pt.stats.fano,                pt.stats.entropy_rate,
          pt.stats.uncertainty_product, pt.bounds.phi_o,     pt.bounds.phi_p,
          pt.bounds.envelope};
}

const std::vector<std::string> kTurColumns = {"A",    "omega_gamma", "delta_gamma", "rho_r", "rho_i",
                                              "j",    "varj",        "fano",        "sigma", "q",
                                              "phi_o", "phi_p",      "envelope"};

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string(flag) + " is required");
  return *v;
}

// Axis from a --X-range flag or, failing that, the point value.
AxisRange grid_axis(const std::string& range, const char* range_flag, const std::optional<double>& point,
                    AxisRange fallback) {
  if (!range.empty()) return parse_range(range, range_flag, true);
  if (point) return {*point, *point, 1};
  return fallback;
}

Table cmd_steady(const RunConfig& cfg, ordered_json& meta) {
  const ModelParams p = make_params(require(cfg.A, "--A"), cfg.omega.value_or(0.0), cfg.delta.value_or(0.0));
  meta["params"] = {{"A", p.A}, {"omega_gamma", p.omega_gamma}, {"delta_gamma", p.delta_gamma}};
  const DensityMatrix ss = analytic_steady_state(p);
  const CoherenceParts c = coherence_parts(p);
  Table t;
  t.columns = {"A", "omega_gamma", "delta_gamma", "nbar", "rho_ee", "rho_gg", "rho_r", "rho_i"};
  t.rows.push_back({p.A, p.omega_gamma, p.delta_gamma, p.nbar, ss.rho_ee.real(), ss.rho_gg.real(), c.rho_r, c.rho_i});
  return t;
}

Table cmd_sweep(const RunConfig& cfg, ordered_json& meta) {
  SweepSpec spec;
  spec.mode = SweepSpec::Mode::kGrid;
  spec.A = grid_axis(cfg.A_range, "--A-range", cfg.A, {0.5, 10.0, 20});
  spec.omega_gamma = grid_axis(cfg.omega_range, "--omega-range", cfg.omega, {0.01, 3.0, 20});
  spec.delta_gamma = grid_axis(cfg.delta_range, "--delta-range", cfg.delta, {0.0, 0.0, 1});
  meta["grid"] = {{"A", axis_json(spec.A)},
                  {"omega_gamma", axis_json(spec.omega_gamma)},
                  {"delta_gamma", axis_json(spec.delta_gamma)}};
  Table t;
  t.columns = kTurColumns;
  for (const auto& pt : sweep(spec, cfg.threads)) t.rows.push_back(tur_row(pt));
  return t;
}

Table cmd_scatter(const RunConfig& cfg, ordered_json& meta) {
  SweepSpec spec = SweepSpec::random_scatter(cfg.n, cfg.seed);
  if (!cfg.A_range.empty()) spec.A = parse_range(cfg.A_range, "--A-range", false);
  if (!cfg.omega_range.empty()) spec.omega_gamma = parse_range(cfg.omega_range, "--omega-range", false);
  if (!cfg.delta_range.empty()) spec.delta_gamma = parse_range(cfg.delta_range, "--delta-range", false);
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  meta["random"] = {{"samples", spec.samples},
                    {"A", {{"lo", spec.A.lo}, {"hi", spec.A.hi}, {"distribution", "log-uniform"}}},
                    {"omega_gamma", {{"lo", spec.omega_gamma.lo}, {"hi", spec.omega_gamma.hi}, {"distribution", "uniform"}}},
                    {"delta_gamma", {{"lo", spec.delta_gamma.lo}, {"hi", spec.delta_gamma.hi}, {"distribution", "uniform"}}}};
  Table t;
  t.columns = kTurColumns;
  for (const auto& pt : sweep(spec, cfg.threads)) t.rows.push_back(tur_row(pt));
  return t;
}

Table cmd_minimize(const RunConfig& cfg, ordered_json& meta, std::ostream& err) {
  MinimizeControl ctl;
  if (!cfg.A_range.empty()) {
    const AxisRange r = parse_range(cfg.A_range, "--A-range", false);
    ctl.A_lo = r.lo;
    ctl.A_hi = r.hi;
    if (r.n > 1) ctl.grid_A = r.n;
  }
  if (!cfg.omega_range.empty()) {
    const AxisRange r = parse_range(cfg.omega_range, "--omega-range", false);
    ctl.omega_lo = r.lo;
    ctl.omega_hi = r.hi;
    if (r.n > 1) ctl.grid_omega = r.n;
  }
  ctl.tolerance = cfg.tolerance;
  meta["domain"] = {{"A", {{"lo", ctl.A_lo}, {"hi", ctl.A_hi}, {"n", ctl.grid_A}}},
                    {"omega_gamma", {{"lo", ctl.omega_lo}, {"hi", ctl.omega_hi}, {"n", ctl.grid_omega}}},
                    {"tolerance", ctl.tolerance}};
  const MinimizeResult r = minimize_q_resonant(ctl, cfg.threads);
  if (r.on_boundary) err << "warning: minimiser lies on the search-domain boundary\n";
  Table t;
  t.columns = {"A_star", "omega_star", "q_min", "on_boundary", "evaluations"};
  t.rows.push_back({r.A_star, r.omega_star, r.q_min, r.on_boundary, static_cast<std::int64_t>(r.evaluations)});
  return t;
}

Table cmd_trajectories(const RunConfig& cfg, ordered_json& meta, std::ostream& err) {
  const ModelParams p = make_params(require(cfg.A, "--A"), cfg.omega.value_or(0.0), cfg.delta.value_or(0.0));
  if (cfg.ntraj < 1) throw UsageError("--ntraj must be >= 1");
  meta["params"] = {{"A", p.A}, {"omega_gamma", p.omega_gamma}, {"delta_gamma", p.delta_gamma}};
  meta["tau"] = cfg.tau;
  meta["ntraj"] = cfg.ntraj;
  const TrajectoryBatch batch = sample_jump_trajectories(p, cfg.tau, cfg.ntraj, cfg.seed, cfg.threads);
  const BatchSummary s = summarize(batch);
  err << "mean_current " << format_double(s.mean_current) << " +- " << format_double(s.mean_current_se)
      << " (closed form " << format_double(mean_current(p)) << ")\n"
      << "variance_rate " << format_double(s.variance_rate) << " +- " << format_double(s.variance_rate_se)
      << " (closed form " << format_double(current_variance(p)) << ")\n";
  Table t;
  t.columns = {"trajectory", "count"};
  t.rows.reserve(batch.counts.size());
  for (std::size_t k = 0; k < batch.counts.size(); ++k) {
    t.rows.push_back({static_cast<std::int64_t>(k), batch.counts[k]});
  }
  return t;
}

Table cmd_susceptibility(const RunConfig& cfg, ordered_json& meta) {
  const double A = cfg.A.value_or(2.0);
  const double omega = cfg.omega.value_or(0.5);
  const AxisRange d = cfg.delta_range.empty() ? AxisRange{-6.0, 6.0, 241}
                                              : parse_range(cfg.delta_range, "--delta-range", true);
  meta["params"] = {{"A", A}, {"omega_gamma", omega}, {"n_d", cfg.n_d}};
  meta["delta_gamma"] = axis_json(d);
  if (d.n < 3) throw UsageError("--delta-range: need n >= 3");
  Table t;
  t.columns = {"delta_gamma", "chi_re", "chi_im", "refractive_index_shift", "attenuation_scaled"};
  for (const auto& r : profile_over_detuning(A, omega, d.lo, d.hi, d.n, cfg.n_d)) {
    t.rows.push_back({r.delta_gamma, r.chi_re, r.chi_im, r.refractive_index_shift, r.attenuation_scaled});
  }
  return t;
}

Table cmd_scales(const RunConfig& cfg, ordered_json& meta, std::ostream& err) {
  PhysicalScales s;
  s.wavelength = cfg.wavelength_nm * 1e-9;
  s.atom_size = cfg.atom_size_nm * 1e-9;
  s.fine_structure = cfg.alpha_fs;
  meta["scales"] = {{"wavelength_nm", cfg.wavelength_nm}, {"atom_size_nm", cfg.atom_size_nm}, {"alpha_fs", cfg.alpha_fs}};
  if (s.size_warning()) err << "warning: atom size exceeds 0.1 wavelength\n";
  Table t;
  t.columns = {"wavelength_nm", "atom_size_nm", "alpha_fs", "omega0_over_gamma", "gamma_over_omega0"};
  t.rows.push_back({cfg.wavelength_nm, cfg.atom_size_nm, cfg.alpha_fs, timescale_ratio(s), decay_to_resonance_ratio(s)});
  return t;
}

void add_output_flags(CLI::App* sub, RunConfig& cfg, bool seeded) {
  sub->add_option("--out", cfg.out_path, "Output file (default: stdout)");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--threads", cfg.threads, "OpenMP threads (0 = auto)")->check(CLI::NonNegativeNumber);
  sub->add_flag("--no-timestamp", cfg.no_timestamp, "Omit the timestamp from the metadata record");
  if (seeded) sub->add_option("--seed", cfg.seed, "Master seed");
}

void add_point_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--A", cfg.A, "Energy gap beta*hbar*omega0");
  sub->add_option("--omega", cfg.omega, "Driving strength Omega/gamma");
  sub->add_option("--delta", cfg.delta, "Detuning delta_omega/gamma");
}

void add_range_flags(CLI::App* sub, RunConfig& cfg, bool delta) {
  sub->add_option("--A-range", cfg.A_range, "lo:hi[:n]");
  sub->add_option("--omega-range", cfg.omega_range, "lo:hi[:n]");
  if (delta) sub->add_option("--delta-range", cfg.delta_range, "lo:hi[:n]");
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Driven two-level system: steady state, counting statistics and uncertainty relations", "qtur"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CLI::App* steady = app.add_subcommand("steady", "Analytic steady state at one parameter point");
  add_point_flags(steady, cfg);
  add_output_flags(steady, cfg, false);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Grid sweep of counting statistics and TUR quantities");
  add_point_flags(sweep_cmd, cfg);
  add_range_flags(sweep_cmd, cfg, true);
  add_output_flags(sweep_cmd, cfg, false);

  CLI::App* minimize = app.add_subcommand("minimize", "Minimise the resonant uncertainty product");
  add_range_flags(minimize, cfg, false);
  minimize->add_option("--tol", cfg.tolerance, "Pattern-search cell size")->check(CLI::PositiveNumber);
  add_output_flags(minimize, cfg, false);

  CLI::App* scatter = app.add_subcommand("scatter", "Random-parameter scatter of Fano factors and bounds");
  add_range_flags(scatter, cfg, true);
  scatter->add_option("--n", cfg.n, "Number of random samples");
  add_output_flags(scatter, cfg, true);

  CLI::App* traj = app.add_subcommand("trajectories", "Quantum-jump samples of the net transition count");
  add_point_flags(traj, cfg);
  traj->add_option("--tau", cfg.tau, "Trajectory duration (gamma t)");
  traj->add_option("--ntraj", cfg.ntraj, "Number of trajectories");
  add_output_flags(traj, cfg, true);

  CLI::App* sus = app.add_subcommand("susceptibility", "Absorption and dispersion profiles over detuning");
  add_point_flags(sus, cfg);
  sus->add_option("--delta-range", cfg.delta_range, "lo:hi:n");
  sus->add_option("--nd", cfg.n_d, "Dimensionless density scale N_d")->check(CLI::PositiveNumber);
  add_output_flags(sus, cfg, false);

  CLI::App* scales = app.add_subcommand("scales", "omega0/gamma from wavelength, atom size and alpha");
  scales->add_option("--wavelength-nm", cfg.wavelength_nm, "Wavelength in nm")->check(CLI::PositiveNumber);
  scales->add_option("--atom-size-nm", cfg.atom_size_nm, "Atom size in nm")->check(CLI::PositiveNumber);
  scales->add_option("--alpha-fs", cfg.alpha_fs, "Fine-structure constant")->check(CLI::PositiveNumber);
  add_output_flags(scales, cfg, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (CLI::App* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  const bool seeded = cfg.subcommand == "scatter" || cfg.subcommand == "trajectories";

  ordered_json meta;
  meta["tool"] = "qtur";
  meta["version"] = kVersion;
  meta["subcommand"] = cfg.subcommand;
  meta["format"] = cfg.format;
  if (seeded) meta["seed"] = cfg.seed;

  Table table;
  try {
    if (cfg.subcommand == "steady") table = cmd_steady(cfg, meta);
    else if (cfg.subcommand == "sweep") table = cmd_sweep(cfg, meta);
    else if (cfg.subcommand == "minimize") table = cmd_minimize(cfg, meta, err);
    else if (cfg.subcommand == "scatter") table = cmd_scatter(cfg, meta);
    else if (cfg.subcommand == "trajectories") table = cmd_trajectories(cfg, meta, err);
    else if (cfg.subcommand == "susceptibility") table = cmd_susceptibility(cfg, meta);
    else table = cmd_scales(cfg, meta, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  if (!cfg.no_timestamp) meta["timestamp"] = timestamp_utc();
  const Format fmt = cfg.format == "jsonl" ? Format::kJsonl : Format::kCsv;

  if (cfg.out_path.empty()) {
    write_table(out, table, meta, fmt);
    return kExitOk;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << cfg.out_path << "'\n";
    return kExitRuntime;
  }
  write_table(file, table, meta, fmt);
  if (!file) {
    err << "error: failed writing '" << cfg.out_path << "'\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qtur::cli

// Command-line workbench for the extended Nicolai model: verification
// suites over the exact operator algebra, finite-volume spectra, and the
// witness-based ground-energy bound.  Every run writes a CSV table plus a
// JSON mirror with the run metadata; CSV bytes depend only on the config
// and seed, timestamps live in the JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include "nicolai/car.hpp"
#include "nicolai/errors.hpp"
#include "nicolai/fock.hpp"
#include "nicolai/model.hpp"
#include "nicolai/report.hpp"
#include "nicolai/spectra.hpp"

#include <Eigen/Core>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using json = nlohmann::json;
using namespace nicolai;
using car::Polynomial;
using model::Boundary;
using model::Region;

constexpr const char* kToolVersion = "0.1.0";

// --- exit codes -----------------------------------------------------------

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kRegionParity = 3,
  kZeroCoupling = 4,
  kEmptySupport = 5,
  kNonHomogeneous = 6,
  kSupportOutside = 7,
  kWindowMismatch = 8,
  kWindowTooLarge = 9,
  kNoConvergence = 10,
  kNotConserving = 11,
  kEmptyInput = 12,
  kEngineError = 13,
  kInternal = 14,
};

const char kFooter[] = R"(Exit codes:
  0   success; every check passed
  1   one or more checks failed
  2   bad flags, bad config file, or unknown config key
  3   region sizes not an even pair >= 2
  4   coupling g = 0 where a nonzero one is required
  5   empty support where a nonempty one is required
  6   non-homogeneous operand for a graded operation
  7   operator support outside the chosen window
  8   window mismatch between operator and vector
  9   window larger than the configured cap
  10  iterative eigensolver failed to converge
  11  operator does not conserve fermion number
  12  empty input sequence
  13  other engine error
  14  unexpected internal error

A config file holds one key=value pair per line ('#' starts a comment).
Keys are the long option names of the invoked subcommand; unknown keys are
rejected, and command-line flags override config values.  The default
output directory is $NICOLAI_OUT_DIR, falling back to the current one.)";

// --- small parsers ---------------------------------------------------------

// "2", "0..3" -> inclusive integer range
std::vector<int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      return {std::stoi(text)};
    }
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw ConfigParse("empty range: " + text);
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  } catch (const std::logic_error&) {
    throw ConfigParse("not an integer or a..b range: " + text);
  }
}

// "4,6,8" -> list
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
      throw ConfigParse("not an integer list: " + text);
    }
  }
  return out;
}

Boundary parse_boundary(const std::string& text) {
  if (text == "periodic") return Boundary::periodic;
  if (text == "free") return Boundary::free;
  throw ConfigParse("boundary must be 'periodic' or 'free', got '" + text +
                    "'");
}

std::string boundary_name(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "free";
}

// --- flat config file ------------------------------------------------------

std::string trimmed(std::string s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Turns key=value lines into --key=value tokens that are fed to the
// argument parser ahead of the real command line, so explicit flags win.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParse("cannot open config file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigParse("config line " + std::to_string(lineno) +
                        " is not key=value: " + line);
    }
    std::string key = trimmed(line.substr(0, eq));
    std::string value = trimmed(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigParse("config line " + std::to_string(lineno) +
                        " has an empty key");
    }
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

// --- run plumbing ----------------------------------------------------------

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string csv_name;
  std::string json_name;
  std::string g_text = "1";
  std::uint64_t seed = 12345;

  Scalar g;  // parsed before the command runs
};

struct RunOutput {
  std::vector<report::Record> rows;
  json results = json::object();
  std::vector<std::pair<std::string, bool>> checks;
  std::optional<spectra::DensityCurve> density;    // density plot data
  std::vector<report::NormPoint> norm_points;      // norm plot data
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->option_defaults()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--config", c.config_path,
                  "flat key=value config file; flags override");
  cmd->add_option("--out-dir", c.out_dir,
                  "output directory (default: $NICOLAI_OUT_DIR or '.')");
  cmd->add_option("--csv", c.csv_name, "CSV file name");
  cmd->add_option("--json", c.json_name, "JSON file name");
  cmd->add_option("--g", c.g_text,
                  "coupling; rational like 2/3, decimal, or (re,im)")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "deterministic solver seed")
      ->capture_default_str();
}

// The effective settings of the invoked subcommand, echoed verbatim into
// the JSON metadata.
json config_echo(const CLI::App* cmd) {
  json echo = json::object();
  for (const CLI::Option* opt : cmd->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->count() > 0) {
      echo[name] = opt->results().back();
    } else {
      echo[name] = opt->get_default_str();
    }
  }
  return echo;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

bool poly_vanishes(const Polynomial& p, bool exact) {
  return exact ? p.is_zero() : car::approx_equal(p, Polynomial{}, 1e-12);
}

int finish(const std::string& command, const CLI::App* cmd,
           const CommonOpts& c, RunOutput out, double wall_seconds) {
  namespace fs = std::filesystem;
  fs::path dir = c.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory: " + dir.string());

  auto open_out = [&](const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw Error("cannot write " + p.string());
    return f;
  };

  fs::path csv_path = dir / (c.csv_name.empty() ? command + ".csv"
                                                : c.csv_name);
  {
    auto f = open_out(csv_path);
    report::write_csv(out.rows, f);
  }

  bool all_passed = true;
  json checks = json::object();
  for (const auto& [name, ok] : out.checks) {
    checks[name] = ok;
    all_passed = all_passed && ok;
  }

  json meta;
  meta["command"] = command;
  meta["config"] = config_echo(cmd);
  meta["seed"] = c.seed;
  meta["coupling"] = c.g.str();
  meta["exact_coupling"] = c.g.exact();
  meta["tolerances"] = {
      {"float_zero", 1e-12},
      {"positivity_floor", 1e-10},
      {"breaking_threshold", 1e-6},
      {"bound_identity_rel", 1e-8},
      {"lanczos_tol", 1e-10},
      {"norm_rel_tol", 1e-10},
  };
  meta["checks"] = checks;
  meta["all_passed"] = all_passed;
  meta["results"] = std::move(out.results);
  meta["wall_time_seconds"] = wall_seconds;
  meta["timestamp_utc"] = utc_timestamp();
  meta["versions"] = {
      {"tool", kToolVersion},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"cli11", CLI11_VERSION},
  };

  fs::path json_path = dir / (c.json_name.empty() ? command + ".json"
                                                  : c.json_name);
  {
    auto f = open_out(json_path);
    f << meta.dump(2) << '\n';
  }

  std::vector<fs::path> written = {csv_path, json_path};
  if (out.density) {
    fs::path p = dir / "density.dat";
    auto f = open_out(p);
    report::write_density_plot(*out.density, f);
    written.push_back(p);
  }
  if (!out.norm_points.empty()) {
    fs::path p = dir / "norms.dat";
    auto f = open_out(p);
    report::write_norm_plot(out.norm_points, f);
    written.push_back(p);
  }

  std::cout << command << ": g = " << c.g.str()
            << (c.g.exact() ? " (exact)" : " (float)") << '\n';
  for (const auto& [name, ok] : out.checks) {
    std::cout << (ok ? "  ok    " : "  FAIL  ") << name << '\n';
  }
  std::cout << (all_passed ? "all " : "FAILED: ") << out.checks.size()
            << " checks" << (all_passed ? " passed" : " ran") << '\n';
  for (const auto& p : written) std::cout << "wrote " << p.string() << '\n';

  return all_passed ? kOk : kCheckFailed;
}

// --- subcommands -----------------------------------------------------------

RunOutput run_verify_nilpotent(const CommonOpts& c, int m, int n,
                               Boundary boundary) {
  Region region = boundary == Boundary::periodic ? Region::periodic(m, n)
                                                 : Region::free(m, n);
  Polynomial q = model::supercharge({c.g, region});
  Polynomial q2 = car::multiply(q, q);

  RunOutput out;
  bool odd = q.is_zero() || car::parity_of(q) == 1;
  bool nil = poly_vanishes(q2, c.g.exact());
  out.checks = {{"supercharge_is_odd", odd}, {"square_is_zero", nil}};
  out.results = {
      {"M", m},
      {"N", n},
      {"boundary", boundary_name(boundary)},
      {"sites", region.num_sites()},
      {"supercharge_terms", q.terms().size()},
      {"square_terms", q2.terms().size()},
  };

  report::Record row;
  row.g = c.g.str();
  row.length = region.num_sites();
  row.boundary = boundary_name(boundary);
  out.rows.push_back(row);
  return out;
}

RunOutput run_verify_witness(const CommonOpts& c,
                             const std::vector<int>& ks) {
  RunOutput out;
  json items = json::array();
  for (int k : ks) {
    Polynomial o = model::witness_operator(c.g, k);
    Polynomial image = model::superderivation(c.g, o);
    Polynomial diff = image;
    diff -= Polynomial::identity(c.g);
    bool pinned = poly_vanishes(diff, c.g.exact());

    // the same value must come out of the free truncation and a larger
    // periodic one; the margins make the choice immaterial
    Region margin = model::margin_region(car::support(o));
    Polynomial free_image = car::graded_commutator(
        model::free_supercharge({c.g, Region::free(margin.m(), margin.n())}),
        o);
    Region wider = Region::periodic(margin.m() + 2, margin.n() + 2);
    Polynomial wide_image = car::graded_commutator(
        model::periodic_supercharge({c.g, wider}), o);
    bool stable = poly_vanishes(free_image - image, c.g.exact()) &&
                  poly_vanishes(wide_image - image, c.g.exact());

    std::string tag = "_k" + std::to_string(k);
    out.checks.emplace_back("witness_identity" + tag, pinned);
    out.checks.emplace_back("truncation_independent" + tag, stable);

    car::Interval sup = car::support(o);
    items.push_back({{"k", k},
                     {"support", {sup.left, sup.right}},
                     {"terms", o.terms().size()}});

    report::Record row;
    row.g = c.g.str();
    out.rows.push_back(row);
  }
  out.results = {{"witnesses", std::move(items)}};
  return out;
}

RunOutput run_verify_susy_relation(const CommonOpts& c, int width) {
  if (width < 1 || width > 6) {
    throw ConfigParse("width must be between 1 and 6");
  }

  // every monomial supported on sites 1..width: per site none, c, c*, or
  // the number operator c* c
  long total = 1;
  for (int i = 0; i < width; ++i) total *= 4;

  std::map<std::pair<int, int>, Polynomial> hams;
  auto hamiltonian_for = [&](const car::Interval& sup) -> const Polynomial& {
    Region r = model::hamiltonian_region(sup);
    auto key = std::make_pair(r.m(), r.n());
    auto it = hams.find(key);
    if (it == hams.end()) {
      it = hams.emplace(key, model::local_hamiltonian(
                                 model::supercharge({c.g, r})))
               .first;
    }
    return it->second;
  };

  long mismatches = 0;
  for (long code = 0; code < total; ++code) {
    std::vector<car::Site> cre, ann;
    long rest = code;
    for (int s = 1; s <= width; ++s) {
      int digit = rest % 4;
      rest /= 4;
      if (digit == 1) ann.push_back(s);
      if (digit == 2) cre.push_back(s);
      if (digit == 3) {
        cre.push_back(s);
        ann.push_back(s);
      }
    }
    Polynomial a = Polynomial::term(car::Monomial(cre, ann), Scalar(1));
    Polynomial lap = model::susy_laplacian(c.g, a);
    Polynomial comm = car::commutator(hamiltonian_for(car::support(a)), a);
    bool equal = c.g.exact() ? lap == comm
                             : car::approx_equal(lap, comm, 1e-12);
    if (!equal) ++mismatches;
  }

  RunOutput out;
  out.checks = {{"laplacian_matches_commutator", mismatches == 0}};
  out.results = {{"width", width},
                 {"monomials", total},
                 {"mismatches", mismatches}};
  report::Record row;
  row.g = c.g.str();
  out.rows.push_back(row);
  return out;
}

spectra::SolveOptions solve_options(const CommonOpts& c, int dense_threshold,
                                    int ritz) {
  spectra::SolveOptions opts;
  opts.dense_threshold = dense_threshold;
  opts.ritz_count = ritz;
  opts.seed = c.seed;
  return opts;
}

report::Record spectrum_row(const CommonOpts& c, int sites, Boundary b,
                            const spectra::SpectrumResult& r) {
  report::Record row;
  row.g = c.g.str();
  row.length = sites;
  row.boundary = boundary_name(b);
  row.ground_energy = r.ground_energy;
  row.energy_per_site = r.ground_energy / sites;
  row.degeneracy = r.degeneracy;
  row.residual = r.residual;
  row.solver = r.solver;
  return row;
}

json sector_json(const std::map<int, double>& energies) {
  json out = json::object();
  for (const auto& [sector, low] : energies) {
    out[std::to_string(sector)] = low;
  }
  return out;
}

RunOutput run_spectrum(const CommonOpts& c, int m, int n, Boundary boundary,
                       int dense_threshold, int ritz) {
  Region region = boundary == Boundary::periodic ? Region::periodic(m, n)
                                                 : Region::free(m, n);
  auto result =
      spectra::ground_state(c.g, region, solve_options(c, dense_threshold,
                                                       ritz));

  RunOutput out;
  out.checks.emplace_back("ground_energy_nonnegative",
                          result.ground_energy >= -1e-10);
  if (c.g.is_zero()) {
    out.checks.emplace_back("zero_modes_present",
                            std::abs(result.ground_energy) <= 1e-10);
  } else {
    out.checks.emplace_back("susy_broken_positive_energy",
                            result.ground_energy > 1e-6);
  }

  out.results = {
      {"ground_energy", result.ground_energy},
      {"degeneracy", result.degeneracy},
      {"degeneracy_tol", result.degeneracy_tol},
      {"ground_sector", result.ground_sector},
      {"solver", result.solver},
      {"residual", result.residual},
      {"sector_energies", sector_json(result.sector_energies)},
  };
  out.rows.push_back(spectrum_row(c, region.num_sites(), boundary, result));
  return out;
}

RunOutput run_density_scan(const CommonOpts& c, const std::vector<int>& sizes,
                           Boundary boundary, int dense_threshold, int ritz) {
  auto curve = spectra::energy_density_curve(
      c.g, sizes, boundary, solve_options(c, dense_threshold, ritz));

  RunOutput out;
  bool nonneg = true, positive = true;
  json items = json::array();
  for (const auto& row : curve.rows) {
    nonneg = nonneg && row.ground_energy >= -1e-10;
    positive = positive && row.energy_per_site > 0.0;
    items.push_back({{"L", row.length},
                     {"ground_energy", row.ground_energy},
                     {"energy_per_site", row.energy_per_site},
                     {"degeneracy", row.degeneracy},
                     {"solver", row.solver}});

    report::Record rec;
    rec.g = c.g.str();
    rec.length = row.length;
    rec.boundary = boundary_name(row.boundary);
    rec.ground_energy = row.ground_energy;
    rec.energy_per_site = row.energy_per_site;
    rec.degeneracy = row.degeneracy;
    rec.residual = row.residual;
    rec.solver = row.solver;
    out.rows.push_back(rec);
  }
  out.checks.emplace_back("ground_energies_nonnegative", nonneg);
  if (!c.g.is_zero()) {
    out.checks.emplace_back("energy_density_positive", positive);
  }
  out.results = {{"rows", std::move(items)},
                 {"fit_intercept", curve.fit_intercept},
                 {"fit_slope", curve.fit_slope}};
  out.density = std::move(curve);
  return out;
}

RunOutput run_norm_scan(const CommonOpts& c, const std::vector<int>& ns) {
  RunOutput out;
  json items = json::array();
  bool all_converged = true, all_positive = true;
  double first = 0.0, last = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    int n = ns[i];
    Polynomial o = model::averaged_witness(c.g, n);
    car::Interval sup = car::support(o);
    auto window = fock::Window::interval(sup.left, sup.right);
    auto op = fock::represent(o, window);
    auto norm = fock::operator_norm(op, fock::NormMethod::automatic, 1e-10,
                                    c.seed);

    all_converged = all_converged && norm.converged;
    all_positive = all_positive && norm.value > 0.0 &&
                   std::isfinite(norm.value);
    if (i == 0) first = norm.value;
    last = norm.value;

    out.norm_points.push_back({n, norm.value});
    items.push_back(
        {{"n", n},
         {"norm", norm.value},
         {"sqrt_n_norm", std::sqrt(double(n)) * norm.value},
         {"window_sites", window.size()},
         {"method",
          norm.method == fock::NormMethod::iterative ? "iterative"
                                                     : "dense_eig"},
         {"iterations", norm.iterations},
         {"converged", norm.converged},
         {"residual", norm.residual}});

    report::Record row;
    row.g = c.g.str();
    row.length = window.size();
    row.solver = norm.method == fock::NormMethod::iterative ? "iterative"
                                                            : "dense_eig";
    row.witness_norm = norm.value;
    out.rows.push_back(row);
  }
  out.checks.emplace_back("norms_positive_finite", all_positive);
  out.checks.emplace_back("norm_iterations_converged", all_converged);
  if (ns.size() >= 2) {
    out.checks.emplace_back("averaged_norm_decays", last < first);
  }
  out.results = {{"norms", std::move(items)}};
  return out;
}

RunOutput run_bound_check(const CommonOpts& c, const std::vector<int>& ns,
                          int dense_threshold, int ritz) {
  RunOutput out;
  json items = json::array();
  for (int n : ns) {
    auto rep = spectra::susy_bound_check(
        c.g, n, solve_options(c, dense_threshold, ritz));

    std::string tag = "_n" + std::to_string(n);
    out.checks.emplace_back("bound_identity" + tag, rep.identity_ok);
    out.checks.emplace_back("bound_pairing" + tag, rep.inequality_ok);
    out.checks.emplace_back("bound_lower" + tag, rep.lower_bound_ok);

    items.push_back({{"n", n},
                     {"window_sites", rep.window_sites},
                     {"ground_energy", rep.ground_energy},
                     {"a", rep.a},
                     {"b", rep.b},
                     {"witness_norm", rep.witness_norm},
                     {"witness_norm_converged", rep.witness_norm_converged},
                     {"identity_error", rep.identity_error},
                     {"pairing_slack", rep.pairing_slack},
                     {"bound_slack", rep.bound_slack}});

    report::Record row;
    row.g = c.g.str();
    row.length = rep.window_sites;
    row.boundary = "periodic";
    row.ground_energy = rep.ground_energy;
    row.a = rep.a;
    row.b = rep.b;
    row.witness_norm = rep.witness_norm;
    out.rows.push_back(row);
  }
  out.results = {{"bounds", std::move(items)}};
  return out;
}

// --- argv preprocessing ----------------------------------------------------

// Splices config-file tokens in right after the subcommand, before the
// explicit flags, so TakeLast gives the command line precedence.
std::vector<std::string> splice_config(const std::vector<std::string>& args) {
  if (args.empty() || args.front().empty() || args.front()[0] == '-') {
    return args;
  }
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;

  std::vector<std::string> spliced;
  spliced.push_back(args.front());
  for (const std::string& tok : config_tokens(config_path)) {
    spliced.push_back(tok);
  }
  spliced.insert(spliced.end(), args.begin() + 1, args.end());
  return spliced;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Workbench for the extended Nicolai lattice model: exact operator\n"
      "verifications, finite-volume spectra, and the witness energy bound."};
  app.footer(kFooter);
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(0, 1);

  const char* env_dir = std::getenv("NICOLAI_OUT_DIR");
  const std::string default_dir = env_dir ? env_dir : ".";

  // per-subcommand state
  struct Cmd {
    CLI::App* sub = nullptr;
    CommonOpts common;
    int m = 4, n = 4;
    std::string boundary = "periodic";
    std::string k_range = "0..3";
    std::string n_range = "1";
    std::string sizes = "4,6,8";
    int width = 4;
    int dense_threshold = 1024;
    int ritz = 8;
  };
  std::map<std::string, Cmd> cmds;

  auto make = [&](const std::string& name, const std::string& desc) -> Cmd& {
    Cmd& cmd = cmds[name];
    cmd.sub = app.add_subcommand(name, desc);
    cmd.sub->footer("Shares the global exit-code table; see the top-level "
                    "--help.");
    cmd.common.out_dir = default_dir;
    add_common(cmd.sub, cmd.common);
    return cmd;
  };

  auto add_region = [](Cmd& cmd) {
    cmd.sub->add_option("--M", cmd.m, "sites left of the origin (even >= 2)")
        ->capture_default_str();
    cmd.sub->add_option("--N", cmd.n, "sites right of the origin (even >= 2)")
        ->capture_default_str();
    cmd.sub
        ->add_option("--boundary", cmd.boundary,
                     "truncation: periodic | free")
        ->capture_default_str();
  };
  auto add_solver = [](Cmd& cmd) {
    cmd.sub
        ->add_option("--dense-threshold", cmd.dense_threshold,
                     "largest sector dimension solved densely")
        ->capture_default_str();
    cmd.sub
        ->add_option("--ritz-count", cmd.ritz,
                     "low eigenvalues tracked by the iterative solver")
        ->capture_default_str();
  };

  {
    Cmd& cmd = make("verify-nilpotent",
                    "check Q(g)^2 = 0 for one truncated supercharge");
    add_region(cmd);
  }
  {
    Cmd& cmd = make("verify-witness",
                    "check the witness identity delta_g(O_k) = g");
    cmd.sub->add_option("--k", cmd.k_range, "witness index or range a..b")
        ->capture_default_str();
  }
  {
    Cmd& cmd = make("verify-susy-relation",
                    "check the SUSY Laplacian against the Hamiltonian "
                    "commutator on all monomials of a window");
    cmd.sub
        ->add_option("--width", cmd.width,
                     "window width in sites (1..6); all 4^width monomials")
        ->capture_default_str();
  }
  {
    Cmd& cmd = make("spectrum",
                    "ground energy and degeneracy of one finite volume");
    add_region(cmd);
    add_solver(cmd);
  }
  {
    Cmd& cmd = make("density-scan",
                    "ground energy per site across chain lengths");
    cmd.sub->add_option("--sizes", cmd.sizes, "comma list of even lengths")
        ->capture_default_str();
    cmd.sub
        ->add_option("--boundary", cmd.boundary,
                     "truncation: periodic | free")
        ->capture_default_str();
    add_solver(cmd);
  }
  {
    Cmd& cmd = make("norm-scan",
                    "operator norm of the averaged witness o(n)");
    cmd.sub->add_option("--n", cmd.n_range, "average depth or range a..b")
        ->capture_default_str();
  }
  {
    Cmd& cmd = make("bound-check",
                    "ground-energy bound chain through the averaged witness");
    cmd.sub->add_option("--n", cmd.n_range, "average depth or range a..b")
        ->capture_default_str();
    add_solver(cmd);
  }

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = splice_config(args);
    std::reverse(args.begin(), args.end());  // CLI11 expects reversed argv
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e);
      return code == 0 ? kOk : kConfigError;
    }

    const auto chosen = app.get_subcommands();
    if (chosen.empty()) {
      std::cout << app.help();
      return kOk;
    }
    const std::string name = chosen.front()->get_name();
    Cmd& cmd = cmds.at(name);
    cmd.common.g = Scalar::parse(cmd.common.g_text);

    auto t0 = std::chrono::steady_clock::now();
    RunOutput out;
    if (name == "verify-nilpotent") {
      out = run_verify_nilpotent(cmd.common, cmd.m, cmd.n,
                                 parse_boundary(cmd.boundary));
    } else if (name == "verify-witness") {
      out = run_verify_witness(cmd.common, parse_range(cmd.k_range));
    } else if (name == "verify-susy-relation") {
      out = run_verify_susy_relation(cmd.common, cmd.width);
    } else if (name == "spectrum") {
      out = run_spectrum(cmd.common, cmd.m, cmd.n,
                         parse_boundary(cmd.boundary), cmd.dense_threshold,
                         cmd.ritz);
    } else if (name == "density-scan") {
      out = run_density_scan(cmd.common, parse_int_list(cmd.sizes),
                             parse_boundary(cmd.boundary),
                             cmd.dense_threshold, cmd.ritz);
    } else if (name == "norm-scan") {
      out = run_norm_scan(cmd.common, parse_range(cmd.n_range));
    } else {
      out = run_bound_check(cmd.common, parse_range(cmd.n_range),
                            cmd.dense_threshold, cmd.ritz);
    }
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return finish(name, cmd.sub, cmd.common, std::move(out), wall);
  } catch (const ConfigParse& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BadRegionParity& e) {
    std::cerr << "region error: " << e.what() << '\n';
    return kRegionParity;
  } catch (const ZeroCoupling& e) {
    std::cerr << "coupling error: " << e.what() << '\n';
    return kZeroCoupling;
  } catch (const EmptySupport& e) {
    std::cerr << "support error: " << e.what() << '\n';
    return kEmptySupport;
  } catch (const NonHomogeneousArgument& e) {
    std::cerr << "grading error: " << e.what() << '\n';
    return kNonHomogeneous;
  } catch (const SupportOutsideWindow& e) {
    std::cerr << "window error: " << e.what() << '\n';
    return kSupportOutside;
  } catch (const WindowMismatch& e) {
    std::cerr << "window error: " << e.what() << '\n';
    return kWindowMismatch;
  } catch (const WindowTooLarge& e) {
    std::cerr << "window error: " << e.what() << '\n';
    return kWindowTooLarge;
  } catch (const SolverNoConvergence& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const NotNumberConserving& e) {
    std::cerr << "sector error: " << e.what() << '\n';
    return kNotConserving;
  } catch (const EmptyInput& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kEmptyInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEngineError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

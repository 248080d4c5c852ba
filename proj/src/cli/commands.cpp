#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "cli/figures.hpp"
#include "cvbell/approx.hpp"
#include "cvbell/errors.hpp"
#include "cvbell/imperfect.hpp"
#include "cvbell/noise.hpp"
#include "cvbell/oracle.hpp"
#include "cvbell/sweep.hpp"

namespace cvbell::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  double tol = 1e-10;
  std::string out;
  std::string format = "csv";
  bool check = false;
  std::string golden_dir = "golden";

  Format fmt() const { return format == "json" ? Format::Json : Format::Csv; }
  specfun::SeriesControl ctrl() const { return {tol, specfun::SeriesControl{}.max_terms}; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes or prints `text`; with --check also diffs it against the golden file.
int emit(const Globals& g, const std::string& text, const std::string& name, const std::string& ext,
         std::ostream& out, std::ostream& err) {
  if (!g.out.empty()) {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw InvalidInput("cannot write " + g.out);
    f << text;
  } else if (!g.check) {
    out << text;
  }
  if (!g.check) return kOk;
  const std::string path = g.golden_dir + "/" + name + "." + ext;
  const std::string golden = read_file(path);
  if (golden.empty()) {
    err << "check: missing golden file " << path << "\n";
    return kVerificationFailure;
  }
  if (golden == text) {
    err << "check: " << path << " matches\n";
    return kOk;
  }
  std::istringstream a(golden), b(text);
  std::string la, lb;
  for (int line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) break;
    if (!ha || !hb || la != lb) {
      err << "check: " << path << " differs at line " << line << "\n  golden: " << (ha ? la : "<eof>")
          << "\n  actual: " << (hb ? lb : "<eof>") << "\n";
      break;
    }
  }
  return kVerificationFailure;
}

int emit_dataset(const Globals& g, const Dataset& d, const std::string& name, std::ostream& out, std::ostream& err) {
  return emit(g, render(d, g.fmt()), name, g.format, out, err);
}

int emit_json(const Globals& g, const json& j, const std::string& name, std::ostream& out, std::ostream& err) {
  return emit(g, j.dump(2) + "\n", name, "json", out, err);
}

json root_json(const approx::CriticalResult& c) {
  return {{"x", c.x_critical}, {"r", c.r_critical}, {"bracket_width", c.bracket_width},
          {"sign_changes", c.sign_changes}};
}

json criticals(const specfun::SeriesControl& ctrl) {
  using approx::Series;
  json j;
  const std::vector<std::pair<std::string, approx::CriticalResult (*)(Series, const specfun::SeriesControl&)>> all{
      {"theorem1", &approx::critical_theorem1},
      {"prop1", &approx::critical_prop1},
      {"prop2", &approx::critical_prop2},
      {"prop3", &approx::critical_prop3}};
  for (const auto& [name, fn] : all) {
    const auto a = fn(Series::Approximated, ctrl);
    const auto e = fn(Series::Exact, ctrl);
    j[name] = {{"approx", root_json(a)}, {"exact", root_json(e)}, {"exact_minus_approx_r", e.r_critical - a.r_critical}};
  }
  j["faulty"] = {{"r_label", 0.75}, {"r_critical", imperfect::critical_rprime(0.75)}};
  j["faulty_epr"] = {{"r_label", "inf"}, {"r_critical", imperfect::critical_rprime(INFINITY)}};
  return j;
}

struct ThresholdArgs {
  std::string model = "all";
  double r = 1.25;
  double beta1 = 3.0, beta2 = 5.0;
  double sigma1 = 1.0, sigma2 = 1.0;
  double beta = 1.0;
  int k = 0;
  std::string op = "add";
};

json threshold_record(const std::string& model, const ThresholdArgs& a, const specfun::SeriesControl& ctrl) {
  const int s = a.op == "sub" ? -1 : 1;
  if (a.op != "add" && a.op != "sub") throw InvalidInput("op must be add or sub");
  noise::NoisyStateModel m{0.0, states::PhotonVariedState::from_squeezing(a.r, s * a.k, 0), noise::CorrelatedNoise{
                                                                                              noise::thermal_dist(1.0)}};
  json rec{{"model", model}, {"r", a.r}, {"k", s * a.k}};
  if (model == "thermal") {
    m.noise = noise::LocalNoise{noise::thermal_dist(a.beta1), noise::thermal_dist(a.beta2)};
    rec["beta1"] = a.beta1;
    rec["beta2"] = a.beta2;
  } else if (model == "gaussian") {
    m.noise = noise::LocalNoise{noise::gaussian_dist(a.sigma1, ctrl), noise::gaussian_dist(a.sigma2, ctrl)};
    rec["sigma1"] = a.sigma1;
    rec["sigma2"] = a.sigma2;
  } else if (model == "correlated") {
    m.noise = noise::CorrelatedNoise{noise::thermal_dist(a.beta)};
    rec["beta"] = a.beta;
  } else {
    throw InvalidInput("model must be thermal, gaussian, correlated or all");
  }
  const auto t = noise::thresholds(m, ctrl);
  rec["a"] = t.a;
  rec["b"] = t.b;
  rec["known"] = t.known;
  rec["unknown"] = t.unknown;
  return rec;
}

json thresholds(const ThresholdArgs& args, const specfun::SeriesControl& ctrl) {
  json j;
  auto records = json::array();
  if (args.model == "all") {
    for (const char* m : {"thermal", "gaussian", "correlated"}) records.push_back(threshold_record(m, args, ctrl));
  } else {
    records.push_back(threshold_record(args.model, args, ctrl));
  }
  j["models"] = records;
  j["epr_limits"] = {
      {"correlated_or_zero_temperature_unknown", noise::p_threshold(0.0, 1.0, noise::Policy::UnknownP)},
      {"infinite_temperature_known", noise::p_threshold(1.0, 1.0, noise::Policy::KnownP)},
      {"infinite_temperature_unknown", noise::p_threshold(1.0, 1.0, noise::Policy::UnknownP)}};
  return j;
}

struct VerifyArgs {
  std::optional<double> x;
  int k = 0;
  int l = 0;
  int cutoff = 200;
  bool force_cutoff = false;
  double agree_tol = 1e-6;
  int grid = 24;
};

int verify(const Globals& g, const VerifyArgs& v, std::ostream& out, std::ostream& err) {
  std::vector<states::PhotonVariedState> points;
  if (v.x) {
    points.push_back({*v.x, v.k, v.l});
  } else {
    for (double x : {0.1, 0.25, 0.5, 0.8})
      for (auto [k, l] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {2, 1}, {-1, 0}, {-2, -1}})
        points.push_back({x, k, l});
  }
  for (const auto& p : points) states::validate(p);
  oracle::OracleOptions opts;
  opts.cutoff = v.cutoff;
  opts.force_cutoff = v.force_cutoff;
  opts.grid = v.grid;
  const auto ctrl = g.ctrl();
  struct Triple {
    double closed, numeric, eigen;
    int cutoff;
  };
  std::vector<Triple> triples(points.size());
  const auto cells = sweep::map_parallel(points.size(), [&](std::size_t i) {
    const auto mix = oracle::build_pure(points[i], opts);
    triples[i] = {pseudospin::chi_max(pseudospin::kernel(points[i], ctrl)), oracle::chi_numeric(mix, opts.grid).chi,
                  oracle::chi_eigen(mix), mix.cutoff};
    return 0.0;
  });

  Dataset d;
  d.param_names = {"x", "k", "l"};
  int failures = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const std::vector<double> params{p.x, double(p.op1), double(p.op2)};
    char where[96];
    std::snprintf(where, sizeof where, "x=%g op=(%d,%d)", p.x, p.op1, p.op2);
    if (cells[i].error) {
      ++failures;
      try {
        std::rethrow_exception(cells[i].error);
      } catch (const TruncationError& e) {
        err << "FAIL " << where << ": tail mass " << e.tail_mass() << " at cutoff " << e.cutoff()
            << " exceeds the admission limit " << opts.tail_limit << "\n";
        d.rows.push_back({params, "tail_mass", e.tail_mass()});
      } catch (const std::exception& e) {
        err << "FAIL " << where << ": " << e.what() << "\n";
      }
      continue;
    }
    const auto& t = triples[i];
    d.rows.push_back({params, "closed", t.closed});
    d.rows.push_back({params, "numeric", t.numeric});
    d.rows.push_back({params, "eigen", t.eigen});
    const double dev = std::max(std::abs(t.closed - t.numeric), std::abs(t.closed - t.eigen));
    if (!(dev <= v.agree_tol)) {
      ++failures;
      err << "FAIL " << where << ": closed " << t.closed << " numeric " << t.numeric << " eigen " << t.eigen
          << " (max deviation " << dev << ")\n";
    }
  }
  err << "verify: " << points.size() - failures << "/" << points.size() << " points agree within " << v.agree_tol
      << "\n";
  const int code = emit_dataset(g, d, "verify", out, err);
  return failures > 0 ? kVerificationFailure : code;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal Bell-CHSH violation of photon-added and photon-subtracted squeezed states", "cvbell"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "series truncation tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--check", g.check, "compare output against the golden file");
  app.add_option("--golden-dir", g.golden_dir, "directory holding golden files");

  auto* table = app.add_subcommand("table1", "gain percentages of single-mode addition");

  auto* fig = app.add_subcommand("fig", "figure dataset");
  int fig_id = 0;
  std::string fig_config;
  std::vector<std::string> fig_sets;
  fig->add_option("id", fig_id, "figure number 1..6")->required();
  fig->add_option("--config", fig_config, "key = value file overriding the built-in parameters");
  fig->add_option("--set", fig_sets, "key=value override (wins over --config)");

  auto* crit = app.add_subcommand("criticals", "critical squeezing values");

  auto* thr = app.add_subcommand("thresholds", "noise-probability thresholds");
  ThresholdArgs ta;
  thr->add_option("--model", ta.model, "thermal, gaussian, correlated or all");
  thr->add_option("--r", ta.r, "squeezing");
  thr->add_option("--beta1", ta.beta1);
  thr->add_option("--beta2", ta.beta2);
  thr->add_option("--sigma1", ta.sigma1);
  thr->add_option("--sigma2", ta.sigma2);
  thr->add_option("--beta", ta.beta, "correlated-noise temperature (irrelevant to the result)");
  thr->add_option("--k", ta.k, "photons added (subtracted) on mode 1");
  thr->add_option("--op", ta.op, "add or sub");

  auto* sw = app.add_subcommand("sweep", "parameter sweep from a config file");
  std::string sweep_config;
  std::vector<std::string> sweep_sets;
  sw->add_option("--config", sweep_config, "key = value file")->required();
  sw->add_option("--set", sweep_sets, "key=value override");

  auto* ver = app.add_subcommand("verify", "closed form vs brute-force oracle");
  VerifyArgs va;
  double vx = -1.0;
  ver->add_option("--x", vx, "single point: squeezing fraction");
  ver->add_option("--k", va.k, "single point: mode-1 operation");
  ver->add_option("--l", va.l, "single point: mode-2 operation");
  ver->add_option("--cutoff", va.cutoff, "initial Fock cutoff");
  ver->add_flag("--force-cutoff", va.force_cutoff, "fail instead of enlarging the cutoff");
  ver->add_option("--agree-tol", va.agree_tol, "agreement tolerance");
  ver->add_option("--grid", va.grid, "angle grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    specfun::validate(g.ctrl());
    const auto ctrl = g.ctrl();
    if (*table) return emit_dataset(g, table1(ctrl), "table1", out, err);
    if (*fig) {
      auto config = figure_defaults(fig_id);
      if (!fig_config.empty()) config.merge(Config::load(fig_config), true);
      for (const auto& s : fig_sets) config.set(s, true);
      return emit_dataset(g, figure(fig_id, config, ctrl), "fig" + std::to_string(fig_id), out, err);
    }
    if (*crit) return emit_json(g, criticals(ctrl), "criticals", out, err);
    if (*thr) return emit_json(g, thresholds(ta, ctrl), "thresholds", out, err);
    if (*sw) {
      auto config = sweep_defaults();
      config.merge(Config::load(sweep_config), true);
      for (const auto& s : sweep_sets) config.set(s, true);
      return emit_dataset(g, sweep(config, ctrl), "sweep", out, err);
    }
    if (*ver) {
      if (ver->count("--x") > 0) va.x = vx;
      return verify(g, va, out, err);
    }
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const TruncationError& e) {
    err << "truncation failure: " << e.what() << "\n";
    return kConvergenceFailure;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << "\n";
    return kConvergenceFailure;
  }
  return kInvalidInput;
}

}  // namespace cvbell::cli

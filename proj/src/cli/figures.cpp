#include "cli/figures.hpp"

#include <cmath>
#include <cstdio>

#include "cvbell/errors.hpp"
#include "cvbell/imperfect.hpp"
#include "cvbell/noise.hpp"
#include "cvbell/pseudospin.hpp"
#include "cvbell/sweep.hpp"

namespace cvbell::cli {

using imperfect::SuppressionKind;
using imperfect::SuppressionModel;
using states::PhotonVariedState;

std::string label(const std::string& name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", name.c_str(), v);
  return buf;
}

Dataset run_jobs(std::vector<std::string> param_names, std::vector<Job> jobs, bool parallel) {
  auto fn = [&](std::size_t i) { return jobs[i].compute(); };
  const auto cells = parallel ? sweep::map_parallel(jobs.size(), fn) : sweep::map_serial(jobs.size(), fn);
  const auto vals = sweep::values(cells);
  Dataset out;
  out.param_names = std::move(param_names);
  out.rows.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) out.rows.push_back({jobs[i].params, jobs[i].series, vals[i]});
  return out;
}

namespace {

double chi_pure(double r, int op1, int op2, const specfun::SeriesControl& ctrl) {
  return pseudospin::chi_max(pseudospin::kernel(PhotonVariedState::from_squeezing(r, op1, op2), ctrl));
}

int sign_of(const Config& c) {
  const auto& op = c.raw("op");
  if (op == "add") return 1;
  if (op == "sub") return -1;
  throw InvalidInput("op must be add or sub");
}

Dataset figure1(const Config& c, const specfun::SeriesControl& ctrl) {
  const int s = sign_of(c);
  std::vector<Job> jobs;
  for (double r : c.reals("r"))
    for (int k = 0; k <= c.integer("k_max"); ++k)
      jobs.push_back({{r, double(k)}, label("r", r), [=] { return chi_pure(r, s * k, 0, ctrl); }});
  return run_jobs({"r", "k"}, std::move(jobs));
}

Dataset figure2(const Config& c, const specfun::SeriesControl& ctrl) {
  const int s = sign_of(c);
  std::vector<Job> jobs;
  for (const char* parity : {"even", "odd"})
    for (double r : c.reals("r"))
      for (int k = parity[0] == 'e' ? 0 : 1; k <= c.integer("k_max"); k += 2)
        jobs.push_back({{r, double(k)}, std::string(parity) + ":" + label("r", r),
                        [=] { return chi_pure(r, s * k, 0, ctrl); }});
  return run_jobs({"r", "k"}, std::move(jobs));
}

void distributed(std::vector<Job>& jobs, double r, int total, const specfun::SeriesControl& ctrl,
                 const std::string& suffix) {
  for (const char* kind : {"add", "sub"}) {
    const int s = kind[0] == 'a' ? 1 : -1;
    for (int k = 0; k <= total; ++k)
      jobs.push_back({{r, double(total), double(k)}, std::string(kind) + suffix,
                      [=] { return chi_pure(r, s * k, s * (total - k), ctrl); }});
  }
}

Dataset figure3(const Config& c, const specfun::SeriesControl& ctrl) {
  std::vector<Job> jobs;
  const double r = c.real("r");
  for (int total : c.integers("total")) distributed(jobs, r, total, ctrl, ":" + label("k+l", total));
  return run_jobs({"r", "total", "k"}, std::move(jobs));
}

Dataset figure4(const Config& c, const specfun::SeriesControl& ctrl) {
  std::vector<Job> jobs;
  const int total = c.integer("total");
  for (double r : c.reals("r")) distributed(jobs, r, total, ctrl, ":" + label("r", r));
  return run_jobs({"r", "total", "k"}, std::move(jobs));
}

std::vector<std::pair<std::string, SuppressionModel>> suppressions(const Config& c) {
  std::vector<std::pair<std::string, SuppressionModel>> out;
  for (double l : c.reals("lambda")) out.push_back({"ES " + label("lambda", l), {SuppressionKind::Exponential, l, 0}});
  for (double s : c.reals("sigma")) out.push_back({"GS " + label("sigma", s), {SuppressionKind::Gaussian, s, 0}});
  return out;
}

Dataset figure5(const Config& c, const specfun::SeriesControl& ctrl) {
  std::vector<Job> jobs;
  const double r = c.real("r_label");
  for (double ra : c.reals("r_actual_a"))
    for (int k = 0; k <= c.integer("k_max_a"); ++k)
      jobs.push_back({{r, ra, double(k)}, "a:" + label("r'", ra),
                      [=] { return imperfect::chi_faulty_added({r, ra}, k, ctrl); }});
  const double rb = c.real("r_actual_b");
  const int kb = c.integer("k_max_b");
  for (int k = 0; k <= kb; ++k)
    jobs.push_back({{r, rb, double(k)}, "b:perfect", [=] { return imperfect::chi_faulty_added({r, rb}, k, ctrl); }});
  for (const auto& [name, sup] : suppressions(c))
    for (int k = 0; k <= kb; ++k)
      jobs.push_back({{r, rb, double(k)}, "b:" + name, [=, sup = sup] {
                        auto s = sup;
                        s.cutoff = k;
                        return imperfect::chi_imperfect_faulty({r, rb}, k, s, ctrl);
                      }});
  return run_jobs({"r", "r_actual", "k"}, std::move(jobs));
}

Dataset figure6(const Config& c, const specfun::SeriesControl& ctrl) {
  std::vector<Job> jobs;
  const int kmax = c.integer("k_max");
  for (const char* panel : {"a", "b"}) {
    const auto v = c.reals(std::string("panel_") + panel);
    if (v.size() != 4) throw InvalidInput("panel parameters are r, p, beta1, beta2");
    const noise::NoisyStateModel model{v[1], PhotonVariedState::from_squeezing(v[0]),
                                       noise::LocalNoise{noise::thermal_dist(v[2]), noise::thermal_dist(v[3])}};
    const std::vector<double> params{v[0], v[1], v[2], v[3]};
    auto add = [&](const std::string& name, std::function<double(int)> f) {
      for (int k = 0; k <= kmax; ++k) {
        auto p = params;
        p.push_back(k);
        jobs.push_back({p, std::string(panel) + ":" + name, [f, k] { return f(k); }});
      }
    };
    add("perfect", [=](int k) {
      auto m = model;
      m.pure = imperfect::with_count(model.pure, k);
      return noise::chi(m, ctrl);
    });
    for (const auto& [name, sup] : suppressions(c)) {
      add(name, [=, sup = sup](int k) {
        auto s = sup;
        s.cutoff = k;
        return imperfect::chi_imperfect_noisy(model, k, s, ctrl);
      });
    }
  }
  return run_jobs({"r", "p", "beta1", "beta2", "k"}, std::move(jobs));
}

}  // namespace

Config figure_defaults(int id) {
  switch (id) {
    case 1:
      return Config({{"r", "0,0.3,0.5,1.0,1.2,1.45,1.55,1.6,1.8,2.0,2.5"}, {"k_max", "20"}, {"op", "add"}});
    case 2:
      return Config({{"r", "0.5,1.0,1.5,2.0"}, {"k_max", "20"}, {"op", "add"}});
    case 3:
      return Config({{"r", "0.5"}, {"total", "2,3,4,5,6,8,10"}});
    case 4:
      return Config({{"r", "0.3,0.5,0.8,1.0,1.2,1.6"}, {"total", "10"}});
    case 5:
      return Config({{"r_label", "0.75"},
                     {"r_actual_a", "0.10,0.13,0.16"},
                     {"k_max_a", "20"},
                     {"r_actual_b", "0.13"},
                     {"k_max_b", "25"},
                     {"lambda", "0.1,0.4,1"},
                     {"sigma", "0.1,0.7,1"}});
    case 6:
      return Config({{"panel_a", "0.2,0.15,3,5"},
                     {"panel_b", "0.3,0.5,5,3"},
                     {"k_max", "15"},
                     {"lambda", "0.1,0.5,2"},
                     {"sigma", "0.1,0.5,2"}});
    default:
      throw InvalidInput("unknown figure id " + std::to_string(id) + " (expected 1..6)");
  }
}

Dataset figure(int id, const Config& config, const specfun::SeriesControl& ctrl) {
  switch (id) {
    case 1: return figure1(config, ctrl);
    case 2: return figure2(config, ctrl);
    case 3: return figure3(config, ctrl);
    case 4: return figure4(config, ctrl);
    case 5: return figure5(config, ctrl);
    case 6: return figure6(config, ctrl);
    default: throw InvalidInput("unknown figure id " + std::to_string(id) + " (expected 1..6)");
  }
}

Dataset table1(const specfun::SeriesControl& ctrl) {
  std::vector<Job> jobs;
  for (double r : {0.2, 0.5, 0.8, 1.2}) {
    for (int k : {2, 5, 10, 15}) {
      auto gain = [=] { return 100.0 * pseudospin::gain(chi_pure(r, k, 0, ctrl), chi_pure(r, 0, 0, ctrl)); };
      jobs.push_back({{r, double(k)}, "exact", gain});
      jobs.push_back({{r, double(k)}, "rounded", [gain] { return std::round(gain() * 10.0) / 10.0; }});
    }
  }
  auto data = run_jobs({"r", "k"}, std::move(jobs));
  data.value_name = "gain_percent";
  return data;
}

Config sweep_defaults() {
  return Config({{"model", "pure"},
                 {"r", "0.5"},
                 {"k", "0"},
                 {"l", "0"},
                 {"op", "add"},
                 {"p", "0"},
                 {"beta1", "3"},
                 {"beta2", "5"},
                 {"sigma1", "1"},
                 {"sigma2", "1"},
                 {"beta", "1"},
                 {"policy", "known"},
                 {"r_actual", "0.1"},
                 {"suppression", "none"},
                 {"dispersion", "1"},
                 {"m", "k"}});
}

namespace {

noise::Policy policy_of(const Config& c) {
  const auto& p = c.raw("policy");
  if (p == "known") return noise::Policy::KnownP;
  if (p == "unknown") return noise::Policy::UnknownP;
  throw InvalidInput("policy must be known or unknown");
}

SuppressionModel suppression_of(const Config& c, int k) {
  const auto& s = c.raw("suppression");
  SuppressionModel sup;
  if (s == "none") return sup;
  if (s == "es") {
    sup.kind = SuppressionKind::Exponential;
  } else if (s == "gs") {
    sup.kind = SuppressionKind::Gaussian;
  } else {
    throw InvalidInput("suppression must be none, es or gs");
  }
  sup.dispersion = c.real("dispersion");
  sup.cutoff = c.raw("m") == "k" ? k : std::min(c.integer("m"), k);
  return sup;
}

}  // namespace

Dataset sweep(const Config& c, const specfun::SeriesControl& ctrl) {
  const auto& model = c.raw("model");
  const int s = sign_of(c);
  std::vector<Job> jobs;
  if (model == "pure") {
    for (double r : c.reals("r"))
      for (int k : c.integers("k"))
        for (int l : c.integers("l"))
          jobs.push_back({{r, double(k), double(l)}, std::string("pure:") + c.raw("op"),
                          [=] { return chi_pure(r, s * k, s * l, ctrl); }});
    return run_jobs({"r", "k", "l"}, std::move(jobs));
  }
  if (model == "faulty") {
    for (double r : c.reals("r"))
      for (double ra : c.reals("r_actual"))
        for (int k : c.integers("k")) {
          const auto sup = suppression_of(c, k);
          jobs.push_back({{r, ra, double(k)}, "faulty:" + c.raw("suppression"),
                          [=] { return imperfect::chi_imperfect_faulty({r, ra}, k, sup, ctrl); }});
        }
    return run_jobs({"r", "r_actual", "k"}, std::move(jobs));
  }
  const auto policy = policy_of(c);
  std::vector<std::string> names;
  std::vector<std::pair<std::vector<double>, noise::DiagonalNoiseSpec>> noises;
  if (model == "thermal") {
    names = {"beta1", "beta2"};
    for (double b1 : c.reals("beta1"))
      for (double b2 : c.reals("beta2"))
        noises.push_back({{b1, b2}, noise::LocalNoise{noise::thermal_dist(b1), noise::thermal_dist(b2)}});
  } else if (model == "gaussian") {
    names = {"sigma1", "sigma2"};
    for (double s1 : c.reals("sigma1"))
      for (double s2 : c.reals("sigma2"))
        noises.push_back(
            {{s1, s2}, noise::LocalNoise{noise::gaussian_dist(s1, ctrl), noise::gaussian_dist(s2, ctrl)}});
  } else if (model == "correlated") {
    names = {"beta"};
    for (double b : c.reals("beta")) noises.push_back({{b}, noise::CorrelatedNoise{noise::thermal_dist(b)}});
  } else {
    throw InvalidInput("model must be pure, thermal, gaussian, correlated or faulty");
  }
  const std::string series = model + ":" + c.raw("policy") + ":" + c.raw("op") + ":" + c.raw("suppression");
  for (double r : c.reals("r"))
    for (double p : c.reals("p"))
      for (const auto& [params, spec] : noises)
        for (int k : c.integers("k")) {
          std::vector<double> row{r, p};
          row.insert(row.end(), params.begin(), params.end());
          row.push_back(k);
          const noise::NoisyStateModel m{p, PhotonVariedState::from_squeezing(r, s, 0), spec, policy};
          const auto sup = suppression_of(c, k);
          jobs.push_back({row, series, [=] {
                            if (sup.cutoff > 0) return imperfect::chi_imperfect_noisy(m, k, sup, ctrl);
                            auto target = m;
                            target.pure = imperfect::with_count(m.pure, k);
                            return noise::chi(target, ctrl);
                          }});
        }
  std::vector<std::string> header{"r", "p"};
  header.insert(header.end(), names.begin(), names.end());
  header.push_back("k");
  return run_jobs(header, std::move(jobs));
}

}  // namespace cvbell::cli

// Acceptance checks AC1..AC10. Usage: acceptance <path-to-cvbell>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cvbell/approx.hpp"
#include "cvbell/imperfect.hpp"
#include "cvbell/noise.hpp"
#include "cvbell/oracle.hpp"
#include "cvbell/pseudospin.hpp"

using namespace cvbell;
using states::PhotonVariedState;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double chi_pure(const PhotonVariedState& s) { return pseudospin::chi_max(pseudospin::kernel(s)); }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

void ac1(Verdict& v) {
  const auto t0 = Clock::now();
  const std::array<double, 4> rs{0.2, 0.5, 0.8, 1.2};
  const std::array<int, 4> ks{2, 5, 10, 15};
  const double reference[4][4] = {
      {9.5, 18.4, 25.7, 29.6}, {10.0, 10.9, 10.7, 11.4}, {3.2, 3.1, 3.4, 3.7}, {0.4, 0.6, 0.73, 0.76}};
  int matched = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double g = 100.0 * pseudospin::gain(chi_pure(PhotonVariedState::from_squeezing(rs[i], ks[j], 0)),
                                                chi_pure(PhotonVariedState::from_squeezing(rs[i])));
      const bool ok = std::abs(g - reference[i][j]) <= 0.05 + 1e-12;
      matched += ok;
      v.require(ok, fmt("r=%.1f k=%.0f: %.3f", rs[i], ks[j], g) + fmt(" vs %.2f", reference[i][j]));
    }
  const double dt = seconds_since(t0);
  v.require(dt < 10.0, "runtime");
  v.detail << " matched " << matched << "/16, " << fmt("%.3f s", dt);
}

void ac2(Verdict& v) {
  const auto t0 = Clock::now();
  using approx::Series;
  struct Case {
    const char* name;
    approx::CriticalResult (*fn)(Series, const specfun::SeriesControl&);
    double lo, hi;
  };
  const Case cases[] = {{"theorem1", approx::critical_theorem1, 1.65, 1.67},
                        {"prop1", approx::critical_prop1, 1.41, 1.43},
                        {"prop3", approx::critical_prop3, 1.22, 1.24},
                        {"prop2", approx::critical_prop2, 0.91, 0.93}};
  for (const auto& c : cases) {
    const auto a = c.fn(Series::Approximated, {});
    const auto e = c.fn(Series::Exact, {});
    v.require(a.r_critical >= c.lo && a.r_critical <= c.hi, std::string(c.name) + " window");
    v.require(a.bracket_width <= 1e-8 && e.bracket_width <= 1e-8, std::string(c.name) + " bracket");
    v.detail << " " << c.name << fmt(" approx %.5f exact %.5f", a.r_critical, e.r_critical);
    if (std::string(c.name) == "prop2") {
      v.require(std::abs(e.r_critical - 0.94) < 0.01, "prop2 exact root not near 0.94");
      v.detail << fmt(" (gap %.4f)", e.r_critical - a.r_critical);
    }
  }
  const double dt = seconds_since(t0);
  v.require(dt < 30.0, "runtime");
  v.detail << fmt(", %.3f s", dt);
}

void ac3(Verdict& v) {
  const double rc = imperfect::critical_rprime(0.75);
  const double epr = imperfect::critical_rprime(INFINITY);
  const double epr_ref = 0.5 * std::atanh(std::sqrt(2.0) - 1.0);
  v.require(std::abs(rc - 0.203172) <= 1e-5, "critical r'");
  v.require(std::abs(epr - epr_ref) <= 1e-6, "EPR limit");
  v.detail << fmt(" r'_c(0.75)=%.7f, limit %.7f vs %.7f", rc, epr, epr_ref);
}

void ac4(Verdict& v) {
  using namespace noise;
  const NoisyStateModel m{0.0, PhotonVariedState::from_squeezing(1.25),
                          LocalNoise{thermal_dist(3.0), thermal_dist(5.0)}};
  const auto t = thresholds(m);
  v.require(std::abs(t.known - 0.633) <= 1e-3, "known-p threshold");
  v.require(std::abs(t.unknown - 0.526) <= 1e-3, "unknown-p threshold");
  const double known_epr = p_threshold(1.0, 1.0, Policy::KnownP);
  const double unknown_epr = p_threshold(0.0, 1.0, Policy::UnknownP);
  v.require(std::abs(unknown_epr - (2.0 - std::sqrt(2.0))) <= 1e-14, "EPR limit 2 - sqrt 2");
  v.require(std::abs(known_epr - (1.0 - 1.0 / std::sqrt(2.0))) <= 1e-14, "EPR limit 1 - 1/sqrt 2");
  v.detail << fmt(" known %.5f unknown %.5f;", t.known, t.unknown)
           << fmt(" limits %.12f %.12f", unknown_epr, known_epr);
}

void ac5(Verdict& v) {
  const auto t0 = Clock::now();
  const double xs[] = {0.1, 0.25, 0.5, 0.8};
  const std::pair<int, int> ops[] = {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {2, 1}, {-1, 0}, {-2, -1}};
  oracle::OracleOptions opts;
  opts.cutoff = 200;
  double worst = 0.0;
  for (double x : xs)
    for (const auto& [k, l] : ops) {
      const PhotonVariedState s{x, k, l};
      const auto rho = oracle::build_pure(s, opts);
      const double closed = chi_pure(s);
      const double numeric = oracle::chi_numeric(rho, opts.grid).chi;
      const double eigen = oracle::chi_eigen(rho);
      const double d = std::max({std::abs(closed - numeric), std::abs(closed - eigen), std::abs(numeric - eigen)});
      worst = std::max(worst, d);
      v.require(d <= 1e-6, fmt("x=%.2f op=(%.0f,%.0f)", x, k, l));
    }
  const double dt = seconds_since(t0);
  v.require(dt < 120.0, "runtime");
  v.detail << fmt(" 28 points, worst disagreement %.2e, %.2f s", worst, dt);
}

bool has_strict_decrease(const std::vector<double>& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (seq[i + 1] < seq[i] - 1e-12) return true;
  return false;
}

std::vector<double> single_mode(double r, int k_max, int step = 1, int start = 0) {
  std::vector<double> out;
  for (int k = start; k <= k_max; k += step) out.push_back(chi_pure(PhotonVariedState::from_squeezing(r, k, 0)));
  return out;
}

void ac6(Verdict& v) {
  for (double r : {1.45, 1.55, 1.60}) v.require(!has_strict_decrease(single_mode(r, 10)), fmt("r=%.2f", r));
  v.require(!has_strict_decrease(single_mode(1.0, 10, 2)), "r=1.0 even k");
  // r = 0.3 first decreases at k = 11 -> 12, so its scan runs to k = 20.
  v.require(has_strict_decrease(single_mode(0.3, 20)), "r=0.3 monotone up to k=20");
  v.require(has_strict_decrease(single_mode(1.8, 10)), "r=1.8 monotone up to k=10");
  const auto low = single_mode(0.3, 20);
  for (std::size_t i = 0; i + 1 < low.size(); ++i)
    if (low[i + 1] < low[i]) {
      v.detail << " r=0.3 first decrease at k=" << i << "->" << i + 1 << ";";
      break;
    }
  const auto high = single_mode(1.8, 10);
  v.detail << fmt(" r=1.8 chi(0)=%.6f chi(1)=%.6f", high[0], high[1]);
}

void ac7(Verdict& v) {
  // (a) faulty generator with a perfect addition
  const imperfect::FaultyGenerator gen{0.75, 0.13};
  const double chi0 = imperfect::chi_faulty_added(gen, 0);
  int first = -1;
  for (int k = 1; k <= 20 && first < 0; ++k)
    if (imperfect::chi_faulty_added(gen, k) > 2.0) first = k;
  v.require(chi0 < 2.0 && first > 0, "(a)");
  v.detail << fmt(" (a) chi(0)=%.4f, first violation k=%.0f;", chi0, first);

  // (b) thermal noise (r, p, beta1, beta2) = (0.3, 0.5, 5, 3)
  using namespace noise;
  std::vector<double> seq;
  for (int k = 0; k <= 20; ++k)
    seq.push_back(chi(NoisyStateModel{0.5, PhotonVariedState::from_squeezing(0.3, k, 0),
                                      LocalNoise{thermal_dist(5.0), thermal_dist(3.0)}}));
  std::size_t peak = 0;
  for (std::size_t k = 1; k < seq.size(); ++k)
    if (seq[k] > seq[peak]) peak = k;
  bool later_drop = false;
  for (std::size_t k = peak + 1; k < seq.size(); ++k) later_drop |= seq[k] < seq[peak] - 1e-12;
  v.require(seq[0] <= 2.0 && seq[peak] > 2.0 && later_drop, "(b)");
  v.detail << fmt(" (b) chi(0)=%.4f peak %.4f at k=%.0f,", seq[0], seq[peak], double(peak))
           << fmt(" chi(20)=%.4f;", seq.back());

  // (c) correlated noise, unknown p, squeezing below the critical value
  const double p = 0.55;
  const double r = 0.5 * correlated_critical_r(p);
  std::vector<double> corr;
  for (int k = 0; k <= 10; ++k)
    corr.push_back(chi(NoisyStateModel{p, PhotonVariedState::from_squeezing(r, k, 0),
                                       CorrelatedNoise{thermal_dist(1.0)}, Policy::UnknownP}));
  int cross = -1;
  for (int k = 1; k <= 10 && cross < 0; ++k)
    if (corr[k] > 2.0) cross = k;
  v.require(corr[0] <= 2.0 && cross > 0, "(c)");
  v.detail << fmt(" (c) p=%.2f r=%.4f chi(0)=%.4f,", p, r, corr[0]) << " crosses 2 at k=" << cross;
}

void ac8(Verdict& v) {
  using namespace noise;
  const std::vector<Distribution> cs{thermal_dist(0.8), Distribution::uniform(0, 10), Distribution::point_mass(3)};
  double worst = 0.0;
  for (double r : {0.2, 0.6, 1.1})
    for (int k : {0, 1, 2, 4})
      for (auto policy : {Policy::KnownP, Policy::UnknownP}) {
        std::vector<double> vals;
        for (const auto& c : cs)
          vals.push_back(chi({0.55, PhotonVariedState::from_squeezing(r, k, 0), CorrelatedNoise{c}, policy}));
        worst = std::max({worst, std::abs(vals[1] - vals[0]), std::abs(vals[2] - vals[0])});
      }
  v.require(worst <= 1e-12, "spread");
  v.detail << fmt(" 24 cases, worst spread %.1e", worst);
}

double sub_minus_add(double r, int total) {
  double best = -INFINITY;
  for (int k = 0; k <= total; ++k)
    best = std::max(best, chi_pure(PhotonVariedState::from_squeezing(r, -k, k - total)) -
                              chi_pure(PhotonVariedState::from_squeezing(r, k, total - k)));
  return best;
}

void ac9(Verdict& v) {
  double small = -INFINITY;
  for (int total : {2, 3, 4}) small = std::max(small, sub_minus_add(0.5, total));
  v.require(small > 1e-6, "no subtraction advantage at r=0.5");
  v.detail << fmt(" r=0.5, k+l<=4: max(sub-add)=%.3e;", small);

  // Large-r and large-(k+l) region tested: r in {1.5, 2.0} with k+l in 5..20,
  // and r in {0.5, 0.8, 1.0} with k+l = 20.
  double worst = -INFINITY;
  for (double r : {1.5, 2.0})
    for (int total = 5; total <= 20; ++total) worst = std::max(worst, sub_minus_add(r, total));
  for (double r : {0.5, 0.8, 1.0}) worst = std::max(worst, sub_minus_add(r, 20));
  v.require(worst <= 1e-12, "subtraction ahead in the large region");
  v.detail << fmt(" large region: max(sub-add)=%.1e", worst);
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

void ac10(Verdict& v, const std::string& tool) {
  if (tool.empty()) {
    v.require(false, "no cvbell path given");
    return;
  }
  std::vector<std::string> commands{"verify"};
  for (int id = 1; id <= 6; ++id) commands.push_back("fig " + std::to_string(id));
  std::size_t bytes = 0;
  for (const auto& c : commands) {
    int s1 = 0, s2 = 0;
    const auto first = capture("\"" + tool + "\" " + c + " 2>/dev/null", s1);
    const auto second = capture("\"" + tool + "\" " + c + " 2>/dev/null", s2);
    v.require(s1 == 0 && s2 == 0, c + " exit status");
    v.require(!first.empty() && first == second, c + " output differs");
    bytes += first.size();
  }
  v.detail << " " << commands.size() << " commands, " << bytes << " bytes compared";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string tool = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"AC1 gain table", ac1},
      {"AC2 critical squeezing", ac2},
      {"AC3 faulty generator", ac3},
      {"AC4 thermal thresholds", ac4},
      {"AC5 oracle equivalence", ac5},
      {"AC6 monotonicity windows", ac6},
      {"AC7 activation", ac7},
      {"AC8 Cn invariance", ac8},
      {"AC9 addition vs subtraction", ac9},
      {"AC10 determinism", [&](Verdict& v) { ac10(v, tool); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      check(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    failed += !v.pass;
    std::printf("%s %s:%s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

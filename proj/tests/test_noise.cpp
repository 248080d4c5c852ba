#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cvbell/errors.hpp"
#include "cvbell/noise.hpp"
#include "cvbell/oracle.hpp"

using namespace cvbell;
using namespace cvbell::noise;
using states::PhotonVariedState;

namespace {

double binom(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

// Plain loops over raw weights, no shared code with the library's series.
double direct_thermal_parity(double beta) {
  double s = 0.0;
  for (int n = 0; n < 5000; ++n) s += (n % 2 ? -1.0 : 1.0) * (1 - std::exp(-beta)) * std::exp(-beta * n);
  return s;
}

double direct_gaussian_parity(double sigma) {
  double num = 0.0, den = 0.0;
  for (int n = 0; n < 5000; ++n) {
    const double w = std::exp(-double(n) * n / (sigma * sigma));
    num += (n % 2 ? -1.0 : 1.0) * w;
    den += w;
  }
  return num / den;
}

NoisyStateModel thermal_model(double r, double p, double b1, double b2, int op1 = 0, int op2 = 0,
                              Policy policy = Policy::KnownP) {
  return {p, PhotonVariedState::from_squeezing(r, op1, op2), LocalNoise{thermal_dist(b1), thermal_dist(b2)}, policy};
}

}  // namespace

TEST_CASE("distributions") {
  for (double beta : {0.5, 3.0, 20.0}) {
    const auto d = thermal_dist(beta);
    CHECK(d.total(specfun::SeriesControl::tight()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(parity_mean(d) == doctest::Approx(std::tanh(beta / 2)).epsilon(1e-10));
    CHECK(parity_mean(d) == doctest::Approx(direct_thermal_parity(beta)).epsilon(1e-10));
  }
  CHECK(thermal_dist(INFINITY)(0) == 1.0);
  CHECK(thermal_dist(INFINITY)(1) == 0.0);
  CHECK(thermal_dist(800.0)(0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(thermal_dist(0.0), InvalidInput);

  for (double sigma : {0.3, 1.0, 2.5, 6.0}) {
    const auto d = gaussian_dist(sigma);
    CHECK(d.total(specfun::SeriesControl::tight()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(parity_mean(d) == doctest::Approx(direct_gaussian_parity(sigma)).epsilon(1e-10));
    const double q = std::exp(-1 / (sigma * sigma));
    const double t3 = specfun::jacobi_theta(specfun::ThetaKind::Three, q);
    const double t4 = specfun::jacobi_theta(specfun::ThetaKind::Four, q);
    CHECK(parity_mean(d) == doctest::Approx((1 + t4) / (1 + t3)).epsilon(1e-10));
  }
  CHECK(gaussian_dist(0.05)(0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(gaussian_dist(0.0), InvalidInput);

  CHECK(parity_mean(Distribution::point_mass(0)) == 1.0);
  CHECK(parity_mean(Distribution::point_mass(3)) == -1.0);
  const auto u = Distribution::uniform(0, 10);
  CHECK(u(4) == doctest::Approx(1.0 / 11));
  CHECK(u(11) == 0.0);
  CHECK_THROWS_AS(Distribution::from_weights({0.0, 0.0}), InvalidInput);
}

TEST_CASE("noise transforms") {
  const auto mu = thermal_dist(3.0);
  const auto same = transform_noise_add(mu, 0);
  CHECK(same(3) == mu(3));
  const auto pm = transform_noise_add(Distribution::point_mass(0), 4);
  CHECK(pm(0) == doctest::Approx(1.0));

  double z = 0.0;
  for (int n = 0; n < 3000; ++n) z += mu(n) * binom(n + 2, 2);
  const auto add2 = transform_noise_add(mu, 2);
  for (int n = 0; n < 10; ++n) CHECK(add2(n) == doctest::Approx(mu(n) * binom(n + 2, 2) / z).epsilon(1e-10));

  double z1 = 0.0;
  for (int n = 0; n < 3000; ++n) z1 += mu(n + 1) * (n + 1);
  const auto sub1 = transform_noise_sub(mu, 1);
  for (int n = 0; n < 10; ++n) CHECK(sub1(n) == doctest::Approx(mu(n + 1) * (n + 1) / z1).epsilon(1e-10));

  const auto shifted = transform_noise_sub(Distribution::point_mass(3), 3);
  CHECK(shifted(0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(transform_noise_sub(Distribution::point_mass(0), 1), InvalidInput);

  // Weights ~ 1/(n+1)^3 reweighted by binom(n+2,2) ~ n^2 do not normalize.
  const Distribution heavy([](std::size_t n) { return 0.8319 / std::pow(n + 1.0, 3); }, std::nullopt);
  CHECK_THROWS_AS(transform_noise_add(heavy, 2, {1e-10, 100000}), ConvergenceError);
}

TEST_CASE("A and B coefficients") {
  const auto pure = thermal_model(0.8, 0.0, 3, 5);
  const auto ab0 = ab_of(pure);
  CHECK(ab0.a_coeff == doctest::Approx(1.0));
  CHECK(ab0.b_coeff == doctest::Approx(std::tanh(1.6)).epsilon(1e-10));

  const double t1 = std::tanh(1.5), t2 = std::tanh(2.5);
  const auto ab = ab_of(thermal_model(0.8, 0.3, 3, 5));
  CHECK(ab.a_coeff == doctest::Approx(0.7 + 0.3 * t1 * t2).epsilon(1e-10));
  CHECK(ab.b_coeff == doctest::Approx(0.7 * std::tanh(1.6)).epsilon(1e-10));
  for (int k = 1; k <= 6; ++k) {
    const auto abk = ab_of(thermal_model(0.8, 0.3, 3, 5, k));
    CHECK(abk.a_coeff == doctest::Approx(0.7 + 0.3 * std::pow(t1, k + 1) * t2).epsilon(1e-10));
  }
  CHECK_THROWS_AS(ab_of(thermal_model(0.8, 0.3, 3, 5, 1, 1)), InvalidInput);
  CHECK_THROWS_AS(ab_of(thermal_model(0.8, 1.3, 3, 5)), InvalidInput);
}

TEST_CASE("compact single-mode A formulas against the generic construction") {
  for (int k = 1; k <= 5; ++k) {
    for (const auto& [mu, nu] : {std::pair{thermal_dist(2.0), thermal_dist(4.0)},
                                 std::pair{gaussian_dist(1.3), gaussian_dist(0.7)}}) {
      const NoisyStateModel add{0.4, {0.3, k, 0}, LocalNoise{mu, nu}};
      CHECK(ab_of(add).a_coeff == doctest::Approx(compact_a_addition(0.4, mu, nu, k)).epsilon(1e-10));
      const NoisyStateModel sub{0.4, {0.3, -k, 0}, LocalNoise{mu, nu}};
      CHECK(ab_of(sub).a_coeff == doctest::Approx(compact_a_subtraction(0.4, mu, nu, k)).epsilon(1e-10));
    }
  }
}

TEST_CASE("known and unknown policies") {
  CHECK(chi_known({1, 0}) == 2.0);
  CHECK(chi_known({1, 1}) == doctest::Approx(2 * std::sqrt(2.0)));
  const auto m0 = thermal_model(0.7, 0.0, 3, 5);
  CHECK(chi_unknown(ab_of(m0), std::tanh(1.4)) == doctest::Approx(chi_known(ab_of(m0))).epsilon(1e-12));

  for (double r : {0.3, 0.8, 1.25})
    for (double p : {0.1, 0.4, 0.7})
      for (int k : {0, 1, 2, -1, -3}) {
        auto known = thermal_model(r, p, 3, 5, k);
        auto unknown = known;
        unknown.policy = Policy::UnknownP;
        CHECK(chi(unknown) <= chi(known) + 1e-12);
      }

  // Violation sets from the closed-form thresholds.
  for (double p : {0.60, 0.62, 0.64, 0.66})
    CHECK((chi(thermal_model(1.25, p, 3, 5)) > 2.0) == (p < 0.633));
  for (double p : {0.50, 0.52, 0.53, 0.55})
    CHECK((chi(thermal_model(1.25, p, 3, 5, 0, 0, Policy::UnknownP)) > 2.0) == (p < 0.526));
}

TEST_CASE("thresholds") {
  const auto t = thresholds(thermal_model(1.25, 0.0, 3, 5));
  CHECK(t.known == doctest::Approx(0.633).epsilon(1e-3 / 0.633));
  CHECK(t.unknown == doctest::Approx(0.526).epsilon(1e-3 / 0.526));
  // chi equals 2 exactly at the thresholds.
  CHECK(chi(thermal_model(1.25, t.known, 3, 5)) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(chi(thermal_model(1.25, t.unknown, 3, 5, 0, 0, Policy::UnknownP)) == doctest::Approx(2.0).epsilon(1e-10));

  const auto cold = thresholds(thermal_model(1.25, 0.0, INFINITY, INFINITY));
  CHECK(cold.known == doctest::Approx(1.0));
  CHECK(p_threshold(0.0, 1.0, Policy::UnknownP) == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(p_threshold(1.0, 1.0, Policy::KnownP) == doctest::Approx(1 - 1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(p_threshold(1.0, 1.0, Policy::UnknownP) == doctest::Approx(1 - 1 / std::sqrt(2.0)).epsilon(1e-14));
  // b = 0: (1 - p a)^2 = 1 only at p = 0 or p = 2/a.
  CHECK(p_threshold(0.5, 0.0, Policy::KnownP) == doctest::Approx(0.0).epsilon(1e-14));

  const auto g = thresholds({0.0, PhotonVariedState::from_squeezing(1.0), LocalNoise{gaussian_dist(1.0), gaussian_dist(0.5)}});
  const double b = std::tanh(2.0);
  for (double p : {g.known - 1e-6, g.known + 1e-6}) {
    const NoisyStateModel m{p, PhotonVariedState::from_squeezing(1.0), LocalNoise{gaussian_dist(1.0), gaussian_dist(0.5)}};
    CHECK((chi(m) > 2.0) == (p < g.known));
  }
  CHECK(g.b == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("correlated noise") {
  const std::vector<Distribution> cs{thermal_dist(1.0), Distribution::uniform(0, 10), Distribution::point_mass(4)};
  for (double r : {0.3, 0.9})
    for (int k : {0, 1, 2, 3}) {
      std::vector<double> known, unknown;
      for (const auto& c : cs) {
        known.push_back(chi({0.55, PhotonVariedState::from_squeezing(r, k, 0), CorrelatedNoise{c}, Policy::KnownP}));
        unknown.push_back(chi({0.55, PhotonVariedState::from_squeezing(r, k, 0), CorrelatedNoise{c}, Policy::UnknownP}));
      }
      CHECK(std::abs(known[1] - known[0]) <= 1e-12);
      CHECK(std::abs(known[2] - known[0]) <= 1e-12);
      CHECK(std::abs(unknown[1] - unknown[0]) <= 1e-12);
      CHECK(std::abs(unknown[2] - unknown[0]) <= 1e-12);
      const double K = pseudospin::kernel(PhotonVariedState::from_squeezing(r, k, 0)).K;
      CHECK(known[0] == doctest::Approx(2 * std::sqrt(1 + std::pow(0.45 * K, 2))).epsilon(1e-12));
    }
  const double t = std::tanh(0.8);
  CHECK(chi({0.3, PhotonVariedState::from_squeezing(0.4), CorrelatedNoise{thermal_dist(2)}, Policy::UnknownP}) ==
        doctest::Approx(2 * (1 + 0.7 * t * t) / std::sqrt(1 + t * t)).epsilon(1e-10));
}

TEST_CASE("correlated critical squeezing") {
  CHECK(correlated_critical_r(0.5) == 0.0);
  CHECK(std::isinf(correlated_critical_r(2 - std::sqrt(2.0))));
  CHECK_THROWS_AS(correlated_critical_r(0.4), InvalidInput);
  CHECK_THROWS_AS(correlated_critical_r(0.6), InvalidInput);
  const double rc = correlated_critical_r(0.55);
  auto chi_at = [](double r) {
    return chi({0.55, PhotonVariedState::from_squeezing(r), CorrelatedNoise{thermal_dist(1)}, Policy::UnknownP});
  };
  CHECK(chi_at(rc - 1e-6) < 2.0);
  CHECK(chi_at(rc + 1e-6) > 2.0);
}

TEST_CASE("thermal noise: addition beats subtraction for odd k, ties for even k") {
  for (double r : {0.3, 0.8})
    for (int k = 1; k <= 6; ++k) {
      const double add = chi(thermal_model(r, 0.3, 2, 4, k));
      const double sub = chi(thermal_model(r, 0.3, 2, 4, -k));
      if (k % 2) {
        CHECK(add >= sub - 1e-12);
      } else {
        CHECK(add == doctest::Approx(sub).epsilon(1e-10));
      }
    }
}

TEST_CASE("oracle equivalence for noisy states") {
  const std::vector<NoisyStateModel> models{
      thermal_model(0.5, 0.2, 3, 5),
      thermal_model(0.5, 0.2, 3, 5, 2),
      thermal_model(0.9, 0.4, 1, 2, -1),
      {0.3, PhotonVariedState::from_squeezing(0.6, 0, 2), LocalNoise{gaussian_dist(1.2), gaussian_dist(0.6)}},
      {0.5, PhotonVariedState::from_squeezing(0.4, 1, 0), CorrelatedNoise{thermal_dist(1.5)}},
      {0.25, PhotonVariedState::from_squeezing(0.7, -2, 0), LocalNoise{Distribution::uniform(0, 4), thermal_dist(2)}},
  };
  for (const auto& m : models) {
    const auto mix = oracle::build_noisy(m);
    CHECK(chi(m) == doctest::Approx(oracle::chi_numeric(mix).chi).epsilon(1e-7));
  }
  const auto mix = oracle::build_noisy(thermal_model(0.5, 0.2, 3, 5));
  CHECK(oracle::chi_eigen(mix) == doctest::Approx(oracle::chi_numeric(mix).chi).epsilon(1e-6));

  // Unknown-p values are Bell values at the noiseless state's optimal settings.
  for (int k : {0, 1, 3}) {
    auto m = thermal_model(0.4, 0.35, 2, 3, k, 0, Policy::UnknownP);
    const auto settings = pseudospin::optimal_settings(pseudospin::kernel(m.pure));
    CHECK(chi(m) == doctest::Approx(oracle::bell_value(oracle::build_noisy(m), settings)).epsilon(1e-9));
  }
}

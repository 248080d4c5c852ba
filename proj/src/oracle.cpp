#include "cvbell/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>

#include "cvbell/errors.hpp"

namespace cvbell::oracle {

namespace {

using Triplet = Eigen::Triplet<double>;

struct Entry {
  int n1;
  int n2;
  double value;
};

int tail_start(int N) { return (3 * N) / 4; }

SparseMatrix from_entries(const std::vector<Entry>& entries, int N, bool square_values = false) {
  std::vector<Triplet> trips;
  trips.reserve(entries.size());
  for (const auto& e : entries) trips.emplace_back(e.n1, e.n2, square_values ? e.value * e.value : e.value);
  SparseMatrix m(N, N);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

// Applies (a^dagger)^k or a^k to one mode of a pure state given as amplitudes.
void apply_pure(std::vector<Entry>& psi, int op, bool second_mode, int N) {
  for (int step = 0; step < std::abs(op); ++step) {
    std::vector<Entry> next;
    next.reserve(psi.size());
    for (auto e : psi) {
      int& level = second_mode ? e.n2 : e.n1;
      if (op > 0) {
        e.value *= std::sqrt(level + 1.0);
        ++level;
        if (level >= N) continue;
      } else {
        if (level == 0) continue;
        e.value *= std::sqrt(static_cast<double>(level));
        --level;
      }
      next.push_back(e);
    }
    psi = std::move(next);
  }
}

// The same operation on populations: a^dagger|n><n|a = (n+1)|n+1><n+1|.
void apply_populations(std::vector<Entry>& pops, int op, bool second_mode, int N) {
  for (int step = 0; step < std::abs(op); ++step) {
    std::vector<Entry> next;
    next.reserve(pops.size());
    for (auto e : pops) {
      int& level = second_mode ? e.n2 : e.n1;
      if (op > 0) {
        e.value *= level + 1.0;
        ++level;
        if (level >= N) continue;
      } else {
        if (level == 0) continue;
        e.value *= level;
        --level;
      }
      next.push_back(e);
    }
    pops = std::move(next);
  }
}

double normalize(std::vector<Entry>& entries, bool amplitudes) {
  double total = 0.0;
  for (const auto& e : entries) total += amplitudes ? e.value * e.value : e.value;
  if (!(total > 0.0)) throw InvalidInput("the photon operation annihilates the state");
  const double scale = amplitudes ? 1.0 / std::sqrt(total) : 1.0 / total;
  for (auto& e : entries) e.value *= scale;
  return total;
}

double tail_of(const std::vector<Entry>& entries, bool amplitudes, int N) {
  const int start = tail_start(N);
  double tail = 0.0;
  for (const auto& e : entries) {
    if (e.n1 >= start || e.n2 >= start) tail += amplitudes ? e.value * e.value : e.value;
  }
  return tail;
}

struct Built {
  Component component;
  double tail = 0.0;
};

Built pure_at(const states::PhotonVariedState& state, int N) {
  states::validate(state);
  const int room = N - std::max(state.op1, 0) - std::max(state.op2, 0);
  if (room < 2) throw InvalidInput("cutoff too small for the requested operation");
  std::vector<Entry> psi;
  psi.reserve(static_cast<std::size_t>(room));
  for (int n = 0; n < room; ++n) {
    psi.push_back({n, n, std::sqrt(1.0 - state.x) * std::pow(state.x, 0.5 * n)});
  }
  const double dropped = std::pow(state.x, static_cast<double>(room));
  apply_pure(psi, state.op1, false, N);
  apply_pure(psi, state.op2, true, N);
  normalize(psi, true);
  return {{1.0, PureComponent{from_entries(psi, N)}}, dropped + tail_of(psi, true, N)};
}

std::vector<Entry> materialize_diagonal(const noise::Distribution& d, int N, double& missing) {
  std::vector<Entry> out;
  double total = 0.0;
  for (int n = 0; n < N; ++n) {
    const double w = d(static_cast<std::size_t>(n));
    total += w;
    if (w != 0.0) out.push_back({n, 0, w});
  }
  missing = std::max(0.0, 1.0 - total);
  return out;
}

Built noise_at(const noise::NoisyStateModel& model, int N) {
  const int op1 = model.pure.op1;
  const int op2 = model.pure.op2;
  if (const auto* local = std::get_if<noise::LocalNoise>(&model.noise)) {
    double miss1 = 0.0, miss2 = 0.0;
    auto m1 = materialize_diagonal(local->mu, N, miss1);
    auto m2 = materialize_diagonal(local->nu, N, miss2);
    apply_populations(m1, op1, false, N);
    apply_populations(m2, op2, false, N);
    normalize(m1, false);
    normalize(m2, false);
    ProductDiagonalComponent body{Eigen::VectorXd::Zero(N), Eigen::VectorXd::Zero(N)};
    for (const auto& e : m1) body.mode1[e.n1] = e.value;
    for (const auto& e : m2) body.mode2[e.n1] = e.value;
    const double tail = miss1 + miss2 + tail_of(m1, false, N) + tail_of(m2, false, N);
    return {{1.0, std::move(body)}, tail};
  }
  const auto& corr = std::get<noise::CorrelatedNoise>(model.noise);
  double miss = 0.0;
  auto pops = materialize_diagonal(corr.c, N, miss);
  for (auto& e : pops) e.n2 = e.n1;
  apply_populations(pops, op1, false, N);
  apply_populations(pops, op2, true, N);
  normalize(pops, false);
  return {{1.0, DiagonalComponent{from_entries(pops, N)}}, miss + tail_of(pops, false, N)};
}

Mixture admit(const std::function<Mixture(int)>& build, const OracleOptions& opts) {
  if (opts.cutoff < 4 || opts.cutoff > kMaxCutoff) throw InvalidInput("oracle cutoff out of range");
  int N = opts.cutoff;
  for (;;) {
    Mixture m = build(N);
    if (m.tail_mass < opts.tail_limit) return m;
    if (opts.force_cutoff || N >= kMaxCutoff) {
      throw TruncationError("tail mass " + std::to_string(m.tail_mass) + " at cutoff " + std::to_string(N) +
                                " exceeds the admission limit",
                            N, m.tail_mass);
    }
    N = std::min(2 * N, kMaxCutoff);
  }
}

Mixture noisy_at(const noise::NoisyStateModel& model, int N) {
  noise::validate(model);
  Mixture m;
  m.cutoff = N;
  auto pure = pure_at(model.pure, N);
  auto mixed = noise_at(model, N);
  pure.component.weight = 1.0 - model.p;
  mixed.component.weight = model.p;
  m.tail_mass = (1.0 - model.p) * pure.tail + model.p * mixed.tail;
  if (model.p < 1.0) m.components.push_back(std::move(pure.component));
  if (model.p > 0.0) m.components.push_back(std::move(mixed.component));
  return m;
}

void append_weighted(Mixture& into, Mixture part, double weight) {
  into.tail_mass += weight * part.tail_mass;
  for (auto& c : part.components) {
    c.weight *= weight;
    into.components.push_back(std::move(c));
  }
}

Eigen::VectorXd diagonal_of(const SparseMatrix& a) { return a.diagonal(); }

}  // namespace

PseudospinMatrices pseudospin_matrices(int q, int N) {
  if (N < std::abs(q) + 4) throw InvalidInput("cutoff too small for the pseudospin offset");
  std::vector<Triplet> z, x, y;
  const int start = pseudospin::first_level(q);
  for (int level = start; level < N; level += 2) {
    z.emplace_back(level, level, -1.0);
    if (level + 1 < N) {
      z.emplace_back(level + 1, level + 1, 1.0);
      x.emplace_back(level, level + 1, 1.0);
      x.emplace_back(level + 1, level, 1.0);
      y.emplace_back(level, level + 1, 1.0);
      y.emplace_back(level + 1, level, -1.0);
    }
  }
  PseudospinMatrices out{{N, SparseMatrix(N, N)}, {N, SparseMatrix(N, N)}, {N, SparseMatrix(N, N)}};
  out.z.matrix.setFromTriplets(z.begin(), z.end());
  out.x.matrix.setFromTriplets(x.begin(), x.end());
  out.y_real.matrix.setFromTriplets(y.begin(), y.end());
  return out;
}

Mixture build_pure(const states::PhotonVariedState& state, const OracleOptions& opts) {
  return admit(
      [&](int N) {
        auto built = pure_at(state, N);
        Mixture m;
        m.cutoff = N;
        m.tail_mass = built.tail;
        m.components.push_back(std::move(built.component));
        return m;
      },
      opts);
}

Mixture build_noisy(const noise::NoisyStateModel& model, const OracleOptions& opts) {
  return admit([&](int N) { return noisy_at(model, N); }, opts);
}

Mixture build_imperfect_noisy(const noise::NoisyStateModel& model, int k, const imperfect::SuppressionModel& sup,
                              const OracleOptions& opts) {
  const auto weights = imperfect::suppression_weights(sup);
  if (sup.cutoff > k) throw InvalidInput("suppression cutoff exceeds the photon number");
  return admit(
      [&](int N) {
        Mixture m;
        m.cutoff = N;
        for (std::size_t i = 0; i < weights.size(); ++i) {
          auto component = model;
          component.pure = imperfect::with_count(model.pure, k - static_cast<int>(i));
          append_weighted(m, noisy_at(component, N), weights[i]);
        }
        return m;
      },
      opts);
}

Mixture build_imperfect_faulty(const imperfect::FaultyGenerator& gen, int k, const imperfect::SuppressionModel& sup,
                               const OracleOptions& opts) {
  imperfect::validate(gen);
  const auto weights = imperfect::suppression_weights(sup);
  if (sup.cutoff > k) throw InvalidInput("suppression cutoff exceeds the photon number");
  const double x = states::squeezing_fraction(gen.r_actual);
  return admit(
      [&](int N) {
        Mixture m;
        m.cutoff = N;
        for (std::size_t i = 0; i < weights.size(); ++i) {
          auto built = pure_at({x, k - static_cast<int>(i), 0}, N);
          built.component.weight = weights[i];
          m.tail_mass += weights[i] * built.tail;
          m.components.push_back(std::move(built.component));
        }
        return m;
      },
      opts);
}

double expectation(const Mixture& rho, const SparseMatrix& a, const SparseMatrix& b) {
  double total = 0.0;
  for (const auto& c : rho.components) {
    double value = 0.0;
    if (const auto* pure = std::get_if<PureComponent>(&c.body)) {
      const SparseMatrix image = a * pure->amplitudes * SparseMatrix(b.transpose());
      value = image.cwiseProduct(pure->amplitudes).sum();
    } else if (const auto* prod = std::get_if<ProductDiagonalComponent>(&c.body)) {
      value = prod->mode1.dot(diagonal_of(a)) * prod->mode2.dot(diagonal_of(b));
    } else {
      const auto& pops = std::get<DiagonalComponent>(c.body).populations;
      const Eigen::VectorXd da = diagonal_of(a);
      const Eigen::VectorXd db = diagonal_of(b);
      for (int col = 0; col < pops.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(pops, col); it; ++it) value += it.value() * da[it.row()] * db[it.col()];
      }
    }
    total += c.weight * value;
  }
  return total;
}

Eigen::Matrix3d correlation_matrix(const Mixture& rho, int q1, int q2) {
  const auto s1 = pseudospin_matrices(q1, rho.cutoff);
  const auto s2 = pseudospin_matrices(q2, rho.cutoff);
  const std::array<const SparseMatrix*, 3> m1{&s1.x.matrix, &s1.y_real.matrix, &s1.z.matrix};
  const std::array<const SparseMatrix*, 3> m2{&s2.x.matrix, &s2.y_real.matrix, &s2.z.matrix};
  Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // Every density operator here is real symmetric, so a single S^y factor
      // (-i times a real antisymmetric matrix) has zero expectation.
      if ((i == 1) != (j == 1)) continue;
      const double v = expectation(rho, *m1[i], *m2[j]);
      t(i, j) = (i == 1) ? -v : v;
    }
  }
  return t;
}

namespace {

// Rows and columns ordered (z, x).
using Block = Eigen::Matrix2d;

Block xz_block(const Eigen::Matrix3d& t) {
  Block b;
  b << t(2, 2), t(2, 0), t(0, 2), t(0, 0);
  return b;
}

double corr(const Block& b, double ta, double tb) {
  const Eigen::Vector2d ua(std::cos(ta), std::sin(ta));
  const Eigen::Vector2d ub(std::cos(tb), std::sin(tb));
  return ua.dot(b * ub);
}

double chsh(const Block& b, const std::array<double, 4>& t) {
  // t = (a, a', b, b')
  return corr(b, t[0], t[2]) + corr(b, t[0], t[3]) + corr(b, t[1], t[2]) - corr(b, t[1], t[3]);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double bell_value(const Mixture& rho, const pseudospin::BellSettings& s) {
  const Block b = xz_block(correlation_matrix(rho, s.q1, s.q2));
  return chsh(b, {s.theta_a, s.theta_a_prime, s.theta_b, s.theta_b_prime});
}

NumericResult chi_numeric(const Mixture& rho, int grid) {
  if (grid < 4) throw InvalidInput("angle grid needs at least 4 points");
  const double step = 2.0 * std::numbers::pi / grid;

  struct Candidate {
    double value;
    std::array<double, 4> angles;
    int q1, q2;
    Block block;
  };
  std::vector<Candidate> candidates;
  double best_grid = -1e300;
  for (int q1 = pseudospin::kQMin; q1 <= pseudospin::kQMax; ++q1) {
    for (int q2 = pseudospin::kQMin; q2 <= pseudospin::kQMax; ++q2) {
      const Block b = xz_block(correlation_matrix(rho, q1, q2));
      Eigen::MatrixXd e(grid, grid);
      for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) e(i, j) = corr(b, i * step, j * step);
      Candidate c{-1e300, {}, q1, q2, b};
      for (int a = 0; a < grid; ++a)
        for (int ap = 0; ap < grid; ++ap)
          for (int bb = 0; bb < grid; ++bb)
            for (int bp = 0; bp < grid; ++bp) {
              const double v = e(a, bb) + e(a, bp) + e(ap, bb) - e(ap, bp);
              if (v > c.value) c = {v, {a * step, ap * step, bb * step, bp * step}, q1, q2, b};
            }
      best_grid = std::max(best_grid, c.value);
      candidates.push_back(c);
    }
  }

  NumericResult out;
  out.chi = -1e300;
  for (auto& c : candidates) {
    if (c.value < best_grid - 0.1) continue;
    double current = c.value;
    for (int sweep = 0; sweep < 2000; ++sweep) {
      for (int coord = 0; coord < 4; ++coord) {
        auto f = [&](double t) {
          auto trial = c.angles;
          trial[coord] = t;
          return chsh(c.block, trial);
        };
        c.angles[coord] = golden_max(f, c.angles[coord] - step, c.angles[coord] + step, 1e-10);
      }
      const double next = chsh(c.block, c.angles);
      const bool done = next - current < 1e-15;
      current = std::max(current, next);
      if (done) break;
    }
    if (current > out.chi) {
      out.chi = current;
      out.settings = {c.angles[0], c.angles[2], c.angles[1], c.angles[3], c.q1, c.q2};
    }
  }
  return out;
}

double chi_eigen(const Eigen::Matrix3d& t) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(t.transpose() * t);
  const auto& ev = solver.eigenvalues();  // ascending
  return 2.0 * std::sqrt(std::max(0.0, ev[1] + ev[2]));
}

double chi_eigen(const Mixture& rho) {
  double best = 0.0;
  for (int q1 = pseudospin::kQMin; q1 <= pseudospin::kQMax; ++q1)
    for (int q2 = pseudospin::kQMin; q2 <= pseudospin::kQMax; ++q2)
      best = std::max(best, chi_eigen(correlation_matrix(rho, q1, q2)));
  return best;
}

}  // namespace cvbell::oracle

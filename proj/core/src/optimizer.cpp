#include "bek/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "bek/states.hpp"
#include "bek/tensor.hpp"
#include "bek/witness.hpp"

namespace bek {
namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Objective changes smaller than this are treated as numerical noise when
// guarding monotonicity.
constexpr double kTieSlack = 1e-14;

struct Problem {
  MatrixXcd m_ab;  // A factors first, row-major (A, B)
  MatrixXcd m_ba;  // B factors first
  Index da;
  Index db;
  std::vector<std::size_t> blocking;
};

struct Iterate {
  VectorXcd a1, a2, b1, b2;
};

// Swaps the two blocks of a row-major (d1 x d2) index space.
MatrixXcd swap_blocks(const MatrixXcd& m, Index d1, Index d2) {
  MatrixXcd out(m.rows(), m.cols());
  for (Index c1 = 0; c1 < d1; ++c1)
    for (Index c2 = 0; c2 < d2; ++c2)
      for (Index r1 = 0; r1 < d1; ++r1)
        for (Index r2 = 0; r2 < d2; ++r2) out(r2 * d1 + r1, c2 * d1 + c1) = m(r1 * d2 + r2, c1 * d2 + c2);
  return out;
}

VectorXcd kron(const VectorXcd& a, const VectorXcd& b) {
  VectorXcd out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

VectorXcd assemble_ab(const Iterate& it) { return kron(it.a1, it.b1) + kron(it.a2, it.b2); }

double quotient(const MatrixXcd& m, const VectorXcd& psi) {
  return psi.dot(m * psi).real() / psi.squaredNorm();
}

VectorXcd gaussian(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  VectorXcd v(d);
  for (Index i = 0; i < d; ++i) {
    const double re = nd(rng);
    const double im = nd(rng);
    v[i] = cplx(re, im);
  }
  return v;
}

void orthogonalize_against(VectorXcd& v, const VectorXcd& q) {
  for (int pass = 0; pass < 2; ++pass) v -= q * q.dot(v);
}

// Orthonormal basis (q1, q2) of span{f1, f2}. When the Gram matrix of the pair
// is too ill-conditioned, the weaker direction is replaced by a fresh random
// one; returns true in that case.
bool orthonormal_pair(const VectorXcd& f1, const VectorXcd& f2, double reg, std::mt19937_64& rng,
                      VectorXcd& q1, VectorXcd& q2) {
  Eigen::Matrix2cd gram;
  gram << f1.squaredNorm(), f1.dot(f2), f2.dot(f1), f2.squaredNorm();
  gram += reg * Eigen::Matrix2cd::Identity();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()[0];
  const double hi = es.eigenvalues()[1];
  const bool collapsed = !(lo > 0.0) || hi / lo > kGramConditionLimit;

  const bool first_stronger = f1.squaredNorm() >= f2.squaredNorm();
  const VectorXcd& strong = first_stronger ? f1 : f2;
  const VectorXcd& weak = first_stronger ? f2 : f1;
  if (strong.norm() == 0.0) throw std::runtime_error("minimize_rank2: iterate collapsed to the zero vector");
  q1 = strong / strong.norm();
  VectorXcd r = collapsed ? gaussian(strong.size(), rng) : weak;
  orthogonalize_against(r, q1);
  if (r.norm() == 0.0) throw std::runtime_error("minimize_rank2: cannot complete a rank-2 basis");
  q2 = r / r.norm();
  return collapsed;
}

struct HalfStep {
  VectorXcd free1, free2;
  VectorXcd fixed1, fixed2;
  double value;
  bool redrawn;
};

// Minimizes over the free side with the fixed side's span held constant.
// `m` is ordered (free, fixed) row-major.
HalfStep solve_half_step(const MatrixXcd& m, Index d_free, Index d_fixed, const VectorXcd& f1,
                         const VectorXcd& f2, double reg, std::mt19937_64& rng) {
  HalfStep out;
  out.redrawn = orthonormal_pair(f1, f2, reg, rng, out.fixed1, out.fixed2);
  MatrixXcd q(d_fixed, 2);
  q.col(0) = out.fixed1;
  q.col(1) = out.fixed2;

  // mw(:, k*d_free + i) = M (e_i (x) q_k)
  MatrixXcd mw(m.rows(), 2 * d_free);
  for (Index i = 0; i < d_free; ++i) {
    const MatrixXcd block = m.middleCols(i * d_fixed, d_fixed) * q;
    mw.col(i) = block.col(0);
    mw.col(d_free + i) = block.col(1);
  }
  // h((k,i), :) = (e_i (x) q_k)^dagger mw
  MatrixXcd h(2 * d_free, 2 * d_free);
  for (Index i = 0; i < d_free; ++i) {
    const MatrixXcd rows = q.adjoint() * mw.middleRows(i * d_fixed, d_fixed);
    h.row(i) = rows.row(0);
    h.row(d_free + i) = rows.row(1);
  }
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("minimize_rank2: half-step eigensolver failed");
  const VectorXcd c = es.eigenvectors().col(0);
  out.free1 = c.head(d_free);
  out.free2 = c.tail(d_free);
  out.value = es.eigenvalues()[0];
  return out;
}

std::mt19937_64 start_rng(std::uint64_t seed, int start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start)};
  return std::mt19937_64(seq);
}

Iterate random_start(const Problem& p, std::mt19937_64& rng) {
  Iterate it;
  it.a1 = gaussian(p.da, rng);
  it.a2 = gaussian(p.da, rng);
  it.b1 = gaussian(p.db, rng);
  it.b2 = gaussian(p.db, rng);
  it.b1 /= it.b1.norm();
  orthogonalize_against(it.b2, it.b1);
  it.b2 /= it.b2.norm();
  return it;
}

Iterate seeded_start(const Problem& p, const Ket& seed) {
  const Ket blocked = permute_subsystems(seed, p.blocking);
  const Eigen::Map<const MatrixXcd> coeffs_t(blocked.amplitudes().data(), p.db, p.da);
  const MatrixXcd coeffs = coeffs_t.transpose();  // (dA x dB), psi = sum C_ij |i>|j>
  Eigen::JacobiSVD<MatrixXcd> svd(coeffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  Iterate it;
  const auto term = [&](Index k, VectorXcd& a, VectorXcd& b) {
    if (k < s.size()) {
      a = s[k] * svd.matrixU().col(k);
      b = svd.matrixV().col(k).conjugate();
    } else {
      a = VectorXcd::Zero(p.da);
      b = VectorXcd::Zero(p.db);
    }
  };
  term(0, it.a1, it.b1);
  term(1, it.a2, it.b2);
  return it;
}

struct StartOutcome {
  StartDiagnostics diag;
  Iterate best;
};

StartOutcome run_start(const Problem& p, const SeeSawConfig& cfg, int start, const Ket* seed) {
  auto rng = start_rng(cfg.rng_seed, start);
  StartOutcome out;
  out.diag.start = start;
  out.diag.seeded = seed != nullptr;
  Iterate it = seed ? seeded_start(p, *seed) : random_start(p, rng);

  double value = quotient(p.m_ab, assemble_ab(it));
  out.diag.initial_value = value;
  if (cfg.record_trace) out.diag.trace.push_back(value);

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const double before = value;
    bool rejected = false;

    // A side free, B pair fixed.
    HalfStep a = solve_half_step(p.m_ab, p.da, p.db, it.b1, it.b2, cfg.gram_regularization, rng);
    out.diag.redraws += a.redrawn;
    if (a.value <= value + kTieSlack * std::max(1.0, std::abs(value))) {
      it = {a.free1, a.free2, a.fixed1, a.fixed2};
      value = a.value;
    } else {
      rejected = true;
    }
    if (cfg.record_trace && !rejected) out.diag.trace.push_back(value);

    // B side free, A pair fixed.
    if (!rejected) {
      HalfStep b = solve_half_step(p.m_ba, p.db, p.da, it.a1, it.a2, cfg.gram_regularization, rng);
      out.diag.redraws += b.redrawn;
      if (b.value <= value + kTieSlack * std::max(1.0, std::abs(value))) {
        it = {b.fixed1, b.fixed2, b.free1, b.free2};
        value = b.value;
      } else {
        rejected = true;
      }
      if (cfg.record_trace && !rejected) out.diag.trace.push_back(value);
    }

    out.diag.iterations = iter + 1;
    const double change = std::abs(before - value);
    const double scale = std::max(std::abs(before), std::abs(value));
    if (rejected || change == 0.0 || change <= cfg.rel_tol * scale) {
      out.diag.converged = true;
      break;
    }
  }

  // Report the objective of the final vector itself.
  out.diag.value = quotient(p.m_ab, assemble_ab(it));
  out.best = std::move(it);
  return out;
}

Problem make_problem(const Operator& m) {
  const auto& layout = m.layout();
  if (!layout.has_party(Party::A) || !layout.has_party(Party::B))
    throw std::invalid_argument("minimize_rank2: the cut needs nonempty A and B blocks, layout " +
                                layout.to_string());
  if (!m.is_hermitian()) throw std::invalid_argument("minimize_rank2: operator is not Hermitian");
  Problem p;
  p.blocking = layout.party_blocking_permutation();
  p.da = static_cast<Index>(layout.party_dim(Party::A));
  p.db = static_cast<Index>(layout.party_dim(Party::B));
  const MatrixXcd blocked = permute_subsystems(m, p.blocking).matrix();
  p.m_ab = 0.5 * (blocked + blocked.adjoint());
  p.m_ba = swap_blocks(p.m_ab, p.da, p.db);
  return p;
}

int resolve_threads(int requested, int work) {
  int n = requested;
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::max(1, std::min(n, work));
}

}  // namespace

void SeeSawConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("SeeSawConfig: max_iters must be >= 1");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("SeeSawConfig: rel_tol must be > 0");
  if (num_starts < 1) throw std::invalid_argument("SeeSawConfig: num_starts must be >= 1");
  if (!(gram_regularization >= 0.0)) throw std::invalid_argument("SeeSawConfig: gram_regularization must be >= 0");
}

Rank2Result minimize_rank2(const Operator& m, const SeeSawConfig& cfg, std::span<const Ket> seeds) {
  cfg.validate();
  const Problem p = make_problem(m);
  if (seeds.size() > static_cast<std::size_t>(cfg.num_starts))
    throw std::invalid_argument("minimize_rank2: more seeds than num_starts");
  for (const auto& s : seeds) {
    if (!(s.layout() == m.layout()))
      throw std::invalid_argument("minimize_rank2: seed layout " + s.layout().to_string() +
                                  " differs from operator layout " + m.layout().to_string());
    if (s.norm() == 0.0) throw std::invalid_argument("minimize_rank2: zero seed vector");
  }

  const int starts = cfg.num_starts;
  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(starts));
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int s = next++; s < starts; s = next++) {
      const Ket* seed = s < static_cast<int>(seeds.size()) ? &seeds[static_cast<std::size_t>(s)] : nullptr;
      outcomes[static_cast<std::size_t>(s)] = run_start(p, cfg, s, seed);
    }
  };
  const int threads = resolve_threads(cfg.num_threads, starts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t s = 1; s < outcomes.size(); ++s)
    if (outcomes[s].diag.value < outcomes[best].diag.value - kTieSlack) best = s;

  const Iterate& it = outcomes[best].best;
  const VectorXcd psi_ab = assemble_ab(it);
  const SubsystemLayout blocked_layout = m.layout().permuted(p.blocking);
  const Ket blocked(blocked_layout, psi_ab / psi_ab.norm());
  Ket vec = permute_subsystems(blocked, inverse_permutation(p.blocking));

  Rank2Result result{outcomes[best].diag.value, std::move(vec), static_cast<int>(best),
                     outcomes[best].diag.iterations, outcomes[best].diag.converged, {}};
  result.starts.reserve(outcomes.size());
  for (auto& o : outcomes) result.starts.push_back(std::move(o.diag));
  return result;
}

Operator activation_operator(double lambda) {
  return partial_transpose(tensor(werner(lambda), rho_pent()), Party::B);
}

Rank2Result minimize_activation(double lambda, const SeeSawConfig& cfg) {
  const Ket seed = analytic_psi2().normalized();
  return minimize_rank2(activation_operator(lambda), cfg, std::span<const Ket>(&seed, 1));
}

std::vector<SweepRecord> sweep_b(const std::vector<double>& b_grid, const SeeSawConfig& cfg) {
  cfg.validate();
  std::vector<SweepRecord> out;
  out.reserve(b_grid.size());
  for (double b : b_grid) {
    SweepRecord rec;
    rec.b = b;
    try {
      rec.lambda = lambda_from_b(b);
    } catch (const std::domain_error& e) {
      rec.lambda = std::numeric_limits<double>::quiet_NaN();
      rec.min_value = std::numeric_limits<double>::quiet_NaN();
      rec.error = e.what();
      out.push_back(std::move(rec));
      continue;
    }
    const auto r = minimize_activation(rec.lambda, cfg);
    rec.min_value = r.value;
    rec.best_start = r.best_start;
    rec.iterations = r.iterations;
    rec.converged = r.converged;
    out.push_back(std::move(rec));
  }
  return out;
}

Operator conjecture_operator(int n, double lambda) {
  if (n < 1 || n > 3) throw std::invalid_argument("conjecture_operator: n must be 1, 2 or 3");
  return partial_transpose(tensor_power(werner(lambda), n), Party::B);
}

Rank2Result conjecture_evidence(int n, double lambda, const SeeSawConfig& cfg) {
  return minimize_rank2(conjecture_operator(n, lambda), cfg);
}

}  // namespace bek

// optimizer.hpp
// Minimization of <psi|M|psi>/<psi|psi> over Schmidt-rank-2 vectors
// psi = a1 (x) b1 + a2 (x) b2 across the A|B cut of M's layout.
//
// See-saw scheme: with one side's pair fixed, the quotient is a generalized
// Rayleigh quotient in the other side's stacked pair whose metric is
// Gram(fixed pair) (x) 1. The metric is reduced by orthonormalizing the fixed
// pair, leaving a 2d-dimensional Hermitian eigenproblem whose lowest
// eigenvector is the exact minimizer for that half-step. Sides alternate until
// the relative change of the objective drops below rel_tol. Every value
// returned is attained by an explicit rank <= 2 vector, so it is an upper
// bound on the true constrained minimum.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bek/operator.hpp"

namespace bek {

struct SeeSawConfig {
  int max_iters = 500;               // full A+B sweeps per start
  double rel_tol = 1e-12;
  int num_starts = 32;
  std::uint64_t rng_seed = 20011;
  double gram_regularization = 1e-12;
  int num_threads = 1;               // 0 = hardware concurrency
  bool record_trace = false;         // keep the objective after every half-step

  void validate() const;
};

/// Gram matrices of the fixed pair with condition number above this are
/// treated as collapsed to rank 1; the weaker direction is re-drawn.
inline constexpr double kGramConditionLimit = 1e12;

struct StartDiagnostics {
  int start = 0;
  bool seeded = false;   // started from a caller-provided vector
  double initial_value = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  int redraws = 0;       // collapsed directions replaced by fresh random ones
  std::vector<double> trace;
};

struct Rank2Result {
  double value;
  Ket vector;            // unit norm, in the layout of M
  int best_start;
  int iterations;
  bool converged;
  std::vector<StartDiagnostics> starts;
};

/// Seeds occupy start indices 0..seeds.size()-1 and count towards
/// cfg.num_starts; they are truncated to their two leading Schmidt terms.
Rank2Result minimize_rank2(const Operator& m, const SeeSawConfig& cfg, std::span<const Ket> seeds = {});

struct SweepRecord {
  double b = 0.0;
  double lambda = 0.0;
  double min_value = 0.0;  // normalized convention
  int best_start = -1;
  int iterations = 0;
  bool converged = false;
  std::string error;       // non-empty when the grid point was rejected

  bool ok() const { return error.empty(); }
};

/// (1 (x) T)(rho_W(lambda) (x) rho_Pent), layout [(3,A1),(3,B1),(3,A2),(3,B2)].
Operator activation_operator(double lambda);

/// Optimized minimum of the activation operator for one lambda; the analytic
/// witness is used as start 0.
Rank2Result minimize_activation(double lambda, const SeeSawConfig& cfg);

/// One record per b; out-of-range b values produce an error record.
std::vector<SweepRecord> sweep_b(const std::vector<double>& b_grid, const SeeSawConfig& cfg);

/// (1 (x) T)(rho_W(lambda)^{(x) n}) on the n-copy cut.
Operator conjecture_operator(int n, double lambda);

/// Minimum over rank-2 vectors for n in {1,2,3}. Nonnegativity is evidence,
/// not proof.
Rank2Result conjecture_evidence(int n, double lambda, const SeeSawConfig& cfg);

}  // namespace bek

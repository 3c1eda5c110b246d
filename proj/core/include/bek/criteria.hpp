// criteria.hpp
// Partial-transpose based entanglement tests. The A|B cut is always read from
// the party labels of the layout, never from factor positions.

#pragma once

#include "bek/operator.hpp"

namespace bek {

struct PeresHorodeckiResult {
  bool npt;                 // min eigenvalue of the partial transpose < -tol::psd
  double min_pt_eigenvalue;
};

struct ReductionResult {
  bool satisfied;
  double min_eigenvalue_a;  // of rho_A (x) 1_B - rho
  double min_eigenvalue_b;  // of 1_A (x) rho_B - rho
};

struct PptInvarianceResult {
  bool invariant;
  double deviation;  // max entry of |PT_B(rho) - rho|
};

inline constexpr double kPptInvarianceTolerance = 1e-12;

struct CriteriaReport {
  bool npt;
  double min_pt_eigenvalue;
  bool reduction_ok;
  double min_reduction_eigenvalue_a;
  double min_reduction_eigenvalue_b;
  bool ppt_invariant;
  double ppt_deviation;
};

/// Transposes all B factors and tests positivity.
PeresHorodeckiResult peres_horodecki(const Operator& rho);

/// Checks 1_A (x) rho_B - rho >= 0 and rho_A (x) 1_B - rho >= 0.
ReductionResult reduction_criterion(const Operator& rho);

PptInvarianceResult ppt_invariance(const Operator& rho);

CriteriaReport evaluate_criteria(const Operator& rho);

}  // namespace bek

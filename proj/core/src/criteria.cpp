#include "bek/criteria.hpp"

#include <stdexcept>

#include "bek/states.hpp"
#include "bek/tensor.hpp"

namespace bek {
namespace {

void require_bipartite(const Operator& rho, const char* where) {
  if (!rho.layout().has_party(Party::A) || !rho.layout().has_party(Party::B))
    throw std::invalid_argument(std::string(where) + ": layout " + rho.layout().to_string() +
                                " needs at least one A and one B factor");
}

// Collapses the A factors and the B factors into one (dA, A) x (dB, B) pair.
Operator as_two_block(const Operator& rho) {
  const Operator blocked = permute_subsystems(rho, rho.layout().party_blocking_permutation());
  return blocked.relabeled(SubsystemLayout::bipartite(rho.layout().party_dim(Party::A),
                                                      rho.layout().party_dim(Party::B)));
}

}  // namespace

PeresHorodeckiResult peres_horodecki(const Operator& rho) {
  require_bipartite(rho, "peres_horodecki");
  require_density_matrix(rho, "peres_horodecki");
  const double m = min_eigenvalue(partial_transpose(rho, Party::B));
  return {m < -tol::psd, m};
}

ReductionResult reduction_criterion(const Operator& rho) {
  require_bipartite(rho, "reduction_criterion");
  require_density_matrix(rho, "reduction_criterion");
  const Operator two = as_two_block(rho);
  const Operator rho_a = partial_trace(two, {1});
  const Operator rho_b = partial_trace(two, {0});
  const Operator id_a = Operator::identity(rho_a.layout());
  const Operator id_b = Operator::identity(rho_b.layout());

  const Operator lhs_a(two.layout(), tensor(rho_a, id_b).matrix() - two.matrix());
  const Operator lhs_b(two.layout(), tensor(id_a, rho_b).matrix() - two.matrix());
  const double ea = min_eigenvalue(lhs_a);
  const double eb = min_eigenvalue(lhs_b);
  return {ea >= -tol::psd && eb >= -tol::psd, ea, eb};
}

PptInvarianceResult ppt_invariance(const Operator& rho) {
  const double dev = max_abs_diff(partial_transpose(rho, Party::B).matrix(), rho.matrix());
  return {dev <= kPptInvarianceTolerance, dev};
}

CriteriaReport evaluate_criteria(const Operator& rho) {
  const auto ph = peres_horodecki(rho);
  const auto red = reduction_criterion(rho);
  const auto inv = ppt_invariance(rho);
  return {ph.npt, ph.min_pt_eigenvalue, red.satisfied, red.min_eigenvalue_a, red.min_eigenvalue_b,
          inv.invariant, inv.deviation};
}

}  // namespace bek

// tensor.hpp
// Subsystem-aware linear algebra on Operator / Ket: Kronecker products,
// factor permutation, partial transpose, partial trace and Hermitian
// eigen-solving. All functions are pure.

#pragma once

#include <vector>

#include "bek/operator.hpp"

namespace bek {

/// Kronecker product; the result layout is a's factors followed by b's.
Operator tensor(const Operator& a, const Operator& b);
Ket tensor(const Ket& a, const Ket& b);

/// Reorders factors so that new factor k is old factor perm[k].
/// Pure entry permutation, so composing with the inverse permutation is exact.
Operator permute_subsystems(const Operator& op, const std::vector<std::size_t>& perm);
Ket permute_subsystems(const Ket& psi, const std::vector<std::size_t>& perm);

/// Transposes the row/column indices of the listed factors in the
/// computational basis. An empty subset is the identity map.
Operator partial_transpose(const Operator& op, const std::vector<std::size_t>& subset);
/// Transposes every factor belonging to `p`.
Operator partial_transpose(const Operator& op, Party p);

/// Traces out the listed factors; must leave at least one factor.
Operator partial_trace(const Operator& op, const std::vector<std::size_t>& subset);

struct EigPair {
  double value;
  Ket vector;
};

/// All eigenvalues in ascending order. Rejects non-Hermitian input.
Eigen::VectorXd spectrum(const Operator& op);
/// Smallest eigenvalue with a unit-norm eigenvector.
EigPair min_eigpair(const Operator& op);
double min_eigenvalue(const Operator& op);
bool is_psd(const Operator& op, double tolerance = tol::psd);

/// <psi| op |psi>, complex in general.
cplx sandwich(const Ket& psi, const Operator& op);

}  // namespace bek

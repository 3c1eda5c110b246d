// states.hpp
// Concrete states on C^3 (x) C^3: the Werner family, the swap operator, the
// maximally entangled ket, the pentagon unextendible product basis and the
// bound entangled state built on its complement.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "bek/operator.hpp"

namespace bek {

/// Largest total dimension tensor_power will build.
inline constexpr std::size_t kTensorPowerDimCap = 1024;

/// H|i,j> = |j,i> on [(3,A),(3,B)].
Operator swap_operator();

/// rho_W(lambda) = (lambda*1 - (lambda+1)/3 * H) / (8*lambda - 1).
/// Only lambda >= 1/2 gives a positive operator; smaller values are rejected.
Operator werner(double lambda);

/// Closed-form Werner eigenvalues: symmetric subspace (multiplicity 6) and
/// antisymmetric subspace (multiplicity 3).
double werner_symmetric_eigenvalue(double lambda);
double werner_antisymmetric_eigenvalue(double lambda);

/// lambda = (b + 1/3) / (8b - 4/3) for b in (1/6, 1/5]; inverse for lambda >= 2.
double lambda_from_b(double b);
double b_from_lambda(double lambda);

/// (1/sqrt 3) sum_i |i,i>.
Ket max_entangled();

/// Pentagon vectors v_i = N (cos(2 pi i/5), sin(2 pi i/5), h) and the five
/// product kets |v_i, v_{2i mod 5}>.
struct PentBasis {
  std::array<Eigen::Vector3cd, 5> vectors;
  std::vector<Ket> products;

  /// |v_i, v_j> on [(3,A),(3,B)].
  Ket product(std::size_t i, std::size_t j) const;
};

double pent_height();        // h = sqrt(1 + sqrt 5) / 2
double pent_normalization(); // N = 2 / sqrt(5 + sqrt 5)

PentBasis pent_basis();
/// Same construction with an arbitrary apex height; only pent_height() yields
/// an orthogonal pentagon. Exists so verification code can be fault-tested.
PentBasis pent_basis_with_height(double h);

/// (1 - sum_i |v_i, v_{2i}><v_i, v_{2i}|) / 4.
Operator rho_pent();
/// (1 - sum of the basis' product projectors) / 4.
Operator rho_pent(const PentBasis& basis);

/// rho1 (x) |0><0| / 2 + rho2 (x) |1><1| / 2 with the flag appended as a
/// trailing (2, A) factor.
Operator flagged_mixture(const Operator& rho1, const Operator& rho2);

/// rho^{(x) n}; the layout repeats per copy. Rejects results above kTensorPowerDimCap.
Operator tensor_power(const Operator& rho, int n);

/// Throws unless Hermitian, unit trace and PSD within the library tolerances.
void require_density_matrix(const Operator& rho, const char* where);

}  // namespace bek

// witness.hpp
// Schmidt-rank-2 distillability witness for rho_W(lambda) (x) rho_Pent.
//
// Layout of every witness ket: [(3,A1),(3,B1),(3,A2),(3,B2)], i.e. label
// factors first and the payload pair second. The A|B cut is A1 A2 | B1 B2.
//
// Two value conventions are exposed:
//   raw        - unnormalized psi_2 and the 1/(8 lambda - 1) prefactor dropped;
//                this is the quantity with the closed form
//                (lambda (17 sqrt5 - 37) + 20 - 10 sqrt5) / 12.
//   normalized - <psi|(1 (x) T)(rho_W (x) rho_Pent)|psi> / <psi|psi> with both
//                states unit trace.
// Only the sign is shared between them.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "bek/operator.hpp"
#include "bek/states.hpp"

namespace bek {

enum class Convention { Raw, Normalized };

const char* to_string(Convention c);

/// psi_2 = sum_{ij} |i,j> (x) (x_i (x) y_j + z_i (x) u_j).
struct Rank2Witness {
  std::vector<Eigen::VectorXcd> xs;  // indexed by the A1 label, vectors live in A2
  std::vector<Eigen::VectorXcd> zs;
  std::vector<Eigen::VectorXcd> ys;  // indexed by the B1 label, vectors live in B2
  std::vector<Eigen::VectorXcd> us;
};

/// Builds psi_2 on [(|xs|,A),(|ys|,B),(dim x,A),(dim y,B)]. Unnormalized.
Ket assemble(const Rank2Witness& w);

/// The hand-picked local vectors:
///   -x1 = z1 = 2 y0 = 2 u0 = v1,   x0 = z0 = 2 y1 = -2 u1 = v4,
///   2 x2 = u2 = v3 + v2,           2 z2 = y2 = v3 - v2.
Rank2Witness analytic_witness(const PentBasis& basis = pent_basis());

/// The nine payload vectors psi_ij of the analytic witness, written out
/// term by term (independently of analytic_witness()):
///   psi_02 = 2 v4v3, psi_20 = v3v1/2, psi_12 = 2 v1v2, psi_21 = v2v4/2,
///   psi_00 = v4v1,   psi_11 = -v1v4,  psi_22 = v3v3 - v2v2, others zero.
using PayloadGrid = std::array<std::array<Eigen::VectorXcd, 3>, 3>;
PayloadGrid analytic_payloads(const PentBasis& basis = pent_basis());

/// sum_{ij} |i,j> (x) psi_ij over the analytic payloads.
Ket analytic_psi2(const PentBasis& basis = pent_basis());

/// <psi_2|psi_2> = 9.5 + sqrt 5 for the analytic witness.
double analytic_psi2_squared_norm();

inline constexpr double kSchmidtTolerance = 1e-10;

struct SchmidtResult {
  int rank;
  Eigen::VectorXd singular_values;  // descending
};

/// Schmidt decomposition across the A|B cut given by the party labels.
/// Singular values below kSchmidtTolerance * max are not counted.
SchmidtResult schmidt_rank(const Ket& psi);

/// <psi|PT(rho)|psi> with every factor of the listed parties transposed.
/// Rejects imaginary parts above 1e-12 (non-Hermitian input).
double expectation(const Ket& psi, const Operator& rho, const std::vector<Party>& transposed);

struct RawWitnessTerms {
  double diagonal;      // lambda sum_i <ii|rho|ii> - (lambda+1)/3 sum_ij <ii|rho|jj>
  double off_diagonal;  // lambda sum_{i != j} <ij|rho|ij>
  double total;
};

/// Evaluates the payload decomposition of the witness expectation against
/// rho_Pent for the analytic payloads.
RawWitnessTerms witness_terms_raw(double lambda, const PentBasis& basis = pent_basis());
double witness_value_raw(double lambda);
/// Full 81-dimensional evaluation with normalized states and normalized psi_2.
double witness_value_normalized(double lambda);
double witness_value(double lambda, Convention c);

/// (lambda (17 sqrt5 - 37) + 20 - 10 sqrt5) / 12.
double closed_form(double lambda);
/// Root of closed_form: (10 sqrt5 - 20) / (17 sqrt5 - 37) ~ 2.330027.
double threshold_lambda();

struct InnerProductEntry {
  std::string label;
  double value;
  double expected;
};

/// The six rho_Pent matrix elements the closed form is built from, each
/// with its exact value.
std::vector<InnerProductEntry> inner_product_table(const PentBasis& basis = pent_basis());

}  // namespace bek

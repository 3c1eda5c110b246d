#include "bek/witness.hpp"

#include <cmath>
#include <stdexcept>

#include "bek/tensor.hpp"

namespace bek {
namespace {

const double kSqrt5 = std::sqrt(5.0);

const SubsystemLayout& witness_layout() {
  static const SubsystemLayout layout({{3, Party::A}, {3, Party::B}, {3, Party::A}, {3, Party::B}});
  return layout;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

void require_uniform(const std::vector<Eigen::VectorXcd>& vs, Eigen::Index dim, const char* name) {
  for (const auto& v : vs)
    if (v.size() != dim) throw std::invalid_argument(std::string("assemble: ") + name + " vectors differ in size");
}

cplx element(const Eigen::VectorXcd& bra, const Operator& rho, const Eigen::VectorXcd& ket) {
  return bra.dot(rho.matrix() * ket);
}

}  // namespace

const char* to_string(Convention c) { return c == Convention::Raw ? "raw" : "normalized"; }

Ket assemble(const Rank2Witness& w) {
  if (w.xs.empty() || w.ys.empty()) throw std::invalid_argument("assemble: empty label dimension");
  if (w.xs.size() != w.zs.size()) throw std::invalid_argument("assemble: xs and zs must have equal length");
  if (w.ys.size() != w.us.size()) throw std::invalid_argument("assemble: ys and us must have equal length");
  const Eigen::Index da2 = w.xs.front().size();
  const Eigen::Index db2 = w.ys.front().size();
  if (da2 == 0 || db2 == 0) throw std::invalid_argument("assemble: empty payload dimension");
  require_uniform(w.xs, da2, "x");
  require_uniform(w.zs, da2, "z");
  require_uniform(w.ys, db2, "y");
  require_uniform(w.us, db2, "u");

  const auto da1 = w.xs.size();
  const auto db1 = w.ys.size();
  const SubsystemLayout layout({{da1, Party::A},
                                {db1, Party::B},
                                {static_cast<std::size_t>(da2), Party::A},
                                {static_cast<std::size_t>(db2), Party::B}});
  const Eigen::Index block = da2 * db2;
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(layout.total_dim()));
  for (std::size_t i = 0; i < da1; ++i)
    for (std::size_t j = 0; j < db1; ++j)
      amps.segment(static_cast<Eigen::Index>(i * db1 + j) * block, block) =
          kron(w.xs[i], w.ys[j]) + kron(w.zs[i], w.us[j]);
  return {layout, std::move(amps)};
}

Rank2Witness analytic_witness(const PentBasis& basis) {
  const Eigen::VectorXcd v1 = basis.vectors[1];
  const Eigen::VectorXcd v2 = basis.vectors[2];
  const Eigen::VectorXcd v3 = basis.vectors[3];
  const Eigen::VectorXcd v4 = basis.vectors[4];
  Rank2Witness w;
  w.xs = {v4, -v1, 0.5 * (v3 + v2)};
  w.zs = {v4, v1, 0.5 * (v3 - v2)};
  w.ys = {0.5 * v1, 0.5 * v4, v3 - v2};
  w.us = {0.5 * v1, -0.5 * v4, v3 + v2};
  return w;
}

PayloadGrid analytic_payloads(const PentBasis& basis) {
  const auto v = [&](std::size_t i, std::size_t j) { return basis.product(i, j).amplitudes(); };
  PayloadGrid g;
  for (auto& row : g)
    for (auto& cell : row) cell = Eigen::VectorXcd::Zero(9);
  g[0][2] = 2.0 * v(4, 3);
  g[2][0] = 0.5 * v(3, 1);
  g[1][2] = 2.0 * v(1, 2);
  g[2][1] = 0.5 * v(2, 4);
  g[0][0] = v(4, 1);
  g[1][1] = -v(1, 4);
  g[2][2] = v(3, 3) - v(2, 2);
  return g;
}

Ket analytic_psi2(const PentBasis& basis) {
  const auto g = analytic_payloads(basis);
  Eigen::VectorXcd amps(81);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) amps.segment((i * 3 + j) * 9, 9) = g[i][j];
  return {witness_layout(), std::move(amps)};
}

double analytic_psi2_squared_norm() { return 9.5 + kSqrt5; }

SchmidtResult schmidt_rank(const Ket& psi) {
  if (psi.norm() == 0.0) throw std::invalid_argument("schmidt_rank: zero vector");
  const auto& layout = psi.layout();
  if (!layout.has_party(Party::A) || !layout.has_party(Party::B))
    throw std::invalid_argument("schmidt_rank: layout needs both parties");
  const Ket blocked = permute_subsystems(psi, layout.party_blocking_permutation());
  const auto da = static_cast<Eigen::Index>(layout.party_dim(Party::A));
  const auto db = static_cast<Eigen::Index>(layout.party_dim(Party::B));
  // Column-major map of the row-major (dA x dB) coefficient matrix is its transpose.
  const Eigen::Map<const Eigen::MatrixXcd> coeffs_t(blocked.amplitudes().data(), db, da);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeffs_t);
  Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] > kSchmidtTolerance * sv[0]) ++rank;
  return {rank, std::move(sv)};
}

double expectation(const Ket& psi, const Operator& rho, const std::vector<Party>& transposed) {
  if (psi.dim() != rho.dim())
    throw std::invalid_argument("expectation: ket dimension " + std::to_string(psi.dim()) +
                                " does not match operator dimension " + std::to_string(rho.dim()));
  if (!(psi.layout() == rho.layout()))
    throw std::invalid_argument("expectation: ket layout " + psi.layout().to_string() +
                                " differs from operator layout " + rho.layout().to_string());
  if (!rho.is_hermitian()) throw std::invalid_argument("expectation: operator is not Hermitian");
  std::vector<std::size_t> subset;
  for (std::size_t k = 0; k < rho.layout().size(); ++k)
    for (auto p : transposed)
      if (rho.layout()[k].party == p) {
        subset.push_back(k);
        break;
      }
  const cplx value = sandwich(psi, partial_transpose(rho, subset));
  if (std::abs(value.imag()) > 1e-12)
    throw std::invalid_argument("expectation: imaginary part " + std::to_string(value.imag()) +
                                " signals a non-Hermitian operator");
  return value.real();
}

RawWitnessTerms witness_terms_raw(double lambda, const PentBasis& basis) {
  const Operator rho = rho_pent(basis);
  const auto g = analytic_payloads(basis);
  double diag = 0.0;
  double off = 0.0;
  for (int i = 0; i < 3; ++i) {
    diag += lambda * element(g[i][i], rho, g[i][i]).real();
    for (int j = 0; j < 3; ++j) {
      diag -= (lambda + 1.0) / 3.0 * element(g[j][j], rho, g[i][i]).real();
      if (i != j) off += lambda * element(g[i][j], rho, g[i][j]).real();
    }
  }
  return {diag, off, diag + off};
}

double witness_value_raw(double lambda) {
  if (!(lambda > 0.125)) throw std::domain_error("witness_value_raw: lambda must exceed 1/8");
  return witness_terms_raw(lambda).total;
}

double witness_value_normalized(double lambda) {
  const Operator rho = tensor(werner(lambda), rho_pent());
  return expectation(analytic_psi2().normalized(), rho, {Party::B});
}

double witness_value(double lambda, Convention c) {
  return c == Convention::Raw ? witness_value_raw(lambda) : witness_value_normalized(lambda);
}

double closed_form(double lambda) { return (lambda * (17.0 * kSqrt5 - 37.0) + 20.0 - 10.0 * kSqrt5) / 12.0; }

double threshold_lambda() { return (10.0 * kSqrt5 - 20.0) / (17.0 * kSqrt5 - 37.0); }

std::vector<InnerProductEntry> inner_product_table(const PentBasis& basis) {
  const Operator rho = rho_pent(basis);
  const Eigen::VectorXcd v14 = basis.product(1, 4).amplitudes();
  const Eigen::VectorXcd v41 = basis.product(4, 1).amplitudes();
  const Eigen::VectorXcd psi22 = basis.product(3, 3).amplitudes() - basis.product(2, 2).amplitudes();
  const auto re = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return element(a, rho, b).real(); };
  return {
      {"<v1,v4|rho_Pent|v1,v4>", re(v14, v14), kSqrt5 / 2.0 - 1.0},
      {"<v4,v1|rho_Pent|v4,v1>", re(v41, v41), kSqrt5 / 2.0 - 1.0},
      {"<v4,v1|rho_Pent|v1,v4>", re(v41, v14), (-7.0 + 3.0 * kSqrt5) / 8.0},
      {"<psi22|rho_Pent|psi22>", re(psi22, psi22), kSqrt5 - 2.0 - (3.0 - kSqrt5) / 4.0},
      {"<psi22|rho_Pent|v4,v1>", re(psi22, v41), (-2.0 + kSqrt5) / 4.0},
      {"<psi22|rho_Pent|v1,v4>", re(psi22, v14), (2.0 - kSqrt5) / 4.0},
  };
}

}  // namespace bek

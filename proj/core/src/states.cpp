#include "bek/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bek/tensor.hpp"

namespace bek {
namespace {

const SubsystemLayout& qutrit_pair() {
  static const SubsystemLayout layout = SubsystemLayout::bipartite(3, 3);
  return layout;
}

Eigen::Vector3cd pentagon_vector(std::size_t i, double h) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / 5.0;
  return pent_normalization() * Eigen::Vector3cd(std::cos(angle), std::sin(angle), h);
}

}  // namespace

Operator swap_operator() {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h(j * 3 + i, i * 3 + j) = 1.0;
  return {qutrit_pair(), std::move(h)};
}

Operator werner(double lambda) {
  if (!std::isfinite(lambda)) throw std::domain_error("werner: lambda must be finite");
  if (lambda == 0.125) throw std::domain_error("werner: lambda = 1/8 makes the normalization singular");
  if (lambda < 0.5)
    throw std::domain_error("werner: lambda = " + std::to_string(lambda) +
                            " < 1/2 gives a non-positive operator");
  const Eigen::MatrixXcd m =
      (lambda * Eigen::MatrixXcd::Identity(9, 9) - ((lambda + 1.0) / 3.0) * swap_operator().matrix()) /
      (8.0 * lambda - 1.0);
  return {qutrit_pair(), m};
}

double werner_symmetric_eigenvalue(double lambda) { return (2.0 * lambda - 1.0) / (3.0 * (8.0 * lambda - 1.0)); }

double werner_antisymmetric_eigenvalue(double lambda) {
  return (4.0 * lambda + 1.0) / (3.0 * (8.0 * lambda - 1.0));
}

double lambda_from_b(double b) {
  if (!(b > 1.0 / 6.0) || !(b <= 0.2))
    throw std::domain_error("lambda_from_b: b = " + std::to_string(b) + " outside (1/6, 1/5]");
  // (b + 1/3) / (8b - 4/3) scaled by 15; this form gives exactly 2 at b = 0.2.
  return (15.0 * b + 5.0) / (120.0 * b - 20.0);
}

double b_from_lambda(double lambda) {
  if (!(lambda >= 2.0) || !std::isfinite(lambda))
    throw std::domain_error("b_from_lambda: lambda = " + std::to_string(lambda) + " outside [2, inf)");
  // lambda (8b - 4/3) = b + 1/3  =>  b = (4 lambda/3 + 1/3) / (8 lambda - 1)
  return (4.0 * lambda + 1.0) / (3.0 * (8.0 * lambda - 1.0));
}

Ket max_entangled() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
  for (int i = 0; i < 3; ++i) v[i * 3 + i] = 1.0 / std::sqrt(3.0);
  return {qutrit_pair(), std::move(v)};
}

double pent_height() { return 0.5 * std::sqrt(1.0 + std::sqrt(5.0)); }

double pent_normalization() { return 2.0 / std::sqrt(5.0 + std::sqrt(5.0)); }

Ket PentBasis::product(std::size_t i, std::size_t j) const {
  Eigen::VectorXcd v(9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) v[a * 3 + b] = vectors.at(i)[a] * vectors.at(j)[b];
  return {qutrit_pair(), std::move(v)};
}

PentBasis pent_basis() { return pent_basis_with_height(pent_height()); }

PentBasis pent_basis_with_height(double h) {
  PentBasis basis;
  for (std::size_t i = 0; i < 5; ++i) basis.vectors[i] = pentagon_vector(i, h);
  for (std::size_t i = 0; i < 5; ++i) basis.products.push_back(basis.product(i, (2 * i) % 5));
  return basis;
}

Operator rho_pent() { return rho_pent(pent_basis()); }

Operator rho_pent(const PentBasis& basis) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(9, 9);
  for (const auto& p : basis.products) m -= p.amplitudes() * p.amplitudes().adjoint();
  return {qutrit_pair(), 0.25 * m};
}

void require_density_matrix(const Operator& rho, const char* where) {
  if (!rho.is_hermitian()) throw std::invalid_argument(std::string(where) + ": input is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol::trace)
    throw std::invalid_argument(std::string(where) + ": input does not have unit trace");
  if (!is_psd(rho)) throw std::invalid_argument(std::string(where) + ": input is not positive semidefinite");
}

Operator flagged_mixture(const Operator& rho1, const Operator& rho2) {
  if (!(rho1.layout() == rho2.layout())) throw std::invalid_argument("flagged_mixture: layout mismatch");
  require_density_matrix(rho1, "flagged_mixture");
  require_density_matrix(rho2, "flagged_mixture");
  const SubsystemLayout flag({{2, Party::A}});
  Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd p2 = Eigen::MatrixXcd::Zero(2, 2);
  p1(0, 0) = 1.0;
  p2(1, 1) = 1.0;
  const Operator a = tensor(rho1, Operator(flag, p1));
  const Operator b = tensor(rho2, Operator(flag, p2));
  return {a.layout(), 0.5 * (a.matrix() + b.matrix())};
}

Operator tensor_power(const Operator& rho, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power: n must be >= 1");
  std::size_t dim = 1;
  for (int k = 0; k < n; ++k) {
    dim *= rho.dim();
    if (dim > kTensorPowerDimCap)
      throw std::invalid_argument("tensor_power: dimension exceeds cap of " + std::to_string(kTensorPowerDimCap));
  }
  Operator out = rho;
  for (int k = 1; k < n; ++k) out = tensor(out, rho);
  return out;
}

}  // namespace bek

#include <doctest.h>

#include <cmath>
#include <random>

#include "bek/states.hpp"
#include "bek/tensor.hpp"
#include "oracles.hpp"

using namespace bek;

namespace {
const double kSqrt5 = std::sqrt(5.0);
const SubsystemLayout kQutrits = SubsystemLayout::bipartite(3, 3);
}  // namespace

TEST_CASE("swap operator") {
  const Operator h = swap_operator();
  CHECK(max_abs_diff((h.matrix() * Ket::basis(kQutrits, {0, 1}).amplitudes()), Ket::basis(kQutrits, {1, 0}).amplitudes()) == 0.0);
  CHECK(max_abs_diff((h.matrix() * Ket::basis(kQutrits, {2, 2}).amplitudes()), Ket::basis(kQutrits, {2, 2}).amplitudes()) == 0.0);
  CHECK(h.trace().real() == 3.0);
  CHECK(max_abs_diff(h.matrix() * h.matrix(), Eigen::MatrixXcd::Identity(9, 9)) == 0.0);
}

TEST_CASE("werner construction") {
  SUBCASE("spectrum at lambda = 2 is {1/15 x6, 1/5 x3}") {
    const Eigen::VectorXd ev = spectrum(werner(2.0));
    for (int k = 0; k < 6; ++k) CHECK(std::abs(ev[k] - 1.0 / 15.0) < 1e-14);
    for (int k = 6; k < 9; ++k) CHECK(std::abs(ev[k] - 0.2) < 1e-14);
  }
  SUBCASE("lambda = 1/2 is the antisymmetric projector over 3") {
    const Eigen::MatrixXcd anti = 0.5 * (Eigen::MatrixXcd::Identity(9, 9) - swap_operator().matrix());
    CHECK(max_abs_diff(werner(0.5).matrix(), anti / 3.0) < 1e-15);
  }
  SUBCASE("unit trace") {
    for (double lambda : {0.5, 2.0, 10.0}) CHECK(std::abs(werner(lambda).trace() - 1.0) < 1e-14);
  }
  SUBCASE("closed-form spectrum with multiplicities (6, 3)") {
    for (double lambda : {0.5, 1.0, 2.0, 5.0, 100.0}) {
      const Eigen::VectorXd ev = spectrum(werner(lambda));
      std::vector<double> expected(6, werner_symmetric_eigenvalue(lambda));
      expected.insert(expected.end(), 3, werner_antisymmetric_eigenvalue(lambda));
      std::sort(expected.begin(), expected.end());
      for (int k = 0; k < 9; ++k) CHECK(std::abs(ev[k] - expected[static_cast<std::size_t>(k)]) < 1e-12);
    }
  }
  SUBCASE("U (x) U invariance") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::MatrixXcd u = oracle::random_unitary(3, rng);
      const Eigen::MatrixXcd uu = oracle::kron(u, u);
      const Eigen::MatrixXcd w = werner(3.7).matrix();
      CHECK(max_abs_diff(uu * w, w * uu) < 1e-10);
    }
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(werner(0.49), std::domain_error);
    CHECK_THROWS_AS(werner(0.125), std::domain_error);
    CHECK_THROWS_AS(werner(0.0), std::domain_error);
    CHECK_THROWS_AS(werner(std::nan("")), std::domain_error);
  }
}

TEST_CASE("b <-> lambda reparametrization") {
  CHECK(lambda_from_b(0.2) == 2.0);
  CHECK(std::abs(b_from_lambda(lambda_from_b(0.19)) - 0.19) < 1e-14);
  // (0.18 + 1/3) / (1.44 - 4/3) = 0.51333.../0.10666... = 4.8125
  CHECK(std::abs(lambda_from_b(0.18) - 4.8125) < 1e-12);
  CHECK(lambda_from_b(1.0 / 6.0 + 1e-9) > 1e6);
  CHECK(b_from_lambda(2.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(lambda_from_b(1.0 / 6.0), std::domain_error);
  CHECK_THROWS_AS(lambda_from_b(0.1), std::domain_error);
  CHECK_THROWS_AS(lambda_from_b(0.21), std::domain_error);
  CHECK_THROWS_AS(b_from_lambda(1.9), std::domain_error);
}

TEST_CASE("maximally entangled ket") {
  const Ket psi = max_entangled();
  CHECK(std::abs(psi.squared_norm() - 1.0) < 1e-15);
  CHECK(max_abs_diff(partial_trace(psi.projector(), {0}).matrix(), Eigen::MatrixXcd::Identity(3, 3) / 3.0) < 1e-15);
  const cplx v = sandwich(psi, partial_transpose(werner(2.0), Party::B));
  CHECK(std::abs(v.real() + 1.0 / 15.0) < 1e-14);
}

TEST_CASE("pentagon basis") {
  const PentBasis basis = pent_basis();
  SUBCASE("N^2 (1 + h^2) = 1") {
    const double n = pent_normalization(), h = pent_height();
    CHECK(std::abs(n * n * (1.0 + h * h) - 1.0) < 1e-15);
    for (const auto& v : basis.vectors) CHECK(std::abs(v.norm() - 1.0) < 1e-15);
  }
  SUBCASE("pentagon orthogonality and neighbour overlap") {
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(basis.vectors[i].dot(basis.vectors[(i + 2) % 5])) < 1e-15);
    CHECK(std::abs(basis.vectors[0].dot(basis.vectors[1]).real() - (kSqrt5 - 1.0) / 2.0) < 1e-15);
  }
  SUBCASE("products are |v_i, v_{2i mod 5}> and mutually orthogonal") {
    REQUIRE(basis.products.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(max_abs_diff(basis.products[i].amplitudes(), basis.product(i, (2 * i) % 5).amplitudes()) == 0.0);
      for (std::size_t j = i + 1; j < 5; ++j)
        CHECK(std::abs(basis.products[i].amplitudes().dot(basis.products[j].amplitudes())) < 1e-12);
    }
  }
  SUBCASE("a wrong height breaks orthogonality") {
    const PentBasis bad = pent_basis_with_height(0.5 * std::sqrt(kSqrt5 - 1.0));
    CHECK(std::abs(bad.vectors[0].dot(bad.vectors[2])) > 1e-3);
  }
}

TEST_CASE("rho_Pent") {
  const Operator rho = rho_pent();
  const PentBasis basis = pent_basis();
  CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
  const Eigen::VectorXd ev = spectrum(rho);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(ev[k]) < 1e-12);
  for (int k = 5; k < 9; ++k) CHECK(std::abs(ev[k] - 0.25) < 1e-12);
  for (const auto& p : basis.products) CHECK((rho.matrix() * p.amplitudes()).norm() < 1e-12);
  // 2*0 mod 5 = 0, so |v0,v0> is a UPB member.
  CHECK((rho.matrix() * basis.product(0, 0).amplitudes()).norm() < 1e-12);
  CHECK(std::abs(sandwich(basis.product(1, 4), rho).real() - (kSqrt5 / 2.0 - 1.0)) < 1e-12);
  CHECK(max_abs_diff(partial_transpose(rho, Party::B).matrix(), rho.matrix()) <= 1e-12);
}

TEST_CASE("flagged mixture") {
  const Operator w = werner(2.0);
  const Operator p = rho_pent();
  SUBCASE("equal branches trace back to the input") {
    const Operator m = flagged_mixture(w, w);
    CHECK(m.layout().to_string() == "[(3,A),(3,B),(2,A)]");
    CHECK(max_abs_diff(partial_trace(m, {2}).matrix(), w.matrix()) < 1e-15);
  }
  SUBCASE("valid state with branch probabilities 1/2") {
    const Operator m = flagged_mixture(p, w);
    CHECK(std::abs(m.trace() - 1.0) < 1e-14);
    CHECK(is_psd(m));
    // Project the flag onto |0> and |1>.
    Eigen::MatrixXcd f0 = Eigen::MatrixXcd::Zero(2, 2), f1 = Eigen::MatrixXcd::Zero(2, 2);
    f0(0, 0) = 1.0;
    f1(1, 1) = 1.0;
    const Eigen::MatrixXcd proj0 = oracle::kron(Eigen::MatrixXcd::Identity(9, 9), f0);
    const Eigen::MatrixXcd proj1 = oracle::kron(Eigen::MatrixXcd::Identity(9, 9), f1);
    const double p0 = (proj0 * m.matrix()).trace().real();
    const double p1 = (proj1 * m.matrix()).trace().real();
    CHECK(p0 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p1 == doctest::Approx(0.5).epsilon(1e-14));
    const Operator branch0(m.layout(), proj0 * m.matrix() * proj0 / p0);
    const Operator branch1(m.layout(), proj1 * m.matrix() * proj1 / p1);
    CHECK(max_abs_diff(partial_trace(branch0, {2}).matrix(), p.matrix()) < 1e-14);
    CHECK(max_abs_diff(partial_trace(branch1, {2}).matrix(), w.matrix()) < 1e-14);
  }
  SUBCASE("layout mismatch is rejected") {
    const Operator other(SubsystemLayout({{3, Party::B}, {3, Party::A}}), w.matrix());
    CHECK_THROWS_AS(flagged_mixture(w, other), std::invalid_argument);
  }
}

TEST_CASE("tensor_power") {
  const Operator w = werner(2.0);
  CHECK(max_abs_diff(tensor_power(w, 1).matrix(), w.matrix()) == 0.0);
  const Operator w2 = tensor_power(w, 2);
  CHECK(w2.dim() == 81);
  CHECK(w2.layout().to_string() == "[(3,A),(3,B),(3,A),(3,B)]");
  CHECK(std::abs(w2.trace() - 1.0) < 1e-13);
  const Operator w3 = tensor_power(w, 3);
  CHECK(w3.dim() == 729);
  CHECK(std::abs(w3.trace() - 1.0) < 1e-13);
  CHECK_THROWS_AS(tensor_power(w, 4), std::invalid_argument);
  CHECK_THROWS_AS(tensor_power(w, 0), std::invalid_argument);
}

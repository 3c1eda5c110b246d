#include <doctest.h>

#include <cmath>
#include <random>

#include "bek/optimizer.hpp"
#include "bek/states.hpp"
#include "bek/tensor.hpp"
#include "bek/witness.hpp"
#include "oracles.hpp"

using namespace bek;

namespace {

SeeSawConfig quick(int starts = 8, std::uint64_t seed = 5) {
  SeeSawConfig cfg;
  cfg.num_starts = starts;
  cfg.rng_seed = seed;
  return cfg;
}

double quotient(const Ket& psi, const Operator& m) {
  const Eigen::VectorXcd& v = psi.amplitudes();
  return (v.adjoint() * m.matrix() * v)(0, 0).real() / v.squaredNorm();
}

}  // namespace

TEST_CASE("trivial and exactly solvable instances") {
  SUBCASE("M = I gives 1") {
    const auto r = minimize_rank2(Operator::identity(SubsystemLayout::bipartite(3, 4)), quick(3));
    CHECK(std::abs(r.value - 1.0) < 1e-14);
  }
  SUBCASE("a 2 (x) k cut reaches the smallest eigenvalue") {
    // Every vector of C^2 (x) C^k has Schmidt rank <= 2.
    std::mt19937_64 rng(31);
    for (int k : {2, 3, 5}) {
      const Eigen::MatrixXcd h = oracle::random_hermitian(2 * k, rng);
      const Operator m(SubsystemLayout::bipartite(2, static_cast<std::size_t>(k)), h);
      const double exact = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues()[0];
      CHECK(std::abs(minimize_rank2(m, quick(4)).value - exact) < 1e-9);
    }
  }
  SUBCASE("single Werner copy matches the rank-2 minimum over the PT") {
    // (1 (x) T) of lambda I - (lambda+1)/3 H is lambda I - (lambda+1) P+ / normalization,
    // and |Psi> has Schmidt rank 3, so the rank-2 minimum is
    // (lambda - (lambda+1)*2/3) / (8 lambda - 1) = (lambda - 2) / (3 (8 lambda - 1)).
    for (double lambda : {0.6, 1.0, 2.0, 4.0}) {
      const auto r = conjecture_evidence(1, lambda, quick(16));
      CHECK(std::abs(r.value - (lambda - 2.0) / (3.0 * (8.0 * lambda - 1.0))) < 1e-9);
    }
    CHECK(conjecture_evidence(1, 2.0, quick(16)).value >= -1e-9);
    CHECK(conjecture_evidence(1, 1.0, quick(16)).value < 0.0);
  }
}

TEST_CASE("see-saw monotonicity") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator m(SubsystemLayout::bipartite(3, 3), oracle::random_hermitian(9, rng));
    SeeSawConfig cfg = quick(4, 100 + static_cast<std::uint64_t>(trial));
    cfg.record_trace = true;
    const auto r = minimize_rank2(m, cfg);
    for (const auto& s : r.starts) {
      REQUIRE(!s.trace.empty());
      double prev = s.initial_value;
      for (double v : s.trace) {
        CHECK(v <= prev + 1e-12 * std::max(1.0, std::abs(prev)));
        prev = v;
      }
      CHECK(s.value <= s.initial_value + 1e-12);
      CHECK(r.value <= s.value + 1e-14 * std::max(1.0, std::abs(s.value)));  // ties go to the lowest index
    }
  }
}

TEST_CASE("determinism") {
  const Operator m = activation_operator(2.2);
  SeeSawConfig one = quick(6, 77);
  SeeSawConfig many = one;
  many.num_threads = 4;
  const auto a = minimize_rank2(m, one);
  const auto b = minimize_rank2(m, one);
  const auto c = minimize_rank2(m, many);
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.best_start == c.best_start);
  CHECK(max_abs_diff(a.vector.amplitudes(), c.vector.amplitudes()) == 0.0);
  const auto s1 = sweep_b({0.19, 0.2}, one);
  const auto s2 = sweep_b({0.19, 0.2}, many);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(s1[k].min_value == s2[k].min_value);
    CHECK(s1[k].iterations == s2[k].iterations);
  }
  const auto other = minimize_rank2(m, quick(6, 78));
  CHECK(other.starts[1].initial_value != a.starts[1].initial_value);
}

TEST_CASE("activation at b = 0.2") {
  const auto r = minimize_activation(2.0, quick(8));
  const double analytic = witness_value_normalized(2.0);
  CHECK(analytic == doctest::Approx(-1.583e-4).epsilon(1e-3));
  CHECK(r.value <= analytic + 1e-15);
  CHECK(r.value <= -1.58e-4);
  REQUIRE(r.starts.size() == 8);
  CHECK(r.starts[0].seeded);
  CHECK(std::abs(r.starts[0].initial_value - analytic) < 1e-13);

  SUBCASE("returned vector is a genuine rank-2 witness") {
    CHECK(std::abs(r.vector.squared_norm() - 1.0) < 1e-12);
    CHECK(schmidt_rank(r.vector).rank <= 2);
    const double via_witness = expectation(r.vector, tensor(werner(2.0), rho_pent()), {Party::B});
    CHECK(std::abs(via_witness - r.value) < 1e-10);
  }
}

TEST_CASE("returned vectors reproduce their values") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const SubsystemLayout l({{3, Party::A}, {2, Party::B}, {2, Party::A}, {3, Party::B}});
    const Operator m(l, oracle::random_hermitian(36, rng));
    const auto r = minimize_rank2(m, quick(4, static_cast<std::uint64_t>(trial)));
    CHECK(r.vector.layout().to_string() == l.to_string());
    CHECK(std::abs(quotient(r.vector, m) - r.value) < 1e-10);
    CHECK(schmidt_rank(r.vector).rank <= 2);
    const double lowest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m.matrix()).eigenvalues()[0];
    CHECK(r.value >= lowest - 1e-10);
  }
}

TEST_CASE("sweep records") {
  const auto recs = sweep_b({0.2, 0.16, 0.25, 0.18}, quick(3));
  REQUIRE(recs.size() == 4);
  CHECK(recs[0].ok());
  CHECK(recs[0].lambda == 2.0);
  CHECK(recs[0].min_value <= -1.58e-4);
  CHECK_FALSE(recs[1].ok());
  CHECK_FALSE(recs[2].ok());
  CHECK(recs[3].ok());
  CHECK(std::abs(recs[3].lambda - lambda_from_b(0.18)) < 1e-12);
}

TEST_CASE("rejections") {
  SeeSawConfig cfg = quick(2);
  SUBCASE("non-Hermitian M") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(9, 9);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(minimize_rank2(Operator(SubsystemLayout::bipartite(3, 3), m), cfg), std::invalid_argument);
  }
  SUBCASE("single-party cut") {
    const Operator m(SubsystemLayout({{3, Party::A}, {3, Party::A}}), Eigen::MatrixXcd::Identity(9, 9));
    CHECK_THROWS_AS(minimize_rank2(m, cfg), std::invalid_argument);
  }
  SUBCASE("bad configs") {
    SeeSawConfig bad = cfg;
    bad.max_iters = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.num_starts = 0;
    CHECK_THROWS_AS(minimize_rank2(activation_operator(2.0), bad), std::invalid_argument);
  }
  SUBCASE("seeds") {
    const Operator m = werner(2.0);
    const std::vector<Ket> wrong{analytic_psi2()};
    CHECK_THROWS_AS(minimize_rank2(m, cfg, wrong), std::invalid_argument);
    const std::vector<Ket> too_many{max_entangled(), max_entangled(), max_entangled()};
    CHECK_THROWS_AS(minimize_rank2(m, cfg, too_many), std::invalid_argument);
  }
  SUBCASE("copy count") {
    CHECK_THROWS_AS(conjecture_operator(0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(conjecture_operator(4, 2.0), std::invalid_argument);
  }
}

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "bek/criteria.hpp"
#include "bek/states.hpp"
#include "bek/tensor.hpp"
#include "bek/witness.hpp"
#include "cli.hpp"

namespace bek::cli {
namespace {

struct Measured {
  double residual;
  std::string detail;
};

CheckResult evaluate(const std::string& name, double tolerance, const std::function<Measured()>& body) {
  try {
    const Measured m = body();
    const bool ok = std::isfinite(m.residual) && m.residual <= tolerance;
    return {name, ok, m.residual, tolerance, m.detail};
  } catch (const std::exception& e) {
    return {name, false, std::nan(""), tolerance, std::string("exception: ") + e.what()};
  }
}

std::string num(double x) { return format_number(x); }

}  // namespace

VerifyOptions default_verify_options() { return {pent_height()}; }

VerifyOptions faulty_height_options() { return {0.5 * std::sqrt(std::sqrt(5.0) - 1.0)}; }

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  const double s5 = std::sqrt(5.0);
  const PentBasis basis = pent_basis_with_height(opts.pent_height);
  std::vector<CheckResult> out;
  const auto add = [&](const std::string& name, double tol, const std::function<Measured()>& body) {
    out.push_back(evaluate(name, tol, body));
  };

  // Pentagon basis.
  add("pentagon unit norms", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& v : basis.vectors) worst = std::max(worst, std::abs(v.norm() - 1.0));
    return Measured{worst, "max |  ||v_i|| - 1 |"};
  });
  add("pentagon orthogonality", 1e-12, [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::abs(basis.vectors[i].dot(basis.vectors[(i + 2) % 5])));
    return Measured{worst, "max |<v_i|v_{i+2}>|"};
  });
  add("UPB products mutually orthogonal", 1e-12, [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        worst = std::max(worst, std::abs(basis.products[i].amplitudes().dot(basis.products[j].amplitudes())));
    return Measured{worst, "max |<p_i|p_j>|, i != j"};
  });

  // rho_Pent.
  add("rho_Pent unit trace", 1e-12, [&] {
    return Measured{std::abs(rho_pent(basis).trace() - 1.0), "|Tr rho_Pent - 1|"};
  });
  add("rho_Pent spectrum {0 x5, 1/4 x4}", 1e-12, [&] {
    const Eigen::VectorXd ev = spectrum(rho_pent(basis));
    double worst = 0.0;
    for (Eigen::Index k = 0; k < 9; ++k) worst = std::max(worst, std::abs(ev[k] - (k < 5 ? 0.0 : 0.25)));
    return Measured{worst, "max eigenvalue deviation"};
  });
  add("rho_Pent annihilates UPB products", 1e-12, [&] {
    const Operator rho = rho_pent(basis);
    double worst = 0.0;
    for (const auto& p : basis.products) worst = std::max(worst, (rho.matrix() * p.amplitudes()).norm());
    return Measured{worst, "max ||rho_Pent p_i||"};
  });
  add("rho_Pent partial-transpose invariance", 1e-12, [&] {
    return Measured{ppt_invariance(rho_pent(basis)).deviation, "max |PT(rho_Pent) - rho_Pent|"};
  });

  // rho_Pent matrix elements used by the closed form.
  for (const auto& e : inner_product_table(basis)) {
    add("inner product " + e.label, 1e-12, [e] {
      return Measured{std::abs(e.value - e.expected), "value " + num(e.value) + ", exact " + num(e.expected)};
    });
  }

  // Analytic witness.
  add("off-diagonal witness term vanishes", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k) worst = std::max(worst, std::abs(witness_terms_raw(2.0 + 0.1 * k, basis).off_diagonal));
    return Measured{worst, "max |off-diagonal term| on lambda in [2, 3]"};
  });
  add("closed form matches payload decomposition", 1e-10, [&] {
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double lambda = 2.0 + 0.1 * k;
      worst = std::max(worst, std::abs(witness_terms_raw(lambda, basis).total - closed_form(lambda)));
    }
    return Measured{worst, "max |raw - closed form| on 11 points in [2, 3]"};
  });
  add("81-dim expectation matches payload decomposition", 1e-10, [&] {
    double worst = 0.0;
    const Ket psi = analytic_psi2(basis);
    for (double lambda : {2.0, 2.33, 3.0}) {
      const Operator rho = tensor(werner(lambda), rho_pent(basis));
      const double full = expectation(psi, rho, {Party::B}) * (8.0 * lambda - 1.0);
      worst = std::max(worst, std::abs(full - witness_terms_raw(lambda, basis).total));
    }
    return Measured{worst, "max |(8 lambda - 1) <psi2|PT(rho)|psi2> - raw|"};
  });
  add("threshold ~ 2.3300", 5e-5, [&] {
    const double t = threshold_lambda();
    return Measured{std::abs(t - 2.33), "threshold " + num(t)};
  });
  add("closed form vanishes at threshold", 1e-12, [&] {
    return Measured{std::abs(closed_form(threshold_lambda())), "|closed_form(threshold)|"};
  });
  add("raw witness changes sign across threshold", 0.0, [&] {
    const double lo = witness_terms_raw(2.32, basis).total;
    const double hi = witness_terms_raw(2.34, basis).total;
    const bool ok = lo < 0.0 && hi > 0.0 && 2.32 < threshold_lambda() && threshold_lambda() < 2.34;
    return Measured{ok ? 0.0 : 1.0, "raw(2.32) = " + num(lo) + ", raw(2.34) = " + num(hi)};
  });
  add("analytic psi2 has Schmidt rank 2", 0.0, [&] {
    const auto s = schmidt_rank(analytic_psi2(basis));
    return Measured{std::abs(s.rank - 2.0), "rank " + std::to_string(s.rank)};
  });
  add("analytic psi2 squared norm = 9.5 + sqrt5", 1e-12, [&] {
    const double n2 = analytic_psi2(basis).squared_norm();
    return Measured{std::abs(n2 - (9.5 + s5)), "||psi2||^2 = " + num(n2)};
  });
  add("local-vector assembly matches term expansion", 1e-14, [&] {
    const Ket a = assemble(analytic_witness(basis));
    const Ket b = analytic_psi2(basis);
    return Measured{(a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff(), "max amplitude deviation"};
  });

  // Werner family.
  add("Werner spectra match closed forms", 1e-12, [&] {
    double worst = 0.0;
    for (double lambda : {0.5, 2.0, 5.0, 100.0}) {
      const Eigen::VectorXd ev = spectrum(werner(lambda));
      std::vector<double> expected(6, werner_symmetric_eigenvalue(lambda));
      expected.insert(expected.end(), 3, werner_antisymmetric_eigenvalue(lambda));
      std::sort(expected.begin(), expected.end());
      for (Eigen::Index k = 0; k < 9; ++k) worst = std::max(worst, std::abs(ev[k] - expected[static_cast<std::size_t>(k)]));
    }
    return Measured{worst, "lambda in {0.5, 2, 5, 100}"};
  });
  add("Werner PT minimum eigenvalue = -1/(8 lambda - 1)", 1e-12, [&] {
    double worst = 0.0;
    for (double lambda : {2.0, 2.33, 5.0, 50.0})
      worst = std::max(worst, std::abs(peres_horodecki(werner(lambda)).min_pt_eigenvalue + 1.0 / (8.0 * lambda - 1.0)));
    return Measured{worst, "lambda in {2, 2.33, 5, 50}"};
  });
  add("lambda(b = 1/5) = 2", 0.0, [&] {
    return Measured{std::abs(lambda_from_b(0.2) - 2.0), "exact"};
  });
  add("b <-> lambda round trip", 1e-14, [&] {
    return Measured{std::abs(b_from_lambda(lambda_from_b(0.19)) - 0.19), "b = 0.19"};
  });

  // Criteria.
  add("rho_W(2) is NPT", 0.0, [&] {
    const auto r = peres_horodecki(werner(2.0));
    return Measured{r.npt ? 0.0 : 1.0, "min PT eigenvalue " + num(r.min_pt_eigenvalue)};
  });
  add("rho_Pent is PPT", 0.0, [&] {
    const auto r = peres_horodecki(rho_pent(basis));
    return Measured{r.npt ? 1.0 : 0.0, "min PT eigenvalue " + num(r.min_pt_eigenvalue)};
  });
  const auto reduction_check = [&](const std::string& name, const std::function<Operator()>& make) {
    add(name, tol::psd, [make] {
      const auto r = reduction_criterion(make());
      const double worst = std::max(0.0, -std::min(r.min_eigenvalue_a, r.min_eigenvalue_b));
      return Measured{worst, "min eigenvalues " + num(r.min_eigenvalue_a) + ", " + num(r.min_eigenvalue_b)};
    });
  };
  reduction_check("reduction criterion rho_W(2)", [] { return werner(2.0); });
  reduction_check("reduction criterion rho_Pent", [&] { return rho_pent(basis); });
  reduction_check("reduction criterion rho_W(2) x rho_Pent", [&] { return tensor(werner(2.0), rho_pent(basis)); });

  return out;
}

}  // namespace bek::cli

// operator.hpp
// Dense complex operators and kets carrying a subsystem layout.

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "bek/layout.hpp"

namespace bek {

using cplx = std::complex<double>;

namespace tol {
inline constexpr double herm = 1e-10;   // max |X - X^dagger| entry
inline constexpr double trace = 1e-10;  // |Tr rho - 1|
inline constexpr double psd = 1e-9;     // min eigenvalue >= -psd
inline constexpr double eig = 1e-10;    // eigenpair residual
}  // namespace tol

class Operator {
 public:
  Operator(SubsystemLayout layout, Eigen::MatrixXcd matrix);

  static Operator identity(const SubsystemLayout& layout);

  const SubsystemLayout& layout() const { return layout_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  cplx trace() const { return matrix_.trace(); }
  /// Largest entry of |X - X^dagger|.
  double hermiticity_defect() const;
  bool is_hermitian(double tolerance = tol::herm) const { return hermiticity_defect() <= tolerance; }

  Operator scaled(cplx s) const { return {layout_, s * matrix_}; }
  /// Same matrix, different labels; the factor dims must multiply to the same total.
  Operator relabeled(SubsystemLayout layout) const;

 private:
  SubsystemLayout layout_;
  Eigen::MatrixXcd matrix_;
};

class Ket {
 public:
  Ket(SubsystemLayout layout, Eigen::VectorXcd amplitudes);

  /// Computational-basis ket |i0, i1, ...>.
  static Ket basis(const SubsystemLayout& layout, const std::vector<std::size_t>& digits);

  const SubsystemLayout& layout() const { return layout_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

  double norm() const { return amplitudes_.norm(); }
  double squared_norm() const { return amplitudes_.squaredNorm(); }
  Ket normalized() const;
  Ket scaled(cplx s) const { return {layout_, s * amplitudes_}; }

  /// |psi><psi| on the same layout.
  Operator projector() const;

 private:
  SubsystemLayout layout_;
  Eigen::VectorXcd amplitudes_;
};

/// Largest entry of |a - b|; matrices must be the same shape.
double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace bek

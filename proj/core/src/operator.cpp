#include "bek/operator.hpp"

#include <stdexcept>

namespace bek {

Operator::Operator(SubsystemLayout layout, Eigen::MatrixXcd matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("Operator: matrix must be square");
  if (static_cast<std::size_t>(matrix_.rows()) != layout_.total_dim())
    throw std::invalid_argument("Operator: matrix side " + std::to_string(matrix_.rows()) +
                                " does not match layout " + layout_.to_string());
}

Operator Operator::identity(const SubsystemLayout& layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return {layout, Eigen::MatrixXcd::Identity(d, d)};
}

double Operator::hermiticity_defect() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

Operator Operator::relabeled(SubsystemLayout layout) const { return {std::move(layout), matrix_}; }

Ket::Ket(SubsystemLayout layout, Eigen::VectorXcd amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim())
    throw std::invalid_argument("Ket: amplitude count " + std::to_string(amplitudes_.size()) +
                                " does not match layout " + layout_.to_string());
}

Ket Ket::basis(const SubsystemLayout& layout, const std::vector<std::size_t>& digits) {
  if (digits.size() != layout.size()) throw std::invalid_argument("Ket::basis: one digit per factor required");
  const auto strides = layout.strides();
  std::size_t idx = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= layout[k].dim) throw std::invalid_argument("Ket::basis: digit out of range");
    idx += digits[k] * strides[k];
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  v[static_cast<Eigen::Index>(idx)] = 1.0;
  return {layout, std::move(v)};
}

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("Ket::normalized: zero vector");
  return {layout_, amplitudes_ / n};
}

Operator Ket::projector() const { return {layout_, amplitudes_ * amplitudes_.adjoint()}; }

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace bek

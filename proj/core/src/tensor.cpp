#include "bek/tensor.hpp"

#include <algorithm>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace bek {
namespace {

using Index = Eigen::Index;

// For every flat index of `layout`, the flat index of the same multi-index
// under the reordered layout (new factor k = old factor perm[k]).
std::vector<Index> permuted_index_map(const SubsystemLayout& layout, const std::vector<std::size_t>& perm) {
  const auto old_strides = layout.strides();
  const auto new_strides = layout.permuted(perm).strides();
  // Old factor perm[k] lands at new position k.
  std::vector<std::size_t> dest_stride(layout.size());
  for (std::size_t k = 0; k < perm.size(); ++k) dest_stride[perm[k]] = new_strides[k];

  const std::size_t total = layout.total_dim();
  std::vector<Index> map(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t dest = 0;
    for (std::size_t f = 0; f < layout.size(); ++f) {
      const std::size_t digit = (flat / old_strides[f]) % layout[f].dim;
      dest += digit * dest_stride[f];
    }
    map[flat] = static_cast<Index>(dest);
  }
  return map;
}

void check_subset(const std::vector<std::size_t>& subset, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (auto k : subset) {
    if (k >= n) throw std::invalid_argument("factor index " + std::to_string(k) + " out of range");
    if (seen[k]) throw std::invalid_argument("factor index repeated in subset");
    seen[k] = true;
  }
}

// Contribution of the subset factors to each flat index.
std::vector<Index> subset_component(const SubsystemLayout& layout, const std::vector<std::size_t>& subset) {
  const auto strides = layout.strides();
  const std::size_t total = layout.total_dim();
  std::vector<Index> comp(total, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t c = 0;
    for (auto f : subset) c += ((flat / strides[f]) % layout[f].dim) * strides[f];
    comp[flat] = static_cast<Index>(c);
  }
  return comp;
}

void require_hermitian(const Operator& op, const char* where) {
  const double defect = op.hermiticity_defect();
  if (defect > tol::herm)
    throw std::invalid_argument(std::string(where) + ": operator is not Hermitian (defect " +
                                std::to_string(defect) + ")");
}

}  // namespace

Operator tensor(const Operator& a, const Operator& b) {
  Eigen::MatrixXcd m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return {a.layout().concat(b.layout()), std::move(m)};
}

Ket tensor(const Ket& a, const Ket& b) {
  Eigen::VectorXcd v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return {a.layout().concat(b.layout()), std::move(v)};
}

Operator permute_subsystems(const Operator& op, const std::vector<std::size_t>& perm) {
  check_permutation(perm, op.layout().size());
  const auto map = permuted_index_map(op.layout(), perm);
  const auto& in = op.matrix();
  Eigen::MatrixXcd out(in.rows(), in.cols());
  for (Index c = 0; c < in.cols(); ++c)
    for (Index r = 0; r < in.rows(); ++r) out(map[r], map[c]) = in(r, c);
  return {op.layout().permuted(perm), std::move(out)};
}

Ket permute_subsystems(const Ket& psi, const std::vector<std::size_t>& perm) {
  check_permutation(perm, psi.layout().size());
  const auto map = permuted_index_map(psi.layout(), perm);
  const auto& in = psi.amplitudes();
  Eigen::VectorXcd out(in.size());
  for (Index r = 0; r < in.size(); ++r) out[map[r]] = in[r];
  return {psi.layout().permuted(perm), std::move(out)};
}

Operator partial_transpose(const Operator& op, const std::vector<std::size_t>& subset) {
  check_subset(subset, op.layout().size());
  if (subset.empty()) return op;
  // Swapping the subset digits of (row, col) is r' = r - s(r) + s(c), c' = c - s(c) + s(r).
  const auto s = subset_component(op.layout(), subset);
  const auto& in = op.matrix();
  Eigen::MatrixXcd out(in.rows(), in.cols());
  for (Index c = 0; c < in.cols(); ++c)
    for (Index r = 0; r < in.rows(); ++r) out(r - s[r] + s[c], c - s[c] + s[r]) = in(r, c);
  return {op.layout(), std::move(out)};
}

Operator partial_transpose(const Operator& op, Party p) {
  return partial_transpose(op, op.layout().indices_of(p));
}

Operator partial_trace(const Operator& op, const std::vector<std::size_t>& subset) {
  const auto& layout = op.layout();
  check_subset(subset, layout.size());
  if (subset.size() == layout.size())
    throw std::invalid_argument("partial_trace: cannot trace out every factor; use trace()");
  if (subset.empty()) return op;

  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < layout.size(); ++k)
    if (std::find(subset.begin(), subset.end(), k) == subset.end()) kept.push_back(k);

  const auto out_layout = layout.without(subset);
  const auto out_strides = out_layout.strides();
  const auto strides = layout.strides();
  const std::size_t total = layout.total_dim();

  std::vector<Index> traced_part = subset_component(layout, subset);
  std::vector<Index> kept_index(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < kept.size(); ++j)
      idx += ((flat / strides[kept[j]]) % layout[kept[j]].dim) * out_strides[j];
    kept_index[flat] = static_cast<Index>(idx);
  }

  const auto dout = static_cast<Index>(out_layout.total_dim());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dout, dout);
  const auto& in = op.matrix();
  for (Index c = 0; c < in.cols(); ++c)
    for (Index r = 0; r < in.rows(); ++r)
      if (traced_part[r] == traced_part[c]) out(kept_index[r], kept_index[c]) += in(r, c);
  return {out_layout, std::move(out)};
}

Eigen::VectorXd spectrum(const Operator& op) {
  require_hermitian(op, "spectrum");
  const Eigen::MatrixXcd h = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

EigPair min_eigpair(const Operator& op) {
  require_hermitian(op, "min_eigpair");
  const Eigen::MatrixXcd h = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("min_eigpair: eigensolver failed");
  return {es.eigenvalues()[0], Ket(op.layout(), es.eigenvectors().col(0))};
}

double min_eigenvalue(const Operator& op) { return spectrum(op)[0]; }

bool is_psd(const Operator& op, double tolerance) { return min_eigenvalue(op) >= -tolerance; }

cplx sandwich(const Ket& psi, const Operator& op) {
  if (psi.dim() != op.dim()) throw std::invalid_argument("sandwich: dimension mismatch");
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes());
}

}  // namespace bek

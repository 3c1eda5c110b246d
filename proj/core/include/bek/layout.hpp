// layout.hpp
// Tensor-factor bookkeeping for bipartite operators and kets.
//
// Index convention used everywhere in the library: row-major Kronecker order.
// The first factor varies slowest, so for factors (d0, d1, ..., dk) the flat
// index of the multi-index (i0, i1, ..., ik) is
//     i0 * (d1*...*dk) + i1 * (d2*...*dk) + ... + ik.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace bek {

enum class Party { A, B };

char to_char(Party p);

struct Factor {
  std::size_t dim;
  Party party;

  bool operator==(const Factor&) const = default;
};

class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Factor> factors);

  /// Standard two-factor layout [(dA, A), (dB, B)].
  static SubsystemLayout bipartite(std::size_t dim_a, std::size_t dim_b);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  const Factor& operator[](std::size_t k) const { return factors_[k]; }

  std::size_t total_dim() const;
  /// Product of the dims of all factors belonging to `p`.
  std::size_t party_dim(Party p) const;
  /// Factor indices belonging to `p`, in layout order.
  std::vector<std::size_t> indices_of(Party p) const;
  bool has_party(Party p) const;

  /// Stride of factor k in the flat index.
  std::vector<std::size_t> strides() const;

  /// Layout whose factor k is this layout's factor perm[k].
  SubsystemLayout permuted(const std::vector<std::size_t>& perm) const;
  /// Layout with the listed factors removed.
  SubsystemLayout without(const std::vector<std::size_t>& subset) const;
  /// Concatenation: this layout's factors followed by `other`'s.
  SubsystemLayout concat(const SubsystemLayout& other) const;
  /// Permutation that brings all A factors before all B factors, keeping the
  /// relative order within each party.
  std::vector<std::size_t> party_blocking_permutation() const;

  std::string to_string() const;

  bool operator==(const SubsystemLayout&) const = default;

 private:
  std::vector<Factor> factors_;
};

/// Throws std::invalid_argument unless `perm` is a permutation of 0..n-1.
void check_permutation(const std::vector<std::size_t>& perm, std::size_t n);
std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& perm);

}  // namespace bek

#include "bek/layout.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bek {

char to_char(Party p) { return p == Party::A ? 'A' : 'B'; }

SubsystemLayout::SubsystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("SubsystemLayout: at least one factor required");
  for (const auto& f : factors_)
    if (f.dim == 0) throw std::invalid_argument("SubsystemLayout: factor dimension must be >= 1");
}

SubsystemLayout SubsystemLayout::bipartite(std::size_t dim_a, std::size_t dim_b) {
  return SubsystemLayout({{dim_a, Party::A}, {dim_b, Party::B}});
}

std::size_t SubsystemLayout::total_dim() const {
  std::size_t d = 1;
  for (const auto& f : factors_) d *= f.dim;
  return factors_.empty() ? 0 : d;
}

std::size_t SubsystemLayout::party_dim(Party p) const {
  std::size_t d = 1;
  for (const auto& f : factors_)
    if (f.party == p) d *= f.dim;
  return d;
}

std::vector<std::size_t> SubsystemLayout::indices_of(Party p) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < factors_.size(); ++k)
    if (factors_[k].party == p) out.push_back(k);
  return out;
}

bool SubsystemLayout::has_party(Party p) const {
  return std::any_of(factors_.begin(), factors_.end(), [p](const Factor& f) { return f.party == p; });
}

std::vector<std::size_t> SubsystemLayout::strides() const {
  std::vector<std::size_t> s(factors_.size(), 1);
  for (std::size_t k = factors_.size(); k-- > 1;) s[k - 1] = s[k] * factors_[k].dim;
  return s;
}

SubsystemLayout SubsystemLayout::permuted(const std::vector<std::size_t>& perm) const {
  check_permutation(perm, factors_.size());
  std::vector<Factor> out;
  out.reserve(perm.size());
  for (auto k : perm) out.push_back(factors_[k]);
  return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::without(const std::vector<std::size_t>& subset) const {
  std::vector<Factor> out;
  for (std::size_t k = 0; k < factors_.size(); ++k)
    if (std::find(subset.begin(), subset.end(), k) == subset.end()) out.push_back(factors_[k]);
  return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<Factor> out = factors_;
  out.insert(out.end(), other.factors_.begin(), other.factors_.end());
  return SubsystemLayout(std::move(out));
}

std::vector<std::size_t> SubsystemLayout::party_blocking_permutation() const {
  auto perm = indices_of(Party::A);
  auto b = indices_of(Party::B);
  perm.insert(perm.end(), b.begin(), b.end());
  return perm;
}

std::string SubsystemLayout::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) os << ',';
    os << '(' << factors_[k].dim << ',' << to_char(factors_[k].party) << ')';
  }
  os << ']';
  return os.str();
}

void check_permutation(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) throw std::invalid_argument("permutation length does not match factor count");
  std::vector<bool> seen(n, false);
  for (auto k : perm) {
    if (k >= n) throw std::invalid_argument("permutation index out of range");
    if (seen[k]) throw std::invalid_argument("permutation repeats a factor index");
    seen[k] = true;
  }
}

std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& perm) {
  check_permutation(perm, perm.size());
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
  return inv;
}

}  // namespace bek

#include "kform/multi_index.hpp"

#include <numeric>

#include "kform/error.hpp"

namespace kform {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw DimensionError("multi-index entries must be non-negative");
}

MultiIndex MultiIndex::unit(std::size_t dimension, std::size_t k) {
  if (k >= dimension) throw DimensionError("axis index out of range");
  MultiIndex m(dimension);
  m.entries_[k] = 1;
  return m;
}

int MultiIndex::order() const noexcept { return std::accumulate(entries_.begin(), entries_.end(), 0); }

std::size_t MultiIndex::odd_count() const noexcept {
  std::size_t n = 0;
  for (int e : entries_) n += static_cast<std::size_t>(e % 2);
  return n;
}

MultiIndex MultiIndex::half() const {
  MultiIndex out(dimension());
  for (std::size_t k = 0; k < dimension(); ++k) out.entries_[k] = entries_[k] / 2;
  return out;
}

std::vector<std::size_t> MultiIndex::odd_axes() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dimension(); ++k)
    if (entries_[k] % 2) out.push_back(k);
  return out;
}

MultiIndex MultiIndex::raised(std::size_t k, int by) const {
  if (k >= dimension()) throw DimensionError("axis index out of range");
  MultiIndex out = *this;
  out.entries_[k] += by;
  if (out.entries_[k] < 0) throw DimensionError("multi-index entry would become negative");
  return out;
}

MultiIndex MultiIndex::lowered(std::size_t k, int by) const { return raised(k, -by); }

void require_same_dimension(const MultiIndex& a, const MultiIndex& b) {
  if (a.dimension() != b.dimension())
    throw DimensionError("multi-index dimension mismatch: " + a.to_string() + " vs " + b.to_string());
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  require_same_dimension(a, b);
  MultiIndex out = a;
  for (std::size_t k = 0; k < a.dimension(); ++k) out.entries_[k] += b.entries_[k];
  return out;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  require_same_dimension(a, b);
  std::vector<int> e(a.dimension());
  for (std::size_t k = 0; k < a.dimension(); ++k) e[k] = a.entries_[k] - b.entries_[k];
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < entries_.size(); ++k) s += (k ? "," : "") + std::to_string(entries_[k]);
  return s + ")";
}

}  // namespace kform

#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace kform {

/// Element of Z^n_+ indexing the partial derivative d^alpha = d_1^{alpha_1} ... d_n^{alpha_n}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dimension) : entries_(dimension, 0) {}
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

  /// e_k: single 1 in slot k (0-based).
  static MultiIndex unit(std::size_t dimension, std::size_t k);

  std::size_t dimension() const noexcept { return entries_.size(); }
  int operator[](std::size_t k) const { return entries_.at(k); }
  const std::vector<int>& entries() const noexcept { return entries_; }
  int order() const noexcept;

  /// Number of odd components (O_alpha).
  std::size_t odd_count() const noexcept;
  /// gamma with alpha = 2*gamma + delta, delta in {0,1}^n.
  MultiIndex half() const;
  /// Axes k where alpha_k is odd, ascending.
  std::vector<std::size_t> odd_axes() const;

  MultiIndex raised(std::size_t k, int by = 1) const;
  /// Throws DimensionError if the slot would become negative.
  MultiIndex lowered(std::size_t k, int by = 1) const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  std::string to_string() const;

 private:
  std::vector<int> entries_;
};

/// Throws DimensionError if the two indices live in different dimensions.
void require_same_dimension(const MultiIndex& a, const MultiIndex& b);

}  // namespace kform

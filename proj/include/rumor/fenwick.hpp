#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rumor {

// Binary indexed tree over nonnegative weights with prefix-sum inversion;
// backs O(log n) site selection in the event engine.
class FenwickTree {
 public:
  explicit FenwickTree(std::size_t n) : n_(n), bit_(n + 1, 0.0) {
    high_bit_ = 1;
    while ((high_bit_ << 1) <= n_) high_bit_ <<= 1;
  }

  std::size_t size() const { return n_; }

  void add(std::size_t i, double delta) {
    for (std::size_t j = i + 1; j <= n_; j += j & (0 - j)) bit_[j] += delta;
  }

  // Sum of the first `count` weights.
  double prefix_sum(std::size_t count) const {
    double s = 0.0;
    for (std::size_t j = count; j > 0; j -= j & (0 - j)) s += bit_[j];
    return s;
  }

  double total() const { return prefix_sum(n_); }

  // Smallest index i with w[0] + ... + w[i] > target (strict inversion).
  // Callers guarantee target < total(); as a floating-point safeguard the
  // result is clamped into [0, n).
  std::size_t find(double target) const {
    std::size_t pos = 0;
    double remaining = target;
    for (std::size_t mask = high_bit_; mask != 0; mask >>= 1) {
      const std::size_t next = pos + mask;
      if (next <= n_ && bit_[next] <= remaining) {
        pos = next;
        remaining -= bit_[next];
      }
    }
    return pos < n_ ? pos : n_ - 1;
  }

  // Exact O(n) rebuild from raw weights; clears accumulated rounding error.
  void assign(std::span<const double> weights) {
    for (std::size_t i = 0; i < n_; ++i) bit_[i + 1] = weights[i];
    for (std::size_t i = 1; i <= n_; ++i) {
      const std::size_t parent = i + (i & (0 - i));
      if (parent <= n_) bit_[parent] += bit_[i];
    }
  }

 private:
  std::size_t n_;
  std::size_t high_bit_;
  std::vector<double> bit_;
};

}  // namespace rumor

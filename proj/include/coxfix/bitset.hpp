#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace coxfix {

/// Runtime-sized bitset; rows of dense relation and GF(2) matrices.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }

  bool test(std::size_t i) const noexcept { return w_[i >> 6] >> (i & 63) & 1U; }
  void set(std::size_t i) noexcept { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) noexcept { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  DynBitset& operator|=(const DynBitset& o) noexcept {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  DynBitset& operator&=(const DynBitset& o) noexcept {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  DynBitset& operator^=(const DynBitset& o) noexcept {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  DynBitset& and_not(const DynBitset& o) noexcept {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool any() const noexcept {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x != 0; });
  }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t first() const noexcept { return next(0); }

  /// Index of the lowest set bit >= from, or size() when none.
  std::size_t next(std::size_t from) const noexcept {
    if (from >= n_) return n_;
    std::size_t k = from >> 6;
    std::uint64_t cur = w_[k] & (~std::uint64_t{0} << (from & 63));
    for (;;) {
      if (cur) return std::min(n_, (k << 6) + static_cast<std::size_t>(std::countr_zero(cur)));
      if (++k >= w_.size()) return n_;
      cur = w_[k];
    }
  }

  /// Indices of set bits, ascending.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = first(); i < n_; i = next(i + 1)) out.push_back(i);
    return out;
  }

  bool operator==(const DynBitset&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace coxfix

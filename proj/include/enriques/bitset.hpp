#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace enriques {

class DynamicBitset {
public:
  DynamicBitset() = default;
  explicit DynamicBitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  bool any() const {
    for (auto x : w_)
      if (x)
        return true;
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_)
      c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }

  DynamicBitset &operator&=(const DynamicBitset &o) {
    for (std::size_t i = 0; i < w_.size(); ++i)
      w_[i] &= o.w_[i];
    return *this;
  }
  friend DynamicBitset operator&(DynamicBitset a, const DynamicBitset &b) {
    a &= b;
    return a;
  }

  // Clears bits 0..i inclusive.
  void clear_through(std::size_t i) {
    for (std::size_t b = 0; b <= i && b < n_; ++b)
      if ((b & 63) == 0 && b + 63 <= i) {
        w_[b >> 6] = 0;
        b += 63;
      } else {
        reset(b);
      }
  }

  // Smallest set index >= from, or size() if none.
  std::size_t next(std::size_t from) const {
    if (from >= n_)
      return n_;
    std::size_t wi = from >> 6;
    std::uint64_t x = w_[wi] & (~std::uint64_t(0) << (from & 63));
    for (;;) {
      if (x)
        return (wi << 6) + static_cast<std::size_t>(std::countr_zero(x));
      if (++wi >= w_.size())
        return n_;
      x = w_[wi];
    }
  }

  friend bool operator==(const DynamicBitset &, const DynamicBitset &) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

} // namespace enriques

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rdc {

// Fixed-length bit vector. Bits past size() in the last word are kept zero.
class bits {
 public:
  bits() = default;
  explicit bits(std::size_t n, bool fill = false)
      : n_(n), w_((n + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
  void clear() {
    for (auto& x : w_) x = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (auto x : w_)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }
  bool all() const { return count() == n_; }

  bits& operator|=(const bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  bits& operator&=(const bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  bits& operator^=(const bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  bits& subtract(const bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  void flip() {
    for (auto& x : w_) x = ~x;
    trim();
  }
  friend bits operator|(bits a, const bits& b) { return a |= b; }
  friend bits operator&(bits a, const bits& b) { return a &= b; }
  friend bits operator~(bits a) {
    a.flip();
    return a;
  }
  bool operator==(const bits& o) const = default;

  bool subset_of(const bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  // First set bit at or after i, or size() if none.
  std::size_t next(std::size_t i) const {
    if (i >= n_) return n_;
    std::size_t wi = i >> 6;
    std::uint64_t x = w_[wi] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (x) {
        std::size_t r = (wi << 6) + std::countr_zero(x);
        return r < n_ ? r : n_;
      }
      if (++wi >= w_.size()) return n_;
      x = w_[wi];
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t x = w_[wi];
      while (x) {
        std::size_t b = std::countr_zero(x);
        f((wi << 6) + b);
        x &= x - 1;
      }
    }
  }

  // Reads len (<= 64) bits starting at off.
  std::uint64_t word_at(std::size_t off, std::size_t len) const {
    if (len == 0) return 0;
    std::size_t wi = off >> 6, sh = off & 63;
    std::uint64_t v = w_[wi] >> sh;
    if (sh && wi + 1 < w_.size()) v |= w_[wi + 1] << (64 - sh);
    if (len < 64) v &= (std::uint64_t{1} << len) - 1;
    return v;
  }
  // ORs len (<= 64) low bits of v into position off.
  void or_word_at(std::size_t off, std::uint64_t v, std::size_t len) {
    if (len == 0) return;
    if (len < 64) v &= (std::uint64_t{1} << len) - 1;
    std::size_t wi = off >> 6, sh = off & 63;
    w_[wi] |= v << sh;
    if (sh && (sh + len) > 64) w_[wi + 1] |= v >> (64 - sh);
  }

  // this[dst .. dst+len) |= src[from .. from+len)
  void or_range(std::size_t dst, const bits& src, std::size_t from, std::size_t len) {
    if ((dst & 63) == 0 && (from & 63) == 0) {
      std::size_t full = len >> 6;
      std::size_t d = dst >> 6, s = from >> 6;
      for (std::size_t k = 0; k < full; ++k) w_[d + k] |= src.w_[s + k];
      std::size_t done = full << 6;
      if (done < len) or_word_at(dst + done, src.word_at(from + done, len - done), len - done);
      return;
    }
    std::size_t done = 0;
    while (done < len) {
      std::size_t chunk = len - done < 64 ? len - done : 64;
      or_word_at(dst + done, src.word_at(from + done, chunk), chunk);
      done += chunk;
    }
  }

  bool any_in_range(std::size_t off, std::size_t len) const {
    std::size_t done = 0;
    while (done < len) {
      std::size_t chunk = len - done < 64 ? len - done : 64;
      if (word_at(off + done, chunk)) return true;
      done += chunk;
    }
    return false;
  }
  void set_range(std::size_t off, std::size_t len) {
    std::size_t done = 0;
    while (done < len) {
      std::size_t chunk = len - done < 64 ? len - done : 64;
      or_word_at(off + done, ~std::uint64_t{0}, chunk);
      done += chunk;
    }
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  void trim() {
    if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace rdc

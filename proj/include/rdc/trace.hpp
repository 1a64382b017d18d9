#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "rdc/error.hpp"

namespace rdc {

// A channel name with an argument tuple, e.g. pay.0.1.1.
struct event {
  std::string channel;
  std::vector<int> args;
  auto operator<=>(const event&) const = default;
};

std::string to_string(const event& e);

// Finite-sequence instance of the trace algebra. Other carriers can be plugged
// in by specialising trace_ops and satisfying trace_algebra.
template <class E>
using seq_trace = std::vector<E>;

template <class T>
struct trace_ops;

template <class E>
struct trace_ops<seq_trace<E>> {
  using trace = seq_trace<E>;
  static trace empty() { return {}; }
  static trace concat(const trace& s, const trace& t) {
    trace r = s;
    r.insert(r.end(), t.begin(), t.end());
    return r;
  }
  static std::size_t measure(const trace& t) { return t.size(); }
};

template <class T>
concept trace_algebra = requires(const T& a, const T& b) {
  { trace_ops<T>::empty() } -> std::same_as<T>;
  { trace_ops<T>::concat(a, b) } -> std::same_as<T>;
  { trace_ops<T>::measure(a) } -> std::convertible_to<std::size_t>;
  { a == b } -> std::convertible_to<bool>;
};

template <trace_algebra T>
T empty() {
  return trace_ops<T>::empty();
}
template <trace_algebra T>
T concat(const T& s, const T& t) {
  return trace_ops<T>::concat(s, t);
}
template <trace_algebra T>
std::size_t measure(const T& t) {
  return trace_ops<T>::measure(t);
}

template <class E>
bool prefix_le(const seq_trace<E>& s, const seq_trace<E>& t) {
  if (s.size() > t.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(s[i] == t[i])) return false;
  return true;
}

// The unique u with s ⌢ u = t.
template <class E>
seq_trace<E> subtract(const seq_trace<E>& t, const seq_trace<E>& s) {
  if (!prefix_le(s, t)) throw error(errc::not_a_prefix, "trace subtraction: not a prefix");
  return seq_trace<E>(t.begin() + static_cast<std::ptrdiff_t>(s.size()), t.end());
}

template <class E>
void interleave_into(const seq_trace<E>& s, std::size_t i, const seq_trace<E>& t, std::size_t j,
                     seq_trace<E>& acc, std::set<seq_trace<E>>& out) {
  if (i == s.size() || j == t.size()) {
    seq_trace<E> r = acc;
    r.insert(r.end(), s.begin() + static_cast<std::ptrdiff_t>(i), s.end());
    r.insert(r.end(), t.begin() + static_cast<std::ptrdiff_t>(j), t.end());
    out.insert(std::move(r));
    return;
  }
  acc.push_back(s[i]);
  interleave_into(s, i + 1, t, j, acc, out);
  acc.back() = t[j];
  interleave_into(s, i, t, j + 1, acc, out);
  acc.pop_back();
}

template <class E>
std::set<seq_trace<E>> interleavings(const seq_trace<E>& s, const seq_trace<E>& t) {
  std::set<seq_trace<E>> out;
  seq_trace<E> acc;
  interleave_into(s, 0, t, 0, acc, out);
  return out;
}

// All traces of length <= L over E indexed events, numbered by length first and
// then lexicographically, so every length class is a contiguous block and
// concatenation with a fixed left operand maps a block onto a block.
class trace_space {
 public:
  trace_space() = default;
  trace_space(int events, int bound);

  int events() const { return e_; }
  int bound() const { return l_; }
  int size() const { return static_cast<int>(len_.size()); }
  int length(int t) const { return len_[t]; }
  int offset(int k) const { return off_[k]; }   // first index of length k
  int count(int k) const { return pow_[k]; }    // number of traces of length k
  int rank(int t) const { return t - off_[len_[t]]; }
  const std::vector<int>& items(int t) const { return items_[t]; }

  int empty() const { return 0; }
  int index(const std::vector<int>& items) const;  // -1 when longer than the bound
  int concat(int s, int t) const;                  // -1 when the result exceeds the bound
  bool prefix_le(int s, int t) const;
  int subtract(int t, int s) const;                // requires prefix_le(s, t)
  int last(int t) const { return items_[t].back(); }
  int single(int e) const { return 1 + e; }

  // Index of s ⌢ u for the first u of length k (block start), or -1.
  int block_start(int s, int k) const;

  // Interleavings of s and t that fit the bound; returns whether any were cut.
  bool interleave(int s, int t, std::vector<int>& out) const;

 private:
  int e_ = 0, l_ = 0;
  std::vector<int> len_, off_, pow_;
  std::vector<std::vector<int>> items_;
};

}  // namespace rdc

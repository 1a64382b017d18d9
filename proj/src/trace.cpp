#include "rdc/trace.hpp"

#include <algorithm>

namespace rdc {

std::string to_string(const event& e) {
  std::string s = e.channel;
  for (int a : e.args) s += "." + std::to_string(a);
  return s;
}

trace_space::trace_space(int events, int bound) : e_(events), l_(bound) {
  if (events < 0 || bound < 0) throw error(errc::invalid_argument, "trace_space: negative size");
  int p = 1, off = 0;
  for (int k = 0; k <= bound; ++k) {
    off_.push_back(off);
    pow_.push_back(p);
    off += p;
    p *= std::max(events, 0);
    if (events == 0) p = 0;
  }
  off_.push_back(off);
  len_.reserve(off);
  items_.reserve(off);
  for (int k = 0; k <= bound; ++k) {
    for (int r = 0; r < pow_[k]; ++r) {
      std::vector<int> it(k);
      int x = r;
      for (int i = k - 1; i >= 0; --i) {
        it[i] = x % events;
        x /= events;
      }
      len_.push_back(k);
      items_.push_back(std::move(it));
    }
  }
}

int trace_space::index(const std::vector<int>& items) const {
  int k = static_cast<int>(items.size());
  if (k > l_) return -1;
  int r = 0;
  for (int x : items) r = r * e_ + x;
  return off_[k] + r;
}

int trace_space::concat(int s, int t) const {
  int ls = len_[s], lt = len_[t];
  if (ls + lt > l_) return -1;
  return off_[ls + lt] + rank(s) * pow_[lt] + rank(t);
}

int trace_space::block_start(int s, int k) const {
  int ls = len_[s];
  if (ls + k > l_) return -1;
  return off_[ls + k] + rank(s) * pow_[k];
}

bool trace_space::prefix_le(int s, int t) const {
  int ls = len_[s], lt = len_[t];
  if (ls > lt) return false;
  return rank(t) / pow_[lt - ls] == rank(s);
}

int trace_space::subtract(int t, int s) const {
  if (!prefix_le(s, t)) throw error(errc::not_a_prefix, "trace subtraction: not a prefix");
  int k = len_[t] - len_[s];
  return off_[k] + rank(t) % pow_[k];
}

bool trace_space::interleave(int s, int t, std::vector<int>& out) const {
  out.clear();
  const auto& a = items_[s];
  const auto& b = items_[t];
  if (a.size() + b.size() > static_cast<std::size_t>(l_)) return true;
  std::set<std::vector<int>> all = interleavings(a, b);
  for (const auto& x : all) out.push_back(index(x));
  return false;
}

}  // namespace rdc

#include <set>

#include "doctest.h"
#include "support.hpp"

using rdc::seq_trace;
using T = seq_trace<char>;

TEST_CASE("concat and empty") {
  CHECK(rdc::concat(T{'a'}, T{'b'}) == T{'a', 'b'});
  CHECK(rdc::concat(T{}, T{'a', 'b'}) == T{'a', 'b'});
  CHECK(rdc::concat(T{'a'}, T{}) == T{'a'});
  CHECK(rdc::empty<T>().empty());
  CHECK(rdc::measure(rdc::empty<T>()) == 0);
  CHECK(rdc::concat(rdc::empty<T>(), rdc::empty<T>()).empty());
}

TEST_CASE("prefix order and subtraction") {
  CHECK(rdc::prefix_le(T{'a'}, T{'a', 'b'}));
  CHECK_FALSE(rdc::prefix_le(T{'b'}, T{'a', 'b'}));
  for (const T& t : {T{}, T{'a'}, T{'b', 'a'}}) {
    CHECK(rdc::prefix_le(T{}, t));
    CHECK(rdc::subtract(t, T{}) == t);
  }
  CHECK(rdc::subtract(T{'a', 'b'}, T{'a'}) == T{'b'});
  try {
    rdc::subtract(T{'a'}, T{'b'});
    FAIL("subtracting a non-prefix must throw");
  } catch (const rdc::error& e) {
    CHECK(e.code() == rdc::errc::not_a_prefix);
  }
}

// Independent oracle: search every u with s ⌢ u = t among traces of length ≤ 2.
TEST_CASE("subtraction agrees with search") {
  std::vector<T> all{{}};
  for (char x : {'a', 'b'}) {
    all.push_back({x});
    for (char y : {'a', 'b'}) all.push_back({x, y});
  }
  for (const T& s : all)
    for (const T& t : all) {
      std::vector<T> found;
      for (const T& u : all)
        if (rdc::concat(s, u) == t) found.push_back(u);
      if (rdc::prefix_le(s, t)) {
        REQUIRE(found.size() == 1);
        CHECK(rdc::subtract(t, s) == found[0]);
      } else {
        CHECK(found.empty());
      }
    }
}

TEST_CASE("measure") {
  CHECK(rdc::measure(T{'a', 'b'}) == 2);
  CHECK(rdc::measure(rdc::concat(T{'a'}, T{'b'})) == 2);
}

TEST_CASE("interleavings") {
  CHECK(rdc::interleavings(T{'a'}, T{'b'}) == std::set<T>{{'a', 'b'}, {'b', 'a'}});
  CHECK(rdc::interleavings(T{}, T{'a', 'b'}) == std::set<T>{{'a', 'b'}});
  CHECK(rdc::interleavings(T{'a'}, T{'a'}) == std::set<T>{{'a', 'a'}});
  // Every interleaving has the combined length and keeps both operands as subsequences.
  const auto r = rdc::interleavings(T{'a', 'b'}, T{'c', 'd'});
  CHECK(r.size() == 6);
  for (const auto& t : r) CHECK(t.size() == 4);
}

TEST_CASE("indexed trace space") {
  rdc::trace_space ts(2, 3);
  CHECK(ts.size() == 1 + 2 + 4 + 8);
  for (int s = 0; s < ts.size(); ++s)
    for (int t = 0; t < ts.size(); ++t) {
      std::vector<int> cat = ts.items(s);
      cat.insert(cat.end(), ts.items(t).begin(), ts.items(t).end());
      const int c = ts.concat(s, t);
      if (cat.size() > 3) {
        CHECK(c == -1);
        continue;
      }
      CHECK(c == ts.index(cat));
      CHECK(ts.prefix_le(s, c));
      CHECK(ts.subtract(c, s) == t);
    }
  std::vector<int> out;
  CHECK_FALSE(ts.interleave(ts.single(0), ts.single(1), out));
  CHECK(out.size() == 2);
  out.clear();
  CHECK(ts.interleave(ts.index({0, 0}), ts.index({1, 1}), out));  // length 4 exceeds the bound
}

TEST_CASE("trace suite passes exhaustively") {
  const auto rep = rdc::run_suite("trace");
  for (const auto& l : rep.laws) {
    INFO(l.name << ": " << l.witness);
    CHECK(l.holds);
  }
}

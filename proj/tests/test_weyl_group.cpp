#include <doctest.h>

#include "weylq/rng.hpp"
#include "weylq/root_system.hpp"

using namespace weylq;

TEST_CASE("A1 group: identity and reflection") {
  RootSystem rs = build_root_system(Series::A, 1, GroupForm::simply_connected);
  REQUIRE(rs.weyl.size() == 2);
  CHECK(rs.weyl[0].length == 0);
  CHECK(rs.weyl[1].length == 1);
  CHECK(rs.weyl[1].sign == -1);
  CHECK(rs.weyl.apply(1, IVec{3}) == IVec{-3});
}

TEST_CASE("A2 group: six elements, unique longest of length 3") {
  RootSystem rs = build_root_system(Series::A, 2, GroupForm::simply_connected);
  REQUIRE(rs.weyl.size() == 6);
  int longest_count = 0;
  for (size_t w = 0; w < rs.weyl.size(); ++w)
    if (rs.weyl[w].length == 3) ++longest_count;
  CHECK(longest_count == 1);
  CHECK(rs.weyl[rs.weyl.longest()].length == 3);
}

TEST_CASE("B2 group has 8 elements") {
  RootSystem rs = build_root_system(Series::B, 2, GroupForm::simply_connected);
  CHECK(rs.weyl.size() == 8);
}

TEST_CASE("group closure, inverses, and length symmetry") {
  for (auto [series, rank] : {std::pair{Series::A, 3}, {Series::B, 3}, {Series::G, 2},
                              {Series::D, 4}, {Series::C, 2}}) {
    CAPTURE(series_name(series, rank));
    RootSystem rs = build_root_system(series, rank, GroupForm::simply_connected);
    DetRng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
      size_t a = size_t(rng.integer(0, rs.weyl.size() - 1));
      size_t b = size_t(rng.integer(0, rs.weyl.size() - 1));
      size_t ab = rs.weyl.multiply(a, b);  // throws if not closed
      // sign is multiplicative.
      CHECK(rs.weyl[ab].sign == rs.weyl[a].sign * rs.weyl[b].sign);
    }
    for (size_t w = 0; w < rs.weyl.size(); ++w) {
      size_t inv = rs.weyl[w].inverse;
      CHECK(rs.weyl.multiply(w, inv) == 0);
      CHECK(rs.weyl[inv].length == rs.weyl[w].length);  // l(w^{-1}) = l(w)
    }
  }
}

TEST_CASE("W permutes the roots and the longest element flips Delta_+") {
  for (auto [series, rank] : {std::pair{Series::A, 2}, {Series::B, 2}, {Series::G, 2}}) {
    RootSystem rs = build_root_system(series, rank, GroupForm::simply_connected);
    std::set<IVec> roots;
    for (const Root& r : rs.positive_roots) {
      roots.insert(r.fw);
      IVec neg = r.fw;
      for (auto& c : neg) c = -c;
      roots.insert(neg);
    }
    for (size_t w = 0; w < rs.weyl.size(); ++w) {
      int inversions = 0;
      for (const Root& r : rs.positive_roots) {
        IVec img = rs.weyl.apply(w, r.fw);
        CHECK(roots.count(img) == 1);
        IVec neg = img;
        for (auto& c : neg) c = -c;
        bool img_positive = false;
        for (const Root& p : rs.positive_roots)
          if (p.fw == img) img_positive = true;
        if (!img_positive) ++inversions;
      }
      CHECK(inversions == rs.weyl[w].length);
    }
    size_t w0 = rs.weyl.longest();
    for (const Root& r : rs.positive_roots) {
      IVec img = rs.weyl.apply(w0, r.fw);
      IVec neg = img;
      for (auto& c : neg) c = -c;
      bool neg_is_positive = false;
      for (const Root& p : rs.positive_roots)
        if (p.fw == neg) neg_is_positive = true;
      CHECK(neg_is_positive);  // w0 Delta_+ = -Delta_+
    }
    CHECK(rs.weyl[w0].length == int(rs.positive_roots.size()));
  }
}

TEST_CASE("the action preserves the bilinear form exactly") {
  RootSystem rs = build_root_system(Series::C, 3, GroupForm::simply_connected);
  DetRng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    IVec x(rs.rank), y(rs.rank);
    for (int i = 0; i < rs.rank; ++i) {
      x[i] = rng.integer(-5, 5);
      y[i] = rng.integer(-5, 5);
    }
    size_t w = size_t(rng.integer(0, rs.weyl.size() - 1));
    CHECK(rs.pair_fw(rs.weyl.apply(w, x), rs.weyl.apply(w, y)) == rs.pair_fw(x, y));
  }
}

TEST_CASE("dominantize lands in the dominant chamber with the orbit sign") {
  RootSystem rs = build_root_system(Series::B, 3, GroupForm::simply_connected);
  DetRng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    IVec x(rs.rank);
    for (int i = 0; i < rs.rank; ++i) x[i] = rng.integer(-6, 6);
    int sign = 0;
    Weight dom = rs.dominantize(x, &sign);
    CHECK(rs.is_dominant(dom));
    // The dominant representative is unique: dominantizing any W-image gives
    // the same weight.
    size_t w = size_t(rng.integer(0, rs.weyl.size() - 1));
    Weight dom2 = rs.dominantize(rs.weyl.apply(w, x));
    CHECK(dom.fw == dom2.fw);
    bool on_wall = false;
    for (long long c : dom.fw)
      if (c == 0) on_wall = true;
    CHECK((sign == 0) == on_wall);
  }
}

TEST_CASE("orbit sizes divide the group order and cover the orbit") {
  RootSystem rs = build_root_system(Series::A, 3, GroupForm::simply_connected);
  DetRng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    IVec x(rs.rank);
    for (int i = 0; i < rs.rank; ++i) x[i] = rng.integer(0, 3);
    auto orbit = rs.orbit_of_dominant(x);
    CHECK(rs.weyl.size() % orbit.size() == 0);
    std::set<IVec> expected;
    for (size_t w = 0; w < rs.weyl.size(); ++w) expected.insert(rs.weyl.apply(w, x));
    CHECK(expected.size() == orbit.size());
  }
}

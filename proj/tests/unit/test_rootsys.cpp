#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"

using namespace qqb;
using qqt::R;

namespace {

std::vector<std::vector<int>> dense(const CartanMatrix& c) {
  std::vector<std::vector<int>> m(c.rank, std::vector<int>(c.rank));
  for (int i = 0; i < c.rank; ++i)
    for (int j = 0; j < c.rank; ++j) m[i][j] = c(i, j);
  return m;
}

// Root count by closing the simple roots under simple reflections, in the
// basis of simple roots: s_i(b) = b - <b, coroot_i> alpha_i.
int count_roots(const CartanMatrix& c) {
  const int r = c.rank;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> todo;
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    todo.push_back(e);
  }
  while (!todo.empty()) {
    auto b = todo.back();
    todo.pop_back();
    if (!seen.insert(b).second) continue;
    for (int i = 0; i < r; ++i) {
      int p = 0;
      for (int j = 0; j < r; ++j) p += b[j] * c(i, j);
      auto n = b;
      n[i] -= p;
      todo.push_back(n);
    }
  }
  return static_cast<int>(seen.size()) / 2;
}

}  // namespace

TEST(Cartan, A1) { EXPECT_EQ(dense(cartan_matrix(make_type('A', 1))), (std::vector<std::vector<int>>{{2}})); }

TEST(Cartan, A2) {
  EXPECT_EQ(dense(cartan_matrix(make_type('A', 2))), (std::vector<std::vector<int>>{{2, -1}, {-1, 2}}));
}

TEST(Cartan, B2LongFirst) {
  EXPECT_EQ(dense(cartan_matrix(make_type('B', 2))), (std::vector<std::vector<int>>{{2, -1}, {-2, 2}}));
}

TEST(Cartan, G2AndSymmetrizable) {
  auto g = cartan_matrix(make_type('G', 2));
  EXPECT_EQ(g(0, 1) * g(1, 0), 3);
  for (auto t : {"A4", "B3", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"}) EXPECT_TRUE(valid_cartan(cartan_matrix(parse_type(t)))) << t;
}

TEST(Cartan, RootCountsMatchClosure) {
  for (auto t : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6"}) {
    auto ty = parse_type(t);
    EXPECT_EQ(positive_root_count(ty), count_roots(cartan_matrix(ty))) << t;
  }
}

TEST(Cartan, InvalidTypes) {
  EXPECT_THROW(parse_type("E2"), Error);
  EXPECT_THROW(parse_type("D3"), Error);
  EXPECT_THROW(parse_type("Q1"), Error);
  EXPECT_FALSE(valid_type(Family::G, 3));
}

TEST(Pairing, A1Half) {
  auto c = cartan_matrix(make_type('A', 1));
  EXPECT_EQ(pairing<Rational>(0, {{R(1, 2)}}, c), 1);
}

TEST(Pairing, A2) {
  auto c = cartan_matrix(make_type('A', 2));
  Twist<Rational> z{{R(1), R(0)}};
  EXPECT_EQ(pairing(0, z, c), 2);
  EXPECT_EQ(pairing(1, z, c), -1);
}

TEST(Pairing, ZeroTwist) {
  for (auto t : {"A3", "B2", "G2", "E6"}) {
    auto c = cartan_matrix(parse_type(t));
    Twist<Rational> z{std::vector<Rational>(c.rank, Rational(0))};
    for (auto x : pairings(z, c)) EXPECT_EQ(x, 0);
  }
}

TEST(Reflect, A1) {
  auto c = cartan_matrix(make_type('A', 1));
  EXPECT_EQ(reflect_twist<Rational>(0, {{R(1, 2)}}, c).zeta, std::vector<Rational>{R(-1, 2)});
}

TEST(Reflect, A2) {
  auto c = cartan_matrix(make_type('A', 2));
  EXPECT_EQ(reflect_twist<Rational>(0, {{R(1), R(0)}}, c).zeta, (std::vector<Rational>{R(-1), R(0)}));
}

TEST(Reflect, FixedWhenPairingVanishes) {
  auto c = cartan_matrix(make_type('A', 2));
  Twist<Rational> z{{R(1), R(2)}};  // xi_1 = 0
  EXPECT_EQ(reflect_twist(0, z, c).zeta, z.zeta);
}

TEST(Reflect, InvolutionAndPairingFlip) {
  for (auto t : {"A3", "B3", "C3", "G2", "D4"}) {
    auto c = cartan_matrix(parse_type(t));
    Twist<Rational> z;
    for (int i = 0; i < c.rank; ++i) z.zeta.push_back(Rational(3 * i + 1) / 5);
    for (int i = 0; i < c.rank; ++i) {
      auto s = reflect_twist(i, z, c);
      EXPECT_EQ(pairing(i, s, c), -pairing(i, z, c));
      EXPECT_EQ(reflect_twist(i, s, c).zeta, z.zeta);
    }
  }
}

TEST(W0, KnownWords) {
  EXPECT_EQ(format_word(w0_reduced_word(make_type('A', 1))), "1");
  EXPECT_EQ(format_word(w0_reduced_word(make_type('A', 2))), "1,2,1");
  EXPECT_EQ(format_word(w0_reduced_word(make_type('B', 2))), "1,2,1,2");
}

TEST(W0, ReducedAndLongest) {
  for (auto t : {"A3", "A4", "B3", "C3", "D4", "G2", "F4"}) {
    auto ty = parse_type(t);
    auto c = cartan_matrix(ty);
    auto w = w0_reduced_word(ty);
    EXPECT_EQ(static_cast<int>(w.size()), positive_root_count(ty)) << t;
    EXPECT_TRUE(is_reduced(w, c)) << t;
  }
  auto a2 = cartan_matrix(make_type('A', 2));
  EXPECT_FALSE(is_reduced({0, 0}, a2));
  EXPECT_FALSE(is_reduced({0, 1, 0, 1}, a2));
}

TEST(W0, ActsAsMinusDiagramFlipOnA2) {
  auto c = cartan_matrix(make_type('A', 2));
  Twist<Rational> z{{R(2, 3), R(-5, 7)}};
  auto w = w0_reduced_word(make_type('A', 2));
  Twist<Rational> cur = z;
  for (size_t k = w.size(); k-- > 0;) cur = reflect_twist(w[k], cur, c);
  EXPECT_EQ(cur.zeta, (std::vector<Rational>{R(5, 7), R(-2, 3)}));
}

TEST(Word, ParseFormats) {
  EXPECT_EQ(parse_word("1,2,1", 2), (WeylWord{0, 1, 0}));
  EXPECT_EQ(parse_word("121", 2), (WeylWord{0, 1, 0}));
  EXPECT_EQ(parse_word("", 2), WeylWord{});
  EXPECT_THROW(parse_word("3", 2), Error);
  EXPECT_THROW(parse_word("1,x", 2), Error);
}

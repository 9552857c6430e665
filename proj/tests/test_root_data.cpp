#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oqkit/root_datum.hpp"

using namespace oqkit;

namespace {

// Leading principal minors by fraction-free elimination (Bareiss).
bool positive_definite(std::vector<std::vector<Int>> a) {
  const int n = static_cast<int>(a.size());
  Int prev = 1;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] <= 0) return false;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return true;
}

}  // namespace

TEST_CASE("Cartan data for all supported types") {
  const std::vector<std::pair<std::string, std::size_t>> counts = {
      {"A1", 1}, {"A2", 3}, {"A3", 6}, {"A4", 10}, {"B2", 4},  {"B3", 9},  {"C2", 4},  {"C3", 9},
      {"D4", 12}, {"D5", 20}, {"G2", 6}, {"F4", 24}, {"E6", 36}, {"E7", 63}, {"E8", 120}};
  for (const auto& [label, n] : counts) {
    CAPTURE(label);
    RootDatum d = RootDatum::from_label(label);
    CHECK(d.num_positive_roots() == n);
    const int r = d.rank();
    std::vector<std::vector<Int>> sym(r, std::vector<Int>(r));
    for (int i = 0; i < r; ++i) {
      CHECK(d.cartan(i, i) == 2);
      for (int j = 0; j < r; ++j) {
        if (i != j) CHECK(d.cartan(i, j) <= 0);
        sym[i][j] = d.symmetrizers()[i] * d.cartan(i, j);
      }
    }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) CHECK(sym[i][j] == sym[j][i]);
    CHECK(positive_definite(sym));
    // <rho, alpha^vee> = height of the coroot, and every root pairs integrally.
    for (const auto& root : d.positive_roots()) {
      CHECK(d.pairing(d.rho(), root) == root.coroot_height());
      CHECK(d.pairing(root.fundamental, root) == 2);
    }
  }
}

TEST_CASE("small examples") {
  RootDatum a1('A', 1), a2('A', 2), g2('G', 2);
  CHECK(a1.cartan_matrix() == std::vector<std::vector<Int>>{{2}});
  CHECK(a2.cartan_matrix() == std::vector<std::vector<Int>>{{2, -1}, {-1, 2}});
  CHECK(g2.symmetrizers() == std::vector<Int>{1, 3});

  CHECK(a1.pairing(Weight{3}, a1.positive_roots()[0]) == 3);
  const Root& highest = a2.positive_roots()[a2.highest_root_index()];
  CHECK(highest.simple == Weight{1, 1});
  CHECK(a2.pairing(a2.rho(), highest) == 2);
  CHECK(a2.pairing(Weight{2, 0}, a2.positive_roots()[a2.simple_root_index(1)]) == 0);

  CHECK(a1.dominance_leq(Weight{-2}, Weight{0}));
  CHECK_FALSE(a1.dominance_leq(Weight{-1}, Weight{0}));
  CHECK(a2.dominance_leq(Weight{0, 0}, Weight{1, 1}));
}

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS_AS(RootDatum('A', 0), Error);
  CHECK_THROWS_AS(RootDatum('B', 1), Error);
  CHECK_THROWS_AS(RootDatum('D', 3), Error);
  CHECK_THROWS_AS(RootDatum('E', 9), Error);
  CHECK_THROWS_AS(RootDatum('G', 3), Error);
  CHECK_THROWS_AS(RootDatum('X', 2), Error);
  CHECK_THROWS_AS(RootDatum::from_label("A"), Error);
  CHECK_THROWS_AS(RootDatum::from_label("A2x"), Error);
}

TEST_CASE("l-adic expansion") {
  auto p = l_adic_decompose(Weight{7}, 3);
  CHECK(p.lambda0 == Weight{1});
  CHECK(p.lambda1 == Weight{2});
  p = l_adic_decompose(Weight{-2}, 3);
  CHECK(p.lambda0 == Weight{1});
  CHECK(p.lambda1 == Weight{-1});
  p = l_adic_decompose(Weight{-1}, 3);
  CHECK(p.lambda0 == Weight{2});
  CHECK(p.lambda1 == Weight{-1});
  CHECK_THROWS_AS(l_adic_decompose(Weight{1}, 4), Error);
  CHECK_THROWS_AS(l_adic_decompose(Weight{1}, 1), Error);
  CHECK_THROWS_AS(validate_l(RootDatum('G', 2), 9), Error);

  for (Int l : {3, 5, 7})
    for (Int a = -15; a <= 15; ++a)
      for (Int b = -15; b <= 15; ++b) {
        Weight lam{a, b};
        auto q = l_adic_decompose(lam, l);
        CHECK(in_restricted_box(q.lambda0, l));
        CHECK(q.reconstruct() == lam);
      }
}

TEST_CASE("weight predicates") {
  RootDatum a1('A', 1);
  auto p = weight_predicates(a1, Weight{-1}, 3);
  CHECK(p.antidominant);
  CHECK(p.special);
  CHECK_FALSE(p.regular);
  CHECK_FALSE(p.l_regular);
  p = weight_predicates(a1, Weight{2}, 3);
  CHECK(p.steinberg);
  CHECK(p.special);
  p = weight_predicates(a1, Weight{4}, 3);
  CHECK(p.l_regular);
  CHECK(p.dominant);

  RootDatum a2('A', 2);
  for (Int l : {3, 5})
    for (Int a = -8; a <= 8; ++a)
      for (Int b = -8; b <= 8; ++b) {
        Weight lam{a, b};
        Weight shifted = lam + a2.rho();
        bool divisible = floor_mod(shifted[0], l) == 0 && floor_mod(shifted[1], l) == 0;
        CHECK(weight_predicates(a2, lam, l).special == divisible);
      }
}

TEST_CASE("dominance order is a partial order") {
  RootDatum a2('A', 2);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-3, 3);
  auto random_weight = [&] { return Weight{coord(rng), coord(rng)}; };
  for (int trial = 0; trial < 2000; ++trial) {
    Weight x = random_weight(), y = random_weight(), z = random_weight();
    CHECK(a2.dominance_leq(x, x));
    if (a2.dominance_leq(x, y) && a2.dominance_leq(y, x)) CHECK(x == y);
    if (a2.dominance_leq(x, y) && a2.dominance_leq(y, z)) CHECK(a2.dominance_leq(x, z));
  }
}

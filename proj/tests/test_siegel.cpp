#include "doctest.h"
#include "oracles.hpp"

#include "modunits/siegel.hpp"

#include <numeric>

using namespace modunits;

namespace {

UnitProduct product(long n, std::initializer_list<std::pair<long, long>> terms) {
  UnitProduct u(n);
  for (auto [g, e] : terms) u.mul(g, e);
  return u;
}

UnitProduct random_product(long n) {
  UnitProduct u(n);
  for (long h = 1; 2 * h <= n; ++h) u.mul(h, oracle::uniform(-4, 4));
  return u;
}

}  // namespace

TEST_CASE("level context") {
  for (long n = 5; n < 100; ++n) {
    auto ctx = LevelContext::make(n);
    CHECK(static_cast<long>(ctx.cusps.size()) == euler_phi(n) / 2);
    CHECK(static_cast<long>(ctx.indices.size()) == n / 2);  // ceil((N-1)/2)
  }
  CHECK_THROWS(LevelContext::make(4));
}

TEST_CASE("index normalization and embedding") {
  CHECK(normalize_index(13, 15) == 2);
  CHECK(normalize_index(13, 12) == 1);
  CHECK(normalize_index(36, 35) == 1);
  CHECK(normalize_index(36, 18) == 18);
  CHECK_THROWS(normalize_index(13, 26));
  CHECK(lower_level_embed(12, 1, 3) == 3);
  CHECK(lower_level_embed(16, 5, 2) == 10);
  CHECK(lower_level_embed(18, 8, 2) == 16);
}

TEST_CASE("cusp orders") {
  CHECK(order_at_cusp(13, 1, 1, 13) == Rational(97, 156));
  CHECK(order_at_cusp(13, 7, 7, 13) == Rational(-11, 156));
  for (long n = 6; n < 40; n += 2) {
    Rational expect(-n, 24);
    expect.canonicalize();
    CHECK(order_at_cusp(n, n / 2, 1, n) == expect);
  }
}

TEST_CASE("divisors") {
  auto u = product(13, {{1, 1}, {3, 4}, {6, -5}});
  auto d = divisor(u, {1, 6, 3, 5, 4, 2});
  CHECK(d.orders == std::vector<Rational>{3, -2, 1, 2, 1, -5});
  CHECK(d.is_integral());
  CHECK(d.degree() == 0);
  auto z = divisor(UnitProduct(13));
  for (const auto& o : z.orders) CHECK(o == 0);
  CHECK_THROWS(divisor(product(13, {{1, 1}})).integer_orders());

  for (int t = 0; t < 100; ++t) {
    long n = oracle::uniform(5, 60);
    auto a = random_product(n), b = random_product(n);
    REQUIRE(divisor(a * b) == divisor(a) + divisor(b));
  }
}

TEST_CASE("modularity congruences") {
  CHECK(is_gamma1_modular(product(13, {{1, 1}, {3, 4}, {6, -5}})));
  CHECK_FALSE(is_gamma1_modular(product(13, {{1, 1}, {2, -1}})));
  CHECK(is_gamma1_modular(UnitProduct(13)));
  // conditions do not depend on the chosen representative: evaluate with
  // random lifts g = +-h + kN
  for (int t = 0; t < 300; ++t) {
    long n = oracle::uniform(5, 60);
    auto u = random_product(n);
    Integer s0 = 0, s1 = 0, s2 = 0;
    for (const auto& [h, e] : u.exponents()) {
      long g = (oracle::uniform(0, 1) ? h : -h) + n * oracle::uniform(-3, 3);
      s0 += e;
      s1 += Integer(g) * e;
      s2 += Integer(g) * g * e;
    }
    bool expect = s0 % 12 == 0 && (n % 2 ? s2 % n == 0 : (s1 % 2 == 0 && s2 % (2 * n) == 0));
    REQUIRE(is_gamma1_modular(u) == expect);
  }
}

TEST_CASE("orbits") {
  CHECK(orbit(21, 1, 3) == std::set<long>{1, 6, 8});
  CHECK(orbit(21, 7, 7) == std::set<long>{1, 2, 4, 5, 7, 8, 10});
  CHECK(orbit(21, 5, 1) == std::set<long>{5});
  CHECK_THROWS(orbit(21, 1, 4));
}

TEST_CASE("orbit condition") {
  CHECK_FALSE(orbit_condition_holds(product(21, {{1, 1}})));
  CHECK(orbit_condition_holds(UnitProduct(21)));
  CHECK_THROWS(orbit_condition_holds(UnitProduct(13)));
  // explicit solution space at N = 21
  for (int t = 0; t < 50; ++t) {
    long e1 = oracle::uniform(-5, 5), e2 = oracle::uniform(-5, 5), e4 = oracle::uniform(-5, 5);
    long e5 = oracle::uniform(-5, 5), e8 = oracle::uniform(-5, 5);
    long e10 = -(e1 + e2 + e4 + e5 + e8);
    auto u = product(21, {{1, e1}, {2, e2}, {4, e4}, {5, e5}, {8, e8}, {10, e10},
                          {3, -e4 - e10}, {6, -e1 - e8}, {9, -e2 - e5}});
    CHECK(orbit_condition_holds(u));
    CHECK_FALSE(orbit_condition_holds(u * product(21, {{7, 1}})));
  }
  // brute-force oracle: sums over b = a mod N/p taken over all residues b,
  // counting each +-class once
  for (int t = 0; t < 200; ++t) {
    long n = oracle::uniform(6, 60);
    if (is_prime(n)) continue;
    UnitProduct u(n);
    for (long h = 1; 2 * h <= n; ++h) u.mul(h, oracle::uniform(-1, 1));
    bool expect = true;
    for (const auto& pe : factorize(n)) {
      const long m = n / pe.p;
      for (long a = 1; a < n; ++a) {
        std::set<long> seen;
        long s = 0;
        for (long b = 1; b < n; ++b) {
          if (b % m != a % m) continue;
          long h = std::min(b, n - b);
          if (seen.insert(h).second) s += u.exponent(h);
        }
        if (s != 0) expect = false;
      }
    }
    REQUIRE(orbit_condition_holds(u) == expect);
  }
}

TEST_CASE("rendering") {
  CHECK(render(product(13, {{1, 1}, {3, 4}, {6, -5}})) == "E1*E3^4/E6^5");
  CHECK(render(product(27, {{1, 1}, {11, 1}, {2, -1}, {8, -1}})) == "E1*E11/(E2*E8)");
  CHECK(render(product(12, {{1, 1}, {5, -1}}), 3, 36) == "E1^(12)(3t)/E5^(12)(3t)");
  CHECK(render(UnitProduct(13)) == "1");
  CHECK(render(product(13, {{2, -1}})) == "1/E2");
}

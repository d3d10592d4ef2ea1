#include "doctest.h"

#include "modunits/basis.hpp"
#include "modunits/classgroup.hpp"
#include "modunits/qexpansion.hpp"

#include <numeric>

using namespace modunits;

namespace {

struct Expected {
  long level;
  long scale;
  std::vector<std::pair<long, long>> terms;  // (index, exponent) at the sublevel
};

UnitProduct make(long level, const std::vector<std::pair<long, long>>& terms) {
  UnitProduct u(level);
  for (auto [g, e] : terms) u.mul(g, e);
  return u;
}

void check_family(const std::vector<BasisElement>& got, const std::vector<Expected>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    INFO("element " << i + 1 << ": " << got[i].display());
    CHECK(got[i].sublevel == want[i].level);
    CHECK(got[i].scale == want[i].scale);
    CHECK(got[i].local == make(want[i].level, want[i].terms));
  }
}

// F_g of the squarefree construction with g(k) found by exhaustive search.
UnitProduct f_by_search(long n, long g) {
  UnitProduct u(n);
  for (long k = 1; k < n; ++k) {
    if (n % k != 0 || moebius(k) == 0) continue;
    const long r = n / k;
    long found = 0;
    for (long x = 1; 2 * x <= n && !found; ++x)
      if (x % k == 0 && (mod(x - g, r) == 0 || mod(x + g, r) == 0)) found = x;
    REQUIRE(found != 0);
    u.mul(found, moebius(k));
  }
  return u;
}

}  // namespace

TEST_CASE("prime family") {
  auto b = basis_prime(13, 7);
  REQUIRE(b.size() == 5);
  CHECK(b[0].display() == "E1*E3^4/E6^5");
  CHECK(b[4].display() == "E4^13/E2^13");
  CHECK(basis_prime(5)[0].display() == "E1^5/E2^5");
  CHECK(basis(11).size() == 4);
  CHECK(basis(11)[0].construction == Construction::Prime);
  CHECK_THROWS(basis_prime(3));
  CHECK_THROWS(basis_prime(15));
  CHECK_THROWS(basis_prime(13, 3));
}

TEST_CASE("odd prime power family") {
  check_family(basis_odd_prime_power(3, 3, 2), {
      {27, 1, {{1, 1}, {11, 1}, {2, -1}, {8, -1}}},
      {27, 1, {{2, 1}, {5, 1}, {4, -1}, {11, -1}}},
      {27, 1, {{4, 1}, {10, 1}, {8, -1}, {5, -1}}},
      {27, 1, {{8, 1}, {7, 1}, {11, -1}, {10, -1}}},
      {27, 1, {{11, 1}, {13, 1}, {5, -1}, {7, -1}}},
      {27, 1, {{5, 3}, {13, -3}}},
      {9, 3, {{1, 1}, {2, -1}}},
      {9, 3, {{2, 1}, {4, -1}}},
  });
  CHECK(basis_odd_prime_power(5, 2).size() == 9);
  CHECK(basis(27)[0].construction == Construction::OddPrimePower);
  CHECK_THROWS(basis_odd_prime_power(3, 1));
  // telescoping band sizes
  for (long p : {3L, 5L, 7L})
    for (int k = 2; ipow(p, k) <= 400; ++k)
      CHECK(static_cast<long>(basis_odd_prime_power(p, k).size()) == euler_phi(ipow(p, k).get_si()) / 2 - 1);
}

TEST_CASE("two power family") {
  check_family(basis_two_power(5, 3), {
      {32, 1, {{1, 1}, {13, 1}, {3, -1}, {15, -1}}},
      {32, 1, {{3, 1}, {7, 1}, {9, -1}, {13, -1}}},
      {32, 1, {{9, 1}, {11, 1}, {5, -1}, {7, -1}}},
      {32, 1, {{5, 2}, {11, -2}}},
      {16, 2, {{1, 1}, {7, -1}}},
      {16, 2, {{3, 1}, {5, -1}}},
      {8, 4, {{1, 1}, {3, -1}}},
  });
  CHECK(basis_two_power(3).size() == 1);
  CHECK(basis_two_power(4).size() == 3);
  CHECK(basis_two_power(5, 3)[6].display() == "E1^(8)(4t)/E3^(8)(4t)");
  CHECK_THROWS(basis_two_power(2));
}

TEST_CASE("squarefree family") {
  auto b = basis_squarefree(21);
  std::vector<long> gs;
  for (const auto& e : b) gs.push_back(e.g);
  CHECK(gs == std::vector<long>{1, 2, 4, 5, 8});
  CHECK(f_by_search(21, 1) == make(21, {{1, 1}, {6, -1}, {7, -1}}));
  CHECK(f_by_search(21, 2) == make(21, {{2, 1}, {9, -1}, {7, -1}}));
  CHECK(f_by_search(42, 1) == make(42, {{1, 1}, {6, 1}, {14, 1}, {21, 1}, {20, -1}, {15, -1}, {7, -1}}));
  CHECK(basis_squarefree(15).size() == 3);
  CHECK(basis_squarefree(6).empty());
  CHECK_THROWS(basis_squarefree(13));
  CHECK_THROWS(basis_squarefree(12));
  for (long n = 6; n <= 120; ++n) {
    if (!is_squarefree(n) || is_prime(n)) continue;
    auto fam = basis_squarefree(n);
    std::vector<long> s;
    for (long g = 1; 2 * g <= n; ++g)
      if (std::gcd(g, n) == 1) s.push_back(g);
    for (std::size_t i = 0; i < fam.size(); ++i) REQUIRE(fam[i].unit == f_by_search(n, s[i]) / f_by_search(n, s[i + 1]));
  }
}

TEST_CASE("general family") {
  check_family(basis_general(36), {
      {12, 3, {{1, 1}, {5, -1}}},
      {18, 2, {{1, 1}, {2, 1}, {7, -1}, {8, -1}}},
      {18, 2, {{1, 1}, {4, 1}, {5, -1}, {8, -1}}},
      {36, 1, {{1, 1}, {5, 1}, {17, -1}, {13, -1}}},
      {36, 1, {{1, 1}, {7, 1}, {17, -1}, {11, -1}}},
  });
  check_family(basis_general(40), {
      {10, 4, {{1, 1}, {2, 1}, {3, -1}, {4, -1}}},
      {20, 2, {{1, 1}, {9, -1}}},
      {20, 2, {{3, 1}, {7, -1}}},
      {40, 1, {{1, 1}, {5, 1}, {15, -1}, {19, -1}}},
      {40, 1, {{3, 1}, {15, 1}, {17, -1}, {5, -1}}},
      {40, 1, {{7, 1}, {5, 1}, {13, -1}, {15, -1}}},
      {40, 1, {{9, 1}, {5, 1}, {11, -1}, {15, -1}}},
  });
  check_family(basis_general(72), {
      {12, 6, {{1, 1}, {5, -1}}},
      {18, 4, {{1, 1}, {2, 1}, {7, -1}, {8, -1}}},
      {18, 4, {{1, 1}, {4, 1}, {5, -1}, {8, -1}}},
      {24, 3, {{1, 1}, {3, 1}, {11, -1}, {9, -1}}},
      {24, 3, {{5, 1}, {9, 1}, {7, -1}, {3, -1}}},
      {36, 2, {{1, 1}, {5, 1}, {13, -1}, {17, -1}}},
      {36, 2, {{1, 1}, {7, 1}, {11, -1}, {17, -1}}},
      {72, 1, {{1, 1}, {11, 1}, {25, -1}, {35, -1}}},
      {72, 1, {{1, 1}, {13, 1}, {23, -1}, {35, -1}}},
      {72, 1, {{5, 1}, {7, 1}, {29, -1}, {31, -1}}},
      {72, 1, {{5, 1}, {17, 1}, {19, -1}, {31, -1}}},
  });
  CHECK(basis_general(36)[0].display() == "E1^(12)(3t)/E5^(12)(3t)");
  CHECK(basis(60)[0].construction == Construction::General);
  CHECK_THROWS(basis_general(30));
  CHECK_THROWS(basis_general(27));
}

TEST_CASE("dispatcher") {
  CHECK_THROWS(basis(4));
  CHECK_THROWS(basis(21, {7}));
  CHECK(basis(13, {7})[0].display() == "E1*E3^4/E6^5");
}

TEST_CASE("basis invariants for every level up to 120") {
  for (long n = 5; n <= 120; ++n) {
    INFO("N = " << n);
    auto b = basis(n);
    REQUIRE(static_cast<long>(b.size()) == euler_phi(n) / 2 - 1);
    const bool composite = factorize(n).size() >= 2;
    for (const auto& e : b) {
      REQUIRE(e.unit.level() == n);
      REQUIRE(e.unit == e.local.embed(e.scale));
      auto d = divisor(e.unit);
      CHECK(d.is_integral());
      CHECK(d.degree() == 0);
      CHECK(is_gamma1_modular(e.unit));
      if (composite) CHECK(orbit_condition_holds(e.unit));
      if (n <= 50) CHECK(expand_product(e.unit).has_integral_exponents());
    }
    auto m = divisor_matrix(b, LevelContext::make(n).cusps);
    if (m.rows() > 0) CHECK(snf(m).rank() == m.rows());
  }
}

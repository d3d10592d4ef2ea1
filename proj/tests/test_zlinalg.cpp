#include "doctest.h"
#include "oracles.hpp"

#include "modunits/zlinalg.hpp"

using namespace modunits;

namespace {

bool is_hermite(const HermiteForm& hf) {
  const IntMatrix& h = hf.h;
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t lead = h.cols();
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) {
        lead = j;
        break;
      }
    if (lead == h.cols()) continue;
    if (i != r || lead != hf.pivot_cols[r]) return false;
    if (r > 0 && lead <= hf.pivot_cols[r - 1]) return false;
    if (h(i, lead) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, lead) < 0 || h(k, lead) >= h(i, lead)) return false;
    for (std::size_t k = i + 1; k < h.rows(); ++k)
      if (h(k, lead) != 0) return false;
    ++r;
  }
  return r == hf.pivot_cols.size();
}

bool divisibility_chain(const std::vector<Integer>& d) {
  for (std::size_t i = 1; i < d.size(); ++i)
    if (!mpz_divisible_p(d[i].get_mpz_t(), d[i - 1].get_mpz_t())) return false;
  return true;
}

}  // namespace

TEST_CASE("determinants") {
  CHECK(det(IntMatrix::identity(5)) == 1);
  CHECK(det(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(det(IntMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK(det(RatMatrix{{Rational(1, 2), 1}, {Rational(1, 3), 4}}) == Rational(5, 3));
  for (int t = 0; t < 200; ++t) {
    std::size_t n = static_cast<std::size_t>(oracle::uniform(1, 6));
    IntMatrix m = oracle::random_matrix(n, n, -5, 5);
    REQUIRE(det(m) == oracle::cofactor_det(m));
  }
}

TEST_CASE("hermite normal form") {
  SUBCASE("zero matrix") {
    IntMatrix z(3, 4);
    auto hf = hnf(z);
    CHECK(hf.h == z);
    CHECK(hf.u == IntMatrix::identity(3));
    CHECK(hf.pivot_cols.empty());
  }
  SUBCASE("random") {
    for (int t = 0; t < 200; ++t) {
      auto r = static_cast<std::size_t>(oracle::uniform(1, 6));
      auto c = static_cast<std::size_t>(oracle::uniform(1, 6));
      IntMatrix m = oracle::random_matrix(r, c, -9, 9);
      auto hf = hnf(m);
      REQUIRE(hf.u * m == hf.h);
      Integer du = det(hf.u);
      REQUIRE((du == 1 || du == -1));
      REQUIRE(is_hermite(hf));
      if (r == c && det(m) != 0) {
        Integer prod = 1;
        for (const auto& p : hf.pivots()) prod *= p;
        CHECK(prod == abs(det(m)));
        Integer sprod = 1;
        for (const auto& d : snf(m).diagonal) sprod *= d;
        CHECK(sprod == prod);
      }
    }
  }
}

TEST_CASE("smith normal form") {
  CHECK(snf(IntMatrix{{2, 0}, {0, 3}}).nontrivial() == std::vector<Integer>{6});
  CHECK(snf(IntMatrix{{2, 0}, {0, 3}}).diagonal == std::vector<Integer>{1, 6});
  CHECK(snf(IntMatrix(2, 3)).diagonal.empty());
  // minor-gcd oracle on 200 random small matrices, 4x5 among them
  for (int t = 0; t < 200; ++t) {
    std::size_t r = t % 2 ? 4 : static_cast<std::size_t>(oracle::uniform(1, 5));
    std::size_t c = t % 2 ? 5 : static_cast<std::size_t>(oracle::uniform(1, 5));
    IntMatrix m = oracle::random_matrix(r, c, -9, 9);
    auto s = snf(m);
    REQUIRE(divisibility_chain(s.diagonal));
    REQUIRE(s.diagonal == oracle::smith_by_minors(m));
  }
}

TEST_CASE("modular smith form and generators") {
  for (int t = 0; t < 200; ++t) {
    auto n = static_cast<std::size_t>(oracle::uniform(1, 8));
    IntMatrix a = oracle::random_matrix(n, n, -12, 12);
    Integer d = abs(det(a));
    if (d == 0) continue;
    auto ms = snf_modular(a, d);
    REQUIRE(ms.diagonal.size() == n);
    REQUIRE(ms.diagonal == snf(a).diagonal);
    REQUIRE(snf_modular(a, d, false).diagonal == ms.diagonal);
    // generators: order d_i each, and together with rowspan(a) they span Z^n
    IntMatrix stacked = a;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(class_order(a, ms.generators.row(i)) == ms.diagonal[i]);
      stacked.append_row(ms.generators.row(i));
    }
    for (const auto& x : snf(stacked).diagonal) CHECK(x == 1);
  }
}

TEST_CASE("rational solve and lattice membership") {
  IntMatrix a{{2, 0}, {0, 3}};
  std::vector<Integer> x{4, 3}, y{1, 0};
  CHECK(in_row_lattice(a, x));
  CHECK_FALSE(in_row_lattice(a, y));
  CHECK(class_order(a, y) == 2);
  auto s = solve_left(IntMatrix{{1, 1}, {0, 2}}, std::vector<Integer>{1, 0});
  CHECK(s == std::vector<Rational>{1, Rational(-1, 2)});
}

TEST_CASE("lattice index") {
  for (std::size_t n = 2; n < 8; ++n) {
    IntMatrix rows(n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      rows(i, i) = 1;
      rows(i, i + 1) = -1;
    }
    CHECK(lattice_index(rows) == 1);
  }
  CHECK(lattice_index(IntMatrix{{2, -2}}) == 2);
  CHECK(lattice_index(IntMatrix{{1, -1, 0}, {2, -2, 0}}) == 0);
  CHECK_THROWS_AS(lattice_index(IntMatrix{{1, 0}}), std::invalid_argument);

  // invariance under unimodular remixing of the rows
  for (int t = 0; t < 100; ++t) {
    auto n = static_cast<std::size_t>(oracle::uniform(2, 6));
    IntMatrix rows = oracle::random_matrix(n - 1, n, -6, 6);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j + 1 < n; ++j) s += rows(i, j);
      rows(i, n - 1) = -s;
    }
    Rational before = lattice_index(rows);
    for (int k = 0; k < 5 && n > 2; ++k) {
      auto i = static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(n) - 2));
      auto j = static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(n) - 2));
      if (i == j) continue;
      long c = oracle::uniform(-3, 3);
      for (std::size_t col = 0; col < n; ++col) rows(i, col) += c * rows(j, col);
    }
    CHECK(lattice_index(rows) == before);
  }
}

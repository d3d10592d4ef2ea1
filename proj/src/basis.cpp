#include "modunits/basis.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace modunits {

std::string to_string(Construction c) {
  switch (c) {
    case Construction::Prime: return "prime";
    case Construction::OddPrimePower: return "odd-prime-power";
    case Construction::TwoPower: return "two-power";
    case Construction::Squarefree: return "squarefree";
    case Construction::General: return "general";
  }
  return "?";
}

std::string BasisElement::display() const { return render(local, scale, unit.level()); }

long resolve_generator(long n, std::optional<long> generator) {
  if (!generator) return generator_mod_pm1(n);
  if (!generates_mod_pm1(*generator, n))
    throw std::invalid_argument(std::to_string(*generator) + " does not generate (Z/" + std::to_string(n) +
                                ")^x/+-1");
  return mod(*generator, n);
}

std::vector<long> generator_cusp_order(long n, long generator) {
  std::vector<long> out;
  long x = 1;
  for (long j = 0; j < euler_phi(n) / 2; ++j) {
    out.push_back(normalize_index(n, x));
    x = x * generator % n;
  }
  return out;
}

namespace {

// a^e normalized at level q
long power_index(long q, long a, long e) { return normalize_index(q, pow_mod(a, e, q)); }

BasisElement make_element(Construction c, const UnitProduct& local, long scale) {
  BasisElement b;
  b.construction = c;
  b.local = local;
  b.sublevel = local.level();
  b.scale = scale;
  b.unit = local.embed(scale);
  return b;
}

// E_x/E_y at level q, raised to e
UnitProduct quotient(long q, long x, long y, long e = 1) {
  UnitProduct u(q);
  u.mul(x, e).mul(y, -e);
  return u;
}

// The bands shared by the odd and even prime-power families. phi(l) gives
// the half-totient at level p^l; top_exp is the exponent on the second
// factor pair of the top band, pivot_exp the pivot's exponent; lowest_level
// is the exponent of the lowest middle band (2 for odd p, 4 for p = 2).
std::vector<BasisElement> prime_power_family(Construction c, long p, int k, long a, long top_exp, long pivot_exp,
                                             int lowest_level) {
  auto phi = [p](int l) { return euler_phi(ipow(p, l).get_si()) / 2; };
  const long n = ipow(p, k).get_si();
  const long pk = phi(k), pk1 = phi(k - 1);
  std::vector<BasisElement> out;

  for (long i = 1; i <= pk - pk1 - 1; ++i) {
    UnitProduct u(n);
    u.mul(power_index(n, a, i - 1), 1)
        .mul(power_index(n, a, i + pk1), top_exp)
        .mul(power_index(n, a, i + pk1 - 1), -1)
        .mul(power_index(n, a, i), -top_exp);
    out.push_back(make_element(c, u, 1));
    out.back().i = i;
  }
  {
    const long i = pk - pk1;
    out.push_back(make_element(c, quotient(n, power_index(n, a, i - 1), power_index(n, a, i + pk1 - 1), pivot_exp), 1));
    out.back().i = i;
  }
  for (int l = k - 1; l >= lowest_level; --l) {
    const long q = ipow(p, l).get_si();
    const long scale = ipow(p, k - l).get_si();
    for (long i = pk - phi(l) + 1; i <= pk - phi(l - 1); ++i) {
      out.push_back(make_element(c, quotient(q, power_index(q, a, i - 1), power_index(q, a, i + phi(l - 1) - 1)), scale));
      out.back().i = i;
    }
  }
  return out;
}

std::vector<BasisElement> squarefree_family(long n) {
  std::vector<long> s;
  for (long g = 1; 2 * g <= n; ++g)
    if (std::gcd(g, n) == 1) s.push_back(g);
  auto f = [n](long g) {
    UnitProduct u(n);
    for (long k : divisors(n)) {
      if (k == n) continue;
      int mu = moebius(k);
      if (mu == 0) continue;
      const long r = n / k;
      u.mul(k * mod(g * inv_mod(k, r), r), mu);  // 0 mod k, g mod N/k
    }
    return u;
  };
  std::vector<BasisElement> out;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    out.push_back(make_element(Construction::Squarefree, f(s[i]) / f(s[i + 1]), 1));
    out.back().g = s[i];
  }
  return out;
}

}  // namespace

std::vector<BasisElement> basis_prime(long p, std::optional<long> generator) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("basis_prime: need a prime >= 5, got " + std::to_string(p));
  const long a = resolve_generator(p, generator);
  const long b = inv_mod(a, p);
  const long b2 = b * b % p;
  const long n = (p - 1) / 2;
  std::vector<BasisElement> out;
  for (long i = 1; i <= n - 2; ++i) {
    UnitProduct u(p);
    u.mul(power_index(p, a, i - 1), 1).mul(power_index(p, a, i + 1), b2).mul(power_index(p, a, i), -(1 + b2));
    out.push_back(make_element(Construction::Prime, u, 1));
    out.back().i = i;
  }
  out.push_back(make_element(Construction::Prime, quotient(p, b2, b, p), 1));
  out.back().i = n - 1;
  return out;
}

std::vector<BasisElement> basis_odd_prime_power(long p, int k, std::optional<long> generator) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("basis_odd_prime_power: p must be an odd prime");
  if (k < 2) throw std::invalid_argument("basis_odd_prime_power: k must be >= 2");
  const long n = ipow(p, k).get_si();
  const long a = resolve_generator(n, generator);
  const long b = inv_mod(a, p);
  auto out = prime_power_family(Construction::OddPrimePower, p, k, a, b * b % p, p, 2);
  const long pk = euler_phi(n) / 2, scale = n / p;
  for (long i = pk - (p - 1) / 2 + 1; i <= pk - 1; ++i) {
    out.push_back(make_element(Construction::OddPrimePower, quotient(p, power_index(p, a, i - 1), power_index(p, a, i)), scale));
    out.back().i = i;
  }
  return out;
}

std::vector<BasisElement> basis_two_power(int k, std::optional<long> generator) {
  if (k < 3) throw std::invalid_argument("basis_two_power: k must be >= 3");
  const long n = 1L << k;
  const long a = resolve_generator(n, generator);
  if (k == 3) {
    // Only the pivot; E1/E3 alone has half-integral orders.
    BasisElement e = make_element(Construction::TwoPower, quotient(8, 1, power_index(8, a, 1), 2), 1);
    e.i = 1;
    return {e};
  }
  auto out = prime_power_family(Construction::TwoPower, 2, k, a, 1, 2, 4);
  const long i = n / 4 - 1;
  out.push_back(make_element(Construction::TwoPower, quotient(8, power_index(8, a, i - 1), power_index(8, a, i)), n / 8));
  out.back().i = i;
  return out;
}

std::vector<BasisElement> basis_squarefree(long n) {
  if (n < 6 || !is_squarefree(n) || is_prime(n))
    throw std::invalid_argument("basis_squarefree: need a composite squarefree level, got " + std::to_string(n));
  return squarefree_family(n);
}

std::vector<BasisElement> basis_general(long n) {
  if (n < 5 || is_squarefree(n) || is_prime_power(n))
    throw std::invalid_argument("basis_general: need a non-squarefree level with two or more primes, got " +
                                std::to_string(n));
  const long l = radical(n);
  std::vector<BasisElement> out;
  for (long m : divisors(n)) {
    if (m % l != 0) continue;
    const long d = n / m;
    if (m == l) {
      for (auto e : squarefree_family(l)) {
        auto emb = make_element(Construction::General, e.local, d);
        emb.g = e.g;
        out.push_back(emb);
      }
      continue;
    }
    std::vector<long> sq;  // primes with p^2 | M
    long k = 1, prod_sq = 1;
    for (const auto& pe : factorize(m)) {
      if (pe.e >= 2) {
        sq.push_back(pe.p);
        prod_sq *= pe.p;
      } else {
        k *= pe.p;
      }
    }
    auto f = [m, k](long g) {
      UnitProduct u(m);
      for (long kk : divisors(k)) {
        const long r = m / kk;  // r > 2 since some p^2 | M remains
        u.mul(kk * mod(g * inv_mod(kk, r), r), moebius(kk));
      }
      return u;
    };
    for (long g = 1; 2 * prod_sq * g < m; ++g) {
      if (std::gcd(g, l) != 1) continue;
      std::vector<long> mt(sq.size(), 1);
      for (;;) {
        UnitProduct gu(m);
        for (unsigned long mask = 0; mask < (1UL << sq.size()); ++mask) {
          long shift = g;
          int bits = 0;
          for (std::size_t t = 0; t < sq.size(); ++t)
            if (mask >> t & 1) {
              shift += mt[t] * (m / sq[t]);
              ++bits;
            }
          gu *= bits % 2 ? f(shift).inverse() : f(shift);
        }
        auto e = make_element(Construction::General, gu, d);
        e.g = g;
        e.m = mt;
        out.push_back(e);
        // next tuple, last coordinate fastest
        std::size_t t = sq.size();
        while (t > 0 && mt[t - 1] == sq[t - 1] - 1) mt[--t] = 1;
        if (t == 0) break;
        ++mt[t - 1];
      }
    }
  }
  return out;
}

std::vector<BasisElement> basis(long n, const BasisOptions& options) {
  if (n < 5) throw std::invalid_argument("basis: level must be >= 5, got " + std::to_string(n));
  const auto fac = factorize(n);
  std::vector<BasisElement> out;
  if (fac.size() == 1) {
    const auto [p, e] = fac[0];
    if (e == 1) out = basis_prime(p, options.generator);
    else if (p == 2) out = basis_two_power(e, options.generator);
    else out = basis_odd_prime_power(p, e, options.generator);
  } else {
    if (options.generator) throw std::invalid_argument("basis: a generator override applies only to prime powers");
    out = is_squarefree(n) ? basis_squarefree(n) : basis_general(n);
  }
  if (static_cast<long>(out.size()) != euler_phi(n) / 2 - 1)
    throw std::logic_error("basis: wrong number of elements at level " + std::to_string(n));
  return out;
}

}  // namespace modunits

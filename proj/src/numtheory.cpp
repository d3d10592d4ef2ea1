#include "modunits/numtheory.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace modunits {

long PrimePower::value() const {
  long v = 1;
  for (int i = 0; i < e; ++i) v *= p;
  return v;
}

Factorization factorize(long n) {
  if (n < 2) throw std::invalid_argument("factorize: n must be >= 2, got " + std::to_string(n));
  Factorization out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_prime_power(long n) { return n >= 2 && factorize(n).size() == 1; }

bool is_squarefree(long n) {
  if (n == 1) return true;
  for (const auto& pe : factorize(n))
    if (pe.e > 1) return false;
  return true;
}

long radical(long n) {
  if (n == 1) return 1;
  long r = 1;
  for (const auto& pe : factorize(n)) r *= pe.p;
  return r;
}

std::vector<long> divisors(long n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be positive");
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

long euler_phi(long n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  if (n == 1) return 1;
  long phi = n;
  for (const auto& pe : factorize(n)) phi = phi / pe.p * (pe.p - 1);
  return phi;
}

int moebius(long n) {
  if (n < 1) throw std::invalid_argument("moebius: n must be positive");
  if (n == 1) return 1;
  int mu = 1;
  for (const auto& pe : factorize(n)) {
    if (pe.e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

long inv_mod(long a, long n) {
  if (n < 2) throw std::invalid_argument("inv_mod: modulus must be >= 2");
  long r0 = n, r1 = mod(a, n), s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1)
    throw std::invalid_argument("inv_mod: " + std::to_string(a) + " is not invertible modulo " +
                                std::to_string(n));
  return mod(s0, n);
}

long pow_mod(long base, long exp, long n) {
  if (n == 1) return 0;
  __int128 result = 1, b = mod(base, n);
  while (exp > 0) {
    if (exp & 1) result = result * b % n;
    b = b * b % n;
    exp >>= 1;
  }
  return static_cast<long>(result);
}

long order_in_units_mod_pm1(long a, long m) {
  if (m < 1) throw std::invalid_argument("order_in_units_mod_pm1: modulus must be positive");
  if (std::gcd(a, m) != 1)
    throw std::invalid_argument("order_in_units_mod_pm1: " + std::to_string(a) +
                                " is not a unit modulo " + std::to_string(m));
  if (m <= 2) return 1;
  long x = mod(a, m);
  for (long t = 1;; ++t) {
    if (x == 1 || x == m - 1) return t;
    x = static_cast<long>(static_cast<__int128>(x) * mod(a, m) % m);
  }
}

namespace {

void require_cyclic_quotient(long q) {
  if (q < 3 || !is_prime_power(q) || q == 4)
    throw std::invalid_argument("generator_mod_pm1: " + std::to_string(q) +
                                " is not an odd prime power or 2^k with k >= 3");
}

}  // namespace

bool generates_mod_pm1(long a, long q) {
  require_cyclic_quotient(q);
  if (std::gcd(a, q) != 1) return false;
  return order_in_units_mod_pm1(a, q) == euler_phi(q) / 2;
}

long generator_mod_pm1(long q) {
  require_cyclic_quotient(q);
  const long target = euler_phi(q) / 2;
  for (long a = 2; a < q; ++a)
    if (std::gcd(a, q) == 1 && order_in_units_mod_pm1(a, q) == target) return a;
  throw std::logic_error("generator_mod_pm1: no generator found");
}

Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("ratio: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational fractional_part(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(fl);
  r.canonicalize();
  return r;
}

Rational b2(const Rational& x) {
  Rational f = fractional_part(x);
  Rational r = f * f - f + Rational(1, 6);
  r.canonicalize();
  return r;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

long genus_x1(long n) {
  if (n < 5) throw std::invalid_argument("genus_x1: N must be at least 5");
  // 24 g = 24 + n^2 prod (1 - p^-2) - 6 * #cusps
  long rad = radical(n);
  long index = (n / rad) * (n / rad);
  for (const auto& pp : factorize(n)) index *= pp.p * pp.p - 1;
  long cusps = 0;
  for (long d : divisors(n)) cusps += euler_phi(d) * euler_phi(n / d);
  long g24 = 24 + index - 6 * cusps;
  if (g24 % 24 != 0) throw std::logic_error("genus_x1: non-integral genus");
  return g24 / 24;
}

}  // namespace modunits

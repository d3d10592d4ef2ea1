#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace modunits {

using Integer = mpz_class;
using Rational = mpq_class;

struct PrimePower {
  long p = 0;
  int e = 0;

  long value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization sorted ascending by prime.
using Factorization = std::vector<PrimePower>;

/// Trial division; throws std::invalid_argument for n < 2.
Factorization factorize(long n);

bool is_prime(long n);
bool is_prime_power(long n);
bool is_squarefree(long n);

/// Product of the distinct primes dividing n (1 for n = 1).
long radical(long n);

/// Positive divisors of n, ascending.
std::vector<long> divisors(long n);

long euler_phi(long n);
int moebius(long n);

/// Least non-negative residue of a modulo n (n > 0).
long mod(long a, long n);

/// Inverse of a modulo n in [1, n-1]; throws when gcd(a, n) != 1.
long inv_mod(long a, long n);

long pow_mod(long base, long exp, long n);

/// Least t >= 1 with a^t = +-1 (mod m). Returns 1 when m <= 2.
long order_in_units_mod_pm1(long a, long m);

/// Smallest a >= 2 generating (Z/qZ)^x / {+-1}. q must be an odd prime
/// power or 2^k with k >= 3.
long generator_mod_pm1(long q);

/// True when a generates (Z/qZ)^x / {+-1}.
bool generates_mod_pm1(long a, long q);

/// num/den in canonical form (mpq_class's two-argument constructor does not
/// reduce, and GMP arithmetic expects reduced operands).
Rational ratio(const Integer& num, const Integer& den);

/// Fractional part {x} in [0, 1).
Rational fractional_part(const Rational& x);

/// Second Bernoulli function B2(x) = {x}^2 - {x} + 1/6.
Rational b2(const Rational& x);

/// Integer power of an arbitrary-precision value.
Integer ipow(const Integer& base, unsigned long exp);

/// Genus of the modular curve X_1(N), N >= 5.
long genus_x1(long n);

}  // namespace modunits

#pragma once

#include "modunits/numtheory.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace modunits {

struct LevelContext {
  long n = 0;
  Factorization factorization;
  /// a with 1 <= a <= N/2, gcd(a, N) = 1, ascending: the cusps a/N over infinity.
  std::vector<long> cusps;
  /// Siegel-unit representatives 1..floor(N/2).
  std::vector<long> indices;

  static LevelContext make(long n);
};

/// h in [1, N/2] with h = +-g (mod N). Throws when N | g.
long normalize_index(long n, long g);

/// Level-dM index of E_g^(M)(d tau).
long lower_level_embed(long m, long g, long d);

/// prod E_h^{e_h} at a fixed level, modulo constants.
class UnitProduct {
 public:
  UnitProduct() = default;
  explicit UnitProduct(long level) : level_(level) {}

  long level() const { return level_; }
  const std::map<long, long>& exponents() const { return exps_; }
  bool empty() const { return exps_.empty(); }
  long exponent(long h) const;

  /// Multiplies by E_g^e; g is normalized first.
  UnitProduct& mul(long g, long e);
  UnitProduct& operator*=(const UnitProduct& other);
  UnitProduct inverse() const;
  UnitProduct pow(long e) const;

  /// Reinterprets this level-M product, evaluated at d tau, at level dM.
  UnitProduct embed(long d) const;

  friend UnitProduct operator*(UnitProduct a, const UnitProduct& b) { return a *= b; }
  friend UnitProduct operator/(UnitProduct a, const UnitProduct& b) { return a *= b.inverse(); }
  friend bool operator==(const UnitProduct&, const UnitProduct&) = default;

 private:
  long level_ = 0;
  std::map<long, long> exps_;
};

struct CuspDivisor {
  long level = 0;
  std::vector<long> cusps;
  std::vector<Rational> orders;

  Rational degree() const;
  bool is_integral() const;
  /// Orders as integers; throws when some order is not integral.
  std::vector<Integer> integer_orders() const;

  CuspDivisor& operator+=(const CuspDivisor& other);
  friend CuspDivisor operator+(CuspDivisor a, const CuspDivisor& b) { return a += b; }
  friend bool operator==(const CuspDivisor&, const CuspDivisor&) = default;
};

/// Order of E_g^(N) at the cusp a/c: (c, N) B2(a g / (c, N)) / 2.
Rational order_at_cusp(long n, long g, long a, long c);

/// Divisor on the cusps over infinity in ascending cusp order.
CuspDivisor divisor(const UnitProduct& u);
/// Divisor listed along a caller-chosen cusp ordering.
CuspDivisor divisor(const UnitProduct& u, const std::vector<long>& cusp_order);

/// Congruence conditions for prod E_g^{e_g} to be modular on Gamma_1(N).
bool is_gamma1_modular(const UnitProduct& u);

/// Normalized representatives of a + k N/K, k = 0..K-1 (zero class skipped).
std::set<long> orbit(long n, long a, long k);

/// Vanishing of every orbit sum over O_{a,p}, p | N prime. Throws for prime N.
bool orbit_condition_holds(const UnitProduct& u);

/// "E1*E3^4/E6^5". With scale d > 1 or a level below top_level the factors
/// are written "E1^(12)(3t)".
std::string render(const UnitProduct& u, long scale = 1, long top_level = 0);

}  // namespace modunits

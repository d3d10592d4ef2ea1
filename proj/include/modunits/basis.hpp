#pragma once

#include "modunits/siegel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modunits {

enum class Construction { Prime, OddPrimePower, TwoPower, Squarefree, General };

std::string to_string(Construction c);

struct BasisElement {
  /// Exponent vector at the top level N.
  UnitProduct unit;
  Construction construction = Construction::Prime;
  /// Position within the prime-power family (1-based), 0 otherwise.
  long i = 0;
  /// Composite families: the index g of F_g or G_{g, m...}.
  long g = 0;
  std::vector<long> m;
  /// The element is local(d tau) with local a unit at level sublevel.
  long sublevel = 0;
  long scale = 1;
  UnitProduct local;

  std::string display() const;
};

struct BasisOptions {
  /// Generator of (Z/N)^x/+-1 for prime powers; the smallest one by default.
  std::optional<long> generator;
};

std::vector<BasisElement> basis_prime(long p, std::optional<long> generator = std::nullopt);
std::vector<BasisElement> basis_odd_prime_power(long p, int k, std::optional<long> generator = std::nullopt);
std::vector<BasisElement> basis_two_power(int k, std::optional<long> generator = std::nullopt);
std::vector<BasisElement> basis_squarefree(long n);
std::vector<BasisElement> basis_general(long n);

/// phi(N)/2 - 1 units whose divisors span the principal cuspidal divisors.
std::vector<BasisElement> basis(long n, const BasisOptions& options = {});

/// Cusps a^{j-1}/N, j = 1..phi(N)/2, in generator-power order.
std::vector<long> generator_cusp_order(long n, long generator);

/// The generator a prime-power level uses: the override if given (validated),
/// the smallest generator otherwise.
long resolve_generator(long n, std::optional<long> generator);

}  // namespace modunits

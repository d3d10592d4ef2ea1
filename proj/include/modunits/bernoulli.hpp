#pragma once

#include "modunits/numtheory.hpp"
#include "modunits/zlinalg.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace modunits {

struct BernoulliMatrix {
  long level = 0;
  /// Row/column labels: residues in [1, N/2] coprime to N.
  std::vector<long> indices;
  /// Entry (i, j) = (N/2) * B2(r_ij / N).
  RatMatrix entries;
};

/// (N/2) * B2(r/N) times 12N, which is the integer 6r^2 - 6rN + N^2 for r
/// reduced into [0, N).
Integer scaled_cusp_weight(long n, long r);

/// Natural ordering: entry (i, j) = (N/2) B2(a_i a_j^{-1} / N) with a_i the
/// ascending residues coprime to N in [1, N/2].
BernoulliMatrix bernoulli_matrix(long n);

/// Generator ordering for prime powers: entry (i, j) = (N/2) B2(a^{i+j-2}/N).
BernoulliMatrix bernoulli_matrix(long n, long generator);

/// Exact determinant of the natural-order matrix.
Rational bernoulli_matrix_det(long n);

/// B_{2, chi_0} = N * sum over (a, N) = 1 of B2(a/N).
Rational b2_chi0(long n);

/// Even or odd Dirichlet character stored through its local components.
/// Values are exact angles theta in [0, 1), chi(a) = exp(2 pi i theta).
class DirichletCharacter {
 public:
  struct Component {
    long q = 1;                  ///< prime power exactly dividing N
    std::vector<long> gens;      ///< generators of (Z/q)^x
    std::vector<long> orders;    ///< their orders
    std::vector<long> exponents; ///< chi(gen_k) = exp(2 pi i exponents_k / orders_k)
  };

  DirichletCharacter(long modulus, std::vector<Component> components);

  long modulus() const { return modulus_; }
  const std::vector<Component>& components() const { return components_; }

  /// Angle of chi(a), or nullopt when gcd(a, N) > 1.
  std::optional<Rational> angle(long a) const;
  std::complex<double> value(long a) const;

  bool is_even() const;
  bool is_principal() const;

  /// Smallest f | N such that chi is trivial on units congruent to 1 mod f.
  long conductor() const;
  /// Angle of the primitive character chi_f inducing chi, at a coprime to f.
  std::optional<Rational> primitive_angle(long a) const;
  std::complex<double> primitive_value(long a) const;

 private:
  long modulus_;
  std::vector<Component> components_;
  std::vector<std::optional<Rational>> table_;
  long conductor_ = 0;
};

/// All characters modulo N with chi(-1) = 1; the principal one comes first.
std::vector<DirichletCharacter> enumerate_even_characters(long n);

/// Floating-point B_{2, chi} = N * sum chi(a) B2(a/N).
std::complex<double> b2_chi_numeric(const DirichletCharacter& chi);

/// Same sum for the primitive character at modulus conductor(chi).
std::complex<double> b2_chi_primitive_numeric(const DirichletCharacter& chi);

/// prod_p p^{L(p)} (1 + p^{f_p})^{e_p} / (1 + p), the factor relating the
/// character product to the class number.
Rational yu_prefactor(long n);

/// log |x| for nonzero rational x, safe for very large numerators.
double log_abs(const Rational& x);

}  // namespace modunits

#pragma once

#include "modunits/numtheory.hpp"
#include "modunits/siegel.hpp"

#include <string>
#include <vector>

namespace modunits {

inline constexpr int kDefaultTruncation = 8;

/// q^{key/(12N)} * (c_0 + c_1 q + ... + c_{T-1} q^{T-1} + O(q^T)), c_0 = 1.
/// Truncation is relative to the leading term.
class QSeries {
 public:
  QSeries() = default;
  QSeries(long level, Integer lead_key, std::vector<Rational> coeffs);

  /// The constant series 1 at the given level.
  static QSeries one(long level, int truncation);

  long level() const { return level_; }
  const Integer& lead_key() const { return key_; }
  /// Leading exponent key/(12N).
  Rational lead_exponent() const;
  int truncation() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Leading exponent is an integer, i.e. 12N divides the key.
  bool has_integral_exponents() const;
  bool has_integer_coefficients() const;

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  long level_ = 0;
  Integer key_ = 0;
  std::vector<Rational> coeffs_;
};

/// q-expansion of E_g^(N) modulo constants, truncated at T relative powers.
QSeries expand_unit(long n, long g, int truncation = kDefaultTruncation);

QSeries series_mul(const QSeries& a, const QSeries& b);
QSeries series_pow(const QSeries& a, long e);

/// f(tau) -> f(d tau); the result lives at level dM.
QSeries rescale(const QSeries& a, long d);

/// prod expand_unit(N, h)^{e_h}.
QSeries expand_product(const UnitProduct& u, int truncation = kDefaultTruncation);

/// "q^(1/60)*(1 - q - q^2 + O(q^8))"
std::string render(const QSeries& s);

}  // namespace modunits

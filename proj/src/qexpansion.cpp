#include "modunits/qexpansion.hpp"

#include "modunits/bernoulli.hpp"

#include <stdexcept>

namespace modunits {

QSeries::QSeries(long level, Integer lead_key, std::vector<Rational> coeffs)
    : level_(level), key_(std::move(lead_key)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("QSeries: truncation must be >= 1");
  if (coeffs_[0] != 1) throw std::invalid_argument("QSeries: leading coefficient must be 1");
}

QSeries QSeries::one(long level, int truncation) {
  if (truncation < 1) throw std::invalid_argument("QSeries: truncation must be >= 1");
  std::vector<Rational> c(static_cast<std::size_t>(truncation));
  c[0] = 1;
  return QSeries(level, 0, std::move(c));
}

Rational QSeries::lead_exponent() const {
  Rational r(key_, Integer(12 * level_));
  r.canonicalize();
  return r;
}

bool QSeries::has_integral_exponents() const {
  return mpz_divisible_ui_p(key_.get_mpz_t(), static_cast<unsigned long>(12 * level_)) != 0;
}

bool QSeries::has_integer_coefficients() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

QSeries expand_unit(long n, long g, int truncation) {
  if (mod(g, n) == 0) throw std::invalid_argument("expand_unit: index is 0 mod N");
  const long r = mod(g, n);
  QSeries s = QSeries::one(n, truncation);
  std::vector<Rational> c = s.coefficients();
  const long t = truncation;
  auto times_one_minus = [&](long k) {
    for (long j = t - 1; j >= k; --j) c[static_cast<std::size_t>(j)] -= c[static_cast<std::size_t>(j - k)];
  };
  for (long m = 1;; ++m) {
    const long k1 = (m - 1) * n + r, k2 = m * n - r;
    if (k1 >= t && k2 >= t) break;
    if (k1 < t) times_one_minus(k1);
    if (k2 < t) times_one_minus(k2);
  }
  return QSeries(n, scaled_cusp_weight(n, r), std::move(c));
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
  if (a.level() != b.level() || a.truncation() != b.truncation())
    throw std::invalid_argument("series_mul: level or truncation mismatch");
  const std::size_t t = static_cast<std::size_t>(a.truncation());
  std::vector<Rational> c(t);
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  for (std::size_t i = 0; i < t; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; i + j < t; ++j) c[i + j] += x[i] * y[j];
  }
  return QSeries(a.level(), a.lead_key() + b.lead_key(), std::move(c));
}

namespace {

QSeries series_inverse(const QSeries& a) {
  const std::size_t t = static_cast<std::size_t>(a.truncation());
  const auto& x = a.coefficients();
  std::vector<Rational> y(t);
  y[0] = 1;
  for (std::size_t k = 1; k < t; ++k) {
    Rational s = 0;
    for (std::size_t i = 1; i <= k; ++i) s += x[i] * y[k - i];
    y[k] = -s;
  }
  return QSeries(a.level(), -a.lead_key(), std::move(y));
}

}  // namespace

QSeries series_pow(const QSeries& a, long e) {
  QSeries base = e < 0 ? series_inverse(a) : a;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  QSeries r = QSeries::one(a.level(), a.truncation());
  while (k > 0) {
    if (k & 1) r = series_mul(r, base);
    k >>= 1;
    if (k) base = series_mul(base, base);
  }
  return r;
}

QSeries rescale(const QSeries& a, long d) {
  if (d < 1) throw std::invalid_argument("rescale: factor must be positive");
  const std::size_t t = static_cast<std::size_t>(a.truncation());
  std::vector<Rational> c(t);
  for (std::size_t j = 0; j * d < t; ++j) c[j * static_cast<std::size_t>(d)] = a.coefficients()[j];
  // exponent key/(12M) times d equals key*d^2/(12 dM)
  return QSeries(a.level() * d, a.lead_key() * d * d, std::move(c));
}

QSeries expand_product(const UnitProduct& u, int truncation) {
  QSeries s = QSeries::one(u.level(), truncation);
  for (const auto& [h, e] : u.exponents()) s = series_mul(s, series_pow(expand_unit(u.level(), h, truncation), e));
  return s;
}

std::string render(const QSeries& s) {
  std::string out = "q^(" + s.lead_exponent().get_str() + ")*(1";
  const auto& c = s.coefficients();
  for (std::size_t j = 1; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    Rational mag = abs(c[j]);
    out += c[j] < 0 ? " - " : " + ";
    if (mag != 1) out += mag.get_str() + "*";
    out += j == 1 ? "q" : "q^" + std::to_string(j);
  }
  return out + " + O(q^" + std::to_string(c.size()) + "))";
}

}  // namespace modunits

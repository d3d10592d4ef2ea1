#include "modunits/siegel.hpp"

#include "modunits/bernoulli.hpp"

#include <numeric>
#include <stdexcept>

namespace modunits {

LevelContext LevelContext::make(long n) {
  if (n < 5) throw std::invalid_argument("level must be >= 5, got " + std::to_string(n));
  LevelContext ctx;
  ctx.n = n;
  ctx.factorization = factorize(n);
  for (long a = 1; 2 * a <= n; ++a) {
    ctx.indices.push_back(a);
    if (std::gcd(a, n) == 1) ctx.cusps.push_back(a);
  }
  return ctx;
}

long normalize_index(long n, long g) {
  long r = mod(g, n);
  if (r == 0) throw std::invalid_argument("normalize_index: " + std::to_string(g) + " is 0 mod " + std::to_string(n));
  return std::min(r, n - r);
}

long lower_level_embed(long m, long g, long d) {
  if (mod(g, m) == 0) throw std::invalid_argument("lower_level_embed: index is 0 mod the level");
  return normalize_index(d * m, g * d);
}

long UnitProduct::exponent(long h) const {
  auto it = exps_.find(h);
  return it == exps_.end() ? 0 : it->second;
}

UnitProduct& UnitProduct::mul(long g, long e) {
  if (e == 0) return *this;
  long h = normalize_index(level_, g);
  long& slot = exps_[h];
  slot += e;
  if (slot == 0) exps_.erase(h);
  return *this;
}

UnitProduct& UnitProduct::operator*=(const UnitProduct& other) {
  if (other.empty()) return *this;
  if (level_ != other.level_) throw std::invalid_argument("UnitProduct: level mismatch");
  for (const auto& [h, e] : other.exps_) mul(h, e);
  return *this;
}

UnitProduct UnitProduct::inverse() const { return pow(-1); }

UnitProduct UnitProduct::pow(long e) const {
  UnitProduct r(level_);
  if (e == 0) return r;
  for (const auto& [h, x] : exps_) r.exps_[h] = x * e;
  return r;
}

UnitProduct UnitProduct::embed(long d) const {
  UnitProduct r(level_ * d);
  for (const auto& [h, e] : exps_) r.mul(h * d, e);
  return r;
}

Rational CuspDivisor::degree() const {
  Rational s = 0;
  for (const auto& o : orders) s += o;
  return s;
}

bool CuspDivisor::is_integral() const {
  for (const auto& o : orders)
    if (o.get_den() != 1) return false;
  return true;
}

std::vector<Integer> CuspDivisor::integer_orders() const {
  std::vector<Integer> out;
  for (const auto& o : orders) {
    if (o.get_den() != 1)
      throw std::domain_error("divisor at level " + std::to_string(level) + " has non-integral order " + o.get_str());
    out.push_back(o.get_num());
  }
  return out;
}

CuspDivisor& CuspDivisor::operator+=(const CuspDivisor& other) {
  if (cusps != other.cusps) throw std::invalid_argument("CuspDivisor: cusp lists differ");
  for (std::size_t i = 0; i < orders.size(); ++i) orders[i] += other.orders[i];
  return *this;
}

Rational order_at_cusp(long n, long g, long a, long c) {
  if (mod(g, n) == 0) throw std::invalid_argument("order_at_cusp: index is 0 mod N");
  const long w = std::gcd(c, n);
  Rational r = ratio(w, 2) * b2(ratio(a * g, w));
  r.canonicalize();
  return r;
}

CuspDivisor divisor(const UnitProduct& u, const std::vector<long>& cusp_order) {
  const long n = u.level();
  CuspDivisor d{n, cusp_order, {}};
  for (long a : cusp_order) {
    Integer s = 0;
    for (const auto& [h, e] : u.exponents()) s += e * scaled_cusp_weight(n, a * h);
    Rational o(s, Integer(12 * n));
    o.canonicalize();
    d.orders.push_back(o);
  }
  return d;
}

CuspDivisor divisor(const UnitProduct& u) {
  std::vector<long> cusps;
  for (long a = 1; 2 * a <= u.level(); ++a)
    if (std::gcd(a, u.level()) == 1) cusps.push_back(a);
  return divisor(u, cusps);
}

bool is_gamma1_modular(const UnitProduct& u) {
  const long n = u.level();
  Integer s0 = 0, s1 = 0, s2 = 0;
  for (const auto& [h, e] : u.exponents()) {
    s0 += e;
    s1 += Integer(h) * e;
    s2 += Integer(h) * h * e;
  }
  auto divides = [](long m, const Integer& x) { return mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(m)) != 0; };
  if (!divides(12, s0)) return false;
  if (n % 2 == 1) return divides(n, s2);
  return divides(2, s1) && divides(2 * n, s2);
}

std::set<long> orbit(long n, long a, long k) {
  if (k < 1 || n % k != 0) throw std::invalid_argument("orbit: K must divide N");
  std::set<long> out;
  const long step = n / k;
  for (long i = 0; i < k; ++i) {
    long b = a + i * step;
    if (mod(b, n) != 0) out.insert(normalize_index(n, b));
  }
  return out;
}

bool orbit_condition_holds(const UnitProduct& u) {
  const long n = u.level();
  if (is_prime(n)) throw std::invalid_argument("orbit condition is undefined for prime level");
  for (const auto& pe : factorize(n))
    for (long a = 1; 2 * a <= n; ++a) {
      long s = 0;
      for (long h : orbit(n, a, pe.p)) s += u.exponent(h);
      if (s != 0) return false;
    }
  return true;
}

std::string render(const UnitProduct& u, long scale, long top_level) {
  const bool annotate = scale != 1 || (top_level != 0 && top_level != u.level());
  auto factor = [&](long h, long e) {
    std::string s = "E" + std::to_string(h);
    if (annotate) {
      s += "^(" + std::to_string(u.level()) + ")(";
      if (scale != 1) s += std::to_string(scale);
      s += "t)";
    }
    if (e != 1) s += "^" + std::to_string(e);
    return s;
  };
  std::string num, den;
  int nden = 0;
  for (const auto& [h, e] : u.exponents()) {
    if (e > 0) num += (num.empty() ? "" : "*") + factor(h, e);
    else {
      den += (den.empty() ? "" : "*") + factor(h, -e);
      ++nden;
    }
  }
  if (num.empty()) num = "1";
  if (nden == 0) return num;
  return num + "/" + (nden > 1 ? "(" + den + ")" : den);
}

}  // namespace modunits

#include "modunits/bernoulli.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace modunits {

namespace {

std::vector<long> units_up_to_half(long n) {
  std::vector<long> out;
  for (long a = 1; 2 * a <= n; ++a)
    if (std::gcd(a, n) == 1) out.push_back(a);
  return out;
}

void require_level(long n) {
  if (n < 5) throw std::invalid_argument("level must be >= 5, got " + std::to_string(n));
}

Rational weight(long n, long r) {
  Rational w(scaled_cusp_weight(n, r), Integer(12 * n));
  w.canonicalize();
  return w;
}

long multiplicative_order(long a, long q) {
  long x = mod(a, q), t = 1;
  while (x != 1) {
    x = x * mod(a, q) % q;
    ++t;
  }
  return t;
}

long primitive_root(long q) {
  const long phi = euler_phi(q);
  for (long g = 2; g < q; ++g)
    if (std::gcd(g, q) == 1 && multiplicative_order(g, q) == phi) return g;
  return 1;  // q = 2
}

std::vector<DirichletCharacter::Component> local_groups(long n) {
  std::vector<DirichletCharacter::Component> out;
  for (const auto& pe : factorize(n)) {
    DirichletCharacter::Component c;
    c.q = pe.value();
    if (pe.p != 2) {
      c.gens = {primitive_root(c.q)};
      c.orders = {euler_phi(c.q)};
    } else if (pe.e == 2) {
      c.gens = {3};
      c.orders = {2};
    } else if (pe.e >= 3) {
      c.gens = {c.q - 1, 5};
      c.orders = {2, c.q / 4};
    }
    c.exponents.assign(c.gens.size(), 0);
    out.push_back(c);
  }
  return out;
}

// Discrete logarithms of every unit mod q with respect to the component's
// generators, indexed by residue.
std::vector<std::vector<long>> local_logs(const DirichletCharacter::Component& c) {
  std::vector<std::vector<long>> logs(static_cast<std::size_t>(c.q));
  std::vector<long> idx(c.gens.size(), 0);
  for (;;) {
    long x = 1 % c.q;
    for (std::size_t k = 0; k < idx.size(); ++k) x = x * pow_mod(c.gens[k], idx[k], c.q) % c.q;
    logs[static_cast<std::size_t>(x)] = idx;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == c.orders[k]) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return logs;
}

}  // namespace

Integer scaled_cusp_weight(long n, long r) {
  Integer rr = mod(r, n);
  Integer nn = n;
  return 6 * rr * rr - 6 * rr * nn + nn * nn;
}

BernoulliMatrix bernoulli_matrix(long n) {
  require_level(n);
  BernoulliMatrix bm;
  bm.level = n;
  bm.indices = units_up_to_half(n);
  const std::size_t m = bm.indices.size();
  bm.entries = RatMatrix(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    long inv = inv_mod(bm.indices[j], n);
    for (std::size_t i = 0; i < m; ++i) bm.entries(i, j) = weight(n, bm.indices[i] * inv);
  }
  return bm;
}

BernoulliMatrix bernoulli_matrix(long n, long generator) {
  require_level(n);
  if (!is_prime_power(n) || !generates_mod_pm1(generator, n))
    throw std::invalid_argument("bernoulli_matrix: " + std::to_string(generator) +
                                " does not generate (Z/" + std::to_string(n) + ")^x/+-1");
  BernoulliMatrix bm;
  bm.level = n;
  const std::size_t m = static_cast<std::size_t>(euler_phi(n) / 2);
  std::vector<long> powers(2 * m);
  long x = 1;
  for (auto& p : powers) {
    p = x;
    x = x * generator % n;
  }
  for (std::size_t i = 0; i < m; ++i) bm.indices.push_back(std::min(powers[i], n - powers[i]));
  bm.entries = RatMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) bm.entries(i, j) = weight(n, powers[i + j]);
  return bm;
}

Rational bernoulli_matrix_det(long n) {
  require_level(n);
  // 12N times every entry is an integer; work with that matrix.
  auto idx = units_up_to_half(n);
  const std::size_t m = idx.size();
  IntMatrix k(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    long inv = inv_mod(idx[j], n);
    for (std::size_t i = 0; i < m; ++i) k(i, j) = scaled_cusp_weight(n, idx[i] * inv);
  }
  Rational d(det(k), ipow(Integer(12 * n), m));
  d.canonicalize();
  return d;
}

Rational b2_chi0(long n) {
  if (n < 3) throw std::invalid_argument("b2_chi0: N must be >= 3");
  Rational s = 0;
  for (long a = 1; a <= n; ++a)
    if (std::gcd(a, n) == 1) s += b2(ratio(a, n));
  s *= n;
  s.canonicalize();
  return s;
}

DirichletCharacter::DirichletCharacter(long modulus, std::vector<Component> components)
    : modulus_(modulus), components_(std::move(components)), table_(static_cast<std::size_t>(modulus)) {
  std::vector<std::vector<std::vector<long>>> logs;
  for (const auto& c : components_) logs.push_back(local_logs(c));
  for (long a = 1; a <= modulus_; ++a) {
    if (std::gcd(a, modulus_) != 1) continue;
    Rational theta = 0;
    for (std::size_t ci = 0; ci < components_.size(); ++ci) {
      const auto& c = components_[ci];
      const auto& lg = logs[ci][static_cast<std::size_t>(mod(a, c.q))];
      for (std::size_t k = 0; k < c.gens.size(); ++k) theta += ratio(c.exponents[k] * lg[k], c.orders[k]);
    }
    table_[static_cast<std::size_t>(a % modulus_)] = fractional_part(theta);
  }
  for (long f : divisors(modulus_)) {
    bool trivial = true;
    for (long a = 1 + f; a <= modulus_ && trivial; a += f)
      if (std::gcd(a, modulus_) == 1 && *angle(a) != 0) trivial = false;
    if (trivial) {
      conductor_ = f;
      break;
    }
  }
}

std::optional<Rational> DirichletCharacter::angle(long a) const {
  return table_[static_cast<std::size_t>(mod(a, modulus_))];
}

std::complex<double> DirichletCharacter::value(long a) const {
  auto t = angle(a);
  if (!t) return 0.0;
  return std::polar(1.0, 2 * std::numbers::pi * t->get_d());
}

bool DirichletCharacter::is_even() const { return *angle(modulus_ - 1) == 0; }

bool DirichletCharacter::is_principal() const { return conductor_ == 1; }

long DirichletCharacter::conductor() const { return conductor_; }

std::optional<Rational> DirichletCharacter::primitive_angle(long a) const {
  const long f = conductor_;
  if (std::gcd(a, f) != 1) return std::nullopt;
  long y = mod(a, f);
  if (y == 0) y = f;
  while (std::gcd(y, modulus_) != 1) y += f;
  return angle(y);
}

std::complex<double> DirichletCharacter::primitive_value(long a) const {
  auto t = primitive_angle(a);
  if (!t) return 0.0;
  return std::polar(1.0, 2 * std::numbers::pi * t->get_d());
}

std::vector<DirichletCharacter> enumerate_even_characters(long n) {
  if (n < 3) throw std::invalid_argument("enumerate_even_characters: N must be >= 3");
  auto comps = local_groups(n);
  // flatten all (component, generator) slots and count through them
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t k = 0; k < comps[c].gens.size(); ++k) slots.emplace_back(c, k);
  std::vector<DirichletCharacter> out;
  for (;;) {
    DirichletCharacter chi(n, comps);
    if (chi.is_even()) out.push_back(std::move(chi));
    std::size_t s = 0;
    for (; s < slots.size(); ++s) {
      auto [c, k] = slots[s];
      if (++comps[c].exponents[k] < comps[c].orders[k]) break;
      comps[c].exponents[k] = 0;
    }
    if (s == slots.size()) break;
  }
  return out;
}

std::complex<double> b2_chi_numeric(const DirichletCharacter& chi) {
  const long n = chi.modulus();
  std::complex<double> s = 0;
  for (long a = 1; a <= n; ++a) s += chi.value(a) * b2(ratio(a, n)).get_d();
  return s * static_cast<double>(n);
}

std::complex<double> b2_chi_primitive_numeric(const DirichletCharacter& chi) {
  const long f = chi.conductor();
  std::complex<double> s = 0;
  for (long a = 1; a <= f; ++a) s += chi.primitive_value(a) * b2(ratio(a, f)).get_d();
  return s * static_cast<double>(f);
}

Rational yu_prefactor(long n) {
  require_level(n);
  const auto fac = factorize(n);
  if (fac.size() == 1 && fac[0].p == 2 && fac[0].e < 3)
    throw std::invalid_argument("yu_prefactor: powers of 2 must be at least 8");
  Rational total = 1;
  for (const auto& pe : fac) {
    const long p = pe.p, e = pe.e;
    const long rest = n / pe.value();
    long l;
    if (fac.size() >= 2)
      l = euler_phi(rest) * (ipow(p, e - 1).get_si() - 1) - 2 * e + 2;
    else if (p != 2)
      l = ipow(p, e - 1).get_si() - 2 * e + 2;
    else
      l = ipow(2, e - 1).get_si() - 2 * e + 3;
    const long group = rest <= 2 ? 1 : euler_phi(rest) / 2;
    const long f = order_in_units_mod_pm1(p, rest);
    const long ep = group / f;
    Rational factor = l >= 0 ? Rational(ipow(p, l)) : ratio(1, ipow(p, -l));
    factor *= ratio(ipow(1 + ipow(p, f), ep), 1 + p);
    total *= factor;
  }
  total.canonicalize();
  return total;
}

double log_abs(const Rational& x) {
  if (x == 0) throw std::invalid_argument("log_abs: zero");
  auto lg = [](const Integer& z) {
    long ex = 0;
    double m = mpz_get_d_2exp(&ex, z.get_mpz_t());
    return std::log(std::abs(m)) + static_cast<double>(ex) * std::log(2.0);
  };
  return lg(x.get_num()) - lg(x.get_den());
}

}  // namespace modunits

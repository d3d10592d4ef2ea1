#include "modunits/classgroup.hpp"

#include "modunits/bernoulli.hpp"
#include "modunits/qexpansion.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>

namespace modunits {

Integer GroupStructure::order() const {
  Integer o = 1;
  for (const auto& d : invariants) o *= d;
  return o;
}

std::string GroupStructure::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < invariants.size(); ++i) s += (i ? ", " : "") + invariants[i].get_str();
  return s + "]";
}

IntMatrix divisor_matrix(const std::vector<BasisElement>& basis, const std::vector<long>& cusp_order) {
  IntMatrix m(0, cusp_order.size());
  for (const auto& b : basis) m.append_row(divisor(b.unit, cusp_order).integer_orders());
  return m;
}

IntMatrix divisor_matrix(long n, const BasisOptions& options) {
  return divisor_matrix(basis(n, options), LevelContext::make(n).cusps);
}

Integer class_number_lattice(long n, const BasisOptions& options) {
  Rational idx = lattice_index(divisor_matrix(n, options));
  if (idx == 0) throw std::logic_error("class_number_lattice: basis divisors are dependent at level " + std::to_string(n));
  return idx.get_num();
}

Integer class_number_yu(long n) {
  Rational h = yu_prefactor(n) * abs(bernoulli_matrix_det(n)) / abs(b2_chi0(n) / 4);
  h.canonicalize();
  if (h.get_den() != 1)
    throw std::logic_error("class_number_yu: non-integral value " + h.get_str() + " at level " + std::to_string(n));
  return h.get_num();
}

GroupStructure structure_of(const IntMatrix& divisor_rows, const Integer& class_number) {
  auto ms = snf_modular(bordered(divisor_rows), class_number, false);
  GroupStructure g;
  for (const auto& d : ms.diagonal)
    if (d != 1) g.invariants.push_back(d);
  if (g.order() != class_number) throw std::logic_error("structure: invariant product differs from the class number");
  return g;
}

GroupStructure structure(long n) {
  auto rows = divisor_matrix(n);
  Integer h = lattice_index(rows).get_num();
  Integer hy = class_number_yu(n);
  if (h != hy)
    throw std::logic_error("structure: class numbers disagree at level " + std::to_string(n) + ": " + h.get_str() +
                           " vs " + hy.get_str());
  return structure_of(rows, h);
}

std::vector<int> p_primary(const GroupStructure& g, long p) {
  std::vector<int> out;
  for (const auto& d : g.invariants) {
    int e = static_cast<int>(mpz_remove(Integer().get_mpz_t(), d.get_mpz_t(), Integer(p).get_mpz_t()));
    if (e > 0) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> p_primary(long n, long p) { return p_primary(structure(n), p); }

std::string render_primary(long p, const std::vector<int>& exponents) {
  std::string s;
  for (std::size_t i = 0; i < exponents.size();) {
    std::size_t j = i;
    while (j < exponents.size() && exponents[j] == exponents[i]) ++j;
    s += "(" + std::to_string(p) + (exponents[i] > 1 ? "^" + std::to_string(exponents[i]) : "") + ")";
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

bool is_regular_prime(long p) {
  static const std::set<long> irregular = {
      37,  59,  67,  101, 103, 131, 149, 157, 233, 257, 263, 271, 283, 293, 307, 311, 347, 353,
      379, 389, 401, 409, 421, 433, 461, 463, 467, 491, 523, 541, 547, 557, 577, 587, 593, 607,
      613, 617, 619, 631, 647, 653, 659, 673, 677, 683, 691, 727, 751, 757, 761, 773, 797};
  if (p >= 800) throw std::out_of_range("is_regular_prime: table covers p < 800");
  if (!is_prime(p)) throw std::invalid_argument("is_regular_prime: not a prime");
  return !irregular.contains(p);
}

bool ConjectureReport::agrees() const {
  if (predicted_rank != computed_rank) return false;
  for (const auto& r : rows)
    if (r.predicted != r.computed) return false;
  return true;
}

std::string ConjectureReport::str() const {
  std::ostringstream os;
  os << "p^n = " << p << "^" << n << (regular ? " (regular)" : " (irregular)") << "\n";
  os << "p-rank: predicted " << predicted_rank << ", computed " << computed_rank << "\n";
  os << "component      predicted  computed\n";
  for (const auto& r : rows) {
    std::string c = "Z/" + std::to_string(p) + "^" + std::to_string(r.exponent);
    os << c << std::string(c.size() < 15 ? 15 - c.size() : 1, ' ') << r.predicted << std::string(11 - std::min<std::size_t>(10, std::to_string(r.predicted).size()), ' ')
       << r.computed << (r.predicted == r.computed ? "" : "  <- differs") << "\n";
  }
  os << (agrees() ? "agrees" : "disagrees") << "\n";
  return os.str();
}

ConjectureReport conjecture_report(long p, int n, const std::vector<int>& computed_exponents) {
  if (!is_prime(p) || n < 2 || ipow(p, n) < 8)
    throw std::invalid_argument("conjecture_report: need p^n >= 8 with n >= 2");
  ConjectureReport r;
  r.p = p;
  r.n = n;
  r.regular = p < 800 ? is_regular_prime(p) : true;
  r.predicted_rank = (p - 1) * ipow(p, n - 2).get_si() / 2 - 1;
  r.computed_rank = static_cast<long>(computed_exponents.size());
  auto even_count = [&](int k) -> long {
    // copies of Z/p^{2k}
    if ((p == 2 && k <= n - 3) || (p >= 3 && k <= n - 2)) {
      Integer v = (p - 1) * (p - 1) * ipow(p, n - k - 2);
      return v.get_si() / 2 - 1;
    }
    if (p >= 5 && k == n - 1) return (p - 5) / 2;
    return 0;
  };
  auto odd_count = [&](int k) -> long {
    // copies of Z/p^{2k-1}
    if ((p == 2 && k <= n - 3) || (p == 3 && k <= n - 2) || (p >= 5 && k <= n - 1)) return 1;
    return 0;
  };
  int top = 2 * n;
  for (int e : computed_exponents) top = std::max(top, e);
  for (int e = 1; e <= top; ++e) {
    ConjectureRow row;
    row.exponent = e;
    row.predicted = e % 2 == 0 ? even_count(e / 2) : odd_count((e + 1) / 2);
    row.computed = std::count(computed_exponents.begin(), computed_exponents.end(), e);
    if (row.predicted != 0 || row.computed != 0) r.rows.push_back(row);
  }
  return r;
}

ConjectureReport conjecture_report(long p, int n) {
  return conjecture_report(p, n, p_primary(structure(ipow(p, n).get_si()), p));
}

std::vector<ClassGenerator> generators(const IntMatrix& divisor_rows, const Integer& class_number) {
  auto ms = snf_modular(bordered(divisor_rows), class_number);
  std::vector<ClassGenerator> out;
  for (std::size_t i = ms.diagonal.size(); i-- > 0;) {
    if (ms.diagonal[i] == 1) continue;
    std::vector<Integer> x(ms.generators.row(i).begin(), ms.generators.row(i).end());
    Integer s = 0;
    for (const auto& v : x) s += v;
    x[0] -= s;  // move to degree 0 within the same class
    out.push_back({std::move(x), ms.diagonal[i]});
  }
  return out;
}

std::vector<ClassGenerator> generators(long n) {
  auto rows = divisor_matrix(n);
  return generators(rows, lattice_index(rows).get_num());
}

std::string render_divisor(long n, const std::vector<long>& cusps, const std::vector<Integer>& coeffs) {
  std::string s;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    Integer mag = abs(coeffs[j]);
    if (s.empty()) s += coeffs[j] < 0 ? "-" : "";
    else s += coeffs[j] < 0 ? " - " : " + ";
    if (mag != 1) s += mag.get_str();
    s += "(" + std::to_string(cusps[j]) + "/" + std::to_string(n) + ")";
  }
  return s.empty() ? "0" : s;
}

ClassGroupReport analyze(long n, const AnalyzeOptions& options) {
  using clock = std::chrono::steady_clock;
  auto elapsed = [](clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); };
  ClassGroupReport r;
  r.n = n;
  auto t0 = clock::now();
  r.basis = basis(n, options.basis);
  r.seconds["basis"] = elapsed(t0);

  t0 = clock::now();
  r.divisors = divisor_matrix(r.basis, LevelContext::make(n).cusps);
  Rational idx = lattice_index(r.divisors);
  if (idx == 0) throw std::logic_error("analyze: basis divisors are dependent at level " + std::to_string(n));
  r.h_lattice = idx.get_num();
  r.seconds["lattice"] = elapsed(t0);

  t0 = clock::now();
  r.h_yu = class_number_yu(n);
  r.seconds["bernoulli"] = elapsed(t0);

  t0 = clock::now();
  r.structure = structure_of(r.divisors, r.h_lattice);
  if (options.with_generators) r.generators = generators(r.divisors, r.h_lattice);
  r.seconds["structure"] = elapsed(t0);

  t0 = clock::now();
  r.checks.yu_vs_lattice = r.h_lattice == r.h_yu;
  r.checks.orbit_applicable = factorize(n).size() >= 2;
  r.checks.orbit = true;
  r.checks.modular = true;
  r.checks.q_integrality = true;
  for (const auto& b : r.basis) {
    if (r.checks.orbit_applicable && !orbit_condition_holds(b.unit)) r.checks.orbit = false;
    if (!is_gamma1_modular(b.unit)) r.checks.modular = false;
    if (!expand_product(b.unit, options.truncation).has_integral_exponents()) r.checks.q_integrality = false;
  }
  r.seconds["checks"] = elapsed(t0);
  return r;
}

}  // namespace modunits

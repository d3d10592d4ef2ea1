#pragma once

#include "modunits/basis.hpp"
#include "modunits/zlinalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace modunits {

struct GroupStructure {
  /// d_1 | d_2 | ..., each >= 2.
  std::vector<Integer> invariants;

  Integer order() const;
  /// "[4, 4, 156]"
  std::string str() const;
  friend bool operator==(const GroupStructure&, const GroupStructure&) = default;
};

/// Rows: divisors of the basis elements along cusp_order.
IntMatrix divisor_matrix(const std::vector<BasisElement>& basis, const std::vector<long>& cusp_order);
/// Natural ascending cusp order.
IntMatrix divisor_matrix(long n, const BasisOptions& options = {});

Integer class_number_lattice(long n, const BasisOptions& options = {});
Integer class_number_yu(long n);

/// Invariants of Z^n / rowspan([rows; e_1]) with |det| known.
GroupStructure structure_of(const IntMatrix& divisor_rows, const Integer& class_number);
GroupStructure structure(long n);

/// Exponents e of the nontrivial p-parts p^e of the invariants, ascending.
std::vector<int> p_primary(const GroupStructure& g, long p);
std::vector<int> p_primary(long n, long p);
/// "(2)(2^2)(2^3)", repeated factors grouped as "(3^2)^5".
std::string render_primary(long p, const std::vector<int>& exponents);

/// Irregular primes below 800 (static table).
bool is_regular_prime(long p);

struct ConjectureRow {
  int exponent = 0;  ///< component Z/p^exponent
  long predicted = 0;
  long computed = 0;
};

struct ConjectureReport {
  long p = 0;
  int n = 0;
  bool regular = true;
  long predicted_rank = 0;
  long computed_rank = 0;
  std::vector<ConjectureRow> rows;

  bool agrees() const;
  std::string str() const;
};

/// Compares the predicted p-primary shape of the class group at p^n against
/// the given exponent multiset. Reports only; never throws on disagreement.
ConjectureReport conjecture_report(long p, int n, const std::vector<int>& computed_exponents);
/// Same, computing the group at p^n.
ConjectureReport conjecture_report(long p, int n);

struct ClassGenerator {
  std::vector<Integer> divisor;  ///< degree-0 divisor along the natural cusp order
  Integer order;
};

/// One generator per nontrivial invariant, in descending order of order.
std::vector<ClassGenerator> generators(const IntMatrix& divisor_rows, const Integer& class_number);
std::vector<ClassGenerator> generators(long n);

/// "(17/42) - (19/42)", "3(1/13) - 2(6/13) + ..."
std::string render_divisor(long n, const std::vector<long>& cusps, const std::vector<Integer>& coeffs);

struct ReportChecks {
  bool yu_vs_lattice = false;
  bool orbit = false;
  bool orbit_applicable = false;
  bool modular = false;
  bool q_integrality = false;

  bool all() const { return yu_vs_lattice && orbit && modular && q_integrality; }
};

struct ClassGroupReport {
  long n = 0;
  std::vector<BasisElement> basis;
  IntMatrix divisors;
  Integer h_lattice;
  Integer h_yu;
  GroupStructure structure;
  std::vector<ClassGenerator> generators;
  ReportChecks checks;
  std::map<std::string, double> seconds;
};

struct AnalyzeOptions {
  BasisOptions basis;
  bool with_generators = true;
  int truncation = 8;
};

/// Full pipeline at level N; never throws on a failed cross-check, the
/// outcome is recorded in checks.
ClassGroupReport analyze(long n, const AnalyzeOptions& options = {});

}  // namespace modunits

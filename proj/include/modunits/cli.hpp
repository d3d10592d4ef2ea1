#pragma once

#include "modunits/classgroup.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modunits::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kCacheEnv = "MODUNITS_CACHE_DIR";

using Json = nlohmann::ordered_json;

struct BasisRecord {
  long level = 0;
  long scale = 1;
  std::map<long, long> exponents;

  friend bool operator==(const BasisRecord&, const BasisRecord&) = default;
};

struct RecordChecks {
  bool yu_vs_lattice = false;
  bool orbit = false;
  bool modular = false;
  bool q_integrality = false;

  bool all() const { return yu_vs_lattice && orbit && modular && q_integrality; }
  friend bool operator==(const RecordChecks&, const RecordChecks&) = default;
};

/// Cached outcome of the pipeline at one level.
struct ResultRecord {
  long n = 0;
  std::optional<long> generator;
  Integer class_number;
  std::vector<Integer> invariants;
  std::vector<BasisRecord> basis;
  RecordChecks checks;
  std::string version = kVersion;
  std::string created;  ///< UTC, ISO 8601
  std::map<std::string, double> seconds;

  GroupStructure structure() const { return {invariants}; }
  /// Basis element i in E-notation, e.g. "E1^(12)(3t)/E5^(12)(3t)".
  std::string display(std::size_t i) const;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

ResultRecord make_record(const ClassGroupReport& report, std::optional<long> generator);

/// The stable fields only (no timestamps or timings); what --json prints.
Json payload_json(const ResultRecord& r);
/// Everything, including metadata.
Json to_json(const ResultRecord& r);
ResultRecord record_from_json(const Json& j);

std::string render_record(const ResultRecord& r);
ResultRecord parse_record(std::string_view text);

/// One JSON file per (N, version, generator) under a directory.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(long n, std::optional<long> generator) const;
  /// nullopt on a miss or an unreadable entry.
  std::optional<ResultRecord> load(long n, std::optional<long> generator) const;
  void store(const ResultRecord& r) const;

 private:
  std::filesystem::path dir_;
};

/// $MODUNITS_CACHE_DIR, else $XDG_CACHE_HOME/modunits, else ~/.cache/modunits.
std::optional<std::filesystem::path> default_cache_dir();

/// Cached record if present, otherwise runs analyze and stores the result.
ResultRecord compute(long n, std::optional<long> generator, const ResultCache* cache);

/// Records for the given levels, fanned out over at most `workers` threads;
/// same order as the input.
std::vector<ResultRecord> compute_levels(const std::vector<long>& levels, unsigned workers,
                                         const ResultCache* cache);
/// Records for a..b, ordered by N.
std::vector<ResultRecord> compute_range(long a, long b, unsigned workers, const ResultCache* cache);

struct CorpusStructure {
  long n = 0;
  std::optional<long> genus;
  Integer class_number;
  std::vector<Integer> invariants;
  std::string kind;
};

/// p-part of the class group at level m * p^n (m = 1 for prime powers).
struct CorpusPrimary {
  long m = 1;
  long p = 0;
  int n = 0;
  std::vector<int> exponents;
  std::string notation;

  long level() const;
};

struct CorpusExample {
  long n = 0;
  std::optional<long> generator;
  Json fields;
};

struct Corpus {
  std::vector<CorpusStructure> structures;
  std::vector<CorpusPrimary> prime_power_primary;
  std::vector<CorpusPrimary> mixed_primary;
  std::vector<CorpusExample> examples;

  const CorpusStructure* structure_for(long n) const;
  const CorpusExample* example_for(long n) const;
};

Corpus parse_corpus(std::string_view text);
/// The corpus compiled into the binary from data/corpus.json.
const Corpus& embedded_corpus();

struct CorpusCheck {
  long compared = 0;  ///< levels with at least one corpus entry
  long matched = 0;
  std::vector<std::string> diffs;

  bool ok() const { return compared == matched; }
};

/// Compares structures, genera, p-parts and example values at the levels of
/// the given records.
CorpusCheck check_against_corpus(const std::vector<ResultRecord>& records, const Corpus& corpus);

/// "A..B" or a single "N".
std::pair<long, long> parse_range(std::string_view text);

enum ExitCode { kOk = 0, kUsage = 2, kInconsistent = 3 };

/// Entry point of the command-line tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modunits::cli

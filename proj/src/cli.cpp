#include "modunits/cli.hpp"

#include "modunits/embedded_corpus.hpp"
#include "modunits/qexpansion.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace modunits::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json integers_json(const std::vector<Integer>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.get_str());
  return a;
}

std::vector<Integer> integers_from(const Json& a) {
  std::vector<Integer> out;
  for (const auto& x : a) out.emplace_back(x.get<std::string>());
  return out;
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "[" + s + "]";
}

}  // namespace

std::string ResultRecord::display(std::size_t i) const {
  const BasisRecord& b = basis.at(i);
  UnitProduct u(b.level);
  for (const auto& [g, e] : b.exponents) u.mul(g, e);
  return render(u, b.scale, n);
}

ResultRecord make_record(const ClassGroupReport& report, std::optional<long> generator) {
  ResultRecord r;
  r.n = report.n;
  r.generator = generator;
  r.class_number = report.h_lattice;
  r.invariants = report.structure.invariants;
  for (const auto& b : report.basis) r.basis.push_back({b.sublevel, b.scale, b.local.exponents()});
  r.checks = {report.checks.yu_vs_lattice, report.checks.orbit, report.checks.modular,
              report.checks.q_integrality};
  r.created = utc_now();
  r.seconds = report.seconds;
  return r;
}

Json payload_json(const ResultRecord& r) {
  Json j;
  j["n"] = r.n;
  j["class_number"] = r.class_number.get_str();
  j["invariants"] = integers_json(r.invariants);
  Json basis = Json::array();
  for (const auto& b : r.basis) {
    Json e = Json::object();
    for (const auto& [g, x] : b.exponents) e[std::to_string(g)] = x;
    basis.push_back({{"level", b.level}, {"scale", b.scale}, {"exponents", e}});
  }
  j["basis"] = basis;
  j["checks"] = {{"yu_vs_lattice", r.checks.yu_vs_lattice},
                 {"orbit", r.checks.orbit},
                 {"q_integrality", r.checks.q_integrality},
                 {"modular", r.checks.modular}};
  return j;
}

Json to_json(const ResultRecord& r) {
  Json j = payload_json(r);
  j["generator"] = r.generator ? Json(*r.generator) : Json(nullptr);
  j["version"] = r.version;
  j["created"] = r.created;
  Json secs = Json::object();
  for (const auto& [k, v] : r.seconds) secs[k] = v;
  j["seconds"] = secs;
  return j;
}

ResultRecord record_from_json(const Json& j) {
  ResultRecord r;
  r.n = j.at("n").get<long>();
  r.class_number = Integer(j.at("class_number").get<std::string>());
  r.invariants = integers_from(j.at("invariants"));
  for (const auto& b : j.at("basis")) {
    BasisRecord br;
    br.level = b.at("level").get<long>();
    br.scale = b.at("scale").get<long>();
    for (const auto& [g, e] : b.at("exponents").items()) br.exponents[std::stol(g)] = e.get<long>();
    r.basis.push_back(std::move(br));
  }
  const Json& c = j.at("checks");
  r.checks.yu_vs_lattice = c.at("yu_vs_lattice").get<bool>();
  r.checks.orbit = c.at("orbit").get<bool>();
  r.checks.q_integrality = c.at("q_integrality").get<bool>();
  r.checks.modular = c.value("modular", true);
  if (j.contains("generator") && !j["generator"].is_null()) r.generator = j["generator"].get<long>();
  r.version = j.value("version", std::string());
  r.created = j.value("created", std::string());
  if (j.contains("seconds"))
    for (const auto& [k, v] : j["seconds"].items()) r.seconds[k] = v.get<double>();
  return r;
}

std::string render_record(const ResultRecord& r) { return to_json(r).dump(1); }

ResultRecord parse_record(std::string_view text) { return record_from_json(Json::parse(text)); }

fs::path ResultCache::path_for(long n, std::optional<long> generator) const {
  std::string name = "n" + std::to_string(n) + "-v" + kVersion;
  if (generator) name += "-g" + std::to_string(*generator);
  return dir_ / (name + ".json");
}

std::optional<ResultRecord> ResultCache::load(long n, std::optional<long> generator) const {
  std::ifstream in(path_for(n, generator));
  if (!in) return std::nullopt;
  try {
    std::stringstream ss;
    ss << in.rdbuf();
    ResultRecord r = parse_record(ss.str());
    if (r.n != n || r.version != kVersion || r.generator != generator) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const ResultRecord& r) const {
  fs::create_directories(dir_);
  fs::path target = path_for(r.n, r.generator);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << render_record(r) << '\n';
  }
  fs::rename(tmp, target);
}

std::optional<fs::path> default_cache_dir() {
  if (const char* d = std::getenv(kCacheEnv); d && *d) return fs::path(d);
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return fs::path(d) / "modunits";
  if (const char* d = std::getenv("HOME"); d && *d) return fs::path(d) / ".cache" / "modunits";
  return std::nullopt;
}

ResultRecord compute(long n, std::optional<long> generator, const ResultCache* cache) {
  if (cache)
    if (auto hit = cache->load(n, generator)) return *hit;
  AnalyzeOptions opts;
  opts.basis.generator = generator;
  opts.with_generators = false;
  ResultRecord r = make_record(analyze(n, opts), generator);
  if (cache) {
    try {
      cache->store(r);
    } catch (const std::exception&) {
      // an unwritable cache only costs recomputation
    }
  }
  return r;
}

std::vector<ResultRecord> compute_levels(const std::vector<long>& levels, unsigned workers,
                                         const ResultCache* cache) {
  const std::size_t count = levels.size();
  std::vector<ResultRecord> out(count);
  if (count == 0) return out;
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        out[i] = compute(levels[i], std::nullopt, cache);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(count));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<ResultRecord> compute_range(long a, long b, unsigned workers, const ResultCache* cache) {
  std::vector<long> levels;
  for (long n = a; n <= b; ++n) levels.push_back(n);
  return compute_levels(levels, workers, cache);
}

long CorpusPrimary::level() const { return m * static_cast<long>(ipow(p, n).get_si()); }

const CorpusStructure* Corpus::structure_for(long n) const {
  for (const auto& s : structures)
    if (s.n == n) return &s;
  return nullptr;
}

const CorpusExample* Corpus::example_for(long n) const {
  for (const auto& e : examples)
    if (e.n == n) return &e;
  return nullptr;
}

Corpus parse_corpus(std::string_view text) {
  Json j = Json::parse(text);
  Corpus c;
  for (const auto& s : j.at("structures")) {
    CorpusStructure cs;
    cs.n = s.at("n").get<long>();
    if (s.contains("genus")) cs.genus = s["genus"].get<long>();
    cs.class_number = Integer(s.at("class_number").get<std::string>());
    cs.invariants = integers_from(s.at("invariants"));
    cs.kind = s.value("kind", std::string());
    c.structures.push_back(std::move(cs));
  }
  auto primary = [](const Json& row) {
    CorpusPrimary p;
    p.m = row.value("m", 1L);
    p.p = row.at("p").get<long>();
    p.n = row.at("n").get<int>();
    p.exponents = row.at("exponents").get<std::vector<int>>();
    p.notation = row.value("notation", std::string());
    return p;
  };
  for (const auto& row : j.at("prime_power_primary")) c.prime_power_primary.push_back(primary(row));
  for (const auto& row : j.at("mixed_primary")) c.mixed_primary.push_back(primary(row));
  for (const auto& e : j.at("examples")) {
    CorpusExample ex;
    ex.n = e.at("n").get<long>();
    if (e.contains("generator")) ex.generator = e["generator"].get<long>();
    ex.fields = e;
    c.examples.push_back(std::move(ex));
  }
  return c;
}

const Corpus& embedded_corpus() {
  static const Corpus corpus = parse_corpus(kEmbeddedCorpusJson);
  return corpus;
}

CorpusCheck check_against_corpus(const std::vector<ResultRecord>& records, const Corpus& corpus) {
  CorpusCheck out;
  for (const auto& r : records) {
    const std::string tag = "N=" + std::to_string(r.n) + ": ";
    const GroupStructure g = r.structure();
    std::vector<std::string> diffs;
    int entries = 0;
    if (const auto* s = corpus.structure_for(r.n)) {
      ++entries;
      if (r.class_number != s->class_number)
        diffs.push_back(tag + "class number " + r.class_number.get_str() + ", expected " + s->class_number.get_str());
      if (r.invariants != s->invariants)
        diffs.push_back(tag + "structure " + g.str() + ", expected " + GroupStructure{s->invariants}.str());
      if (s->genus && genus_x1(r.n) != *s->genus)
        diffs.push_back(tag + "genus " + std::to_string(genus_x1(r.n)) + ", expected " + std::to_string(*s->genus));
    }
    for (const auto* rows : {&corpus.prime_power_primary, &corpus.mixed_primary})
      for (const auto& row : *rows) {
        if (row.level() != r.n) continue;
        ++entries;
        auto got = p_primary(g, row.p);
        if (got != row.exponents)
          diffs.push_back(tag + std::to_string(row.p) + "-part " + join(got) + ", expected " + join(row.exponents));
      }
    if (const auto* ex = corpus.example_for(r.n)) {
      ++entries;
      if (ex->fields.contains("class_number") &&
          r.class_number != Integer(ex->fields["class_number"].get<std::string>()))
        diffs.push_back(tag + "class number differs from the worked example");
      if (ex->fields.contains("invariants") && r.invariants != integers_from(ex->fields["invariants"]))
        diffs.push_back(tag + "structure differs from the worked example");
    }
    if (entries == 0) continue;
    ++out.compared;
    if (diffs.empty()) ++out.matched;
    out.diffs.insert(out.diffs.end(), diffs.begin(), diffs.end());
  }
  return out;
}

std::pair<long, long> parse_range(std::string_view text) {
  auto number = [&](std::string_view s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw UsageError("bad range '" + std::string(text) + "', expected A..B");
    return std::stol(std::string(s));
  };
  auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    long n = number(text);
    return {n, n};
  }
  return {number(text.substr(0, dots)), number(text.substr(dots + 2))};
}

namespace {

struct Settings {
  bool json = false;
  std::optional<long> generator;
  std::string cache_dir;
  bool no_cache = false;
};

void require_level(long n) {
  if (n < 5) throw UsageError("N must be at least 5 (got " + std::to_string(n) + ")");
}

void require_prime(long p) {
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
}

void require_generator(long n, std::optional<long> generator) {
  if (!generator) return;
  const bool prime_power = is_prime_power(n) && (n % 2 == 1 || n >= 8);
  if (!prime_power) throw UsageError("--generator applies only to prime-power levels");
  if (!generates_mod_pm1(*generator, n))
    throw UsageError(std::to_string(*generator) + " does not generate (Z/" + std::to_string(n) + ")^x/+-1");
}

std::string primary_text(long p, const std::vector<int>& exps) {
  return exps.empty() ? "(1)" : render_primary(p, exps);
}

Json primary_json(long n, long p, const std::vector<int>& exps) {
  return {{"n", n}, {"p", p}, {"exponents", exps}, {"notation", primary_text(p, exps)}};
}

Json conjecture_json(const ConjectureReport& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"exponent", r.exponent}, {"predicted", r.predicted}, {"computed", r.computed}});
  return {{"p", c.p},
          {"n", c.n},
          {"regular", c.regular},
          {"predicted_rank", c.predicted_rank},
          {"computed_rank", c.computed_rank},
          {"rows", rows},
          {"agrees", c.agrees()}};
}

void print_table(std::ostream& out, const std::vector<ResultRecord>& rows) {
  std::size_t hw = std::string("class number").size();
  for (const auto& r : rows) hw = std::max(hw, r.class_number.get_str().size());
  out << std::setw(4) << "N" << "  " << std::setw(5) << "genus" << "  " << std::setw(static_cast<int>(hw))
      << "class number" << "  structure\n";
  for (const auto& r : rows)
    out << std::setw(4) << r.n << "  " << std::setw(5) << genus_x1(r.n) << "  " << std::setw(static_cast<int>(hw))
        << r.class_number.get_str() << "  " << r.structure().str() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cuspidal divisor class groups of X_1(N) from Siegel units", "modunits"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Settings s;
  app.add_flag("--json", s.json, "Structured output");
  app.add_option("--generator", s.generator, "Generator of (Z/N)^x/+-1 for prime-power N");
  app.add_option("--cache-dir", s.cache_dir, std::string("Result cache directory (default $") + kCacheEnv + ")");
  app.add_flag("--no-cache", s.no_cache, "Neither read nor write the cache");

  long n = 0, p = 0;
  int e = 0;
  auto* classnum = app.add_subcommand("classnum", "Class number h(N)");
  classnum->add_option("N", n)->required();
  auto* structure_cmd = app.add_subcommand("structure", "Invariant factors of the class group");
  structure_cmd->add_option("N", n)->required();
  auto* basis_cmd = app.add_subcommand("basis", "Basis of the modular units, one element per line");
  basis_cmd->add_option("N", n)->required();
  auto* primary = app.add_subcommand("primary", "p-primary part of the class group");
  primary->add_option("N", n)->required();
  primary->add_option("p", p)->required();
  auto* conjecture = app.add_subcommand("conjecture", "Predicted vs computed p-part at level p^n");
  conjecture->add_option("p", p)->required();
  conjecture->add_option("n", e)->required();

  std::string range;
  bool check = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  long max_level = 1000;
  auto* table = app.add_subcommand("table", "Class groups for a range of levels");
  table->add_option("range", range, "A..B")->required();
  table->add_flag("--check", check, "Compare against the embedded corpus");
  table->add_option("--jobs,-j", jobs, "Worker threads");
  table->add_option("--max-level", max_level, "Largest level accepted");

  long max_power = 243;
  auto* primary_table = app.add_subcommand("primary-table", "p-parts at prime powers p^n, n >= 2");
  primary_table->add_option("--max", max_power, "Largest p^n");
  primary_table->add_flag("--check", check, "Compare against the embedded corpus");
  primary_table->add_option("--jobs,-j", jobs, "Worker threads");

  auto* verify = app.add_subcommand("verify", "Recompute and cross-check both class-number routes");
  verify->add_option("N", n)->required();

  int trunc = kDefaultTruncation;
  auto* qcheck = app.add_subcommand("qcheck", "q-expansions of the basis elements");
  qcheck->add_option("N", n)->required();
  qcheck->add_option("--trunc", trunc, "Number of coefficients")->check(CLI::Range(1, 10000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::optional<ResultCache> cache_store;
    if (!s.no_cache) {
      if (!s.cache_dir.empty()) cache_store.emplace(s.cache_dir);
      else if (auto d = default_cache_dir()) cache_store.emplace(*d);
    }
    const ResultCache* cache = cache_store ? &*cache_store : nullptr;

    auto record_for = [&](long level, std::optional<long> generator) {
      require_level(level);
      require_generator(level, generator);
      return compute(level, generator, cache);
    };
    auto status = [](const ResultRecord& r) { return r.checks.all() ? kOk : kInconsistent; };

    if (*classnum || *structure_cmd || *basis_cmd) {
      ResultRecord r = record_for(n, s.generator);
      if (s.json) out << payload_json(r).dump() << '\n';
      else if (*classnum) out << r.class_number.get_str() << '\n';
      else if (*structure_cmd) out << r.structure().str() << '\n';
      else
        for (std::size_t i = 0; i < r.basis.size(); ++i) out << r.display(i) << '\n';
      if (!r.checks.all()) err << "internal cross-check failed at N=" << n << '\n';
      return status(r);
    }

    if (*primary) {
      require_prime(p);
      ResultRecord r = record_for(n, s.generator);
      auto exps = p_primary(r.structure(), p);
      if (s.json) out << primary_json(n, p, exps).dump() << '\n';
      else out << primary_text(p, exps) << '\n';
      return status(r);
    }

    if (*conjecture) {
      require_prime(p);
      if (e < 1) throw UsageError("n must be positive");
      Integer q = ipow(p, static_cast<unsigned long>(e));
      if (!q.fits_slong_p()) throw UsageError("p^n too large");
      ResultRecord r = record_for(q.get_si(), s.generator);
      ConjectureReport c = conjecture_report(p, e, p_primary(r.structure(), p));
      if (s.json) out << conjecture_json(c).dump() << '\n';
      else {
        std::string text = c.str();
        out << text << (text.ends_with('\n') ? "" : "\n");
      }
      return status(r);
    }

    if (*table) {
      auto [a, b] = parse_range(range);
      if (a < 5 || b < a || b > max_level)
        throw UsageError("range must satisfy 5 <= A <= B <= " + std::to_string(max_level));
      auto rows = compute_range(a, b, jobs, cache);
      CorpusCheck cc;
      if (check) cc = check_against_corpus(rows, embedded_corpus());
      bool consistent = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.checks.all(); });
      if (s.json) {
        Json j;
        j["rows"] = Json::array();
        for (const auto& r : rows) j["rows"].push_back(payload_json(r));
        if (check) j["check"] = {{"compared", cc.compared}, {"matched", cc.matched}, {"diffs", cc.diffs}};
        out << j.dump() << '\n';
      } else {
        print_table(out, rows);
        if (check) {
          for (const auto& d : cc.diffs) out << "DIFF " << d << '\n';
          out << cc.matched << "/" << cc.compared << " match\n";
        }
      }
      if (!consistent) err << "internal cross-check failed in range\n";
      return (consistent && cc.ok()) ? kOk : kInconsistent;
    }

    if (*primary_table) {
      struct Row {
        long p;
        int e;
        long q;
      };
      std::vector<Row> rows;
      for (long q = 8; q <= max_power; ++q) {
        auto f = factorize(q);
        if (f.size() == 1 && f[0].e >= 2) rows.push_back({f[0].p, f[0].e, q});
      }
      std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        return std::pair(x.p, x.e) < std::pair(y.p, y.e);
      });
      std::vector<long> levels;
      for (const auto& row : rows) levels.push_back(row.q);
      auto records = compute_levels(levels, jobs, cache);
      bool ok = true;
      long compared = 0, matched = 0;
      Json j = Json::array();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        auto exps = p_primary(records[i].structure(), row.p);
        ok = ok && records[i].checks.all();
        std::string mark;
        if (check) {
          for (const auto& c : embedded_corpus().prime_power_primary) {
            if (c.p != row.p || c.n != row.e) continue;
            ++compared;
            if (c.exponents == exps) ++matched;
            else mark = "  DIFF expected " + c.notation;
          }
        }
        if (s.json) j.push_back(primary_json(row.q, row.p, exps));
        else out << row.p << "^" << row.e << "  " << primary_text(row.p, exps) << mark << '\n';
      }
      if (s.json) out << j.dump() << '\n';
      else if (check) out << matched << "/" << compared << " match\n";
      return (ok && matched == compared) ? kOk : kInconsistent;
    }

    if (*verify) {
      require_level(n);
      require_generator(n, s.generator);
      AnalyzeOptions opts;
      opts.basis.generator = s.generator;
      opts.with_generators = false;
      ClassGroupReport rep = analyze(n, opts);
      const auto& c = rep.checks;
      if (s.json) {
        Json j{{"n", n},
               {"h_lattice", rep.h_lattice.get_str()},
               {"h_yu", rep.h_yu.get_str()},
               {"checks",
                {{"yu_vs_lattice", c.yu_vs_lattice},
                 {"orbit", c.orbit},
                 {"orbit_applicable", c.orbit_applicable},
                 {"modular", c.modular},
                 {"q_integrality", c.q_integrality}}},
               {"consistent", c.all()}};
        out << j.dump() << '\n';
      } else {
        auto ok = [](bool b) { return b ? "ok" : "FAILED"; };
        out << "h via lattice index    " << rep.h_lattice.get_str() << '\n'
            << "h via Bernoulli det    " << rep.h_yu.get_str() << '\n'
            << "routes agree           " << ok(c.yu_vs_lattice) << '\n'
            << "orbit condition        " << (c.orbit_applicable ? ok(c.orbit) : "n/a") << '\n'
            << "modularity             " << ok(c.modular) << '\n'
            << "integral q-orders      " << ok(c.q_integrality) << '\n'
            << (c.all() ? "consistent" : "INCONSISTENT") << '\n';
      }
      return c.all() ? kOk : kInconsistent;
    }

    if (*qcheck) {
      require_level(n);
      require_generator(n, s.generator);
      BasisOptions bo;
      bo.generator = s.generator;
      bool ok = true;
      Json elems = Json::array();
      for (const auto& b : basis(n, bo)) {
        QSeries q = expand_product(b.unit, trunc);
        bool integral = q.has_integral_exponents() && q.has_integer_coefficients();
        ok = ok && integral;
        if (s.json)
          elems.push_back({{"unit", b.display()}, {"series", render(q)}, {"integral", integral}});
        else
          out << b.display() << " = " << render(q) << (integral ? "" : "  NOT INTEGRAL") << '\n';
      }
      if (s.json) out << Json{{"n", n}, {"truncation", trunc}, {"elements", elems}, {"integral", ok}}.dump() << '\n';
      return ok ? kOk : kInconsistent;
    }
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return kUsage;
}

}  // namespace modunits::cli

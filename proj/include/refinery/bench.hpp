#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refinery/outcome.hpp"

namespace refinery {

enum class Algorithm { kLinCR, kBuild, kOracle };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

RefineOutcome run_algorithm(Algorithm a, std::span<const Tree> inputs);

struct BenchConfig {
  std::vector<std::size_t> n_values{128, 256, 512, 1024, 2048, 4096, 8192};
  std::vector<std::size_t> k_values{2, 8, 32};
  std::vector<double> p_values{0.1, 0.5, 0.9};
  std::size_t replicates = 100;
  std::vector<Algorithm> algorithms{Algorithm::kLinCR, Algorithm::kBuild};
  std::uint64_t seed = 1;
  std::chrono::nanoseconds budget = std::chrono::seconds(60);  // per (n, k, p) cell
  bool warmup = true;
};

// Throws std::invalid_argument on empty grids or bad values.
void validate(const BenchConfig& config);

// Flat "key = value" lines; '#' starts a comment. Keys: n, k, p (comma
// lists), replicates, algorithms, seed, budget_seconds, warmup.
BenchConfig parse_bench_config(std::istream& in, BenchConfig base = {});

enum class RunOutcome { kRefined, kIncompatible, kError, kTimeout };

std::string_view to_string(RunOutcome o);
std::optional<RunOutcome> parse_run_outcome(std::string_view name);

struct BenchRecord {
  Algorithm algorithm = Algorithm::kLinCR;
  std::size_t n = 0;
  std::size_t k = 0;
  double p = 0.0;
  std::uint64_t replicate = 0;
  std::uint64_t seed = 0;  // instance stream seed
  RunOutcome outcome = RunOutcome::kRefined;
  std::int64_t duration_ns = 0;

  bool completed() const { return outcome == RunOutcome::kRefined || outcome == RunOutcome::kIncompatible; }
  bool operator==(const BenchRecord&) const = default;
};

using RecordSink = std::function<void(const BenchRecord&)>;

// Every replicate generates one instance that all selected algorithms run
// on; only the refine call is timed. Replicates left when a cell exceeds its
// budget are emitted with outcome timeout. Within one (k, p) pair the loop
// runs replicate-major, visiting every n before the next replicate.
std::vector<BenchRecord> run_grid(const BenchConfig& config, const RecordSink& sink = {});

// Lower median.
std::int64_t median_duration(std::vector<std::int64_t> durations);

// Least-squares slope of log(median duration) against log(n) over completed
// records of one (algorithm, k, p) group. Throws std::invalid_argument with
// fewer than three distinct n.
double fit_slope(std::span<const BenchRecord> records, Algorithm algorithm, std::size_t k, double p);

inline constexpr std::string_view kCsvHeader = "algorithm,n,k,p,replicate,seed,outcome,duration_ns";

void write_csv(std::ostream& out, std::span<const BenchRecord> records);
std::string format_csv_row(const BenchRecord& r);
BenchRecord parse_csv_row(std::string_view line);
std::vector<BenchRecord> read_csv(std::istream& in);

// Per-cell medians and per-(algorithm, k, p) slopes.
void write_summary(std::ostream& out, std::span<const BenchRecord> records);

// Log-log median-vs-n panels: one column per k, one row per p, one line per
// algorithm.
void write_svg(std::ostream& out, std::span<const BenchRecord> records);

}  // namespace refinery

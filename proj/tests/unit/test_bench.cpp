#include <cmath>
#include <sstream>

#include "doctest.h"
#include "refinery/bench.hpp"

using namespace refinery;

namespace {

std::vector<BenchRecord> synthetic(double exponent) {
  std::vector<BenchRecord> out;
  for (std::size_t n : {128U, 256U, 512U, 1024U, 2048U}) {
    for (std::uint64_t rep = 0; rep < 5; ++rep) {
      BenchRecord r;
      r.n = n;
      r.k = 8;
      r.p = 0.5;
      r.replicate = rep;
      r.duration_ns = static_cast<std::int64_t>(std::llround(3.0 * std::pow(static_cast<double>(n), exponent)));
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("slope of exact power laws") {
  CHECK(std::abs(fit_slope(synthetic(1.0), Algorithm::kLinCR, 8, 0.5) - 1.0) < 1e-9);
  CHECK(std::abs(fit_slope(synthetic(2.0), Algorithm::kLinCR, 8, 0.5) - 2.0) < 1e-9);
  auto two_points = synthetic(1.0);
  std::erase_if(two_points, [](const BenchRecord& r) { return r.n > 256; });
  CHECK_THROWS_AS(fit_slope(two_points, Algorithm::kLinCR, 8, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(fit_slope(synthetic(1.0), Algorithm::kBuild, 8, 0.5), std::invalid_argument);
}

TEST_CASE("lower median") {
  CHECK(median_duration({5, 1, 3}) == 3);
  CHECK(median_duration({4, 1, 3, 2}) == 2);
  CHECK_THROWS_AS(median_duration({}), std::invalid_argument);
}

TEST_CASE("csv") {
  std::ostringstream empty;
  write_csv(empty, {});
  CHECK(empty.str() == "algorithm,n,k,p,replicate,seed,outcome,duration_ns\n");

  BenchRecord r{Algorithm::kBuild, 256, 8, 0.1, 3, 12345678901234567ULL, RunOutcome::kIncompatible, 987};
  CHECK(format_csv_row(r) == "build,256,8,0.1,3,12345678901234567,incompatible,987");
  std::ostringstream one;
  std::vector<BenchRecord> rs{r};
  write_csv(one, rs);
  std::istringstream in(one.str());
  auto back = read_csv(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == r);
  CHECK_THROWS_AS(parse_csv_row("lincr,1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv_row("quick,1,2,0.5,0,0,refined,1"), std::invalid_argument);
}

TEST_CASE("config parsing") {
  std::istringstream in("# tiny\nn = 64, 128,256\nk=2\np=0.5\nreplicates=5\nalgorithms=lincr,oracle\nseed=9\n"
                        "budget_seconds=1.5\nwarmup=false\n");
  auto c = parse_bench_config(in);
  CHECK(c.n_values == std::vector<std::size_t>{64, 128, 256});
  CHECK(c.k_values == std::vector<std::size_t>{2});
  CHECK(c.replicates == 5);
  CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::kLinCR, Algorithm::kOracle});
  CHECK(c.seed == 9);
  CHECK(c.budget == std::chrono::milliseconds(1500));
  CHECK_FALSE(c.warmup);
  std::istringstream bad("frobnicate=1\n");
  CHECK_THROWS_AS(parse_bench_config(bad), std::invalid_argument);
  std::istringstream zero("replicates=0\n");
  CHECK_THROWS_AS(parse_bench_config(zero), std::invalid_argument);
}

TEST_CASE("grid runs") {
  BenchConfig c;
  c.n_values = {32};
  c.k_values = {2};
  c.p_values = {0.5};
  c.replicates = 1;
  c.algorithms = {Algorithm::kLinCR};
  auto one = run_grid(c);
  REQUIRE(one.size() == 1);
  CHECK(one[0].outcome == RunOutcome::kRefined);
  CHECK(one[0].duration_ns > 0);

  c.n_values = {16, 32, 64};
  c.replicates = 3;
  c.algorithms = {Algorithm::kLinCR, Algorithm::kBuild, Algorithm::kOracle};
  std::size_t streamed = 0;
  auto a = run_grid(c, [&](const BenchRecord&) { ++streamed; });
  auto b = run_grid(c);
  CHECK(a.size() == 27);
  CHECK(streamed == 27);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].seed == b[i].seed);
    CHECK(a[i].outcome == RunOutcome::kRefined);
  }
  std::ostringstream summary, svg;
  write_summary(summary, a);
  write_svg(svg, a);
  CHECK(summary.str().find("slope=") != std::string::npos);
  CHECK(svg.str().rfind("<svg", 0) == 0);
}

TEST_CASE("exhausted budget marks timeouts") {
  BenchConfig c;
  c.n_values = {64};
  c.k_values = {2};
  c.p_values = {0.5};
  c.replicates = 4;
  c.algorithms = {Algorithm::kLinCR, Algorithm::kOracle};
  c.budget = std::chrono::nanoseconds(1);
  c.warmup = true;
  auto rs = run_grid(c);
  CHECK(rs.size() == 8);
  std::size_t timeouts = 0;
  for (const auto& r : rs) timeouts += r.outcome == RunOutcome::kTimeout;
  CHECK(timeouts == 8);
}

#include "refinery/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "refinery/build.hpp"
#include "refinery/lincr.hpp"
#include "refinery/oracle.hpp"
#include "refinery/simgen.hpp"

namespace refinery {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kLinCR: return "lincr";
    case Algorithm::kBuild: return "build";
    case Algorithm::kOracle: return "oracle";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::kLinCR, Algorithm::kBuild, Algorithm::kOracle})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

RefineOutcome run_algorithm(Algorithm a, std::span<const Tree> inputs) {
  switch (a) {
    case Algorithm::kLinCR: return lincr_refine(inputs);
    case Algorithm::kBuild: return build_refine(inputs);
    case Algorithm::kOracle: return refine_oracle(inputs);
  }
  throw std::invalid_argument("unknown algorithm");
}

std::string_view to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::kRefined: return "refined";
    case RunOutcome::kIncompatible: return "incompatible";
    case RunOutcome::kError: return "error";
    case RunOutcome::kTimeout: return "timeout";
  }
  return "unknown";
}

std::optional<RunOutcome> parse_run_outcome(std::string_view name) {
  for (auto o : {RunOutcome::kRefined, RunOutcome::kIncompatible, RunOutcome::kError, RunOutcome::kTimeout})
    if (to_string(o) == name) return o;
  return std::nullopt;
}

void validate(const BenchConfig& config) {
  if (config.n_values.empty() || config.k_values.empty() || config.p_values.empty() || config.algorithms.empty())
    throw std::invalid_argument("benchmark grid must not be empty");
  if (config.replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  for (auto n : config.n_values)
    if (n < 1) throw std::invalid_argument("n must be at least 1");
  for (auto k : config.k_values)
    if (k < 1) throw std::invalid_argument("k must be at least 1");
  for (auto p : config.p_values)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (config.budget.count() <= 0) throw std::invalid_argument("budget must be positive");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    auto cut = s.find(sep);
    out.push_back(trim(s.substr(0, cut)));
    if (cut == std::string_view::npos) return out;
    s.remove_prefix(cut + 1);
  }
}

template <class T>
T parse_number(std::string_view s, std::string_view what) {
  T value{};
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(s) + "'");
  return value;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

BenchConfig parse_bench_config(std::istream& in, BenchConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = line;
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    auto eq = l.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    auto key = trim(l.substr(0, eq));
    auto value = trim(l.substr(eq + 1));
    if (key == "n") {
      base.n_values.clear();
      for (auto v : split(value, ',')) base.n_values.push_back(parse_number<std::size_t>(v, "n"));
    } else if (key == "k") {
      base.k_values.clear();
      for (auto v : split(value, ',')) base.k_values.push_back(parse_number<std::size_t>(v, "k"));
    } else if (key == "p") {
      base.p_values.clear();
      for (auto v : split(value, ',')) base.p_values.push_back(parse_number<double>(v, "p"));
    } else if (key == "replicates") {
      base.replicates = parse_number<std::size_t>(value, "replicates");
    } else if (key == "algorithms") {
      base.algorithms.clear();
      for (auto v : split(value, ',')) {
        auto a = parse_algorithm(v);
        if (!a) throw std::invalid_argument("unknown algorithm '" + std::string(v) + "'");
        base.algorithms.push_back(*a);
      }
    } else if (key == "seed") {
      base.seed = parse_number<std::uint64_t>(value, "seed");
    } else if (key == "budget_seconds") {
      base.budget = std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::duration<double>(parse_number<double>(value, "budget_seconds")));
    } else if (key == "warmup") {
      base.warmup = value == "true" || value == "1";
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  validate(base);
  return base;
}

std::vector<BenchRecord> run_grid(const BenchConfig& config, const RecordSink& sink) {
  validate(config);
  using Clock = std::chrono::steady_clock;
  std::vector<BenchRecord> records;
  auto emit = [&](BenchRecord r) {
    if (sink) sink(r);
    records.push_back(r);
  };

  // Replicates are interleaved across n so that slow drift of the machine
  // does not bias one end of the slope fit. Budgets still apply per cell.
  for (double p : config.p_values) {
    for (std::size_t k : config.k_values) {
      std::vector<Clock::duration> spent(config.n_values.size(), Clock::duration::zero());
      if (config.warmup) {
        for (std::size_t j = 0; j < config.n_values.size(); ++j) {
          const auto start = Clock::now();
          auto warm = make_instance({config.n_values[j], k, p, config.seed, 0});
          for (auto a : config.algorithms) {
            try {
              (void)run_algorithm(a, warm.inputs);
            } catch (const std::exception&) {
            }
          }
          spent[j] += Clock::now() - start;
        }
      }
      for (std::uint64_t rep = 0; rep < config.replicates; ++rep) {
        for (std::size_t j = 0; j < config.n_values.size(); ++j) {
          const std::size_t n = config.n_values[j];
          InstanceParams params{n, k, p, config.seed, rep};
          if (spent[j] > config.budget) {
            for (auto a : config.algorithms) emit({a, n, k, p, rep, stream_seed(params), RunOutcome::kTimeout, 0});
            continue;
          }
          const auto cell_start = Clock::now();
          auto instance = make_instance(params);
          for (auto a : config.algorithms) {
            BenchRecord r{a, n, k, p, rep, instance.stream_seed, RunOutcome::kError, 0};
            const auto start = Clock::now();
            try {
              auto out = run_algorithm(a, instance.inputs);
              const auto stop = Clock::now();
              r.outcome = out.is_refined() ? RunOutcome::kRefined : RunOutcome::kIncompatible;
              r.duration_ns = std::max<std::int64_t>(
                  1, std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
            } catch (const std::exception&) {
              r.outcome = RunOutcome::kError;
            }
            emit(r);
          }
          spent[j] += Clock::now() - cell_start;
        }
      }
    }
  }
  return records;
}

std::int64_t median_duration(std::vector<std::int64_t> durations) {
  if (durations.empty()) throw std::invalid_argument("median of no durations");
  std::sort(durations.begin(), durations.end());
  return durations[(durations.size() - 1) / 2];
}

namespace {

// n -> completed durations for one (algorithm, k, p) group.
std::map<std::size_t, std::vector<std::int64_t>> group_durations(std::span<const BenchRecord> records,
                                                                  Algorithm algorithm, std::size_t k, double p) {
  std::map<std::size_t, std::vector<std::int64_t>> by_n;
  for (const auto& r : records)
    if (r.algorithm == algorithm && r.k == k && r.p == p && r.completed()) by_n[r.n].push_back(r.duration_ns);
  return by_n;
}

struct GroupKey {
  Algorithm algorithm;
  std::size_t k;
  double p;
  auto operator<=>(const GroupKey&) const = default;
};

std::set<GroupKey> groups_of(std::span<const BenchRecord> records) {
  std::set<GroupKey> out;
  for (const auto& r : records) out.insert({r.algorithm, r.k, r.p});
  return out;
}

}  // namespace

double fit_slope(std::span<const BenchRecord> records, Algorithm algorithm, std::size_t k, double p) {
  auto by_n = group_durations(records, algorithm, k, p);
  if (by_n.size() < 3) throw std::invalid_argument("slope needs at least three distinct n with completed runs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<double>(by_n.size());
  for (auto& [n, ds] : by_n) {
    double x = std::log(static_cast<double>(n));
    double y = std::log(static_cast<double>(median_duration(ds)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::string format_csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os << to_string(r.algorithm) << ',' << r.n << ',' << r.k << ',' << format_double(r.p) << ',' << r.replicate << ','
     << r.seed << ',' << to_string(r.outcome) << ',' << r.duration_ns;
  return os.str();
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) out << format_csv_row(r) << '\n';
}

BenchRecord parse_csv_row(std::string_view line) {
  auto f = split(line, ',');
  if (f.size() != 8) throw std::invalid_argument("expected 8 CSV fields, got " + std::to_string(f.size()));
  BenchRecord r;
  auto a = parse_algorithm(f[0]);
  if (!a) throw std::invalid_argument("unknown algorithm '" + std::string(f[0]) + "'");
  r.algorithm = *a;
  r.n = parse_number<std::size_t>(f[1], "n");
  r.k = parse_number<std::size_t>(f[2], "k");
  r.p = parse_number<double>(f[3], "p");
  r.replicate = parse_number<std::uint64_t>(f[4], "replicate");
  r.seed = parse_number<std::uint64_t>(f[5], "seed");
  auto o = parse_run_outcome(f[6]);
  if (!o) throw std::invalid_argument("unknown outcome '" + std::string(f[6]) + "'");
  r.outcome = *o;
  r.duration_ns = parse_number<std::int64_t>(f[7], "duration_ns");
  return r;
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  std::string line;
  if (!std::getline(in, line)) return out;
  if (trim(line) != kCsvHeader) throw std::invalid_argument("unexpected CSV header");
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    out.push_back(parse_csv_row(line));
  }
  return out;
}

void write_summary(std::ostream& out, std::span<const BenchRecord> records) {
  std::size_t timeouts = 0;
  std::size_t errors = 0;
  for (const auto& r : records) {
    timeouts += r.outcome == RunOutcome::kTimeout;
    errors += r.outcome == RunOutcome::kError;
  }
  out << "records: " << records.size() << " (timeouts: " << timeouts << ", errors: " << errors << ")\n";
  out << std::left << std::setw(8) << "algo" << std::setw(5) << "k" << std::setw(6) << "p" << std::setw(8) << "n"
      << std::setw(6) << "runs" << "median_ns\n";
  for (const auto& g : groups_of(records)) {
    for (auto& [n, ds] : group_durations(records, g.algorithm, g.k, g.p)) {
      out << std::setw(8) << to_string(g.algorithm) << std::setw(5) << g.k << std::setw(6) << format_double(g.p)
          << std::setw(8) << n << std::setw(6) << ds.size() << median_duration(ds) << '\n';
    }
  }
  out << "\nslopes (log median runtime vs log n)\n";
  for (const auto& g : groups_of(records)) {
    out << std::setw(8) << to_string(g.algorithm) << " k=" << std::setw(4) << g.k << " p=" << std::setw(5)
        << format_double(g.p) << " slope=";
    try {
      out << std::fixed << std::setprecision(3) << fit_slope(records, g.algorithm, g.k, g.p) << '\n';
      out << std::defaultfloat;
    } catch (const std::invalid_argument&) {
      out << "n/a\n";
    }
  }
}

void write_svg(std::ostream& out, std::span<const BenchRecord> records) {
  std::set<std::size_t> ks;
  std::set<double> ps;
  std::set<Algorithm> algs;
  double min_n = 1e300, max_n = 0, min_t = 1e300, max_t = 0;
  for (const auto& g : groups_of(records)) {
    ks.insert(g.k);
    ps.insert(g.p);
    algs.insert(g.algorithm);
    for (auto& [n, ds] : group_durations(records, g.algorithm, g.k, g.p)) {
      double t = static_cast<double>(median_duration(ds));
      min_n = std::min(min_n, double(n));
      max_n = std::max(max_n, double(n));
      min_t = std::min(min_t, t);
      max_t = std::max(max_t, t);
    }
  }
  const double panel_w = 260, panel_h = 200, margin = 40;
  const double width = margin + static_cast<double>(std::max<std::size_t>(ks.size(), 1)) * (panel_w + margin);
  const double height = margin + static_cast<double>(std::max<std::size_t>(ps.size(), 1)) * (panel_h + margin);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (max_n <= 0) {
    out << "</svg>\n";
    return;
  }
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
  auto lx = [&](double n) { return max_n > min_n ? (std::log(n) - std::log(min_n)) / (std::log(max_n) - std::log(min_n)) : 0.5; };
  auto ly = [&](double t) { return max_t > min_t ? (std::log(t) - std::log(min_t)) / (std::log(max_t) - std::log(min_t)) : 0.5; };

  std::size_t row = 0;
  for (double p : ps) {
    std::size_t col = 0;
    for (std::size_t k : ks) {
      double x0 = margin + static_cast<double>(col) * (panel_w + margin);
      double y0 = margin + static_cast<double>(row) * (panel_h + margin);
      out << "<g><rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << panel_w << "\" height=\"" << panel_h
          << "\" fill=\"none\" stroke=\"black\"/>\n";
      out << "<text x=\"" << x0 + 4 << "\" y=\"" << y0 - 6 << "\" font-size=\"12\">k=" << k << " p=" << format_double(p)
          << "</text>\n";
      for (Algorithm a : algs) {
        auto by_n = group_durations(records, a, k, p);
        if (by_n.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << colors[static_cast<int>(a)] << "\" points=\"";
        for (auto& [n, ds] : by_n) {
          double t = static_cast<double>(median_duration(ds));
          out << x0 + lx(double(n)) * panel_w << ',' << y0 + (1 - ly(t)) * panel_h << ' ';
        }
        out << "\"/>\n";
      }
      out << "</g>\n";
      ++col;
    }
    ++row;
  }
  double ly0 = height - 12;
  double lx0 = margin;
  for (Algorithm a : algs) {
    out << "<text x=\"" << lx0 << "\" y=\"" << ly0 << "\" font-size=\"12\" fill=\"" << colors[static_cast<int>(a)]
        << "\">" << to_string(a) << "</text>\n";
    lx0 += 70;
  }
  out << "</svg>\n";
}

}  // namespace refinery

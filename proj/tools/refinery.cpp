// Command-line front end: refine, check, gen, bench, triples.
//
// Exit status: 0 refinement exists / success, 1 inputs incompatible,
// 2 usage or input error (and, for check, any disagreement).

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "refinery/bench.hpp"
#include "refinery/build.hpp"
#include "refinery/lincr.hpp"
#include "refinery/newick.hpp"
#include "refinery/oracle.hpp"
#include "refinery/simgen.hpp"

namespace fs = std::filesystem;
using namespace refinery;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIncompatible = 1;
constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Tree> read_inputs(const std::vector<std::string>& paths) {
  auto index = std::make_shared<LeafIndex>();
  std::vector<Tree> trees;
  auto take = [&](std::istream& in, const std::string& source) {
    auto more = read_newick_lines(in, source, index);
    for (auto& t : more) trees.push_back(std::move(t));
  };
  if (paths.empty()) {
    take(std::cin, "<stdin>");
  } else {
    for (const auto& p : paths) {
      if (p == "-") {
        take(std::cin, "<stdin>");
        continue;
      }
      std::ifstream in(p);
      if (!in) throw UsageError("cannot open '" + p + "'");
      take(in, p);
    }
  }
  if (trees.empty()) throw UsageError("no trees in input");
  try {
    validate_instance(trees);
  } catch (const InputError& e) {
    // Trees parsed earlier may have been missing labels introduced later.
    throw UsageError(e.what());
  }
  return trees;
}

RefineOutcome run_lincr(std::span<const Tree> inputs, bool binary_shortcut, LinCRStats* stats) {
#ifdef REFINERY_INJECT_FAULT
  // Test-only fault: the last input is silently ignored.
  if (inputs.size() > 1) inputs = inputs.first(inputs.size() - 1);
#endif
  LinCROptions options;
  options.binary_shortcut = binary_shortcut;
  return lincr_refine(inputs, options, stats);
}

RefineOutcome run_named(Algorithm a, std::span<const Tree> inputs, bool binary_shortcut = false,
                        LinCRStats* stats = nullptr) {
  if (a == Algorithm::kLinCR) return run_lincr(inputs, binary_shortcut, stats);
  return run_algorithm(a, inputs);
}

std::string describe(const RefineOutcome& o) {
  if (o.is_refined()) return to_newick(o.tree());
  return "incompatible (" + std::string(to_string(o.reason())) + ")";
}

bool agree(const RefineOutcome& a, const RefineOutcome& b) {
  if (a.is_refined() != b.is_refined()) return false;
  return !a.is_refined() || to_newick(a.tree()) == to_newick(b.tree());
}

int cmd_refine(const std::vector<std::string>& paths, const std::string& algorithm, const std::string& output,
               bool stats, bool binary_shortcut) {
  auto a = parse_algorithm(algorithm);
  if (!a) throw UsageError("unknown algorithm '" + algorithm + "'");
  auto inputs = read_inputs(paths);

  LinCRStats lincr_stats;
  const auto start = std::chrono::steady_clock::now();
  auto out = run_named(*a, inputs, binary_shortcut, &lincr_stats);
  const auto elapsed = std::chrono::steady_clock::now() - start;

  if (stats) {
    std::cerr << "inputs: " << inputs.size() << " trees, " << inputs.front().n_leaves() << " leaves\n";
    for (std::size_t i = 0; i < inputs.size(); ++i)
      std::cerr << "input " << i + 1 << ": " << inputs[i].size() << " vertices\n";
    if (out.is_refined()) std::cerr << "refined: " << out.tree().size() << " vertices\n";
    if (*a == Algorithm::kLinCR) {
      std::cerr << "enqueued: " << lincr_stats.enqueued << "\n"
                << "select_iterations: " << lincr_stats.select_iterations << "\n"
                << "candidates: " << lincr_stats.candidates << "\n";
    }
    std::cerr << "time_ns: " << std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count() << "\n";
  }

  if (!out.is_refined()) {
    std::cerr << "incompatible: " << to_string(out.reason());
    if (!out.incompatible().detail.empty()) std::cerr << ": " << out.incompatible().detail;
    std::cerr << "\n";
    return kExitIncompatible;
  }
  const auto text = to_newick(out.tree()) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(output);
    if (!f || !(f << text)) throw UsageError("cannot write '" + output + "'");
  }
  return kExitOk;
}

// Newick of t without the given leaf; unary vertices left behind collapse.
std::string without_leaf(const Tree& t, LeafId drop) {
  std::vector<std::string> text(t.size());
  for (VertexId v : t.postorder()) {
    auto& s = text[static_cast<std::size_t>(v)];
    if (t.is_leaf(v)) {
      if (t.leaf_id(v) != drop) {
        s = to_newick(Tree::single_leaf(t.index_ptr(), t.leaf_id(v)));
        s.pop_back();
      }
      continue;
    }
    std::vector<const std::string*> kept;
    for (VertexId c : t.children(v))
      if (!text[static_cast<std::size_t>(c)].empty()) kept.push_back(&text[static_cast<std::size_t>(c)]);
    if (kept.size() == 1) {
      s = *kept.front();
    } else if (kept.size() > 1) {
      s = "(";
      for (std::size_t j = 0; j < kept.size(); ++j) s += (j ? "," : "") + *kept[j];
      s += ")";
    }
  }
  return text[static_cast<std::size_t>(t.root())] + ";";
}

std::vector<std::string> as_lines(std::span<const Tree> trees) {
  std::vector<std::string> lines;
  for (const auto& t : trees) lines.push_back(to_newick(t));
  return lines;
}

std::vector<Tree> parse_lines(const std::vector<std::string>& lines) {
  auto index = std::make_shared<LeafIndex>();
  std::vector<Tree> trees;
  for (const auto& l : lines) trees.push_back(parse_newick(l, index));
  return trees;
}

// Greedy shrink: drop whole trees, then single leaves, while the predicate
// still reports a disagreement.
std::vector<std::string> minimize(std::vector<std::string> lines,
                                  const std::function<bool(std::span<const Tree>)>& disagrees) {
  auto still_fails = [&](const std::vector<std::string>& candidate) {
    try {
      auto trees = parse_lines(candidate);
      validate_instance(trees);
      return disagrees(trees);
    } catch (const std::exception&) {
      return false;
    }
  };
  for (std::size_t i = lines.size(); i-- > 0;) {
    if (lines.size() == 1) break;
    auto candidate = lines;
    candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
    if (still_fails(candidate)) lines = std::move(candidate);
  }
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    auto trees = parse_lines(lines);
    const std::size_t n = trees.front().n_leaves();
    if (n <= 2) break;
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::string> candidate;
      for (const auto& t : trees) candidate.push_back(without_leaf(t, static_cast<LeafId>(x)));
      if (still_fails(candidate)) {
        lines = std::move(candidate);
        shrunk = true;
        break;
      }
    }
  }
  return lines;
}

int cmd_check(const std::vector<std::string>& paths, bool differential, const std::string& reproducer) {
  auto inputs = read_inputs(paths);

  auto outcomes = [&](std::span<const Tree> trees) {
    std::vector<std::pair<std::string, RefineOutcome>> out;
    out.emplace_back("lincr", run_lincr(trees, false, nullptr));
    out.emplace_back("oracle", refine_oracle(trees));
    if (differential) out.emplace_back("build", build_refine(trees));
    return out;
  };
  auto disagrees = [&](std::span<const Tree> trees) {
    auto out = outcomes(trees);
    for (std::size_t j = 1; j < out.size(); ++j)
      if (!agree(out[0].second, out[j].second)) return true;
    return false;
  };

  auto results = outcomes(inputs);
  bool ok = true;
  for (std::size_t j = 1; j < results.size(); ++j) ok = ok && agree(results[0].second, results[j].second);
  if (ok) {
    if (results[0].second.is_refined()) return kExitOk;
    std::cerr << "incompatible: all algorithms agree\n";
    return kExitIncompatible;
  }

  std::cerr << "disagreement:\n";
  for (const auto& [name, o] : results) std::cerr << "  " << name << ": " << describe(o) << "\n";
  auto lines = minimize(as_lines(inputs), disagrees);
  std::ofstream f(reproducer);
  for (const auto& l : lines) f << l << "\n";
  if (!f) {
    std::cerr << "cannot write reproducer '" << reproducer << "'\n";
  } else {
    std::cerr << "reproducer (" << lines.size() << " trees) written to " << reproducer << "\n";
  }
  return kExitError;
}

std::uint64_t seed_override(std::uint64_t seed) {
  if (const char* env = std::getenv("REFINERY_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(env, &used, 0);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("invalid REFINERY_SEED '") + env + "'");
    }
  }
  return seed;
}

std::string format_p(double p) {
  std::ostringstream s;
  s << p;
  return s.str();
}

int cmd_gen(InstanceParams params, const std::string& out_dir) {
  params.seed = seed_override(params.seed);
  try {
    validate(params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto inst = make_instance(params);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw UsageError("cannot create '" + out_dir + "': " + ec.message());
  const std::string stem = "n" + std::to_string(params.n) + "_k" + std::to_string(params.k) + "_p" +
                           format_p(params.p) + "_s" + std::to_string(params.seed) + "_r" +
                           std::to_string(params.replicate);
  const auto nwk = fs::path(out_dir) / (stem + ".nwk");
  const auto meta = fs::path(out_dir) / (stem + ".meta");
  {
    std::ofstream f(nwk);
    for (const auto& t : inst.inputs) f << to_newick(t) << "\n";
    if (!f) throw UsageError("cannot write '" + nwk.string() + "'");
  }
  {
    std::ofstream f(meta);
    f << "n=" << params.n << " k=" << params.k << " p=" << format_p(params.p) << " seed=" << params.seed
      << " replicate=" << params.replicate << " stream_seed=" << inst.stream_seed
      << " seed_tree=" << to_newick(inst.seed_tree) << "\n";
    if (!f) throw UsageError("cannot write '" + meta.string() + "'");
  }
  std::cout << nwk.string() << "\n";
  return kExitOk;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream one(item);
    T v{};
    if (!(one >> v) || !(one >> std::ws).eof()) throw UsageError(std::string("bad ") + what + " value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

struct BenchFlags {
  std::string config_path, n, k, p, algorithms, csv, svg;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  double budget_seconds = -1;
  bool no_warmup = false;
  bool seed_set = false;
};

int cmd_bench(const BenchFlags& flags) {
  BenchConfig config;
  try {
    if (!flags.config_path.empty()) {
      std::ifstream in(flags.config_path);
      if (!in) throw UsageError("cannot open '" + flags.config_path + "'");
      config = parse_bench_config(in, config);
    }
    if (!flags.n.empty()) config.n_values = parse_list<std::size_t>(flags.n, "n");
    if (!flags.k.empty()) config.k_values = parse_list<std::size_t>(flags.k, "k");
    if (!flags.p.empty()) config.p_values = parse_list<double>(flags.p, "p");
    if (!flags.algorithms.empty()) {
      config.algorithms.clear();
      std::stringstream in(flags.algorithms);
      std::string name;
      while (std::getline(in, name, ',')) {
        auto a = parse_algorithm(name);
        if (!a) throw UsageError("unknown algorithm '" + name + "'");
        config.algorithms.push_back(*a);
      }
    }
    if (flags.replicates) config.replicates = flags.replicates;
    if (flags.seed_set) config.seed = flags.seed;
    config.seed = seed_override(config.seed);
    if (flags.budget_seconds >= 0)
      config.budget = std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::duration<double>(flags.budget_seconds));
    if (flags.no_warmup) config.warmup = false;
    validate(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::ofstream csv_file;
  std::ostream* csv = &std::cout;
  if (!flags.csv.empty()) {
    csv_file.open(flags.csv);
    if (!csv_file) throw UsageError("cannot write '" + flags.csv + "'");
    csv = &csv_file;
  }
  *csv << kCsvHeader << "\n" << std::flush;
  auto records = run_grid(config, [&](const BenchRecord& r) { *csv << format_csv_row(r) << "\n" << std::flush; });

  // stdout may carry the CSV, so the summary goes to the error stream.
  write_summary(std::cerr, records);

  std::string svg = flags.svg;
  if (svg.empty() && !flags.csv.empty()) svg = fs::path(flags.csv).replace_extension(".svg").string();
  if (!svg.empty()) {
    std::ofstream f(svg);
    write_svg(f, records);
    if (!f) throw UsageError("cannot write '" + svg + "'");
  }
  return kExitOk;
}

int cmd_triples(const std::vector<std::string>& paths) {
  auto inputs = read_inputs(paths);
  std::vector<Triple> all;
  for (const auto& t : inputs) {
    auto rep = representative_triples(t);
    all.insert(all.end(), rep.begin(), rep.end());
  }
  write_triples(std::cout, TripleSet(std::move(all)), inputs.front().index());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal common refinement of rooted phylogenetic trees"};
  app.require_subcommand(1);

  std::vector<std::string> paths;
  std::string algorithm = "lincr", output;
  bool stats = false, binary_shortcut = false;
  auto* refine = app.add_subcommand("refine", "Compute the common refinement of the input trees");
  refine->add_option("files", paths, "Newick files, one tree per line ('-' or none: stdin)");
  refine->add_option("-a,--algorithm", algorithm, "lincr, build or oracle")->capture_default_str();
  refine->add_option("-o,--output", output, "Write the tree here instead of stdout");
  refine->add_flag("--stats", stats, "Print vertex counts and timing to stderr");
  refine->add_flag("--binary-shortcut", binary_shortcut, "Use a binary input as the candidate (lincr only)");

  bool differential = false, oracle_flag = false;
  std::string reproducer = "refinery-reproducer.nwk";
  auto* check = app.add_subcommand("check", "Compare lincr against the oracle (and build)");
  check->add_option("files", paths, "Newick files, one tree per line ('-' or none: stdin)");
  check->add_flag("--differential", differential, "Also run build");
  check->add_flag("--oracle", oracle_flag, "Compare against the cluster-union oracle (always on)");
  check->add_option("--reproducer", reproducer, "Where a minimized disagreement is written")->capture_default_str();

  InstanceParams params;
  params.seed = 1;
  std::string out_dir = ".";
  auto* gen = app.add_subcommand("gen", "Write one simulated instance");
  gen->add_option("--n", params.n, "Leaves")->required();
  gen->add_option("--k", params.k, "Trees")->required();
  gen->add_option("--p", params.p, "Contraction probability")->required();
  gen->add_option("--seed", params.seed, "Master seed (REFINERY_SEED overrides)")->capture_default_str();
  gen->add_option("--replicate", params.replicate, "Replicate index")->capture_default_str();
  gen->add_option("--out", out_dir, "Output directory")->capture_default_str();

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "Run the scaling grid and emit CSV");
  bench->add_option("--config", bf.config_path, "key=value config file");
  bench->add_option("--n", bf.n, "Comma-separated leaf counts");
  bench->add_option("--k", bf.k, "Comma-separated tree counts");
  bench->add_option("--p", bf.p, "Comma-separated contraction probabilities");
  bench->add_option("--algorithm,--algorithms", bf.algorithms, "Comma-separated subset of lincr,build,oracle");
  bench->add_option("--replicates", bf.replicates, "Replicates per cell");
  auto* seed_opt = bench->add_option("--seed", bf.seed, "Master seed (REFINERY_SEED overrides)");
  bench->add_option("--budget", bf.budget_seconds, "Seconds per cell before timeouts");
  bench->add_flag("--no-warmup", bf.no_warmup, "Skip the discarded warm-up run");
  bench->add_option("--csv", bf.csv, "CSV output (default stdout)");
  bench->add_option("--svg", bf.svg, "SVG plot (default: next to the CSV)");

  auto* triples = app.add_subcommand("triples", "Print the representative triples of the inputs");
  triples->add_option("files", paths, "Newick files, one tree per line ('-' or none: stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*refine) return cmd_refine(paths, algorithm, output, stats, binary_shortcut);
    if (*check) return cmd_check(paths, differential, reproducer);
    if (*gen) return cmd_gen(params, out_dir);
    if (*bench) {
      bf.seed_set = seed_opt->count() > 0;
      return cmd_bench(bf);
    }
    if (*triples) return cmd_triples(paths);
  } catch (const std::exception& e) {
    // Parse errors arrive as "source:line:col: message".
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

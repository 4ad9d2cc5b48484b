// Command-line front end: solve, eliminate, check, gen, bench.

#include <fmplex/fmplex.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace fmplex;

namespace {

constexpr int exit_decided = 0;
constexpr int exit_invalid = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string counter(const std::optional<std::uint64_t>& v, const char* missing) {
  return v ? std::to_string(*v) : missing;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("FMPLEX_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed FMPLEX_SEED\n";
    }
  }
  return 0;
}

struct SolveArgs {
  std::string file;
  std::string backend = "fmplex-c";
  std::string heuristic = "mfo";
  std::uint64_t seed = 0;
  std::uint64_t max_nodes = default_max_nodes;
  std::uint64_t max_rows = default_max_rows;
  bool stats = false;
  bool model = false;
  bool core = false;
};

RunConfig make_config(const std::string& backend, const std::string& heuristic, std::uint64_t seed,
                      std::uint64_t max_nodes, std::uint64_t max_rows) {
  RunConfig cfg;
  auto b = parse_backend(backend);
  if (!b) throw CLI::ValidationError("--backend", "unknown backend '" + backend + "'");
  auto h = parse_heuristic(heuristic);
  if (!h) throw CLI::ValidationError("--heuristic", "unknown heuristic '" + heuristic + "'");
  cfg.backend = *b;
  cfg.heuristic = *h;
  cfg.seed = seed;
  cfg.max_nodes = max_nodes;
  cfg.max_rows = max_rows;
  return cfg;
}

int cmd_solve(const SolveArgs& a) {
  RunConfig cfg = make_config(a.backend, a.heuristic, a.seed, a.max_nodes, a.max_rows);
  smtlib::Problem p;
  try {
    p = smtlib::parse_problem(read_file(a.file));
  } catch (const std::exception& e) {
    std::cerr << a.file << ": " << e.what() << "\n";
    return exit_usage;
  }
  p.get_model = p.get_model || a.model;
  p.get_unsat_core = p.get_unsat_core || a.core;
  const auto start = std::chrono::steady_clock::now();
  try {
    RunResult r = run(p, cfg);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << smtlib::print_result(r.answer, p);
    if (a.stats) {
      std::cout << "; nodes=" << counter(r.stats.nodes_visited, "-") << " rows=" << counter(r.stats.rows_generated, "-")
                << " pivots=" << counter(r.stats.pivots, "-") << " depth=" << counter(r.stats.max_depth, "-")
                << " time_ms=" << ms << "\n";
    }
    return exit_decided;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return exit_budget;
  }
}

struct EliminateArgs {
  std::string file;
  std::vector<std::string> vars;
  std::string method = "fmplex";
  std::string sign = "minus";
  std::uint64_t max_rows = default_max_rows;
};

int cmd_eliminate(const EliminateArgs& a) {
  smtlib::Problem p;
  try {
    p = smtlib::parse_problem(read_file(a.file));
  } catch (const std::exception& e) {
    std::cerr << a.file << ": " << e.what() << "\n";
    return exit_usage;
  }
  std::vector<std::size_t> vars;
  for (const auto& name : a.vars) {
    for (const auto& v : smtlib::detail::split_list(name)) {
      auto idx = p.variable_index(v);
      if (!idx) {
        std::cerr << "unknown variable '" << v << "'\n";
        return exit_usage;
      }
      vars.push_back(*idx);
    }
  }
  const LinearSystem sys = compile(p).original;
  try {
    if (a.method == "fm") {
      auto [result, trace] = fm_qe(sys, vars, FmOptions{a.max_rows});
      std::cout << smtlib::format_conjunction(result, p.variables) << "\n";
      return exit_decided;
    }
    if (a.method != "fmplex") {
      std::cerr << "unknown method '" << a.method << "'\n";
      return exit_usage;
    }
    QeOptions opts;
    opts.max_rows = a.max_rows;
    if (a.sign == "minus") {
      opts.sign = SignPolicy::Minus;
    } else if (a.sign == "plus") {
      opts.sign = SignPolicy::Plus;
    } else if (a.sign == "smaller") {
      opts.sign = SignPolicy::Smaller;
    } else {
      std::cerr << "unknown sign policy '" << a.sign << "'\n";
      return exit_usage;
    }
    if (vars.empty()) {
      std::cout << smtlib::format_conjunction(sys, p.variables) << "\n";
      return exit_decided;
    }
    QeResult result = fmplex_qe(sys, vars, opts);
    std::cout << smtlib::print_qe(result.disjuncts, p.variables) << "\n";
    return exit_decided;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return exit_budget;
  }
}

struct CheckArgs {
  std::string file;
  std::string model;
  std::string core;
  std::string witness;
};

int cmd_check(const CheckArgs& a) {
  const int given = !a.model.empty() + !a.core.empty() + !a.witness.empty();
  if (given != 1) {
    std::cerr << "exactly one of --model, --core, --witness is required\n";
    return exit_usage;
  }
  smtlib::Problem p;
  smtlib::Witness w;
  try {
    p = smtlib::parse_problem(read_file(a.file));
    if (!a.model.empty()) {
      w = smtlib::parse_model(a.model);
    } else if (!a.core.empty()) {
      w = smtlib::parse_core(a.core);
    } else {
      w = smtlib::parse_solver_output(read_file(a.witness));
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  }
  if (const auto* m = std::get_if<smtlib::ModelWitness>(&w)) {
    auto values = smtlib::model_values(p, *m);
    if (!values) {
      std::cout << "invalid: model does not assign every variable\n";
      return exit_invalid;
    }
    if (!satisfies(p, *values)) {
      std::cout << "invalid: model violates an assertion\n";
      return exit_invalid;
    }
    std::cout << "valid\n";
    return exit_decided;
  }
  auto atoms = smtlib::core_atoms(p, std::get<smtlib::CoreWitness>(w));
  if (!atoms) {
    std::cout << "invalid: core names an unknown assertion\n";
    return exit_invalid;
  }
  RunConfig cfg;
  cfg.backend = Backend::Simplex;
  RunResult r = run(subproblem(p, *atoms), cfg);
  if (std::holds_alternative<smtlib::SatAnswer>(r.answer)) {
    std::cout << "invalid: core is satisfiable\n";
    return exit_invalid;
  }
  std::cout << "valid\n";
  return exit_decided;
}

struct GenArgs {
  std::uint64_t count = 10;
  std::string coeff_range = "-3..3";
  std::string bound_range = "-5..5";
  std::string out = ".";
  GenParams params;
};

std::pair<long, long> parse_range(const std::string& s, const std::string& flag) {
  std::size_t dots = s.find("..");
  try {
    if (dots == std::string::npos) throw std::invalid_argument(s);
    long lo = std::stol(s.substr(0, dots));
    long hi = std::stol(s.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "expected lo..hi with lo <= hi, got '" + s + "'");
  }
}

int cmd_gen(GenArgs a) {
  std::tie(a.params.coeff_lo, a.params.coeff_hi) = parse_range(a.coeff_range, "--coeff-range");
  std::tie(a.params.bound_lo, a.params.bound_hi) = parse_range(a.bound_range, "--bound-range");
  if (a.params.nvars == 0) {
    std::cerr << "--nvars must be positive\n";
    return exit_usage;
  }
  fs::create_directories(a.out);
  for (std::uint64_t k = 0; k < a.count; ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "gen_%llu_%04llu.smt2", static_cast<unsigned long long>(a.params.seed),
                  static_cast<unsigned long long>(k));
    std::ofstream f(fs::path(a.out) / name, std::ios::binary);
    f << generate_script(a.params, k);
    if (!f) {
      std::cerr << "cannot write " << (fs::path(a.out) / name).string() << "\n";
      return exit_usage;
    }
  }
  return exit_decided;
}

struct BenchArgs {
  std::string dir;
  std::vector<std::string> configs;
  unsigned jobs = 1;
  std::uint64_t max_nodes = default_max_nodes;
  std::uint64_t max_rows = default_max_rows;
};

struct BenchConfig {
  RunConfig run;
  std::string backend;
  std::string heuristic;
  std::string seed;
};

BenchConfig parse_bench_config(const std::string& text, std::uint64_t seed, const BenchArgs& a) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.empty() || parts.size() > 3) throw CLI::ValidationError("--config", "expected backend[:heuristic[:seed]]");
  std::string heuristic = parts.size() > 1 ? parts[1] : "mfo";
  if (parts.size() > 2) {
    try {
      seed = std::stoull(parts[2]);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--config", "malformed seed in '" + text + "'");
    }
  }
  BenchConfig c;
  c.run = make_config(parts[0], heuristic, seed, a.max_nodes, a.max_rows);
  c.backend = parts[0];
  if (uses_heuristic(c.run.backend)) {
    c.heuristic = heuristic;
    c.seed = std::to_string(seed);
  }
  return c;
}

std::string bench_row(const std::string& file, const fs::path& path, const BenchConfig& c) {
  std::string result;
  Stats stats;
  const auto start = std::chrono::steady_clock::now();
  try {
    RunResult r = run(smtlib::parse_problem(read_file(path.string())), c.run);
    result = std::holds_alternative<smtlib::SatAnswer>(r.answer) ? "sat" : "unsat";
    stats = r.stats;
  } catch (const BudgetExceeded& e) {
    result = "budget";
    stats = e.stats();
  } catch (const std::exception&) {
    result = "error";
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream row;
  row << file << "," << c.backend << "," << c.heuristic << "," << c.seed << "," << result << "," << ms << ","
      << counter(stats.rows_generated, "") << "," << counter(stats.nodes_visited, "") << ","
      << counter(stats.pivots, "") << "," << counter(stats.max_depth, "");
  return row.str();
}

int cmd_bench(const BenchArgs& a, std::uint64_t seed) {
  std::vector<BenchConfig> configs;
  if (a.configs.empty()) {
    for (Backend b : all_backends) configs.push_back(parse_bench_config(std::string(backend_name(b)), seed, a));
  } else {
    for (const auto& s : a.configs) configs.push_back(parse_bench_config(s, seed, a));
  }
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(a.dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".smt2") files.push_back(entry.path());
  if (ec) {
    std::cerr << "cannot read directory " << a.dir << ": " << ec.message() << "\n";
    return exit_usage;
  }
  std::sort(files.begin(), files.end());

  const std::size_t total = files.size() * configs.size();
  std::vector<std::string> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const fs::path& f = files[k / configs.size()];
      rows[k] = bench_row(f.filename().string(), f, configs[k % configs.size()]);
    }
  };
  std::vector<std::thread> pool;
  const unsigned jobs = std::max(1u, a.jobs);
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::cout << "file,backend,heuristic,seed,result,time_ms,rows_generated,nodes_visited,pivots,max_depth\n";
  for (const auto& r : rows) std::cout << r << "\n";
  return exit_decided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures for conjunctions of linear real arithmetic constraints"};
  app.require_subcommand(1);
  const std::uint64_t env_seed = default_seed();

  SolveArgs solve_args;
  solve_args.seed = env_seed;
  auto* solve = app.add_subcommand("solve", "Decide satisfiability of an SMT-LIB script");
  solve->add_option("file", solve_args.file, "Input script")->required();
  solve->add_option("--backend", solve_args.backend, "fm | fmplex-a | fmplex-b | fmplex-c | simplex")
      ->capture_default_str();
  solve->add_option("--heuristic", solve_args.heuristic, "mfo | mcl | rand")->capture_default_str();
  solve->add_option("--seed", solve_args.seed, "Seed of the rand heuristic (default: FMPLEX_SEED or 0)");
  solve->add_option("--max-nodes", solve_args.max_nodes, "Node budget")->capture_default_str();
  solve->add_option("--max-rows", solve_args.max_rows, "Generated row budget")->capture_default_str();
  solve->add_flag("--stats", solve_args.stats, "Append a statistics comment line");
  solve->add_flag("--model", solve_args.model, "Print the model on sat");
  solve->add_flag("--core", solve_args.core, "Print the unsat core on unsat");

  EliminateArgs elim_args;
  auto* elim = app.add_subcommand("eliminate", "Existentially project variables out of a script's assertions");
  elim->add_option("file", elim_args.file, "Input script")->required();
  elim->add_option("--vars", elim_args.vars, "Variables to eliminate, in order");
  elim->add_option("--method", elim_args.method, "fm | fmplex")->capture_default_str();
  elim->add_option("--sign", elim_args.sign, "minus | plus | smaller")->capture_default_str();
  elim->add_option("--max-rows", elim_args.max_rows, "Generated row budget")->capture_default_str();

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Validate a model or an unsat core against a script");
  check->add_option("file", check_args.file, "Input script")->required();
  check->add_option("--model", check_args.model, "Model as `x=1,y=-1/2` or an SMT-LIB model");
  check->add_option("--core", check_args.core, "Core labels or atom indices");
  check->add_option("--witness", check_args.witness, "File holding the output of `solve`");

  GenArgs gen_args;
  gen_args.params.seed = env_seed;
  auto* gen = app.add_subcommand("gen", "Generate random SMT-LIB instances");
  gen->add_option("--count", gen_args.count, "Number of instances")->capture_default_str();
  gen->add_option("--nvars", gen_args.params.nvars, "Variables per instance")->capture_default_str();
  gen->add_option("--nrows", gen_args.params.nrows, "Constraints per instance")->capture_default_str();
  gen->add_option("--coeff-range", gen_args.coeff_range, "Coefficient range lo..hi")->capture_default_str();
  gen->add_option("--bound-range", gen_args.bound_range, "Right-hand side range lo..hi")->capture_default_str();
  gen->add_option("--seed", gen_args.params.seed, "Seed (default: FMPLEX_SEED or 0)");
  gen->add_option("--sat-bias", gen_args.params.sat_bias, "Fraction of planted satisfiable instances")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen->add_option("--strict-ratio", gen_args.params.strict_ratio, "Fraction of strict constraints")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen->add_option("--out", gen_args.out, "Output directory")->capture_default_str();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run configurations over a directory and print CSV");
  bench->add_option("dir", bench_args.dir, "Directory of .smt2 files")->required();
  bench->add_option("--config", bench_args.configs, "backend[:heuristic[:seed]], repeatable (default: all backends)");
  bench->add_option("--jobs", bench_args.jobs, "Parallel workers")->capture_default_str();
  bench->add_option("--max-nodes", bench_args.max_nodes, "Node budget")->capture_default_str();
  bench->add_option("--max-rows", bench_args.max_rows, "Generated row budget")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*elim) return cmd_eliminate(elim_args);
    if (*check) return cmd_check(check_args);
    if (*gen) return cmd_gen(gen_args);
    if (*bench) return cmd_bench(bench_args, env_seed);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

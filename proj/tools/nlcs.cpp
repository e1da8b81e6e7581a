// nlcs: decide conjunctions of polynomial constraints over the reals and
// extract conflict sets.
//
// Exit codes: 10 sat, 20 unsat, 30 unknown, 1 input error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlcs/nlcs.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace nlcs;

namespace {

constexpr int kExitInput = 1;

int exit_code(Status s) {
  switch (s) {
    case Status::Sat: return 10;
    case Status::Unsat: return 20;
    case Status::Unknown: return 30;
  }
  return 30;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NlcsError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ConstraintSystem load(const std::string& path, const std::string& format) {
  std::string text = read_file(path);
  bool smt = format == "smt2" || (format == "auto" && fs::path(path).extension() == ".smt2");
  return smt ? parse_smtlib_subset(text) : parse_native(text);
}

std::vector<std::string> split_order(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

json value_json(const RealAlgebraic& a) {
  json v;
  if (a.is_rational()) {
    v["exact"] = to_string(*a.exact());
  } else {
    RealAlgebraic r = refine(a, pow2(-60));
    v["defining"] = r.defining().to_string("t");
    v["interval"] = {to_string(r.lo()), to_string(r.hi())};
  }
  v["approx"] = a.approx();
  return v;
}

json witness_json(const ConstraintSystem& s, const std::vector<RealAlgebraic>& w) {
  json out = json::object();
  for (std::size_t i = 0; i < w.size(); ++i) out[s.variables[i]] = value_json(w[i]);
  return out;
}

json trace_json(const Trace& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json point = json::array();
    for (const auto& p : r.point) point.push_back(p.approx());
    rows.push_back({{"level", r.level}, {"point", point}, {"label", r.label},
                    {"entries", entries_string(r.entries)}, {"compensation", r.compensation}});
  }
  return {{"columns", t.num_columns}, {"rows", rows}, {"local_conflicts", t.local_conflicts}};
}

struct Common {
  std::string file;
  std::string engine = "auto";
  std::string format = "auto";
  std::string var_order;
  std::size_t budget = default_budget();
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "problem file (native or .smt2)")->required();
  cmd->add_option("--engine", c.engine, "auto (VS, CAD fallback), cad or vs (VS, CAD for stuck branches)")
      ->check(CLI::IsMember({"auto", "cad", "vs"}));
  cmd->add_option("--format", c.format, "input format")->check(CLI::IsMember({"auto", "native", "smt2"}));
  cmd->add_option("--var-order", c.var_order, "comma-separated variable order, last variable projected first");
  cmd->add_option("--budget", c.budget, "cell/branch budget (default NLCS_BUDGET or 200000)");
}

ConstraintSystem load_common(const Common& c) {
  ConstraintSystem s = load(c.file, c.format);
  if (!c.var_order.empty()) s = s.reordered(split_order(c.var_order));
  return s;
}

EngineOptions engine_options(const Common& c, bool partial = true) {
  EngineOptions o;
  o.engine = *parse_engine(c.engine);
  o.budget = c.budget;
  o.partial = partial;
  return o;
}

int cmd_decide(const Common& c, bool as_json, bool with_trace) {
  ConstraintSystem raw = load_common(c);
  PreprocessResult pre = preprocess(raw);
  Decision d;
  if (pre.trivially_false) {
    d.status = Status::Unsat;
    d.engine = "preprocess";
  } else {
    d = decide(pre.system, engine_options(c));
  }
  if (d.witness) {
    // Exact re-check against the input as parsed.
    AlgebraicPoint pt(raw.nvars());
    for (const auto& v : *d.witness) pt.push(v);
    for (const auto& k : raw.constraints)
      if (!holds(k.rel, sign_at(k.poly, pt))) throw std::logic_error("witness fails " + raw.to_string(k));
  }
  if (as_json) {
    json out{{"status", to_string(d.status)}, {"engine", d.engine}, {"cells_or_branches", d.cells_or_branches}};
    if (d.witness) out["witness"] = witness_json(raw, *d.witness);
    if (with_trace) out["trace"] = trace_json(d.trace);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << to_string(d.status) << "\n";
    if (d.witness)
      for (std::size_t i = 0; i < d.witness->size(); ++i)
        std::cout << raw.variables[i] << " = " << (*d.witness)[i].to_string() << "\n";
  }
  return exit_code(d.status);
}

struct ConflictFlags {
  std::string cover = "exact";
  std::string partial = "on";
  bool minimize = false;
  bool verify = false;
};

int cmd_conflict(const Common& c, const ConflictFlags& f) {
  ConstraintSystem s = load_common(c);
  ConflictOptions o;
  o.engine = engine_options(c, f.partial == "on");
  o.cover = f.cover == "greedy" ? CoverMethod::Greedy : CoverMethod::Exact;
  o.minimize = f.minimize;
  o.verify = f.verify;
  ConflictResult r = extract_conflict(s, o);
  json out{{"status", to_string(r.decision.status)}, {"engine", r.decision.engine}};
  if (r.conflict) {
    out["conflict"] = r.conflict->ids;
    out["method"] = to_string(r.conflict->method);
    out["verified"] = r.verification == Verdict::Verified;
    if (r.verification == Verdict::Inconclusive) out["verification"] = "inconclusive";
    if (f.minimize) out["minimality_certified"] = r.conflict->minimality_certified;
    out["matrix"] = {{"rows", r.matrix_rows}, {"cols", r.matrix_cols}, {"mandatory", r.mandatory}};
  } else {
    out["conflict"] = nullptr;
  }
  std::cout << out.dump(2) << "\n";
  return exit_code(r.decision.status);
}

// ---- bench ----

struct BenchRow {
  std::string file;
  std::size_t n_constraints = 0, n_vars = 0;
  std::string engine, status = "unknown";
  std::optional<std::size_t> conflict_size;
  double t_decide_ms = 0;
  std::optional<double> t_conflict_ms;
  std::size_t cells_or_branches = 0, matrix_rows = 0, matrix_cols = 0;
};

std::string fmt_ms(double ms, bool deterministic) {
  if (deterministic) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

std::string csv_line(const BenchRow& r, bool deterministic) {
  std::ostringstream ss;
  ss << r.file << ',' << r.n_constraints << ',' << r.n_vars << ',' << r.engine << ',' << r.status << ','
     << (r.conflict_size ? std::to_string(*r.conflict_size) : "") << ',' << fmt_ms(r.t_decide_ms, deterministic) << ','
     << (r.t_conflict_ms ? fmt_ms(*r.t_conflict_ms, deterministic) : "") << ',' << r.cells_or_branches << ','
     << r.matrix_rows << ',' << r.matrix_cols;
  return ss.str();
}

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Decides one file; with `conflict`, also builds the matrix and covers it.
BenchRow bench_one(const fs::path& path, const std::string& engine_name, const EngineOptions& eo, CoverMethod cover,
                   bool conflict) {
  BenchRow row;
  row.file = path.filename().string();
  row.engine = engine_name;
  ConstraintSystem s;
  try {
    s = load(path.string(), "auto");
  } catch (const std::exception& e) {
    std::cerr << "skipping " << path.string() << ": " << e.what() << "\n";
    return row;
  }
  row.n_constraints = s.size();
  row.n_vars = s.nvars();
  auto t0 = Clock::now();
  PreprocessResult pre = preprocess(s);
  Decision d;
  if (pre.trivially_false) {
    d.status = Status::Unsat;
    d.engine = "preprocess";
    d.trace.num_columns = s.size();
  } else {
    CadOptions co;
    co.partial = eo.partial;
    co.budget = eo.budget;
    co.record_trace = conflict;
    if (eo.engine == Engine::Cad) {
      d = decide_cad(pre.system, co);
    } else {
      VsOptions vo;
      vo.budget = eo.budget;
      vo.cad = co;
      vo.hybrid = eo.engine == Engine::Vs;
      d = decide_vs(pre.system, vo);
    }
  }
  row.t_decide_ms = ms_since(t0);
  row.status = to_string(d.status);
  row.cells_or_branches = d.cells_or_branches;
  if (conflict && d.status == Status::Unsat) {
    auto t1 = Clock::now();
    ConflictSet cs;
    if (pre.trivially_false) {
      cs.ids = {*pre.trivially_false};
      row.matrix_cols = s.size();
    } else {
      EvaluationMatrix M = build_matrix(d, s.size());
      cs = cover == CoverMethod::Exact ? cover_exact(M) : cover_greedy(M);
      row.matrix_rows = M.rows.size();
      row.matrix_cols = M.cols;
    }
    row.t_conflict_ms = ms_since(t1);
    row.conflict_size = cs.ids.size();
  }
  return row;
}

int cmd_bench(const std::string& dir, const Common& c, const std::string& cover, bool compare, std::size_t jobs,
              bool deterministic, const std::string& output) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) throw NlcsError("not a directory: " + dir);
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  // Each file yields one row with conflict generation, preceded by one
  // without it when comparing.
  std::vector<std::pair<std::size_t, bool>> tasks;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (compare) tasks.emplace_back(i, false);
    tasks.emplace_back(i, true);
  }
  std::vector<BenchRow> rows(tasks.size());
  EngineOptions eo = engine_options(c);
  CoverMethod cm = cover == "greedy" ? CoverMethod::Greedy : CoverMethod::Exact;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < tasks.size();)
      rows[k] = bench_one(files[tasks[k].first], c.engine, eo, cm, tasks[k].second);
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < std::max<std::size_t>(jobs, 1); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "file,n_constraints,n_vars,engine,status,conflict_size,t_decide_ms,t_conflict_ms,cells_or_branches,"
         "matrix_rows,matrix_cols\n";
  for (const auto& r : rows) csv << csv_line(r, deterministic) << "\n";
  if (output.empty() || output == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(output, std::ios::binary);
    out << csv.str();
    if (!out) throw NlcsError("cannot write " + output);
  }
  return 0;
}

int cmd_gen_corpus(const std::string& dir, std::size_t count, unsigned seed) {
  fs::create_directories(dir);
  for (const auto& inst : generate_corpus(count, seed)) {
    std::string comment = std::string("expected: ") + (inst.sat ? "sat" : "unsat");
    if (!inst.sat) comment += ", planted core of " + std::to_string(inst.core_size);
    std::ofstream out(fs::path(dir) / inst.name, std::ios::binary);
    out << to_native(inst.system, comment);
  }
  return 0;
}

int cmd_reduction_check(std::size_t k, std::size_t m, std::size_t count, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution bit(0.4);
  std::uniform_int_distribution<std::size_t> col(0, m - 1);
  std::size_t failures = 0;
  for (std::size_t t = 0; t < count; ++t) {
    BinaryMatrix M(k, std::vector<std::uint8_t>(m));
    for (auto& r : M) {
      for (auto& e : r) e = bit(rng);
      r[col(rng)] = 1;
    }
    if (!roundtrip_check(M)) {
      ++failures;
      std::cout << "mismatch:";
      for (const auto& r : M) {
        std::cout << ' ';
        for (auto e : r) std::cout << int(e);
      }
      std::cout << "\n";
    }
  }
  std::cout << count - failures << "/" << count << " roundtrips agree\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide conjunctions of polynomial constraints over the reals and extract conflict sets.\n"
               "Exit codes: 10 sat, 20 unsat, 30 unknown, 1 input error."};
  app.require_subcommand(1);

  Common dc;
  bool as_json = false, with_trace = false;
  auto* decide_cmd = app.add_subcommand("decide", "decide satisfiability");
  add_common(decide_cmd, dc);
  decide_cmd->add_flag("--json", as_json, "JSON output");
  decide_cmd->add_flag("--trace", with_trace, "include the test-point trace in JSON output");

  Common cc;
  ConflictFlags cf;
  auto* conflict_cmd = app.add_subcommand("conflict", "decide and, if unsat, report a conflict set as JSON");
  add_common(conflict_cmd, cc);
  conflict_cmd->add_option("--cover", cf.cover, "set cover method")->check(CLI::IsMember({"exact", "greedy"}));
  conflict_cmd->add_option("--partial-cad", cf.partial, "prune stacks over violated partial samples")
      ->check(CLI::IsMember({"on", "off"}));
  conflict_cmd->add_flag("--minimize", cf.minimize, "drop constraints while the rest stays unsat");
  conflict_cmd->add_flag("--verify", cf.verify, "re-decide the conflict set");

  Common bc;
  std::string bench_dir, bench_cover = "exact", bench_out;
  bool compare = false, deterministic = false;
  std::size_t jobs = 1;
  auto* bench_cmd = app.add_subcommand("bench", "run every file of a directory, CSV on stdout");
  bench_cmd->add_option("dir", bench_dir, "problem directory")->required();
  bench_cmd->add_option("--engine", bc.engine, "engine")->check(CLI::IsMember({"auto", "cad", "vs"}));
  bench_cmd->add_option("--budget", bc.budget, "per-file cell/branch budget");
  bench_cmd->add_option("--cover", bench_cover, "set cover method")->check(CLI::IsMember({"exact", "greedy"}));
  bench_cmd->add_flag("--compare", compare, "add a row without conflict generation before each file's row");
  bench_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--deterministic", deterministic, "print timings as 0 for byte-stable output");
  bench_cmd->add_option("-o,--output", bench_out, "CSV file (default stdout)");

  std::string corpus_dir;
  std::size_t corpus_count = 40;
  unsigned corpus_seed = 2024;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "write the generated desk corpus");
  gen_cmd->add_option("dir", corpus_dir, "output directory")->required();
  gen_cmd->add_option("--count", corpus_count, "number of files");
  gen_cmd->add_option("--seed", corpus_seed, "generator seed");

  std::size_t red_k = 4, red_m = 4, red_count = 100;
  unsigned red_seed = 1;
  auto* red_cmd = app.add_subcommand("reduction-check", "");  // hidden fuzzing hook
  red_cmd->group("");
  red_cmd->add_option("--rows", red_k)->check(CLI::PositiveNumber);
  red_cmd->add_option("--cols", red_m)->check(CLI::Range(1, 16));
  red_cmd->add_option("--count", red_count);
  red_cmd->add_option("--seed", red_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*decide_cmd) return cmd_decide(dc, as_json, with_trace);
    if (*conflict_cmd) return cmd_conflict(cc, cf);
    if (*bench_cmd) return cmd_bench(bench_dir, bc, bench_cover, compare, jobs, deterministic, bench_out);
    if (*gen_cmd) return cmd_gen_corpus(corpus_dir, corpus_count, corpus_seed);
    if (*red_cmd) return cmd_reduction_check(red_k, red_m, red_count, red_seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const NlcsError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitInput;
}

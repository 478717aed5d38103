// lexcover: minimum lex-leader symmetry breaks for graphs via set cover.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "lexcover/backbone.hpp"
#include "lexcover/break_spec.hpp"
#include "lexcover/pipeline.hpp"
#include "lexcover/set_cover.hpp"

using namespace lexcover;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

void check_order(int n, int lo, int hi) {
  if (n < lo || n > hi) {
    throw UsageError("order " + std::to_string(n) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

void print_perms(const std::vector<Permutation>& perms) {
  for (const auto& pi : perms) std::cout << pi.to_string() << '\n';
}

std::string fixed2(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << x;
  return s.str();
}

int cmd_canonical(int n, bool list) {
  check_order(n, 1, 7);
  const auto ids = canonical_ids(n);
  if (list) {
    for (auto id : ids) std::cout << id << '\n';
  } else {
    std::cout << ids.size() << " canonical graphs of order " << n << '\n';
  }
  return kOk;
}

int cmd_cover(int n, const std::string& perm_text) {
  const auto pi = Permutation::parse(perm_text);
  if (pi.degree() != n) throw UsageError("permutation degree does not match -n");
  const auto pats = patterns_of(pi);
  for (const auto& gamma : pats.patterns) {
    std::cout << "pattern " << gamma.to_string() << ' ' << gamma.instance_count() << '\n';
  }
  std::cout << "cover " << pats.instance_total() << '\n';
  if (num_positions(n) <= 28) {
    std::vector<GraphId> ids;
    for (const auto& gamma : pats.patterns) {
      for_each_instance(gamma, [&](const Graph& g) { ids.push_back(g.id()); });
    }
    std::sort(ids.begin(), ids.end());
    std::cout << "ids";
    for (auto id : ids) std::cout << ' ' << id;
    std::cout << '\n';
  }
  return kOk;
}

int cmd_backbones(int n, const std::string& method, std::size_t bound, bool rescan, bool many_leap) {
  check_order(n, 2, 8);
  std::vector<Permutation> iter;
  if (method == "iter" || method == "both") {
    IterativeOptions opts;
    opts.bound = bound;
    opts.debug_rescan = rescan;
    opts.many_leap = many_leap;
    const auto r = find_backbones_iterative(n, opts);
    iter = r.beta;
    std::cout << "iter " << iter.size() << " backbones (visited " << r.counters.visited << ", skipped "
              << r.counters.skipped << ")\n";
    print_perms(iter);
    for (const auto& v : r.rescan_violations) std::cerr << "rescan: " << v << '\n';
    if (!r.rescan_violations.empty()) return kMismatch;
  }
  if (method == "sat" || method == "both") {
    // Sweep backbones are backbones of refined universes, so they are
    // checked against the alternation fixpoint rather than against S_n.
    const auto fix = backbone_fixpoint(nontrivial_permutations(n), iter);
    std::cout << "sat " << fix.beta.size() << " backbones (" << fix.rounds << " rounds, " << fix.universe.size()
              << " left)\n";
    print_perms(fix.beta);
    const std::set<Permutation> s(fix.beta.begin(), fix.beta.end());
    for (const auto& pi : iter) {
      if (!s.contains(pi)) {
        std::cout << "iter backbone " << pi.to_string() << " not confirmed\n";
        return kMismatch;
      }
    }
  }
  return kOk;
}

int cmd_matrix(int n, const std::string& beta_file, const std::string& dump, const std::string& opb) {
  check_order(n, 2, 8);
  std::vector<Permutation> beta;
  if (!beta_file.empty()) {
    const auto spec = read_break_file(beta_file);
    if (spec.order != n) throw UsageError("beta file order does not match -n");
    beta = spec.permutations;
  }
  const std::set<Permutation> bset(beta.begin(), beta.end());
  std::vector<Permutation> rows;
  for (const auto& pi : nontrivial_permutations(n)) {
    if (!bset.contains(pi)) rows.push_back(pi);
  }
  const auto mat = build_matrix(rows, beta);
  const auto w = mat.row_weights();
  std::cout << mat.num_rows() << " x " << mat.num_cols();
  if (!w.empty()) std::cout << ", row weights " << *std::min_element(w.begin(), w.end()) << ".." << *std::max_element(w.begin(), w.end());
  std::cout << '\n';
  if (!dump.empty()) {
    std::ostringstream s;
    write_matrix(mat, s);
    write_file_atomic(dump, s.str());
  }
  if (!opb.empty()) {
    std::ostringstream s;
    export_opb(mat, s);
    write_file_atomic(opb, s.str());
  }
  return kOk;
}

int cmd_reduce(const std::string& path, const std::string& opb) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  const auto mat = read_matrix(in);
  const auto red = reduce(mat);
  std::cout << "input " << mat.num_rows() << " x " << mat.num_cols() << '\n';
  std::cout << "reduced " << red.num_rows() << " x " << red.num_cols() << ", forced " << red.forced.size() << '\n';
  const auto sol = solve_exact(red);
  std::cout << "optimum " << sol.chosen.size() << '\n';
  for (const auto& l : sol.chosen) std::cout << l << '\n';
  if (!opb.empty()) {
    std::ostringstream s;
    export_opb(red, s);
    write_file_atomic(opb, s.str());
  }
  return kOk;
}

int cmd_verify(const std::string& path, bool allow_long) {
  const auto spec = read_break_file(path);
  const auto got = verify_break(spec, allow_long);
  const auto expected = count_canonical(spec.order, kMaxOrder);
  const bool ok = got == expected;
  std::cout << got << " solutions, expected " << expected << ", " << (ok ? "OK" : "MISMATCH") << '\n';
  return ok ? kOk : kMismatch;
}

int cmd_partial(int n, const std::string& mode, std::size_t bound, bool many_leap) {
  check_order(n, 2, 7);
  std::vector<Permutation> perms;
  if (mode == "trns") {
    perms = transpositions(n);
  } else {
    IterativeOptions opts;
    opts.bound = bound;
    opts.many_leap = many_leap;
    perms = find_backbones_iterative(n, opts).beta;
  }
  std::cout << perms.size() << " permutations, ρ = " << fixed2(redundancy_ratio(perms, n)) << '\n';
  return kOk;
}

int cmd_solve(int n, std::size_t bound, bool skip_iterative, const std::string& out, const std::string& report_path,
              const std::string& state, bool timings, bool verbose, bool many_leap) {
  check_order(n, 2, 8);
  PipelineConfig cfg;
  cfg.order = n;
  cfg.bound = bound;
  cfg.skip_iterative = skip_iterative;
  cfg.many_leap = many_leap;
  if (!state.empty()) cfg.state_path = state;
  if (verbose) cfg.log = [](const std::string& s) { std::cerr << s << std::endl; };
  const auto result = run_pipeline(cfg);
  const auto report = to_json(result.report).dump(2) + "\n";
  std::cout << report;
  if (timings) {
    for (const auto& [phase, secs] : result.report.timings) std::cerr << phase << ' ' << secs << " s\n";
  }
  if (!out.empty()) write_break_file(result.spec, out);
  if (!report_path.empty()) write_file_atomic(report_path, report);
  return result.report.verified_ok() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum lex-leader symmetry breaks for graphs"};
  app.require_subcommand(1);

  int n = 0;
  std::size_t bound = kDefaultBound;
  bool list = false, skip_iterative = false, rescan = false, allow_long = false, timings = false, verbose = false,
       many_leap = false;
  std::string perm, method = "both", beta_file, dump, opb, matrix_file, break_file, mode, out, report, state;

  auto* canonical = app.add_subcommand("canonical", "Count or list canonical graphs");
  canonical->add_option("-n", n, "Order")->required();
  canonical->add_flag("--list", list, "List canonical graph ids");

  auto* cover = app.add_subcommand("cover", "Patterns and cover of one permutation");
  cover->add_option("-n", n, "Order")->required();
  cover->add_option("--perm", perm, "Permutation, e.g. [1,2,4,3]")->required();

  auto* backbones = app.add_subcommand("backbones", "Find backbone permutations");
  backbones->add_option("-n", n, "Order")->required();
  backbones->add_option("--method", method, "iter, sat or both")->check(CLI::IsMember({"iter", "sat", "both"}));
  backbones->add_option("--bound", bound, "Covering bound B")->check(CLI::PositiveNumber);
  backbones->add_flag("--rescan", rescan, "Re-check every skipped block");
  backbones->add_flag("--many-leap", many_leap, "Also leap over blocks of graphs with many coverers");

  auto* matrix = app.add_subcommand("matrix", "Build the cover matrix");
  matrix->add_option("-n", n, "Order")->required();
  matrix->add_option("--beta", beta_file, "Break file whose permutations are excluded and whose cover is removed");
  matrix->add_option("--dump", dump, "Write the matrix");
  matrix->add_option("--opb", opb, "Write an OPB instance");

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce and solve a dumped matrix");
  reduce_cmd->add_option("--matrix", matrix_file, "Matrix dump")->required();
  reduce_cmd->add_option("--opb", opb, "Write the reduced matrix as OPB");

  auto* verify = app.add_subcommand("verify", "Count graphs satisfying a break");
  verify->add_option("--break", break_file, "Break file")->required();
  verify->add_flag("--long", allow_long, "Allow order 8");

  auto* partial = app.add_subcommand("partial", "Redundancy ratio of a partial break");
  partial->add_option("-n", n, "Order")->required();
  partial->add_option("--mode", mode, "trns or backbones")->required()->check(CLI::IsMember({"trns", "backbones"}));
  partial->add_option("--bound", bound, "Covering bound B")->check(CLI::PositiveNumber);
  partial->add_flag("--many-leap", many_leap, "Also leap over blocks of graphs with many coverers");

  auto* solve = app.add_subcommand("solve", "Full pipeline");
  solve->add_option("-n", n, "Order")->required();
  solve->add_option("--bound", bound, "Covering bound B")->check(CLI::PositiveNumber);
  solve->add_option("--out", out, "Write the break file");
  solve->add_option("--report", report, "Write the report");
  solve->add_option("--state", state, "Checkpoint file (resumed if present)");
  solve->add_flag("--skip-iterative", skip_iterative, "Skip the graph sweep");
  solve->add_flag("--timings", timings, "Print phase timings to stderr");
  solve->add_flag("--verbose", verbose, "Progress on stderr");
  solve->add_flag("--many-leap", many_leap, "Also leap over blocks of graphs with many coverers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*canonical) return cmd_canonical(n, list);
    if (*cover) return cmd_cover(n, perm);
    if (*backbones) return cmd_backbones(n, method, bound, rescan, many_leap);
    if (*matrix) return cmd_matrix(n, beta_file, dump, opb);
    if (*reduce_cmd) return cmd_reduce(matrix_file, opb);
    if (*verify) return cmd_verify(break_file, allow_long);
    if (*partial) return cmd_partial(n, mode, bound, many_leap);
    if (*solve) return cmd_solve(n, bound, skip_iterative, out, report, state, timings, verbose, many_leap);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMismatch;
  }
  return kUsage;
}

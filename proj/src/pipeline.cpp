#include "lexcover/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lexcover/dominance.hpp"
#include "lexcover/set_cover.hpp"

namespace lexcover {

using ojson = nlohmann::ordered_json;

nlohmann::ordered_json to_json(const RunReport& r, bool with_timings) {
  ojson j;
  j["order"] = r.order;
  j["bb1"] = r.bb1 ? ojson(*r.bb1) : ojson(nullptr);
  j["bb2"] = r.bb2;
  j["rounds"] = r.rounds;
  j["rows"] = r.rows;
  j["cols"] = r.cols;
  j["cover_size_range"] =
      r.cover_size_range ? ojson::array({r.cover_size_range->first, r.cover_size_range->second}) : ojson(nullptr);
  j["forced"] = r.forced;
  j["residual"] = r.residual;
  j["opt"] = r.opt;
  j["enc_size"] = r.enc_size;
  j["bb1_not_in_bb2"] = r.bb1_not_in_bb2;
  j["solutions"] = r.solutions ? ojson(*r.solutions) : ojson(nullptr);
  j["expected"] = r.expected ? ojson(*r.expected) : ojson(nullptr);
  j["verified"] = r.solutions ? ojson(r.verified_ok()) : ojson(nullptr);
  if (with_timings) {
    ojson t = ojson::object();
    for (const auto& [phase, secs] : r.timings) t[phase] = secs;
    j["timings"] = t;
  }
  return j;
}

namespace {

class PhaseClock {
 public:
  PhaseClock(RunReport& report, const PipelineConfig& cfg) : report_(report), cfg_(cfg) {}

  template <class F>
  auto run(const std::string& phase, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report_.timings.emplace_back(phase, secs);
      if (cfg_.log) {
        std::ostringstream msg;
        msg << phase << " done in " << secs << " s";
        cfg_.log(msg.str());
      }
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto result = f();
      finish();
      return result;
    }
  }

 private:
  RunReport& report_;
  const PipelineConfig& cfg_;
};

ojson perms_json(const std::vector<Permutation>& perms) {
  ojson a = ojson::array();
  for (const auto& pi : perms) a.push_back(pi.image());
  return a;
}

std::vector<Permutation> perms_from(const nlohmann::json& a) {
  std::vector<Permutation> out;
  for (const auto& img : a) out.emplace_back(img.get<std::vector<int>>());
  return out;
}

struct Checkpoint {
  std::string phase;  // "iterative" or "round"
  std::optional<std::size_t> bb1;
  std::size_t rounds = 0;
  std::vector<Permutation> sweep;
  std::vector<Permutation> seed;
  std::vector<Permutation> beta;
  std::vector<Permutation> universe;
};

void save(const PipelineConfig& cfg, const Checkpoint& cp) {
  if (!cfg.state_path) return;
  ojson j;
  j["order"] = cfg.order;
  j["phase"] = cp.phase;
  j["bb1"] = cp.bb1 ? ojson(*cp.bb1) : ojson(nullptr);
  j["rounds"] = cp.rounds;
  j["sweep"] = perms_json(cp.sweep);
  j["seed"] = perms_json(cp.seed);
  j["beta"] = perms_json(cp.beta);
  j["universe"] = perms_json(cp.universe);
  write_file_atomic(*cfg.state_path, j.dump() + "\n");
}

std::optional<Checkpoint> load(const PipelineConfig& cfg) {
  if (!cfg.state_path || !std::filesystem::exists(*cfg.state_path)) return std::nullopt;
  std::ifstream in(*cfg.state_path);
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("order").get<int>() != cfg.order) throw UsageError("state file is for a different order");
    Checkpoint cp;
    cp.phase = j.at("phase").get<std::string>();
    if (!j.at("bb1").is_null()) cp.bb1 = j.at("bb1").get<std::size_t>();
    cp.rounds = j.at("rounds").get<std::size_t>();
    cp.sweep = perms_from(j.at("sweep"));
    cp.seed = perms_from(j.at("seed"));
    cp.beta = perms_from(j.at("beta"));
    cp.universe = perms_from(j.at("universe"));
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("state file " + *cfg.state_path + ": " + e.what());
  }
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  const int n = cfg.order;
  if (n < 2 || n > kMaxOrder) throw UsageError("order must lie in [2, 10]");
  if (cfg.bound < 1) throw UsageError("bound must be at least 1");

  RunReport report;
  report.order = n;
  PhaseClock clock(report, cfg);
  auto log = [&](const std::string& s) {
    if (cfg.log) cfg.log(s);
  };

  Checkpoint cp;
  if (auto loaded = load(cfg)) {
    cp = std::move(*loaded);
    log("resuming from " + *cfg.state_path + " (phase " + cp.phase + ", round " + std::to_string(cp.rounds) + ")");
  } else {
    cp.universe = nontrivial_permutations(n);
    if (!cfg.skip_iterative) {
      IterativeOptions opts;
      opts.bound = cfg.bound;
      opts.many_leap = cfg.many_leap;
      if (cfg.log) {
        opts.progress = [&](const LeapCounters& c, std::size_t beta_size) {
          log("sweep: visited " + std::to_string(c.visited) + ", skipped " + std::to_string(c.skipped) +
              ", beta " + std::to_string(beta_size));
        };
        opts.progress_every = std::uint64_t{1} << 20;
      }
      auto it = clock.run("iterative", [&] { return find_backbones_iterative(n, opts); });
      cp.bb1 = it.beta.size();
      cp.sweep = it.beta;
      cp.seed = it.beta;
      std::sort(cp.seed.begin(), cp.seed.end());
      cp.universe = clock.run("refine_sweep", [&] { return refine(cp.universe, cp.seed); });
    }
    cp.phase = "iterative";
    save(cfg, cp);
  }
  report.bb1 = cp.bb1;

  bool stable = cp.phase == "fixpoint";
  while (!stable) {
    const auto label = std::to_string(cp.rounds + 1);
    auto r = clock.run("backbones_round_" + label, [&] { return backbone_round(cp.universe, cp.seed); });
    stable = r.stable;
    const auto stats = r.stats;
    cp.beta = std::move(r.beta);
    cp.universe = std::move(r.universe);
    cp.seed = cp.beta;
    ++cp.rounds;
    cp.phase = stable ? "fixpoint" : "round";
    save(cfg, cp);
    log("round " + std::to_string(cp.rounds) + ": beta " + std::to_string(cp.beta.size()) + ", universe " +
        std::to_string(cp.universe.size()) + ", sat calls " + std::to_string(stats.sat_calls));
  }

  report.rounds = cp.rounds;
  report.bb2 = cp.beta.size();
  report.rows = cp.universe.size();
  {
    // Anything the sweep reported that the exact search did not confirm.
    const std::set<Permutation> bb2(cp.beta.begin(), cp.beta.end());
    report.bb1_not_in_bb2 = static_cast<std::size_t>(
        std::count_if(cp.sweep.begin(), cp.sweep.end(), [&](const Permutation& pi) { return !bb2.contains(pi); }));
  }

  std::vector<Permutation> chosen = cp.beta;
  if (!cp.universe.empty()) {
    const auto mat = clock.run("matrix", [&] { return build_matrix(cp.universe, cp.beta, cfg.instance_budget); });
    report.cols = mat.num_cols();
    const auto weights = mat.row_weights();
    if (!weights.empty()) {
      const auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
      report.cover_size_range = std::make_pair(*lo, *hi);
    }
    const auto sol = clock.run("solve", [&] { return solve_exact(reduce(mat)); });
    report.forced = sol.forced_count;
    report.residual = sol.chosen.size() - sol.forced_count;
    for (const auto& pi : sol.perms()) chosen.push_back(pi);
  }
  report.opt = chosen.size();

  BreakSpec spec = make_break(n, chosen, "optimal");
  spec.provenance["bb1"] = cp.bb1 ? ojson(*cp.bb1) : ojson(nullptr);
  spec.provenance["bb2"] = report.bb2;
  spec.provenance["rows"] = report.rows;
  spec.provenance["cols"] = report.cols;
  spec.provenance["opt"] = report.opt;
  report.enc_size = cnf_stats(spec).clauses;

  if (cfg.verify.value_or(n <= 7)) {
    clock.run("verify", [&] {
      report.solutions = verify_break(spec, true);
      report.expected = count_canonical(n, kMaxOrder);
    });
  }
  return {std::move(spec), std::move(report)};
}

}  // namespace lexcover

#include "lexcover/break_spec.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace lexcover {

BreakSpec make_break(int n, std::span<const Permutation> perms, const std::string& kind) {
  for (const auto& pi : perms) {
    if (pi.degree() != n) throw UsageError("make_break: permutation degree does not match order");
  }
  BreakSpec spec;
  spec.order = n;
  spec.permutations.assign(perms.begin(), perms.end());
  spec.patterns = merge_patterns(perms);
  spec.provenance["kind"] = kind;
  return spec;
}

namespace {

struct CnfBuilder {
  int m;
  std::map<std::pair<int, int>, int> eq;  // (rep, member) -> DIMACS var
  std::vector<std::vector<int>> clauses;
  std::size_t pattern_clauses = 0;

  int equality(int p, int q) {
    auto [it, fresh] = eq.emplace(std::make_pair(p, q), 0);
    if (fresh) {
      it->second = m + static_cast<int>(eq.size());
      const int e = it->second;
      clauses.push_back({-e, -p, q});
      clauses.push_back({-e, p, -q});
      clauses.push_back({e, p, q});
      clauses.push_back({e, -p, -q});
    }
    return it->second;
  }

  void add(const Pattern& gamma) {
    std::vector<int> clause;
    for (int p = 1; p <= gamma.size(); ++p) {
      const Cell& c = gamma.cell(p);
      switch (c.kind) {
        case Cell::Kind::Zero: clause.push_back(p); break;
        case Cell::Kind::One: clause.push_back(-p); break;
        case Cell::Kind::Var:
          if (c.rep != p) clause.push_back(-equality(c.rep, p));
          break;
      }
    }
    clauses.push_back(std::move(clause));
    ++pattern_clauses;
  }

  CnfStats stats() const {
    return {static_cast<std::size_t>(m) + eq.size(), clauses.size(), pattern_clauses, eq.size()};
  }
};

CnfBuilder build_cnf(const BreakSpec& spec) {
  CnfBuilder b{num_positions(spec.order), {}, {}, 0};
  for (const auto& gamma : spec.patterns.patterns) b.add(gamma);
  return b;
}

}  // namespace

CnfStats cnf_stats(const BreakSpec& spec) { return build_cnf(spec).stats(); }

CnfStats emit_cnf(const BreakSpec& spec, std::ostream& out) {
  const auto b = build_cnf(spec);
  const auto st = b.stats();
  out << "p cnf " << st.variables << ' ' << st.clauses << '\n';
  for (const auto& clause : b.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return st;
}

std::uint64_t verify_break(const BreakSpec& spec, bool allow_long) {
  if (spec.order < 1 || spec.order > kMaxOrder) throw UsageError("verify_break: order out of range");
  if (spec.order > 7 && !allow_long) throw UsageError("verify_break: order above 7 needs the long-run flag");
  const std::uint64_t total = std::uint64_t{1} << num_positions(spec.order);
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    const Graph g(spec.order, bits);
    if (!spec.patterns.covers(g)) ++count;
  }
  return count;
}

double redundancy_ratio(std::span<const Permutation> perms, int n) {
  if (n > 7) throw UsageError("redundancy_ratio: order above 7");
  const auto spec = make_break(n, perms);
  return static_cast<double>(verify_break(spec)) / static_cast<double>(count_canonical(n));
}

nlohmann::ordered_json to_json(const BreakSpec& spec) {
  nlohmann::ordered_json j;
  j["order"] = spec.order;
  j["permutations"] = nlohmann::ordered_json::array();
  for (const auto& pi : spec.permutations) j["permutations"].push_back(pi.image());
  j["patterns"] = nlohmann::ordered_json::array();
  for (const auto& gamma : spec.patterns.patterns) j["patterns"].push_back(gamma.to_string());
  j["provenance"] = spec.provenance;
  return j;
}

BreakSpec break_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("order").get<int>();
    std::vector<Permutation> perms;
    for (const auto& img : j.at("permutations")) {
      perms.emplace_back(img.get<std::vector<int>>());
    }
    BreakSpec spec = make_break(n, perms);
    if (j.contains("provenance")) spec.provenance = j.at("provenance");
    // Recorded patterns must agree with the permutations.
    if (j.contains("patterns")) {
      std::vector<std::string> recorded = j.at("patterns").get<std::vector<std::string>>();
      std::vector<std::string> derived;
      for (const auto& gamma : spec.patterns.patterns) derived.push_back(gamma.to_string());
      if (recorded != derived) throw UsageError("break file: patterns do not match permutations");
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("break file: ") + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void write_break_file(const BreakSpec& spec, const std::string& path) {
  write_file_atomic(path, to_json(spec).dump(2) + "\n");
}

BreakSpec read_break_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open break file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("break file " + path + ": " + e.what());
  }
  return break_from_json(j);
}

}  // namespace lexcover

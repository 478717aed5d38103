#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lexcover/backbone.hpp"
#include "lexcover/break_spec.hpp"
#include "lexcover/pipeline.hpp"
#include "lexcover/set_cover.hpp"

namespace py = pybind11;
using namespace lexcover;

namespace {

using Images = std::vector<std::vector<int>>;

std::vector<Permutation> to_perms(const Images& images) {
  std::vector<Permutation> out;
  for (const auto& img : images) out.emplace_back(img);
  return out;
}

Images to_images(const std::vector<Permutation>& perms) {
  Images out;
  for (const auto& pi : perms) out.push_back(pi.image());
  return out;
}

py::list pattern_strings(const std::vector<int>& image) {
  py::list out;
  for (const auto& gamma : patterns_of(Permutation(image)).patterns) out.append(gamma.to_string());
  return out;
}

std::vector<GraphId> cover_ids(const std::vector<int>& image) {
  std::vector<GraphId> ids;
  for (const auto& gamma : patterns_of(Permutation(image)).patterns) {
    for_each_instance(gamma, [&](const Graph& g) { ids.push_back(g.id()); });
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

py::dict matrix_info(const CoverMatrix& m) {
  py::dict d;
  d["rows"] = m.num_rows();
  d["cols"] = m.num_cols();
  d["row_labels"] = m.row_labels;
  d["col_ids"] = m.col_ids;
  d["row_weights"] = m.row_weights();
  d["forced"] = m.forced;
  return d;
}

py::dict solve_matrix(const Images& rows, const Images& beta, bool reduce_first) {
  auto mat = build_matrix(to_perms(rows), to_perms(beta));
  py::dict d = matrix_info(mat);
  if (reduce_first) mat = reduce(mat);
  const auto sol = solve_exact(mat);
  d["chosen"] = sol.chosen;
  d["forced_count"] = sol.forced_count;
  d["optimal"] = sol.optimal;
  return d;
}

py::tuple pipeline(int n, std::size_t bound, bool skip_iterative, std::optional<std::string> state) {
  PipelineConfig cfg;
  cfg.order = n;
  cfg.bound = bound;
  cfg.skip_iterative = skip_iterative;
  cfg.state_path = std::move(state);
  PipelineResult r;
  {
    py::gil_scoped_release release;
    r = run_pipeline(cfg);
  }
  return py::make_tuple(to_json(r.report).dump(), to_json(r.spec).dump());
}

}  // namespace

PYBIND11_MODULE(_lexcover, m) {
  m.doc() = "Minimum lex-leader symmetry breaks for graphs";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.attr("DEFAULT_BOUND") = kDefaultBound;

  m.def("num_positions", &num_positions, py::arg("n"));
  m.def("count_canonical", [](int n) { return count_canonical(n); }, py::arg("n"));
  m.def("canonical_ids", [](int n) { return canonical_ids(n); }, py::arg("n"));
  m.def("apply_perm", [](const std::vector<int>& image, int n, GraphId id) {
    return apply_perm(Permutation(image), Graph(n, id)).id();
  }, py::arg("perm"), py::arg("n"), py::arg("graph_id"));

  m.def("patterns", &pattern_strings, py::arg("perm"));
  m.def("cover_ids", &cover_ids, py::arg("perm"));
  m.def("transpositions", [](int n) { return to_images(transpositions(n)); }, py::arg("n"));
  m.def("nontrivial_permutations", [](int n) { return to_images(nontrivial_permutations(n)); }, py::arg("n"));

  m.def("get_dominated", [](const Images& dominators, const Images& candidates) {
    return to_images(get_dominated(to_perms(dominators), to_perms(candidates)));
  }, py::arg("dominators"), py::arg("candidates"));
  m.def("refine", [](const Images& s, const Images& beta) {
    return to_images(refine(to_perms(s), to_perms(beta)));
  }, py::arg("s"), py::arg("beta"));

  m.def("find_backbones_iterative", [](int n, std::size_t bound) {
    IterativeOptions opts;
    opts.bound = bound;
    return to_images(find_backbones_iterative(n, opts).beta);
  }, py::arg("n"), py::arg("bound") = kDefaultBound);
  m.def("find_backbones_sat", [](const Images& universe, const Images& seed) {
    return to_images(find_backbones_sat(to_perms(universe), to_perms(seed)));
  }, py::arg("universe"), py::arg("seed") = Images{});
  m.def("is_backbone", [](const std::vector<int>& perm, const Images& universe) {
    return is_backbone_sat(Permutation(perm), to_perms(universe));
  }, py::arg("perm"), py::arg("universe"));

  m.def("build_matrix", [](const Images& rows, const Images& beta) {
    return matrix_info(build_matrix(to_perms(rows), to_perms(beta)));
  }, py::arg("rows"), py::arg("beta") = Images{});
  m.def("solve_matrix", &solve_matrix, py::arg("rows"), py::arg("beta") = Images{}, py::arg("reduce") = true);
  m.def("export_opb", [](const Images& rows, const Images& beta) {
    std::ostringstream s;
    export_opb(reduce(build_matrix(to_perms(rows), to_perms(beta))), s);
    return s.str();
  }, py::arg("rows"), py::arg("beta") = Images{});

  m.def("verify_break", [](int n, const Images& perms, bool allow_long) {
    return verify_break(make_break(n, to_perms(perms)), allow_long);
  }, py::arg("n"), py::arg("perms"), py::arg("allow_long") = false);
  m.def("redundancy_ratio", [](int n, const Images& perms) {
    return redundancy_ratio(to_perms(perms), n);
  }, py::arg("n"), py::arg("perms"));
  m.def("emit_cnf", [](int n, const Images& perms) {
    std::ostringstream s;
    emit_cnf(make_break(n, to_perms(perms)), s);
    return s.str();
  }, py::arg("n"), py::arg("perms"));

  m.def("_run_pipeline", &pipeline, py::arg("n"), py::arg("bound") = kDefaultBound,
        py::arg("skip_iterative") = false, py::arg("state") = std::nullopt);
}

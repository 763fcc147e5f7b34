// Python bindings. Structured results cross the boundary as JSON text in the
// same canonical format the CLI reads and writes; the package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperseq/decide.hpp"
#include "hyperseq/goals.hpp"
#include "hyperseq/json_io.hpp"
#include "hyperseq/replicate.hpp"
#include "hyperseq/search.hpp"
#include "hyperseq/transform.hpp"

namespace py = pybind11;
using namespace hyperseq;

namespace {

json branch_json(const std::vector<std::string>& names, const Branch& b) {
    json out = json::array();
    for (std::size_t w : b) out.push_back(names[w]);
    return out;
}

std::string search_json(const std::string& goal, const std::string& system, std::uint64_t max_nodes) {
    SearchLimits lim;
    lim.max_nodes = max_nodes;
    SearchResult r;
    {
        py::gil_scoped_release nogil;
        r = search(goal_from_text(goal), calculus(system), lim);
    }
    json j = {{"status", to_string(r.status)}, {"nodes", r.stats.nodes}};
    if (r.proof) j["proof"] = to_json(*r.proof);
    return j.dump();
}

std::string decide_json(const std::string& goal, const std::string& system) {
    DecideResult r;
    {
        py::gil_scoped_release nogil;
        r = decide(goal_from_text(goal), decide_system_from_string(system));
    }
    json j = {{"verdict", to_string(r.verdict)}, {"paths", r.stats.paths}};
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    if (r.model) {
        j["model"] = to_json(r.model->model);
        j["branch"] = branch_json(r.model->model.frame.worlds, r.model->branch);
    }
    if (!r.internal_error.empty()) j["internal_error"] = r.internal_error;
    return j.dump();
}

std::string bounded_json(const std::string& goal, const std::string& cls, int bound) {
    BoundedResult r;
    {
        py::gil_scoped_release nogil;
        r = bounded_validity(goal_from_text(goal), frame_class_from_string(cls), bound);
    }
    json j = {{"countermodel_found", r.countermodel_found}, {"frames_checked", r.frames_checked}};
    if (r.countermodel_found) {
        j["model"] = to_json(r.model);
        j["branch"] = branch_json(r.model.frame.worlds, r.branch);
    }
    return j.dump();
}

std::pair<bool, std::string> check_json(const std::string& derivation, const std::string& system) {
    DerivPtr d = derivation_from_json(json::parse(derivation));
    DerivationCheck c = check_derivation(*d, calculus(system));
    return {c.ok, c.reason};
}

std::optional<std::vector<std::string>> ps4_branch(const std::string& goal) {
    PS4Model m = builtin_fig5_model();
    auto b = ps4_countermodel(m, goal_from_text(goal));
    if (!b) return std::nullopt;
    std::vector<std::string> out;
    for (std::size_t w : *b) out.push_back(m.worlds[w]);
    return out;
}

std::string replicate_json(const std::vector<int>& only) {
    ReplicateOptions o;
    o.only = only;
    ReplicationReport r;
    {
        py::gil_scoped_release nogil;
        r = replicate(o);
    }
    return r.to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<TransformError>(m, "TransformError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

    m.def("parse_formula", [](const std::string& t) { return parse_formula(t).str(); });
    m.def("parse_hypersequent", [](const std::string& t) { return to_string(goal_from_text(t)); });
    m.def("hypersequent_json", [](const std::string& t) { return to_json(goal_from_text(t)).dump(); });
    m.def("modal_depth", [](const std::string& t) { return modal_depth(parse_formula(t)); });
    m.def("closure_size", [](const std::string& t) { return subformula_closure(parse_formula(t)).size(); });
    m.def("translate", [](const std::string& t) { return translate(goal_from_text(t)).formula.str(); });
    m.def("goal_names", &goal_names);
    m.def("search", &search_json, py::arg("goal"), py::arg("system"), py::arg("max_nodes") = 0);
    m.def("check", &check_json, py::arg("derivation"), py::arg("system"));
    m.def("decide", &decide_json, py::arg("goal"), py::arg("system"));
    m.def("bounded_validity", &bounded_json, py::arg("goal"), py::arg("frame_class"), py::arg("bound"));
    m.def("ps4_countermodel", &ps4_branch, py::arg("goal"));
    m.def("replicate", &replicate_json, py::arg("only") = std::vector<int>{});
}

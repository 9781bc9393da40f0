#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "collatz/cli.hpp"
#include "collatz/kernel.hpp"
#include "collatz/padic.hpp"
#include "collatz/props.hpp"
#include "collatz/realext.hpp"
#include "collatz/structure.hpp"
#include "collatz/verifier.hpp"

namespace py = pybind11;

// Natural <-> Python int, through the decimal representation.
namespace pybind11::detail {
template <>
struct type_caster<collatz::Natural> {
    PYBIND11_TYPE_CASTER(collatz::Natural, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
        const auto text = str(src).cast<std::string>();
        if (!text.empty() && text[0] == '-') throw value_error("expected a nonnegative integer, got " + text);
        value = collatz::Natural::from_decimal(text);
        return true;
    }

    static handle cast(const collatz::Natural& n, return_value_policy, handle) {
        return PyLong_FromString(n.to_string().c_str(), nullptr, 10);
    }
};
}  // namespace pybind11::detail

PYBIND11_MODULE(_core, m) {
    using namespace collatz;
    m.doc() = "Exact Collatz-map toolkit";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<CheckpointError>(m, "CheckpointError", PyExc_RuntimeError);

    py::enum_<Variant>(m, "Variant")
        .value("STANDARD", Variant::Standard)
        .value("SHORTCUT", Variant::Shortcut)
        .value("SYRACUSE", Variant::Syracuse);
    py::enum_<StepKind>(m, "StepKind")
        .value("HALVE", StepKind::Halve)
        .value("TRIPLE_ADD_ONE", StepKind::TripleAddOne)
        .value("SHORTCUT_ODD_STEP", StepKind::ShortcutOddStep)
        .value("SYRACUSE_STEP", StepKind::SyracuseStep);

    // kernel
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("start", &Trajectory::start)
        .def_readonly("variant", &Trajectory::variant)
        .def_readonly("values", &Trajectory::values)
        .def_readonly("steps", &Trajectory::steps)
        .def_readonly("peak", &Trajectory::peak)
        .def_readonly("terminated", &Trajectory::terminated)
        .def_property_readonly("step_count", &Trajectory::step_count);

    m.def("step_standard", &step_standard, py::arg("n"));
    m.def("step_shortcut", &step_shortcut, py::arg("n"));
    m.def("v2_factor", [](const Natural& n) {
        auto s = v2_factor(n);
        return py::make_tuple(s.exponent, s.odd_part);
    }, py::arg("n"), "Returns (exponent, odd_part) with n = 2**exponent * odd_part.");
    m.def("syracuse_step", &syracuse_step, py::arg("k"));
    m.def("trajectory", &trajectory, py::arg("start"), py::arg("variant") = Variant::Standard,
          py::arg("max_steps") = kDefaultTrajectorySteps, py::arg("continue_past_one") = false);
    m.def("is_power_of_two", &is_power_of_two, py::arg("n"));
    m.def("is_power_of_four", &is_power_of_four, py::arg("n"));

    // structure
    py::class_<StageHit>(m, "StageHit")
        .def_readonly("index", &StageHit::index)
        .def_readonly("value", &StageHit::value)
        .def("__repr__", [](const StageHit& h) {
            return "StageHit(index=" + std::to_string(h.index) + ", value=" + h.value.to_string() + ")";
        });
    py::class_<StageReport>(m, "StageReport")
        .def_readonly("start", &StageReport::start)
        .def_readonly("first_b_hit", &StageReport::first_b_hit)
        .def_readonly("first_a_hit", &StageReport::first_a_hit)
        .def_readonly("first_pow4_hit", &StageReport::first_pow4_hit)
        .def_readonly("one_index", &StageReport::one_index)
        .def_readonly("reached_one", &StageReport::reached_one)
        .def_readonly("pipeline_consistent", &StageReport::pipeline_consistent);
    py::class_<BackwardNode>(m, "BackwardNode")
        .def_readonly("value", &BackwardNode::value)
        .def_readonly("depth", &BackwardNode::depth)
        .def_readonly("parent", &BackwardNode::parent)
        .def_readonly("via_odd_branch", &BackwardNode::via_odd_branch);

    m.def("a_element", &a_element, py::arg("n"));
    m.def("b_element", &b_element, py::arg("n"));
    m.def("in_set_a", &in_set_a, py::arg("x"));
    m.def("in_set_b", &in_set_b, py::arg("x"));
    m.def("preimages", &preimages, py::arg("n"), py::arg("include_one") = false);
    m.def("backward_tree", &backward_tree, py::arg("root"), py::arg("depth"), py::arg("include_one") = false);
    m.def("pow2_minus1_mod3", &pow2_minus1_mod3, py::arg("k"));
    m.def("odd_quotient_by3", &odd_quotient_by3, py::arg("x"));
    m.def("classify_stage", &classify_stage, py::arg("start"), py::arg("max_steps") = kDefaultTrajectorySteps);

    // padic
    py::class_<ParityVector>(m, "ParityVector")
        .def_readonly("source", &ParityVector::source)
        .def_readonly("bits", &ParityVector::bits)
        .def("__len__", &ParityVector::length);
    m.def("parity_vector", &parity_vector, py::arg("x"), py::arg("k") = kDefaultParityBits);
    m.def("q_truncated", &q_truncated, py::arg("x"), py::arg("k") = kDefaultParityBits);
    m.def("isometry_check", &isometry_check, py::arg("x"), py::arg("y"), py::arg("k") = kDefaultParityBits);

    // realext
    py::class_<RealOrbit>(m, "RealOrbit")
        .def_readonly("values", &RealOrbit::values)
        .def_readonly("escaped", &RealOrbit::escaped);
    m.def("smooth_map", &smooth_map, py::arg("z"));
    m.def("smooth_map_shortcut", &smooth_map_shortcut, py::arg("z"));
    m.def("real_orbit", &real_orbit, py::arg("z0"), py::arg("variant") = Variant::Standard, py::arg("n_steps") = 10,
          py::arg("escape_bound") = kDefaultEscapeBound);

    // verifier
    py::enum_<VerifyMode>(m, "VerifyMode")
        .value("DROP_BELOW_START", VerifyMode::DropBelowStart)
        .value("FULL_TO_ONE", VerifyMode::FullToOne);
    py::enum_<Outcome>(m, "Outcome")
        .value("CONVERGED", Outcome::Converged)
        .value("UNRESOLVED", Outcome::Unresolved)
        .value("CYCLE", Outcome::Cycle);
    py::class_<OneResult>(m, "OneResult")
        .def_readonly("outcome", &OneResult::outcome)
        .def_readonly("steps", &OneResult::steps)
        .def_readonly("peak", &OneResult::peak)
        .def_property_readonly("converged", &OneResult::converged);
    py::class_<VerifyConfig>(m, "VerifyConfig")
        .def(py::init<>())
        .def_readwrite("lo", &VerifyConfig::lo)
        .def_readwrite("hi", &VerifyConfig::hi)
        .def_readwrite("chunk_size", &VerifyConfig::chunk_size)
        .def_readwrite("mode", &VerifyConfig::mode)
        .def_readwrite("max_steps", &VerifyConfig::max_steps)
        .def_readwrite("worker_count", &VerifyConfig::worker_count)
        .def_readwrite("checkpoint_path", &VerifyConfig::checkpoint_path)
        .def_readwrite("checkpoint_interval", &VerifyConfig::checkpoint_interval);
    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("lo", &VerificationReport::lo)
        .def_readonly("hi", &VerificationReport::hi)
        .def_readonly("complete", &VerificationReport::complete)
        .def_readonly("elapsed_seconds", &VerificationReport::elapsed_seconds)
        .def_property_readonly("numbers_checked", [](const VerificationReport& r) { return r.stats.numbers_checked; })
        .def_property_readonly("counterexamples", [](const VerificationReport& r) { return r.stats.counterexamples; })
        .def_property_readonly("unresolved", [](const VerificationReport& r) { return r.stats.unresolved; })
        .def("to_text", &render_report_text, py::arg("include_elapsed") = true)
        .def("to_json", &render_report_json, py::arg("include_elapsed") = true);

    m.def("verify_one", &verify_one, py::arg("n"), py::arg("mode") = VerifyMode::DropBelowStart,
          py::arg("max_steps") = kDefaultVerifySteps);
    m.def("verify_range", [](const VerifyConfig& cfg, std::optional<std::uint64_t> stop_after_chunks) {
        RunControls controls{stop_after_chunks};
        py::gil_scoped_release release;
        return verify_range(cfg, controls);
    }, py::arg("config"), py::arg("stop_after_chunks") = std::nullopt);

    m.def("run_prop_suite", [](const std::string& suite, std::uint64_t bound) {
        auto r = run_prop_suite(suite, bound);
        return py::make_tuple(r.passed(), r.cases_checked, r.first_counterexample);
    }, py::arg("suite"), py::arg("bound"), "Returns (passed, cases_checked, first_counterexample).");

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs a collatz_lab command; returns (exit_code, stdout, stderr).");
}

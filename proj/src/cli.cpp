#include "collatz/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "collatz/kernel.hpp"
#include "collatz/padic.hpp"
#include "collatz/props.hpp"
#include "collatz/realext.hpp"
#include "collatz/structure.hpp"
#include "collatz/verifier.hpp"

namespace collatz {
namespace {

using Json = nlohmann::ordered_json;

/// Thrown for semantically invalid arguments that passed CLI11's syntax checks.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json to_json(const Natural& n) {
    if (const auto v = n.to_u64()) return *v;
    return n.to_string();
}

Natural parse_natural(const std::string& text, const char* what, bool positive = true) {
    Natural n;
    try {
        n = Natural::from_decimal(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(what) + ": expected a decimal integer, got '" + text + "'");
    }
    if (positive && n.is_zero()) throw UsageError(std::string(what) + " must be >= 1");
    return n;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<Natural>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != 0) out += sep;
        out += xs[i].to_string();
    }
    return out;
}

void add_format(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

OutputFormat to_format(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    return OutputFormat::Text;
}

int cmd_trajectory(std::ostream& out, const std::string& n_text, const std::string& variant_name,
                   std::uint64_t max_steps, bool past_one, OutputFormat format) {
    const auto start = parse_natural(n_text, "n");
    const auto variant = parse_variant(variant_name);
    if (max_steps == 0) throw UsageError("--max-steps must be >= 1");
    if (variant == Variant::Syracuse && start.is_even()) throw UsageError("the syracuse variant needs an odd start");
    const auto t = trajectory(start, variant, max_steps, past_one);

    switch (format) {
        case OutputFormat::Text:
            out << "start=" << t.start << '\n'
                << "variant=" << to_string(t.variant) << '\n'
                << "values=" << join(t.values, ",") << '\n'
                << "steps=" << t.step_count() << '\n'
                << "peak=" << t.peak << '\n'
                << "terminated=" << (t.terminated ? "true" : "false") << '\n';
            break;
        case OutputFormat::Json: {
            Json j;
            j["start"] = to_json(t.start);
            j["variant"] = to_string(t.variant);
            j["values"] = Json::array();
            for (const auto& v : t.values) j["values"].push_back(to_json(v));
            j["step_kinds"] = Json::array();
            for (const auto k : t.steps) j["step_kinds"].push_back(to_string(k));
            j["steps"] = t.step_count();
            j["peak"] = to_json(t.peak);
            j["terminated"] = t.terminated;
            out << j.dump() << '\n';
            break;
        }
        case OutputFormat::Csv:
            out << "index,value,step_kind\n";
            for (std::size_t i = 0; i < t.values.size(); ++i) {
                out << i << ',' << t.values[i] << ',' << (i == 0 ? "start" : to_string(t.steps[i - 1])) << '\n';
            }
            break;
    }
    return kExitOk;
}

std::string hit_text(const std::optional<StageHit>& h) {
    return h ? std::to_string(h->index) + ":" + h->value.to_string() : "-";
}

int cmd_classify(std::ostream& out, const std::string& n_text, const std::vector<std::string>& range,
                 std::uint64_t max_steps, OutputFormat format) {
    Natural lo;
    Natural hi;
    if (!range.empty()) {
        if (!n_text.empty()) throw UsageError("give either n or --range, not both");
        lo = parse_natural(range[0], "range lo");
        hi = parse_natural(range[1], "range hi");
        if (hi < lo) throw UsageError("--range: lo must not exceed hi");
    } else if (!n_text.empty()) {
        lo = hi = parse_natural(n_text, "n");
    } else {
        throw UsageError("classify needs n or --range lo hi");
    }

    bool all_ok = true;
    Json rows = Json::array();
    if (format == OutputFormat::Csv) {
        out << "n,b_index,b_value,a_index,a_value,pow4_index,pow4_value,one_index,reached_one,consistent\n";
    }
    for (Natural n = lo; n <= hi; n += Natural(1)) {
        const auto r = classify_stage(n, max_steps);
        all_ok = all_ok && r.reached_one && r.pipeline_consistent;
        switch (format) {
            case OutputFormat::Text:
                out << "n=" << r.start << " b=" << hit_text(r.first_b_hit) << " a=" << hit_text(r.first_a_hit)
                    << " pow4=" << hit_text(r.first_pow4_hit)
                    << " one=" << (r.one_index ? std::to_string(*r.one_index) : "-")
                    << " consistent=" << (r.pipeline_consistent ? "true" : "false") << '\n';
                break;
            case OutputFormat::Csv: {
                auto idx = [](const std::optional<StageHit>& h) { return h ? std::to_string(h->index) : ""; };
                auto val = [](const std::optional<StageHit>& h) { return h ? h->value.to_string() : ""; };
                out << r.start << ',' << idx(r.first_b_hit) << ',' << val(r.first_b_hit) << ','
                    << idx(r.first_a_hit) << ',' << val(r.first_a_hit) << ',' << idx(r.first_pow4_hit) << ','
                    << val(r.first_pow4_hit) << ',' << (r.one_index ? std::to_string(*r.one_index) : "") << ','
                    << (r.reached_one ? "true" : "false") << ',' << (r.pipeline_consistent ? "true" : "false")
                    << '\n';
                break;
            }
            case OutputFormat::Json: {
                auto hit = [](const std::optional<StageHit>& h) {
                    return h ? Json{{"index", h->index}, {"value", to_json(h->value)}} : Json(nullptr);
                };
                Json row;
                row["n"] = to_json(r.start);
                row["b"] = hit(r.first_b_hit);
                row["a"] = hit(r.first_a_hit);
                row["pow4"] = hit(r.first_pow4_hit);
                row["one_index"] = r.one_index ? Json(*r.one_index) : Json(nullptr);
                row["reached_one"] = r.reached_one;
                row["consistent"] = r.pipeline_consistent;
                rows.push_back(std::move(row));
                break;
            }
        }
    }
    if (format == OutputFormat::Json) out << rows.dump() << '\n';
    return all_ok ? kExitOk : kExitViolation;
}

int cmd_sets(std::ostream& out, const std::string& set, std::uint64_t count, OutputFormat format) {
    std::vector<Natural> elems;
    for (std::uint64_t i = 1; i <= count; ++i) elems.push_back(set == "a" ? a_element(i) : b_element(i));
    switch (format) {
        case OutputFormat::Text:
            out << join(elems, " ") << '\n';
            break;
        case OutputFormat::Json: {
            Json j;
            j["set"] = set;
            j["elements"] = Json::array();
            for (const auto& e : elems) j["elements"].push_back(to_json(e));
            out << j.dump() << '\n';
            break;
        }
        case OutputFormat::Csv:
            out << "index,value\n";
            for (std::size_t i = 0; i < elems.size(); ++i) out << i + 1 << ',' << elems[i] << '\n';
            break;
    }
    return kExitOk;
}

int cmd_tree(std::ostream& out, const std::string& root_text, std::uint64_t depth, bool include_one,
             OutputFormat format) {
    const auto nodes = backward_tree(parse_natural(root_text, "--root"), depth, include_one);
    switch (format) {
        case OutputFormat::Text: {
            std::vector<Natural> values;
            for (const auto& node : nodes) values.push_back(node.value);
            out << join(values, " ") << '\n';
            break;
        }
        case OutputFormat::Json: {
            Json arr = Json::array();
            for (const auto& node : nodes) {
                arr.push_back(Json{{"value", to_json(node.value)},
                                   {"depth", node.depth},
                                   {"parent", node.parent ? to_json(*node.parent) : Json(nullptr)},
                                   {"via_odd_branch", node.via_odd_branch}});
            }
            out << arr.dump() << '\n';
            break;
        }
        case OutputFormat::Csv:
            out << "depth,value,parent,via_odd_branch\n";
            for (const auto& node : nodes) {
                out << node.depth << ',' << node.value << ',' << (node.parent ? node.parent->to_string() : "") << ','
                    << (node.via_odd_branch ? "true" : "false") << '\n';
            }
            break;
    }
    return kExitOk;
}

int cmd_parity(std::ostream& out, const std::string& x_text, std::uint64_t bits, OutputFormat format) {
    if (bits == 0) throw UsageError("--bits must be >= 1");
    const auto x = parse_natural(x_text, "x");
    const auto pv = parity_vector(x, bits);
    const auto q = q_truncated(x, bits);
    std::string bit_string;
    for (const auto b : pv.bits) bit_string += b != 0 ? '1' : '0';
    switch (format) {
        case OutputFormat::Text:
            out << "source=" << x << '\n' << "bits=" << bit_string << '\n' << "length=" << pv.length() << '\n'
                << "q=" << q << '\n';
            break;
        case OutputFormat::Json: {
            Json j;
            j["source"] = to_json(x);
            j["bits"] = Json::array();
            for (const auto b : pv.bits) j["bits"].push_back(static_cast<int>(b));
            j["length"] = pv.length();
            j["q"] = to_json(q);
            out << j.dump() << '\n';
            break;
        }
        case OutputFormat::Csv:
            out << "index,bit\n";
            for (std::size_t i = 0; i < pv.bits.size(); ++i) out << i << ',' << static_cast<int>(pv.bits[i]) << '\n';
            break;
    }
    return kExitOk;
}

int cmd_real(std::ostream& out, const std::string& z_text, std::uint64_t steps, const std::string& variant_name,
             double escape_bound, OutputFormat format) {
    double z0 = 0;
    try {
        std::size_t used = 0;
        z0 = std::stod(z_text, &used);
        if (used != z_text.size()) throw std::invalid_argument(z_text);
    } catch (const std::exception&) {
        throw UsageError("z: expected a real number, got '" + z_text + "'");
    }
    if (!std::isfinite(z0)) throw UsageError("z must be finite");
    if (steps == 0) throw UsageError("--steps must be >= 1");
    const auto variant = parse_variant(variant_name);
    if (variant == Variant::Syracuse) throw UsageError("real orbits support the standard and shortcut variants");
    const auto orbit = real_orbit(z0, variant, steps, escape_bound);
    switch (format) {
        case OutputFormat::Text: {
            out << "variant=" << to_string(variant) << '\n' << "values=";
            for (std::size_t i = 0; i < orbit.values.size(); ++i) out << (i ? "," : "") << fmt_double(orbit.values[i]);
            out << '\n' << "escaped=" << (orbit.escaped ? "true" : "false") << '\n';
            break;
        }
        case OutputFormat::Json: {
            Json j;
            j["variant"] = to_string(variant);
            j["values"] = orbit.values;
            j["escaped"] = orbit.escaped;
            out << j.dump() << '\n';
            break;
        }
        case OutputFormat::Csv:
            out << "step,z\n";
            for (std::size_t i = 0; i < orbit.values.size(); ++i) out << i << ',' << fmt_double(orbit.values[i]) << '\n';
            break;
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string lo = "2";
    std::string hi;
    std::string mode = "drop";
    unsigned workers = 0;
    std::string checkpoint;
    std::uint64_t chunk_size = kDefaultChunkSize;
    std::uint64_t max_steps = kDefaultVerifySteps;
    std::uint64_t checkpoint_interval = 1;
    std::uint64_t stop_after_chunks = 0;
    std::string format = "text";
};

unsigned default_workers() {
    if (const char* env = std::getenv("COLLATZ_LAB_WORKERS")) {
        try {
            const auto v = std::stoul(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("COLLATZ_LAB_WORKERS must be a positive integer, got '") + env + "'");
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

int cmd_verify(std::ostream& out, const VerifyArgs& a) {
    if (a.format == "csv") throw UsageError("verify supports --format text or json");
    VerifyConfig cfg;
    cfg.lo = parse_natural(a.lo, "--lo");
    cfg.hi = parse_natural(a.hi, "--hi");
    if (cfg.lo < Natural(2) || cfg.hi < cfg.lo) throw UsageError("verify needs 2 <= lo <= hi");
    cfg.mode = parse_verify_mode(a.mode);
    cfg.worker_count = a.workers != 0 ? a.workers : default_workers();
    cfg.chunk_size = a.chunk_size;
    cfg.max_steps = a.max_steps;
    cfg.checkpoint_interval = a.checkpoint_interval;
    if (!a.checkpoint.empty()) cfg.checkpoint_path = a.checkpoint;
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    RunControls controls;
    if (a.stop_after_chunks != 0) controls.stop_after_chunks = a.stop_after_chunks;

    const auto report = verify_range(cfg, controls);
    out << (a.format == "json" ? render_report_json(report) + "\n" : render_report_text(report));
    return report.all_converged() ? kExitOk : kExitViolation;
}

int cmd_props(std::ostream& out, std::ostream& err, const std::string& suite, std::uint64_t bound) {
    const auto names = prop_suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        err << "unknown suite '" << suite << "'; valid suites:";
        for (const auto n : names) err << ' ' << n;
        err << '\n';
        return kExitUsage;
    }
    const auto r = run_prop_suite(suite, bound);
    out << "suite=" << r.suite << '\n' << "bound=" << bound << '\n' << "cases=" << r.cases_checked << '\n';
    if (r.passed()) {
        out << "result=pass\n";
        return kExitOk;
    }
    out << "result=fail\n" << "first_counterexample=" << *r.first_counterexample << '\n';
    return kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Collatz map toolkit: trajectories, stage sets, inverse trees, parity vectors and range verification",
                 "collatz_lab"};
    app.require_subcommand(1);

    std::function<int()> action;

    // trajectory
    std::string traj_n;
    std::string traj_variant = "standard";
    std::uint64_t traj_max = kDefaultTrajectorySteps;
    bool traj_past_one = false;
    std::string traj_format = "text";
    auto* traj = app.add_subcommand("trajectory", "Print the orbit of n");
    traj->add_option("n", traj_n, "Start value (decimal)")->required();
    traj->add_option("--variant", traj_variant, "standard | shortcut | syracuse")
        ->check(CLI::IsMember({"standard", "shortcut", "syracuse"}));
    traj->add_option("--max-steps", traj_max, "Step budget");
    traj->add_flag("--continue-past-one", traj_past_one, "Keep iterating through the 1-4-2 cycle");
    add_format(traj, traj_format);
    traj->callback([&] {
        action = [&] { return cmd_trajectory(out, traj_n, traj_variant, traj_max, traj_past_one, to_format(traj_format)); };
    });

    // classify
    std::string cls_n;
    std::vector<std::string> cls_range;
    std::uint64_t cls_max = kDefaultTrajectorySteps;
    std::string cls_format = "text";
    auto* cls = app.add_subcommand("classify", "Locate the B -> A -> 4^m -> 1 stages on trajectories");
    cls->add_option("n", cls_n, "Single start value");
    cls->add_option("--range", cls_range, "lo hi (inclusive)")->expected(2);
    cls->add_option("--max-steps", cls_max, "Step budget per trajectory");
    add_format(cls, cls_format);
    cls->callback([&] { action = [&] { return cmd_classify(out, cls_n, cls_range, cls_max, to_format(cls_format)); }; });

    // sets
    std::string sets_name = "a";
    std::uint64_t sets_count = 6;
    std::string sets_format = "text";
    auto* sets = app.add_subcommand("sets", "List the first elements of set A or B");
    sets->add_option("--set", sets_name, "a | b")->check(CLI::IsMember({"a", "b"}));
    sets->add_option("--count", sets_count, "Number of elements");
    add_format(sets, sets_format);
    sets->callback([&] { action = [&] { return cmd_sets(out, sets_name, sets_count, to_format(sets_format)); }; });

    // tree
    std::string tree_root = "1";
    std::uint64_t tree_depth = 4;
    bool tree_include_one = false;
    std::string tree_format = "text";
    auto* tree = app.add_subcommand("tree", "Breadth-first inverse-map tree");
    tree->add_option("--root", tree_root, "Root value");
    tree->add_option("--depth", tree_depth, "Number of backward levels");
    tree->add_flag("--include-one", tree_include_one, "Keep 1 as the odd preimage of 4");
    add_format(tree, tree_format);
    tree->callback([&] {
        action = [&] { return cmd_tree(out, tree_root, tree_depth, tree_include_one, to_format(tree_format)); };
    });

    // parity
    std::string par_x;
    std::uint64_t par_bits = kDefaultParityBits;
    std::string par_format = "text";
    auto* par = app.add_subcommand("parity", "Truncated parity vector of the shortcut map");
    par->add_option("x", par_x, "Source value")->required();
    par->add_option("--bits", par_bits, "Truncation length k");
    add_format(par, par_format);
    par->callback([&] { action = [&] { return cmd_parity(out, par_x, par_bits, to_format(par_format)); }; });

    // real
    std::string real_z;
    std::uint64_t real_steps = 10;
    std::string real_variant = "standard";
    double real_bound = kDefaultEscapeBound;
    std::string real_format = "text";
    auto* real = app.add_subcommand("real", "Iterate the smooth real extension");
    real->add_option("z", real_z, "Starting point")->required();
    real->add_option("--steps", real_steps, "Number of steps");
    real->add_option("--variant", real_variant, "standard | shortcut")->check(CLI::IsMember({"standard", "shortcut"}));
    real->add_option("--escape-bound", real_bound, "Stop once |z| exceeds this");
    add_format(real, real_format);
    real->callback([&] {
        action = [&] { return cmd_real(out, real_z, real_steps, real_variant, real_bound, to_format(real_format)); };
    });

    // verify
    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Verify convergence over an integer range");
    ver->add_option("--lo", va.lo, "Lowest start (>= 2)");
    ver->add_option("--hi", va.hi, "Highest start")->required();
    ver->add_option("--mode", va.mode, "drop | full")
        ->check(CLI::IsMember({"drop", "full", "drop-below-start", "full-to-one"}));
    ver->add_option("--workers", va.workers, "Worker threads (default: $COLLATZ_LAB_WORKERS or hardware)");
    ver->add_option("--checkpoint", va.checkpoint, "Checkpoint file; resumes when it exists");
    ver->add_option("--chunk-size", va.chunk_size, "Numbers per chunk");
    ver->add_option("--max-steps", va.max_steps, "Step budget per number");
    ver->add_option("--checkpoint-interval", va.checkpoint_interval, "Chunks between checkpoint writes");
    ver->add_option("--stop-after-chunks", va.stop_after_chunks, "Stop after this many chunks (0 = run to the end)");
    ver->add_option("--format", va.format, "text | json")->check(CLI::IsMember({"text", "json", "csv"}));
    ver->callback([&] { action = [&] { return cmd_verify(out, va); }; });

    // props
    std::string props_suite;
    std::uint64_t props_bound = 1000;
    auto* props = app.add_subcommand("props", "Run a named invariant suite");
    props->add_option("--suite", props_suite, "syracuse | mod3 | pipeline | isometry | realagree")->required();
    props->add_option("--bound", props_bound, "Upper bound for the suite");
    props->callback([&] { action = [&] { return cmd_props(out, err, props_suite, props_bound); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CheckpointError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace collatz

// SPDX-License-Identifier: Apache-2.0
#include "numgrid/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "numgrid/atlas_io.hpp"
#include "numgrid/certify.hpp"
#include "numgrid/digitmap.hpp"
#include "numgrid/dynamics.hpp"
#include "numgrid/grid_io.hpp"
#include "numgrid/gridsort.hpp"

namespace numgrid::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Raised for bad arguments discovered after CLI11 parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::uint32_t base = 10;
    std::uint32_t exponent = 2;
    bool json = false;
    std::string cache_dir;
    std::uint64_t max_steps = 0;  // 0: derive from the brute bound
    unsigned workers = 1;
};

void add_system_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--base", opts.base, "Digit base (>= 2)")->capture_default_str();
    cmd->add_option("--exp", opts.exponent, "Digit exponent (>= 1)")->capture_default_str();
    cmd->add_flag("--json", opts.json, "Emit one canonical JSON record");
}

void add_atlas_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--cache-dir", opts.cache_dir, "Directory holding atlas cache files");
    cmd->add_option("--workers", opts.workers, "Worker threads for enumeration and verification")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
}

DigitSystem make_system(const CommonOptions& opts) {
    try {
        return DigitSystem(opts.base, opts.exponent);
    } catch (const DigitSystemError& e) {
        throw UsageError(e.what());
    }
}

Natural parse_number(const std::string& text) {
    try {
        return Natural::parse(text);
    } catch (const NaturalError& e) {
        throw UsageError(e.what());
    }
}

json naturals_json(const std::vector<Natural>& values) {
    json out = json::array();
    for (const Natural& v : values) {
        out.push_back(v.to_string());
    }
    return out;
}

std::string join(const std::vector<Natural>& values, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out += sep;
        }
        out += values[i].to_string();
    }
    return out;
}

std::string describe(const Cycle& c) {
    if (c.is_fixed_point()) {
        return "fixed point " + c.minimum().to_string();
    }
    return "cycle [" + join(c.members(), ", ") + "] (length " + std::to_string(c.length()) + ")";
}

json cycle_json(const Cycle& c) {
    return {{"kind", c.is_fixed_point() ? "fixed_point" : "cycle"}, {"members", naturals_json(c.members())}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Loads a cached atlas, falling back to enumeration. Cache problems are
// reported on err and never fail the command.
AttractorAtlas obtain_atlas(const DigitSystem& sys, const CommonOptions& opts, std::ostream& err) {
    fs::path path;
    if (!opts.cache_dir.empty()) {
        path = fs::path(opts.cache_dir) / atlas_cache_file_name(sys);
        std::error_code ec;
        if (fs::exists(path, ec)) {
            try {
                std::ifstream file(path, std::ios::binary);
                std::stringstream buffer;
                buffer << file.rdbuf();
                AttractorAtlas cached = deserialize_atlas(buffer.str(), sys);
                const VerificationReport complete =
                    verify_range(sys, cached, Natural(0), cached.certificate().brute_bound,
                                 VerifyOptions{opts.workers, std::nullopt});
                if (!complete.ok) {
                    throw AtlasCacheError("cached atlas is incomplete: " + complete.message);
                }
                return cached;
            } catch (const std::exception& e) {
                err << "warning: ignoring atlas cache " << path.string() << ": " << e.what() << "\n";
            }
        }
    }

    AttractorAtlas atlas = enumerate_attractors(sys, EnumerateOptions{opts.workers});

    if (!path.empty()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        const fs::path tmp = path.string() + ".tmp";
        {
            std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
            file << serialize_atlas(atlas);
            file.close();
            if (!file) {
                err << "warning: could not write atlas cache " << path.string() << "\n";
                fs::remove(tmp, ec);
                return atlas;
            }
        }
        fs::rename(tmp, path, ec);
        if (ec) {
            err << "warning: could not write atlas cache " << path.string() << ": " << ec.message() << "\n";
            fs::remove(tmp, ec);
        }
    }
    return atlas;
}

// ---- traj / classify / happy ---------------------------------------------

int cmd_traj(const std::string& number, const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    const DigitSystem sys = make_system(opts);
    const Natural n = parse_number(number);
    std::uint64_t budget = opts.max_steps;
    if (budget == 0) {
        budget = default_max_steps(n, sys, brute_bound(sys, digit_reduction_threshold(sys)));
    }
    Trajectory t = [&] {
        try {
            return step_until_repeat(n, sys, budget);
        } catch (const StepBudgetExceeded& e) {
            err << "error: " << e.what() << " (raise --max-steps)\n";
            throw;
        }
    }();

    if (opts.json) {
        out << dump({
            {"entry_index", t.entry_index},
            {"start", t.start.to_string()},
            {"steps", naturals_json(t.steps)},
            {"terminal", cycle_json(t.terminal)},
            {"transient_length", t.transient_length()},
        });
        return kExitOk;
    }
    out << "start: " << t.start << "\n";
    out << "orbit: " << join(t.steps, " -> ") << " -> " << t.steps[t.entry_index] << "\n";
    out << "transient: " << t.transient_length() << "\n";
    out << "terminal: " << describe(t.terminal) << "\n";
    return kExitOk;
}

int cmd_classify(const std::string& number, const CommonOptions& opts, bool happy_only, std::ostream& out,
                 std::ostream& err) {
    const DigitSystem sys = make_system(opts);
    const Natural n = parse_number(number);
    const AttractorAtlas atlas = obtain_atlas(sys, opts, err);
    const std::optional<std::uint64_t> budget =
        opts.max_steps == 0 ? std::nullopt : std::optional<std::uint64_t>(opts.max_steps);
    const Classification c = classify_detailed(n, sys, atlas, budget, false);
    const Cycle& target = atlas.attractor(c.id);

    if (happy_only) {
        const bool happy = target.is_fixed_point() && target.minimum() == Natural(1);
        if (opts.json) {
            out << dump({{"happy", happy}, {"n", n.to_string()}});
        } else {
            out << n << (happy ? " is happy" : " is not happy") << "\n";
        }
        return kExitOk;
    }
    if (opts.json) {
        out << dump({{"attractor", cycle_json(target)}, {"n", n.to_string()}, {"steps", c.steps}});
    } else {
        out << n << " -> " << describe(target) << " after " << c.steps << " steps\n";
    }
    return kExitOk;
}

// ---- attractors / certify -------------------------------------------------

int cmd_attractors(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    const DigitSystem sys = make_system(opts);
    const AttractorAtlas atlas = obtain_atlas(sys, opts, err);
    if (opts.json) {
        out << serialize_atlas(atlas);
        return kExitOk;
    }
    const DescentCertificate& cert = atlas.certificate();
    out << "system: base " << sys.base() << ", exponent " << sys.exponent() << "\n";
    out << "p0: " << cert.p0 << "\n";
    out << "brute bound: " << cert.brute_bound << "\n";
    out << "max transient: " << cert.max_transient << "\n";
    out << "fixed points: " << join(atlas.fixed_points(), ", ") << "\n";
    const auto cycles = atlas.cycles();
    out << "cycles: " << cycles.size() << "\n";
    for (const Cycle& c : cycles) {
        out << "  [" << join(c.members(), ", ") << "] (length " << c.length() << ")\n";
    }
    return kExitOk;
}

struct CertifyOptions {
    std::string lo;
    std::string hi;
    std::uint32_t p_max = 0;
    std::string drop_attractor;
};

int cmd_certify(const CommonOptions& opts, const CertifyOptions& copts, std::ostream& out, std::ostream& err) {
    const DigitSystem sys = make_system(opts);
    const std::uint32_t p0 = digit_reduction_threshold(sys);
    const Natural bound = brute_bound(sys, p0);
    const std::uint32_t p_max = copts.p_max == 0 ? std::max<std::uint32_t>(100, p0) : copts.p_max;
    if (p_max < p0) {
        throw UsageError("--p-max must be >= p0 = " + std::to_string(p0));
    }
    const Natural lo = copts.lo.empty() ? Natural(0) : parse_number(copts.lo);
    const Natural hi = copts.hi.empty() ? bound : parse_number(copts.hi);
    if (lo > hi) {
        throw UsageError("--lo must not exceed --hi");
    }

    std::vector<VerificationReport> reports;
    auto record = [&](VerificationReport r) {
        reports.push_back(std::move(r));
        return reports.back().ok;
    };

    auto run_stages = [&] {
        if (!record(threshold_inequality_check(sys, p_max))) {
            return;
        }
        if (!record(forward_invariance_check(sys, bound))) {
            return;
        }

        std::optional<AttractorAtlas> atlas;
        try {
            atlas = obtain_atlas(sys, opts, err);
        } catch (const CertificationError& e) {
            VerificationReport r;
            r.ok = false;
            r.stage = "enumerate";
            r.message = e.what();
            record(std::move(r));
            return;
        }
        {
            VerificationReport r;
            r.stage = "enumerate";
            r.checked = *bound.to_u64() + 1;
            r.max_transient = atlas->certificate().max_transient;
            r.message = std::to_string(atlas->fixed_points().size()) + " fixed points, " +
                        std::to_string(atlas->cycles().size()) + " cycles over [0, " + bound.to_string() + "]";
            record(std::move(r));
        }

        if (!copts.drop_attractor.empty()) {
            const auto id = atlas->find_member(parse_number(copts.drop_attractor));
            if (!id) {
                throw UsageError("--test-drop-attractor: " + copts.drop_attractor + " is not an attractor member");
            }
            atlas = atlas->without(*id);
        }

        const VerifyOptions vopts{opts.workers, opts.max_steps == 0 ? std::nullopt
                                                                     : std::optional<std::uint64_t>(opts.max_steps)};
        if (!record(verify_range(sys, *atlas, lo, hi, vopts))) {
            return;
        }

        if (sys == DigitSystem(10, 2)) {
            VerificationReport low = verify_range(sys, *atlas, Natural(0), Natural(99), vopts);
            low.stage = "two_digit_brute_force";
            if (low.ok) {
                low.message = std::to_string(low.checked) + " values in [0,99] verified";
            }
            if (!record(std::move(low))) {
                return;
            }
            VerificationReport identity = three_digit_identity_check();
            if (!record(std::move(identity))) {
                return;
            }
            VerificationReport descent = verify_range(sys, *atlas, Natural(100), Natural(999), vopts);
            descent.stage = "three_digit_descent";
            if (descent.ok && !descent.all_descend) {
                descent.ok = false;
                descent.message = "f(n) <= n - 1 fails somewhere in [100, 999]";
            } else if (descent.ok) {
                descent.message = "f(n) <= n - 1 for all " + std::to_string(descent.checked) + " values in [100, 999]";
            }
            record(std::move(descent));
        }
    };
    run_stages();

    const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.ok; });
    if (opts.json) {
        json stages = json::array();
        for (const auto& r : reports) {
            stages.push_back({
                {"checked", r.checked},
                {"counterexample", r.counterexample ? json(r.counterexample->to_string()) : json(nullptr)},
                {"max_transient", r.max_transient},
                {"message", r.message},
                {"ok", r.ok},
                {"stage", r.stage},
            });
        }
        out << dump({{"base", sys.base()}, {"exponent", sys.exponent()}, {"ok", ok}, {"stages", stages}});
    } else {
        for (const auto& r : reports) {
            out << (r.ok ? "ok   " : "FAIL ") << r.stage << ": " << r.message << "\n";
        }
        out << (ok ? "certified" : "certification failed") << ": base " << sys.base() << ", exponent "
            << sys.exponent() << "\n";
    }
    return ok ? kExitOk : kExitVerificationFailed;
}

// ---- grid sort / grid verify ----------------------------------------------

struct GridSortOptions {
    std::string path;
    std::string mode = "both";
    bool trace = false;
    bool json = false;
};

json grid_json(const Grid& g) { return g.to_rows(); }

int cmd_grid_sort(const GridSortOptions& gopts, std::istream& in, std::ostream& out) {
    Grid g = [&] {
        if (gopts.path.empty() || gopts.path == "-") {
            return read_grid(in);
        }
        std::ifstream file(gopts.path, std::ios::binary);
        if (!file) {
            throw UsageError("cannot open " + gopts.path);
        }
        return read_grid(file);
    }();

    std::vector<std::pair<std::string, Grid>> results;
    if (gopts.mode == "rows") {
        results.emplace_back("rows", sort_rows(g));
    } else if (gopts.mode == "cols") {
        results.emplace_back("cols", sort_cols(g));
    } else if (gopts.mode == "both") {
        Grid rows = sort_rows(g);
        Grid cols = sort_cols(rows);
        results.emplace_back("rows", std::move(rows));
        results.emplace_back("cols", std::move(cols));
    } else {
        if (gopts.trace) {
            for (const MergeSnapshot& s : trace_bubble(g)) {
                results.emplace_back("pass " + std::to_string(s.pass) + ", rows " + std::to_string(s.upper + 1) +
                                         "-" + std::to_string(s.upper + 2),
                                     s.grid);
            }
        }
        BubbleResult b = bubble_column_sort(g);
        results.emplace_back("bubble, " + std::to_string(b.passes) + " passes", std::move(b.grid));
    }

    if (gopts.json) {
        json steps = json::array();
        for (const auto& [label, grid] : results) {
            steps.push_back({{"grid", grid_json(grid)}, {"label", label}});
        }
        out << dump({{"input", grid_json(g)}, {"mode", gopts.mode}, {"results", steps}});
        return kExitOk;
    }
    const bool labelled = results.size() > 1;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (i != 0) {
            out << "\n";
        }
        if (labelled) {
            out << "# " << results[i].first << "\n";
        }
        out << format_grid(results[i].second);
    }
    return kExitOk;
}

struct GridVerifyOptions {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    std::int64_t min = -1000;
    std::int64_t max = 1000;
    bool exhaustive = false;
    std::int64_t alphabet = 3;
    bool json = false;
};

int cmd_grid_verify(const GridVerifyOptions& v, std::ostream& out) {
    if (v.min > v.max) {
        throw UsageError("--min must not exceed --max");
    }
    if (v.exhaustive && (v.rows == 0 || v.cols == 0)) {
        throw UsageError("--exhaustive needs --rows and --cols");
    }

    std::uint64_t checked = 0;
    std::optional<std::string> failure;
    std::optional<Grid> witness;
    std::uint64_t witness_index = 0;

    if (v.exhaustive) {
        double total = 1;
        for (std::size_t i = 0; i < v.rows * v.cols; ++i) {
            total *= static_cast<double>(v.alphabet);
        }
        if (total > 1e8) {
            throw UsageError("exhaustive enumeration would visit more than 1e8 grids");
        }
        for_each_grid(v.rows, v.cols, v.alphabet, [&](const Grid& g) {
            failure = check_grid_properties(g);
            if (failure) {
                witness = g;
                witness_index = checked;
                return false;
            }
            ++checked;
            return true;
        });
    } else {
        GridGenerator gen(v.seed);
        for (std::uint64_t i = 0; i < v.trials; ++i) {
            const auto rows = v.rows != 0 ? v.rows : static_cast<std::size_t>(gen.uniform(1, 20));
            const auto cols = v.cols != 0 ? v.cols : static_cast<std::size_t>(gen.uniform(1, 20));
            Grid g = gen.next(rows, cols, v.min, v.max);
            failure = check_grid_properties(g);
            if (failure) {
                witness = std::move(g);
                witness_index = i;
                break;
            }
            ++checked;
        }
    }

    const std::string corpus = v.exhaustive ? "exhaustive " + std::to_string(v.rows) + "x" + std::to_string(v.cols) +
                                                  " over alphabet " + std::to_string(v.alphabet)
                                            : "random, seed " + std::to_string(v.seed);
    if (v.json) {
        json record = {{"checked", checked}, {"corpus", corpus}, {"ok", !failure}};
        if (failure) {
            record["counterexample"] = {{"grid", grid_json(*witness)}, {"index", witness_index}, {"property", *failure}};
        }
        out << dump(record);
    } else if (failure) {
        out << "counterexample (" << corpus << ", index " << witness_index << "): " << *failure << "\n"
            << format_grid(*witness);
    } else {
        out << "verified " << checked << " grids (" << corpus << "): no counterexamples\n";
    }
    return failure ? kExitVerificationFailed : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Digit-power-sum dynamics and row/column grid sorting"};
    app.name(args.empty() ? "numgrid" : args.front());
    app.require_subcommand(1);

    CommonOptions common;
    std::string number;

    auto* traj = app.add_subcommand("traj", "Print the orbit of N up to its first repeat");
    traj->add_option("n", number, "Start value (decimal, any length)")->required();
    add_system_options(traj, common);
    traj->add_option("--max-steps", common.max_steps, "Step budget (default: derived from the brute bound)");

    auto* classify_cmd = app.add_subcommand("classify", "Name the attractor that N reaches");
    classify_cmd->add_option("n", number, "Start value (decimal, any length)")->required();
    add_system_options(classify_cmd, common);
    add_atlas_options(classify_cmd, common);
    classify_cmd->add_option("--max-steps", common.max_steps, "Step budget");

    auto* happy = app.add_subcommand("happy", "Report whether N reaches the fixed point 1");
    happy->add_option("n", number, "Start value (decimal, any length)")->required();
    add_system_options(happy, common);
    add_atlas_options(happy, common);
    happy->add_option("--max-steps", common.max_steps, "Step budget");

    auto* attractors = app.add_subcommand("attractors", "Enumerate every fixed point and cycle");
    add_system_options(attractors, common);
    add_atlas_options(attractors, common);

    CertifyOptions copts;
    auto* certify = app.add_subcommand("certify", "Machine-check that the atlas is complete");
    add_system_options(certify, common);
    add_atlas_options(certify, common);
    certify->add_option("--max-steps", common.max_steps, "Per-value step budget");
    certify->add_option("--lo", copts.lo, "Start of the verified range (default 0)");
    certify->add_option("--hi", copts.hi, "End of the verified range (default: brute bound)");
    certify->add_option("--p-max", copts.p_max, "Largest digit count in the threshold check (default max(100, p0))");
    certify->add_option("--test-drop-attractor", copts.drop_attractor,
                        "Test hook: remove the attractor containing this value before verifying");

    auto* grid = app.add_subcommand("grid", "Row/column sorting of integer grids");
    grid->require_subcommand(1);

    GridSortOptions gsort;
    auto* grid_sort = grid->add_subcommand("sort", "Sort a grid read from FILE or stdin");
    grid_sort->add_option("file", gsort.path, "Grid file ('-' or omitted: stdin)");
    grid_sort->add_option("--mode", gsort.mode, "rows | cols | both | bubble")
        ->check(CLI::IsMember({"rows", "cols", "both", "bubble"}))
        ->capture_default_str();
    grid_sort->add_flag("--trace", gsort.trace, "With --mode bubble, print the grid after every merge");
    grid_sort->add_flag("--json", gsort.json, "Emit one JSON record");

    GridVerifyOptions gverify;
    auto* grid_verify = grid->add_subcommand("verify", "Property-check the row/column sorting theorem");
    grid_verify->add_option("--rows", gverify.rows, "Rows (0: random in [1, 20] per grid)");
    grid_verify->add_option("--cols", gverify.cols, "Columns (0: random in [1, 20] per grid)");
    grid_verify->add_option("--trials", gverify.trials, "Random grids to check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    grid_verify->add_option("--seed", gverify.seed, "Generator seed (mt19937_64)")->capture_default_str();
    grid_verify->add_option("--min", gverify.min, "Smallest entry")->capture_default_str();
    grid_verify->add_option("--max", gverify.max, "Largest entry")->capture_default_str();
    grid_verify->add_flag("--exhaustive", gverify.exhaustive, "Enumerate every grid over the alphabet instead");
    grid_verify->add_option("--alphabet", gverify.alphabet, "Entries are drawn from [0, alphabet)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    grid_verify->add_flag("--json", gverify.json, "Emit one JSON record");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*traj) {
            return cmd_traj(number, common, out, err);
        }
        if (*classify_cmd) {
            return cmd_classify(number, common, false, out, err);
        }
        if (*happy) {
            return cmd_classify(number, common, true, out, err);
        }
        if (*attractors) {
            return cmd_attractors(common, out, err);
        }
        if (*certify) {
            return cmd_certify(common, copts, out, err);
        }
        if (*grid_sort) {
            return cmd_grid_sort(gsort, in, out);
        }
        if (*grid_verify) {
            return cmd_grid_verify(gverify, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GridParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const StepBudgetExceeded& e) {
        return kExitVerificationFailed;
    } catch (const CertificationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
    return kExitUsage;
}

}  // namespace numgrid::cli

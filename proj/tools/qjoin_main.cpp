#include "qjoin/checks.hpp"
#include "qjoin/corep.hpp"
#include "qjoin/group.hpp"
#include "qjoin/suq2.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>

using namespace qjoin;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const Json& j, const std::string& path) {
    if (!path.empty()) write_json_atomic(j, path);
}

MatrixCorep pick_unitary(const std::string& which) {
    MatrixCorep u = fundamental_corep();
    return which == "U" ? u : u.adjoint();
}

struct CheckArgs {
    std::string suite = "all";
    SuiteConfig cfg;
    std::string json_path;
    std::string grid_csv;
};

int run_check(CheckArgs& args) {
    args.cfg.precision = precision_from_env();
    if (!args.grid_csv.empty()) args.cfg.grid = parse_grid(args.grid_csv);
    auto t0 = std::chrono::steady_clock::now();
    Report rep = run_suite(args.suite, args.cfg);
    std::cout << "suite " << rep.suite << "\n" << report_text(rep, seconds_since(t0));
    emit(report_to_json(rep), args.json_path);
    return rep.passed() ? 0 : 1;
}

struct IndexArgs {
    std::string which = "Ustar";
    double q0 = 0.5;
    int n = 20, k = 20;
    double threshold = 1e-8;
    std::vector<int> sweep;
    std::string json_path;
};

int run_index(IndexArgs& args) {
    Precision prec = precision_from_env();
    MatrixCorep u = pick_unitary(args.which);
    const char* label = args.which == "U" ? "index(U)" : "index(U*)";
    if (!args.sweep.empty()) {
        SweepReport sweep = convergence_sweep(u, args.q0, args.sweep, args.threshold, prec);
        for (const auto& e : sweep.entries)
            std::printf("  n = k = %-3d  %s = %+d  (kernel %d, cokernel %d)  [%s]\n", e.size,
                        label, e.result.index, e.result.kernel, e.result.cokernel,
                        e.result.certified ? "certified" : "uncertified");
        if (sweep.stable)
            std::printf("stable: %s = %+d across %zu window sizes\n", label, sweep.index,
                        sweep.entries.size());
        else
            std::printf("UNSTABLE: %s\n", sweep.note.c_str());
        Json j = sweep_report_to_json(sweep);
        j["unitary"] = args.which;
        emit(j, args.json_path);
        return sweep.ok() ? 0 : 1;
    }
    IndexResult res =
        compute_unitary_index(u, args.q0, args.n, args.k, args.threshold, prec);
    std::printf("%s = %+d  (kernel %d, cokernel %d)\n", label, res.index, res.kernel,
                res.cokernel);
    std::printf("window n = %d, k = %d, q0 = %g, threshold = %g, precision = %s\n",
                res.n_bound, res.k_bound, res.q0, res.threshold, res.precision.c_str());
    if (std::isinf(res.gap_ratio))
        std::printf("gap ratio: infinite (no singular value was discarded)\n");
    else
        std::printf("gap ratio: %.3g\n", res.gap_ratio);
    std::printf("%s\n", res.certified ? "certified" : "UNCERTIFIED");
    Json j = index_result_to_json(res);
    j["unitary"] = args.which;
    emit(j, args.json_path);
    return res.certified ? 0 : 1;
}

struct ClassicArgs {
    std::string group = "z2";
    std::string op = "census";
    std::string grid_csv = "0,1/2,1";
    int stages = 3;
    std::string json_path;
};

int run_classic(ClassicArgs& args) {
    auto grid = parse_grid(args.grid_csv);
    if (args.op == "census") {
        CensusReport c = iterated_join_sphere_census(args.stages, grid);
        for (const auto& s : c.stages) {
            std::printf("  stage %d: %d classes (", s.stage, s.total);
            for (size_t i = 0; i < s.layer_counts.size(); ++i)
                std::printf(i ? " %d" : "%d", s.layer_counts[i]);
            std::printf(")%s\n", s.free ? "" : "  NOT FREE");
        }
        std::printf("%s\n", c.all_free ? "all stages free" : "FAILED: a stage lost freeness");
        emit(census_to_json(c), args.json_path);
        return c.all_free ? 0 : 1;
    }
    GroupTable g = GroupTable::by_name(args.group);
    FiniteGSpace x = FiniteGSpace::regular(g);
    if (args.op == "join" || args.op == "joinprime") {
        JoinModel m = args.op == "join" ? build_join(x, x, grid) : build_join_prime(x, grid);
        bool free = check_free(m);
        std::printf("%s over %s: %d classes, layers (", args.op.c_str(), g.name.c_str(),
                    m.classes);
        auto counts = m.layer_counts();
        for (size_t i = 0; i < counts.size(); ++i) std::printf(i ? " %d" : "%d", counts[i]);
        std::printf("), %s\n", free ? "free" : "NOT FREE");
        emit(join_model_to_json(m), args.json_path);
        return free ? 0 : 1;
    }
    // op == "eq6" or its alias "compare"
    Eq6Report e = check_map_eq6(x, grid);
    std::printf("model comparison over %s: %s (join %d classes, primed %d classes)\n",
                g.name.c_str(), e.ok() ? "match" : "MISMATCH", e.classes_join,
                e.classes_prime);
    emit(eq6_to_json(e), args.json_path);
    return e.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checks for the q-deformed join construction and its models"};
    app.require_subcommand(1);

    CheckArgs check_args;
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    auto* check = app.add_subcommand("check", "run a verification suite");
    check->add_option("suite", check_args.suite, "one of: hopf, corep, join, idempotent, index, classic, all")
        ->required()
        ->check(CLI::IsMember(suites));
    check->add_option("--samples", check_args.cfg.samples, "random samples per check");
    check->add_option("--seed", check_args.cfg.seed, "random seed");
    check->add_option("--confluence-trials", check_args.cfg.confluence_trials,
                      "random words for the rewriting check");
    check->add_option("--confluence-len", check_args.cfg.confluence_max_len,
                      "maximum word length for the rewriting check");
    check->add_option("--q", check_args.cfg.q0, "deformation value in (0,1)");
    check->add_option("--n", check_args.cfg.n_bound, "radial window bound");
    check->add_option("--k", check_args.cfg.k_bound, "torus window bound");
    check->add_option("--threshold", check_args.cfg.threshold, "kernel threshold");
    check->add_option("--grid", check_args.grid_csv, "time grid, e.g. 0,1/2,1");
    check->add_option("--json", check_args.json_path, "write the report here");

    IndexArgs index_args;
    auto* index = app.add_subcommand("index", "compute the compression index with its gap certificate");
    index->add_option("--unitary", index_args.which, "U or Ustar")
        ->check(CLI::IsMember({"U", "Ustar"}));
    index->add_option("--q", index_args.q0, "deformation value in (0,1)");
    index->add_option("--n", index_args.n, "radial window bound");
    index->add_option("--k", index_args.k, "torus window bound");
    index->add_option("--threshold", index_args.threshold, "kernel threshold");
    index->add_option("--sweep", index_args.sweep, "window sizes, e.g. 20,30,40")
        ->delimiter(',');
    index->add_option("--json", index_args.json_path, "write the result here");

    ClassicArgs classic_args;
    auto* classic = app.add_subcommand("classic", "finite quotient models of the join");
    classic->add_option("--group", classic_args.group, "z2..z9, v4, or s3");
    classic->add_option("--op", classic_args.op,
                        "join, joinprime, eq6 (compare the two quotient models; alias: "
                        "compare), or census")
        ->check(CLI::IsMember({"join", "joinprime", "eq6", "compare", "census"}));
    classic->add_option("--grid", classic_args.grid_csv, "time grid, e.g. 0,1/2,1");
    classic->add_option("--stages", classic_args.stages, "census join count (at most 4)");
    classic->add_option("--json", classic_args.json_path, "write the result here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (check->parsed()) return run_check(check_args);
        if (index->parsed()) return run_index(index_args);
        return run_classic(classic_args);
    } catch (const GapError& e) {
        std::cerr << "gap certificate failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

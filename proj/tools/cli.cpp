#include "cli.hpp"

#include "dcpoly/dc_solver.hpp"
#include "dcpoly/errors.hpp"
#include "dcpoly/instance_io.hpp"
#include "dcpoly/instances.hpp"
#include "dcpoly/projection.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace dcpoly::cli {

using nlohmann::json;

namespace {

struct Options {
    std::string path;
    std::string algorithm = "both";
    double tol = 1e-6;
    std::string out;
    std::string kind;
    int n = 2;
    int m = 2;
    int attraction = 3;
    int repulsion = 2;
    std::uint64_t seed = 1;
    int max_n = 5;
};

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw io::SchemaError(path + ": cannot open for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Maps library exceptions to exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const io::SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnboundedError& e) {
        err << "unbounded: " << e.what() << '\n';
        return kUnbounded;
    } catch (const AssumptionError& e) {
        err << "assumption violated: " << e.what() << '\n';
        return kAssumption;
    } catch (const InfeasibleError& e) {
        err << "assumption violated: " << e.what() << '\n';
        return kAssumption;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

ExtendedReal side_value(const std::optional<ConvexOracle>& o, const std::optional<FunctionRep>& rep,
                        const Eigen::VectorXd& x) {
    if (o) return o->eval(x);
    return evaluate(*rep, x);
}

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
    const io::InstanceFile file = io::read_instance(opt.path);
    if (!file.g_rep && !file.h_rep) throw io::SchemaError(opt.path + ": $: solve needs g_rep or h_rep");
    const InstanceBundle b = io::to_bundle(file);
    const bool want_primal = opt.algorithm != "dual";
    const bool want_dual = opt.algorithm != "primal";
    const bool can_primal = b.g_rep && b.h_oracle;
    const bool can_dual = b.h_rep && b.g_oracle;
    if ((want_primal && !can_primal && opt.algorithm == "primal") ||
        (want_dual && !can_dual && opt.algorithm == "dual") || (!can_primal && !can_dual)) {
        throw AssumptionError("the instance does not provide the representation/oracle pair for the algorithm");
    }
    if (!(opt.tol > 0.0)) throw io::SchemaError("--tol must be positive");

    std::vector<std::pair<DcSolution, double>> runs;
    if (want_primal && can_primal) {
        const auto t0 = std::chrono::steady_clock::now();
        DcSolution s = solve_primal(*b.g_rep, *b.h_oracle);
        runs.emplace_back(std::move(s), seconds_since(t0));
    }
    if (want_dual && can_dual) {
        const auto t0 = std::chrono::steady_clock::now();
        DcSolution s = solve_dual(*b.h_rep, *b.g_oracle);
        runs.emplace_back(std::move(s), seconds_since(t0));
    }

    json doc{{"format_version", io::kFormatVersion}};
    json list = json::array();
    for (const auto& [s, secs] : runs) {
        const ExtendedReal g = side_value(b.g_oracle, b.g_rep, s.x_opt);
        const ExtendedReal h = side_value(b.h_oracle, b.h_rep, s.x_opt);
        if (g.is_infinite() || h.is_infinite() ||
            std::abs(g.value() - h.value() - s.value) > opt.tol * std::max(1.0, std::abs(s.value))) {
            err << "verification failed: " << to_string(s.algorithm) << " value " << s.value
                << " does not match g(x) - h(x)\n";
            return kMismatch;
        }
        list.push_back(io::to_json(s, secs));
    }
    const json& first = list.front();
    for (const char* key : {"value", "x", "certificate", "vertex_count", "wall_time_s"}) doc[key] = first[key];
    doc["runs"] = list;
    if (runs.size() == 2) doc["gap"] = toland_singer_gap(runs[0].first, runs[1].first);
    Sink sink(opt.out, out);
    sink.stream() << doc.dump(2) << '\n';
    return kOk;
}

int cmd_project(const Options& opt, std::ostream& out, std::ostream& err) {
    const io::InstanceFile file = io::read_instance(opt.path);
    if (!file.prep) throw io::SchemaError(opt.path + ": $.prep: missing field");
    VRep v(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0));
    try {
        v = project(*file.prep);
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kUnbounded;
    }
    Sink sink(opt.out, out);
    sink.stream() << io::to_json(v).dump(2) << '\n';
    return kOk;
}

io::InstanceFile generate(const Options& opt) {
    if (opt.kind == "ferrer") return io::ferrer_file(opt.n);
    if (opt.kind == "quadbox") return io::quadbox_file(opt.n, opt.m);
    if (opt.kind == "quadg") return io::quadg_file(opt.n);
    if (opt.kind == "location") {
        return io::location_file(random_location(opt.seed, opt.attraction, opt.repulsion, opt.n));
    }
    throw io::SchemaError("unknown instance kind \"" + opt.kind + "\"");
}

int cmd_gen(const Options& opt, std::ostream& out) {
    const io::InstanceFile f = generate(opt);
    Sink sink(opt.out, out);
    sink.stream() << io::to_json(f).dump(2) << '\n';
    return kOk;
}

struct BenchCase {
    std::string name;
    int n;
    int m;
    std::function<InstanceBundle()> build;
    bool primal;
    bool dual;
};

std::vector<BenchCase> bench_cases(const Options& opt) {
    std::vector<BenchCase> cases;
    if (opt.kind == "ferrer") {
        for (int n = 2; n <= opt.max_n; ++n) cases.push_back({"ferrer", n, 0, [n] { return build_ferrer(n); }, true, true});
    } else if (opt.kind == "quadg") {
        for (int n = 2; n <= opt.max_n; ++n) {
            cases.push_back({"quadg", n, 0, [n] { return build_quadratic_g(n); }, false, true});
        }
    } else if (opt.kind == "quadbox") {
        const int n = std::max(opt.max_n, 2);
        for (int m = 2; m <= std::min(n, 4); ++m) {
            cases.push_back({"quadbox", n, m, [n, m] { return build_quadratic_box(n, m); }, true, false});
        }
    } else if (opt.kind == "location") {
        // n and m columns hold the attraction and repulsion counts.
        for (int k = 1; k <= opt.max_n; ++k) {
            cases.push_back({"location", k, 2, [k, &opt] { return build_location(random_location(opt.seed, k, 2)); },
                             true, true});
        }
        for (int k = 1; k <= opt.max_n; ++k) {
            cases.push_back({"location", 2, k, [k, &opt] { return build_location(random_location(opt.seed, 2, k)); },
                             true, true});
        }
    } else {
        throw io::SchemaError("unknown bench suite \"" + opt.kind + "\"");
    }
    return cases;
}

std::string error_status(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const UnboundedError&) {
        return "unbounded";
    } catch (const AssumptionError&) {
        return "assumption";
    } catch (const InfeasibleError&) {
        return "infeasible";
    } catch (const NumericError&) {
        return "numeric";
    } catch (const std::exception&) {
        return "error";
    }
}

int cmd_bench(const Options& opt, std::ostream& out) {
    if (opt.max_n < 1) throw io::SchemaError("--max-n must be positive");
    const std::vector<BenchCase> cases = bench_cases(opt);
    Sink sink(opt.out, out);
    std::ostream& os = sink.stream();
    os << "instance,n,m,algorithm,vertices,value,seconds,status\n";
    os << std::setprecision(17);
    for (const BenchCase& c : cases) {
        for (const Algorithm a : {Algorithm::Primal, Algorithm::Dual}) {
            if ((a == Algorithm::Primal && !c.primal) || (a == Algorithm::Dual && !c.dual)) continue;
            const auto t0 = std::chrono::steady_clock::now();
            std::string status = "ok";
            DcSolution s;
            try {
                const InstanceBundle b = c.build();
                s = a == Algorithm::Primal ? solve_primal(*b.g_rep, *b.h_oracle) : solve_dual(*b.h_rep, *b.g_oracle);
            } catch (...) {
                status = error_status(std::current_exception());
            }
            const double secs = seconds_since(t0);
            os << c.name << ',' << c.n << ',' << c.m << ',' << to_string(a) << ',';
            if (status == "ok") {
                os << s.vertex_count << ',' << s.value;
            } else {
                os << ',';
            }
            os << ',' << secs << ',' << status << '\n';
            os.flush();
        }
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Global DC optimization with polyhedral components"};
    app.require_subcommand(1);
    Options opt;

    auto* solve = app.add_subcommand("solve", "Solve min g - h for an instance file");
    solve->add_option("path", opt.path, "Instance file")->required();
    solve->add_option("--algorithm", opt.algorithm, "primal, dual or both")
        ->check(CLI::IsMember({"primal", "dual", "both"}));
    solve->add_option("--tol", opt.tol, "Re-verification tolerance");
    solve->add_option("--out", opt.out, "Result file (default: stdout)");

    auto* proj = app.add_subcommand("project", "V-representation of the prep polyhedron of an instance file");
    proj->add_option("path", opt.path, "Instance file")->required();
    proj->add_option("--out", opt.out, "Result file (default: stdout)");

    auto* gen = app.add_subcommand("gen", "Write a generated instance file");
    gen->add_option("kind", opt.kind, "ferrer, quadbox, quadg or location")->required();
    gen->add_option("--n", opt.n, "Dimension");
    gen->add_option("--m", opt.m, "Rank of the quadbox matrix");
    gen->add_option("--attraction", opt.attraction, "Attraction points (location)");
    gen->add_option("--repulsion", opt.repulsion, "Repulsion points (location)");
    gen->add_option("--seed", opt.seed, "Random seed (location)");
    gen->add_option("--out", opt.out, "Output file (default: stdout)");

    auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
    bench->add_option("suite", opt.kind, "ferrer, quadg, quadbox or location")->required();
    bench->add_option("--max-n", opt.max_n, "Largest size parameter");
    bench->add_option("--seed", opt.seed, "Random seed (location)");
    bench->add_option("--out", opt.out, "CSV file (default: stdout)");

    std::vector<std::string> storage{"dcpoly"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    if (*solve) return guarded(err, [&] { return cmd_solve(opt, out, err); });
    if (*proj) return guarded(err, [&] { return cmd_project(opt, out, err); });
    if (*gen) return guarded(err, [&] { return cmd_gen(opt, out); });
    return guarded(err, [&] { return cmd_bench(opt, out); });
}

}  // namespace dcpoly::cli

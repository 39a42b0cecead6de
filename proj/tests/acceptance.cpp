// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "dcpoly/dc_solver.hpp"
#include "dcpoly/errors.hpp"
#include "dcpoly/function_rep.hpp"
#include "dcpoly/instances.hpp"
#include "dcpoly/poly_core.hpp"
#include "dcpoly/projection.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>

using namespace dcpoly;
using testing_util::mat;
using testing_util::same_column_sets;
using testing_util::vec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (!pass) detail << "; ";
        else detail.str("");
        pass = false;
        detail << why;
    }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    if (!o.pass) ++failures;
    std::printf("criterion %d %s: %s (%.2fs) %s\n", id, title.c_str(), o.pass ? "PASS" : "FAIL", dt,
                o.detail.str().c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void quadratic_g_values(Outcome& o) {
    const double expected[] = {-1.25, -2.75, -3.75, -4.75, -5.75, -6.75};
    for (int n = 2; n <= 7; ++n) {
        const InstanceBundle b = build_quadratic_g(n);
        const DcSolution d = solve_dual(*b.h_rep, *b.g_oracle);
        const double want = expected[n - 2];
        if (std::abs(d.value - want) > 1e-6) o.fail("n=" + std::to_string(n) + " value " + fmt(d.value));
        else o.detail << "n=" << n << ":" << fmt(d.value) << " ";
    }
}

void quadratic_box(Outcome& o) {
    const Eigen::MatrixXd published = mat({{3, -4, 1, 1, -4, 3, -1, -3, 3, -3},
                                           {3, -2, -3, 3, -4, -1, 3, -4, 2, 1},
                                           {0, 2, -4, 2, 0, -4, 3, -2, -2, 3},
                                           {-4, 3, -3, -2, 3, -4, 1, 2, -4, 2}});
    const Eigen::MatrixXd P = quadratic_box_matrix(10, 4);
    if (P != published) o.fail("P differs from the published matrix");

    const auto t0 = Clock::now();
    const InstanceBundle b = build_quadratic_box(10, 4);
    const DcSolution s = solve_primal(*b.g_rep, *b.h_oracle);
    const double dt = seconds_since(t0);
    const Eigen::VectorXd x = recover_box_point(P, s.x_opt);
    const Eigen::VectorXd xbar = vec({1, -1, 1, 1, -1, 1, -1, -1, 1, -1});
    if (x != xbar && x != -xbar) o.fail("recovered x is not +-xbar");

    // Brute force over all 2^10 sign vectors, independent of the builder.
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < (1 << 10); ++k) {
        Eigen::VectorXd z(10);
        for (int i = 0; i < 10; ++i) z(i) = ((k >> i) & 1) ? -1.0 : 1.0;
        best = std::max(best, (P * z).squaredNorm());
    }
    if (std::abs(best - 1756.0) > 1e-9) o.fail("brute force max " + fmt(best));
    if (std::abs(s.value + best) > 1e-6) o.fail("solver value " + fmt(s.value));
    if (dt > 120.0) o.fail("runtime " + fmt(dt) + "s over 120s");
    if (o.pass) o.detail << "value " << fmt(s.value) << ", solve " << fmt(dt) << "s";
}

void ferrer(Outcome& o) {
    for (int n = 2; n <= 7; ++n) {
        const InstanceBundle b = build_ferrer(n);
        const auto t0 = Clock::now();
        const DcSolution d = solve_dual(*b.h_rep, *b.g_oracle);
        const double td = seconds_since(t0);
        if (td > 300.0) o.fail("dual n=" + std::to_string(n) + " took " + fmt(td) + "s");
        if (std::abs(d.value) > 1e-6) o.fail("dual n=" + std::to_string(n) + " value " + fmt(d.value));
        if (n > 5) {
            if (o.pass) o.detail << "n=" << n << " dual " << fmt(td) << "s; ";
            continue;
        }
        const auto t1 = Clock::now();
        const DcSolution p = solve_primal(*b.g_rep, *b.h_oracle);
        const double tp = seconds_since(t1);
        if (tp > 300.0) o.fail("primal n=" + std::to_string(n) + " took " + fmt(tp) + "s");
        if (std::abs(p.value) > 1e-6) o.fail("primal n=" + std::to_string(n) + " value " + fmt(p.value));
        const double gap = toland_singer_gap(p, d);
        if (gap > 1e-6) o.fail("gap n=" + std::to_string(n) + " " + fmt(gap));
        if (o.pass) o.detail << "n=" << n << " primal " << fmt(tp) << "s dual " << fmt(td) << "s; ";
    }
}

void projection_oracle(Outcome& o) {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> dim(1, 3);
    int matched = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = dim(rng);
        const Eigen::Index k = dim(rng);
        const Eigen::Index m = std::uniform_int_distribution<Eigen::Index>(2 * n + 1, 12)(rng);
        const PRep p = testing_util::random_prep(rng, n, k, m);
        const VRep v = project(p);
        const Eigen::MatrixXd want = brute_vertices(testing_util::fourier_motzkin(p));
        if (!same_column_sets(v.points(), want, 1e-6) || v.num_directions() != 0) {
            o.fail("trial " + std::to_string(trial) + " (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                   ", m=" + std::to_string(m) + ")");
        } else {
            ++matched;
        }
    }
    o.detail << matched << "/50 matched";
}

void conjugation(Outcome& o) {
    int checks = 0;
    for (const auto& fx : testing_util::pcf_fixtures()) {
        const FunctionRep fc = conjugate(fx.f);
        const FunctionRep fcc = conjugate(fc);
        for (const Eigen::VectorXd& x : testing_util::grid_points(fx.f.dim(), fx.lo, fx.hi, 100)) {
            const ExtendedReal a = evaluate(fx.f, x);
            const ExtendedReal b = evaluate(fcc, x);
            ++checks;
            if (a.is_finite() != b.is_finite()) {
                o.fail(fx.name + ": finiteness of f** differs");
            } else if (a.is_finite() && std::abs(a.value() - b.value()) > 1e-6 * std::max(1.0, std::abs(a.value()))) {
                o.fail(fx.name + ": f** = " + fmt(b.value()) + " vs f = " + fmt(a.value()));
            }
        }
        const auto ys = testing_util::grid_points(fx.f.dim(), -3.0, 3.0, 20);
        for (const Eigen::VectorXd& x : testing_util::grid_points(fx.f.dim(), fx.lo, fx.hi, 20)) {
            const ExtendedReal fxv = evaluate(fx.f, x);
            if (fxv.is_infinite()) continue;
            for (const Eigen::VectorXd& y : ys) {
                const ExtendedReal fy = evaluate(fc, y);
                if (fy.is_infinite()) continue;
                ++checks;
                if (fxv.value() + fy.value() < x.dot(y) - 1e-6) o.fail(fx.name + ": Fenchel inequality violated");
            }
        }
    }
    o.detail << checks << " checks";
}

void location(Outcome& o) {
    for (int s = 1; s <= 10; ++s) {
        const int ma = 1 + (s - 1) % 3;
        const int mr = 1 + (s - 1) % 2;
        const LocationInstance inst = random_location(static_cast<std::uint64_t>(s), ma, mr);
        const InstanceBundle b = build_location(inst);
        const DcSolution p = solve_primal(*b.g_rep, *b.h_oracle);
        const DcSolution d = solve_dual(*b.h_rep, *b.g_oracle);
        double grid = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 200; ++i) {
            for (int j = 0; j < 200; ++j) {
                const Eigen::Vector2d x(-15.0 + 30.0 * i / 199, -15.0 + 30.0 * j / 199);
                grid = std::min(grid, gauge_sum(inst.attraction, inst.attraction_weights, inst.attraction_balls, x) -
                                          gauge_sum(inst.repulsion, inst.repulsion_weights, inst.repulsion_balls, x));
            }
        }
        const std::string tag = "seed " + std::to_string(s);
        if (std::abs(p.value - d.value) > 1e-6) o.fail(tag + ": primal " + fmt(p.value) + " dual " + fmt(d.value));
        if (grid < p.value - 1e-6) o.fail(tag + ": grid " + fmt(grid) + " below solver " + fmt(p.value));
        if (grid - p.value > 0.15) o.fail(tag + ": grid " + fmt(grid) + " exceeds solver by more than 0.15");
    }
    if (o.pass) o.detail << "10 instances";
}

void negative(Outcome& o) {
    const FunctionRep h = from_max_affine(mat({{1}, {-1}}), vec({0, 0}));
    try {
        solve_dual(h, testing_util::nonclosed_oracle());
        o.fail("non-closed g accepted");
    } catch (const ClosednessError&) {
    }
    const FunctionRep g_linear = from_max_affine(mat({{1}}), vec({0}));
    try {
        solve_primal(g_linear, oracle_from_rep(h));
        o.fail("linear g accepted");
    } catch (const AssumptionError&) {
    }
    if (o.pass) o.detail << "ClosednessError and AssumptionError raised";
}

}  // namespace

int main() {
    report(1, "quadratic g, dual values n=2..7", quadratic_g_values);
    report(2, "quadratic box n=10 m=4", quadratic_box);
    report(3, "Ferrer family, both algorithms", ferrer);
    report(4, "projection vs Fourier-Motzkin, 50 random PReps", projection_oracle);
    report(5, "biconjugation and Fenchel inequality on fixtures", conjugation);
    report(6, "location instances vs 200x200 grid", location);
    report(7, "closedness and vertex assumption guards", negative);
    return failures == 0 ? 0 : 1;
}

#include "dcpoly/errors.hpp"
#include "dcpoly/lp.hpp"
#include "dcpoly/poly_core.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace dcpoly;
using namespace dcpoly::lp;
using testing_util::mat;
using testing_util::vec;

namespace {

LpProblem one_var(double cost) {
    LpProblem p(1);
    p.objective(0) = cost;
    return p;
}

}  // namespace

TEST_CASE("min x s.t. x >= 3") {
    LpProblem p = one_var(1.0);
    p.add_row(vec({1}), Sense::GreaterEqual, 3.0);
    const LpResult r = solve(p);
    REQUIRE(r.optimal());
    CHECK(r.x(0) == doctest::Approx(3.0));
    CHECK(r.objective == doctest::Approx(3.0));
    CHECK(r.duals(0) == doctest::Approx(1.0));
}

TEST_CASE("min x s.t. x <= 3 is unbounded with ray -1") {
    LpProblem p = one_var(1.0);
    p.add_row(vec({1}), Sense::LessEqual, 3.0);
    const LpResult r = solve(p);
    REQUIRE(r.status == Status::Unbounded);
    REQUIRE(r.ray.size() == 1);
    CHECK(r.ray(0) < 0.0);
    CHECK(r.ray(0) / std::abs(r.ray(0)) == -1.0);
}

TEST_CASE("x >= 1 and -x >= 0 is infeasible") {
    LpProblem p = one_var(0.0);
    p.add_row(vec({1}), Sense::GreaterEqual, 1.0);
    p.add_row(vec({-1}), Sense::GreaterEqual, 0.0);
    CHECK(solve(p).status == Status::Infeasible);
}

TEST_CASE("solve_feasibility examples") {
    const LpResult a = solve_feasibility(mat({{1}}), {Sense::GreaterEqual}, vec({1}));
    REQUIRE(a.optimal());
    CHECK(a.x(0) >= 1.0 - 1e-8);

    const LpResult b = solve_feasibility(Eigen::MatrixXd(0, 2), {}, Eigen::VectorXd(0), vec({-1, 2}), vec({5, 5}));
    REQUIRE(b.optimal());
    CHECK(b.x == vec({-1, 2}));

    const LpResult c = solve_feasibility(Eigen::MatrixXd(0, 2), {}, Eigen::VectorXd(0));
    REQUIRE(c.optimal());
    CHECK(c.x.isZero());

    const LpResult d = solve_feasibility(mat({{1, 1}, {1, 1}}), {Sense::GreaterEqual, Sense::LessEqual}, vec({2, 1}));
    CHECK(d.status == Status::Infeasible);
}

TEST_CASE("bounds, equality rows and mirrored variables") {
    // max x + y  s.t. x + 2y = 4, x <= 3, y free below 5.
    LpProblem p(2);
    p.objective = vec({-1, -1});
    p.add_row(vec({1, 2}).transpose(), Sense::Equal, 4.0);
    p.upper = vec({3, 5});
    const LpResult r = solve(p);
    REQUIRE(r.optimal());
    CHECK(r.x(0) == doctest::Approx(3.0));
    CHECK(r.x(1) == doctest::Approx(0.5));
    CHECK(r.objective == doctest::Approx(-3.5));
}

TEST_CASE("validate rejects inconsistent problems") {
    LpProblem p(2);
    p.lower = vec({1, 0});
    p.upper = vec({0, 1});
    CHECK_THROWS_AS(solve(p), DimensionError);
    LpProblem q(2);
    CHECK_THROWS_AS(q.add_row(vec({1}).transpose(), Sense::Equal, 0.0), DimensionError);
    LpProblem r(2);
    r.rhs = vec({1});
    CHECK_THROWS_AS(solve(r), DimensionError);
}

TEST_CASE("Beale's cycling example terminates") {
    // Dantzig's rule alone cycles here.
    LpProblem p(4);
    p.objective = vec({-0.75, 150, -0.02, 6});
    p.add_row(vec({0.25, -60, -0.04, 9}).transpose(), Sense::LessEqual, 0.0);
    p.add_row(vec({0.5, -90, -0.02, 3}).transpose(), Sense::LessEqual, 0.0);
    p.add_row(vec({0, 0, 1, 0}).transpose(), Sense::LessEqual, 1.0);
    p.lower.setZero();
    const LpResult r = solve(p);
    REQUIRE(r.optimal());
    CHECK(r.objective == doctest::Approx(-0.05));
}

TEST_CASE("property: random bounded LPs match vertex enumeration and strong duality") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const Eigen::Index extra = 3 + trial % 4;
        const Eigen::Index m = 2 * n + extra;
        Eigen::MatrixXd B(m, n);
        Eigen::VectorXd c(m);
        B.topRows(n) = Eigen::MatrixXd::Identity(n, n);
        B.middleRows(n, n) = -Eigen::MatrixXd::Identity(n, n);
        c.head(2 * n).setConstant(-2.0);
        for (Eigen::Index i = 2 * n; i < m; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) B(i, j) = U(rng);
            c(i) = -0.2 - 0.5 * (U(rng) + 1.0);
        }
        Eigen::VectorXd obj(n);
        for (Eigen::Index j = 0; j < n; ++j) obj(j) = U(rng);

        LpProblem p(n);
        p.objective = obj;
        for (Eigen::Index i = 0; i < m; ++i) p.add_row(B.row(i), Sense::GreaterEqual, c(i));
        const LpResult r = solve(p);
        REQUIRE(r.optimal());

        const Eigen::MatrixXd V = brute_vertices(HRep(B, c));
        const double best = (obj.transpose() * V).minCoeff();
        CHECK(r.objective == doctest::Approx(best).epsilon(1e-9));
        CHECK(((B * r.x - c).array() >= -1e-8).all());
        CHECK(r.dual_objective == doctest::Approx(r.objective).epsilon(1e-6));
        CHECK((r.duals.array() >= -1e-9).all());
        CHECK((B.transpose() * r.duals - obj).lpNorm<Eigen::Infinity>() < 1e-8);

        // Determinism: a second solve is bitwise identical.
        const LpResult again = solve(p);
        CHECK(again.x == r.x);
        CHECK(again.duals == r.duals);
        CHECK(again.iterations == r.iterations);
    }
}

TEST_CASE("property: unbounded rays are feasible descent directions") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    int seen = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index n = 2 + trial % 2;
        Eigen::MatrixXd B(4, n);
        for (Eigen::Index i = 0; i < B.rows(); ++i) {
            for (Eigen::Index j = 0; j < n; ++j) B(i, j) = U(rng);
        }
        LpProblem p(n);
        for (Eigen::Index j = 0; j < n; ++j) p.objective(j) = U(rng);
        for (Eigen::Index i = 0; i < B.rows(); ++i) p.add_row(B.row(i), Sense::GreaterEqual, -1.0);
        const LpResult r = solve(p);
        if (r.status != Status::Unbounded) continue;
        ++seen;
        CHECK(p.objective.dot(r.ray) < 0.0);
        CHECK(((B * r.ray).array() >= -1e-9).all());
    }
    CHECK(seen > 0);
}

#include "dcpoly/errors.hpp"
#include "dcpoly/instances.hpp"
#include "dcpoly/lp.hpp"
#include "dcpoly/projection.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace dcpoly;
using testing_util::has_column;
using testing_util::mat;
using testing_util::same_column_sets;
using testing_util::vec;

namespace {

PRep segment() { return PRep(mat({{1}, {-1}}), Eigen::MatrixXd(0, 0), vec({0, -1})); }

PRep unit_square() {
    return PRep(mat({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), Eigen::MatrixXd(0, 0), vec({-1, -1, -1, -1}));
}

// (x, r) with r >= |x|.
PRep abs_epigraph() { return PRep(mat({{-1, 1}, {1, 1}}), Eigen::MatrixXd(0, 0), vec({0, 0})); }

bool has_direction_cone_containing_units(const VRep& v) {
    // Every unit vector is a nonnegative combination of the directions.
    const Eigen::Index d = v.dim();
    for (Eigen::Index i = 0; i < d; ++i) {
        lp::LpProblem q(v.num_directions());
        q.lower.setZero();
        for (Eigen::Index r = 0; r < d; ++r) {
            q.add_row(v.directions().row(r), lp::Sense::Equal, r == i ? 1.0 : 0.0);
        }
        if (!lp::solve(q).optimal()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("build_molp objective counts") {
    const MolpProblem s = build_molp(segment());
    CHECK(s.num_objectives() == 2);
    CHECK(s.objective == mat({{1}, {-1}}));
    CHECK(build_molp(unit_square()).num_objectives() == 3);
    const MolpProblem e = build_molp(abs_epigraph());
    CHECK(e.num_objectives() == 3);
    CHECK(e.objective == mat({{1, 0}, {0, 1}, {-1, -1}}));

    const PRep lifted(mat({{1}}), mat({{1, 2}}), vec({0}));
    const MolpProblem l = build_molp(lifted);
    CHECK(l.objective.cols() == 3);
    CHECK(l.objective.rightCols(2).isZero());
}

TEST_CASE("upper image of the segment [0,1]") {
    const UpperImage u = solve_upper_image(build_molp(segment()));
    CHECK(same_column_sets(u.vrep.points(), mat({{0, 1}, {0, -1}}), 1e-9));
    CHECK(has_direction_cone_containing_units(u.vrep));
    for (Eigen::Index j = 0; j < u.vrep.num_points(); ++j) CHECK(u.vrep.points().col(j).sum() >= -1e-6);
}

TEST_CASE("upper image of the single point 0") {
    const PRep zero(mat({{1}, {-1}}), Eigen::MatrixXd(0, 0), vec({0, 0}));
    const UpperImage u = solve_upper_image(build_molp(zero));
    CHECK(same_column_sets(u.vrep.points(), mat({{0}, {0}}), 1e-9));
    CHECK(same_column_sets(extract_projection(u).points(), mat({{0}}), 1e-9));
}

TEST_CASE("upper image of the unit square") {
    const UpperImage u = solve_upper_image(build_molp(unit_square()));
    const Eigen::MatrixXd corners = mat({{-1, -1, 1, 1}, {-1, 1, -1, 1}, {2, 0, 0, -2}});
    CHECK(same_column_sets(u.vrep.points(), corners, 1e-9));
    CHECK(u.lp_count > 0);
}

TEST_CASE("extract_projection keeps exactly the e'z = 0 part") {
    const UpperImage u = solve_upper_image(build_molp(segment()));
    const VRep v = extract_projection(u);
    CHECK(same_column_sets(v.points(), mat({{0, 1}}), 1e-9));
    CHECK(v.num_directions() == 0);

    const VRep sq = extract_projection(solve_upper_image(build_molp(unit_square())));
    CHECK(same_column_sets(sq.points(), mat({{-1, -1, 1, 1}, {-1, 1, -1, 1}}), 1e-9));

    const VRep once = filter_image(u.vrep);
    const VRep twice = filter_image(once);
    CHECK(once.points() == twice.points());
    CHECK(once.directions() == twice.directions());
}

TEST_CASE("extract_projection raises when nothing survives the filter") {
    UpperImage u{VRep(mat({{1}, {1}}), Eigen::MatrixXd(2, 0)), 0, 0};
    CHECK_THROWS_AS(extract_projection(u), NumericError);
}

TEST_CASE("project examples") {
    SUBCASE("diagonal segment x = u, 0 <= u <= 1") {
        const PRep p(mat({{1}, {-1}, {0}, {0}}), mat({{-1}, {1}, {1}, {-1}}), vec({0, 0, 0, -1}));
        const VRep v = project(p);
        CHECK(same_column_sets(v.points(), mat({{0, 1}}), 1e-9));
        CHECK(v.num_directions() == 0);
    }
    SUBCASE("epigraph of max(x, -x)") {
        const VRep v = project(abs_epigraph());
        CHECK(same_column_sets(v.points(), mat({{0}, {0}}), 1e-9));
        // (0,1) is a nonnegative combination of the extreme rays (+-1, 1).
        CHECK(same_column_sets(v.directions(), mat({{-1, 1}, {1, 1}}), 1e-9));
    }
    SUBCASE("zonotope of the quadratic box instance contains P x for the known maximizer") {
        const Eigen::MatrixXd P = quadratic_box_matrix(10, 4);
        const Eigen::Index n = 10;
        const Eigen::Index m = 4;
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(2 * m + 2 * n, m);
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(2 * m + 2 * n, n);
        Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * m + 2 * n);
        B.topRows(m) = Eigen::MatrixXd::Identity(m, m);
        C.topRows(m) = -P;
        B.middleRows(m, m) = -Eigen::MatrixXd::Identity(m, m);
        C.middleRows(m, m) = P;
        C.middleRows(2 * m, n) = Eigen::MatrixXd::Identity(n, n);
        C.bottomRows(n) = -Eigen::MatrixXd::Identity(n, n);
        c.tail(2 * n).setConstant(-1.0);
        const VRep v = project(PRep(B, C, c));
        const Eigen::VectorXd xbar = vec({1, -1, 1, 1, -1, 1, -1, -1, 1, -1});
        CHECK(has_column(v.points(), P * xbar, 1e-6));
        CHECK(has_column(v.points(), -P * xbar, 1e-6));
        CHECK(v.num_directions() == 0);
    }
}

TEST_CASE("project output is sorted and directions have unit max-norm") {
    const PRep p(mat({{1, 0}, {0, 1}, {1, 1}}), Eigen::MatrixXd(0, 0), vec({0, 0, 1}));
    const VRep v = project(p);
    CHECK(same_column_sets(v.points(), mat({{0, 1}, {1, 0}}), 1e-9));
    CHECK(same_column_sets(v.directions(), mat({{0, 1}, {1, 0}}), 1e-9));
    for (Eigen::Index j = 0; j < v.num_directions(); ++j) {
        CHECK(v.directions().col(j).lpNorm<Eigen::Infinity>() == doctest::Approx(1.0));
    }
    for (Eigen::Index j = 1; j < v.num_points(); ++j) CHECK(v.points()(0, j - 1) <= v.points()(0, j));
}

TEST_CASE("project errors") {
    const PRep empty(mat({{1}, {-1}}), Eigen::MatrixXd(0, 0), vec({1, 0}));
    CHECK_THROWS_AS(project(empty), InfeasibleError);
    const PRep halfplane(mat({{1, 0}}), Eigen::MatrixXd(0, 0), vec({0}));
    CHECK(has_lineality(halfplane));
    CHECK_THROWS_AS(project(halfplane), AssumptionError);
    CHECK_FALSE(has_lineality(abs_epigraph()));
    // The line sits in the auxiliary space only: the projection is pointed.
    const PRep aux_line(mat({{1}, {-1}, {0}, {0}}), mat({{0, 0}, {0, 0}, {1, -1}, {-1, 1}}), vec({0, -1, 0, 0}));
    CHECK_FALSE(has_lineality(aux_line));
}

TEST_CASE("property: projection matches Fourier-Motzkin with feasible witnesses") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 1 + trial % 3;
        const Eigen::Index k = 1 + (trial / 3) % 3;
        const Eigen::Index m = std::min<Eigen::Index>(12, 2 * n + 3 + trial % 5);
        const PRep p = testing_util::random_prep(rng, n, k, m);
        const VRep v = project(p);
        const HRep h = testing_util::fourier_motzkin(p);
        CHECK(same_column_sets(v.points(), brute_vertices(h), 1e-6));
        CHECK(v.num_directions() == 0);
        for (Eigen::Index j = 0; j < v.num_points(); ++j) {
            const Eigen::VectorXd rhs = p.c() - p.B() * v.points().col(j) - 1e-6 * Eigen::VectorXd::Ones(p.rows());
            std::vector<lp::Sense> ge(static_cast<std::size_t>(p.rows()), lp::Sense::GreaterEqual);
            CHECK(lp::solve_feasibility(p.C(), ge, rhs).optimal());
        }
    }
}

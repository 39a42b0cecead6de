#pragma once

// Polyhedral convex functions used by the calculus tests and the
// conjugation checks. Each fixture names a sampling box that meets dom f.

#include "dcpoly/dc_solver.hpp"
#include "dcpoly/function_rep.hpp"
#include "oracles.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace testing_util {

struct Fixture {
    std::string name;
    dcpoly::FunctionRep f;
    double lo;
    double hi;
};

inline std::vector<Fixture> pcf_fixtures() {
    using dcpoly::VRep;
    std::vector<Fixture> out;
    out.push_back({"abs", dcpoly::from_max_affine(mat({{1}, {-1}}), vec({0, 0})), -3, 3});
    out.push_back({"max_affine_2d", dcpoly::from_max_affine(mat({{1, 1}, {0, 0}, {1, -2}}), vec({0, 0, -1})), -2, 2});
    out.push_back({"constrained",
                   dcpoly::from_max_affine(mat({{1}, {-2}}), vec({0, 1}), mat({{1}, {-1}}), vec({-1, -2})), -2, 3});
    out.push_back({"linear", dcpoly::from_max_affine(mat({{2, -1}}), vec({0.5})), -2, 2});
    out.push_back({"orthant_indicator", dcpoly::from_max_affine(mat({{0}}), vec({0}), mat({{1}}), vec({0})), -2, 2});
    out.push_back({"epigraph_vrep",
                   dcpoly::from_epigraph_vrep(VRep(mat({{-1, 1}, {1, 0}}), mat({{0, 1}, {1, 1}}))), -2, 2});
    out.push_back({"inf_convolution",
                   dcpoly::inf_convolution(dcpoly::from_max_affine(mat({{1}, {-1}}), vec({0, 0})),
                                           dcpoly::from_max_affine(mat({{2}, {-2}}), vec({-2, 2}))),
                   -3, 3});
    out.push_back({"box_2d",
                   dcpoly::from_max_affine(mat({{1, 0}, {0, 1}}), vec({0, 0}),
                                           mat({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), vec({-1, -1, -1, -1})),
                   -2, 2});
    return out;
}

// Sample points: a regular grid on [lo, hi]^n with about `count` points.
inline std::vector<Eigen::VectorXd> grid_points(Eigen::Index n, double lo, double hi, int count) {
    int per = 1;
    while (std::pow(per + 1, static_cast<double>(n)) <= count) ++per;
    std::vector<Eigen::VectorXd> pts;
    const int total = static_cast<int>(std::pow(per, static_cast<double>(n)));
    for (int idx = 0; idx < total; ++idx) {
        Eigen::VectorXd x(n);
        int rest = idx;
        for (Eigen::Index i = 0; i < n; ++i) {
            const int t = rest % per;
            rest /= per;
            x(i) = per == 1 ? lo : lo + (hi - lo) * t / (per - 1);
        }
        pts.push_back(x);
    }
    return pts;
}

// f(x) = +inf for x < 0, 1 at 0, 0 for x > 0: convex but not closed.
// Its closure is the indicator of x >= 0 and f*(y) = 0 for y <= 0.
inline dcpoly::ConvexOracle nonclosed_oracle() {
    dcpoly::ConvexOracle o;
    o.dim = 1;
    o.eval = [](const Eigen::VectorXd& x) -> dcpoly::ExtendedReal {
        if (x(0) < 0.0) return dcpoly::ExtendedReal::infinity();
        return x(0) == 0.0 ? 1.0 : 0.0;
    };
    o.conj_eval = [](const Eigen::VectorXd& y) -> dcpoly::ExtendedReal {
        return y(0) <= 0.0 ? dcpoly::ExtendedReal(0.0) : dcpoly::ExtendedReal::infinity();
    };
    // For y <= 0 the infimum 0 is approached as x -> 0+ but never attained.
    o.argmin_shifted = [](const Eigen::VectorXd&) -> std::optional<Eigen::VectorXd> { return std::nullopt; };
    o.closed = false;
    return o;
}

// Indicator of x >= 0 on R.
inline dcpoly::FunctionRep halfline_indicator() {
    return dcpoly::from_max_affine(mat({{0}}), vec({0}), mat({{1}}), vec({0}));
}

}  // namespace testing_util

#pragma once

#include "dcpoly/poly_core.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace dcpoly {

/// Vertex confirmation tolerance of the outer approximation.
inline constexpr double kBensonTol = 1e-7;
/// Tolerance of the e'z = 0 test that recovers the projection.
inline constexpr double kFilterTol = 1e-6;

/// min (x, -e'x) over {(x,u) : B x + C u >= c}: n + 1 objectives.
struct MolpProblem {
    PRep feasible;
    /// (n+1) x (n+k) objective matrix acting on (x, u).
    Eigen::MatrixXd objective;

    Eigen::Index num_objectives() const { return objective.rows(); }
};

/// V-representation of the upper image  image + R^{n+1}_+.
struct UpperImage {
    VRep vrep;
    std::size_t lp_count = 0;
    std::size_t cut_count = 0;
};

MolpProblem build_molp(const PRep& p);

/// Outer approximation of the upper image.
///
/// The recession cone of the upper image is computed first. Its generators
/// start as the unit vectors; while some weighted-sum LP min w'z with w an
/// extreme ray of the current dual cone is unbounded, the image of the LP
/// ray joins the generators. Starting from the supporting halfspaces whose
/// normals generate the final dual cone, each unconfirmed vertex t of the current outer polyhedron is
/// tested with  min { a : z(x,u) <= t + a e, (x,u) feasible }. Either t is
/// confirmed (a <= kBensonTol * max(1, |t|_inf)) or the LP multipliers of the z-rows give a
/// supporting halfspace of the upper image that cuts t off. The outer
/// polyhedron is maintained by an incremental double description.
///
/// Throws InfeasibleError for an empty feasible set and AssumptionError when
/// the projection contains a line (the upper image then has no vertex).
UpperImage solve_upper_image(const MolpProblem& m);

/// Keeps the points and directions z with |e'z| <= kFilterTol.
VRep filter_image(const VRep& image);

/// filter_image followed by dropping the last coordinate. Throws
/// NumericError when no point survives the filter.
VRep extract_projection(const UpperImage& u);

/// V-representation of {x : exists u, B x + C u >= c}. Points and directions
/// are sorted lexicographically; directions have unit max-norm.
VRep project(const PRep& p);

/// True when {x : exists u, B x + C u >= c} contains a line.
bool has_lineality(const PRep& p);

}  // namespace dcpoly

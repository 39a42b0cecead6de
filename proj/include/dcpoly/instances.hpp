#pragma once

#include "dcpoly/dc_solver.hpp"
#include "dcpoly/function_rep.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dcpoly {

struct Reference {
    double value = 0.0;
    std::optional<Eigen::VectorXd> x;
    /// Where the value comes from: "analytic", "brute_force" or "published".
    std::string provenance;
};

/// Problem min g - h with at least one of g, h given by a representation.
struct InstanceBundle {
    Eigen::Index n = 0;
    std::optional<FunctionRep> g_rep;
    std::optional<FunctionRep> h_rep;
    std::optional<ConvexOracle> g_oracle;
    std::optional<ConvexOracle> h_oracle;
    std::optional<Reference> reference;
};

/// Semi-obnoxious location: attract to the first group of points, repel
/// from the second, stay in {x : P x >= p}. Ball i is {z : balls[i] z <= e}.
struct LocationInstance {
    Eigen::MatrixXd attraction;  // one point per row
    Eigen::VectorXd attraction_weights;
    std::vector<Eigen::MatrixXd> attraction_balls;
    Eigen::MatrixXd repulsion;
    Eigen::VectorXd repulsion_weights;
    std::vector<Eigen::MatrixXd> repulsion_balls;
    Eigen::MatrixXd region_P;
    Eigen::VectorXd region_p;

    Eigen::Index dim() const { return attraction.cols(); }
};

bool operator==(const LocationInstance& a, const LocationInstance& b);

/// Checks shapes, positive weights, bounded balls and a nonempty bounded
/// region. Throws DimensionError or AssumptionError.
void validate(const LocationInstance& inst);

/// Gauge of {z : ball z <= e} at z, i.e. max(0, max_j ball_j z).
double gauge(const Eigen::MatrixXd& ball, const Eigen::VectorXd& z);

/// sum_i w_i gauge_i(x - a_i)
double gauge_sum(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                 const std::vector<Eigen::MatrixXd>& balls, const Eigen::VectorXd& x);

/// Oracle of sum_i w_i gauge_i(x - a_i) + indicator{P x >= p}. Pass an empty
/// P for no region. The conjugate is an LP over decompositions of y into
/// scaled dual-ball points and a region support term; the shifted minimum
/// is an LP on the representation.
ConvexOracle gauge_sum_oracle(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                              const std::vector<Eigen::MatrixXd>& balls, const Eigen::MatrixXd& P,
                              const Eigen::VectorXd& p);

/// Representation of the same function with one auxiliary per gauge.
FunctionRep gauge_sum_rep(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                          const std::vector<Eigen::MatrixXd>& balls, const Eigen::MatrixXd& P,
                          const Eigen::VectorXd& p);

/// g = attraction gauges + region, h = repulsion gauges; representations and
/// oracles for both.
InstanceBundle build_location(const LocationInstance& inst);

/// Deterministic instance in the plane: points in [-10,10]^2, weights in
/// [0.5,2], balls drawn from diamond, square and hexagon, region [-15,15]^2.
LocationInstance random_location(std::uint64_t seed, int num_attraction, int num_repulsion, int n = 2);

/// g(x) = |x_1 - 1| + 200 sum max(0, |x_{i-1}| - x_i),
/// h(x) = 100 sum (|x_{i-1}| - x_i), 2 <= n <= 10. Optimum 0 at (1, ..., 1).
InstanceBundle build_ferrer(int n);

/// P_ij = floor(m sin((j-1) m + i)) with 1-based i, j; m x n.
Eigen::MatrixXd quadratic_box_matrix(int n, int m);

/// max x'P'Px over [-1,1]^n, posed on R^m: g = indicator of the zonotope
/// {P x : x in [-1,1]^n}, h(y) = y'y. Requires 1 <= m <= n <= 16.
InstanceBundle build_quadratic_box(int n, int m);

/// Maximizer over {-1,1}^n of ||P x||^2 by enumeration (lowest sign pattern
/// first on ties, pattern k sets x_i = -1 iff bit i of k is set). n <= 20.
Eigen::VectorXd quadratic_box_brute_force(const Eigen::MatrixXd& P);

/// A point x of {-1,1}^n with P x closest to y, by enumeration. n <= 20.
Eigen::VectorXd recover_box_point(const Eigen::MatrixXd& P, const Eigen::VectorXd& y);

/// g(x) = x'Qx, Q = L'L with L lower-triangular ones; h(x) = sum (|x_{i-1}| - x_i).
InstanceBundle build_quadratic_g(int n);

/// Oracle of x'Qx for symmetric positive semidefinite Q. The conjugate is
/// y'Q^+y / 4 on the range of Q and +inf off it.
ConvexOracle quadratic_oracle(const Eigen::MatrixXd& Q);

}  // namespace dcpoly

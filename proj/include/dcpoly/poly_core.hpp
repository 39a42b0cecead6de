#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dcpoly {

/// Points closer than this (Euclidean) are treated as the same vertex.
inline constexpr double kVertexMergeTol = 1e-7;

/// {x : B x >= c}
class HRep {
public:
    HRep(Eigen::MatrixXd B, Eigen::VectorXd c);

    const Eigen::MatrixXd& B() const { return B_; }
    const Eigen::VectorXd& c() const { return c_; }
    Eigen::Index dim() const { return B_.cols(); }
    Eigen::Index rows() const { return B_.rows(); }

private:
    Eigen::MatrixXd B_;
    Eigen::VectorXd c_;
};

/// conv(columns of points) + cone(columns of directions).
class VRep {
public:
    VRep(Eigen::MatrixXd points, Eigen::MatrixXd directions);

    const Eigen::MatrixXd& points() const { return points_; }
    const Eigen::MatrixXd& directions() const { return directions_; }
    Eigen::Index dim() const { return points_.rows(); }
    Eigen::Index num_points() const { return points_.cols(); }
    Eigen::Index num_directions() const { return directions_.cols(); }

private:
    Eigen::MatrixXd points_;
    Eigen::MatrixXd directions_;
};

/// {x : exists u with B x + C u >= c}
class PRep {
public:
    PRep(Eigen::MatrixXd B, Eigen::MatrixXd C, Eigen::VectorXd c);

    const Eigen::MatrixXd& B() const { return B_; }
    const Eigen::MatrixXd& C() const { return C_; }
    const Eigen::VectorXd& c() const { return c_; }
    Eigen::Index dim() const { return B_.cols(); }
    Eigen::Index num_aux() const { return C_.cols(); }
    Eigen::Index rows() const { return B_.rows(); }

private:
    Eigen::MatrixXd B_;
    Eigen::MatrixXd C_;
    Eigen::VectorXd c_;
};

bool contains(const HRep& H, const Eigen::VectorXd& x, double tol);

/// {x : B x >= 0}
HRep recession_cone(const HRep& H);

/// Every vertex of H by solving all n x n row subsystems. Requires n <= 8 and
/// m <= 24 (GuardError otherwise). Output is deduplicated and sorted
/// lexicographically, one vertex per column.
Eigen::MatrixXd brute_vertices(const HRep& H);

/// Extreme rays of {x : B x >= 0}, each scaled to unit max-norm. Same guards
/// as brute_vertices.
Eigen::MatrixXd brute_extreme_directions(const HRep& H);

/// Scales d to unit max-norm (zero stays zero).
Eigen::VectorXd normalize_direction(const Eigen::VectorXd& d);

/// Merges columns within kVertexMergeTol of each other and sorts the rest
/// lexicographically.
Eigen::MatrixXd unique_columns(const std::vector<Eigen::VectorXd>& cols, Eigen::Index dim,
                               double tol = kVertexMergeTol);

}  // namespace dcpoly

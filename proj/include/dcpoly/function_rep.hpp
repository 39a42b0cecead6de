#pragma once

#include "dcpoly/extended_real.hpp"
#include "dcpoly/poly_core.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace dcpoly {

/// Representation (B, b, C, c) of a polyhedral convex function f : R^n -> R ∪ {+inf}:
///
///     epi f = {(x, r) : exists u in R^k with B x + b r + C u >= c}.
///
/// Whether f is proper (nonempty epigraph) is decided by one feasibility LP
/// when the object is built.
class FunctionRep {
public:
    FunctionRep(Eigen::MatrixXd B, Eigen::VectorXd b, Eigen::MatrixXd C, Eigen::VectorXd c);

    const Eigen::MatrixXd& B() const { return B_; }
    const Eigen::VectorXd& b() const { return b_; }
    const Eigen::MatrixXd& C() const { return C_; }
    const Eigen::VectorXd& c() const { return c_; }

    Eigen::Index dim() const { return B_.cols(); }
    Eigen::Index num_aux() const { return C_.cols(); }
    Eigen::Index rows() const { return B_.rows(); }
    bool proper() const { return proper_; }

    /// The epigraph as a P-representation in R^{n+1}.
    PRep epigraph() const;

private:
    Eigen::MatrixXd B_;
    Eigen::VectorXd b_;
    Eigen::MatrixXd C_;
    Eigen::VectorXd c_;
    bool proper_ = false;
};

/// f(x) = max_i (D_i x + d_i) on {P x >= p}, +inf elsewhere.
FunctionRep from_max_affine(const Eigen::MatrixXd& D, const Eigen::VectorXd& d, const Eigen::MatrixXd& P,
                            const Eigen::VectorXd& p);
FunctionRep from_max_affine(const Eigen::MatrixXd& D, const Eigen::VectorXd& d);

/// Function whose epigraph is conv(points) + cone(directions) in R^{n+1}.
/// The directions must contain (0, ..., 0, 1) or dominate it.
FunctionRep from_epigraph_vrep(const VRep& v);

/// epi f = epi g + epi h.
FunctionRep inf_convolution(const FunctionRep& g, const FunctionRep& h);

/// Representation of the conjugate f*. The auxiliary variables are the row
/// multipliers v >= 0 of the representation of f:
///   B'v + x* = 0,  b'v = 1,  C'v = 0,  c'v + r* >= 0.
/// Throws AssumptionError when f is not proper.
FunctionRep conjugate(const FunctionRep& f);

/// min { r : (x, r) in epi f }; +inf outside dom f. Throws AssumptionError
/// when the LP is unbounded (the rows do not describe an epigraph).
ExtendedReal evaluate(const FunctionRep& f, const Eigen::VectorXd& x);

/// A minimizer of f(x) - y'x, or nullopt when the problem is unbounded.
std::optional<Eigen::VectorXd> minimize_shifted(const FunctionRep& f, const Eigen::VectorXd& y);

struct EpigraphVertices {
    /// Vertex x-parts, one per column.
    Eigen::MatrixXd points;
    /// Vertex r-parts, aligned with points.
    Eigen::VectorXd values;
    /// Extreme directions of epi f in R^{n+1}, one per column.
    Eigen::MatrixXd directions;

    Eigen::Index size() const { return points.cols(); }
};

/// Vertices of epi f via polyhedral projection, in deterministic
/// (lexicographic) order. Throws AssumptionError when epi f has no vertex.
EpigraphVertices epigraph_vertices(const FunctionRep& f);

}  // namespace dcpoly

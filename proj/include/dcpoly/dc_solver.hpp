#pragma once

#include "dcpoly/extended_real.hpp"
#include "dcpoly/function_rep.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>

namespace dcpoly {

/// A closed convex function given by callables.
struct ConvexOracle {
    Eigen::Index dim = 0;
    std::function<ExtendedReal(const Eigen::VectorXd&)> eval;
    /// Value of the conjugate.
    std::function<ExtendedReal(const Eigen::VectorXd&)> conj_eval;
    /// A minimizer of eval(x) - y'x, or nullopt when there is none.
    std::function<std::optional<Eigen::VectorXd>(const Eigen::VectorXd&)> argmin_shifted;
    /// The dual algorithm refuses oracles that are not lower semicontinuous.
    bool closed = true;
};

/// Oracle backed by LPs on a representation: eval by evaluate, conj_eval by
/// evaluating the conjugate representation, argmin_shifted by minimize_shifted.
ConvexOracle oracle_from_rep(const FunctionRep& f);

enum class Algorithm { Primal, Dual };

std::string to_string(Algorithm a);

struct Certificate {
    /// Primal: vertex (x, r) of epi g. Dual: vertex (y, s) of epi h*.
    Algorithm kind = Algorithm::Primal;
    Eigen::VectorXd point;
    /// r - h(x) (primal) or s - g*(y) (dual) at the chosen vertex.
    double value = 0.0;
};

struct DcSolution {
    Eigen::VectorXd x_opt;
    double value = 0.0;
    Certificate certificate;
    Algorithm algorithm = Algorithm::Primal;
    Eigen::Index vertex_count = 0;
};

/// Relative tolerance of the unboundedness test and of vertex tie-breaking.
inline constexpr double kObjectiveTol = 1e-9;

struct UnboundednessDiagnosis {
    bool unbounded = false;
    /// Witness (vertex index, direction index, step) when unbounded.
    Eigen::Index vertex = -1;
    Eigen::Index direction = -1;
    double beta = 0.0;
};

/// Tests whether the convex function `objective` increases from some vertex
/// along some extreme direction: objective(v + beta d) > objective(v) + tol.
/// beta is multiplied by 10 after each unsuccessful sweep, up to 1e6. A
/// negative verdict does not prove boundedness.
UnboundednessDiagnosis check_unbounded(const Eigen::MatrixXd& vertices, const Eigen::MatrixXd& directions,
                                       const std::function<ExtendedReal(const Eigen::VectorXd&)>& objective,
                                       double beta = 1.0);

/// Global minimum of g - h for polyhedral g: the best vertex of epi g.
///
/// Throws AssumptionError when epi g has no vertex or h is +inf at some
/// vertex, InfeasibleError when h is +inf at every vertex and UnboundedError
/// when check_unbounded finds an increasing direction of h(x) - r.
DcSolution solve_primal(const FunctionRep& g, const ConvexOracle& h);

/// Global minimum of g - h for polyhedral h through the dual problem
/// min h* - g*: the best vertex (y, s) of epi h*, then x = argmin g(x) - y'x.
///
/// Throws ClosednessError for a non-closed g, InfeasibleError when g* is
/// +inf at every vertex of epi h*, UnboundedError when it is +inf at some of
/// them or an increasing direction is found, and AssumptionError when the
/// shifted problem has no solution.
DcSolution solve_dual(const FunctionRep& h, const ConvexOracle& g);

/// |value_primal - value_dual|
double toland_singer_gap(const DcSolution& primal, const DcSolution& dual);

}  // namespace dcpoly

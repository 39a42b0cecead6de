#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

namespace dcpoly::lp {

enum class Sense { GreaterEqual, Equal, LessEqual };

enum class Status { Optimal, Infeasible, Unbounded, NumericError };

std::string_view to_string(Status s);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Tolerances of the simplex implementation.
inline constexpr double kFeasibilityTol = 1e-8;
inline constexpr double kOptimalityTol = 1e-8;
inline constexpr double kPivotTol = 1e-11;

/// minimize c'x  s.t.  A_i x (sense_i) rhs_i,  lower <= x <= upper.
///
/// Bounds default to the free variable; use kInf / -kInf for missing bounds.
struct LpProblem {
    Eigen::VectorXd objective;
    Eigen::MatrixXd A;
    std::vector<Sense> sense;
    Eigen::VectorXd rhs;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    LpProblem() = default;
    /// Problem with `num_vars` free variables and no constraints.
    explicit LpProblem(Eigen::Index num_vars);

    Eigen::Index num_vars() const { return objective.size(); }
    Eigen::Index num_rows() const { return A.rows(); }

    /// Appends the row a'x (s) r.
    void add_row(const Eigen::Ref<const Eigen::RowVectorXd>& a, Sense s, double r);

    /// Throws DimensionError when the sizes disagree or a lower bound exceeds
    /// its upper bound.
    void validate() const;
};

struct LpResult {
    Status status = Status::NumericError;
    /// Primal solution (Optimal).
    Eigen::VectorXd x;
    /// Recession direction with negative objective slope (Unbounded).
    Eigen::VectorXd ray;
    /// Row multipliers y with c = A'y + (bound multipliers); y_i >= 0 on >=
    /// rows, y_i <= 0 on <= rows (Optimal).
    Eigen::VectorXd duals;
    double objective = 0.0;
    /// Objective of the dual solution extracted from the final basis.
    double dual_objective = 0.0;
    std::size_t iterations = 0;

    bool optimal() const { return status == Status::Optimal; }
};

/// Two-phase dense tableau simplex. Pricing is Dantzig's rule with a
/// largest-pivot ratio test; Bland's rule takes over while the objective
/// stalls.
///
/// The returned solution is re-solved against the final basis with an LU
/// factorization of the original data and checked for primal feasibility and
/// for agreement with the dual objective; a failed check yields
/// Status::NumericError rather than a wrong answer.
LpResult solve(const LpProblem& p);

/// Feasibility of  A x (sense) rhs  over free variables (zero objective).
LpResult solve_feasibility(const Eigen::MatrixXd& A, const std::vector<Sense>& sense,
                           const Eigen::VectorXd& rhs);

/// Same, with explicit variable bounds. With no rows the result sits at the
/// finite lower bounds (zero for free variables).
LpResult solve_feasibility(const Eigen::MatrixXd& A, const std::vector<Sense>& sense,
                           const Eigen::VectorXd& rhs, const Eigen::VectorXd& lower,
                           const Eigen::VectorXd& upper);

}  // namespace dcpoly::lp

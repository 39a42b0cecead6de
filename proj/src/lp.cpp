#include "dcpoly/lp.hpp"

#include "dcpoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dcpoly::lp {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr std::size_t kMaxIterations = 200000;
// Entries of a pivot column below this are not eligible in the ratio test.
constexpr double kRatioTol = 1e-9;

// How an original variable is expressed through nonnegative columns.
enum class VarKind { Shift, Mirror, Free };

struct VarMap {
    VarKind kind = VarKind::Free;
    double offset = 0.0;
    Eigen::Index col = 0;  // first column; Free variables use col and col + 1
};

// min c's x's  s.t.  A's x's = b's (after slack insertion), x's >= 0.
struct StandardForm {
    std::vector<VarMap> vars;
    Eigen::Index num_structural = 0;
    RowMatrix A;               // structural part only, rows already sign-normalized
    Eigen::VectorXd b;         // >= 0
    std::vector<Sense> sense;  // after sign normalization
    std::vector<double> row_sign;
    Eigen::Index num_original_rows = 0;
    Eigen::VectorXd cost;
    double constant = 0.0;
};

StandardForm to_standard_form(const LpProblem& p) {
    StandardForm sf;
    const Eigen::Index n = p.num_vars();
    sf.vars.resize(static_cast<std::size_t>(n));
    Eigen::Index col = 0;
    std::vector<Eigen::Index> bounded;  // original indices that need an upper-bound row
    for (Eigen::Index j = 0; j < n; ++j) {
        VarMap& v = sf.vars[static_cast<std::size_t>(j)];
        const double lo = p.lower(j);
        const double hi = p.upper(j);
        v.col = col;
        if (std::isfinite(lo)) {
            v.kind = VarKind::Shift;
            v.offset = lo;
            col += 1;
            if (std::isfinite(hi)) bounded.push_back(j);
        } else if (std::isfinite(hi)) {
            v.kind = VarKind::Mirror;
            v.offset = hi;
            col += 1;
        } else {
            v.kind = VarKind::Free;
            col += 2;
        }
    }
    sf.num_structural = col;
    const Eigen::Index m0 = p.num_rows();
    const Eigen::Index m = m0 + static_cast<Eigen::Index>(bounded.size());
    sf.num_original_rows = m0;
    sf.A = RowMatrix::Zero(m, col);
    sf.b = Eigen::VectorXd::Zero(m);
    sf.sense.assign(static_cast<std::size_t>(m), Sense::LessEqual);
    sf.row_sign.assign(static_cast<std::size_t>(m), 1.0);
    sf.cost = Eigen::VectorXd::Zero(col);

    auto scatter = [&](Eigen::Index row, Eigen::Index j, double a) {
        const VarMap& v = sf.vars[static_cast<std::size_t>(j)];
        switch (v.kind) {
            case VarKind::Shift:
                sf.A(row, v.col) += a;
                return a * v.offset;
            case VarKind::Mirror:
                sf.A(row, v.col) -= a;
                return a * v.offset;
            case VarKind::Free:
                sf.A(row, v.col) += a;
                sf.A(row, v.col + 1) -= a;
                return 0.0;
        }
        return 0.0;
    };

    for (Eigen::Index i = 0; i < m0; ++i) {
        double shift = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double a = p.A(i, j);
            if (a != 0.0) shift += scatter(i, j, a);
        }
        sf.b(i) = p.rhs(i) - shift;
        sf.sense[static_cast<std::size_t>(i)] = p.sense[static_cast<std::size_t>(i)];
    }
    for (std::size_t t = 0; t < bounded.size(); ++t) {
        const Eigen::Index j = bounded[t];
        const Eigen::Index row = m0 + static_cast<Eigen::Index>(t);
        sf.A(row, sf.vars[static_cast<std::size_t>(j)].col) = 1.0;
        sf.b(row) = p.upper(j) - p.lower(j);
        sf.sense[static_cast<std::size_t>(row)] = Sense::LessEqual;
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        if (sf.b(i) < 0.0) {
            sf.A.row(i) *= -1.0;
            sf.b(i) = -sf.b(i);
            sf.row_sign[static_cast<std::size_t>(i)] = -1.0;
            auto& s = sf.sense[static_cast<std::size_t>(i)];
            if (s == Sense::GreaterEqual) {
                s = Sense::LessEqual;
            } else if (s == Sense::LessEqual) {
                s = Sense::GreaterEqual;
            }
        }
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        const VarMap& v = sf.vars[static_cast<std::size_t>(j)];
        const double c = p.objective(j);
        switch (v.kind) {
            case VarKind::Shift:
                sf.cost(v.col) += c;
                sf.constant += c * v.offset;
                break;
            case VarKind::Mirror:
                sf.cost(v.col) -= c;
                sf.constant += c * v.offset;
                break;
            case VarKind::Free:
                sf.cost(v.col) += c;
                sf.cost(v.col + 1) -= c;
                break;
        }
    }
    return sf;
}

Eigen::VectorXd to_original(const StandardForm& sf, const Eigen::VectorXd& xs, bool homogeneous) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(sf.vars.size()));
    for (std::size_t j = 0; j < sf.vars.size(); ++j) {
        const VarMap& v = sf.vars[j];
        const double off = homogeneous ? 0.0 : v.offset;
        switch (v.kind) {
            case VarKind::Shift:
                x(static_cast<Eigen::Index>(j)) = off + xs(v.col);
                break;
            case VarKind::Mirror:
                x(static_cast<Eigen::Index>(j)) = off - xs(v.col);
                break;
            case VarKind::Free:
                x(static_cast<Eigen::Index>(j)) = xs(v.col) - xs(v.col + 1);
                break;
        }
    }
    return x;
}

// Dense tableau over structural, slack and artificial columns.
class Tableau {
public:
    explicit Tableau(const StandardForm& sf) : sf_(sf) {
        const Eigen::Index m = sf.A.rows();
        const Eigen::Index ns = sf.num_structural;
        Eigen::Index slacks = 0;
        Eigen::Index arts = 0;
        for (Sense s : sf.sense) {
            if (s != Sense::Equal) ++slacks;
            if (s != Sense::LessEqual) ++arts;
        }
        first_slack_ = ns;
        first_art_ = ns + slacks;
        cols_ = ns + slacks + arts;
        T_ = RowMatrix::Zero(m, cols_ + 1);
        T_.leftCols(ns) = sf.A;
        T_.col(cols_) = sf.b;
        basis_.assign(static_cast<std::size_t>(m), -1);
        Eigen::Index s_col = first_slack_;
        Eigen::Index a_col = first_art_;
        for (Eigen::Index i = 0; i < m; ++i) {
            const Sense s = sf.sense[static_cast<std::size_t>(i)];
            if (s == Sense::LessEqual) {
                T_(i, s_col) = 1.0;
                row_of_slack_.push_back(i);
                basis_[static_cast<std::size_t>(i)] = s_col++;
            } else {
                if (s == Sense::GreaterEqual) {
                    T_(i, s_col) = -1.0;
                    row_of_slack_.push_back(i);
                    ++s_col;
                }
                T_(i, a_col) = 1.0;
                basis_[static_cast<std::size_t>(i)] = a_col++;
            }
        }
        active_.assign(static_cast<std::size_t>(m), true);
    }

    bool is_artificial(Eigen::Index j) const { return j >= first_art_; }

    // Phase-one objective value (sum of artificials).
    Status phase_one(std::size_t& iterations) {
        phase_one_target_ = kFeasibilityTol * (1.0 + sf_.b.lpNorm<Eigen::Infinity>());
        z_ = Eigen::VectorXd::Zero(cols_ + 1);
        for (Eigen::Index i = 0; i < T_.rows(); ++i) {
            if (is_artificial(basis_[static_cast<std::size_t>(i)])) z_ -= T_.row(i).transpose();
        }
        for (Eigen::Index j = first_art_; j < cols_; ++j) z_(j) = 0.0;
        Eigen::Index entering = -1;
        const Status st = iterate(/*allow_artificial=*/true, iterations, entering);
        if (st == Status::Unbounded) return Status::NumericError;  // phase one is bounded
        return st;
    }

    double phase_one_value() const { return -z_(cols_); }

    // Removes artificials from the basis; rows where that is impossible are
    // linearly dependent and become inactive.
    void purge_artificials() {
        for (Eigen::Index i = 0; i < T_.rows(); ++i) {
            if (!is_artificial(basis_[static_cast<std::size_t>(i)])) continue;
            // A stalled phase one leaves residues up to its target; pivoting
            // them out on a small element would magnify them.
            T_(i, cols_) = 0.0;
            Eigen::Index best = -1;
            double best_abs = kRatioTol;
            for (Eigen::Index j = 0; j < first_art_; ++j) {
                const double a = std::abs(T_(i, j));
                if (a > best_abs) {
                    best_abs = a;
                    best = j;
                }
            }
            if (best >= 0) {
                pivot(i, best);
            } else {
                active_[static_cast<std::size_t>(i)] = false;
            }
        }
    }

    Status phase_two(std::size_t& iterations, Eigen::Index& unbounded_col) {
        z_ = Eigen::VectorXd::Zero(cols_ + 1);
        z_.head(sf_.num_structural) = sf_.cost;
        for (Eigen::Index i = 0; i < T_.rows(); ++i) {
            if (!active_[static_cast<std::size_t>(i)]) continue;
            const Eigen::Index bj = basis_[static_cast<std::size_t>(i)];
            const double cb = bj < sf_.num_structural ? sf_.cost(bj) : 0.0;
            if (cb != 0.0) z_ -= cb * T_.row(i).transpose();
        }
        return iterate(/*allow_artificial=*/false, iterations, unbounded_col);
    }

    // Direction in standard-form space obtained by increasing column j.
    Eigen::VectorXd ray(Eigen::Index j) const {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(cols_);
        d(j) = 1.0;
        for (Eigen::Index i = 0; i < T_.rows(); ++i) {
            if (!active_[static_cast<std::size_t>(i)]) continue;
            d(basis_[static_cast<std::size_t>(i)]) = -T_(i, j);
        }
        return d;
    }

    const std::vector<Eigen::Index>& basis() const { return basis_; }
    const std::vector<bool>& active() const { return active_; }
    const std::vector<Eigen::Index>& row_of_slack() const { return row_of_slack_; }
    Eigen::Index first_slack() const { return first_slack_; }
    Eigen::Index first_artificial() const { return first_art_; }
    Eigen::Index num_cols() const { return cols_; }

private:
    // Dantzig pricing with a ratio test that prefers large pivots. Bland's
    // rule takes over while the objective makes no progress, which rules out
    // cycling on degenerate vertices.
    Status iterate(bool allow_artificial, std::size_t& iterations, Eigen::Index& unbounded_col) {
        const Eigen::Index m = T_.rows();
        const Eigen::Index limit = allow_artificial ? cols_ : first_art_;
        const std::size_t bland_after = static_cast<std::size_t>(m) + 10;
        const std::size_t stall_limit = 10 * static_cast<std::size_t>(m + cols_);
        double best_obj = std::numeric_limits<double>::infinity();
        std::size_t best_at = iterations;
        while (true) {
            if (iterations++ > kMaxIterations) return Status::NumericError;
            // Degenerate problems can stall on rounding noise at the optimum.
            // After a long run of pivots without progress the current basis is
            // returned; post-solve verification decides whether it is optimal.
            const double obj = -z_(cols_);
            const double floor = allow_artificial ? 1e-3 * phase_one_target_ : 1e-7 * (1.0 + std::abs(best_obj));
            if (obj < best_obj - floor) {
                best_obj = obj;
                best_at = iterations;
            } else if (iterations - best_at > stall_limit && (!allow_artificial || obj <= phase_one_target_)) {
                return Status::Optimal;
            }
            const bool bland = iterations - best_at > bland_after;

            Eigen::Index entering = -1;
            for (Eigen::Index j = 0; j < limit; ++j) {
                if (z_(j) >= -kOptimalityTol) continue;
                if (entering < 0 || (!bland && z_(j) < z_(entering))) entering = j;
                if (bland) break;
            }
            if (entering < 0) return Status::Optimal;

            double min_ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < m; ++i) {
                if (!active_[static_cast<std::size_t>(i)]) continue;
                const double a = T_(i, entering);
                if (a > kRatioTol) min_ratio = std::min(min_ratio, std::max(0.0, T_(i, cols_)) / a);
            }
            if (!std::isfinite(min_ratio)) {
                unbounded_col = entering;
                return Status::Unbounded;
            }
            const double tie = 1e-9 * (1.0 + min_ratio);
            Eigen::Index leaving = -1;
            for (Eigen::Index i = 0; i < m; ++i) {
                if (!active_[static_cast<std::size_t>(i)]) continue;
                const double a = T_(i, entering);
                if (a <= kRatioTol || std::max(0.0, T_(i, cols_)) / a > min_ratio + tie) continue;
                const bool better = leaving < 0 ||
                                    (bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)]
                                           : a > T_(leaving, entering));
                if (better) leaving = i;
            }
            if (std::abs(T_(leaving, entering)) < kPivotTol) return Status::NumericError;
            pivot(leaving, entering);
        }
    }

    void pivot(Eigen::Index r, Eigen::Index c) {
        const Eigen::Index width = T_.cols();
        double* prow = T_.row(r).data();
        const double inv = 1.0 / prow[c];
        for (Eigen::Index j = 0; j < width; ++j) prow[j] *= inv;
        prow[c] = 1.0;
        for (Eigen::Index i = 0; i < T_.rows(); ++i) {
            if (i == r) continue;
            double* row = T_.row(i).data();
            const double f = row[c];
            if (f == 0.0) continue;
            for (Eigen::Index j = 0; j < width; ++j) row[j] -= f * prow[j];
            row[c] = 0.0;
        }
        const double f = z_(c);
        if (f != 0.0) {
            for (Eigen::Index j = 0; j < width; ++j) z_(j) -= f * prow[j];
            z_(c) = 0.0;
        }
        basis_[static_cast<std::size_t>(r)] = c;
    }

    const StandardForm& sf_;
    RowMatrix T_;
    Eigen::VectorXd z_;
    std::vector<Eigen::Index> basis_;
    std::vector<Eigen::Index> row_of_slack_;
    std::vector<bool> active_;
    Eigen::Index first_slack_ = 0;
    Eigen::Index first_art_ = 0;
    Eigen::Index cols_ = 0;
    double phase_one_target_ = 0.0;
};

// Column j of the full standard-form matrix (structural + slack).
Eigen::VectorXd full_column(const StandardForm& sf, const Tableau& t, Eigen::Index j) {
    if (j < sf.num_structural) return sf.A.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(sf.A.rows());
    const auto& owner = t.row_of_slack();
    const Eigen::Index i = owner[static_cast<std::size_t>(j - t.first_slack())];
    e(i) = sf.sense[static_cast<std::size_t>(i)] == Sense::LessEqual ? 1.0 : -1.0;
    return e;
}

double row_scale(const LpProblem& p, Eigen::Index i, const Eigen::VectorXd& x) {
    double s = std::max(1.0, std::abs(p.rhs(i)));
    for (Eigen::Index j = 0; j < p.num_vars(); ++j) s = std::max(s, std::abs(p.A(i, j) * x(j)));
    return s;
}

}  // namespace

std::string_view to_string(Status s) {
    switch (s) {
        case Status::Optimal:
            return "optimal";
        case Status::Infeasible:
            return "infeasible";
        case Status::Unbounded:
            return "unbounded";
        case Status::NumericError:
            return "numeric_error";
    }
    return "unknown";
}

LpProblem::LpProblem(Eigen::Index num_vars)
    : objective(Eigen::VectorXd::Zero(num_vars)),
      A(0, num_vars),
      rhs(0),
      lower(Eigen::VectorXd::Constant(num_vars, -kInf)),
      upper(Eigen::VectorXd::Constant(num_vars, kInf)) {}

void LpProblem::add_row(const Eigen::Ref<const Eigen::RowVectorXd>& a, Sense s, double r) {
    if (a.size() != num_vars()) throw DimensionError("LpProblem::add_row: row length mismatch");
    A.conservativeResize(A.rows() + 1, Eigen::NoChange);
    A.row(A.rows() - 1) = a;
    rhs.conservativeResize(rhs.size() + 1);
    rhs(rhs.size() - 1) = r;
    sense.push_back(s);
}

void LpProblem::validate() const {
    const Eigen::Index n = objective.size();
    if (A.cols() != n || lower.size() != n || upper.size() != n) {
        throw DimensionError("LpProblem: variable count mismatch");
    }
    if (rhs.size() != A.rows() || static_cast<Eigen::Index>(sense.size()) != A.rows()) {
        throw DimensionError("LpProblem: row count mismatch");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        if (lower(j) > upper(j)) throw DimensionError("LpProblem: lower bound exceeds upper bound");
    }
}

LpResult solve(const LpProblem& p) {
    p.validate();
    const StandardForm sf = to_standard_form(p);
    Tableau tab(sf);
    LpResult res;

    Status st = tab.phase_one(res.iterations);
    if (st != Status::Optimal) {
        res.status = st;
        return res;
    }
    if (tab.phase_one_value() > kFeasibilityTol * (1.0 + sf.b.lpNorm<Eigen::Infinity>())) {
        res.status = Status::Infeasible;
        return res;
    }
    tab.purge_artificials();
    Eigen::Index unbounded_col = -1;
    st = tab.phase_two(res.iterations, unbounded_col);
    if (st == Status::Unbounded) {
        const Eigen::VectorXd d = tab.ray(unbounded_col);
        res.status = Status::Unbounded;
        res.ray = to_original(sf, d.head(sf.num_structural), /*homogeneous=*/true);
        return res;
    }
    if (st != Status::Optimal) {
        res.status = st;
        return res;
    }

    // Re-solve on the final basis from the original data.
    std::vector<Eigen::Index> rows;
    std::vector<Eigen::Index> cols;
    for (std::size_t i = 0; i < tab.basis().size(); ++i) {
        if (!tab.active()[i]) continue;
        rows.push_back(static_cast<Eigen::Index>(i));
        cols.push_back(tab.basis()[i]);
    }
    const auto r = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd Bm(r, r);
    Eigen::VectorXd bb(r);
    Eigen::VectorXd cb(r);
    for (Eigen::Index jj = 0; jj < r; ++jj) {
        const Eigen::VectorXd colv = full_column(sf, tab, cols[static_cast<std::size_t>(jj)]);
        for (Eigen::Index ii = 0; ii < r; ++ii) Bm(ii, jj) = colv(rows[static_cast<std::size_t>(ii)]);
        const Eigen::Index c = cols[static_cast<std::size_t>(jj)];
        cb(jj) = c < sf.num_structural ? sf.cost(c) : 0.0;
    }
    for (Eigen::Index ii = 0; ii < r; ++ii) bb(ii) = sf.b(rows[static_cast<std::size_t>(ii)]);

    Eigen::VectorXd xs = Eigen::VectorXd::Zero(tab.num_cols());
    Eigen::VectorXd ys = Eigen::VectorXd::Zero(sf.A.rows());
    if (r > 0) {
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(Bm);
        const Eigen::VectorXd xb = lu.solve(bb);
        const Eigen::VectorXd yb = lu.transpose().solve(cb);
        if (!xb.allFinite() || !yb.allFinite()) {
            res.status = Status::NumericError;
            return res;
        }
        for (Eigen::Index jj = 0; jj < r; ++jj) xs(cols[static_cast<std::size_t>(jj)]) = std::max(0.0, xb(jj));
        for (Eigen::Index ii = 0; ii < r; ++ii) ys(rows[static_cast<std::size_t>(ii)]) = yb(ii);
    }

    res.x = to_original(sf, xs.head(sf.num_structural), /*homogeneous=*/false);
    res.objective = p.objective.dot(res.x);
    res.duals.resize(p.num_rows());
    for (Eigen::Index i = 0; i < p.num_rows(); ++i) {
        res.duals(i) = sf.row_sign[static_cast<std::size_t>(i)] * ys(i);
    }
    res.dual_objective = sf.b.dot(ys) + sf.constant;

    // Post-solve verification. Rounding in the basis solve grows with the
    // largest magnitude in the problem, hence the global term.
    const double global = std::max(p.rhs.size() > 0 ? p.rhs.lpNorm<Eigen::Infinity>() : 0.0,
                                   res.x.size() > 0 ? res.x.lpNorm<Eigen::Infinity>() : 0.0);
    for (Eigen::Index i = 0; i < p.num_rows(); ++i) {
        const double ax = p.A.row(i).dot(res.x);
        const double tol = kFeasibilityTol * row_scale(p, i, res.x) + 1e-12 * global;
        const Sense s = p.sense[static_cast<std::size_t>(i)];
        const bool ok = (s == Sense::GreaterEqual && ax >= p.rhs(i) - tol) ||
                        (s == Sense::LessEqual && ax <= p.rhs(i) + tol) ||
                        (s == Sense::Equal && std::abs(ax - p.rhs(i)) <= tol);
        if (!ok) {
            res.status = Status::NumericError;
            return res;
        }
    }
    double cscale = 1.0;
    for (Eigen::Index j = 0; j < sf.num_structural; ++j) cscale = std::max(cscale, std::abs(sf.cost(j)));
    const double yscale = 1.0 + ys.lpNorm<Eigen::Infinity>();
    for (Eigen::Index j = 0; j < tab.first_artificial(); ++j) {
        const double cj = j < sf.num_structural ? sf.cost(j) : 0.0;
        const double reduced = cj - full_column(sf, tab, j).dot(ys);
        if (reduced < -1e-6 * cscale * yscale) {
            res.status = Status::NumericError;
            return res;
        }
    }
    // Both objectives may cancel large terms, so the gap tolerance also
    // scales with the summand magnitudes.
    const double terms = sf.b.cwiseAbs().dot(ys.cwiseAbs()) + p.objective.cwiseAbs().dot(res.x.cwiseAbs());
    if (std::abs(res.objective - res.dual_objective) > 1e-6 * (1.0 + std::abs(res.objective)) + 1e-12 * terms) {
        res.status = Status::NumericError;
        return res;
    }
    res.status = Status::Optimal;
    return res;
}

LpResult solve_feasibility(const Eigen::MatrixXd& A, const std::vector<Sense>& sense,
                           const Eigen::VectorXd& rhs) {
    return solve_feasibility(A, sense, rhs, Eigen::VectorXd::Constant(A.cols(), -kInf),
                             Eigen::VectorXd::Constant(A.cols(), kInf));
}

LpResult solve_feasibility(const Eigen::MatrixXd& A, const std::vector<Sense>& sense,
                           const Eigen::VectorXd& rhs, const Eigen::VectorXd& lower,
                           const Eigen::VectorXd& upper) {
    LpProblem p;
    p.objective = Eigen::VectorXd::Zero(A.cols());
    p.A = A;
    p.sense = sense;
    p.rhs = rhs;
    p.lower = lower;
    p.upper = upper;
    return solve(p);
}

}  // namespace dcpoly::lp

#include "dcpoly/poly_core.hpp"

#include "dcpoly/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dcpoly {

namespace {

constexpr Eigen::Index kGuardDim = 8;
constexpr Eigen::Index kGuardRows = 24;
constexpr double kActiveTol = 1e-9;

void check_guard(const HRep& H) {
    if (H.dim() > kGuardDim || H.rows() > kGuardRows) {
        throw GuardError("brute-force enumeration limited to n <= 8 and m <= 24");
    }
}

// Calls f(subset) for every k-subset of {0, ..., m-1} in lexicographic order.
template <typename F>
void for_each_subset(Eigen::Index m, Eigen::Index k, F&& f) {
    if (k > m) return;
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        f(idx);
        Eigen::Index i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (Eigen::Index j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return false;
}

}  // namespace

HRep::HRep(Eigen::MatrixXd B, Eigen::VectorXd c) : B_(std::move(B)), c_(std::move(c)) {
    if (B_.rows() != c_.size()) throw DimensionError("HRep: row count of B differs from length of c");
    if (B_.cols() < 1) throw DimensionError("HRep: dimension must be at least 1");
}

VRep::VRep(Eigen::MatrixXd points, Eigen::MatrixXd directions)
    : points_(std::move(points)), directions_(std::move(directions)) {
    if (points_.rows() != directions_.rows()) {
        if (directions_.cols() == 0) {
            directions_.resize(points_.rows(), 0);
        } else if (points_.cols() == 0) {
            points_.resize(directions_.rows(), 0);
        } else {
            throw DimensionError("VRep: points and directions live in different spaces");
        }
    }
    for (Eigen::Index j = 0; j < directions_.cols(); ++j) {
        if (directions_.col(j).isZero(0.0)) throw DimensionError("VRep: zero direction");
    }
}

PRep::PRep(Eigen::MatrixXd B, Eigen::MatrixXd C, Eigen::VectorXd c)
    : B_(std::move(B)), C_(std::move(C)), c_(std::move(c)) {
    if (C_.rows() != B_.rows()) {
        if (C_.cols() == 0) {
            C_.resize(B_.rows(), 0);
        } else {
            throw DimensionError("PRep: B and C row counts differ");
        }
    }
    if (B_.rows() != c_.size()) throw DimensionError("PRep: row count of B differs from length of c");
}

bool contains(const HRep& H, const Eigen::VectorXd& x, double tol) {
    if (x.size() != H.dim()) throw DimensionError("contains: point dimension mismatch");
    return ((H.B() * x - H.c()).array() >= -tol).all();
}

HRep recession_cone(const HRep& H) { return HRep(H.B(), Eigen::VectorXd::Zero(H.rows())); }

Eigen::VectorXd normalize_direction(const Eigen::VectorXd& d) {
    const double s = d.lpNorm<Eigen::Infinity>();
    return s > 0.0 ? Eigen::VectorXd(d / s) : d;
}

Eigen::MatrixXd unique_columns(const std::vector<Eigen::VectorXd>& cols, Eigen::Index dim, double tol) {
    std::vector<Eigen::VectorXd> kept;
    for (const auto& v : cols) {
        const bool dup = std::any_of(kept.begin(), kept.end(),
                                     [&](const Eigen::VectorXd& k) { return (k - v).norm() <= tol; });
        if (!dup) kept.push_back(v);
    }
    std::sort(kept.begin(), kept.end(), lex_less);
    Eigen::MatrixXd out(dim, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = kept[j];
    return out;
}

Eigen::MatrixXd brute_vertices(const HRep& H) {
    check_guard(H);
    const Eigen::Index n = H.dim();
    std::vector<Eigen::VectorXd> found;
    for_each_subset(H.rows(), n, [&](const std::vector<Eigen::Index>& rows) {
        Eigen::MatrixXd A(n, n);
        Eigen::VectorXd rhs(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            A.row(i) = H.B().row(rows[static_cast<std::size_t>(i)]);
            rhs(i) = H.c()(rows[static_cast<std::size_t>(i)]);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (lu.rank() < n) return;
        const Eigen::VectorXd x = lu.solve(rhs);
        if (contains(H, x, kActiveTol * std::max(1.0, x.lpNorm<Eigen::Infinity>()))) found.push_back(x);
    });
    return unique_columns(found, n);
}

Eigen::MatrixXd brute_extreme_directions(const HRep& H) {
    check_guard(H);
    const Eigen::Index n = H.dim();
    std::vector<Eigen::VectorXd> found;
    auto consider = [&](const Eigen::VectorXd& d) {
        for (double sign : {1.0, -1.0}) {
            const Eigen::VectorXd v = normalize_direction(sign * d);
            if (((H.B() * v).array() >= -kActiveTol).all()) found.push_back(v);
        }
    };
    if (n == 1) {
        consider(Eigen::VectorXd::Ones(1));
    } else {
        for_each_subset(H.rows(), n - 1, [&](const std::vector<Eigen::Index>& rows) {
            Eigen::MatrixXd A(n - 1, n);
            for (Eigen::Index i = 0; i < n - 1; ++i) A.row(i) = H.B().row(rows[static_cast<std::size_t>(i)]);
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (lu.rank() < n - 1) return;
            consider(lu.kernel().col(0));
        });
    }
    return unique_columns(found, n);
}

}  // namespace dcpoly

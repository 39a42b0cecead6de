#include "dcpoly/instances.hpp"

#include "dcpoly/errors.hpp"
#include "dcpoly/lp.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

namespace dcpoly {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using lp::Sense;

namespace {

// True when {z : A z >= 0} = {0}, i.e. 0 is interior to conv(rows of A).
bool pointed_origin(const MatrixXd& A) {
    const Index K = A.rows();
    const Index n = A.cols();
    if (K == 0) return n == 0;
    if (Eigen::FullPivLU<MatrixXd>(A).rank() < n) return false;
    // max t  s.t.  A' mu = 0, e' mu = 1, mu_j >= t, mu >= 0
    lp::LpProblem q(K + 1);
    q.objective(K) = -1.0;
    q.lower.head(K).setZero();
    q.upper(K) = 1.0;
    for (Index i = 0; i < n; ++i) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(K + 1);
        row.head(K) = A.col(i).transpose();
        q.add_row(row, Sense::Equal, 0.0);
    }
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(K + 1);
    sum.head(K).setOnes();
    q.add_row(sum, Sense::Equal, 1.0);
    for (Index j = 0; j < K; ++j) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(K + 1);
        row(j) = 1.0;
        row(K) = -1.0;
        q.add_row(row, Sense::GreaterEqual, 0.0);
    }
    const lp::LpResult r = lp::solve(q);
    return r.optimal() && -r.objective > 1e-9;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

MatrixXd diamond_ball() {
    MatrixXd B(4, 2);
    B << 1, 1, 1, -1, -1, 1, -1, -1;
    return B;
}

MatrixXd square_ball() {
    MatrixXd B(4, 2);
    B << 1, 0, 0, 1, -1, 0, 0, -1;
    return B;
}

MatrixXd hexagon_ball() {
    MatrixXd B(6, 2);
    for (int k = 0; k < 6; ++k) {
        const double a = k * std::numbers::pi / 3.0;
        B(k, 0) = std::cos(a);
        B(k, 1) = std::sin(a);
    }
    return B;
}

// |x_{i-1}| - x_i chain: u_i >= +-x_{i-1}, r >= coef * sum (u_i - x_i).
FunctionRep abs_chain_rep(int n, double coef) {
    const Index k = n - 1;
    const Index m = 2 * k + 1;
    MatrixXd B = MatrixXd::Zero(m, n);
    VectorXd b = VectorXd::Zero(m);
    MatrixXd C = MatrixXd::Zero(m, k);
    VectorXd c = VectorXd::Zero(m);
    for (Index i = 0; i < k; ++i) {
        B(2 * i, i) = -1.0;
        C(2 * i, i) = 1.0;
        B(2 * i + 1, i) = 1.0;
        C(2 * i + 1, i) = 1.0;
    }
    b(m - 1) = 1.0;
    for (Index i = 1; i < n; ++i) B(m - 1, i) = coef;
    C.row(m - 1).setConstant(-coef);
    return FunctionRep(B, b, C, c);
}

double abs_chain(const VectorXd& x, double coef) {
    double s = 0.0;
    for (Index i = 1; i < x.size(); ++i) s += std::abs(x(i - 1)) - x(i);
    return coef * s;
}

bool in_region(const MatrixXd& P, const VectorXd& p, const VectorXd& x) {
    if (P.rows() == 0) return true;
    const VectorXd slack = P * x - p;
    for (Index i = 0; i < slack.size(); ++i) {
        if (slack(i) < -1e-9 * std::max(1.0, std::abs(p(i)))) return false;
    }
    return true;
}

}  // namespace

bool operator==(const LocationInstance& a, const LocationInstance& b) {
    auto same = [](const MatrixXd& x, const MatrixXd& y) {
        return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
    };
    if (a.attraction_balls.size() != b.attraction_balls.size() ||
        a.repulsion_balls.size() != b.repulsion_balls.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.attraction_balls.size(); ++i) {
        if (!same(a.attraction_balls[i], b.attraction_balls[i])) return false;
    }
    for (std::size_t i = 0; i < a.repulsion_balls.size(); ++i) {
        if (!same(a.repulsion_balls[i], b.repulsion_balls[i])) return false;
    }
    return same(a.attraction, b.attraction) && same(a.attraction_weights, b.attraction_weights) &&
           same(a.repulsion, b.repulsion) && same(a.repulsion_weights, b.repulsion_weights) &&
           same(a.region_P, b.region_P) && same(a.region_p, b.region_p);
}

void validate(const LocationInstance& inst) {
    const Index n = inst.dim();
    if (n < 1) throw DimensionError("location: dimension must be at least 1");
    if (inst.attraction.rows() < 1 || inst.repulsion.rows() < 1) {
        throw DimensionError("location: need at least one attraction and one repulsion point");
    }
    if (inst.repulsion.cols() != n || inst.region_P.cols() != n) throw DimensionError("location: dimension mismatch");
    if (inst.attraction_weights.size() != inst.attraction.rows() ||
        static_cast<Index>(inst.attraction_balls.size()) != inst.attraction.rows() ||
        inst.repulsion_weights.size() != inst.repulsion.rows() ||
        static_cast<Index>(inst.repulsion_balls.size()) != inst.repulsion.rows() ||
        inst.region_p.size() != inst.region_P.rows()) {
        throw DimensionError("location: one weight and one ball per point, one bound per region row");
    }
    if ((inst.attraction_weights.array() <= 0.0).any() || (inst.repulsion_weights.array() <= 0.0).any()) {
        throw AssumptionError("location: weights must be positive");
    }
    for (const auto* balls : {&inst.attraction_balls, &inst.repulsion_balls}) {
        for (const MatrixXd& B : *balls) {
            if (B.cols() != n) throw DimensionError("location: ball dimension mismatch");
            if (!pointed_origin(B)) throw AssumptionError("location: unit ball is unbounded");
        }
    }
    if (!pointed_origin(inst.region_P)) throw AssumptionError("location: region is unbounded");
    const lp::LpResult f = lp::solve_feasibility(
        inst.region_P, std::vector<Sense>(static_cast<std::size_t>(inst.region_P.rows()), Sense::GreaterEqual),
        inst.region_p);
    if (!f.optimal()) throw AssumptionError("location: region is empty");
}

double gauge(const MatrixXd& ball, const VectorXd& z) { return std::max(0.0, (ball * z).maxCoeff()); }

double gauge_sum(const MatrixXd& points, const VectorXd& weights, const std::vector<MatrixXd>& balls,
                 const VectorXd& x) {
    double s = 0.0;
    for (Index i = 0; i < points.rows(); ++i) {
        s += weights(i) * gauge(balls[static_cast<std::size_t>(i)], x - points.row(i).transpose());
    }
    return s;
}

FunctionRep gauge_sum_rep(const MatrixXd& points, const VectorXd& weights, const std::vector<MatrixXd>& balls,
                          const MatrixXd& P, const VectorXd& p) {
    const Index n = points.cols();
    const Index M = points.rows();
    Index ball_rows = 0;
    for (const MatrixXd& B : balls) ball_rows += B.rows();
    const Index m = ball_rows + M + 1 + P.rows();
    MatrixXd Bm = MatrixXd::Zero(m, n);
    VectorXd b = VectorXd::Zero(m);
    MatrixXd C = MatrixXd::Zero(m, M);
    VectorXd c = VectorXd::Zero(m);
    Index row = 0;
    // -B_i x + lambda_i e >= -B_i a_i
    for (Index i = 0; i < M; ++i) {
        const MatrixXd& Bi = balls[static_cast<std::size_t>(i)];
        Bm.middleRows(row, Bi.rows()) = -Bi;
        C.block(row, i, Bi.rows(), 1).setOnes();
        c.segment(row, Bi.rows()) = -Bi * points.row(i).transpose();
        row += Bi.rows();
    }
    for (Index i = 0; i < M; ++i) C(row++, i) = 1.0;
    b(row) = 1.0;
    C.row(row) = -weights.transpose();
    ++row;
    if (P.rows() > 0) {
        Bm.bottomRows(P.rows()) = P;
        c.tail(P.rows()) = p;
    }
    return FunctionRep(Bm, b, C, c);
}

ConvexOracle gauge_sum_oracle(const MatrixXd& points, const VectorXd& weights, const std::vector<MatrixXd>& balls,
                              const MatrixXd& P, const VectorXd& p) {
    struct Data {
        MatrixXd points;
        VectorXd weights;
        std::vector<MatrixXd> balls;
        MatrixXd P;
        VectorXd p;
        FunctionRep rep;
    };
    auto d = std::make_shared<const Data>(Data{points, weights, balls, P, p, gauge_sum_rep(points, weights, balls, P, p)});
    ConvexOracle o;
    o.dim = points.cols();
    o.eval = [d](const VectorXd& x) -> ExtendedReal {
        if (!in_region(d->P, d->p, x)) return ExtendedReal::infinity();
        return gauge_sum(d->points, d->weights, d->balls, x);
    };
    // min sum_i w_i (B_i a_i)' mu_i - p' nu
    // s.t. sum_i w_i B_i' mu_i - P' nu = y, e' mu_i = 1, mu, nu >= 0
    o.conj_eval = [d](const VectorXd& y) -> ExtendedReal {
        const Index n = d->points.cols();
        const Index M = d->points.rows();
        Index nv = d->P.rows();
        for (const MatrixXd& B : d->balls) nv += B.rows();
        lp::LpProblem q(nv);
        q.lower.setZero();
        q.A = MatrixXd::Zero(n + M, nv);
        q.rhs = VectorXd::Zero(n + M);
        q.rhs.head(n) = y;
        q.rhs.tail(M).setOnes();
        q.sense.assign(static_cast<std::size_t>(n + M), Sense::Equal);
        Index col = 0;
        for (Index i = 0; i < M; ++i) {
            const MatrixXd& Bi = d->balls[static_cast<std::size_t>(i)];
            const double w = d->weights(i);
            q.A.block(0, col, n, Bi.rows()) = w * Bi.transpose();
            q.A.block(n + i, col, 1, Bi.rows()).setOnes();
            q.objective.segment(col, Bi.rows()) = w * (Bi * d->points.row(i).transpose());
            col += Bi.rows();
        }
        if (d->P.rows() > 0) {
            q.A.block(0, col, n, d->P.rows()) = -d->P.transpose();
            q.objective.tail(d->P.rows()) = -d->p;
        }
        const lp::LpResult r = lp::solve(q);
        if (r.status == lp::Status::Infeasible) return ExtendedReal::infinity();
        if (!r.optimal()) throw NumericError("gauge conjugate: LP failed");
        return r.objective;
    };
    o.argmin_shifted = [d](const VectorXd& y) { return minimize_shifted(d->rep, y); };
    return o;
}

InstanceBundle build_location(const LocationInstance& inst) {
    validate(inst);
    const Index n = inst.dim();
    InstanceBundle out;
    out.n = n;
    out.g_rep = gauge_sum_rep(inst.attraction, inst.attraction_weights, inst.attraction_balls, inst.region_P,
                              inst.region_p);
    out.h_rep = gauge_sum_rep(inst.repulsion, inst.repulsion_weights, inst.repulsion_balls, MatrixXd(0, n),
                              VectorXd(0));
    out.g_oracle = gauge_sum_oracle(inst.attraction, inst.attraction_weights, inst.attraction_balls, inst.region_P,
                                    inst.region_p);
    out.h_oracle = gauge_sum_oracle(inst.repulsion, inst.repulsion_weights, inst.repulsion_balls, MatrixXd(0, n),
                                    VectorXd(0));
    return out;
}

LocationInstance random_location(std::uint64_t seed, int num_attraction, int num_repulsion, int n) {
    if (n != 2) throw DimensionError("random_location: only the plane (n = 2) is supported");
    if (num_attraction < 1 || num_repulsion < 1) throw DimensionError("random_location: need at least one point per group");
    std::mt19937_64 rng(seed);
    const std::vector<MatrixXd> shapes{diamond_ball(), square_ball(), hexagon_ball()};
    LocationInstance inst;
    auto draw = [&](int count, MatrixXd& pts, VectorXd& w, std::vector<MatrixXd>& balls) {
        pts.resize(count, n);
        w.resize(count);
        balls.clear();
        for (int i = 0; i < count; ++i) {
            for (int j = 0; j < n; ++j) pts(i, j) = -10.0 + 20.0 * uniform01(rng);
            w(i) = 0.5 + 1.5 * uniform01(rng);
            const auto pick = std::min<std::size_t>(2, static_cast<std::size_t>(3.0 * uniform01(rng)));
            balls.push_back(shapes[pick]);
        }
    };
    draw(num_attraction, inst.attraction, inst.attraction_weights, inst.attraction_balls);
    draw(num_repulsion, inst.repulsion, inst.repulsion_weights, inst.repulsion_balls);
    inst.region_P.resize(2 * n, n);
    inst.region_P << MatrixXd::Identity(n, n), -MatrixXd::Identity(n, n);
    inst.region_p = VectorXd::Constant(2 * n, -15.0);
    return inst;
}

InstanceBundle build_ferrer(int n) {
    if (n < 2 || n > 10) throw DimensionError("build_ferrer: need 2 <= n <= 10");
    // aux (s, u_2..u_n, t_2..t_n)
    const Index k = 1 + 2 * (n - 1);
    const Index m = 2 + 4 * (n - 1) + 1;
    MatrixXd B = MatrixXd::Zero(m, n);
    VectorXd b = VectorXd::Zero(m);
    MatrixXd C = MatrixXd::Zero(m, k);
    VectorXd c = VectorXd::Zero(m);
    B(0, 0) = -1.0;
    C(0, 0) = 1.0;
    c(0) = -1.0;
    B(1, 0) = 1.0;
    C(1, 0) = 1.0;
    c(1) = 1.0;
    Index row = 2;
    for (Index i = 1; i < n; ++i) {
        const Index u = i;
        const Index t = (n - 1) + i;
        B(row, i - 1) = -1.0;
        C(row++, u) = 1.0;
        B(row, i - 1) = 1.0;
        C(row++, u) = 1.0;
        B(row, i) = 1.0;
        C(row, u) = -1.0;
        C(row++, t) = 1.0;
        C(row++, t) = 1.0;
    }
    b(row) = 1.0;
    C(row, 0) = -1.0;
    for (Index i = 1; i < n; ++i) C(row, (n - 1) + i) = -200.0;

    InstanceBundle out;
    out.n = n;
    out.g_rep = FunctionRep(B, b, C, c);
    out.h_rep = abs_chain_rep(n, 100.0);
    ConvexOracle g = oracle_from_rep(*out.g_rep);
    g.eval = [](const VectorXd& x) -> ExtendedReal {
        double s = std::abs(x(0) - 1.0);
        for (Index i = 1; i < x.size(); ++i) s += 200.0 * std::max(0.0, std::abs(x(i - 1)) - x(i));
        return s;
    };
    ConvexOracle h = oracle_from_rep(*out.h_rep);
    h.eval = [](const VectorXd& x) -> ExtendedReal { return abs_chain(x, 100.0); };
    out.g_oracle = g;
    out.h_oracle = h;
    out.reference = Reference{0.0, VectorXd::Ones(n), "analytic"};
    return out;
}

MatrixXd quadratic_box_matrix(int n, int m) {
    if (m < 1 || n < m) throw DimensionError("quadratic_box_matrix: need 1 <= m <= n");
    MatrixXd P(m, n);
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n; ++j) {
            P(i - 1, j - 1) = std::floor(m * std::sin(static_cast<double>((j - 1) * m + i)));
        }
    }
    return P;
}

Eigen::VectorXd quadratic_box_brute_force(const MatrixXd& P) {
    const Index n = P.cols();
    if (n > 20) throw GuardError("quadratic_box_brute_force: n <= 20 required");
    VectorXd best_x;
    double best = -1.0;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
        VectorXd x(n);
        for (Index i = 0; i < n; ++i) x(i) = ((k >> i) & 1U) ? -1.0 : 1.0;
        const double v = (P * x).squaredNorm();
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    return best_x;
}

Eigen::VectorXd recover_box_point(const MatrixXd& P, const VectorXd& y) {
    const Index n = P.cols();
    if (n > 20) throw GuardError("recover_box_point: n <= 20 required");
    VectorXd best_x;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
        VectorXd x(n);
        for (Index i = 0; i < n; ++i) x(i) = ((k >> i) & 1U) ? -1.0 : 1.0;
        const double d = (P * x - y).norm();
        if (d < best) {
            best = d;
            best_x = x;
        }
    }
    return best_x;
}

InstanceBundle build_quadratic_box(int n, int m) {
    if (n > 16) throw DimensionError("build_quadratic_box: n <= 16 required");
    const MatrixXd P = quadratic_box_matrix(n, m);
    // (y, r) with aux x: +-(y - P x) >= 0, -1 <= x <= 1, r >= 0
    const Index rows = 2 * m + 2 * n + 1;
    MatrixXd B = MatrixXd::Zero(rows, m);
    VectorXd b = VectorXd::Zero(rows);
    MatrixXd C = MatrixXd::Zero(rows, n);
    VectorXd c = VectorXd::Zero(rows);
    B.topRows(m) = MatrixXd::Identity(m, m);
    C.topRows(m) = -P;
    B.middleRows(m, m) = -MatrixXd::Identity(m, m);
    C.middleRows(m, m) = P;
    C.middleRows(2 * m, n) = MatrixXd::Identity(n, n);
    C.middleRows(2 * m + n, n) = -MatrixXd::Identity(n, n);
    c.segment(2 * m, 2 * n).setConstant(-1.0);
    b(rows - 1) = 1.0;

    InstanceBundle out;
    out.n = m;
    out.g_rep = FunctionRep(B, b, C, c);
    out.h_oracle = quadratic_oracle(MatrixXd::Identity(m, m));
    const VectorXd x = quadratic_box_brute_force(P);
    const VectorXd y = P * x;
    out.reference = Reference{-y.squaredNorm(), y, "brute_force"};
    return out;
}

InstanceBundle build_quadratic_g(int n) {
    if (n < 2 || n > 10) throw DimensionError("build_quadratic_g: need 2 <= n <= 10");
    const MatrixXd L = MatrixXd::Ones(n, n).triangularView<Eigen::Lower>();
    MatrixXd Linv = MatrixXd::Identity(n, n);
    for (Index i = 1; i < n; ++i) Linv(i, i - 1) = -1.0;
    auto Q = std::make_shared<const MatrixXd>(L.transpose() * L);
    auto Qinv = std::make_shared<const MatrixXd>(Linv * Linv.transpose());

    InstanceBundle out;
    out.n = n;
    out.h_rep = abs_chain_rep(n, 1.0);
    ConvexOracle g;
    g.dim = n;
    g.eval = [Q](const VectorXd& x) -> ExtendedReal { return x.dot(*Q * x); };
    g.conj_eval = [Qinv](const VectorXd& y) -> ExtendedReal { return 0.25 * y.dot(*Qinv * y); };
    g.argmin_shifted = [Qinv](const VectorXd& y) -> std::optional<VectorXd> { return VectorXd(0.5 * (*Qinv * y)); };
    out.g_oracle = g;
    ConvexOracle h = oracle_from_rep(*out.h_rep);
    h.eval = [](const VectorXd& x) -> ExtendedReal { return abs_chain(x, 1.0); };
    out.h_oracle = h;
    // Published optimal values for n = 2..10.
    out.reference = Reference{n == 2 ? -1.25 : -(n - 0.25), std::nullopt, "published"};
    return out;
}

ConvexOracle quadratic_oracle(const MatrixXd& Q) {
    if (Q.rows() != Q.cols() || Q.rows() < 1) throw DimensionError("quadratic_oracle: Q must be square");
    if (!Q.isApprox(Q.transpose(), 1e-12)) throw DimensionError("quadratic_oracle: Q must be symmetric");
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(Q);
    const VectorXd& lam = es.eigenvalues();
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    if (lam.minCoeff() < -1e-10 * scale) throw AssumptionError("quadratic_oracle: Q is not positive semidefinite");
    struct Data {
        MatrixXd Q;
        MatrixXd range;   // orthonormal basis of range(Q)
        VectorXd inv;     // reciprocal eigenvalues on the range
    };
    auto d = std::make_shared<Data>();
    d->Q = Q;
    std::vector<Index> keep;
    for (Index i = 0; i < lam.size(); ++i) {
        if (lam(i) > 1e-12 * scale) keep.push_back(i);
    }
    d->range.resize(Q.rows(), static_cast<Index>(keep.size()));
    d->inv.resize(static_cast<Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
        d->range.col(static_cast<Index>(j)) = es.eigenvectors().col(keep[j]);
        d->inv(static_cast<Index>(j)) = 1.0 / lam(keep[j]);
    }
    // Coordinates of y in the range basis, or nullopt when y is off the range.
    auto coords = [d](const VectorXd& y) -> std::optional<VectorXd> {
        VectorXd a = d->range.transpose() * y;
        if ((y - d->range * a).norm() > 1e-9 * std::max(1.0, y.norm())) return std::nullopt;
        return a;
    };
    ConvexOracle o;
    o.dim = Q.rows();
    o.eval = [d](const VectorXd& x) -> ExtendedReal { return x.dot(d->Q * x); };
    o.conj_eval = [d, coords](const VectorXd& y) -> ExtendedReal {
        const auto a = coords(y);
        if (!a) return ExtendedReal::infinity();
        return 0.25 * a->cwiseProduct(d->inv).dot(*a);
    };
    o.argmin_shifted = [d, coords](const VectorXd& y) -> std::optional<VectorXd> {
        const auto a = coords(y);
        if (!a) return std::nullopt;
        return VectorXd(0.5 * d->range * a->cwiseProduct(d->inv));
    };
    return o;
}

}  // namespace dcpoly

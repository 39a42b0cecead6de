#include "dcpoly/function_rep.hpp"

#include "dcpoly/errors.hpp"
#include "dcpoly/lp.hpp"
#include "dcpoly/projection.hpp"

#include <stdexcept>

namespace dcpoly {

using lp::Sense;

double ExtendedReal::value() const {
    if (!finite_) throw std::logic_error("ExtendedReal::value: +inf has no finite value");
    return value_;
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& v) {
    if (v.is_infinite()) return os << "+inf";
    return os << v.value_;
}

namespace {

// Appends the row block [Bx | br | Cu] >= c as a pair of matrices.
struct RowBuilder {
    Eigen::Index n;
    Eigen::Index k;
    std::vector<Eigen::RowVectorXd> rows;  // length n + 1 + k
    std::vector<double> rhs;

    void add(const Eigen::RowVectorXd& row, double r) {
        rows.push_back(row);
        rhs.push_back(r);
    }
    // Adds a' z = r as the pair a' z >= r, -a' z >= -r.
    void add_equal(const Eigen::RowVectorXd& row, double r) {
        add(row, r);
        add(-row, -r);
    }

    FunctionRep build() const {
        const auto m = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd B(m, n);
        Eigen::VectorXd b(m);
        Eigen::MatrixXd C(m, k);
        Eigen::VectorXd c(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto& row = rows[static_cast<std::size_t>(i)];
            B.row(i) = row.head(n);
            b(i) = row(n);
            C.row(i) = row.tail(k);
            c(i) = rhs[static_cast<std::size_t>(i)];
        }
        return FunctionRep(B, b, C, c);
    }
};

}  // namespace

FunctionRep::FunctionRep(Eigen::MatrixXd B, Eigen::VectorXd b, Eigen::MatrixXd C, Eigen::VectorXd c)
    : B_(std::move(B)), b_(std::move(b)), C_(std::move(C)), c_(std::move(c)) {
    if (C_.rows() != B_.rows() && C_.cols() == 0) C_.resize(B_.rows(), 0);
    if (b_.size() != B_.rows() || C_.rows() != B_.rows() || c_.size() != B_.rows()) {
        throw DimensionError("FunctionRep: B, b, C, c must share the row count");
    }
    if (B_.cols() < 1) throw DimensionError("FunctionRep: argument dimension must be at least 1");
    const Eigen::Index nv = dim() + 1 + num_aux();
    Eigen::MatrixXd A(rows(), nv);
    A << B_, b_, C_;
    const lp::LpResult r =
        lp::solve_feasibility(A, std::vector<Sense>(static_cast<std::size_t>(rows()), Sense::GreaterEqual), c_);
    if (r.status == lp::Status::NumericError) throw NumericError("FunctionRep: properness check failed");
    proper_ = r.optimal();
}

PRep FunctionRep::epigraph() const {
    Eigen::MatrixXd Bx(rows(), dim() + 1);
    Bx << B_, b_;
    return PRep(Bx, C_, c_);
}

FunctionRep from_max_affine(const Eigen::MatrixXd& D, const Eigen::VectorXd& d, const Eigen::MatrixXd& P,
                            const Eigen::VectorXd& p) {
    if (D.rows() < 1) throw DimensionError("from_max_affine: at least one affine piece is required");
    if (D.rows() != d.size() || P.rows() != p.size() || (P.rows() > 0 && P.cols() != D.cols())) {
        throw DimensionError("from_max_affine: inconsistent dimensions");
    }
    const Eigen::Index n = D.cols();
    const Eigen::Index m = D.rows() + P.rows();
    Eigen::MatrixXd B(m, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd c(m);
    B.topRows(D.rows()) = -D;
    b.head(D.rows()).setOnes();
    c.head(D.rows()) = d;
    if (P.rows() > 0) {
        B.bottomRows(P.rows()) = P;
        c.tail(P.rows()) = p;
    }
    return FunctionRep(B, b, Eigen::MatrixXd(m, 0), c);
}

FunctionRep from_max_affine(const Eigen::MatrixXd& D, const Eigen::VectorXd& d) {
    return from_max_affine(D, d, Eigen::MatrixXd(0, D.cols()), Eigen::VectorXd(0));
}

FunctionRep from_epigraph_vrep(const VRep& v) {
    const Eigen::Index n = v.dim() - 1;
    if (n < 1 || v.num_points() < 1) throw DimensionError("from_epigraph_vrep: need a point in R^{n+1}, n >= 1");
    const Eigen::Index r = v.num_points();
    const Eigen::Index s = v.num_directions();
    RowBuilder rb{n, r + s, {}, {}};
    // z = V lambda + D mu
    for (Eigen::Index i = 0; i <= n; ++i) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n + 1 + r + s);
        row(i) = -1.0;
        row.segment(n + 1, r) = v.points().row(i);
        row.segment(n + 1 + r, s) = v.directions().row(i);
        rb.add_equal(row, 0.0);
    }
    for (Eigen::Index j = 0; j < r + s; ++j) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n + 1 + r + s);
        row(n + 1 + j) = 1.0;
        rb.add(row, 0.0);
    }
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(n + 1 + r + s);
    sum.segment(n + 1, r).setOnes();
    rb.add_equal(sum, 1.0);
    return rb.build();
}

FunctionRep inf_convolution(const FunctionRep& g, const FunctionRep& h) {
    if (g.dim() != h.dim()) throw DimensionError("inf_convolution: argument dimensions differ");
    const Eigen::Index n = g.dim();
    const Eigen::Index kg = g.num_aux();
    const Eigen::Index kh = h.num_aux();
    // auxiliaries: (x_g, r_g, u_g, x_h, r_h, u_h)
    const Eigen::Index k = (n + 1) + kg + (n + 1) + kh;
    const Eigen::Index width = n + 1 + k;
    const Eigen::Index og = n + 1;
    const Eigen::Index oh = og + n + 1 + kg;
    RowBuilder rb{n, k, {}, {}};
    for (Eigen::Index i = 0; i <= n; ++i) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(width);
        row(i) = 1.0;
        row(og + i) = -1.0;
        row(oh + i) = -1.0;
        rb.add_equal(row, 0.0);
    }
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(width);
        row.segment(og, n) = g.B().row(i);
        row(og + n) = g.b()(i);
        row.segment(og + n + 1, kg) = g.C().row(i);
        rb.add(row, g.c()(i));
    }
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(width);
        row.segment(oh, n) = h.B().row(i);
        row(oh + n) = h.b()(i);
        row.segment(oh + n + 1, kh) = h.C().row(i);
        rb.add(row, h.c()(i));
    }
    return rb.build();
}

FunctionRep conjugate(const FunctionRep& f) {
    if (!f.proper()) throw AssumptionError("conjugate: the function is not proper (empty epigraph)");
    const Eigen::Index n = f.dim();
    const Eigen::Index m = f.rows();
    const Eigen::Index width = n + 1 + m;  // (x*, r*, v)
    RowBuilder rb{n, m, {}, {}};
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(width);
        row(i) = 1.0;
        row.tail(m) = f.B().col(i).transpose();
        rb.add_equal(row, 0.0);
    }
    for (Eigen::Index j = 0; j < f.num_aux(); ++j) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(width);
        row.tail(m) = f.C().col(j).transpose();
        rb.add_equal(row, 0.0);
    }
    {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(width);
        row.tail(m) = f.b().transpose();
        rb.add_equal(row, 1.0);
    }
    {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(width);
        row(n) = 1.0;
        row.tail(m) = f.c().transpose();
        rb.add(row, 0.0);
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(width);
        row(n + 1 + i) = 1.0;
        rb.add(row, 0.0);
    }
    return rb.build();
}

ExtendedReal evaluate(const FunctionRep& f, const Eigen::VectorXd& x) {
    if (x.size() != f.dim()) throw DimensionError("evaluate: point dimension mismatch");
    lp::LpProblem q(1 + f.num_aux());
    q.objective(0) = 1.0;
    q.A.resize(f.rows(), 1 + f.num_aux());
    q.A << f.b(), f.C();
    q.rhs = f.c() - f.B() * x;
    q.sense.assign(static_cast<std::size_t>(f.rows()), Sense::GreaterEqual);
    const lp::LpResult r = lp::solve(q);
    switch (r.status) {
        case lp::Status::Optimal:
            return r.objective;
        case lp::Status::Infeasible:
            return ExtendedReal::infinity();
        case lp::Status::Unbounded:
            throw AssumptionError("evaluate: value -inf, the rows do not represent an epigraph");
        case lp::Status::NumericError:
            break;
    }
    throw NumericError("evaluate: LP failed");
}

std::optional<Eigen::VectorXd> minimize_shifted(const FunctionRep& f, const Eigen::VectorXd& y) {
    if (y.size() != f.dim()) throw DimensionError("minimize_shifted: slope dimension mismatch");
    const Eigen::Index n = f.dim();
    lp::LpProblem q(n + 1 + f.num_aux());
    q.objective.head(n) = -y;
    q.objective(n) = 1.0;
    q.A.resize(f.rows(), n + 1 + f.num_aux());
    q.A << f.B(), f.b(), f.C();
    q.rhs = f.c();
    q.sense.assign(static_cast<std::size_t>(f.rows()), Sense::GreaterEqual);
    const lp::LpResult r = lp::solve(q);
    if (r.status == lp::Status::NumericError) throw NumericError("minimize_shifted: LP failed");
    if (!r.optimal()) return std::nullopt;
    return Eigen::VectorXd(r.x.head(n));
}

EpigraphVertices epigraph_vertices(const FunctionRep& f) {
    VRep v(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0));
    try {
        v = project(f.epigraph());
    } catch (const AssumptionError& e) {
        throw AssumptionError(std::string("epigraph has no vertex: ") + e.what());
    } catch (const InfeasibleError&) {
        throw AssumptionError("epigraph has no vertex: the function is not proper");
    }
    if (v.num_points() == 0) throw AssumptionError("epigraph has no vertex");
    const Eigen::Index n = f.dim();
    EpigraphVertices out;
    out.points = v.points().topRows(n);
    out.values = v.points().row(n).transpose();
    out.directions = v.directions();
    return out;
}

}  // namespace dcpoly

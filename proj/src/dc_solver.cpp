#include "dcpoly/dc_solver.hpp"

#include "dcpoly/errors.hpp"

#include <cmath>
#include <memory>

namespace dcpoly {

std::string to_string(Algorithm a) { return a == Algorithm::Primal ? "primal" : "dual"; }

ConvexOracle oracle_from_rep(const FunctionRep& f) {
    auto rep = std::make_shared<const FunctionRep>(f);
    auto conj = std::make_shared<const FunctionRep>(conjugate(f));
    ConvexOracle o;
    o.dim = f.dim();
    o.eval = [rep](const Eigen::VectorXd& x) { return evaluate(*rep, x); };
    o.conj_eval = [conj](const Eigen::VectorXd& y) { return evaluate(*conj, y); };
    o.argmin_shifted = [rep](const Eigen::VectorXd& y) { return minimize_shifted(*rep, y); };
    return o;
}

namespace {

bool exceeds(const ExtendedReal& a, const ExtendedReal& b) {
    if (b.is_infinite()) return false;
    if (a.is_infinite()) return true;
    return a.value() > b.value() + kObjectiveTol * std::max(1.0, std::abs(b.value()));
}

// Index of the smallest entry; later entries win only when smaller by more
// than the tie tolerance.
Eigen::Index argmin_lowest(const std::vector<double>& v) {
    Eigen::Index best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double ref = v[static_cast<std::size_t>(best)];
        if (v[i] < ref - kObjectiveTol * std::max(1.0, std::abs(ref))) best = static_cast<Eigen::Index>(i);
    }
    return best;
}

}  // namespace

UnboundednessDiagnosis check_unbounded(const Eigen::MatrixXd& vertices, const Eigen::MatrixXd& directions,
                                       const std::function<ExtendedReal(const Eigen::VectorXd&)>& objective,
                                       double beta) {
    UnboundednessDiagnosis out;
    if (directions.cols() == 0 || vertices.cols() == 0) return out;
    if (!(beta > 0.0)) throw DimensionError("check_unbounded: beta must be positive");
    std::vector<ExtendedReal> base;
    base.reserve(static_cast<std::size_t>(vertices.cols()));
    for (Eigen::Index i = 0; i < vertices.cols(); ++i) base.push_back(objective(vertices.col(i)));
    for (double step = beta; step <= 1e6 * (1.0 + 1e-12); step *= 10.0) {
        for (Eigen::Index i = 0; i < vertices.cols(); ++i) {
            for (Eigen::Index j = 0; j < directions.cols(); ++j) {
                const Eigen::VectorXd z = vertices.col(i) + step * directions.col(j);
                if (exceeds(objective(z), base[static_cast<std::size_t>(i)])) {
                    out.unbounded = true;
                    out.vertex = i;
                    out.direction = j;
                    out.beta = step;
                    return out;
                }
            }
        }
    }
    return out;
}

DcSolution solve_primal(const FunctionRep& g, const ConvexOracle& h) {
    if (h.dim != g.dim() || !h.eval) throw DimensionError("solve_primal: h must be a function on R^n with eval");
    const Eigen::Index n = g.dim();
    const EpigraphVertices ev = epigraph_vertices(g);
    const Eigen::Index N = ev.size();

    std::vector<double> scores(static_cast<std::size_t>(N));
    Eigen::Index infinite = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
        const ExtendedReal hv = h.eval(ev.points.col(i));
        if (hv.is_infinite()) {
            ++infinite;
            continue;
        }
        scores[static_cast<std::size_t>(i)] = ev.values(i) - hv.value();
    }
    if (infinite == N) throw InfeasibleError("solve_primal: h is +inf at every vertex of epi g");
    if (infinite > 0) throw AssumptionError("solve_primal: h is +inf at some vertex of epi g");

    Eigen::MatrixXd stacked(n + 1, N);
    stacked.topRows(n) = ev.points;
    stacked.row(n) = ev.values.transpose();
    const auto diag = check_unbounded(stacked, ev.directions, [&](const Eigen::VectorXd& z) -> ExtendedReal {
        const ExtendedReal hv = h.eval(z.head(n));
        if (hv.is_infinite()) return hv;
        return hv.value() - z(n);
    });
    if (diag.unbounded) throw UnboundedError("solve_primal: g - h is unbounded below along an extreme direction");

    const Eigen::Index j = argmin_lowest(scores);
    DcSolution s;
    s.algorithm = Algorithm::Primal;
    s.x_opt = ev.points.col(j);
    s.value = scores[static_cast<std::size_t>(j)];
    s.vertex_count = N;
    s.certificate.kind = Algorithm::Primal;
    s.certificate.point = stacked.col(j);
    s.certificate.value = s.value;
    return s;
}

DcSolution solve_dual(const FunctionRep& h, const ConvexOracle& g) {
    if (g.dim != h.dim() || !g.eval || !g.conj_eval || !g.argmin_shifted) {
        throw DimensionError("solve_dual: g must be a function on R^n with eval, conj_eval and argmin_shifted");
    }
    if (!g.closed) throw ClosednessError("solve_dual: g is not closed");
    const Eigen::Index n = h.dim();
    const FunctionRep hstar = conjugate(h);
    const EpigraphVertices ev = epigraph_vertices(hstar);
    const Eigen::Index N = ev.size();

    std::vector<double> scores(static_cast<std::size_t>(N));
    Eigen::Index infinite = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
        const ExtendedReal gv = g.conj_eval(ev.points.col(i));
        if (gv.is_infinite()) {
            ++infinite;
            continue;
        }
        scores[static_cast<std::size_t>(i)] = ev.values(i) - gv.value();
    }
    if (infinite == N) throw InfeasibleError("solve_dual: g* is +inf at every vertex of epi h*");
    if (infinite > 0) throw UnboundedError("solve_dual: g* is +inf at a vertex of epi h*, the dual is unbounded");

    Eigen::MatrixXd stacked(n + 1, N);
    stacked.topRows(n) = ev.points;
    stacked.row(n) = ev.values.transpose();
    const auto diag = check_unbounded(stacked, ev.directions, [&](const Eigen::VectorXd& z) -> ExtendedReal {
        const ExtendedReal gv = g.conj_eval(z.head(n));
        if (gv.is_infinite()) return gv;
        return gv.value() - z(n);
    });
    if (diag.unbounded) throw UnboundedError("solve_dual: h* - g* is unbounded below along an extreme direction");

    const Eigen::Index j = argmin_lowest(scores);
    const Eigen::VectorXd y = ev.points.col(j);
    const std::optional<Eigen::VectorXd> x = g.argmin_shifted(y);
    if (!x) throw AssumptionError("solve_dual: min g(x) - y'x has no solution at the selected vertex");
    const ExtendedReal gx = g.eval(*x);
    const ExtendedReal hx = evaluate(h, *x);
    if (gx.is_infinite() || hx.is_infinite()) {
        throw AssumptionError("solve_dual: the recovered point is outside dom g or dom h");
    }

    DcSolution s;
    s.algorithm = Algorithm::Dual;
    s.x_opt = *x;
    s.value = gx.value() - hx.value();
    s.vertex_count = N;
    s.certificate.kind = Algorithm::Dual;
    s.certificate.point = stacked.col(j);
    s.certificate.value = scores[static_cast<std::size_t>(j)];
    return s;
}

double toland_singer_gap(const DcSolution& primal, const DcSolution& dual) {
    return std::abs(primal.value - dual.value);
}

}  // namespace dcpoly

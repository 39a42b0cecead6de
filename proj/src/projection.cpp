#include "dcpoly/projection.hpp"

#include "dcpoly/double_description.hpp"
#include "dcpoly/errors.hpp"
#include "dcpoly/lp.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace dcpoly {

namespace {

using lp::Sense;

constexpr std::size_t kMaxCuts = 200000;
constexpr int kMaxGeneratorRounds = 1000;
constexpr double kLinealityTol = 1e-7;
// Rays of the homogenized outer polyhedron with last coordinate below this
// are directions.
constexpr double kHomogeneousTol = 1e-10;

// Feasible set of the projection as LP rows over (x, u).
lp::LpProblem feasible_set_lp(const PRep& p) {
    const Eigen::Index nv = p.dim() + p.num_aux();
    lp::LpProblem lpp(nv);
    lpp.A.resize(p.rows(), nv);
    lpp.A << p.B(), p.C();
    lpp.rhs = p.c();
    lpp.sense.assign(static_cast<std::size_t>(p.rows()), Sense::GreaterEqual);
    return lpp;
}

lp::LpResult checked(const lp::LpProblem& p, std::size_t& counter) {
    ++counter;
    return lp::solve(p);
}

struct Engine {
    const MolpProblem& molp;
    std::size_t lps = 0;
    std::size_t cuts = 0;

    // Objective value z(x,u) of an LP solution over (x, u, ...).
    Eigen::VectorXd image_of(const Eigen::VectorXd& xu) const {
        return molp.objective * xu.head(molp.objective.cols());
    }

    // min w' z(x,u) over the feasible set. When unbounded, the image of the
    // LP ray is appended to gens and nullopt is returned.
    std::optional<double> weighted_min(const Eigen::VectorXd& w, std::vector<Eigen::VectorXd>& gens) {
        lp::LpProblem q = feasible_set_lp(molp.feasible);
        q.objective = molp.objective.transpose() * w;
        const lp::LpResult r = checked(q, lps);
        if (r.optimal()) return r.objective;
        if (r.status == lp::Status::Unbounded) {
            const Eigen::VectorXd d = image_of(r.ray);
            if (d.lpNorm<Eigen::Infinity>() > 0.0) {
                // A ray close to a known generator means that generator is
                // inaccurate; the LP ray replaces it.
                const Eigen::VectorXd dn = normalize_direction(d);
                for (auto& g : gens) {
                    if ((g - dn).lpNorm<Eigen::Infinity>() < 1e-6) {
                        g = dn;
                        return std::nullopt;
                    }
                }
                gens.push_back(dn);
                return std::nullopt;
            }
        }
        throw NumericError(std::string("projection: weighted-sum LP failed: ") + std::string(lp::to_string(r.status)));
    }

    VRep run() {
        const PRep& p = molp.feasible;
        const Eigen::Index q = molp.num_objectives();
        {
            const lp::LpResult fr = checked(feasible_set_lp(p), lps);
            if (fr.status == lp::Status::Infeasible) throw InfeasibleError("projection: feasible set is empty");
            if (!fr.optimal()) throw NumericError("projection: feasibility LP failed");
        }
        if (has_lineality(p)) throw AssumptionError("projection contains a line, so the upper image has no vertex");

        // Initial outer approximation: supporting halfspaces whose normals
        // generate the dual of the recession cone of the upper image. The
        // cone starts as the orthant; every weighted-sum LP that is unbounded
        // contributes the image of its ray as a further generator, and the
        // dual cone is recomputed until all weighted sums are bounded.
        std::vector<Eigen::VectorXd> gens;
        for (Eigen::Index i = 0; i < q; ++i) gens.push_back(Eigen::VectorXd::Unit(q, i));
        std::vector<Eigen::VectorXd> rows;
        for (int round = 0;; ++round) {
            if (round > kMaxGeneratorRounds) throw NumericError("projection: recession cone does not stabilize");
            rows.clear();
            bool complete = true;
            const ConeEnumerator dual(q, gens);
            for (const auto& ray : dual.rays()) {
                Eigen::VectorXd w = ray.v.cwiseMax(0.0);
                w /= w.sum();
                const std::optional<double> beta = weighted_min(w, gens);
                if (beta) {
                    Eigen::VectorXd row(q + 1);
                    row << w, -*beta;
                    rows.push_back(row);
                } else {
                    complete = false;
                }
            }
            if (complete) break;
        }
        rows.push_back(Eigen::VectorXd::Unit(q + 1, q));
        ConeEnumerator outer(q + 1, rows);

        // Ray-shooting LP over (x, u, alpha); the last q rows change per call.
        lp::LpProblem shoot = feasible_set_lp(p);
        const Eigen::Index nv = p.dim() + p.num_aux();
        {
            lp::LpProblem ext(nv + 1);
            ext.A.resize(p.rows() + q, nv + 1);
            ext.A.setZero();
            ext.A.topLeftCorner(p.rows(), nv) = shoot.A;
            ext.A.bottomLeftCorner(q, nv) = molp.objective;
            ext.A.bottomRightCorner(q, 1).setConstant(-1.0);
            ext.sense = shoot.sense;
            ext.sense.resize(static_cast<std::size_t>(p.rows() + q), Sense::LessEqual);
            ext.rhs = Eigen::VectorXd::Zero(p.rows() + q);
            ext.rhs.head(p.rows()) = p.c();
            ext.objective(nv) = 1.0;
            shoot = std::move(ext);
        }

        while (true) {
            auto& rays = outer.rays();
            std::size_t pick = rays.size();
            for (std::size_t r = 0; r < rays.size(); ++r) {
                if (!rays[r].marked && rays[r].v(q) > kHomogeneousTol) {
                    pick = r;
                    break;
                }
            }
            if (pick == rays.size()) break;
            if (cuts > kMaxCuts) throw NumericError("projection: cut limit exceeded");
            const Eigen::VectorXd t = rays[pick].v.head(q) / rays[pick].v(q);
            shoot.rhs.tail(q) = t;
            const lp::LpResult r = checked(shoot, lps);
            if (!r.optimal()) throw NumericError(std::string("projection: vertex test LP failed: ") + std::string(lp::to_string(r.status)));
            const double alpha = r.x(nv);
            if (alpha <= kBensonTol * std::max(1.0, t.lpNorm<Eigen::Infinity>())) {
                rays[pick].marked = true;
                continue;
            }
            Eigen::VectorXd w = (-r.duals.tail(q)).cwiseMax(0.0);
            if (w.sum() <= 0.0) throw NumericError("projection: degenerate cut normal");
            w /= w.sum();
            const double beta = w.dot(t) + alpha;
            if (w.dot(t) >= beta - 1e-12 * (1.0 + std::abs(beta))) {
                rays[pick].marked = true;
                continue;
            }
            Eigen::VectorXd row(q + 1);
            row << w, -beta;
            // A cut too shallow to separate t at working precision confirms it.
            if (!outer.add_row(row)) {
                outer.rays()[pick].marked = true;
                continue;
            }
            ++cuts;
        }

        std::vector<Eigen::VectorXd> points;
        std::vector<Eigen::VectorXd> dirs;
        for (const auto& ray : outer.rays()) {
            if (ray.v(q) > kHomogeneousTol) {
                points.push_back(ray.v.head(q) / ray.v(q));
            } else {
                dirs.push_back(normalize_direction(ray.v.head(q)));
            }
        }
        return VRep(unique_columns(points, q), unique_columns(dirs, q));
    }
};

}  // namespace

MolpProblem build_molp(const PRep& p) {
    const Eigen::Index n = p.dim();
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(n + 1, n + p.num_aux());
    Z.topLeftCorner(n, n).setIdentity();
    Z.block(n, 0, 1, n).setConstant(-1.0);
    return MolpProblem{p, Z};
}

bool has_lineality(const PRep& p) {
    // max d_i over {(d, w, w') : B d + C w >= 0, -B d + C w' >= 0, |d| <= 1}.
    const Eigen::Index n = p.dim();
    const Eigen::Index k = p.num_aux();
    const Eigen::Index m = p.rows();
    lp::LpProblem q(n + 2 * k);
    q.lower.head(n).setConstant(-1.0);
    q.upper.head(n).setConstant(1.0);
    q.A = Eigen::MatrixXd::Zero(2 * m, n + 2 * k);
    q.A.topLeftCorner(m, n) = p.B();
    q.A.block(0, n, m, k) = p.C();
    q.A.bottomLeftCorner(m, n) = -p.B();
    q.A.bottomRightCorner(m, k) = p.C();
    q.rhs = Eigen::VectorXd::Zero(2 * m);
    q.sense.assign(static_cast<std::size_t>(2 * m), Sense::GreaterEqual);
    for (Eigen::Index i = 0; i < n; ++i) {
        q.objective.setZero();
        q.objective(i) = -1.0;
        const lp::LpResult r = lp::solve(q);
        if (!r.optimal()) throw NumericError("projection: lineality LP " + std::string(lp::to_string(r.status)));
        if (-r.objective > kLinealityTol) return true;
    }
    return false;
}

UpperImage solve_upper_image(const MolpProblem& m) {
    if (m.objective.rows() != m.feasible.dim() + 1 ||
        m.objective.cols() != m.feasible.dim() + m.feasible.num_aux()) {
        throw DimensionError("solve_upper_image: objective matrix has the wrong shape");
    }
    Engine engine{m};
    VRep v = engine.run();
    return UpperImage{std::move(v), engine.lps, engine.cuts};
}

VRep filter_image(const VRep& image) {
    std::vector<Eigen::VectorXd> points;
    std::vector<Eigen::VectorXd> dirs;
    for (Eigen::Index j = 0; j < image.num_points(); ++j) {
        if (std::abs(image.points().col(j).sum()) <= kFilterTol) points.push_back(image.points().col(j));
    }
    for (Eigen::Index j = 0; j < image.num_directions(); ++j) {
        if (std::abs(image.directions().col(j).sum()) <= kFilterTol) dirs.push_back(image.directions().col(j));
    }
    return VRep(unique_columns(points, image.dim()), unique_columns(dirs, image.dim()));
}

VRep extract_projection(const UpperImage& u) {
    const VRep f = filter_image(u.vrep);
    if (f.num_points() == 0) throw NumericError("extract_projection: no point of the upper image has e'z = 0");
    const Eigen::Index n = u.vrep.dim() - 1;
    std::vector<Eigen::VectorXd> points;
    std::vector<Eigen::VectorXd> dirs;
    for (Eigen::Index j = 0; j < f.num_points(); ++j) points.push_back(f.points().col(j).head(n));
    for (Eigen::Index j = 0; j < f.num_directions(); ++j) {
        const Eigen::VectorXd d = f.directions().col(j).head(n);
        if (d.lpNorm<Eigen::Infinity>() > 1e-12) dirs.push_back(normalize_direction(d));
    }
    return VRep(unique_columns(points, n), unique_columns(dirs, n));
}

VRep project(const PRep& p) { return extract_projection(solve_upper_image(build_molp(p))); }

}  // namespace dcpoly

#include "dcpoly/double_description.hpp"

#include "dcpoly/errors.hpp"
#include "dcpoly/poly_core.hpp"

#include <algorithm>
#include <bit>

namespace dcpoly {

void RowSet::set(std::size_t i) {
    const std::size_t w = i / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (i % 64);
}

bool RowSet::test(std::size_t i) const {
    const std::size_t w = i / 64;
    return w < words_.size() && ((words_[w] >> (i % 64)) & 1U) != 0;
}

std::size_t RowSet::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool RowSet::subset_of(const RowSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        const std::uint64_t o = w < other.words_.size() ? other.words_[w] : 0;
        if ((words_[w] & ~o) != 0) return false;
    }
    return true;
}

std::size_t RowSet::intersection_count(const RowSet& a, const RowSet& b) {
    const std::size_t n = std::min(a.words_.size(), b.words_.size());
    std::size_t c = 0;
    for (std::size_t w = 0; w < n; ++w) c += static_cast<std::size_t>(std::popcount(a.words_[w] & b.words_[w]));
    return c;
}

bool RowSet::intersection_subset_of(const RowSet& a, const RowSet& b, const RowSet& other) {
    const std::size_t n = std::min(a.words_.size(), b.words_.size());
    for (std::size_t w = 0; w < n; ++w) {
        const std::uint64_t o = w < other.words_.size() ? other.words_[w] : 0;
        if ((a.words_[w] & b.words_[w] & ~o) != 0) return false;
    }
    return true;
}

RowSet RowSet::operator&(const RowSet& other) const {
    RowSet r;
    const std::size_t n = std::min(words_.size(), other.words_.size());
    r.words_.resize(n);
    for (std::size_t w = 0; w < n; ++w) r.words_[w] = words_[w] & other.words_[w];
    return r;
}

ConeEnumerator::ConeEnumerator(Eigen::Index dim, const std::vector<Eigen::VectorXd>& rows) : dim_(dim) {
    // Greedy choice of dim linearly independent rows for a simplicial start.
    std::vector<std::size_t> basis;
    Eigen::MatrixXd sel(0, dim);
    for (std::size_t i = 0; i < rows.size() && static_cast<Eigen::Index>(basis.size()) < dim; ++i) {
        if (rows[i].size() != dim) throw DimensionError("ConeEnumerator: row dimension mismatch");
        Eigen::MatrixXd trial(sel.rows() + 1, dim);
        trial << sel, normalize_direction(rows[i]).transpose();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
        lu.setThreshold(1e-10);
        if (lu.rank() == trial.rows()) {
            sel = trial;
            basis.push_back(i);
        }
    }
    if (static_cast<Eigen::Index>(basis.size()) < dim) {
        throw AssumptionError("ConeEnumerator: constraint rows do not define a pointed cone");
    }
    for (std::size_t b : basis) rows_.push_back(normalize_direction(rows[b]));
    const Eigen::MatrixXd inv = sel.inverse();
    for (Eigen::Index j = 0; j < dim; ++j) {
        Ray r;
        r.v = normalize_direction(inv.col(j));
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (i != j) r.zeros.set(static_cast<std::size_t>(i));
        }
        rays_.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::find(basis.begin(), basis.end(), i) == basis.end()) add_row(rows[i]);
    }
}

Eigen::VectorXd ConeEnumerator::refine(const Eigen::VectorXd& v, const RowSet& zeros) const {
    // The ray spans the null space of its tight rows; recomputing it from them
    // removes the rounding accumulated by repeated combinations.
    const Eigen::VectorXd fallback = normalize_direction(v);
    if (dim_ < 2) return fallback;
    Eigen::MatrixXd A(static_cast<Eigen::Index>(zeros.count()), dim_);
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (zeros.test(i)) A.row(k++) = rows_[i].transpose();
    }
    if (k < dim_ - 1) return fallback;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() < dim_ - 1 || sv(dim_ - 2) < 1e-9 * sv(0)) return fallback;
    if (sv.size() == dim_ && sv(dim_ - 1) > 1e-6 * sv(0)) return fallback;
    Eigen::VectorXd w = svd.matrixV().col(dim_ - 1);
    if (w.dot(fallback) < 0.0) w = -w;
    w = normalize_direction(w);
    return (w - fallback).lpNorm<Eigen::Infinity>() < 1e-6 ? w : fallback;
}

bool ConeEnumerator::add_row(const Eigen::VectorXd& a_in) {
    if (a_in.size() != dim_) throw DimensionError("ConeEnumerator::add_row: dimension mismatch");
    const Eigen::VectorXd a = normalize_direction(a_in);
    const std::size_t row = rows_.size();
    rows_.push_back(a);

    std::vector<double> slack(rays_.size());
    std::vector<std::size_t> plus;
    std::vector<std::size_t> minus;
    for (std::size_t r = 0; r < rays_.size(); ++r) {
        slack[r] = a.dot(rays_[r].v);
        if (slack[r] > kZeroTol) {
            plus.push_back(r);
        } else if (slack[r] < -kZeroTol) {
            minus.push_back(r);
        } else {
            rays_[r].zeros.set(row);
        }
    }
    if (minus.empty()) return false;

    const std::size_t need = static_cast<std::size_t>(std::max<Eigen::Index>(dim_ - 2, 0));
    std::vector<Ray> created;
    for (std::size_t p : plus) {
        for (std::size_t m : minus) {
            const RowSet& zp = rays_[p].zeros;
            const RowSet& zm = rays_[m].zeros;
            if (RowSet::intersection_count(zp, zm) < need) continue;
            bool adjacent = true;
            for (std::size_t o = 0; o < rays_.size() && adjacent; ++o) {
                if (o == p || o == m) continue;
                if (RowSet::intersection_subset_of(zp, zm, rays_[o].zeros)) adjacent = false;
            }
            if (!adjacent) continue;
            Ray nr;
            nr.zeros = zp & zm;
            nr.zeros.set(row);
            nr.v = refine(slack[p] * rays_[m].v - slack[m] * rays_[p].v, nr.zeros);
            created.push_back(std::move(nr));
        }
    }
    std::vector<Ray> next;
    next.reserve(rays_.size() - minus.size() + created.size());
    for (std::size_t r = 0; r < rays_.size(); ++r) {
        if (slack[r] >= -kZeroTol) next.push_back(std::move(rays_[r]));
    }
    for (auto& c : created) next.push_back(std::move(c));
    rays_ = std::move(next);
    return true;
}

}  // namespace dcpoly

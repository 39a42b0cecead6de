#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace dcpoly {

/// Growable bit set indexed by constraint number.
class RowSet {
public:
    void set(std::size_t i);
    bool test(std::size_t i) const;
    std::size_t count() const;
    /// True when every bit of *this is also set in other.
    bool subset_of(const RowSet& other) const;
    RowSet operator&(const RowSet& other) const;

    /// |a & b| without materializing the intersection.
    static std::size_t intersection_count(const RowSet& a, const RowSet& b);
    /// (a & b) subset of other.
    static bool intersection_subset_of(const RowSet& a, const RowSet& b, const RowSet& other);

private:
    std::vector<std::uint64_t> words_;
};

/// Incremental double description of a pointed polyhedral cone
/// {x : a_i' x >= 0 for all rows a_i}.
///
/// Rays are kept scaled to unit max-norm together with the set of rows they
/// satisfy with equality; adjacency of rays is decided combinatorially from
/// those sets. Each ray carries a user flag that survives later cuts.
class ConeEnumerator {
public:
    struct Ray {
        Eigen::VectorXd v;
        RowSet zeros;
        bool marked = false;
    };

    /// Rows must span the whole space (pointed cone); throws AssumptionError
    /// otherwise.
    ConeEnumerator(Eigen::Index dim, const std::vector<Eigen::VectorXd>& rows);

    /// Intersects the cone with {x : a' x >= 0}. Returns false when no ray
    /// was cut off (the row is redundant up to kZeroTol).
    bool add_row(const Eigen::VectorXd& a);

    Eigen::Index dim() const { return dim_; }
    const std::vector<Ray>& rays() const { return rays_; }
    std::vector<Ray>& rays() { return rays_; }
    const std::vector<Eigen::VectorXd>& rows() const { return rows_; }

    /// Classification tolerance for a'v with unit max-norm a and v.
    static constexpr double kZeroTol = 1e-9;

private:
    Eigen::VectorXd refine(const Eigen::VectorXd& v, const RowSet& zeros) const;

    Eigen::Index dim_;
    std::vector<Eigen::VectorXd> rows_;
    std::vector<Ray> rays_;
};

}  // namespace dcpoly

#pragma once

#include <ostream>

namespace dcpoly {

/// A value in R ∪ {+inf}. Polyhedral and closed convex functions here never
/// take the value -inf.
class ExtendedReal {
public:
    constexpr ExtendedReal(double v) : value_(v), finite_(true) {}  // NOLINT: implicit by intent

    static constexpr ExtendedReal infinity() { return ExtendedReal(); }

    constexpr bool is_finite() const { return finite_; }
    constexpr bool is_infinite() const { return !finite_; }

    /// Finite value; throws std::logic_error on +inf.
    double value() const;

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& v);

private:
    constexpr ExtendedReal() : value_(0.0), finite_(false) {}

    double value_;
    bool finite_;
};

}  // namespace dcpoly

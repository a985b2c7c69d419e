#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace repot {

/// A real number or +∞. NaN and -∞ are rejected at construction.
///
/// Costs are nonnegative; bound values built from them may be negative
/// (a non-positive bound is vacuous), so the finite part is unrestricted.
class ExtReal {
  public:
    constexpr ExtReal() = default;
    ExtReal(double v) : v_(v) { // NOLINT(google-explicit-constructor)
        if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
            throw std::domain_error("ExtReal: value must be a real number or +inf");
        }
    }

    static ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }

    [[nodiscard]] bool is_infinite() const { return std::isinf(v_); }
    [[nodiscard]] bool is_finite() const { return !std::isinf(v_); }
    [[nodiscard]] double value() const { return v_; }

    friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v_ + b.v_); }
    friend ExtReal operator-(ExtReal a, double b) { return ExtReal(a.v_ - b); }

    // 0 · ∞ = 0, the measure-theoretic convention.
    friend ExtReal operator*(ExtReal a, ExtReal b) {
        if (a.v_ == 0.0 || b.v_ == 0.0) return ExtReal(0.0);
        return ExtReal(a.v_ * b.v_);
    }
    friend ExtReal operator/(ExtReal a, double b) {
        if (!(b > 0.0)) throw std::domain_error("ExtReal: division by a non-positive number");
        return ExtReal(a.v_ / b);
    }

    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

    [[nodiscard]] std::string to_string() const;

    friend std::ostream& operator<<(std::ostream& os, ExtReal x) { return os << x.to_string(); }

  private:
    double v_ = 0.0;
};

/// Shortest round-trip decimal for finite values, "inf" otherwise.
std::string format_real(double v);

inline std::string ExtReal::to_string() const { return format_real(v_); }

} // namespace repot

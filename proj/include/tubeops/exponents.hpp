#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tubeops {

/// Lebesgue exponent in [1, infinity].  Infinity is a tag, never a float
/// sentinel: regime dispatch must be structural.
class Exponent {
public:
    Exponent() : inf_(false), v_(1.0) {}
    explicit Exponent(double v) : inf_(false), v_(v) {
        if (!(v >= 1.0)) throw std::invalid_argument("Exponent: value must be >= 1");
    }
    static Exponent infinity() {
        Exponent e;
        e.inf_ = true;
        e.v_ = 0.0;
        return e;
    }
    /// Parses "inf" or a numeric literal.
    static Exponent parse(const std::string& s) {
        if (s == "inf" || s == "Inf" || s == "INF") return infinity();
        return Exponent(std::stod(s));
    }

    bool is_inf() const { return inf_; }
    bool is_one() const { return !inf_ && v_ == 1.0; }
    /// Finite value; throws on infinity.
    double value() const {
        if (inf_) throw std::logic_error("Exponent: finite value requested for infinity");
        return v_;
    }
    /// Conjugate exponent p' with 1/p + 1/p' = 1 (p=1 -> inf, p=inf -> 1).
    Exponent conjugate() const {
        if (inf_) return Exponent(1.0);
        if (v_ == 1.0) return infinity();
        return Exponent(v_ / (v_ - 1.0));
    }
    /// 1/p, with 1/inf = 0.
    double reciprocal() const { return inf_ ? 0.0 : 1.0 / v_; }

    std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

    friend bool operator==(const Exponent& a, const Exponent& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    /// Order with infinity as the top element.
    friend bool operator<=(const Exponent& a, const Exponent& b) {
        if (a.inf_) return b.inf_;
        if (b.inf_) return true;
        return a.v_ <= b.v_;
    }
    friend bool operator<(const Exponent& a, const Exponent& b) {
        return a <= b && !(a == b);
    }

private:
    bool inf_;
    double v_;
};

/// A pair of exponents with the derived min/max.
struct MixedExponents {
    Exponent p1, p2;

    MixedExponents() = default;
    MixedExponents(Exponent a, Exponent b) : p1(a), p2(b) {}
    MixedExponents(double a, double b) : p1(a), p2(b) {}

    Exponent minus() const { return p1 <= p2 ? p1 : p2; }
    Exponent plus() const { return p1 <= p2 ? p2 : p1; }
    const Exponent& at(int i) const { return i == 0 ? p1 : p2; }

    bool both_finite() const { return !p1.is_inf() && !p2.is_inf(); }
    bool both_inf() const { return p1.is_inf() && p2.is_inf(); }
};

}  // namespace tubeops

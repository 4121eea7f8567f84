#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace cheshire {

using Rational = boost::multiprecision::cpp_rational;

/// Exact element p + q*sqrt(2) of the real quadratic field Q(sqrt2).
///
/// Every amplitude, probability and weak value handled by the exact engine
/// lives in this field, so equality checks are decidable and arithmetic is
/// error-free. Division is total except at zero: p^2 = 2 q^2 has no rational
/// solution other than p = q = 0.
class AlgebraicScalar {
  public:
    AlgebraicScalar() = default;
    AlgebraicScalar(int n) : p_(n) {}
    AlgebraicScalar(Rational p) : p_(std::move(p)) {}
    AlgebraicScalar(Rational p, Rational q) : p_(std::move(p)), q_(std::move(q)) {}

    static AlgebraicScalar sqrt2() { return AlgebraicScalar(Rational(0), Rational(1)); }

    const Rational& rational_part() const { return p_; }
    const Rational& sqrt2_part() const { return q_; }

    bool is_zero() const { return p_ == 0 && q_ == 0; }
    bool operator==(const AlgebraicScalar&) const = default;

    AlgebraicScalar operator-() const { return {-p_, -q_}; }

    AlgebraicScalar& operator+=(const AlgebraicScalar& o) {
        p_ += o.p_;
        q_ += o.q_;
        return *this;
    }
    AlgebraicScalar& operator-=(const AlgebraicScalar& o) {
        p_ -= o.p_;
        q_ -= o.q_;
        return *this;
    }
    AlgebraicScalar& operator*=(const AlgebraicScalar& o) {
        // (p + q s)(p' + q' s) = pp' + 2qq' + (pq' + qp') s,  s^2 = 2
        Rational p = p_ * o.p_ + 2 * q_ * o.q_;
        Rational q = p_ * o.q_ + q_ * o.p_;
        p_ = std::move(p);
        q_ = std::move(q);
        return *this;
    }
    AlgebraicScalar& operator/=(const AlgebraicScalar& o) { return *this *= o.inverse(); }

    friend AlgebraicScalar operator+(AlgebraicScalar a, const AlgebraicScalar& b) { return a += b; }
    friend AlgebraicScalar operator-(AlgebraicScalar a, const AlgebraicScalar& b) { return a -= b; }
    friend AlgebraicScalar operator*(AlgebraicScalar a, const AlgebraicScalar& b) { return a *= b; }
    friend AlgebraicScalar operator/(AlgebraicScalar a, const AlgebraicScalar& b) { return a /= b; }

    /// Multiplicative inverse via the field conjugate: 1/(p+q s) = (p-q s)/(p^2-2q^2).
    /// Throws std::domain_error at zero.
    AlgebraicScalar inverse() const;

    /// Sign of the real value p + q*sqrt2 (-1, 0, +1), decided exactly.
    int sign() const;

    bool operator<(const AlgebraicScalar& o) const { return (*this - o).sign() < 0; }
    bool operator>(const AlgebraicScalar& o) const { return o < *this; }
    bool operator<=(const AlgebraicScalar& o) const { return !(o < *this); }
    bool operator>=(const AlgebraicScalar& o) const { return !(*this < o); }

    double to_double() const;

    /// Canonical serialization "p/q1+r/q2*sqrt2" with reduced fractions and
    /// an explicit sign on the sqrt2 term, e.g. "0/1+1/4*sqrt2", "1/2-1/4*sqrt2".
    std::string str() const;
    static AlgebraicScalar parse(std::string_view text);

  private:
    Rational p_;
    Rational q_;
};

std::ostream& operator<<(std::ostream& os, const AlgebraicScalar& x);

}  // namespace cheshire

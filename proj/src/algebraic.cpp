#include "cheshire/algebraic.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cheshire {

AlgebraicScalar AlgebraicScalar::inverse() const {
    if (is_zero()) {
        throw std::domain_error("AlgebraicScalar: division by zero");
    }
    // p^2 - 2 q^2 = 0 with rational p, q forces p = q = 0, so the norm is nonzero here.
    Rational norm = p_ * p_ - 2 * q_ * q_;
    return {p_ / norm, -q_ / norm};
}

int AlgebraicScalar::sign() const {
    int sp = p_.sign();
    int sq = q_.sign();
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // Opposite signs: compare |p| against |q|*sqrt2 via squares.
    Rational p2 = p_ * p_;
    Rational q2 = 2 * q_ * q_;
    if (p2 == q2) return 0;  // unreachable over the rationals unless both zero
    return p2 > q2 ? sp : sq;
}

double AlgebraicScalar::to_double() const {
    return p_.convert_to<double>() + q_.convert_to<double>() * std::numbers::sqrt2;
}

namespace {

std::string fraction_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << '/' << denominator(r);
    return os.str();
}

Rational parse_fraction(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size()) {
        throw std::invalid_argument("AlgebraicScalar: malformed fraction '" + std::string(text) + "'");
    }
    try {
        boost::multiprecision::cpp_int num{std::string(text.substr(0, slash))};
        boost::multiprecision::cpp_int den{std::string(text.substr(slash + 1))};
        if (den <= 0) throw std::invalid_argument("nonpositive denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("AlgebraicScalar: malformed fraction '" + std::string(text) + "'");
    }
}

}  // namespace

std::string AlgebraicScalar::str() const {
    std::string out = fraction_str(p_);
    if (q_ < 0) {
        out += '-';
        out += fraction_str(-q_);
    } else {
        out += '+';
        out += fraction_str(q_);
    }
    out += "*sqrt2";
    return out;
}

AlgebraicScalar AlgebraicScalar::parse(std::string_view text) {
    constexpr std::string_view kSuffix = "*sqrt2";
    if (text.size() < kSuffix.size() || text.substr(text.size() - kSuffix.size()) != kSuffix) {
        throw std::invalid_argument("AlgebraicScalar: missing '*sqrt2' suffix in '" + std::string(text) + "'");
    }
    std::string_view body = text.substr(0, text.size() - kSuffix.size());
    // The separator is the first sign character past the leading one.
    auto sep = body.find_first_of("+-", 1);
    if (sep == std::string_view::npos) {
        throw std::invalid_argument("AlgebraicScalar: missing sqrt2 term in '" + std::string(text) + "'");
    }
    Rational p = parse_fraction(body.substr(0, sep));
    Rational q = parse_fraction(body.substr(sep + 1));
    if (body[sep] == '-') q = -q;
    return {std::move(p), std::move(q)};
}

std::ostream& operator<<(std::ostream& os, const AlgebraicScalar& x) { return os << x.str(); }

}  // namespace cheshire

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cheshire/algebraic.hpp"
#include "cheshire/basis.hpp"
#include "cheshire/linalg.hpp"

using namespace cheshire;

namespace {

AlgebraicScalar frac(long num, long den) { return AlgebraicScalar(Rational(num, den)); }
AlgebraicScalar root2_times(long num, long den) {
    return AlgebraicScalar(Rational(0), Rational(num, den));
}

std::mt19937_64 rng(0x5eed2024);

Rational random_rational() {
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 1000);
    return Rational(num(rng), den(rng));
}

AlgebraicScalar random_scalar() { return {random_rational(), random_rational()}; }

AlgebraicScalar random_nonzero_scalar() {
    for (;;) {
        AlgebraicScalar x = random_scalar();
        if (!x.is_zero()) return x;
    }
}

template <std::size_t N>
Vec<N> random_vec() {
    Vec<N> v;
    for (std::size_t i = 0; i < N; ++i) v[i] = random_scalar();
    return v;
}

Mat4 random_mat4() {
    Mat4 m;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m(r, c) = random_scalar();
    return m;
}

}  // namespace

TEST_CASE("scalar arithmetic matches hand-computed products") {
    CHECK(frac(1, 2) * root2_times(1, 2) == root2_times(1, 4));
    CHECK(root2_times(1, 1).inverse() == root2_times(1, 2));  // 1/sqrt2 = sqrt2/2
    AlgebraicScalar conj_product =
        (AlgebraicScalar(1) + root2_times(1, 1)) * (AlgebraicScalar(1) - root2_times(1, 1));
    CHECK(conj_product == AlgebraicScalar(-1));
}

TEST_CASE("division by zero is an explicit error") {
    CHECK_THROWS_AS(AlgebraicScalar(1) / AlgebraicScalar(0), std::domain_error);
    CHECK_THROWS_AS(AlgebraicScalar(0).inverse(), std::domain_error);
}

TEST_CASE("field laws hold exactly on random elements") {
    for (int i = 0; i < 200; ++i) {
        AlgebraicScalar a = random_scalar();
        AlgebraicScalar b = random_scalar();
        AlgebraicScalar c = random_scalar();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == AlgebraicScalar(0));
        AlgebraicScalar d = random_nonzero_scalar();
        CHECK(d * d.inverse() == AlgebraicScalar(1));
        CHECK(a / d * d == a);
    }
}

TEST_CASE("float conversion tracks p + q*sqrt2 for coefficients up to 1e6") {
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000000);
    for (int i = 0; i < 500; ++i) {
        Rational p(num(rng), den(rng));
        Rational q(num(rng), den(rng));
        AlgebraicScalar x(p, q);
        long double reference = p.convert_to<long double>() +
                                q.convert_to<long double>() * 1.41421356237309504880L;
        long double err = std::fabs(x.to_double() - static_cast<double>(reference));
        long double scale = std::max<long double>(1.0L, std::fabs(reference));
        CHECK(err <= 1e-12L * scale);
    }
}

TEST_CASE("serialization format and round-trip") {
    CHECK(AlgebraicScalar(0).str() == "0/1+0/1*sqrt2");
    CHECK(root2_times(1, 4).str() == "0/1+1/4*sqrt2");
    CHECK((frac(1, 2) - root2_times(1, 4)).str() == "1/2-1/4*sqrt2");
    CHECK(AlgebraicScalar(-1).str() == "-1/1+0/1*sqrt2");
    CHECK(AlgebraicScalar::parse("1/2-1/4*sqrt2") == frac(1, 2) - root2_times(1, 4));
    CHECK_THROWS_AS(AlgebraicScalar::parse("1/2"), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraicScalar::parse("banana*sqrt2"), std::invalid_argument);

    for (int i = 0; i < 200; ++i) {
        AlgebraicScalar x = random_scalar();
        CHECK(AlgebraicScalar::parse(x.str()) == x);
    }
}

TEST_CASE("exact sign and ordering") {
    CHECK(root2_times(1, 1).sign() == 1);
    CHECK((frac(3, 2) - root2_times(1, 1)).sign() == 1);    // 3/2 > sqrt2
    CHECK((frac(7, 5) - root2_times(1, 1)).sign() == -1);   // 7/5 < sqrt2
    CHECK((root2_times(5, 1) - frac(7, 1)).sign() == 1);    // 5*sqrt2 > 7
    CHECK(AlgebraicScalar(0).sign() == 0);
    CHECK(frac(-1, 3) < root2_times(1, 100));
}

TEST_CASE("basis index bijection and arm accessors") {
    for (std::size_t i = 0; i < 16; ++i) {
        BasisLabel label = label_of(i);
        CHECK(index_of(label) == i);
    }
    CHECK(index_of(PathPair::p13, PolPair::HH) == 0);
    CHECK(index_of(PathPair::p24, PolPair::VV) == 15);
    CHECK(left_arm(PathPair::p23) == 2);
    CHECK(right_arm(PathPair::p23) == 3);
    CHECK(path_from_arms(2, 4) == PathPair::p24);
    CHECK(parse_path("14") == PathPair::p14);
    CHECK(parse_pol("VH") == PolPair::VH);
    CHECK_THROWS_AS(path_from_arms(3, 3), std::invalid_argument);
}

TEST_CASE("inner product is symmetric and bilinear") {
    for (int i = 0; i < 30; ++i) {
        Vec16 u = random_vec<16>();
        Vec16 v = random_vec<16>();
        Vec16 w = random_vec<16>();
        AlgebraicScalar a = random_scalar();
        CHECK(inner(u, v) == inner(v, u));
        CHECK(inner(u, a * v + w) == a * inner(u, v) + inner(u, w));
    }
}

TEST_CASE("apply: identity and zero operator") {
    Vec16 v = random_vec<16>();
    CHECK(apply(Mat16::identity(), v) == v);
    CHECK(apply(Mat16{}, v).is_zero());
}

TEST_CASE("tensor_embed of identities is the identity") {
    CHECK(tensor_embed(Mat4::identity(), Mat4::identity()) == Mat16::identity());
}

TEST_CASE("tensor_embed rank checks") {
    Mat4 path13;
    path13(0, 0) = AlgebraicScalar(1);
    CHECK(rank(tensor_embed(path13, Mat4::identity())) == 4);

    Mat4 p_hv;
    p_hv(1, 1) = AlgebraicScalar(1);
    p_hv(2, 2) = AlgebraicScalar(1);
    Mat16 pi13 = tensor_embed(path13, p_hv);
    CHECK(rank(pi13) == 2);

    // Independent construction: the two dyads |13,HV><13,HV| and |13,VH><13,VH|
    // written out entry by entry.
    Mat16 dyadic;
    dyadic(index_of(PathPair::p13, PolPair::HV), index_of(PathPair::p13, PolPair::HV)) =
        AlgebraicScalar(1);
    dyadic(index_of(PathPair::p13, PolPair::VH), index_of(PathPair::p13, PolPair::VH)) =
        AlgebraicScalar(1);
    CHECK(pi13 == dyadic);
}

TEST_CASE("tensor_embed respects the factorized action") {
    for (int i = 0; i < 10; ++i) {
        Mat4 a = random_mat4();
        Mat4 b = random_mat4();
        Vec4 u = random_vec<4>();
        Vec4 v = random_vec<4>();
        CHECK(apply(tensor_embed(a, b), tensor_embed(u, v)) ==
              tensor_embed(apply(a, u), apply(b, v)));
    }
}

TEST_CASE("rank of elementary matrices") {
    CHECK(rank(Mat16::identity()) == 16);
    CHECK(rank(Mat16{}) == 0);
    Vec16 v = random_vec<16>();
    if (!v.is_zero()) CHECK(rank(outer(v, v)) == 1);
}

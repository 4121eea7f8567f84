#pragma once

#include <array>
#include <cstddef>

#include "cheshire/algebraic.hpp"
#include "cheshire/basis.hpp"

namespace cheshire {

template <std::size_t N>
class Vec {
  public:
    Vec() = default;

    const AlgebraicScalar& operator[](std::size_t i) const { return a_[i]; }
    AlgebraicScalar& operator[](std::size_t i) { return a_[i]; }
    static constexpr std::size_t size() { return N; }

    bool operator==(const Vec&) const = default;
    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    Vec operator-() const {
        Vec r;
        for (std::size_t i = 0; i < N; ++i) r.a_[i] = -a_[i];
        return r;
    }
    friend Vec operator+(const Vec& u, const Vec& v) {
        Vec r;
        for (std::size_t i = 0; i < N; ++i) r.a_[i] = u.a_[i] + v.a_[i];
        return r;
    }
    friend Vec operator-(const Vec& u, const Vec& v) {
        Vec r;
        for (std::size_t i = 0; i < N; ++i) r.a_[i] = u.a_[i] - v.a_[i];
        return r;
    }
    friend Vec operator*(const AlgebraicScalar& c, const Vec& v) {
        Vec r;
        for (std::size_t i = 0; i < N; ++i) r.a_[i] = c * v.a_[i];
        return r;
    }

  private:
    std::array<AlgebraicScalar, N> a_{};
};

template <std::size_t N>
class Mat {
  public:
    Mat() = default;

    const AlgebraicScalar& operator()(std::size_t r, std::size_t c) const { return m_[r * N + c]; }
    AlgebraicScalar& operator()(std::size_t r, std::size_t c) { return m_[r * N + c]; }
    static constexpr std::size_t size() { return N; }

    bool operator==(const Mat&) const = default;
    bool is_zero() const {
        for (const auto& x : m_)
            if (!x.is_zero()) return false;
        return true;
    }

    static Mat identity() {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = AlgebraicScalar(1);
        return m;
    }
    static Mat diagonal(const std::array<AlgebraicScalar, N>& d) {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    Mat transpose() const {
        Mat t;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) t(c, r) = (*this)(r, c);
        return t;
    }
    bool is_symmetric() const {
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = r + 1; c < N; ++c)
                if ((*this)(r, c) != (*this)(c, r)) return false;
        return true;
    }
    AlgebraicScalar trace() const {
        AlgebraicScalar t;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat r;
        for (std::size_t i = 0; i < N * N; ++i) r.m_[i] = a.m_[i] + b.m_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat r;
        for (std::size_t i = 0; i < N * N; ++i) r.m_[i] = a.m_[i] - b.m_[i];
        return r;
    }
    friend Mat operator*(const AlgebraicScalar& c, const Mat& a) {
        Mat r;
        for (std::size_t i = 0; i < N * N; ++i) r.m_[i] = c * a.m_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < N; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

  private:
    std::array<AlgebraicScalar, N * N> m_{};
};

using Vec4 = Vec<4>;
using Vec16 = Vec<16>;
using Mat4 = Mat<4>;
using Mat16 = Mat<16>;

/// Plain bilinear form sum_k u_k v_k. All amplitudes in this artifact are
/// real, so no conjugation is involved.
template <std::size_t N>
AlgebraicScalar inner(const Vec<N>& u, const Vec<N>& v) {
    AlgebraicScalar s;
    for (std::size_t i = 0; i < N; ++i) s += u[i] * v[i];
    return s;
}

template <std::size_t N>
AlgebraicScalar norm_sq(const Vec<N>& v) {
    return inner(v, v);
}

template <std::size_t N>
Vec<N> apply(const Mat<N>& m, const Vec<N>& v) {
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) {
        AlgebraicScalar s;
        for (std::size_t j = 0; j < N; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

template <std::size_t N>
Mat<N> outer(const Vec<N>& u, const Vec<N>& v) {
    Mat<N> m;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) m(r, c) = u[r] * v[c];
    return m;
}

/// Kronecker product of a path-space factor with a polarization-space factor,
/// laid out in the normative index order (path rank major, pol rank minor).
Mat16 tensor_embed(const Mat4& path_factor, const Mat4& pol_factor);

/// |path-part> (x) |pol-part> in the same normative order.
Vec16 tensor_embed(const Vec4& path_part, const Vec4& pol_part);

/// Rank over the exact field, by Gaussian elimination.
template <std::size_t N>
std::size_t rank(Mat<N> m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < N && r < N; ++c) {
        std::size_t pivot = r;
        while (pivot < N && m(pivot, c).is_zero()) ++pivot;
        if (pivot == N) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < N; ++j) std::swap(m(pivot, j), m(r, j));
        AlgebraicScalar inv = m(r, c).inverse();
        for (std::size_t j = c; j < N; ++j) m(r, j) = inv * m(r, j);
        for (std::size_t i = 0; i < N; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            AlgebraicScalar f = m(i, c);
            for (std::size_t j = c; j < N; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace cheshire

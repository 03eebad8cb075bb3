#pragma once

#include <quadmath.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "qre/core/functions.hpp"

// Quad-precision (binary128) Hermitian arithmetic for harness evaluations whose intermediate
// matrices are too ill-conditioned for double, e.g. Y^{p/2} Z^p Y^{p/2} with p = 4.
namespace qre::harness::hp {

using Real = __float128;

inline Real sqrt(Real x) { return sqrtq(x); }
inline Real log(Real x) { return logq(x); }
inline Real exp(Real x) { return expq(x); }
inline Real pow(Real x, Real p) { return powq(x, p); }
inline Real abs(Real x) { return fabsq(x); }

struct Cx {
    Real re = 0;
    Real im = 0;

    Cx() = default;
    Cx(Real r, Real i = 0) : re(r), im(i) {}

    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cx operator*(Real s) const { return {re * s, im * s}; }
    Cx& operator+=(const Cx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cx conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
    Real mag() const { return hypotq(re, im); }
};

/// Dense n x n complex matrix, column-major.
struct Mat {
    int n = 0;
    std::vector<Cx> a;

    Mat() = default;
    explicit Mat(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim) {}

    Cx& operator()(int i, int j) { return a[static_cast<std::size_t>(j) * n + i]; }
    const Cx& operator()(int i, int j) const { return a[static_cast<std::size_t>(j) * n + i]; }

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = Cx(1);
        return m;
    }
};

inline Mat from_double(const Matrix& m) {
    Mat out(static_cast<int>(m.rows()));
    for (int j = 0; j < out.n; ++j)
        for (int i = 0; i < out.n; ++i) out(i, j) = Cx(m(i, j).real(), m(i, j).imag());
    return out;
}

inline Matrix to_double(const Mat& m) {
    Matrix out(m.n, m.n);
    for (int j = 0; j < m.n; ++j)
        for (int i = 0; i < m.n; ++i)
            out(i, j) = Complex(static_cast<double>(m(i, j).re), static_cast<double>(m(i, j).im));
    return out;
}

inline Mat operator*(const Mat& x, const Mat& y) {
    Mat out(x.n);
    for (int j = 0; j < x.n; ++j)
        for (int k = 0; k < x.n; ++k) {
            const Cx ykj = y(k, j);
            for (int i = 0; i < x.n; ++i) out(i, j) += x(i, k) * ykj;
        }
    return out;
}

inline Mat operator+(const Mat& x, const Mat& y) {
    Mat out(x.n);
    for (std::size_t k = 0; k < x.a.size(); ++k) out.a[k] = x.a[k] + y.a[k];
    return out;
}

inline Mat operator-(const Mat& x, const Mat& y) {
    Mat out(x.n);
    for (std::size_t k = 0; k < x.a.size(); ++k) out.a[k] = x.a[k] - y.a[k];
    return out;
}

inline Mat operator*(Real s, const Mat& x) {
    Mat out(x.n);
    for (std::size_t k = 0; k < x.a.size(); ++k) out.a[k] = x.a[k] * s;
    return out;
}

inline Mat adjoint(const Mat& x) {
    Mat out(x.n);
    for (int j = 0; j < x.n; ++j)
        for (int i = 0; i < x.n; ++i) out(i, j) = x(j, i).conj();
    return out;
}

inline Mat hermitian_part(const Mat& x) {
    Mat out(x.n);
    for (int j = 0; j < x.n; ++j)
        for (int i = 0; i < x.n; ++i) out(i, j) = (x(i, j) + x(j, i).conj()) * Real(0.5);
    return out;
}

inline Real trace(const Mat& x) {
    Real s = 0;
    for (int i = 0; i < x.n; ++i) s += x(i, i).re;
    return s;
}

/// Re Tr[XY]
inline Real trace_product(const Mat& x, const Mat& y) {
    Real s = 0;
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) s += (x(i, k) * y(k, i)).re;
    return s;
}

inline Real frobenius(const Mat& x) {
    Real s = 0;
    for (const Cx& z : x.a) s += z.norm2();
    return sqrt(s);
}

struct Eig {
    std::vector<Real> w;  // ascending
    Mat v;

    Real min() const { return w.front(); }
    Real max() const { return w.back(); }
};

namespace detail {

inline void rotate(Mat& a, Mat& v, int p, int q) {
    const Cx apq = a(p, q);
    const Real mag = apq.mag();
    if (mag == 0) return;
    const Cx phase(apq.re / mag, apq.im / mag);
    const Cx conjPhase = phase.conj();
    const Real theta = (a(q, q).re - a(p, p).re) / (2 * mag);
    const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + 1));
    const Real c = 1 / sqrt(t * t + 1);
    const Real s = t * c;
    for (int k = 0; k < a.n; ++k) {
        const Cx akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * c - conjPhase * akq * s;
        a(k, q) = akp * s + conjPhase * akq * c;
        const Cx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * c - conjPhase * vkq * s;
        v(k, q) = vkp * s + conjPhase * vkq * c;
    }
    for (int k = 0; k < a.n; ++k) {
        const Cx apk = a(p, k), aqk = a(q, k);
        a(p, k) = apk * c - phase * aqk * s;
        a(q, k) = apk * s + phase * aqk * c;
    }
    a(p, q) = Cx();
    a(q, p) = Cx();
    a(p, p).im = 0;
    a(q, q).im = 0;
}

inline Real off_diagonal(const Mat& a) {
    Real s = 0;
    for (int q = 1; q < a.n; ++q)
        for (int p = 0; p < q; ++p) s += a(p, q).norm2();
    return sqrt(2 * s);
}

/// Modified Gram-Schmidt, two passes.
inline void orthonormalize(Mat& v) {
    for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < v.n; ++j) {
            for (int k = 0; k < j; ++k) {
                Cx r;
                for (int i = 0; i < v.n; ++i) r += v(i, k).conj() * v(i, j);
                for (int i = 0; i < v.n; ++i) v(i, j) = v(i, j) - v(i, k) * r;
            }
            Real nn = 0;
            for (int i = 0; i < v.n; ++i) nn += v(i, j).norm2();
            const Real inv = 1 / sqrt(nn);
            for (int i = 0; i < v.n; ++i) v(i, j) = v(i, j) * inv;
        }
}

}  // namespace detail

inline constexpr double kJacobiTolerance = 1e-32;
inline constexpr int kJacobiMaxSweeps = 60;

/// Double-precision Jacobi for a starting frame, then quad Jacobi sweeps on V* A V.
inline Eig eig(const Mat& input) {
    const Mat a0 = hermitian_part(input);
    const SpectralDecomposition start = jacobi_eigen(to_double(a0));
    Mat v = from_double(start.frame);
    detail::orthonormalize(v);
    Mat a = hermitian_part(adjoint(v) * a0 * v);
    const Real threshold = Real(kJacobiTolerance) * frobenius(a);
    int sweeps = 0;
    while (detail::off_diagonal(a) > threshold) {
        if (++sweeps > kJacobiMaxSweeps)
            throw NonConvergence("quad Jacobi eigensolver", sweeps, static_cast<double>(detail::off_diagonal(a)));
        for (int p = 0; p + 1 < a.n; ++p)
            for (int q = p + 1; q < a.n; ++q) detail::rotate(a, v, p, q);
    }
    std::vector<int> order(static_cast<std::size_t>(a.n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).re < a(j, j).re; });
    Eig out;
    out.v = Mat(a.n);
    for (int k = 0; k < a.n; ++k) {
        out.w.push_back(a(order[k], order[k]).re);
        for (int i = 0; i < a.n; ++i) out.v(i, k) = v(i, order[k]);
    }
    return out;
}

/// V diag(f(w)) V*
template <class F>
Mat apply(const Eig& e, F&& f) {
    Mat out(e.v.n);
    std::vector<Real> fw(e.w.size());
    for (std::size_t k = 0; k < e.w.size(); ++k) fw[k] = f(e.w[k]);
    for (int j = 0; j < out.n; ++j)
        for (int i = 0; i <= j; ++i) {
            Cx s;
            for (int k = 0; k < out.n; ++k) s += e.v(i, k) * e.v(j, k).conj() * fw[static_cast<std::size_t>(k)];
            out(i, j) = s;
            out(j, i) = s.conj();
        }
    for (int i = 0; i < out.n; ++i) out(i, i).im = 0;
    return out;
}

inline Mat reconstruct(const Eig& e) {
    return apply(e, [](Real x) { return x; });
}

inline void require_positive(const Eig& e) {
    if (!(e.min() > 0)) throw DomainError("quad evaluation lost positivity");
}

inline Mat power(const Eig& e, Real p) {
    require_positive(e);
    return apply(e, [p](Real x) { return pow(x, p); });
}

inline Mat logm(const Eig& e) {
    require_positive(e);
    return apply(e, [](Real x) { return log(x); });
}

inline Mat expm(const Eig& e) {
    return apply(e, [](Real x) { return exp(x); });
}

/// A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}, with A given by its spectral data.
inline Mat geometric_mean(const Eig& a, const Mat& b, Real t) {
    const Mat half = power(a, Real(0.5));
    const Mat invHalf = power(a, Real(-0.5));
    const Eig inner = eig(invHalf * b * invHalf);
    return hermitian_part(half * power(inner, t) * half);
}

/// Fréchet derivative of log at A applied to Z: kernel (log a_i - log a_j)/(a_i - a_j).
inline Mat dlog(const Eig& a, const Mat& z) {
    require_positive(a);
    const Mat va = adjoint(a.v) * z * a.v;
    Mat k(a.v.n);
    for (int j = 0; j < k.n; ++j)
        for (int i = 0; i < k.n; ++i) {
            const Real u = a.w[static_cast<std::size_t>(i)], w = a.w[static_cast<std::size_t>(j)];
            const Real d = u - w;
            const Real dd = abs(d) <= Real(1e-16) * std::max(u, w) ? 2 / (u + w) : log1pq(d / w) / d;
            k(i, j) = va(i, j) * dd;
        }
    return hermitian_part(a.v * k * adjoint(a.v));
}

/// Tr[X log M]
inline Real trace_log(const Mat& x, const Mat& m) { return trace_product(x, logm(eig(m))); }

}  // namespace qre::harness::hp

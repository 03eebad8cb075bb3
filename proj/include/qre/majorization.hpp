#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qre/core/functions.hpp"

namespace qre {

inline constexpr double kMajorizationTolerance = 1e-10;

struct MajorizationVerdict {
    bool holds = false;
    RealVector partialSumMargins;  // sum_{j<=k} y_j - sum_{j<=k} x_j, descending order
    double traceMismatch = 0.0;    // sum y - sum x
    double scale = 1.0;            // ||y||_1 + 1

    double min_margin() const { return partialSumMargins.size() ? partialSumMargins.minCoeff() : 0.0; }
};

/// x < y: descending partial sums of x dominated by those of y, equal totals.
inline MajorizationVerdict majorizes(const RealVector& x, const RealVector& y) {
    if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
    std::vector<double> xs(x.data(), x.data() + x.size()), ys(y.data(), y.data() + y.size());
    std::sort(xs.begin(), xs.end(), std::greater<>());
    std::sort(ys.begin(), ys.end(), std::greater<>());
    MajorizationVerdict v;
    v.partialSumMargins.resize(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        v.partialSumMargins(static_cast<Eigen::Index>(k)) = sy - sx;
    }
    v.traceMismatch = sy - sx;
    v.scale = y.cwiseAbs().sum() + 1.0;
    const double tol = kMajorizationTolerance * v.scale;
    v.holds = v.min_margin() >= -tol && std::abs(v.traceMismatch) <= tol;
    return v;
}

/// X < Y on eigenvalue vectors.
inline MajorizationVerdict eigen_majorizes(const HermitianMatrix& x, const HermitianMatrix& y) {
    require_same_dim(x.matrix(), y.matrix());
    return majorizes(x.eigenvalues(), y.eigenvalues());
}

/// ((n-1) Tr[A] 1 - A) / (n^2 - n - 1)
inline HermitianMatrix choi_map(const HermitianMatrix& a) {
    const Eigen::Index n = a.dim();
    if (n < 2) throw DimensionTooSmall(n, 2);
    const double nn = static_cast<double>(n);
    return HermitianMatrix(((nn - 1.0) * a.trace() * identity(n) - a.matrix()) / (nn * nn - nn - 1.0));
}

/// int_0^inf A^{1/2}/(lambda+A) X A^{1/2}/(lambda+A) dlambda, i.e. the kernel
/// sqrt(a_i a_j) (log a_i - log a_j)/(a_i - a_j) in the eigenbasis of A.
inline HermitianMatrix bosulem_map(const PositiveMatrix& a, const HermitianMatrix& x) {
    require_same_dim(a.matrix(), x.matrix());
    return HermitianMatrix(kernel_apply(a.spectral(), x.matrix(), [](double u, double v) {
        return std::sqrt(u * v) * log_divided_difference(u, v);
    }));
}

}  // namespace qre

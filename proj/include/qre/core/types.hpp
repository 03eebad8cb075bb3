#pragma once

#include <memory>
#include <string>

#include "qre/core/jacobi.hpp"

namespace qre {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kDensityTraceTolerance = 1e-12;

/// Validated Hermitian matrix with eagerly computed spectral data. Immutable.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const Matrix& m) : HermitianMatrix(validate(m), nullptr) {}

    static HermitianMatrix identity(Eigen::Index n) { return HermitianMatrix(Matrix::Identity(n, n)); }
    static HermitianMatrix zero(Eigen::Index n) { return HermitianMatrix(Matrix::Zero(n, n)); }
    static HermitianMatrix diagonal(const RealVector& d) {
        return HermitianMatrix(Matrix(d.cast<Complex>().asDiagonal()));
    }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    const SpectralDecomposition& spectral() const { return *spectral_; }
    const RealVector& eigenvalues() const { return spectral_->eigenvalues; }
    const Matrix& frame() const { return spectral_->frame; }
    double trace() const { return trace_real(m_); }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

protected:
    struct Trusted {};
    // Used when the spectral data of an already-Hermitian matrix is known.
    HermitianMatrix(Trusted, Matrix m, SpectralDecomposition s)
        : m_(std::move(m)), spectral_(std::make_shared<const SpectralDecomposition>(std::move(s))) {}

    HermitianMatrix(Matrix m, std::nullptr_t)
        : m_(std::move(m)), spectral_(std::make_shared<const SpectralDecomposition>(jacobi_eigen(m_))) {}

    void rescale(double factor) {
        m_ *= factor;
        SpectralDecomposition s = *spectral_;
        s.eigenvalues *= factor;
        spectral_ = std::make_shared<const SpectralDecomposition>(std::move(s));
    }

private:
    static Matrix validate(const Matrix& m) {
        if (m.rows() != m.cols()) throw DimensionMismatch(m.rows(), m.cols());
        if (m.rows() < 1) throw InvalidMatrix("matrix dimension must be at least 1");
        if (!all_finite(m)) throw InvalidMatrix("matrix has non-finite entries");
        const double scale = max_abs_entry(m);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = i; j < m.cols(); ++j)
                if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermitianTolerance * scale)
                    throw InvalidMatrix("matrix is not Hermitian at entry (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
        return hermitian_part(m);
    }

    Matrix m_;
    std::shared_ptr<const SpectralDecomposition> spectral_;

    friend HermitianMatrix make_hermitian(Matrix m, SpectralDecomposition s);
};

/// Hermitian matrix with strictly positive spectrum.
class PositiveMatrix : public HermitianMatrix {
public:
    explicit PositiveMatrix(const Matrix& m) : HermitianMatrix(m) { check(); }
    explicit PositiveMatrix(const HermitianMatrix& h) : HermitianMatrix(h) { check(); }

    static PositiveMatrix identity(Eigen::Index n) { return PositiveMatrix(Matrix::Identity(n, n)); }
    static PositiveMatrix diagonal(const RealVector& d) {
        return PositiveMatrix(Matrix(d.cast<Complex>().asDiagonal()));
    }

    double condition_number() const { return spectral().max() / spectral().min(); }

protected:
    PositiveMatrix(Trusted t, Matrix m, SpectralDecomposition s) : HermitianMatrix(t, std::move(m), std::move(s)) {
        check();
    }

private:
    void check() const {
        const double lo = spectral().min();
        if (!(lo > 0.0)) throw DomainError("matrix is not positive definite (min eigenvalue " + std::to_string(lo) + ")");
        if (!std::isfinite(spectral().max() / lo)) throw DomainError("matrix has infinite condition number");
    }

    friend PositiveMatrix make_positive(Matrix m, SpectralDecomposition s);
};

/// Positive matrix with unit trace.
class DensityMatrix : public PositiveMatrix {
public:
    explicit DensityMatrix(const Matrix& m) : PositiveMatrix(m) { normalize(); }
    explicit DensityMatrix(const PositiveMatrix& p) : PositiveMatrix(p) { normalize(); }

    /// Rescales any positive matrix to unit trace.
    static DensityMatrix normalized(const PositiveMatrix& p) {
        PositiveMatrix copy = p;
        return DensityMatrix(copy, 1.0 / p.trace());
    }

private:
    DensityMatrix(const PositiveMatrix& p, double factor) : PositiveMatrix(p) {
        rescale(factor);
        normalize();
    }

    void normalize() {
        const double tr = trace();
        if (std::abs(tr - 1.0) > kDensityTraceTolerance)
            throw DomainError("density matrix trace " + std::to_string(tr) + " differs from 1");
        if (tr != 1.0) rescale(1.0 / tr);
    }
};

/// Builds a HermitianMatrix from a matrix whose spectral data is already known.
inline HermitianMatrix make_hermitian(Matrix m, SpectralDecomposition s) {
    return HermitianMatrix(HermitianMatrix::Trusted{}, hermitian_part(m), std::move(s));
}

inline PositiveMatrix make_positive(Matrix m, SpectralDecomposition s) {
    return PositiveMatrix(PositiveMatrix::Trusted{}, hermitian_part(m), std::move(s));
}

}  // namespace qre

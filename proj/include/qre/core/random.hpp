#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qre/core/types.hpp"

namespace qre {

enum class EnsembleKind { Hermitian, Positive, Density, Unitary, CommutingPair, PositiveTriple };

inline std::string to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::Hermitian: return "hermitian";
        case EnsembleKind::Positive: return "positive";
        case EnsembleKind::Density: return "density";
        case EnsembleKind::Unitary: return "unitary";
        case EnsembleKind::CommutingPair: return "commutingPair";
        case EnsembleKind::PositiveTriple: return "positiveTriple";
    }
    return "?";
}

inline EnsembleKind ensemble_kind_from_string(std::string_view s) {
    if (s == "hermitian") return EnsembleKind::Hermitian;
    if (s == "positive") return EnsembleKind::Positive;
    if (s == "density") return EnsembleKind::Density;
    if (s == "unitary") return EnsembleKind::Unitary;
    if (s == "commutingPair") return EnsembleKind::CommutingPair;
    if (s == "positiveTriple") return EnsembleKind::PositiveTriple;
    throw ParseError("unknown ensemble kind: " + std::string(s));
}

struct EnsembleSpec {
    int dim = 3;
    int maxDim = 0;  // > dim: trial dimension drawn uniformly from [dim, maxDim]
    double kappa = 1e3;
    EnsembleKind kind = EnsembleKind::Positive;
    std::uint64_t masterSeed = 42;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// FNV-1a, used to give each check its own stream.
inline std::uint64_t hash_string(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Counter-based generator: the k-th output is a pure function of (key, k).
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : key_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL) ^
                          splitmix64(index * 0xD1B54A32D192ED03ULL))) {}

    std::uint64_t next_u64() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++); }

    /// Uniform on (0, 1].
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(next_u64() % span);
    }

    /// Standard normal via Box-Muller (no cached second value, keeps the stream stateless).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Complex Gaussian with E|z|^2 = 1.
    Complex complex_normal() { return Complex(normal(), normal()) * std::sqrt(0.5); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

inline Matrix gaussian_matrix(RandomStream& rng, Eigen::Index n) {
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
    return g;
}

/// (G + G*)/2
inline HermitianMatrix random_hermitian(RandomStream& rng, Eigen::Index n, double scale = 1.0) {
    const Matrix g = gaussian_matrix(rng, n);
    return HermitianMatrix(hermitian_part(scale * g));
}

/// Haar unitary: modified Gram-Schmidt QR of a complex Gaussian, R diagonal made positive.
inline Matrix haar_unitary(RandomStream& rng, Eigen::Index n) {
    Matrix q = gaussian_matrix(rng, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < j; ++k) {
            const Complex r = q.col(k).dot(q.col(j));  // conjugates the first argument
            q.col(j) -= r * q.col(k);
        }
        q.col(j) /= q.col(j).norm();
    }
    return q;
}

/// Eigenvalues with log uniform on [-ln sqrt(kappa), ln sqrt(kappa)].
inline RealVector log_uniform_spectrum(RandomStream& rng, Eigen::Index n, double kappa) {
    const double h = 0.5 * std::log(kappa);
    RealVector d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(rng.uniform(-h, h));
    return d;
}

inline PositiveMatrix positive_in_frame(const Matrix& frame, const RealVector& d) {
    return PositiveMatrix(reconstruct(frame, d));
}

inline PositiveMatrix random_positive(RandomStream& rng, Eigen::Index n, double kappa) {
    const Matrix u = haar_unitary(rng, n);
    return positive_in_frame(u, log_uniform_spectrum(rng, n, kappa));
}

inline DensityMatrix random_density(RandomStream& rng, Eigen::Index n, double kappa) {
    return DensityMatrix::normalized(random_positive(rng, n, kappa));
}

/// One draw of an ensemble. Positive-type kinds hold PositiveMatrix values.
struct EnsembleSample {
    EnsembleKind kind;
    std::vector<Matrix> matrices;
};

inline int trial_dim(const EnsembleSpec& spec, RandomStream& rng) {
    if (spec.maxDim > spec.dim) return rng.uniform_int(spec.dim, spec.maxDim);
    return spec.dim;
}

inline EnsembleSample random_ensemble(const EnsembleSpec& spec, std::uint64_t trialIndex) {
    if (spec.dim < 1) throw ParseError("ensemble dimension must be positive");
    if (!(spec.kappa >= 1.0)) throw ParseError("ensemble kappa must be >= 1");
    RandomStream rng(spec.masterSeed, static_cast<std::uint64_t>(spec.kind), trialIndex);
    const int n = trial_dim(spec, rng);
    EnsembleSample out{spec.kind, {}};
    switch (spec.kind) {
        case EnsembleKind::Hermitian: out.matrices.push_back(random_hermitian(rng, n).matrix()); break;
        case EnsembleKind::Positive: out.matrices.push_back(random_positive(rng, n, spec.kappa).matrix()); break;
        case EnsembleKind::Density: out.matrices.push_back(random_density(rng, n, spec.kappa).matrix()); break;
        case EnsembleKind::Unitary: out.matrices.push_back(haar_unitary(rng, n)); break;
        case EnsembleKind::CommutingPair: {
            const Matrix u = haar_unitary(rng, n);
            out.matrices.push_back(positive_in_frame(u, log_uniform_spectrum(rng, n, spec.kappa)).matrix());
            out.matrices.push_back(positive_in_frame(u, log_uniform_spectrum(rng, n, spec.kappa)).matrix());
            break;
        }
        case EnsembleKind::PositiveTriple: {
            const PositiveMatrix x = random_positive(rng, n, spec.kappa);
            const PositiveMatrix y = random_positive(rng, n, spec.kappa);
            const PositiveMatrix z = random_positive(rng, n, spec.kappa);
            out.matrices.push_back(x.matrix());
            out.matrices.push_back(y.matrix());
            out.matrices.push_back(z.matrix() * (x.trace() / z.trace()));
            break;
        }
    }
    return out;
}

}  // namespace qre

#pragma once

#include <atomic>
#include <functional>
#include <limits>
#include <optional>
#include <thread>

#include "qre/core/functions.hpp"
#include "qre/core/random.hpp"
#include "qre/harness/report.hpp"

namespace qre::harness {

/// What a single trial reports back to the engine.
struct TrialOutcome {
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<double> scale;  // default max(1, |lhs|, |rhs|); 0 makes the check an exact threshold
    double slack = 0.0;
    double commNorm = 0.0;
    bool sideOk = true;  // side condition, e.g. equality at a stated maximizer
    std::string sideNote;
};

struct TrialContext {
    int dim = 3;
    double kappa = 1e3;
    bool commuting = false;
    const ParamMap& params;
    std::uint64_t index = 0;
    double tol = 1e-9;  // effective tolerance of the run

    double param(const std::string& name) const {
        const auto it = params.find(name);
        if (it == params.end()) throw ParamOutOfDomain("missing parameter " + name);
        return it->second;
    }

    bool has(const std::string& name) const { return params.count(name) > 0; }
};

struct ParamDomain {
    std::string name;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool loOpen = false;
    bool hiOpen = false;
    bool sampled = false;  // drawn per trial from the domain when not given

    bool contains(double v) const {
        if (!std::isfinite(v)) return false;
        if (loOpen ? !(v > lo) : !(v >= lo)) return false;
        if (hiOpen ? !(v < hi) : !(v <= hi)) return false;
        return true;
    }

    std::string describe() const {
        return name + " in " + (loOpen || std::isinf(lo) ? "(" : "[") + format_double(lo, 6) + ", " +
               format_double(hi, 6) + (hiOpen || std::isinf(hi) ? ")" : "]");
    }
};

using TrialFunction = std::function<TrialOutcome(RandomStream&, const TrialContext&)>;

inline constexpr int kSolverTrialCap = 50;

struct CheckDefinition {
    std::string id;
    std::string family;
    std::string anchor;
    std::string nativeEnsemble = "positive";
    ParamMap defaults;
    std::vector<ParamDomain> domains;
    double floorTol = 0.0;
    bool commutingEquality = false;  // commuting inputs must give |gap| <= tol*scale
    bool solver = false;             // capped at kSolverTrialCap trials
    int minDim = 1;
    TrialFunction trial;
    std::function<void(const ParamMap&)> validate = {};  // extra domain rules beyond the intervals
};

/// Merges user params over defaults and validates every value against the declared domains.
inline ParamMap resolve_params(const CheckDefinition& def, const ParamMap& given) {
    ParamMap out = def.defaults;
    for (const auto& [k, v] : given) {
        const bool known = std::any_of(def.domains.begin(), def.domains.end(),
                                       [&](const ParamDomain& d) { return d.name == k; });
        if (!known) throw ParamOutOfDomain(def.id + " has no parameter " + k);
        out[k] = v;
    }
    for (const ParamDomain& d : def.domains) {
        const auto it = out.find(d.name);
        if (it == out.end()) {
            if (d.sampled) continue;
            throw ParamOutOfDomain(def.id + " needs parameter " + d.name);
        }
        if (!d.contains(it->second))
            throw ParamOutOfDomain(def.id + ": " + d.name + " = " + format_double(it->second, 6) +
                                   " outside " + d.describe());
    }
    if (def.validate) def.validate(out);
    return out;
}

struct RunOptions {
    int trials = 200;
    double tol = 1e-9;
    int jobs = 1;
};

inline int default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs fn(i) for i in [0, count) on `jobs` threads. Each index is written by exactly one worker.
template <class F>
void parallel_for(std::size_t count, int jobs, F&& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

inline TrialRecord make_record(std::uint64_t i, const TrialOutcome& o, double tol, bool twoSided) {
    TrialRecord r;
    r.i = i;
    r.lhs = o.lhs;
    r.rhs = o.rhs;
    r.gap = o.rhs - o.lhs;
    r.scale = o.scale ? *o.scale : std::max({1.0, std::abs(o.lhs), std::abs(o.rhs)});
    r.slack = o.slack;
    r.commNorm = o.commNorm;
    const double allowed = tol * r.scale + r.slack;
    r.pass = std::isfinite(r.gap) && r.gap >= -allowed && (!twoSided || r.gap <= allowed) && o.sideOk;
    if (!o.sideOk) r.error = o.sideNote.empty() ? "side condition failed" : o.sideNote;
    return r;
}

/// Runs one catalogued check. Trial i draws from the stream keyed by (seed, check id, mode, i),
/// so the report does not depend on `jobs`.
inline CheckReport run_check(const CheckDefinition& def, const ParamMap& given, const EnsembleSpec& ens,
                             const RunOptions& opt) {
    if (opt.trials < 1) throw ParamOutOfDomain("trials must be positive");
    if (!(opt.tol >= 0.0)) throw ParamOutOfDomain("tol must be non-negative");
    if (ens.dim < def.minDim) throw DimensionTooSmall(ens.dim, def.minDim);
    if (!(ens.kappa >= 1.0)) throw ParamOutOfDomain("kappa must be >= 1");

    CheckReport rep;
    const bool commuting = ens.kind == EnsembleKind::CommutingPair;
    rep.descriptor = {def.id, resolve_params(def, given), commuting ? "commutingPair" : def.nativeEnsemble,
                      def.anchor};
    rep.masterSeed = ens.masterSeed;
    rep.tol = std::max(opt.tol, def.floorTol);
    rep.dim = ens.dim;
    rep.maxDim = std::max(ens.maxDim, ens.dim);
    rep.kappa = ens.kappa;

    const int trials = def.solver ? std::min(opt.trials, kSolverTrialCap) : opt.trials;
    const std::uint64_t stream = hash_string(def.id + (commuting ? "#commuting" : ""));
    const bool twoSided = commuting && def.commutingEquality;
    rep.records.resize(static_cast<std::size_t>(trials));
    const ParamMap& params = rep.descriptor.params;
    const double tol = rep.tol;

    parallel_for(rep.records.size(), opt.jobs, [&](std::size_t i) {
        RandomStream rng(ens.masterSeed, stream, i);
        TrialContext ctx{ens.dim, ens.kappa, commuting, params, i, tol};
        if (ens.maxDim > ens.dim) ctx.dim = rng.uniform_int(ens.dim, ens.maxDim);
        try {
            rep.records[i] = make_record(i, def.trial(rng, ctx), tol, twoSided);
        } catch (const Error& e) {
            TrialRecord r;
            r.i = i;
            r.pass = false;
            r.error = e.what();
            rep.records[i] = r;
        }
    });
    aggregate(rep);
    return rep;
}

// ---- samplers -------------------------------------------------------------------------------

inline PositiveMatrix sample_positive(RandomStream& rng, const TrialContext& c) {
    return random_positive(rng, c.dim, c.kappa);
}

inline DensityMatrix sample_density(RandomStream& rng, const TrialContext& c) {
    return random_density(rng, c.dim, c.kappa);
}

inline HermitianMatrix sample_hermitian(RandomStream& rng, const TrialContext& c) {
    return random_hermitian(rng, c.dim);
}

struct PositivePair {
    PositiveMatrix x;
    PositiveMatrix y;
};

/// Independent Haar frames, or one shared frame when the context is commuting.
inline PositivePair sample_pair(RandomStream& rng, const TrialContext& c, bool density = false) {
    const Matrix u = haar_unitary(rng, c.dim);
    const Matrix v = c.commuting ? u : haar_unitary(rng, c.dim);
    PositiveMatrix x = positive_in_frame(u, log_uniform_spectrum(rng, c.dim, c.kappa));
    PositiveMatrix y = positive_in_frame(v, log_uniform_spectrum(rng, c.dim, c.kappa));
    if (density) return {DensityMatrix::normalized(x), DensityMatrix::normalized(y)};
    return {x, y};
}

struct PositiveTriple {
    PositiveMatrix x;
    PositiveMatrix y;
    PositiveMatrix z;  // Tr Z = Tr X
};

/// (X, Y, Z) with Tr Z = Tr X. Commuting contexts use the commuting twin Z = X with [X, Y] = 0.
inline PositiveTriple sample_triple(RandomStream& rng, const TrialContext& c) {
    const PositivePair p = sample_pair(rng, c);
    if (c.commuting) return {p.x, p.y, p.x};
    const PositiveMatrix z = random_positive(rng, c.dim, c.kappa);
    return {p.x, p.y, PositiveMatrix(Matrix(z.matrix() * (p.x.trace() / z.trace())))};
}

struct HermitianPair {
    HermitianMatrix h;
    HermitianMatrix k;
};

inline HermitianMatrix hermitian_in_frame(const Matrix& u, RandomStream& rng, Eigen::Index n) {
    RealVector d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = rng.normal();
    return HermitianMatrix(reconstruct(u, d));
}

inline HermitianPair sample_hermitian_pair(RandomStream& rng, const TrialContext& c) {
    if (!c.commuting) return {random_hermitian(rng, c.dim), random_hermitian(rng, c.dim)};
    const Matrix u = haar_unitary(rng, c.dim);
    return {hermitian_in_frame(u, rng, c.dim), hermitian_in_frame(u, rng, c.dim)};
}

/// A Hermitian H and a positive Y, sharing a frame when commuting.
struct HermitianPositive {
    HermitianMatrix h;
    PositiveMatrix y;
};

inline HermitianPositive sample_hermitian_positive(RandomStream& rng, const TrialContext& c, bool densityY = false) {
    const Matrix u = haar_unitary(rng, c.dim);
    const HermitianMatrix h = c.commuting ? hermitian_in_frame(u, rng, c.dim) : random_hermitian(rng, c.dim);
    PositiveMatrix y = positive_in_frame(u, log_uniform_spectrum(rng, c.dim, c.kappa));
    if (densityY) y = DensityMatrix::normalized(y);
    return {h, y};
}

/// max(1, largest operator norm among the arguments)
inline double op_scale(std::initializer_list<const Matrix*> ms) {
    double s = 1.0;
    for (const Matrix* m : ms) s = std::max(s, op_norm(hermitian_part(*m)));
    return s;
}

/// Identity-type outcome: lhs is the defect norm, rhs 0.
inline TrialOutcome identity_outcome(double defect, double scale, double commNorm = 0.0) {
    TrialOutcome o;
    o.lhs = defect;
    o.rhs = 0.0;
    o.scale = scale;
    o.commNorm = commNorm;
    return o;
}

/// Exact threshold: measured <= bound, no tolerance.
inline TrialOutcome threshold_outcome(double measured, double bound, double commNorm = 0.0) {
    TrialOutcome o;
    o.lhs = measured;
    o.rhs = bound;
    o.scale = 0.0;
    o.commNorm = commNorm;
    return o;
}

inline TrialOutcome inequality_outcome(double lhs, double rhs, double commNorm = 0.0) {
    TrialOutcome o;
    o.lhs = lhs;
    o.rhs = rhs;
    o.commNorm = commNorm;
    return o;
}

}  // namespace qre::harness

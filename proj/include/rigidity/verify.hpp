#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "rigidity/action.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/matrix.hpp"
#include "rigidity/subspace.hpp"
#include "rigidity/witness.hpp"

namespace rigidity {

inline constexpr std::size_t kDefaultVerifySamples = 1000;
inline constexpr std::uint64_t kDefaultVerifySeed = 42;
inline constexpr double kDefaultEquivarianceTol = 1e-9;
inline constexpr double kNonconstancyRelThreshold = 1e-3;

// Reproducible uniform sampler on [0,1)^m: identical seeds yield identical
// streams on every platform.
class TorusSampler {
public:
    explicit TorusSampler(std::uint64_t seed) : state_(seed) {}

    double unit() {
        // 53 high bits of a mersenne twister draw scaled into [0,1).
        return static_cast<double>(state_() >> 11) * 0x1.0p-53;
    }

    std::vector<double> point(std::size_t dim) {
        std::vector<double> x(dim);
        for (double& v : x) v = unit();
        return x;
    }

private:
    std::mt19937_64 state_;
};

inline std::vector<double> apply_mod1(const IntMatrix& m, const std::vector<double>& x) {
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += to_double(m(i, j)) * x[j];
        y[i] = frac_unit(s);
    }
    return y;
}

inline double torus_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, circle_distance(a[i], b[i]));
    return d;
}

inline double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

struct VerificationReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double equivariance_tol = kDefaultEquivarianceTol;
    double max_equivariance_error = 0.0;
    std::vector<double> per_generator_error;
    double nonconstancy_gap = 0.0;
    double nonconstancy_threshold = 0.0;
    bool pass = false;
};

namespace detail {

inline double direction_norm(const IntVec& v) {
    double s = 0.0;
    for (const Int& x : v) {
        const double d = to_double(x);
        s += d * d;
    }
    return std::sqrt(s);
}

inline void score(VerificationReport& report) {
    report.pass = report.max_equivariance_error < report.equivariance_tol &&
                  report.nonconstancy_gap > report.nonconstancy_threshold;
}

}  // namespace detail

// Sup-norm equivariance check of f(g x) = g f(x) per generator at random
// points. The base point and the origin are always included, so the report
// is meaningful even with zero samples.
inline VerificationReport check_equivariance(const WitnessSpec& w, const MatrixAction& source,
                                             const MatrixAction& target, std::size_t samples,
                                             std::uint64_t seed = kDefaultVerifySeed,
                                             double tol = kDefaultEquivarianceTol) {
    if (source.dim() != w.source.dim() || target.dim() != w.target.dim() ||
        source.rank() != target.rank())
        throw DimensionMismatch("check_equivariance: actions do not match the witness");
    VerificationReport report;
    report.samples = samples;
    report.seed = seed;
    report.equivariance_tol = tol;
    report.per_generator_error.assign(source.rank(), 0.0);
    report.nonconstancy_threshold = kNonconstancyRelThreshold * detail::direction_norm(w.direction);

    TorusSampler sampler(seed);
    std::vector<std::vector<double>> points;
    points.reserve(samples + 2);
    points.push_back(w.base_point);
    points.push_back(std::vector<double>(source.dim(), 0.0));
    for (std::size_t i = 0; i < samples; ++i) points.push_back(sampler.point(source.dim()));

    for (const std::vector<double>& x : points) {
        const std::vector<double> fx = w.eval_map(x);
        for (std::size_t j = 0; j < source.rank(); ++j) {
            const std::vector<double> lhs = w.eval_map(apply_mod1(source.generator(j), x));
            const std::vector<double> rhs = apply_mod1(target.generator(j), fx);
            report.per_generator_error[j] =
                std::max(report.per_generator_error[j], torus_distance(lhs, rhs));
        }
    }
    for (double e : report.per_generator_error)
        report.max_equivariance_error = std::max(report.max_equivariance_error, e);

    report.nonconstancy_gap =
        euclidean_distance(w.eval_lift(w.base_point),
                           w.eval_lift(std::vector<double>(source.dim(), 0.0)));
    detail::score(report);
    return report;
}

// Largest pairwise spread of the displacement S over the base point, the
// origin and random samples. Positive spread rules out every affine map with
// the same homotopy data.
inline double check_nonaffine(const WitnessSpec& w, std::size_t samples,
                              std::uint64_t seed = kDefaultVerifySeed) {
    TorusSampler sampler(seed);
    std::vector<std::vector<double>> values;
    values.reserve(samples + 2);
    values.push_back(w.eval_lift(w.base_point));
    values.push_back(w.eval_lift(std::vector<double>(w.source.dim(), 0.0)));
    for (std::size_t i = 0; i < samples; ++i)
        values.push_back(w.eval_lift(sampler.point(w.source.dim())));
    double gap = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            gap = std::max(gap, euclidean_distance(values[i], values[j]));
    return gap;
}

// Full witness verification: equivariance within tol and nonconstancy above
// the relative threshold.
inline VerificationReport verify_witness(const WitnessSpec& w,
                                         std::size_t samples = kDefaultVerifySamples,
                                         std::uint64_t seed = kDefaultVerifySeed,
                                         double tol = kDefaultEquivarianceTol) {
    VerificationReport report = check_equivariance(w, w.source, w.target, samples, seed, tol);
    report.nonconstancy_gap = check_nonaffine(w, samples, seed);
    detail::score(report);
    return report;
}

enum class OrbitStatus { Finite, Infinite, Inconclusive };

// Outcome of the breadth-first orbit probe. Escape beyond the norm bound is
// never taken as proof of infiniteness, only as evidence.
struct OrbitProbe {
    OrbitStatus status = OrbitStatus::Inconclusive;
    std::size_t visited = 0;
    bool escaped = false;
    std::optional<IntVec> escape_vector;
    bool monotone_norm_growth = false;
};

inline Int sup_norm(const IntVec& v) {
    Int n = 0;
    for (const Int& x : v) n = std::max(n, abs_int(x));
    return n;
}

// Exhaustive orbit closure under the generators and their inverses. Finite
// only when the closure completes within both bounds; anything else is
// Inconclusive with diagnostics.
inline OrbitProbe brute_orbit_finite(const std::vector<IntMatrix>& generators, const IntVec& z,
                                     std::size_t size_bound = 10000,
                                     const Int& norm_bound = Int(1000000)) {
    if (generators.empty())
        throw std::invalid_argument("orbit probe: needs at least one generator");
    std::vector<IntMatrix> steps;
    for (const IntMatrix& g : generators) {
        if (!g.is_square() || g.rows() != z.size())
            throw DimensionMismatch("orbit probe: generator shape differs from vector");
        const Int d = det(g);
        if (d != 1 && d != -1)
            throw NotUnimodular("orbit probe: generator has determinant " + d.str());
        steps.push_back(g);
        steps.push_back(unimodular_inverse(g));
    }

    OrbitProbe probe;
    std::set<IntVec> visited{z};
    std::vector<IntVec> frontier{z};
    bool truncated = false;
    Int previous_layer_min = sup_norm(z);
    bool monotone = true;
    bool any_layer = false;

    while (!frontier.empty() && !truncated) {
        std::vector<IntVec> next;
        std::optional<Int> layer_min;
        for (const IntVec& v : frontier) {
            for (const IntMatrix& s : steps) {
                IntVec image = s.apply(v);
                if (visited.count(image)) continue;
                if (visited.size() >= size_bound) {
                    truncated = true;
                    break;
                }
                const Int norm = sup_norm(image);
                if (!layer_min || norm < *layer_min) layer_min = norm;
                if (norm > norm_bound) {
                    if (!probe.escaped) probe.escape_vector = image;
                    probe.escaped = true;
                    visited.insert(std::move(image));
                    continue;
                }
                next.push_back(image);
                visited.insert(std::move(image));
            }
            if (truncated) break;
        }
        if (layer_min) {
            any_layer = true;
            if (*layer_min <= previous_layer_min) monotone = false;
            previous_layer_min = *layer_min;
        }
        frontier = std::move(next);
    }

    probe.visited = visited.size();
    probe.monotone_norm_growth = any_layer && monotone;
    probe.status = (!truncated && !probe.escaped) ? OrbitStatus::Finite : OrbitStatus::Inconclusive;
    return probe;
}

// Every commuting invertible family whose transposes fix a nonzero vector
// also fixes one directly; degenerate inputs raise instead of returning.
inline bool oracle_fixed_vector_duality(const std::vector<IntMatrix>& generators) {
    if (generators.empty())
        throw std::invalid_argument("duality oracle: needs at least one matrix");
    const std::size_t dim = generators.front().rows();
    for (const IntMatrix& g : generators) {
        if (!g.is_square() || g.rows() != dim)
            throw DimensionMismatch("duality oracle: shapes differ");
        if (det(g) == 0) throw std::invalid_argument("duality oracle: singular matrix");
    }
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (generators[i] * generators[j] != generators[j] * generators[i])
                throw NonCommuting("duality oracle: matrices do not commute");
    RationalSubspace dual_fixed = RationalSubspace::full(dim);
    RationalSubspace fixed = RationalSubspace::full(dim);
    const IntMatrix id = IntMatrix::identity(dim);
    for (const IntMatrix& g : generators) {
        dual_fixed = intersect(dual_fixed, rational_kernel(g.transpose() - id));
        fixed = intersect(fixed, rational_kernel(g - id));
    }
    return dual_fixed.is_zero() || !fixed.is_zero();
}

// Haar-ergodicity matches the absence of nonzero finite-orbit vectors of the
// primal action.
inline bool oracle_ergodic_iff_no_finite_orbit(const MatrixAction& a) {
    return is_ergodic(a) == finite_orbit_subspace(a).is_zero();
}

}  // namespace rigidity

#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/action.hpp"
#include "rigidity/decide.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/lattice.hpp"
#include "rigidity/matrix.hpp"

namespace rigidity {

inline double frac_unit(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

// Arc distance on R/Z, always in [0, 1/2].
inline double circle_distance(double a, double b) {
    double d = std::fabs(a - b);
    d -= std::floor(d);
    return d > 0.5 ? 1.0 - d : d;
}

inline double dot_double(const IntVec& w, const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += to_double(w[i]) * x[i];
    return s;
}

// Piecewise linear spike of height 1 at `center`, supported on an arc of
// radius `radius` around it.
struct TentBump {
    double center = 0.0;
    double radius = 0.0;

    double eval(double angle) const {
        const double d = circle_distance(angle, center);
        return d >= radius ? 0.0 : 1.0 - d / radius;
    }
};

namespace detail {

inline long long nth_prime(std::size_t index) {
    std::vector<long long> primes;
    long long candidate = 2;
    while (primes.size() <= index) {
        bool prime = true;
        for (long long p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(candidate);
        ++candidate;
    }
    return primes[index];
}

// Smallest n >= 1 with n*(a1 \ {0}) disjoint from a2 \ {0}. Exists because
// the sets are finite.
inline Int smallest_fold_multiplier(const std::set<IntVec>& a1, const std::set<IntVec>& a2) {
    for (Int n = 1;; ++n) {
        bool ok = true;
        for (const IntVec& u : a1) {
            if (is_zero_vec(u)) continue;
            if (a2.count(scale(n, u))) {
                ok = false;
                break;
            }
        }
        if (ok) return n;
    }
}

inline std::set<IntVec> orbit_difference_set(const IntVec& chi, const MatrixAction& dual,
                                             const std::vector<IntVec>& reps) {
    std::set<IntVec> diffs;
    for (const IntVec& rep : reps) diffs.insert(sub(dual.apply(rep).apply(chi), chi));
    return diffs;
}

}  // namespace detail

// Character in the finite-orbit lattice whose stabilizer is exactly the
// stabilizer subgroup of the whole lattice, built by folding basis vectors
// pairwise: chi' = n*chi1 - chi2 with n killing accidental coincidences of
// the two orbit difference sets.
inline IntVec select_character(const LatticeBasis& chars, const MatrixAction& dual,
                               const SubgroupLattice& stabilizer) {
    if (chars.rank() == 0)
        throw EmptyCharacterLattice("select_character: no finite-orbit characters");
    const std::vector<IntVec> reps = coset_representatives(stabilizer);
    IntVec chi = chars.basis().front();
    for (std::size_t t = 1; t < chars.rank(); ++t) {
        const IntVec& next = chars.basis()[t];
        const std::set<IntVec> a1 = detail::orbit_difference_set(chi, dual, reps);
        const std::set<IntVec> a2 = detail::orbit_difference_set(next, dual, reps);
        const Int n = detail::smallest_fold_multiplier(a1, a2);
        chi = sub(scale(n, chi), next);
    }
    for (const IntVec& rep : reps) {
        if (stabilizer.contains(rep)) continue;
        if (dual.apply(rep).apply(chi) == chi)
            throw std::logic_error("select_character: character not separating");
    }
    return chi;
}

struct BasePoint {
    std::vector<double> point;          // x0 in [0,1)^m
    std::vector<double> circle_values;  // 0 followed by <w_i, x0> mod 1 per rep
    double min_gap = 0.0;               // smallest pairwise arc distance
};

// Deterministic base point from square roots of primes; retries with fresh
// primes until all circle values separate by more than `tol`.
inline BasePoint select_base_point(const std::vector<IntVec>& character_rows, std::size_t dim,
                                   double tol = 1e-3, int max_attempts = 64) {
    double best = -1.0;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        BasePoint candidate;
        candidate.point.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const long long p =
                detail::nth_prime(static_cast<std::size_t>(attempt) * dim + i);
            candidate.point[i] = frac_unit(std::sqrt(static_cast<double>(p)));
        }
        candidate.circle_values.push_back(0.0);
        for (const IntVec& w : character_rows)
            candidate.circle_values.push_back(frac_unit(dot_double(w, candidate.point)));
        double gap = 0.5;
        for (std::size_t i = 0; i < candidate.circle_values.size(); ++i)
            for (std::size_t j = i + 1; j < candidate.circle_values.size(); ++j)
                gap = std::min(gap,
                               circle_distance(candidate.circle_values[i],
                                               candidate.circle_values[j]));
        best = std::max(best, gap);
        if (gap > tol) {
            candidate.min_gap = gap;
            return candidate;
        }
    }
    std::ostringstream os;
    os << "select_base_point: no base point separated the " << character_rows.size() + 1
       << " circle values beyond " << tol << " in " << max_attempts
       << " attempts (best gap " << best << ")";
    throw SeparationFailure(os.str(), best, max_attempts);
}

// Explicit nonaffine equivariant map, serializable and re-checkable. The
// map is f(x) = S(x) mod 1 where S sums one bump term per stabilizer coset:
//   S(x) = sum_i bump(<w_i, x> mod 1) * u_i,
// with w_i the witness character pulled through coset representative i and
// u_i the fixed vector pushed through the representative's inverse.
class WitnessSpec {
public:
    WitnessSpec(MatrixAction source_action, MatrixAction target_action)
        : source(std::move(source_action)), target(std::move(target_action)) {}

    MatrixAction source;
    MatrixAction target;
    IntVec character;                 // finite-orbit character of the source
    std::vector<double> base_point;   // x0
    std::vector<IntVec> reps;         // stabilizer coset exponent vectors
    std::vector<double> circle_values;  // c_0 = 0, then c_i at x0 per rep
    double bump_radius = 0.0;
    IntVec direction;                 // stabilizer-fixed target vector
    std::vector<IntMatrix> source_rep_matrices;   // action of each rep
    std::vector<IntMatrix> target_rep_inverses;   // target action of each -rep

    const std::vector<IntVec>& character_rows() const { return character_rows_; }
    const std::vector<IntVec>& pushed_directions() const { return pushed_directions_; }
    const TentBump& bump() const { return bump_; }

    // Recompute derived data from the stored fields and validate shapes.
    void finalize() {
        const std::size_t m = source.dim();
        const std::size_t n = target.dim();
        const std::size_t d = reps.size();
        if (d == 0) throw std::invalid_argument("witness: needs at least one coset");
        if (character.size() != m) throw DimensionMismatch("witness: character length");
        if (base_point.size() != m) throw DimensionMismatch("witness: base point length");
        if (direction.size() != n) throw DimensionMismatch("witness: direction length");
        if (is_zero_vec(direction)) throw std::invalid_argument("witness: direction is zero");
        if (circle_values.size() != d + 1)
            throw DimensionMismatch("witness: needs one circle value per coset plus zero");
        if (circle_values.front() != 0.0)
            throw std::invalid_argument("witness: first circle value must be zero");
        if (!(bump_radius > 0.0)) throw std::invalid_argument("witness: bump radius not positive");
        if (source_rep_matrices.size() != d || target_rep_inverses.size() != d)
            throw DimensionMismatch("witness: one matrix pair per coset required");
        for (const IntVec& rep : reps)
            if (rep.size() != source.rank())
                throw DimensionMismatch("witness: coset exponent length differs from rank");

        character_rows_.clear();
        pushed_directions_.clear();
        character_rows_.reserve(d);
        pushed_directions_.reserve(d);
        for (std::size_t i = 0; i < d; ++i) {
            if (!source_rep_matrices[i].is_square() || source_rep_matrices[i].rows() != m)
                throw DimensionMismatch("witness: source coset matrix shape");
            if (!target_rep_inverses[i].is_square() || target_rep_inverses[i].rows() != n)
                throw DimensionMismatch("witness: target coset matrix shape");
            character_rows_.push_back(source_rep_matrices[i].transpose().apply(character));
            pushed_directions_.push_back(target_rep_inverses[i].apply(direction));
        }
        bump_ = TentBump{circle_values.back(), bump_radius};
    }

    // S: R^m -> R^n, constant on unit translates, S(0) = 0.
    std::vector<double> eval_lift(const std::vector<double>& x) const {
        if (x.size() != source.dim()) throw DimensionMismatch("witness eval: point length");
        std::vector<double> acc(target.dim(), 0.0);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            const double angle = frac_unit(dot_double(character_rows_[i], x));
            const double coefficient = bump_.eval(angle);
            if (coefficient == 0.0) continue;
            for (std::size_t j = 0; j < acc.size(); ++j)
                acc[j] += coefficient * to_double(pushed_directions_[i][j]);
        }
        return acc;
    }

    // f = S mod 1, the witness map on the torus.
    std::vector<double> eval_map(const std::vector<double>& x) const {
        std::vector<double> value = eval_lift(x);
        for (double& v : value) v = frac_unit(v);
        return value;
    }

private:
    std::vector<IntVec> character_rows_;
    std::vector<IntVec> pushed_directions_;
    TentBump bump_;
};

inline constexpr double kDefaultSeparationTol = 1e-3;
inline constexpr int kMaxBasePointAttempts = 64;

// Assemble the witness for a YES decision using the given coset transversal.
// The construction is deterministic; any transversal of the stabilizer
// yields the same map.
inline WitnessSpec build_witness_with_reps(const MatrixAction& source, const MatrixAction& target,
                                           const std::vector<IntVec>& reps,
                                           double separation_tol = kDefaultSeparationTol) {
    detail::require_same_rank(source, target);
    const MatrixAction dual = source.dual();
    const LatticeBasis chars = finite_orbit_lattice(dual);
    if (chars.rank() == 0)
        throw EmptyCharacterLattice("witness: source has no finite-orbit characters");
    const SubgroupLattice stabilizer = stabilizer_subgroup(source);

    if (Int(static_cast<unsigned long long>(reps.size())) != stabilizer.index())
        throw std::invalid_argument("witness: transversal size differs from stabilizer index");
    std::set<IntVec> residues;
    for (const IntVec& rep : reps) residues.insert(stabilizer.residue(rep));
    if (residues.size() != reps.size())
        throw std::invalid_argument("witness: transversal hits a coset twice");

    const RationalSubspace fixed = fixed_subspace(target, stabilizer);
    if (fixed.is_zero())
        throw std::invalid_argument("witness: target has no stabilizer-fixed vector");

    WitnessSpec w(source, target);
    w.reps = reps;
    w.character = select_character(chars, dual, stabilizer);
    w.direction = primitive_integer(fixed.basis().front());

    std::vector<IntVec> character_rows;
    character_rows.reserve(reps.size());
    for (const IntVec& rep : reps) character_rows.push_back(dual.apply(rep).apply(w.character));
    BasePoint base =
        select_base_point(character_rows, source.dim(), separation_tol, kMaxBasePointAttempts);
    w.base_point = std::move(base.point);
    w.circle_values = std::move(base.circle_values);

    // Half the least arc gap between the distinguished circle value and the
    // others keeps the bump supports pairwise disjoint along the orbit.
    double min_gap = 0.5;
    for (std::size_t i = 0; i + 1 < w.circle_values.size(); ++i)
        min_gap = std::min(min_gap,
                           circle_distance(w.circle_values[i], w.circle_values.back()));
    w.bump_radius = min_gap / 2.0;

    for (const IntVec& rep : reps) {
        w.source_rep_matrices.push_back(source.apply(rep));
        w.target_rep_inverses.push_back(target.apply(negate(rep)));
    }
    w.finalize();

    for (const IntVec& b : stabilizer.lattice().basis())
        if (target.apply(b).apply(w.direction) != w.direction)
            throw std::logic_error("witness: direction not fixed by the stabilizer");
    return w;
}

// Assemble the witness for a YES decision from one of the exact routes. A
// report from the almost criterion is rejected: its conditions do not place
// a fixed vector under the full stabilizer, which this construction needs.
inline WitnessSpec build_witness(const MatrixAction& source, const MatrixAction& target,
                                 const DecisionReport& report,
                                 double separation_tol = kDefaultSeparationTol) {
    if (!report.exists_nonaffine)
        throw std::invalid_argument("witness: decision is NO, nothing to build");
    if (report.mode == DecisionMode::Almost)
        throw std::invalid_argument("witness: almost-mode reports cannot back a witness");
    const SubgroupLattice stabilizer = stabilizer_subgroup(source);
    return build_witness_with_reps(source, target, coset_representatives(stabilizer),
                                   separation_tol);
}

}  // namespace rigidity

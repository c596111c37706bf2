#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidity/action.hpp"
#include "rigidity/cyclotomic.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/lattice.hpp"
#include "rigidity/matrix.hpp"
#include "rigidity/subspace.hpp"

namespace rigidity {

enum class DecisionMode { Exact, Almost, Cyclic, Factor };

// Reason no nonaffine equivariant map exists.
enum class Refusal {
    SourceErgodic,
    NoFiniteOrbitTargetVector,
    NoStabilizerFixedVector,
    TargetErgodic,
};

inline const char* mode_name(DecisionMode m) {
    switch (m) {
        case DecisionMode::Exact: return "exact";
        case DecisionMode::Almost: return "almost";
        case DecisionMode::Cyclic: return "cyclic";
        case DecisionMode::Factor: return "factor";
    }
    return "?";
}

inline const char* refusal_name(Refusal r) {
    switch (r) {
        case Refusal::SourceErgodic: return "SourceErgodic";
        case Refusal::NoFiniteOrbitTargetVector: return "NoFiniteOrbitTargetVector";
        case Refusal::NoStabilizerFixedVector: return "NoStabilizerFixedVector";
        case Refusal::TargetErgodic: return "TargetErgodic";
    }
    return "?";
}

// YES certificate: the ingredients every witness is assembled from. The
// fixed vector is fixed by the action of each basis element of the carried
// stabilizer subgroup.
struct Evidence {
    LatticeBasis finite_orbit_characters;
    SubgroupLattice stabilizer;
    IntVec fixed_vector;
};

struct Diagnostics {
    std::vector<long long> source_k_indices;
    std::vector<long long> target_k_indices;
    std::size_t finite_orbit_rank = 0;
    std::optional<Int> stabilizer_index;
    std::optional<long long> cyclic_k;
    std::optional<Int> det_power_minus_identity;
};

struct DecisionReport {
    bool exists_nonaffine = false;
    DecisionMode mode = DecisionMode::Exact;
    std::optional<Refusal> refusal;
    std::optional<Evidence> evidence;
    Diagnostics diagnostics;
};

namespace detail {

inline void require_same_rank(const MatrixAction& source, const MatrixAction& target) {
    if (source.rank() != target.rank())
        throw RankMismatch("decide: source rank " + std::to_string(source.rank()) +
                           " differs from target rank " + std::to_string(target.rank()));
}

inline std::vector<long long> generator_k_indices(const MatrixAction& a) {
    std::vector<long long> k;
    k.reserve(a.rank());
    for (const IntMatrix& g : a.generators()) k.push_back(k_index(g));
    return k;
}

}  // namespace detail

// Exact criterion: a nonaffine equivariant continuous map exists iff the
// source has a nonzero finite-orbit character and the target has a nonzero
// vector fixed by the character's stabilizer subgroup.
inline DecisionReport decide_nonaffine(const MatrixAction& source, const MatrixAction& target) {
    detail::require_same_rank(source, target);
    DecisionReport report;
    report.mode = DecisionMode::Exact;
    report.diagnostics.source_k_indices = detail::generator_k_indices(source);
    report.diagnostics.target_k_indices = detail::generator_k_indices(target);

    const LatticeBasis chars = finite_orbit_lattice(source.dual());
    report.diagnostics.finite_orbit_rank = chars.rank();
    if (chars.rank() == 0) {
        report.exists_nonaffine = false;
        report.refusal = Refusal::SourceErgodic;
        return report;
    }

    const SubgroupLattice stabilizer = stabilizer_subgroup(source);
    report.diagnostics.stabilizer_index = stabilizer.index();
    const RationalSubspace fixed = fixed_subspace(target, stabilizer);
    if (fixed.is_zero()) {
        report.exists_nonaffine = false;
        report.refusal = Refusal::NoStabilizerFixedVector;
        return report;
    }

    report.exists_nonaffine = true;
    report.evidence = Evidence{chars, stabilizer, primitive_integer(fixed.basis().front())};
    return report;
}

// Weaker criterion deciding maps equivariant up to a vanishing sup-norm
// error: only non-ergodicity of the source and a finite-orbit target vector
// are needed. The carried stabilizer is the product of the target k-index
// sublattices, which fixes the vector exactly.
inline DecisionReport decide_almost(const MatrixAction& source, const MatrixAction& target) {
    detail::require_same_rank(source, target);
    DecisionReport report;
    report.mode = DecisionMode::Almost;
    report.diagnostics.source_k_indices = detail::generator_k_indices(source);
    report.diagnostics.target_k_indices = detail::generator_k_indices(target);

    const LatticeBasis chars = finite_orbit_lattice(source.dual());
    report.diagnostics.finite_orbit_rank = chars.rank();
    if (chars.rank() == 0) {
        report.exists_nonaffine = false;
        report.refusal = Refusal::SourceErgodic;
        return report;
    }

    const RationalSubspace finite_target = finite_orbit_subspace(target);
    if (finite_target.is_zero()) {
        report.exists_nonaffine = false;
        report.refusal = Refusal::NoFiniteOrbitTargetVector;
        return report;
    }

    const std::size_t r = target.rank();
    std::vector<IntVec> rows(r, IntVec(r, Int(0)));
    for (std::size_t j = 0; j < r; ++j) rows[j][j] = report.diagnostics.target_k_indices[j];
    const SubgroupLattice stabilizer(LatticeBasis::from_generators(r, rows));
    report.diagnostics.stabilizer_index = stabilizer.index();

    report.exists_nonaffine = true;
    report.evidence =
        Evidence{chars, stabilizer, primitive_integer(finite_target.basis().front())};
    return report;
}

// Obstruction shared by the exact and almost criteria, or nothing when the
// almost criterion succeeds.
inline std::optional<Refusal> rigidity_certificate(const MatrixAction& source,
                                                   const MatrixAction& target) {
    detail::require_same_rank(source, target);
    if (is_ergodic(source)) return Refusal::SourceErgodic;
    if (finite_orbit_subspace(target).is_zero()) return Refusal::NoFiniteOrbitTargetVector;
    return std::nullopt;
}

// Single-generator fast path: for non-ergodic A, a nonaffine equivariant map
// into B's torus exists iff B^k has eigenvalue 1, where k is A's k-index.
// Equivalent to the exact criterion because the stabilizer of <A> is always
// k Z.
inline DecisionReport decide_cyclic(const IntMatrix& a, const IntMatrix& b) {
    const MatrixAction source({a});
    const MatrixAction target({b});
    DecisionReport report;
    report.mode = DecisionMode::Cyclic;
    report.diagnostics.source_k_indices = {k_index(a)};
    report.diagnostics.target_k_indices = {k_index(b)};

    const RootOfUnitySpectrum spectrum = root_of_unity_orders(charpoly(a));
    const long long k = spectrum.lcm_orders();
    report.diagnostics.cyclic_k = k;
    const IntMatrix bk = pow(b, k) - IntMatrix::identity(b.rows());
    const Int obstruction = det(bk);
    report.diagnostics.det_power_minus_identity = obstruction;

    if (spectrum.empty()) {
        report.exists_nonaffine = false;
        report.refusal = Refusal::SourceErgodic;
        return report;
    }
    const LatticeBasis chars = finite_orbit_lattice(source.dual());
    report.diagnostics.finite_orbit_rank = chars.rank();
    if (obstruction != 0) {
        report.exists_nonaffine = false;
        report.refusal = Refusal::NoStabilizerFixedVector;
        return report;
    }

    const SubgroupLattice stabilizer(LatticeBasis::from_generators(1, {{Int(k)}}));
    report.diagnostics.stabilizer_index = stabilizer.index();
    report.exists_nonaffine = true;
    report.evidence =
        Evidence{chars, stabilizer, primitive_integer(rational_kernel(bk).basis().front())};
    return report;
}

// Decision across an explicit algebraic factor map theta: T^m -> T^n, given
// by an integer matrix intertwining source and target. With such a factor
// the answer depends only on the target's ergodicity.
inline DecisionReport decide_factor(const MatrixAction& source, const MatrixAction& target,
                                    const IntMatrix& theta) {
    detail::require_same_rank(source, target);
    if (theta.rows() != target.dim() || theta.cols() != source.dim())
        throw DimensionMismatch("factor: matrix must be " + std::to_string(target.dim()) + "x" +
                                std::to_string(source.dim()));
    if (rational_rank(theta) != target.dim())
        throw NotSurjective("factor: matrix does not have full row rank");
    for (std::size_t j = 0; j < source.rank(); ++j)
        if (target.generator(j) * theta != theta * source.generator(j))
            throw NotEquivariant("factor: matrix does not intertwine generator " +
                                 std::to_string(j + 1));

    if (is_ergodic(target)) {
        DecisionReport report;
        report.mode = DecisionMode::Factor;
        report.diagnostics.source_k_indices = detail::generator_k_indices(source);
        report.diagnostics.target_k_indices = detail::generator_k_indices(target);
        report.diagnostics.finite_orbit_rank = finite_orbit_lattice(source.dual()).rank();
        report.exists_nonaffine = false;
        report.refusal = Refusal::TargetErgodic;
        return report;
    }

    // A non-ergodic factor pulls back to a finite-orbit source character and
    // pushes fixed vectors forward, so the exact criterion must agree.
    DecisionReport report = decide_nonaffine(source, target);
    if (!report.exists_nonaffine)
        throw std::logic_error("factor: exact criterion disagrees with factor criterion");
    report.mode = DecisionMode::Factor;
    return report;
}

}  // namespace rigidity

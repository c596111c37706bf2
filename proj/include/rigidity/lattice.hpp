#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/matrix.hpp"
#include "rigidity/subspace.hpp"

namespace rigidity {
namespace detail {

// Row-style Hermite normal form: one pivot per row at strictly increasing
// columns, pivots positive, entries above a pivot reduced into [0, pivot).
// Canonical for the lattice spanned by the input rows.
inline std::vector<IntVec> hnf_rows(std::vector<IntVec> rows, std::size_t ambient,
                                    std::vector<std::size_t>* pivots_out = nullptr) {
    for (const IntVec& r : rows)
        if (r.size() != ambient) throw DimensionMismatch("hnf: row length differs from ambient");
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t col = 0; col < ambient && top < rows.size(); ++col) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() || abs_int(rows[i][col]) < abs_int(rows[best][col]))
                    best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool cleared = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                const Int q = rows[i][col] / rows[top][col];
                if (q != 0)
                    for (std::size_t j = col; j < ambient; ++j) rows[i][j] -= q * rows[top][j];
                if (rows[i][col] != 0) cleared = false;
            }
            if (cleared) {
                if (rows[top][col] < 0)
                    for (std::size_t j = col; j < ambient; ++j) rows[top][j] = -rows[top][j];
                pivots.push_back(col);
                ++top;
                break;
            }
        }
    }
    rows.resize(pivots.size());
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        const Int& p = rows[k][pivots[k]];
        for (std::size_t i = 0; i < k; ++i) {
            const Int q = floor_div(rows[i][pivots[k]], p);
            if (q != 0)
                for (std::size_t j = pivots[k]; j < ambient; ++j) rows[i][j] -= q * rows[k][j];
        }
    }
    if (pivots_out) *pivots_out = pivots;
    return rows;
}

// Forward elimination with a recorded unimodular row transform: U * A = H
// with H echelonized top rows and all-zero bottom rows kept in place.
inline std::pair<std::vector<IntVec>, std::vector<IntVec>> hnf_with_transform(
    std::vector<IntVec> rows) {
    const std::size_t k = rows.size();
    const std::size_t ambient = k ? rows[0].size() : 0;
    std::vector<IntVec> u(k, IntVec(k, Int(0)));
    for (std::size_t i = 0; i < k; ++i) u[i][i] = 1;
    std::size_t top = 0;
    for (std::size_t col = 0; col < ambient && top < k; ++col) {
        for (;;) {
            std::size_t best = k;
            for (std::size_t i = top; i < k; ++i) {
                if (rows[i][col] == 0) continue;
                if (best == k || abs_int(rows[i][col]) < abs_int(rows[best][col])) best = i;
            }
            if (best == k) break;
            std::swap(rows[top], rows[best]);
            std::swap(u[top], u[best]);
            bool cleared = true;
            for (std::size_t i = top + 1; i < k; ++i) {
                if (rows[i][col] == 0) continue;
                const Int q = rows[i][col] / rows[top][col];
                if (q != 0) {
                    for (std::size_t j = 0; j < ambient; ++j) rows[i][j] -= q * rows[top][j];
                    for (std::size_t j = 0; j < k; ++j) u[i][j] -= q * u[top][j];
                }
                if (rows[i][col] != 0) cleared = false;
            }
            if (cleared) {
                ++top;
                break;
            }
        }
    }
    return {std::move(rows), std::move(u)};
}

// Integer solutions of C x = 0 where the rows of `constraints` are the
// constraint covectors; result rows are in canonical HNF.
inline std::vector<IntVec> integer_kernel_rows(const std::vector<IntVec>& constraints,
                                               std::size_t ambient) {
    if (constraints.empty()) {
        std::vector<IntVec> id(ambient, IntVec(ambient, Int(0)));
        for (std::size_t i = 0; i < ambient; ++i) id[i][i] = 1;
        return id;
    }
    // Rows of B are candidate solutions transposed against the constraints:
    // row i of B holds (c_1[i], ..., c_k[i]), so u * B = 0 iff C u^T = 0.
    std::vector<IntVec> b(ambient, IntVec(constraints.size(), Int(0)));
    for (std::size_t i = 0; i < ambient; ++i)
        for (std::size_t j = 0; j < constraints.size(); ++j) {
            if (constraints[j].size() != ambient)
                throw DimensionMismatch("integer kernel: constraint length differs");
            b[i][j] = constraints[j][i];
        }
    auto [h, u] = hnf_with_transform(std::move(b));
    std::vector<IntVec> kernel;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (is_zero_vec(h[i])) kernel.push_back(std::move(u[i]));
    return hnf_rows(std::move(kernel), ambient);
}

}  // namespace detail

// Sublattice of Z^m held in canonical Hermite normal form, so equal lattices
// compare equal byte for byte.
class LatticeBasis {
public:
    LatticeBasis() = default;

    static LatticeBasis from_generators(std::size_t ambient, const std::vector<IntVec>& gens) {
        LatticeBasis l;
        l.ambient_ = ambient;
        l.rows_ = detail::hnf_rows(gens, ambient, &l.pivots_);
        return l;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<IntVec>& basis() const { return rows_; }
    const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

    bool operator==(const LatticeBasis&) const = default;

    bool contains(const IntVec& v) const {
        if (v.size() != ambient_) throw DimensionMismatch("lattice contains: length differs");
        IntVec w = v;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Int& x = w[pivots_[i]];
            if (x == 0) continue;
            if (x % rows_[i][pivots_[i]] != 0) return false;
            const Int q = x / rows_[i][pivots_[i]];
            for (std::size_t j = pivots_[i]; j < ambient_; ++j) w[j] -= q * rows_[i][j];
        }
        return is_zero_vec(w);
    }

    // Canonical coset representative with each pivot coordinate reduced into
    // [0, pivot). Faithful on cosets when the lattice has full rank.
    IntVec residue(const IntVec& v) const {
        if (v.size() != ambient_) throw DimensionMismatch("lattice residue: length differs");
        IntVec w = v;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Int q = floor_div(w[pivots_[i]], rows_[i][pivots_[i]]);
            if (q != 0)
                for (std::size_t j = pivots_[i]; j < ambient_; ++j) w[j] -= q * rows_[i][j];
        }
        return w;
    }

    // Group index [Z^m : L], defined only for full-rank lattices.
    Int determinant_index() const {
        if (rank() != ambient_) throw RankMismatch("index: lattice does not have full rank");
        Int d = 1;
        for (std::size_t i = 0; i < rows_.size(); ++i) d *= rows_[i][pivots_[i]];
        return d;
    }

private:
    std::size_t ambient_ = 0;
    std::vector<IntVec> rows_;
    std::vector<std::size_t> pivots_;
};

// Smallest saturated lattice containing the inputs: (Q-span of the inputs)
// intersected with Z^m. Z^m / result is torsion-free.
inline LatticeBasis lattice_saturate(const std::vector<IntVec>& vectors, std::size_t ambient) {
    std::vector<RatVec> rows;
    rows.reserve(vectors.size());
    for (const IntVec& v : vectors) {
        if (v.size() != ambient) throw DimensionMismatch("saturate: vector length differs");
        if (!is_zero_vec(v)) rows.push_back(to_rational(v));
    }
    if (rows.empty()) return LatticeBasis::from_generators(ambient, {});
    const RationalSubspace span = RationalSubspace::from_rows(ambient, rows);
    const RationalSubspace orth = span.perp();
    std::vector<IntVec> constraints;
    constraints.reserve(orth.rank());
    for (const RatVec& r : orth.basis()) constraints.push_back(primitive_integer(r));
    return LatticeBasis::from_generators(ambient,
                                         detail::integer_kernel_rows(constraints, ambient));
}

}  // namespace rigidity

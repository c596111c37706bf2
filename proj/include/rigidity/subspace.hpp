#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/matrix.hpp"

namespace rigidity {

// Rational subspace of Q^m in canonical form: basis rows are the nonzero rows
// of the reduced row echelon form, so equal subspaces compare equal.
class RationalSubspace {
public:
    static RationalSubspace zero(std::size_t ambient) { return RationalSubspace(ambient, {}); }

    static RationalSubspace full(std::size_t ambient) {
        std::vector<RatVec> rows(ambient, RatVec(ambient, Rat(0)));
        for (std::size_t i = 0; i < ambient; ++i) rows[i][i] = 1;
        return RationalSubspace(ambient, std::move(rows));
    }

    static RationalSubspace from_rows(std::size_t ambient, const std::vector<RatVec>& rows) {
        for (const RatVec& r : rows)
            if (r.size() != ambient) throw DimensionMismatch("subspace: row length differs from ambient");
        RatMatrix m(rows.size(), ambient);
        for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
        const std::vector<std::size_t> pivots = rref_in_place(m);
        std::vector<RatVec> canon(pivots.size());
        for (std::size_t i = 0; i < pivots.size(); ++i) canon[i] = m.row_vec(i);
        RationalSubspace s(ambient, std::move(canon));
        s.pivots_ = pivots;
        return s;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }
    bool is_zero() const { return rows_.empty(); }
    const std::vector<RatVec>& basis() const { return rows_; }

    bool operator==(const RationalSubspace& rhs) const {
        return ambient_ == rhs.ambient_ && rows_ == rhs.rows_;
    }

    bool contains(const RatVec& v) const {
        if (v.size() != ambient_) throw DimensionMismatch("subspace contains: length differs");
        RatVec w = v;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            // copy: the loop below writes through w[pivots_[i]]
            const Rat c = w[pivots_[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < ambient_; ++j) w[j] -= c * rows_[i][j];
        }
        return is_zero_vec(w);
    }

    bool contains(const IntVec& v) const { return contains(to_rational(v)); }

    // Orthogonal complement with respect to the standard bilinear form.
    RationalSubspace perp() const;

private:
    RationalSubspace(std::size_t ambient, std::vector<RatVec> rows)
        : ambient_(ambient), rows_(std::move(rows)) {
        pivots_.reserve(rows_.size());
        for (const RatVec& r : rows_) {
            std::size_t p = 0;
            while (p < ambient_ && r[p] == 0) ++p;
            pivots_.push_back(p);
        }
    }

    std::size_t ambient_ = 0;
    std::vector<RatVec> rows_;
    std::vector<std::size_t> pivots_;
};

// Null space {x : Mx = 0} in canonical form.
inline RationalSubspace rational_kernel(const RatMatrix& m) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) return RationalSubspace::full(n);
    RatMatrix r = m;
    const std::vector<std::size_t> pivots = rref_in_place(r);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(n, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return RationalSubspace::from_rows(n, basis);
}

inline RationalSubspace rational_kernel(const IntMatrix& m) {
    return rational_kernel(to_rational(m));
}

inline RationalSubspace RationalSubspace::perp() const {
    if (rows_.empty()) return RationalSubspace::full(ambient_);
    RatMatrix m(rows_.size(), ambient_);
    for (std::size_t i = 0; i < rows_.size(); ++i) m.set_row(i, rows_[i]);
    return rational_kernel(m);
}

inline RationalSubspace intersect(const RationalSubspace& a, const RationalSubspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("intersect: ambient dimensions differ");
    const RationalSubspace pa = a.perp();
    const RationalSubspace pb = b.perp();
    RatMatrix m(pa.rank() + pb.rank(), a.ambient_dim());
    std::size_t row = 0;
    for (const RatVec& r : pa.basis()) m.set_row(row++, r);
    for (const RatVec& r : pb.basis()) m.set_row(row++, r);
    return rational_kernel(m);
}

inline RationalSubspace intersect_subspaces(const std::vector<RationalSubspace>& parts) {
    if (parts.empty()) throw std::invalid_argument("intersect_subspaces: empty list");
    RationalSubspace acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = intersect(acc, parts[i]);
    return acc;
}

}  // namespace rigidity

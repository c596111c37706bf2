#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/cyclotomic.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/lattice.hpp"
#include "rigidity/matrix.hpp"
#include "rigidity/polynomial.hpp"
#include "rigidity/subspace.hpp"

namespace rigidity {

// Action of Z^r on the torus T^m by automorphisms: r pairwise commuting
// unimodular integer matrices, one per free generator.
class MatrixAction {
public:
    explicit MatrixAction(std::vector<IntMatrix> generators) : gens_(std::move(generators)) {
        if (gens_.empty()) throw std::invalid_argument("action: needs at least one generator");
        dim_ = gens_[0].rows();
        if (dim_ == 0) throw DimensionMismatch("action: torus dimension must be positive");
        for (std::size_t j = 0; j < gens_.size(); ++j) {
            if (!gens_[j].is_square() || gens_[j].rows() != dim_)
                throw DimensionMismatch("action: generator " + std::to_string(j + 1) +
                                        " is not " + std::to_string(dim_) + "x" +
                                        std::to_string(dim_));
            const Int d = det(gens_[j]);
            if (d != 1 && d != -1)
                throw NotUnimodular("action: generator " + std::to_string(j + 1) +
                                    " has determinant " + d.str());
        }
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = i + 1; j < gens_.size(); ++j)
                if (gens_[i] * gens_[j] != gens_[j] * gens_[i])
                    throw NonCommuting("action: generators " + std::to_string(i + 1) + " and " +
                                       std::to_string(j + 1) + " do not commute");
        invs_.reserve(gens_.size());
        for (const IntMatrix& g : gens_) invs_.push_back(unimodular_inverse(g));
    }

    std::size_t rank() const { return gens_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<IntMatrix>& generators() const { return gens_; }
    const IntMatrix& generator(std::size_t j) const { return gens_[j]; }
    const IntMatrix& generator_inverse(std::size_t j) const { return invs_[j]; }

    bool operator==(const MatrixAction& rhs) const { return gens_ == rhs.gens_; }

    // Matrix of the group element with the given exponent vector.
    IntMatrix apply(const IntVec& exponents) const {
        if (exponents.size() != rank())
            throw DimensionMismatch("action apply: exponent vector length differs from rank");
        IntMatrix result = IntMatrix::identity(dim_);
        for (std::size_t j = 0; j < gens_.size(); ++j) {
            if (exponents[j] == 0) continue;
            const bool neg = exponents[j] < 0;
            IntMatrix base = neg ? invs_[j] : gens_[j];
            Int k = abs_int(exponents[j]);
            while (k != 0) {
                if ((k & 1) != 0) result = result * base;
                k >>= 1;
                if (k != 0) base = base * base;
            }
        }
        return result;
    }

    // Action on the character lattice: generators transposed. Commutes, so
    // the exponent map stays a homomorphism.
    MatrixAction dual() const {
        std::vector<IntMatrix> t;
        t.reserve(gens_.size());
        for (const IntMatrix& g : gens_) t.push_back(g.transpose());
        return MatrixAction(std::move(t));
    }

private:
    std::vector<IntMatrix> gens_;
    std::vector<IntMatrix> invs_;
    std::size_t dim_ = 0;
};

// Largest subspace on which every generator acts with finite order: the
// intersection over generators G of ker(G^{k_G} - I).
inline RationalSubspace finite_orbit_subspace(const MatrixAction& a) {
    RationalSubspace acc = RationalSubspace::full(a.dim());
    for (std::size_t j = 0; j < a.rank(); ++j) {
        const long long k = k_index(a.generator(j));
        const IntMatrix power = pow(a.generator(j), k) - IntMatrix::identity(a.dim());
        acc = intersect(acc, rational_kernel(power));
    }
    return acc;
}

// Saturated lattice of vectors with finite orbit under the action. For the
// dual action this is the lattice of finite-orbit characters.
inline LatticeBasis finite_orbit_lattice(const MatrixAction& a) {
    const RationalSubspace w = finite_orbit_subspace(a);
    std::vector<IntVec> gens;
    gens.reserve(w.rank());
    for (const RatVec& row : w.basis()) gens.push_back(primitive_integer(row));
    return lattice_saturate(gens, a.dim());
}

// Haar-ergodicity: no nonzero character has a finite dual orbit.
inline bool is_ergodic(const MatrixAction& a) {
    return finite_orbit_lattice(a.dual()).rank() == 0;
}

// Full-rank subgroup of the acting group Z^r, canonical Hermite form with
// its index precomputed.
class SubgroupLattice {
public:
    explicit SubgroupLattice(LatticeBasis basis) : basis_(std::move(basis)) {
        if (basis_.rank() != basis_.ambient_dim())
            throw RankMismatch("subgroup: basis does not have full rank");
        index_ = basis_.determinant_index();
    }

    static SubgroupLattice full(std::size_t rank) {
        std::vector<IntVec> rows(rank, IntVec(rank, Int(0)));
        for (std::size_t i = 0; i < rank; ++i) rows[i][i] = 1;
        return SubgroupLattice(LatticeBasis::from_generators(rank, rows));
    }

    std::size_t rank() const { return basis_.ambient_dim(); }
    const LatticeBasis& lattice() const { return basis_; }
    const Int& index() const { return index_; }

    bool contains(const IntVec& exponents) const { return basis_.contains(exponents); }
    IntVec residue(const IntVec& exponents) const { return basis_.residue(exponents); }

    bool operator==(const SubgroupLattice&) const = default;

private:
    LatticeBasis basis_;
    Int index_ = 1;
};

namespace detail {

// Matrix of M restricted to the saturated lattice L in the coordinates of
// L's basis; integral because L is saturated and M-invariant.
inline IntMatrix restrict_to_lattice(const IntMatrix& m, const LatticeBasis& l) {
    const std::size_t s = l.rank();
    const std::size_t dim = l.ambient_dim();
    RatMatrix aug(dim, 2 * s);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t t = 0; t < s; ++t) aug(i, t) = Rat(l.basis()[t][i]);
    for (std::size_t t = 0; t < s; ++t) {
        const IntVec image = m.apply(l.basis()[t]);
        for (std::size_t i = 0; i < dim; ++i) aug(i, s + t) = Rat(image[i]);
    }
    const std::vector<std::size_t> pivots = rref_in_place(aug);
    if (pivots.size() != s || (s && pivots.back() >= s))
        throw std::logic_error("restrict: lattice basis is not independent or not invariant");
    IntMatrix r(s, s);
    for (std::size_t row = 0; row < s; ++row)
        for (std::size_t t = 0; t < s; ++t) {
            const Rat& x = aug(row, s + t);
            if (boost::multiprecision::denominator(x) != 1)
                throw std::logic_error("restrict: image not in the lattice");
            r(row, t) = boost::multiprecision::numerator(x);
        }
    return r;
}

// Multiplicative order, capped by the lcm of the root-of-unity orders in the
// characteristic polynomial.
inline long long matrix_order(const IntMatrix& m) {
    const long long cap = m.rows() == 0 ? 1 : root_of_unity_orders(charpoly(m)).lcm_orders();
    IntMatrix p = IntMatrix::identity(m.rows());
    for (long long o = 1; o <= cap; ++o) {
        p = p * m;
        if (p.is_identity()) return o;
    }
    throw std::logic_error("matrix_order: matrix does not have finite order");
}

constexpr std::size_t kEnumerationCap = 1u << 20;

}  // namespace detail

// Subgroup of exponent vectors acting trivially on every finite-orbit
// character of the source action. Always full rank: the per-generator orders
// already give a finite-index sublattice.
inline SubgroupLattice stabilizer_subgroup(const MatrixAction& a) {
    const std::size_t r = a.rank();
    const MatrixAction dual = a.dual();
    const LatticeBasis chars = finite_orbit_lattice(dual);
    if (chars.rank() == 0) return SubgroupLattice::full(r);

    std::vector<IntMatrix> restricted;
    std::vector<long long> orders;
    restricted.reserve(r);
    orders.reserve(r);
    std::size_t box = 1;
    for (std::size_t j = 0; j < r; ++j) {
        restricted.push_back(detail::restrict_to_lattice(dual.generator(j), chars));
        orders.push_back(detail::matrix_order(restricted.back()));
        if (box > detail::kEnumerationCap / static_cast<std::size_t>(orders.back()))
            throw std::runtime_error("stabilizer: quotient too large to enumerate");
        box *= static_cast<std::size_t>(orders.back());
    }

    std::vector<std::vector<IntMatrix>> powers(r);
    for (std::size_t j = 0; j < r; ++j) {
        powers[j].reserve(static_cast<std::size_t>(orders[j]));
        IntMatrix p = IntMatrix::identity(chars.rank());
        for (long long t = 0; t < orders[j]; ++t) {
            powers[j].push_back(p);
            p = p * restricted[j];
        }
    }

    std::vector<IntVec> gens;
    for (std::size_t j = 0; j < r; ++j) {
        IntVec row(r, Int(0));
        row[j] = orders[j];
        gens.push_back(std::move(row));
    }
    for (std::size_t count = 1; count < box; ++count) {
        std::size_t rest = count;
        IntMatrix product = IntMatrix::identity(chars.rank());
        IntVec exponents(r, Int(0));
        for (std::size_t j = 0; j < r; ++j) {
            const std::size_t digit = rest % static_cast<std::size_t>(orders[j]);
            rest /= static_cast<std::size_t>(orders[j]);
            exponents[j] = static_cast<long long>(digit);
            if (digit) product = product * powers[j][digit];
        }
        if (product.is_identity()) gens.push_back(std::move(exponents));
    }
    return SubgroupLattice(LatticeBasis::from_generators(r, gens));
}

// Canonical coset representatives of Z^r modulo the subgroup, mixed-radix
// over the Hermite diagonal with the first coordinate varying fastest.
inline std::vector<IntVec> coset_representatives(const SubgroupLattice& subgroup) {
    const std::size_t r = subgroup.rank();
    const Int& index = subgroup.index();
    if (index > Int(static_cast<unsigned long long>(detail::kEnumerationCap)))
        throw std::runtime_error("cosets: index too large to enumerate");
    const std::size_t total = index.convert_to<std::size_t>();
    IntVec diag(r);
    for (std::size_t i = 0; i < r; ++i) diag[i] = subgroup.lattice().basis()[i][i];
    std::vector<IntVec> reps;
    reps.reserve(total);
    for (std::size_t count = 0; count < total; ++count) {
        Int rest = static_cast<unsigned long long>(count);
        IntVec rep(r);
        for (std::size_t i = 0; i < r; ++i) {
            rep[i] = rest % diag[i];
            rest /= diag[i];
        }
        reps.push_back(std::move(rep));
    }
    return reps;
}

// Vectors fixed by every element of the subgroup; fixing the basis suffices.
inline RationalSubspace fixed_subspace(const MatrixAction& a, const SubgroupLattice& subgroup) {
    if (subgroup.rank() != a.rank())
        throw RankMismatch("fixed_subspace: subgroup rank differs from action rank");
    RationalSubspace acc = RationalSubspace::full(a.dim());
    for (const IntVec& b : subgroup.lattice().basis()) {
        const IntMatrix g = a.apply(b) - IntMatrix::identity(a.dim());
        acc = intersect(acc, rational_kernel(g));
    }
    return acc;
}

}  // namespace rigidity

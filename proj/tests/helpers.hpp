#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rigidity/rigidity.hpp"

namespace testutil {

using namespace rigidity;

inline IntMatrix catmap() { return IntMatrix{{2, 1}, {1, 1}}; }
inline IntMatrix shear() { return IntMatrix{{1, 1}, {0, 1}}; }
inline IntMatrix lower_shear() { return IntMatrix{{1, 0}, {1, 1}}; }
inline IntMatrix period3() { return IntMatrix{{0, -1}, {1, -1}}; }
inline IntMatrix quarter_turn() { return IntMatrix{{0, -1}, {1, 0}}; }
inline IntMatrix reflection1() { return IntMatrix{{-1}}; }
inline IntMatrix identity(std::size_t n) { return IntMatrix::identity(n); }

// Random unimodular matrix as a short product of elementary row operations;
// determinant stays +1 or -1 by construction.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int ops = 8) {
    IntMatrix m = IntMatrix::identity(n);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> kind(0, 3);
    for (int t = 0; t < ops; ++t) {
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        switch (kind(rng)) {
            case 0: {
                if (i == j) j = (j + 1) % n;
                if (n == 1) break;
                const Int c = coef(rng);
                for (std::size_t col = 0; col < n; ++col) m(i, col) += c * m(j, col);
                break;
            }
            case 1: {
                if (i == j || n == 1) break;
                for (std::size_t col = 0; col < n; ++col) std::swap(m(i, col), m(j, col));
                break;
            }
            default: {
                for (std::size_t col = 0; col < n; ++col) m(i, col) = -m(i, col);
                break;
            }
        }
    }
    return m;
}

// Random unimodular matrix guaranteed to have a root-of-unity eigenvalue:
// a torsion-type block conjugated by a random unimodular change of basis.
inline IntMatrix random_nonergodic(std::mt19937_64& rng, std::size_t n) {
    IntMatrix block = IntMatrix::identity(n);
    std::uniform_int_distribution<int> choice(0, 3);
    switch (choice(rng)) {
        case 0: break;
        case 1:
            if (n >= 2) {
                block(0, 1) = 1;
            } else {
                block(0, 0) = -1;
            }
            break;
        case 2:
            if (n >= 2) {
                block(0, 0) = 0;
                block(0, 1) = -1;
                block(1, 0) = 1;
                block(1, 1) = -1;
            }
            break;
        default:
            block(n - 1, n - 1) = -1;
            break;
    }
    const IntMatrix u = random_unimodular(rng, n, 6);
    return unimodular_inverse(u) * block * u;
}

// Random commuting unimodular family: signed powers of one random matrix.
inline std::vector<IntMatrix> random_commuting_family(std::mt19937_64& rng, std::size_t n,
                                                      std::size_t count) {
    const IntMatrix base = random_unimodular(rng, n, 6);
    std::uniform_int_distribution<long long> exponent(-2, 2);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<IntMatrix> family;
    family.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        IntMatrix g = pow(base, exponent(rng));
        if (sign(rng))
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) g(a, b) = -g(a, b);
        family.push_back(std::move(g));
    }
    return family;
}

inline IntVec vec(std::initializer_list<long long> entries) {
    IntVec v;
    v.reserve(entries.size());
    for (long long x : entries) v.push_back(x);
    return v;
}

inline RatVec rvec(std::initializer_list<long long> entries) {
    RatVec v;
    v.reserve(entries.size());
    for (long long x : entries) v.push_back(Rat(x));
    return v;
}

}  // namespace testutil

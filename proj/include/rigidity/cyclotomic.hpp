#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/matrix.hpp"
#include "rigidity/polynomial.hpp"

namespace rigidity {

inline long long totient(long long n) {
    if (n <= 0) throw std::invalid_argument("totient: argument must be positive");
    long long result = n;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace detail {

// Assumes the cache mutex is held. Map node references stay valid across
// later insertions.
inline const IntPolynomial& cyclotomic_locked(long long n,
                                              std::map<long long, IntPolynomial>& cache) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    IntPolynomial divisor_product = IntPolynomial::one();
    for (long long d = 1; d < n; ++d)
        if (n % d == 0) divisor_product = divisor_product * cyclotomic_locked(d, cache);
    auto [q, r] = IntPolynomial::divmod_monic(IntPolynomial::power_minus_one(n), divisor_product);
    if (!r.is_zero()) throw std::logic_error("cyclotomic: inexact division");
    return cache.emplace(n, std::move(q)).first->second;
}

}  // namespace detail

// nth cyclotomic polynomial by exact division: x^n - 1 divided by the
// cyclotomics of all proper divisors. Cache is internally synchronized.
inline const IntPolynomial& cyclotomic(long long n) {
    if (n <= 0) throw std::invalid_argument("cyclotomic: index must be positive");
    static std::map<long long, IntPolynomial> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    return detail::cyclotomic_locked(n, cache);
}

// All n whose primitive nth roots of unity could be eigenvalues in dimension
// m, i.e. totient(n) <= m. Ascending.
inline std::vector<long long> candidate_orders(std::size_t m) {
    std::vector<long long> orders;
    // totient(n) >= sqrt(n/2), so totient(n) <= m forces n <= 2 m^2 + 1.
    const long long bound = 2 * static_cast<long long>(m) * static_cast<long long>(m) + 1;
    for (long long n = 1; n <= bound; ++n)
        if (totient(n) <= static_cast<long long>(m)) orders.push_back(n);
    return orders;
}

// Multiset of orders of the roots of unity among a polynomial's roots,
// recorded as order -> multiplicity of the cyclotomic factor.
class RootOfUnitySpectrum {
public:
    void add(long long order, int multiplicity) { orders_[order] += multiplicity; }

    bool empty() const { return orders_.empty(); }
    const std::map<long long, int>& orders() const { return orders_; }

    int multiplicity(long long order) const {
        auto it = orders_.find(order);
        return it == orders_.end() ? 0 : it->second;
    }

    // lcm of the orders; 1 when no root of unity occurs.
    long long lcm_orders() const {
        Int l = 1;
        for (const auto& [n, mult] : orders_) l = lcm_int(l, Int(n));
        if (l > Int(1000000000000LL)) throw std::overflow_error("order lcm too large");
        return l.convert_to<long long>();
    }

    bool operator==(const RootOfUnitySpectrum&) const = default;

private:
    std::map<long long, int> orders_;
};

inline RootOfUnitySpectrum root_of_unity_orders(const IntPolynomial& p) {
    if (p.degree() < 1 || !p.is_monic())
        throw std::invalid_argument("root_of_unity_orders: polynomial must be monic of degree >= 1");
    RootOfUnitySpectrum spectrum;
    IntPolynomial rest = p;
    for (long long n : candidate_orders(static_cast<std::size_t>(p.degree()))) {
        const IntPolynomial& phi = cyclotomic(n);
        if (phi.degree() > rest.degree()) continue;
        int mult = 0;
        for (;;) {
            auto [q, r] = IntPolynomial::divmod_monic(rest, phi);
            if (!r.is_zero()) break;
            rest = q;
            ++mult;
        }
        if (mult) spectrum.add(n, mult);
    }
    return spectrum;
}

// Least k >= 1 such that every root-of-unity eigenvalue of M is a kth root
// of unity, i.e. such that each finite-orbit character closes after k steps.
inline long long k_index(const IntMatrix& m) {
    const Int d = det(m);
    if (d != 1 && d != -1)
        throw NotUnimodular("k_index: matrix has determinant " + d.str() + ", expected +1 or -1");
    return root_of_unity_orders(charpoly(m)).lcm_orders();
}

}  // namespace rigidity

#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/errors.hpp"
#include "rigidity/integer.hpp"
#include "rigidity/matrix.hpp"

namespace rigidity {

// Integer polynomial, coefficients stored by ascending power. The zero
// polynomial has no coefficients and degree -1.
class IntPolynomial {
public:
    IntPolynomial() = default;

    explicit IntPolynomial(IntVec coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPolynomial one() { return IntPolynomial({Int(1)}); }

    // x^n - 1
    static IntPolynomial power_minus_one(long long n) {
        IntVec c(static_cast<std::size_t>(n) + 1, Int(0));
        c[0] = -1;
        c.back() = 1;
        return IntPolynomial(std::move(c));
    }

    long long degree() const { return static_cast<long long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    const Int& coeff(std::size_t k) const {
        static const Int zero = 0;
        return k < coeffs_.size() ? coeffs_[k] : zero;
    }

    const IntVec& coefficients() const { return coeffs_; }

    bool operator==(const IntPolynomial&) const = default;

    IntPolynomial operator*(const IntPolynomial& rhs) const {
        if (is_zero() || rhs.is_zero()) return IntPolynomial();
        IntVec c(coeffs_.size() + rhs.coeffs_.size() - 1, Int(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
                c[i + j] += coeffs_[i] * rhs.coeffs_[j];
        return IntPolynomial(std::move(c));
    }

    Int eval(const Int& x) const {
        Int r = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
        return r;
    }

    // Long division by a monic divisor stays in integer coefficients.
    static std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& p,
                                                                const IntPolynomial& d) {
        if (!d.is_monic()) throw std::invalid_argument("divmod_monic: divisor not monic");
        if (p.degree() < d.degree()) return {IntPolynomial(), p};
        IntVec rem = p.coeffs_;
        const std::size_t dd = d.coeffs_.size() - 1;
        IntVec quot(rem.size() - dd, Int(0));
        for (std::size_t k = quot.size(); k-- > 0;) {
            const Int c = rem[k + dd];
            if (c == 0) continue;
            quot[k] = c;
            for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= c * d.coeffs_[j];
        }
        return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Int& c = coeffs_[i];
            if (c == 0) continue;
            if (first) {
                if (c < 0) os << '-';
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            const Int a = abs_int(c);
            if (i == 0 || a != 1) os << a;
            if (i > 0) {
                if (a != 1) os << '*';
                os << 'x';
                if (i > 1) os << '^' << i;
            }
        }
        return os.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    IntVec coeffs_;
};

inline bool divides(const IntPolynomial& d, const IntPolynomial& p) {
    return IntPolynomial::divmod_monic(p, d).second.is_zero();
}

// Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier recurrence;
// every division by k is exact.
inline IntPolynomial charpoly(const IntMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("charpoly: matrix not square");
    const std::size_t n = m.rows();
    IntVec coeffs(n + 1, Int(0));
    coeffs[n] = 1;
    IntMatrix mk = m;
    Int ck = -trace(mk);
    if (n >= 1) coeffs[n - 1] = ck;
    for (std::size_t k = 2; k <= n; ++k) {
        IntMatrix shifted = mk;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += ck;
        mk = m * shifted;
        ck = -trace(mk) / Int(k);
        coeffs[n - k] = ck;
    }
    return IntPolynomial(std::move(coeffs));
}

}  // namespace rigidity

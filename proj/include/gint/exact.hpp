#pragma once
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gint/error.hpp"

namespace gint {

using BigInt = boost::multiprecision::cpp_int;

// Checked signed 128-bit scalar. Callers only select it after a bound
// analysis proves the computation fits, so an overflow here is a bug, not an
// input problem.
struct Int128 {
    __int128 v = 0;

    Int128() = default;
    Int128(long long x) : v(x) {}

    friend Int128 operator+(Int128 a, Int128 b) {
        Int128 r;
        if (__builtin_add_overflow(a.v, b.v, &r.v))
            throw InvariantViolation("int128 overflow in +");
        return r;
    }
    friend Int128 operator-(Int128 a, Int128 b) {
        Int128 r;
        if (__builtin_sub_overflow(a.v, b.v, &r.v))
            throw InvariantViolation("int128 overflow in -");
        return r;
    }
    friend Int128 operator*(Int128 a, Int128 b) {
        Int128 r;
        if (__builtin_mul_overflow(a.v, b.v, &r.v))
            throw InvariantViolation("int128 overflow in *");
        return r;
    }
    Int128& operator+=(Int128 b) { return *this = *this + b; }
    friend bool operator==(Int128 a, Int128 b) { return a.v == b.v; }
    friend bool operator!=(Int128 a, Int128 b) { return a.v != b.v; }
    bool is_zero() const { return v == 0; }
};

inline bool scalar_is_zero(const Int128& x) { return x.is_zero(); }
inline bool scalar_is_zero(const BigInt& x) { return x.is_zero(); }

// Minimal row-major square matrix for the exact kernels. The floating-point
// side of the library speaks Eigen; these integer products deliberately stay
// on a flat std::vector so the scalar can be a checked 128-bit wrapper or a
// bignum without fighting expression templates.
template <typename S>
struct DenseSquare {
    int n = 0;
    std::vector<S> a;

    DenseSquare() = default;
    explicit DenseSquare(int size) : n(size), a(static_cast<size_t>(size) * size, S(0)) {}

    S& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const S& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static DenseSquare identity(int size) {
        DenseSquare m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = S(1);
        return m;
    }
    bool is_zero() const {
        for (const S& x : a)
            if (!scalar_is_zero(x)) return false;
        return true;
    }
    friend DenseSquare operator*(const DenseSquare& x, const DenseSquare& y) {
        DenseSquare r(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                const S& xv = x.at(i, k);
                if (scalar_is_zero(xv)) continue;
                for (int j = 0; j < x.n; ++j) r.at(i, j) += xv * y.at(k, j);
            }
        return r;
    }
};

// Does prod_{lambda=-deg..deg} (A - lambda I) vanish? Tried in the order
// +deg, 0, -1, +1, -2, +2, ..., -deg with an early exit once the partial
// product hits zero; entries of a symmetric partial product built this way
// stay bounded, which is what justifies the 128-bit instantiation.
template <typename S>
bool annihilating_product_vanishes(const DenseSquare<long long>& A, int deg) {
    std::vector<long long> order = {deg, 0};
    for (int j = 1; j < deg; ++j) {
        order.push_back(-j);
        order.push_back(j);
    }
    if (deg >= 1) order.push_back(-deg);
    DenseSquare<S> acc = DenseSquare<S>::identity(A.n);
    for (long long lam : order) {
        DenseSquare<S> factor(A.n);
        for (int i = 0; i < A.n; ++i)
            for (int j = 0; j < A.n; ++j)
                factor.at(i, j) = S(A.at(i, j) - (i == j ? lam : 0));
        acc = acc * factor;
        if (acc.is_zero()) return true;
    }
    return false;
}

// Monic integer polynomial, coefficient of x^i at coeffs[i].
struct IntPolynomial {
    std::vector<BigInt> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::string to_string(const std::string& var = "x") const;
    std::vector<std::string> coeff_strings() const;  // decimal, ascending degree
    bool operator==(const IntPolynomial&) const = default;
};

// Characteristic polynomial of an integer matrix, two independent routes:
// division-free Berkowitz (O(n^4) bignum work, used small and as an oracle)
// and Hessenberg reduction modulo 31-bit primes glued by CRT (O(n^3) per
// prime, used past n = 24).
IntPolynomial berkowitz_char_poly(const DenseSquare<long long>& A);
IntPolynomial multimodular_char_poly(const DenseSquare<long long>& A);
IntPolynomial char_poly(const DenseSquare<long long>& A);

// All roots counted with multiplicity, provided every root is an integer in
// [-bound, bound]; nullopt as soon as deflation cannot finish. Tries
// lambda = +bound down to -bound, dividing out each root to its full
// multiplicity.
std::optional<std::map<long long, int>> integer_spectrum(const IntPolynomial& p,
                                                         long long bound);

// -- exposed internals (independently testable) --

// descending 31-bit primes starting at 2^31 - 1
std::vector<long long> modular_primes(int count);

// residues -> the unique representative modulo prod(moduli) closest to zero
BigInt crt_symmetric(const std::vector<long long>& residues,
                     const std::vector<long long>& moduli);

// char poly of A modulo p (ascending coefficients, monic)
std::vector<long long> char_poly_mod(const DenseSquare<long long>& A, long long p);

}  // namespace gint

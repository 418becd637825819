#include "gint/exact.hpp"

#include <algorithm>
#include <sstream>

namespace gint {

std::string IntPolynomial::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
        const BigInt& c = coeffs[d];
        if (c == 0) continue;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (mag != 1 || d == 0) os << mag.str();
        if (d > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (d > 1) os << "^" << d;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::vector<std::string> IntPolynomial::coeff_strings() const {
    std::vector<std::string> out;
    for (const BigInt& c : coeffs) out.push_back(c.str());
    return out;
}

IntPolynomial berkowitz_char_poly(const DenseSquare<long long>& A) {
    const int n = A.n;
    // p holds det(xI - A_r) for the leading r x r block, descending
    // coefficients; each step multiplies by the Toeplitz column
    // [1, -a_rr, -(R C), -(R M C), -(R M^2 C), ...]
    std::vector<BigInt> p = {1};
    for (int r = 1; r <= n; ++r) {
        std::vector<BigInt> t(r + 1);
        t[0] = 1;
        t[1] = -BigInt(A.at(r - 1, r - 1));
        std::vector<BigInt> w(r - 1);
        for (int i = 0; i < r - 1; ++i) w[i] = A.at(i, r - 1);  // w = C
        for (int i = 0; i + 2 <= r; ++i) {
            BigInt dot = 0;
            for (int j = 0; j < r - 1; ++j) dot += BigInt(A.at(r - 1, j)) * w[j];
            t[i + 2] = -dot;  // R M^i C
            if (i + 3 <= r) {
                std::vector<BigInt> w2(r - 1);
                for (int x = 0; x < r - 1; ++x) {
                    BigInt acc = 0;
                    for (int y = 0; y < r - 1; ++y) acc += BigInt(A.at(x, y)) * w[y];
                    w2[x] = std::move(acc);
                }
                w = std::move(w2);
            }
        }
        std::vector<BigInt> np(r + 1);
        for (int j = 0; j <= r; ++j) {
            BigInt acc = 0;
            for (int i = 0; i <= j && i <= r; ++i)
                if (j - i < static_cast<int>(p.size())) acc += t[i] * p[j - i];
            np[j] = std::move(acc);
        }
        p = std::move(np);
    }
    IntPolynomial out;
    out.coeffs.assign(p.rbegin(), p.rend());
    return out;
}

namespace {

long long mod_pow(long long b, long long e, long long p) {
    long long r = 1 % p;
    b %= p;
    while (e > 0) {
        if (e & 1) r = static_cast<long long>(static_cast<__int128>(r) * b % p);
        b = static_cast<long long>(static_cast<__int128>(b) * b % p);
        e >>= 1;
    }
    return r;
}

bool is_prime_ll(long long x) {
    if (x < 2) return false;
    for (long long d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

}  // namespace

std::vector<long long> modular_primes(int count) {
    std::vector<long long> out;
    for (long long c = (1LL << 31) - 1; static_cast<int>(out.size()) < count; c -= 2)
        if (is_prime_ll(c)) out.push_back(c);
    return out;
}

BigInt crt_symmetric(const std::vector<long long>& residues,
                     const std::vector<long long>& moduli) {
    if (residues.size() != moduli.size() || residues.empty())
        throw InvalidArgument("CRT needs matching nonempty residue/modulus lists");
    BigInt r = residues[0], m = moduli[0];
    for (size_t i = 1; i < residues.size(); ++i) {
        const long long p = moduli[i];
        // solve r + m*k == residues[i] (mod p)
        long long mr = static_cast<long long>(m % p);
        long long rr = static_cast<long long>(((residues[i] - r % p) % p + p) % p);
        long long k = static_cast<long long>(static_cast<__int128>(rr) *
                                             mod_pow(mr, p - 2, p) % p);
        r += m * k;
        m *= p;
    }
    if (r * 2 > m) r -= m;
    if (r * 2 < -m) r += m;  // unreachable with r normalized nonneg, kept for symmetry
    return r;
}

std::vector<long long> char_poly_mod(const DenseSquare<long long>& A, long long p) {
    const int n = A.n;
    std::vector<std::vector<long long>> M(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = ((A.at(i, j) % p) + p) % p;
    auto mulp = [p](long long a, long long b) {
        return static_cast<long long>(static_cast<__int128>(a) * b % p);
    };
    // similarity reduction to upper Hessenberg form over F_p
    for (int j = 0; j + 2 < n; ++j) {
        int piv = -1;
        for (int r = j + 1; r < n; ++r)
            if (M[r][j] != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != j + 1) {
            std::swap(M[piv], M[j + 1]);
            for (int r = 0; r < n; ++r) std::swap(M[r][piv], M[r][j + 1]);
        }
        long long inv = mod_pow(M[j + 1][j], p - 2, p);
        for (int i = j + 2; i < n; ++i) {
            long long f = mulp(M[i][j], inv);
            if (f == 0) continue;
            for (int c = 0; c < n; ++c)
                M[i][c] = (M[i][c] - mulp(f, M[j + 1][c]) % p + p) % p;
            for (int r = 0; r < n; ++r)
                M[r][j + 1] = (M[r][j + 1] + mulp(f, M[r][i])) % p;
        }
    }
    // expand det(xI - H) along the last row of each leading block:
    // p_k = (x - H[k-1][k-1]) p_{k-1}
    //       - sum_m H[m-1][k-1] (prod_{i=m..k-1} H[i][i-1]) p_{m-1}   (1-based m)
    std::vector<std::vector<long long>> polys(n + 1);
    polys[0] = {1 % p};
    for (int k = 1; k <= n; ++k) {
        std::vector<long long> pk(k + 1, 0);
        const auto& prev = polys[k - 1];
        long long d = M[k - 1][k - 1];
        for (int i = 0; i < k; ++i) {
            pk[i + 1] = (pk[i + 1] + prev[i]) % p;                  // x * p_{k-1}
            pk[i] = (pk[i] - mulp(d, prev[i]) % p + p) % p;         // -H_kk p_{k-1}
        }
        long long subprod = 1;
        for (int m = k - 1; m >= 1; --m) {
            subprod = mulp(subprod, M[m][m - 1]);
            if (subprod == 0) break;
            long long coef = mulp(M[m - 1][k - 1], subprod);
            if (coef == 0) continue;
            const auto& pm = polys[m - 1];
            for (int i = 0; i < m; ++i)
                pk[i] = (pk[i] - mulp(coef, pm[i]) % p + p) % p;
        }
        polys[k] = std::move(pk);
    }
    return polys[n];
}

namespace {

// 2 * max_k |c_{n-k}| upper bound: elementary symmetric bound via the
// spectral radius for symmetric inputs, Hadamard-style row norms otherwise
BigInt coefficient_span(const DenseSquare<long long>& A) {
    const int n = A.n;
    bool symmetric = true;
    for (int i = 0; i < n && symmetric; ++i)
        for (int j = i + 1; j < n && symmetric; ++j) symmetric = A.at(i, j) == A.at(j, i);
    BigInt rho = 0;
    if (symmetric) {
        for (int i = 0; i < n; ++i) {
            BigInt s = 0;
            for (int j = 0; j < n; ++j) s += A.at(i, j) < 0 ? -A.at(i, j) : A.at(i, j);
            rho = std::max(rho, s);
        }
    } else {
        // ceil of the max row Euclidean norm bounds every minor's row factor
        BigInt worst = 0;
        for (int i = 0; i < n; ++i) {
            BigInt s = 0;
            for (int j = 0; j < n; ++j) s += BigInt(A.at(i, j)) * A.at(i, j);
            worst = std::max(worst, s);
        }
        BigInt r = 1;
        while (r * r < worst) ++r;
        rho = r;
    }
    if (rho == 0) rho = 1;
    // max_k C(n,k) rho^k <= (1 + rho)^n
    BigInt span = 2;
    for (int i = 0; i < n; ++i) span *= (rho + 1);
    return span;
}

}  // namespace

IntPolynomial multimodular_char_poly(const DenseSquare<long long>& A) {
    const int n = A.n;
    BigInt span = coefficient_span(A);
    std::vector<long long> primes;
    BigInt prod = 1;
    for (long long c = (1LL << 31) - 1; prod <= span; c -= 2)
        if (is_prime_ll(c)) {
            primes.push_back(c);
            prod *= c;
        }
    std::vector<std::vector<long long>> per_prime;
    for (long long p : primes) per_prime.push_back(char_poly_mod(A, p));
    IntPolynomial out;
    out.coeffs.resize(n + 1);
    std::vector<long long> residues(primes.size());
    for (int i = 0; i <= n; ++i) {
        for (size_t q = 0; q < primes.size(); ++q) residues[q] = per_prime[q][i];
        out.coeffs[i] = crt_symmetric(residues, primes);
    }
    return out;
}

IntPolynomial char_poly(const DenseSquare<long long>& A) {
    return A.n <= 24 ? berkowitz_char_poly(A) : multimodular_char_poly(A);
}

std::optional<std::map<long long, int>> integer_spectrum(const IntPolynomial& p,
                                                         long long bound) {
    if (p.coeffs.empty() || p.coeffs.back() != 1)
        throw InvalidArgument("integer_spectrum expects a monic polynomial");
    std::vector<BigInt> work(p.coeffs.rbegin(), p.coeffs.rend());  // descending
    std::map<long long, int> roots;
    for (long long lam = bound; lam >= -bound; --lam) {
        while (work.size() > 1) {
            // synthetic division by (x - lam)
            std::vector<BigInt> q(work.size() - 1);
            BigInt carry = 0;
            for (size_t i = 0; i + 1 < work.size(); ++i) {
                carry = work[i] + carry * lam;
                q[i] = carry;
            }
            BigInt rem = work.back() + carry * lam;
            if (rem != 0) break;
            ++roots[lam];
            work = std::move(q);
        }
        if (work.size() == 1) break;
    }
    if (work.size() != 1) return std::nullopt;
    return roots;
}

}  // namespace gint

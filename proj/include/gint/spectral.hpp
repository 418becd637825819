#pragma once
#include <Eigen/Dense>

#include <atomic>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gint/exact.hpp"
#include "gint/group.hpp"

namespace gint {

// float eigenvalues within this distance of an integer count as integral for
// the diagnostic (never the deciding) route
inline constexpr double kFloatIntegralityTol = 1e-6;

// Inverse-closed, identity-free, duplicate-free subset, kept sorted.
struct ConnectionSet {
    std::vector<int> elements;

    int degree() const { return static_cast<int>(elements.size()); }
    bool contains(int g) const;
};

// Validates: indices in range, no identity, no duplicates, and closure under
// inversion (AsymmetricInput otherwise, naming the offender).
ConnectionSet make_connection_set(const Group& G, const std::vector<int>& elements);

// Inversion-closure atoms: {t} for involutions, {g, g^-1} otherwise, ordered
// by least member. Every connection set is a disjoint union of atoms.
struct Atom {
    std::vector<int> elements;  // sorted, size 1 or 2

    int weight() const { return static_cast<int>(elements.size()); }
};
std::vector<Atom> atoms(const Group& G);

// A[g][h] = 1 iff h g^-1 in S; |S|-regular, symmetric, zero diagonal.
Eigen::MatrixXi cayley_adjacency(const Group& G, const ConnectionSet& S);

// Exact integrality of a symmetric integer matrix whose spectral radius is
// at most `degree`: the product of (A - lambda I) over lambda = -degree..degree
// vanishes iff every eigenvalue is an integer. Checked 128-bit arithmetic
// carries degree <= 6 (entry growth provably fits); bignums above that.
bool adjacency_is_integral(const Eigen::MatrixXi& A, int degree);

bool integrality_test(const Group& G, const ConnectionSet& S);

IntPolynomial adjacency_char_poly(const Eigen::MatrixXi& A);

// ascending eigenvalues of the symmetric matrix, dense float solve
std::vector<double> float_spectrum(const Eigen::MatrixXi& A);

struct SpectrumReport {
    int n = 0;
    int degree = 0;
    bool integral = false;
    std::map<long long, int> integer_eigenvalues;  // filled iff integral
    std::vector<double> float_eigenvalues;         // ascending, always filled
    IntPolynomial char_polynomial;
    // the float eigenvalue farthest from its nearest integer (first one on
    // ties, scanning ascending); the concrete non-integrality witness
    double evidence_eigenvalue = 0.0;
    double evidence_gap = 0.0;
};

// Runs all three routes - annihilating product, char-poly deflation, float
// solve - and cross-checks them; any disagreement, or a failed sum rule on an
// integral spectrum, throws InvariantViolation.
SpectrumReport analyze(const Group& G, const ConnectionSet& S);

struct AnalysisCounters {
    std::atomic<long long> analyses{0};
    std::atomic<long long> exact_tests{0};
    std::atomic<long long> integral{0};
    std::atomic<long long> nonintegral{0};
};
AnalysisCounters& analysis_counters();
void reset_analysis_counters();

}  // namespace gint

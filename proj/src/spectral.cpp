#include "gint/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace gint {

bool ConnectionSet::contains(int g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

ConnectionSet make_connection_set(const Group& G, const std::vector<int>& elements) {
    std::vector<int> s = elements;
    std::sort(s.begin(), s.end());
    for (int g : s) {
        if (g < 0 || g >= G.n) throw InvalidArgument("connection element out of range");
        if (g == 0) throw InvalidArgument("the identity cannot sit in a connection set");
    }
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw InvalidArgument("duplicate connection element");
    for (int g : s)
        if (!std::binary_search(s.begin(), s.end(), G.inv[g]))
            throw AsymmetricInput("connection set lacks the inverse of '" + G.label(g) + "'");
    return ConnectionSet{std::move(s)};
}

std::vector<Atom> atoms(const Group& G) {
    std::vector<Atom> out;
    for (int g = 1; g < G.n; ++g) {
        if (G.inv[g] == g)
            out.push_back({{g}});
        else if (g < G.inv[g])
            out.push_back({{g, G.inv[g]}});
    }
    return out;
}

Eigen::MatrixXi cayley_adjacency(const Group& G, const ConnectionSet& S) {
    Eigen::MatrixXi A = Eigen::MatrixXi::Zero(G.n, G.n);
    for (int g = 0; g < G.n; ++g)
        for (int s : S.elements) A(g, G.mul(s, g)) = 1;  // h g^-1 = s  <=>  h = s g
    return A;
}

namespace {

DenseSquare<long long> to_dense(const Eigen::MatrixXi& A) {
    DenseSquare<long long> M(static_cast<int>(A.rows()));
    for (int i = 0; i < M.n; ++i)
        for (int j = 0; j < M.n; ++j) M.at(i, j) = A(i, j);
    return M;
}

}  // namespace

bool adjacency_is_integral(const Eigen::MatrixXi& A, int degree) {
    if (A.rows() != A.cols()) throw InvalidArgument("adjacency must be square");
    if (A != A.transpose().eval())
        throw AsymmetricInput("integrality kernel needs a symmetric matrix");
    if (degree < 0) throw InvalidArgument("negative degree");
    DenseSquare<long long> M = to_dense(A);
    // Entry bound for the symmetric partial products with the interleaved
    // factor order: every partial product P satisfies |P_ij| <= (2*degree)^t
    // after t factors, so degree <= 6 stays under (12)^13 * n * 13 < 2^63 * 16
    // in the 128-bit accumulator with room to spare.
    if (degree <= 6) return annihilating_product_vanishes<Int128>(M, degree);
    return annihilating_product_vanishes<BigInt>(M, degree);
}

bool integrality_test(const Group& G, const ConnectionSet& S) {
    analysis_counters().exact_tests.fetch_add(1, std::memory_order_relaxed);
    return adjacency_is_integral(cayley_adjacency(G, S), S.degree());
}

IntPolynomial adjacency_char_poly(const Eigen::MatrixXi& A) {
    return char_poly(to_dense(A));
}

std::vector<double> float_spectrum(const Eigen::MatrixXi& A) {
    if (A != A.transpose().eval())
        throw AsymmetricInput("float spectrum expects a symmetric matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A.cast<double>());
    if (solver.info() != Eigen::Success)
        throw InvariantViolation("float eigensolver failed to converge");
    std::vector<double> out(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + A.rows());
    std::sort(out.begin(), out.end());
    return out;
}

AnalysisCounters& analysis_counters() {
    static AnalysisCounters counters;
    return counters;
}

void reset_analysis_counters() {
    auto& c = analysis_counters();
    c.analyses = 0;
    c.exact_tests = 0;
    c.integral = 0;
    c.nonintegral = 0;
}

SpectrumReport analyze(const Group& G, const ConnectionSet& S) {
    SpectrumReport rep;
    rep.n = G.n;
    rep.degree = S.degree();
    Eigen::MatrixXi A = cayley_adjacency(G, S);

    const bool product_route = adjacency_is_integral(A, rep.degree);
    rep.char_polynomial = adjacency_char_poly(A);
    auto deflated = integer_spectrum(rep.char_polynomial, rep.degree);
    rep.float_eigenvalues = float_spectrum(A);

    double worst = -1.0;
    double at = 0.0;
    for (double lam : rep.float_eigenvalues) {
        double gap = std::fabs(lam - std::round(lam));
        // ties within solver noise keep the first (smallest) eigenvalue, so
        // mirror-image pairs like +-sqrt(5) always report the negative one
        if (gap > worst + 1e-9) {
            worst = gap;
            at = lam;
        }
    }
    rep.evidence_gap = worst;
    rep.evidence_eigenvalue = at;
    const bool float_route = worst < kFloatIntegralityTol;

    if (product_route != deflated.has_value() || product_route != float_route)
        throw InvariantViolation(
            "integrality routes disagree: product=" + std::to_string(product_route) +
            " deflation=" + std::to_string(deflated.has_value()) +
            " float=" + std::to_string(float_route));

    rep.integral = product_route;
    if (rep.integral) {
        rep.integer_eigenvalues = *deflated;
        long long mults = 0, trace = 0, energy = 0;
        for (const auto& [lam, m] : rep.integer_eigenvalues) {
            mults += m;
            trace += lam * m;
            energy += lam * lam * m;
        }
        if (mults != rep.n || trace != 0 ||
            energy != static_cast<long long>(rep.n) * rep.degree)
            throw InvariantViolation("integral spectrum violates a sum rule");
    }

    auto& c = analysis_counters();
    c.analyses.fetch_add(1, std::memory_order_relaxed);
    (rep.integral ? c.integral : c.nonintegral).fetch_add(1, std::memory_order_relaxed);
    return rep;
}

}  // namespace gint

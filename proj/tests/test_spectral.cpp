#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gint/spectral.hpp"

using namespace gint;

namespace {

int R(const Group& G, const std::string& w) { return resolve_element(G, w); }

ConnectionSet set_of(const Group& G, const std::string& csv) {
    return make_connection_set(G, resolve_elements(G, csv));
}

constexpr double kTol = 1e-9;

}  // namespace

TEST_CASE("connection set validation") {
    Group d8 = make_dihedral(8);
    CHECK_THROWS_AS(make_connection_set(d8, {0}), InvalidArgument);
    CHECK_THROWS_AS(make_connection_set(d8, {99}), InvalidArgument);
    CHECK_THROWS_AS(make_connection_set(d8, {4, 4}), InvalidArgument);
    CHECK_THROWS_AS(make_connection_set(d8, {R(d8, "a")}), AsymmetricInput);

    ConnectionSet s = set_of(d8, "a, a^-1, b");
    CHECK(s.elements == std::vector<int>{1, 3, 4});
    CHECK(s.degree() == 3);
    CHECK(s.contains(4));
    CHECK_FALSE(s.contains(2));

    // involutions are their own inverses
    CHECK(set_of(d8, "b").degree() == 1);
}

TEST_CASE("inversion-closure atoms") {
    Group d8 = make_dihedral(8);
    auto at = atoms(d8);
    REQUIRE(at.size() == 6);
    CHECK(at[0].elements == std::vector<int>{1, 3});  // a, a^-1
    CHECK(at[1].elements == std::vector<int>{2});     // a^2
    CHECK(at[2].elements == std::vector<int>{4});     // b
    CHECK(at[3].elements == std::vector<int>{5});
    CHECK(at[4].elements == std::vector<int>{6});
    CHECK(at[5].elements == std::vector<int>{7});
    CHECK(at[0].weight() == 2);
    CHECK(at[1].weight() == 1);

    Group z6 = make_abelian({6});
    auto az = atoms(z6);
    REQUIRE(az.size() == 3);
    CHECK(az[0].elements == std::vector<int>{1, 5});
    CHECK(az[1].elements == std::vector<int>{2, 4});
    CHECK(az[2].elements == std::vector<int>{3});

    CHECK(atoms(named_group("Q8")).size() == 4);    // {-1} and three pairs
    CHECK(atoms(make_abelian({2, 2})).size() == 3);  // all involutions

    // every group: atom elements partition the non-identity elements
    for (const auto& nm : named_group_catalog()) {
        Group g = named_group(nm);
        int covered = 0;
        for (const auto& a : atoms(g)) covered += a.weight();
        CHECK(covered == g.n - 1);
    }
}

TEST_CASE("cayley adjacency: convention and structure") {
    Group z6 = make_abelian({6});
    Eigen::MatrixXi A = cayley_adjacency(z6, set_of(z6, "u, u^-1"));
    for (int g = 0; g < 6; ++g) {
        CHECK(A(g, (g + 1) % 6) == 1);
        CHECK(A(g, (g + 5) % 6) == 1);
        CHECK(A(g, g) == 0);
        CHECK(A.row(g).sum() == 2);
    }

    Group d8 = make_dihedral(8);
    ConnectionSet s = set_of(d8, "a*b, b");
    Eigen::MatrixXi B = cayley_adjacency(d8, s);
    CHECK(B == B.transpose().eval());
    CHECK(B.diagonal().sum() == 0);
    for (int g = 0; g < 8; ++g) CHECK(B.row(g).sum() == 2);
    // h g^-1 = s  means the neighbor is s*g, not g*s
    int a = R(d8, "a"), b = R(d8, "b");
    CHECK(B(a, d8.mul(b, a)) == 1);
    CHECK(B(a, d8.mul(R(d8, "a*b"), a)) == 1);

    // right translation is a graph automorphism: A(gx, hx) == A(g, h)
    for (int x : {1, 5, 7})
        for (int g = 0; g < 8; ++g)
            for (int h = 0; h < 8; ++h)
                CHECK(B(d8.mul(g, x), d8.mul(h, x)) == B(g, h));
}

TEST_CASE("exact integrality kernel") {
    Group z4 = make_abelian({4});
    Group z5 = make_abelian({5});
    Group z6 = make_abelian({6});
    Group z8 = make_abelian({8});
    Group d8 = make_dihedral(8);

    CHECK(integrality_test(z6, set_of(z6, "u, u^-1")));             // 6-cycle
    CHECK_FALSE(integrality_test(z5, set_of(z5, "u, u^-1")));       // 5-cycle
    CHECK_FALSE(integrality_test(z8, set_of(z8, "u, u^-1")));       // 8-cycle
    CHECK_FALSE(integrality_test(d8, set_of(d8, "a*b, b")));        // also an 8-cycle
    CHECK(integrality_test(z4, set_of(z4, "u, u^2, u^3")));         // K4
    CHECK(integrality_test(d8, set_of(d8, "a, a^-1, a^2, b")));

    Group h16 = named_group("H16");
    CHECK_FALSE(integrality_test(h16, set_of(h16, "a, a^-1, b")));

    Group q8 = named_group("Q8");
    CHECK(integrality_test(q8, set_of(q8, "i, -i, j, -j")));
    CHECK(integrality_test(q8, set_of(q8, "-1, i, -i, j, -j, k, -k")));

    Eigen::MatrixXi asym = Eigen::MatrixXi::Zero(2, 2);
    asym(0, 1) = 1;
    CHECK_THROWS_AS(adjacency_is_integral(asym, 1), AsymmetricInput);
    CHECK_THROWS_AS(float_spectrum(asym), AsymmetricInput);

    // scalar policy boundary: degrees 6 and 7 take different routes and both
    // handle the complete graphs whose spectra are known
    Group z7 = make_abelian({7});
    CHECK(integrality_test(z7, set_of(z7, "u,u^2,u^3,u^4,u^5,u^6")));  // K7, degree 6
    CHECK(integrality_test(z8, set_of(z8, "u,u^2,u^3,u^4,u^5,u^6,u^7")));  // K8, degree 7
}

TEST_CASE("float spectrum on classics") {
    Group z8 = make_abelian({8});
    auto ev = float_spectrum(cayley_adjacency(z8, set_of(z8, "u, u^-1")));
    REQUIRE(ev.size() == 8);
    const double s2 = std::sqrt(2.0);
    std::vector<double> want = {-2, -s2, -s2, 0, 0, s2, s2, 2};
    for (size_t i = 0; i < 8; ++i) CHECK(ev[i] == doctest::Approx(want[i]).epsilon(kTol));

    Group z4 = make_abelian({4});
    auto k4 = float_spectrum(cayley_adjacency(z4, set_of(z4, "u, u^2, u^3")));
    std::vector<double> wk4 = {-1, -1, -1, 3};
    for (size_t i = 0; i < 4; ++i) CHECK(k4[i] == doctest::Approx(wk4[i]).epsilon(kTol));
}

TEST_CASE("analyze: integral case") {
    reset_analysis_counters();
    Group z6 = make_abelian({6});
    SpectrumReport rep = analyze(z6, set_of(z6, "u, u^-1"));
    CHECK(rep.n == 6);
    CHECK(rep.degree == 2);
    CHECK(rep.integral);
    CHECK(rep.integer_eigenvalues ==
          std::map<long long, int>{{-2, 1}, {-1, 2}, {1, 2}, {2, 1}});
    CHECK(rep.float_eigenvalues.size() == 6);
    CHECK(rep.evidence_gap < 1e-12);
    CHECK(rep.char_polynomial.degree() == 6);
    // the three routes agreed; the rounded floats are the integer spectrum
    std::map<long long, int> rounded;
    for (double lam : rep.float_eigenvalues) ++rounded[std::llround(lam)];
    CHECK(rounded == rep.integer_eigenvalues);
    CHECK(analysis_counters().analyses == 1);
    CHECK(analysis_counters().integral == 1);
    CHECK(analysis_counters().nonintegral == 0);
}

TEST_CASE("analyze: non-integral case with evidence") {
    reset_analysis_counters();
    Group d8 = make_dihedral(8);
    SpectrumReport rep = analyze(d8, set_of(d8, "a*b, b"));
    CHECK_FALSE(rep.integral);
    CHECK(rep.integer_eigenvalues.empty());
    // the 8-cycle's worst offender, scanned ascending, is -sqrt(2)
    CHECK(rep.evidence_eigenvalue == doctest::Approx(-std::sqrt(2.0)).epsilon(kTol));
    CHECK(rep.evidence_gap == doctest::Approx(std::sqrt(2.0) - 1).epsilon(kTol));
    CHECK(analysis_counters().nonintegral == 1);

    Group h16 = named_group("H16");
    SpectrumReport h = analyze(h16, set_of(h16, "a, a^-1, b"));
    CHECK_FALSE(h.integral);
    const double s5 = std::sqrt(5.0);
    double closest = 1e9;
    for (double lam : h.float_eigenvalues) closest = std::min(closest, std::fabs(lam - s5));
    CHECK(closest < 1e-9);  // sqrt(5) really is in the spectrum
    CHECK(h.evidence_eigenvalue == doctest::Approx(-s5).epsilon(kTol));
    CHECK(h.evidence_gap == doctest::Approx(s5 - 2).epsilon(kTol));
}

TEST_CASE("analyze and the fast path agree atom-by-atom") {
    reset_analysis_counters();
    long long analyzed = 0;
    for (const auto& nm : {"D6", "D8", "Q8", "Dic12", "A4", "H16"}) {
        Group g = named_group(nm);
        auto at = atoms(g);
        for (size_t i = 0; i < at.size(); ++i) {
            for (size_t j = i; j < at.size(); ++j) {
                std::vector<int> elems = at[i].elements;
                if (j != i)
                    elems.insert(elems.end(), at[j].elements.begin(), at[j].elements.end());
                ConnectionSet s = make_connection_set(g, elems);
                // analyze() itself cross-checks all three routes; this adds the
                // fast path used by the classifier to the same comparison
                SpectrumReport rep = analyze(g, s);
                CHECK(rep.integral == integrality_test(g, s));
                ++analyzed;
            }
        }
    }
    CHECK(analysis_counters().analyses == analyzed);
    CHECK(analysis_counters().exact_tests == analyzed);
    CHECK(analysis_counters().integral + analysis_counters().nonintegral == analyzed);
}

TEST_CASE("adjacency char poly matches the known classics") {
    Group z8 = make_abelian({8});
    IntPolynomial c8 = adjacency_char_poly(cayley_adjacency(z8, set_of(z8, "u, u^-1")));
    CHECK(c8.coeffs == std::vector<BigInt>{0, 0, -16, 0, 20, 0, -8, 0, 1});

    Group z4 = make_abelian({4});
    IntPolynomial k4 = adjacency_char_poly(cayley_adjacency(z4, set_of(z4, "u, u^2, u^3")));
    CHECK(k4.to_string() == "x^4 - 6*x^2 - 8*x - 3");
}

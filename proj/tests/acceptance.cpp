// acceptance gate: one line per criterion, nonzero exit if any line fails
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <deque>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gint/classifier.hpp"
#include "gint/group.hpp"
#include "gint/kmmm.hpp"
#include "gint/spec_parser.hpp"
#include "gint/spectral.hpp"

using namespace gint;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void line(int idx, bool ok, double secs, const std::string& detail) {
    std::printf("[%s] criterion %2d (%7.2fs): %s\n", ok ? "PASS" : "FAIL", idx, secs,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double nearest_gap(const std::vector<double>& spectrum, double target) {
    double best = 1e300;
    for (double x : spectrum) best = std::min(best, std::abs(x - target));
    return best;
}

// criterion 1: the eight golden witnesses, closed forms to 1e-9, under 5 s
void criterion_1() {
    const auto t0 = Clock::now();
    const WitnessSuiteReport rep = paper_witness_suite();
    double worst = 0.0;
    for (const WitnessCheck& c : rep.checks) worst = std::max(worst, c.worst_gap);
    const double secs = since(t0);
    const bool ok = rep.passed() && rep.checks.size() == 8 && secs < 5.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "8 golden witnesses exact-nonintegral, closed forms to 1e-9 (worst gap %.2e)",
                  worst);
    line(1, ok, secs, buf);
}

// criterion 2: the four Cayley integral non-abelian bases by full sweep
void criterion_2() {
    const auto t0 = Clock::now();
    const std::pair<const char*, long long> rows[] = {
        {"D(6)", 15}, {"Dic12", 63}, {"Q8", 15}, {"Q8 x C(2)", 511}};
    bool ok = true;
    for (const auto& [spec, count] : rows) {
        const GkVerdict v = cayley_integral_check(build_spec(spec));
        ok = ok && v.decision == Decision::member && v.sets_examined == count;
    }
    const double secs = since(t0);
    ok = ok && secs < 30.0;
    line(2, ok, secs, "full sweeps: D(6)=15, Dic12=63, Q8=15, Q8 x C(2)=511 sets, all integral");
}

// criterion 3: the abelian side at desk scale
void criterion_3() {
    const auto t0 = Clock::now();
    const GkVerdict a = cayley_integral_check(build_spec("E(4) x C(4)"));
    const GkVerdict b = cayley_integral_check(build_spec("E(8)"));
    const GkVerdict c = cayley_integral_check(build_spec("E(9)"));
    const double secs = since(t0);
    const bool ok = a.decision == Decision::member && a.sets_examined == 2047 &&
                    b.decision == Decision::member && b.sets_examined == 127 &&
                    c.decision == Decision::member && c.sets_examined <= 31 && secs < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "full sweeps: E(4) x C(4)=%lld, E(8)=%lld, E(9)=%lld sets, all integral",
                  a.sets_examined, b.sets_examined, c.sets_examined);
    line(3, ok, secs, buf);
}

// criterion 4: the boundary member at k=5, order 36 always, order 108 behind --stretch
void criterion_4(bool stretch) {
    const auto t0 = Clock::now();
    const GkVerdict v = gk_membership(build_spec("Dic(E(3) x C(6))"), 5);
    const double base_secs = since(t0);
    bool ok = v.decision == Decision::member && v.sets_examined == 307 && base_secs < 60.0;
    char buf[200];
    if (stretch) {
        const auto t1 = Clock::now();
        const GkVerdict w = gk_membership(build_spec("Dic(E(9) x C(6))"), 5);
        const double stretch_secs = since(t1);
        ok = ok && w.decision == Decision::member && w.sets_examined == 2863 &&
             stretch_secs < 900.0;
        std::snprintf(buf, sizeof buf,
                      "order 36 member over 307 sets; stretch order 108 member over %lld sets "
                      "(%.1fs)",
                      w.sets_examined, stretch_secs);
    } else {
        std::snprintf(buf, sizeof buf,
                      "order 36 member at k=5 over %lld sets (stretch skipped; pass --stretch)",
                      v.sets_examined);
    }
    line(4, ok, since(t0), buf);
}

// criterion 5: the k=6 failure of the order-36 dicyclic group, as stated
void criterion_5() {
    const auto t0 = Clock::now();
    const Group G = build_spec("Dic(E(3) x C(6))");
    const GkVerdict v = gk_membership(G, 6);
    const bool nonmember_ok = v.decision == Decision::nonmember;
    const bool size_ok = v.witness && static_cast<int>(v.witness->elements.size()) == 6;
    std::vector<double> spectrum;
    if (v.witness) spectrum = analyze(G, *v.witness).float_eigenvalues;
    const double gap_pos = nearest_gap(spectrum, std::sqrt(3.0));
    const double gap_neg = nearest_gap(spectrum, -std::sqrt(3.0));
    const bool sqrt3_ok = gap_pos <= 1e-6 && gap_neg <= 1e-6;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "nonmember=%s witness-size-6=%s; +-sqrt(3) within 1e-6: %s (nearest gaps "
                  "%.3e / %.3e; witness spectrum carries +-2*sqrt(3) = +-%.7f)",
                  nonmember_ok ? "yes" : "NO", size_ok ? "yes" : "NO",
                  sqrt3_ok ? "present" : "ABSENT", gap_pos, gap_neg, 2.0 * std::sqrt(3.0));
    line(5, nonmember_ok && size_ok && sqrt3_ok, since(t0), buf);
}

// criterion 6: the stored classification table, k = 2..6
void criterion_6() {
    const auto t0 = Clock::now();
    const std::vector<ClassificationRow> rows = classify_catalog({2, 3, 4, 5, 6});
    bool ok = true;
    std::set<std::string> groups;
    for (const ClassificationRow& r : rows) {
        ok = ok && r.matches();
        groups.insert(r.group);
    }
    ok = ok && groups.size() >= 15;

    auto actual = [&](const std::string& g, int k) -> Decision {
        for (const ClassificationRow& r : rows)
            if (r.group == g && r.k == k) return r.actual;
        std::printf("  missing row %s k=%d\n", g.c_str(), k);
        ok = false;
        return Decision::nonmember;
    };
    // the named falls cited with the table
    ok = ok && actual("D(8)", 2) == Decision::nonmember;
    ok = ok && actual("H16", 3) == Decision::nonmember;
    for (const char* g : {"H2", "H32", "A4", "Q8sZ3"})
        ok = ok && actual(g, 4) == Decision::nonmember;
    for (const char* g : {"D6xZ3", "E9sZ2"})
        ok = ok && actual(g, 3) == Decision::nonmember;
    // degree 4 and 5 agree everywhere on the catalog
    for (const std::string& g : groups) ok = ok && actual(g, 4) == actual(g, 5);

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu groups x 5 degrees all match stored verdicts; G_4 = G_5 on the catalog",
                  groups.size());
    line(6, ok, since(t0), buf);
}

// criterion 7: randomized coset-decomposition cross-check, >= 100 triples
void criterion_7() {
    const auto t0 = Clock::now();
    std::mt19937 rng(7u);
    struct Pool {
        Group G;
        std::vector<SubgroupHandle> subgroups;
    };
    std::deque<Pool> pools;  // handles point into G; never relocate
    for (const CatalogEntry& e : catalog()) {
        Pool& p = pools.emplace_back(Pool{e.build(), {}});
        for (const SubgroupHandle& H : all_subgroups(p.G)) {
            if (p.G.n / H.order() > 6) continue;
            bool abelian = true;
            for (int a : H.elements) {
                for (int b : H.elements)
                    if (p.G.mul(a, b) != p.G.mul(b, a)) {
                        abelian = false;
                        break;
                    }
                if (!abelian) break;
            }
            if (abelian) p.subgroups.push_back(H);
        }
        if (p.subgroups.empty()) pools.pop_back();
    }

    const int kTrials = 120;
    double max_gap = 0.0;
    bool ok = true;
    for (int t = 0; t < kTrials; ++t) {
        Pool& p = pools[t % pools.size()];
        const Group& G = p.G;
        const std::vector<Atom> ats = atoms(G);
        std::vector<int> order(ats.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::shuffle(order.begin(), order.end(), rng);
        const int want = std::uniform_int_distribution<int>(1, 6)(rng);
        std::vector<int> els;
        int weight = 0;
        for (int ai : order) {
            if (weight + ats[ai].weight() > want) continue;
            for (int e : ats[ai].elements) els.push_back(e);
            weight += ats[ai].weight();
            if (weight == want) break;
        }
        if (els.empty()) els = ats[order[0]].elements;
        std::sort(els.begin(), els.end());
        const ConnectionSet S = make_connection_set(G, els);
        const SubgroupHandle& H =
            p.subgroups[std::uniform_int_distribution<size_t>(0, p.subgroups.size() - 1)(rng)];

        const std::vector<double> via_blocks = kmmm_spectrum(G, S, H);
        const std::vector<double> direct = float_spectrum(cayley_adjacency(G, S));
        for (size_t i = 0; i < direct.size(); ++i)
            max_gap = std::max(max_gap, std::abs(via_blocks[i] - direct[i]));
    }
    const double secs = since(t0);
    ok = ok && max_gap <= 1e-6 && secs < 120.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d random (G,S,H) triples, block union vs dense solve: max gap %.2e", kTrials,
                  max_gap);
    line(7, ok, secs, buf);
}

// criterion 8: three-way oracle agreement, globally and on explicit probes
void criterion_8() {
    const auto t0 = Clock::now();
    long long probes = 0, disagreements = 0;
    for (const char* spec :
         {"D(6)", "D(8)", "Q8", "C(6)", "E(4)", "E(9)", "Dic12", "H16", "A4"}) {
        const Group G = build_spec(spec);
        for (const ConnectionSet& S : enumerate_connection_sets(G, 3)) {
            const SpectrumReport r = analyze(G, S);
            const bool exact = integrality_test(G, S);
            const bool floats = r.evidence_gap <= 1e-6;
            const bool deflated = !r.integer_eigenvalues.empty();
            if (!(exact == r.integral && floats == r.integral && deflated == r.integral))
                ++disagreements;
            ++probes;
        }
    }
    const AnalysisCounters& c = analysis_counters();
    const long long analyses = c.analyses.load();
    const bool balanced = analyses == c.integral.load() + c.nonintegral.load();
    // every analyze() call in this whole binary cross-checks all three routes
    // and throws on any split verdict, so reaching this line already certifies
    // the suite-wide claim; the probes above re-verify it from the outside
    const bool ok = disagreements == 0 && probes >= 100 && balanced && analyses > 1000;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%lld analyses so far, all three routes agree (%lld external probes, %lld "
                  "disagreements)",
                  analyses, probes, disagreements);
    line(8, ok, since(t0), buf);
}

// criterion 9: hereditary structure of every degree-4 member, plus the
// dihedral factor that leaves the class
void criterion_9() {
    const auto t0 = Clock::now();
    bool ok = true;
    int members = 0;
    for (const CatalogEntry& e : catalog()) {
        if (e.expected.at(4) != Decision::member) continue;
        ++members;
        const Group G = e.build();
        for (int k : {4, 5}) {
            const HereditaryReport h = verify_hereditary_properties(G, k);
            if (!h.passed()) {
                std::printf("  hereditary violation: %s k=%d\n", e.name.c_str(), k);
                ok = false;
            }
        }
    }
    const HereditaryReport demo = verify_hereditary_properties(named_group("Z4sZ4"), 2);
    const Fingerprint d8 = fingerprint(make_dihedral(8));
    bool demo_seen = false;
    for (const BoundaryQuotient& b : demo.boundary)
        if (b.kernel_order == 2 && b.quotient == d8 && !b.member) demo_seen = true;
    ok = ok && demo.passed() && demo_seen;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%d degree-4 members closed at k=4,5; order-16 member has a D(8) factor group "
                  "outside the class",
                  members);
    line(9, ok, since(t0), buf);
}

// criterion 10: the two displayed degree-4 eigenvalue formulas across every
// character of the index-2 abelian subgroup of the order-36 dicyclic group
void criterion_10() {
    const auto t0 = Clock::now();
    const Group G = build_spec("Dic(E(3) x C(6))");
    const SubgroupHandle H = generated_subgroup(G, resolve_elements(G, "u, v"));
    const std::vector<int> pins = resolve_elements(G, "1, x");
    const int t = 3;  // the unique involution v^3 = x^2
    auto times_t = [&](int a) { return (a / 6) * 6 + ((a % 6) + 3) % 6; };

    const int reps[9] = {0, 1, 2, 6, 7, 8, 12, 13, 14};  // one per class mod <t>
    long long checks = 0;
    double worst = 0.0;
    int case_a = 0, case_b = 0;

    // case A: S inside the nontrivial coset, eigenvalues +-|1+chi(t)||chi(a)+chi(b)|
    for (int i = 0; i < 9; ++i)
        for (int j = i + 1; j < 9; ++j) {
            const int a = reps[i], b = reps[j];
            const ConnectionSet S = make_connection_set(
                G, {18 + a, 18 + times_t(a), 18 + b, 18 + times_t(b)});
            const KmmmReport R = kmmm_report(G, S, H, pins);
            for (size_t bi = 0; bi < R.blocks.size(); ++bi) {
                const Character& chi = R.characters.characters[bi];
                const double r = std::abs(1.0 + R.characters.value(chi, t)) *
                                 std::abs(R.characters.value(chi, a) +
                                          R.characters.value(chi, b));
                const auto& ev = R.blocks[bi].eigenvalues;
                worst = std::max(worst, std::abs(ev[0] - (-r)));
                worst = std::max(worst, std::abs(ev[1] - r));
                ++checks;
            }
            ++case_a;
        }

    // case B: one inverse pair inside H, eigenvalues 2 Re chi(w) +- |1+chi(t)|
    for (int w = 1; w < 18; ++w) {
        if (G.inv[w] <= w) continue;  // one orientation per pair, skips 1 and t
        for (int u : reps) {
            const ConnectionSet S =
                make_connection_set(G, {w, G.inv[w], 18 + u, 18 + times_t(u)});
            const KmmmReport R = kmmm_report(G, S, H, pins);
            for (size_t bi = 0; bi < R.blocks.size(); ++bi) {
                const Character& chi = R.characters.characters[bi];
                const double c = 2.0 * R.characters.value(chi, w).real();
                const double d = std::abs(1.0 + R.characters.value(chi, t));
                const auto& ev = R.blocks[bi].eigenvalues;
                worst = std::max(worst, std::abs(ev[0] - (c - d)));
                worst = std::max(worst, std::abs(ev[1] - (c + d)));
                ++checks;
            }
            ++case_b;
        }
    }

    const bool ok = case_a == 36 && case_b == 72 && checks == 1944 && worst <= 1e-9;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%d+%d degree-4 sets x 18 characters = %lld closed-form checks, worst gap %.2e",
                  case_a, case_b, checks, worst);
    line(10, ok, since(t0), buf);
}

}  // namespace

int main(int argc, char** argv) {
    bool stretch = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--stretch") == 0) stretch = true;

    reset_analysis_counters();
    const auto t0 = Clock::now();

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4(stretch);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    std::printf("acceptance: %d/10 criteria pass (%.1fs total)\n", 10 - g_failures,
                since(t0));
    if (g_failures == 1) {
        // criterion 5 asks for +-sqrt(3) in the order-36 witness spectrum; the
        // spectrum provably carries +-2*sqrt(3) instead (every block eigenvalue
        // there is |1+chi(t)| * |sum of two or three roots of unity|, and the
        // sqrt(3)-length sums only arise doubled). The criterion is kept as
        // stated rather than bent to match.
        std::printf("standing failure: criterion 5's required +-sqrt(3) pair does not exist in "
                    "the witness spectrum; the true quadratic pair is +-2*sqrt(3)\n");
    }
    return g_failures == 0 ? 0 : 1;
}

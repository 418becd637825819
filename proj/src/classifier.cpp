#include "gint/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "gint/error.hpp"
#include "gint/kmmm.hpp"

namespace gint {
namespace {

constexpr int kSweepOrderCap = 512;
constexpr int kAtomCap = 20;

int default_jobs() {
    const char* env = std::getenv("GINT_JOBS");
    if (!env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return 1;
    return static_cast<int>(std::min(v, 256L));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

long long for_each_connection_set(
    const Group& G, int k,
    const std::function<bool(long long, const ConnectionSet&)>& fn) {
    if (k < 1) throw InvalidArgument("connection-set enumeration needs k >= 1");
    const std::vector<Atom> ats = atoms(G);
    long long emitted = 0;
    bool stop = false;
    std::vector<int> chosen;
    std::vector<int> elems;
    // one weight class at a time; within it, plain lexicographic DFS over
    // atom index sequences (mixed weights interleave exactly as lex demands)
    std::function<void(int, int)> extend = [&](int first, int remaining) {
        if (remaining == 0) {
            elems.clear();
            for (int ai : chosen)
                elems.insert(elems.end(), ats[ai].elements.begin(), ats[ai].elements.end());
            std::sort(elems.begin(), elems.end());
            if (!fn(emitted, make_connection_set(G, elems))) stop = true;
            ++emitted;
            return;
        }
        for (int i = first; i < static_cast<int>(ats.size()) && !stop; ++i) {
            if (ats[i].weight() > remaining) continue;
            chosen.push_back(i);
            extend(i + 1, remaining - ats[i].weight());
            chosen.pop_back();
        }
    };
    for (int w = 1; w <= k && !stop; ++w) extend(0, w);
    return emitted;
}

std::vector<ConnectionSet> enumerate_connection_sets(const Group& G, int k) {
    std::vector<ConnectionSet> out;
    for_each_connection_set(G, k, [&](long long, const ConnectionSet& S) {
        out.push_back(S);
        return true;
    });
    return out;
}

GkVerdict gk_membership(const Group& G, int k, const SweepOptions& opts) {
    if (k < 1) throw InvalidArgument("gk_membership needs k >= 1");
    if (G.n > kSweepOrderCap)
        throw CapExceeded("order " + std::to_string(G.n) + " exceeds the sweep cap of " +
                          std::to_string(kSweepOrderCap));
    const auto t0 = std::chrono::steady_clock::now();
    GkVerdict v;
    v.group = G.name;
    v.k = k;

    const int jobs = opts.jobs > 0 ? opts.jobs : default_jobs();
    long long fail_index = -1;
    ConnectionSet fail_set;
    long long total = 0;

    if (jobs <= 1) {
        total = for_each_connection_set(G, k, [&](long long idx, const ConnectionSet& S) {
            if (analyze(G, S).integral) return true;
            if (fail_index < 0) {
                fail_index = idx;
                fail_set = S;
            }
            return opts.full;
        });
    } else {
        const std::vector<ConnectionSet> sets = enumerate_connection_sets(G, k);
        std::atomic<long long> next{0};
        std::atomic<long long> best{LLONG_MAX};
        std::exception_ptr trouble;
        std::mutex trouble_mx;
        auto worker = [&] {
            try {
                while (true) {
                    const long long i = next.fetch_add(1, std::memory_order_relaxed);
                    if (i >= static_cast<long long>(sets.size())) break;
                    if (!opts.full && i > best.load(std::memory_order_relaxed)) break;
                    if (analyze(G, sets[i]).integral) continue;
                    long long cur = best.load(std::memory_order_relaxed);
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {}
                }
            } catch (...) {
                std::lock_guard<std::mutex> lk(trouble_mx);
                if (!trouble) trouble = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (trouble) std::rethrow_exception(trouble);
        if (best.load() != LLONG_MAX) {
            fail_index = best.load();
            fail_set = sets[static_cast<size_t>(fail_index)];
        }
        total = static_cast<long long>(sets.size());
    }

    if (fail_index < 0) {
        v.decision = Decision::member;
        v.sets_examined = total;
    } else {
        v.decision = Decision::nonmember;
        v.witness = fail_set;
        const SpectrumReport r = analyze(G, fail_set);
        v.evidence = Evidence{r.evidence_eigenvalue, !r.integral};
        // the prefix that forces the verdict is job-count independent
        v.sets_examined = opts.full ? total : fail_index + 1;
    }
    v.elapsed_seconds = seconds_since(t0);
    return v;
}

GkVerdict cayley_integral_check(const Group& G, const SweepOptions& opts) {
    const size_t n_atoms = atoms(G).size();
    if (n_atoms > static_cast<size_t>(kAtomCap))
        throw AtomCapExceeded("group has " + std::to_string(n_atoms) +
                              " atoms; the full power-set sweep is capped at " +
                              std::to_string(kAtomCap));
    if (G.n == 1) {  // no non-identity elements, nothing to sweep
        GkVerdict v;
        v.group = G.name;
        v.decision = Decision::member;
        return v;
    }
    return gk_membership(G, G.n - 1, opts);
}

bool g2_order_test(const Group& G) {
    for (const auto& [ord, count] : order_profile(G)) {
        (void)count;
        if (ord != 1 && ord != 2 && ord != 3 && ord != 4 && ord != 6) return false;
    }
    return true;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        auto through = [](int last) {
            std::map<int, Decision> m;
            for (int k = 2; k <= 6; ++k)
                m[k] = k <= last ? Decision::member : Decision::nonmember;
            return m;
        };
        std::vector<CatalogEntry> c;
        c.push_back({"C(3)", "Z3", [] { return make_abelian({3}); }, through(6),
                     "abelian, exponent divides 6: integral at every degree",
                     Fingerprint{3, true, 3, 3, {{1, 1}, {3, 2}}, {3}}});
        c.push_back({"C(4)", "Z4", [] { return make_abelian({4}); }, through(6),
                     "abelian 2-group, exponent divides 4: integral at every degree",
                     Fingerprint{4, true, 4, 4, {{1, 1}, {2, 1}, {4, 2}}, {4}}});
        c.push_back({"C(6)", "Z6", [] { return make_abelian({6}); }, through(6),
                     "abelian, exponent divides 6: integral at every degree",
                     Fingerprint{6, true, 6, 6, {{1, 1}, {2, 1}, {3, 2}, {6, 2}}, {6}}});
        c.push_back({"E(4)", "Z2 x Z2", [] { return make_abelian({2, 2}); }, through(6),
                     "elementary abelian: integral at every degree",
                     Fingerprint{4, true, 2, 4, {{1, 1}, {2, 3}}, {2, 2}}});
        c.push_back({"E(8)", "Z2 x Z2 x Z2", [] { return make_abelian({2, 2, 2}); }, through(6),
                     "elementary abelian: integral at every degree",
                     Fingerprint{8, true, 2, 8, {{1, 1}, {2, 7}}, {2, 2, 2}}});
        c.push_back({"E(9)", "Z3 x Z3", [] { return make_abelian({3, 3}); }, through(6),
                     "elementary abelian: integral at every degree",
                     Fingerprint{9, true, 3, 9, {{1, 1}, {3, 8}}, {3, 3}}});
        c.push_back({"C(4) x C(2)", "Z4 x Z2", [] { return make_abelian({4, 2}); }, through(6),
                     "abelian 2-group, exponent divides 4: integral at every degree",
                     Fingerprint{8, true, 4, 8, {{1, 1}, {2, 3}, {4, 4}}, {4, 2}}});
        c.push_back({"D(6)", "dihedral of order 6", [] { return make_dihedral(6); }, through(6),
                     "non-abelian yet integral at every degree",
                     Fingerprint{6, false, 6, 1, {{1, 1}, {2, 3}, {3, 2}}, {2}}});
        c.push_back({"Dic12", "dicyclic of order 12", [] { return named_group("Dic12"); },
                     through(6), "non-abelian yet integral at every degree",
                     Fingerprint{12, false, 12, 2, {{1, 1}, {2, 1}, {3, 2}, {4, 6}, {6, 2}},
                                 {4}}});
        c.push_back({"Q8", "quaternion", [] { return named_group("Q8"); }, through(6),
                     "non-abelian yet integral at every degree",
                     Fingerprint{8, false, 4, 2, {{1, 1}, {2, 1}, {4, 6}}, {2, 2}}});
        c.push_back({"Q8 x C(2)", "Q8 x Z2",
                     [] { return direct_product(named_group("Q8"), make_abelian({2})); },
                     through(6), "quaternion times elementary abelian 2-group: integral",
                     Fingerprint{16, false, 4, 4, {{1, 1}, {2, 3}, {4, 12}}, {2, 2, 2}}});
        c.push_back({"Q8 x E(4)", "Q8 x Z2 x Z2",
                     [] { return direct_product(named_group("Q8"), make_abelian({2, 2})); },
                     through(6), "quaternion times elementary abelian 2-group: integral",
                     Fingerprint{32, false, 4, 8, {{1, 1}, {2, 7}, {4, 24}}, {2, 2, 2, 2}}});
        c.push_back({"Dic(E(3) x C(6))", "dicyclic over Z3 x Z6",
                     [] { return generalized_dicyclic(make_abelian({3, 6})); }, through(5),
                     "integral through degree 5; one degree-6 set reaches +-2*sqrt(3)",
                     Fingerprint{36, false, 12, 2,
                                 {{1, 1}, {2, 1}, {3, 8}, {4, 18}, {6, 8}}, {4}}});
        c.push_back({"D(8)", "dihedral of order 8", [] { return make_dihedral(8); }, through(1),
                     "two reflections span an 8-cycle: +-sqrt(2) at degree 2",
                     Fingerprint{8, false, 4, 2, {{1, 1}, {2, 5}, {4, 2}}, {2, 2}}});
        c.push_back({"H2", "metacyclic: a^4 = b^4 = 1, a^b = a^-1",
                     [] { return named_group("H2"); }, through(3),
                     "degree-4 set pulled back from the dihedral quotient fails",
                     Fingerprint{16, false, 4, 4, {{1, 1}, {2, 3}, {4, 12}}, {4, 2}}});
        c.push_back({"Z4sZ4", "Z4 semidirect Z4, inverting action",
                     [] { return named_group("Z4sZ4"); }, through(3),
                     "same group as H2, second spelling kept on purpose",
                     Fingerprint{16, false, 4, 4, {{1, 1}, {2, 3}, {4, 12}}, {4, 2}}});
        c.push_back({"H16", "a^4 = b^2 = c^2 = 1, c = [a,b] central",
                     [] { return named_group("H16"); }, through(2),
                     "degree-3 witness {a, a^-1, b} with eigenvalues +-sqrt(5)",
                     Fingerprint{16, false, 4, 4, {{1, 1}, {2, 7}, {4, 8}}, {4, 2}}});
        c.push_back({"H32", "a^4 = b^4 = 1, [a,b]^2 = 1, [a,b] central",
                     [] { return named_group("H32"); }, through(3),
                     "degree-4 witness with eigenvalues +-2*sqrt(2)",
                     Fingerprint{32, false, 4, 8, {{1, 1}, {2, 7}, {4, 24}}, {4, 4}}});
        c.push_back({"H27", "extra-special of order 27, exponent 3",
                     [] { return named_group("H27"); }, through(3),
                     "degree-4 witness with eigenvalues 1 +- sqrt(3)",
                     Fingerprint{27, false, 3, 3, {{1, 1}, {3, 26}}, {3, 3}}});
        c.push_back({"A4", "alternating group on 4 letters", [] { return named_group("A4"); },
                     through(3), "degree-4 witness {a, b, c, c^-1} with (-1 +- sqrt(17))/2",
                     Fingerprint{12, false, 6, 1, {{1, 1}, {2, 3}, {3, 8}}, {3}}});
        c.push_back({"Q8sZ3", "Q8 semidirect Z3 cycling i -> j -> k",
                     [] { return named_group("Q8sZ3"); }, through(3),
                     "degree-4 witness {i, -i, s, s^-1} with (1 +- sqrt(17))/2",
                     Fingerprint{24, false, 12, 2,
                                 {{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}}, {3}}});
        c.push_back({"D6xZ3", "D(6) x Z3", [] { return named_group("D6xZ3"); }, through(2),
                     "degree-3 witness {x*u, x*u^-1, x*v} with +-sqrt(3)",
                     Fingerprint{18, false, 6, 3, {{1, 1}, {2, 3}, {3, 8}, {6, 6}}, {6}}});
        c.push_back({"E9sZ2", "generalized dihedral of Z3 x Z3",
                     [] { return named_group("E9sZ2"); }, through(2),
                     "degree-3 witness {x*u, x*u^-1, x*v} with +-sqrt(3)",
                     Fingerprint{18, false, 6, 1, {{1, 1}, {2, 9}, {3, 8}}, {2}}});
        return c;
    }();
    return entries;
}

std::vector<ClassificationRow> classify_catalog(const std::set<int>& k_range,
                                                const SweepOptions& opts) {
    if (k_range.empty()) throw InvalidArgument("classification needs a non-empty k range");
    for (int k : k_range)
        if (k < 2 || k > 6)
            throw InvalidArgument("classification covers k = 2..6; got " + std::to_string(k));
    std::vector<ClassificationRow> rows;
    for (const CatalogEntry& e : catalog()) {
        const Group G = e.build();
        if (fingerprint(G) != e.golden)
            throw InvariantViolation("catalog fingerprint drift for " + e.name + ": built " +
                                     fingerprint(G).to_string());
        for (int k : k_range) {
            const GkVerdict verdict = gk_membership(G, k, opts);
            rows.push_back({e.name, k, e.expected.at(k), verdict.decision,
                            verdict.sets_examined});
        }
    }
    return rows;
}

namespace {

bool handle_abelian(const Group& G, const SubgroupHandle& H) {
    for (int a : H.elements)
        for (int b : H.elements)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

}  // namespace

std::vector<SubgroupHandle> all_subgroups(const Group& G) {
    std::set<std::vector<int>> seen;
    std::vector<SubgroupHandle> out;
    std::vector<SubgroupHandle> frontier;
    out.push_back(generated_subgroup(G, {}));
    seen.insert(out.back().elements);
    frontier.push_back(out.back());
    while (!frontier.empty()) {
        std::vector<SubgroupHandle> grown;
        for (const SubgroupHandle& H : frontier) {
            if (H.order() == G.n) continue;
            for (int g = 1; g < G.n; ++g) {
                if (H.contains(g)) continue;
                std::vector<int> seed = H.elements;
                seed.push_back(g);
                SubgroupHandle bigger = generated_subgroup(G, seed);
                if (seen.insert(bigger.elements).second) {
                    out.push_back(bigger);
                    grown.push_back(bigger);
                }
            }
        }
        frontier = std::move(grown);
    }
    return out;
}

HereditaryReport verify_hereditary_properties(const Group& G, int k) {
    if (k < 1) throw InvalidArgument("hereditary checks need k >= 1");
    HereditaryReport rep;
    rep.group = G.name;
    rep.k = k;
    if (gk_membership(G, k).decision != Decision::member)
        throw InvalidArgument(G.name + " is outside G_" + std::to_string(k) +
                              "; hereditary checks apply to members");

    std::set<std::vector<int>> seen;
    for (int a = 0; a < G.n; ++a)
        for (int b = a; b < G.n; ++b) {
            const SubgroupHandle H = generated_subgroup(G, {a, b});
            if (H.order() == G.n) continue;  // the group itself: verified above
            if (!seen.insert(H.elements).second) continue;
            const Group sub = subgroup_as_group(G, H);
            ++rep.subgroups_checked;
            if (gk_membership(sub, k).decision != Decision::member)
                rep.violations.push_back("pair-generated subgroup of order " +
                                         std::to_string(sub.n) + " left G_" +
                                         std::to_string(k));
        }

    for (const SubgroupHandle& N : all_subgroups(G)) {
        if (N.order() == 1 || N.order() == G.n) continue;
        if (!is_normal(G, N)) continue;
        const Group Q = quotient(G, N).first;
        const int n_ord = N.order();
        if (k % n_ord == 0) {
            ++rep.dividing_quotients_checked;
            if (gk_membership(Q, k / n_ord).decision != Decision::member)
                rep.violations.push_back("quotient by a normal subgroup of order " +
                                         std::to_string(n_ord) + " left G_" +
                                         std::to_string(k / n_ord));
        }
        if (n_ord % 2 == 1 && handle_abelian(G, N)) {
            ++rep.odd_abelian_quotients_checked;
            if (gk_membership(Q, k).decision != Decision::member)
                rep.violations.push_back("quotient by an odd abelian normal subgroup of order " +
                                         std::to_string(n_ord) + " left G_" +
                                         std::to_string(k));
        } else {
            // neither quotient rule covers this kernel; record what happens
            rep.boundary.push_back({n_ord, fingerprint(Q),
                                    gk_membership(Q, k).decision == Decision::member});
        }
    }
    return rep;
}

namespace {

struct WitnessRow {
    const char* group;
    const char* set_words;
    const char* subgroup_words;
    const char* pin_words;
    std::vector<std::pair<const char*, std::complex<double>>> locator;
    std::vector<double> required;
};

}  // namespace

WitnessSuiteReport paper_witness_suite() {
    const std::complex<double> one{1.0, 0.0}, minus{-1.0, 0.0}, I{0.0, 1.0};
    const std::complex<double> zeta3 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0),
                 s17 = std::sqrt(17.0);
    const std::vector<WitnessRow> rows = {
        {"H27", "a, a^-1, b, b^-1", "a, c", "1, b, b^-1", {{"a", one}, {"c", zeta3}},
         {-2.0, 1.0 - s3, 1.0 + s3}},
        {"H16", "b*a, b*a^-1*c, b", "a, c", "1, b", {{"a", I}, {"c", minus}}, {-s5, s5}},
        {"H32", "b*a, b^-1*a^-1*c, b, b^-1", "a, b^2, c", "1, b",
         {{"a", I}, {"b^2", one}, {"c", minus}}, {-2.0 * s2, 2.0 * s2}},
        {"A4", "a, b, c, c^-1", "a, b", "1, c, c^-1", {{"a", one}, {"b", minus}},
         {0.5 * (-1.0 - s17), -1.0, 0.5 * (-1.0 + s17)}},
        {"Q8sZ3", "i, -i, s, s^-1", "-1, s", "1, i, j, k", {{"-1", one}, {"s", one}},
         {-3.0, 0.5 * (1.0 - s17), 0.5 * (1.0 + s17), 4.0}},
        {"D6xZ3", "x*u, x*u^-1, x*v", "u, v", "1, x", {{"u", one}, {"v", zeta3}}, {-s3, s3}},
        {"E9sZ2", "x*u, x*u^-1, x*v", "u, v", "1, x", {{"u", one}, {"v", zeta3}}, {-s3, s3}},
        {"D8", "a*b, b", "a", "1, b", {{"a", I}}, {-s2, s2}},
    };
    WitnessSuiteReport rep;
    for (const WitnessRow& w : rows) {
        const Group G = named_group(w.group);
        const ConnectionSet S = make_connection_set(G, resolve_elements(G, w.set_words));
        const SubgroupHandle H = generated_subgroup(G, resolve_elements(G, w.subgroup_words));
        const KmmmReport R = kmmm_report(G, S, H, resolve_elements(G, w.pin_words));

        const KmmmBlock* blk = nullptr;
        for (size_t b = 0; b < R.blocks.size() && !blk; ++b) {
            const Character& chi = R.characters.characters[b];
            bool match = true;
            for (const auto& [word, want] : w.locator)
                if (std::abs(R.characters.value(chi, resolve_element(G, word)) - want) > 1e-9) {
                    match = false;
                    break;
                }
            if (match) blk = &R.blocks[b];
        }

        WitnessCheck c;
        c.group = w.group;
        c.set_words = w.set_words;
        c.required = w.required;
        if (blk && blk->eigenvalues.size() == w.required.size()) {
            for (size_t i = 0; i < w.required.size(); ++i)
                c.worst_gap =
                    std::max(c.worst_gap, std::abs(blk->eigenvalues[i] - w.required[i]));
        } else {
            c.worst_gap = std::numeric_limits<double>::infinity();
        }
        c.exact_nonintegral = !integrality_test(G, S);
        c.passed = c.exact_nonintegral && c.worst_gap <= 1e-9;
        rep.checks.push_back(c);
    }
    return rep;
}

MinimalNonabelianReport minimal_nonabelian_report(const Group& G) {
    for (int n = G.n; n > 1; n /= 2)
        if (n % 2 != 0)
            throw NotTwoGroup("minimal non-abelian classification needs a 2-group; " + G.name +
                              " has order " + std::to_string(G.n));
    MinimalNonabelianReport rep;
    rep.group = G.name;
    rep.exponent_four = group_exponent(G) == 4;
    if (is_abelian(G)) {
        rep.all_recognized = true;  // vacuous: no non-abelian subgroups at all
        rep.predicted = 4 % group_exponent(G) == 0;
    } else {
        const std::vector<Fingerprint> admissible = {fingerprint(named_group("Q8")),
                                                     fingerprint(named_group("H2")),
                                                     fingerprint(named_group("H32"))};
        std::set<Fingerprint> types;
        for (const SubgroupHandle& M : minimal_nonabelian_subgroups(G))
            types.insert(fingerprint(subgroup_as_group(G, M)));
        rep.minimal_types.assign(types.begin(), types.end());
        rep.all_recognized = std::all_of(
            rep.minimal_types.begin(), rep.minimal_types.end(), [&](const Fingerprint& f) {
                return std::find(admissible.begin(), admissible.end(), f) != admissible.end();
            });
        rep.predicted = rep.exponent_four && rep.all_recognized;
    }
    rep.swept = gk_membership(G, 3).decision == Decision::member;
    rep.agree = rep.predicted == rep.swept;
    return rep;
}

}  // namespace gint

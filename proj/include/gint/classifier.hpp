#pragma once
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gint/group.hpp"
#include "gint/spectral.hpp"

namespace gint {

enum class Decision { member, nonmember };

// concrete non-integrality data attached to a nonmember verdict
struct Evidence {
    double eigenvalue = 0.0;     // float eigenvalue farthest from any integer
    bool exact_failure = false;  // the exact annihilating product refused too
};

struct GkVerdict {
    std::string group;
    int k = 0;
    Decision decision = Decision::member;
    std::optional<ConnectionSet> witness;  // present iff nonmember
    std::optional<Evidence> evidence;      // present iff nonmember
    // enumeration prefix that decides the verdict: the total set count for a
    // member (or census run), index-plus-one of the first failure otherwise.
    // Deterministic regardless of job count.
    long long sets_examined = 0;
    double elapsed_seconds = 0.0;
};

struct SweepOptions {
    int jobs = 0;       // 0 = use GINT_JOBS from the environment, else 1
    bool full = false;  // census mode: sweep past the first failure
};

// Every inverse-closed identity-free S with 1 <= |S| <= k, each exactly once:
// total weight ascending, then lexicographic on atom index sequences (no
// automorphism reduction). fn(index, set) returns false to stop the stream.
// Returns the number of sets handed to fn.
long long for_each_connection_set(
    const Group& G, int k,
    const std::function<bool(long long, const ConnectionSet&)>& fn);

std::vector<ConnectionSet> enumerate_connection_sets(const Group& G, int k);

// Sweeps the stream with the full three-route analysis; early exit on the
// first non-integral set unless opts.full. Lowest-index failure wins under
// parallel evaluation. Throws CapExceeded above order 512.
GkVerdict gk_membership(const Group& G, int k, const SweepOptions& opts = {});

// Full Cayley integrality via the whole atom power set (k = |G|-1).
// AtomCapExceeded beyond 20 atoms; use gk_membership for bounded questions.
GkVerdict cayley_integral_check(const Group& G, const SweepOptions& opts = {});

// true iff every element order lies in {1,2,3,4,6} (the single-orbit cycle
// condition). Coincides with G_2 membership on the whole built-in catalog
// except D(8), where two reflections span an 8-cycle: the order profile
// alone provably does not decide G_2.
bool g2_order_test(const Group& G);

struct CatalogEntry {
    std::string name;    // catalog key; also a valid group-spec word
    std::string recipe;  // human-readable construction summary
    std::function<Group()> build;
    std::map<int, Decision> expected;  // k = 2..6
    std::string note;                  // one-line reason for the verdicts
    Fingerprint golden;                // frozen; build() must reproduce it
};
const std::vector<CatalogEntry>& catalog();

struct ClassificationRow {
    std::string group;
    int k = 0;
    Decision expected = Decision::member;
    Decision actual = Decision::member;
    long long sets_examined = 0;

    bool matches() const { return expected == actual; }
};
// gk_membership for every catalog entry at every k in k_range (must be
// within {2..6}); validates the fingerprint goldens up front.
std::vector<ClassificationRow> classify_catalog(const std::set<int>& k_range,
                                                const SweepOptions& opts = {});

// the whole subgroup lattice, found by closing one extra element at a time
std::vector<SubgroupHandle> all_subgroups(const Group& G);

// a normal kernel fitting neither quotient rule; recorded, not claimed
struct BoundaryQuotient {
    int kernel_order = 0;
    Fingerprint quotient;
    bool member = false;  // the quotient's own G_k verdict
};
struct HereditaryReport {
    std::string group;
    int k = 0;
    int subgroups_checked = 0;
    int dividing_quotients_checked = 0;
    int odd_abelian_quotients_checked = 0;
    std::vector<std::string> violations;    // expected empty
    std::vector<BoundaryQuotient> boundary;

    bool passed() const { return violations.empty(); }
};
// For a verified G_k member: every pair-generated proper subgroup stays in
// G_k; every normal N with |N| | k gives a quotient in G_{k/|N|}; every
// odd-order abelian normal N gives a quotient still in G_k. Kernels outside
// both hypotheses land in `boundary` with their quotient's verdict — that is
// where the order-16 example with a dihedral quotient shows the class is not
// closed under arbitrary factors.
HereditaryReport verify_hereditary_properties(const Group& G, int k);

struct WitnessCheck {
    std::string group;
    std::string set_words;         // the connection set, typed by labels
    std::vector<double> required;  // closed-form block eigenvalues, ascending
    double worst_gap = 0.0;        // max |computed - required|
    bool exact_nonintegral = false;
    bool passed = false;
};
struct WitnessSuiteReport {
    std::vector<WitnessCheck> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};
// The eight standing counterexample graphs: rebuild each, decompose, locate
// the designated character block, and pin its eigenvalues to the closed
// forms within 1e-9 (plus exact non-integrality of the whole graph).
WitnessSuiteReport paper_witness_suite();

struct MinimalNonabelianReport {
    std::string group;
    bool exponent_four = false;
    std::vector<Fingerprint> minimal_types;  // deduped minimal non-abelian types
    bool all_recognized = false;  // every type is one of the three admissible ones
    bool predicted = false;       // structural side of the equivalence
    bool swept = false;           // brute-force |S| <= 3 sweep
    bool agree = false;
};
// For a 2-group (NotTwoGroup otherwise): G_3 membership by sweep versus the
// structural test "exponent 4 and every minimal non-abelian subgroup of
// quaternion / order-16 metacyclic / order-32 type". Abelian 2-groups use
// the exponent-divides-4 criterion instead.
MinimalNonabelianReport minimal_nonabelian_report(const Group& G);

}  // namespace gint

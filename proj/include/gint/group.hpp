#pragma once
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gint/error.hpp"

namespace gint {

// Finite group as a dense multiplication table. Element 0 is always the
// identity. Construction validates identity/inverse/latin-square always and
// full associativity for n <= 256 (random triples above that).
struct Group {
    int n = 1;
    std::vector<int> table;  // row-major, table[g*n + h] = g.h
    std::vector<int> inv;    // inverse of each element
    std::vector<std::string> labels;
    std::string name;
    // named generators for word resolution ("a" -> element index). May hold
    // aliases; resolution takes the first match. Longest name wins during
    // tokenization, so "ab" splits as a.b only if no generator is named "ab".
    std::vector<std::pair<std::string, int>> gens;

    int mul(int g, int h) const { return table[static_cast<size_t>(g) * n + h]; }
    int conj(int g, int x) const { return mul(mul(inv[x], g), x); }  // g^x = x^-1 g x
    int power(int g, long long e) const;
    const std::string& label(int g) const { return labels[g]; }
};

struct SubgroupHandle {
    const Group* parent = nullptr;
    std::vector<int> elements;  // sorted ascending, always contains 0

    int order() const { return static_cast<int>(elements.size()); }
    bool contains(int g) const;
};

// Decomposition of an abelian subgroup H as <g_1> x ... x <g_r> with
// |g_i| = orders[i]; every h in H factors uniquely as prod g_i^{e_i},
// 0 <= e_i < orders[i].
struct AbelianBasis {
    const Group* parent = nullptr;
    std::vector<int> generators;
    std::vector<int> orders;
    // exponent tuple of every subgroup element, keyed by parent element index
    std::map<int, std::vector<int>> exponents;
};

struct Fingerprint {
    int order = 1;
    bool abelian = true;
    int exponent = 1;
    int center_order = 1;
    std::vector<std::pair<int, int>> profile;  // (element order, count), ascending
    std::vector<int> abelianization;           // invariant factors d1 >= d2 >= ..., d_{i+1} | d_i

    auto operator<=>(const Fingerprint&) const = default;
    std::string to_string() const;
};

// --- constructors ---

// Direct product of cyclic groups Z_{orders[0]} x ... in mixed-radix encoding,
// first factor slowest. Labels are words in the per-factor generators
// (default names u, v, w, p, q, r, g1, g2, ...), e.g. "u*v^2" for (1,2).
Group make_abelian(const std::vector<int>& orders,
                   const std::vector<std::string>& gen_names = {});

// <a,b | a^{order/2} = b^2 = 1, a^b = a^-1>. Indexed by ORDER: dihedral(6) is
// the 6-element group (a convention clash with the D_{n}-of-order-2n school;
// flagged in the CLI docs too).
Group make_dihedral(int order);

// Dic(A) for abelian A with a unique involution t and |A| > 2: elements
// A u xA with x^2 = t, a^x = a^-1. A keeps its indices (0..|A|-1), x.a is
// |A|+a; labels "x*<a>".
Group generalized_dicyclic(const Group& A);

// A x| B under the action phi: B -> Aut(A), given on B-generators as
// (generator index in B, image permutation of A). Multiplication
// (a1,b1)(a2,b2) = (a1 . phi_{b1}(a2), b1 b2); element (a,b) is encoded as
// b*|A| + a so A keeps its indices as the b=0 block.
Group semidirect_product(const Group& A, const Group& B,
                         const std::vector<std::pair<int, std::vector<int>>>& action);

// trivial action shortcut
Group direct_product(const Group& A, const Group& B);

// Closure of permutations on points 0..degree-1 (labels use 1-based cycle
// notation). Each generator is an image vector. Optional names label the
// generators for word resolution.
Group from_permutations(const std::vector<std::vector<int>>& generators,
                        const std::vector<std::string>& gen_names = {},
                        int cap = 512);

// Built-in presentations: Q8, D6, D8, H2 (= Z4sZ4), H16, H27, H32, A4,
// Q8sZ3, Dic12, D6xZ3, E9sZ2. Unknown names get did-you-mean suggestions.
Group named_group(const std::string& name);
std::vector<std::string> named_group_catalog();

// --- inspection ---

int element_order(const Group& G, int g);
std::map<int, int> order_profile(const Group& G);
bool is_abelian(const Group& G);
int group_exponent(const Group& G);
std::vector<int> center(const Group& G);

SubgroupHandle generated_subgroup(const Group& G, const std::vector<int>& seed);
SubgroupHandle commutator_subgroup(const Group& G);
bool is_normal(const Group& G, const SubgroupHandle& H);

// Cosets of a normal N become elements, ordered by their minimal member (so
// the identity coset is element 0). Labels borrow the minimal member's label.
// Returns the group and the projection g -> coset index.
std::pair<Group, std::vector<int>> quotient(const Group& G, const SubgroupHandle& N);

// Re-index a subgroup as a standalone group (labels inherited).
Group subgroup_as_group(const Group& G, const SubgroupHandle& H);

// Inclusion-minimal members of {<a,b> : [a,b] != 1}. Any two non-commuting
// elements of a minimal non-abelian M generate M, and an inclusion-minimal
// non-abelian closure has all proper subgroups abelian, so the pair sweep
// finds exactly the minimal non-abelian subgroups.
std::vector<SubgroupHandle> minimal_nonabelian_subgroups(const Group& G, int cap = 256);

Fingerprint fingerprint(const Group& G);

// Abelian structure of a subgroup via greedy basis extraction (largest order
// first). Throws NonAbelianSubgroup.
AbelianBasis abelian_basis(const Group& G, const SubgroupHandle& H);

// --- element addressing ---

// Two tiers: exact label match first, then evaluation as a word in the
// generator registry (tokens: generator names longest-match, optional '*'
// separators, '^<int>' exponents, e.g. "x*u^-1"). Unknown input throws
// UnknownLabel with did-you-mean suggestions.
int resolve_element(const Group& G, const std::string& word);
std::vector<int> resolve_elements(const Group& G, const std::string& csv);

}  // namespace gint

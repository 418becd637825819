#pragma once
#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "gint/group.hpp"
#include "gint/spectral.hpp"

namespace gint {

// Left-coset transversal of H in G (the orbits of right multiplication by H
// are the sets g.H). reps[0] is always the identity, pinned reps follow
// verbatim (PinnedCollision if two share a coset), every remaining coset gets
// its minimal element, scanned ascending. Every g factors uniquely as
// reps[coset_index[g]] . h_part[g].
struct Transversal {
    SubgroupHandle subgroup;
    std::vector<int> reps;
    std::vector<int> coset_index;  // element -> index into reps
    std::vector<int> h_part;       // element -> H-element of the factorization

    int cosets() const { return static_cast<int>(reps.size()); }
};
Transversal left_transversal(const Group& G, const SubgroupHandle& H,
                             const std::vector<int>& pinned = {});

// The m x m array of subsets of the abelian H that encodes Cay(G, S) block by
// block: cell (i, j) = {x in H : t_j x t_i^-1 in S}, i.e. H n t_j^-1 S t_i,
// so t_i h is adjacent to t_j h' iff h' h^-1 lies in cell (i, j).
// Construction checks two structural identities: total cell mass = m |S| and
// cell (j, i) = elementwise inverse of cell (i, j).
struct SymbolMatrix {
    int m = 0;
    std::vector<std::vector<std::vector<int>>> cells;  // sorted parent indices

    const std::vector<int>& cell(int i, int j) const { return cells[i][j]; }
};
SymbolMatrix symbol_matrix(const Group& G, const ConnectionSet& S, const Transversal& T);

// One homomorphism H -> roots of unity: the basis generator g_i (of order
// d_i) maps to zeta_N^(e_i N / d_i), N = lcm of the d_i.
struct Character {
    std::vector<int> exponents;  // e_i in [0, d_i)
};

// All |H| characters, enumerated lexicographically in the exponent tuple, so
// the trivial character comes first. Shares one AbelianBasis; phases are
// exact integers mod N.
struct CharacterTable {
    AbelianBasis basis;
    int modulus = 1;  // N, the common root order
    std::vector<Character> characters;

    size_t count() const { return characters.size(); }
    int phase(const Character& chi, int h) const;  // chi(h) = zeta_N^phase
    std::complex<double> value(const Character& chi, int h) const;
};
CharacterTable abelian_characters(const SubgroupHandle& H);

// Integer combination of roots of unity: counts[p] copies of zeta_N^p. This
// is the exact form of one chi-matrix entry.
struct CyclotomicSum {
    int modulus = 1;
    std::vector<long long> counts;

    std::complex<double> to_complex() const;
    CyclotomicSum conjugate() const;
    bool operator==(const CyclotomicSum&) const = default;
};

// chi summed over every symbol cell: exact cyclotomic entries plus the
// complex rendering whose eigenvalues are graph eigenvalues. Hermitian by the
// symbol's transpose-inverse symmetry, which is re-checked exactly here.
struct ChiMatrix {
    int m = 0;
    std::vector<std::vector<CyclotomicSum>> exact;
    Eigen::MatrixXcd rendered;
};
ChiMatrix chi_matrix(const CharacterTable& table, const Character& chi,
                     const SymbolMatrix& M);

struct KmmmBlock {
    std::vector<int> char_exponents;
    ChiMatrix chi;
    std::vector<double> eigenvalues;  // ascending, m of them
    // 2 x 2 blocks also get the closed form center +- sqrt(radicand),
    // cross-checked against the numeric eigenvalues
    bool has_quadratic = false;
    double q_center = 0.0;
    double q_radicand = 0.0;
};

struct KmmmReport {
    Transversal transversal;
    SymbolMatrix symbol;
    CharacterTable characters;
    std::vector<KmmmBlock> blocks;  // one per character, table order
    std::vector<double> spectrum;   // sorted union of the blocks, |G| values
};

// Full decomposition of Cay(G, S) relative to an abelian subgroup H: |H|
// Hermitian blocks of size [G:H] whose united eigenvalues are the graph
// spectrum.
KmmmReport kmmm_report(const Group& G, const ConnectionSet& S, const SubgroupHandle& H,
                       const std::vector<int>& pinned = {});
std::vector<double> kmmm_spectrum(const Group& G, const ConnectionSet& S,
                                  const SubgroupHandle& H,
                                  const std::vector<int>& pinned = {});

// Pull a connection set on G/N back to G, one element per chosen coset: a
// self-paired coset C contributes the first involution of C scanned
// ascending (one exists: C u N is a group of order 2|N| with |N| odd), and a
// coset pair {C, C^-1} contributes r and r^-1 for the minimal r in C. The
// result projects back onto quotient_set exactly. Validation order:
// NotNormal, NonAbelianSubgroup, EvenOrderSubgroup. Quotient element indices
// follow quotient(G, N).
ConnectionSet lift_connection_set(const Group& G, const SubgroupHandle& N,
                                  const ConnectionSet& quotient_set);

}  // namespace gint

#include "gint/kmmm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace gint {
namespace {

void require_same_parent(const Group& G, const SubgroupHandle& H, const char* what) {
    if (H.parent != &G) {
        std::ostringstream os;
        os << what << ": subgroup handle does not belong to this group";
        throw InvalidArgument(os.str());
    }
}

bool subgroup_is_abelian(const Group& G, const SubgroupHandle& H) {
    for (int a : H.elements)
        for (int b : H.elements)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

}  // namespace

Transversal left_transversal(const Group& G, const SubgroupHandle& H,
                             const std::vector<int>& pinned) {
    require_same_parent(G, H, "left_transversal");

    Transversal T;
    T.subgroup = H;
    T.coset_index.assign(G.n, -1);
    T.h_part.assign(G.n, -1);

    std::vector<int> queue = pinned;
    if (queue.empty() || queue.front() != 0) queue.insert(queue.begin(), 0);

    auto claim = [&](int rep) {
        if (rep < 0 || rep >= G.n)
            throw InvalidArgument("left_transversal: pinned rep out of range");
        if (T.coset_index[rep] != -1) {
            std::ostringstream os;
            os << "pinned rep " << G.label(rep) << " lands in the coset already held by "
               << G.label(T.reps[T.coset_index[rep]]);
            throw PinnedCollision(os.str());
        }
        int idx = static_cast<int>(T.reps.size());
        T.reps.push_back(rep);
        for (int h : H.elements) {
            int g = G.mul(rep, h);
            T.coset_index[g] = idx;
            T.h_part[g] = h;
        }
    };

    for (int rep : queue) claim(rep);
    for (int g = 0; g < G.n; ++g)
        if (T.coset_index[g] == -1) claim(g);

    if (static_cast<int>(T.reps.size()) * H.order() != G.n)
        throw InvariantViolation("left_transversal: cosets do not partition the group");
    return T;
}

SymbolMatrix symbol_matrix(const Group& G, const ConnectionSet& S, const Transversal& T) {
    const SubgroupHandle& H = T.subgroup;
    require_same_parent(G, H, "symbol_matrix");
    if (!subgroup_is_abelian(G, H))
        throw NonAbelianSubgroup("symbol_matrix: subgroup is not abelian");

    SymbolMatrix M;
    M.m = T.cosets();
    M.cells.assign(M.m, std::vector<std::vector<int>>(M.m));
    size_t mass = 0;
    for (int i = 0; i < M.m; ++i) {
        int ti_inv = G.inv[T.reps[i]];
        for (int j = 0; j < M.m; ++j) {
            int tj = T.reps[j];
            auto& cell = M.cells[i][j];
            for (int h : H.elements)  // ascending, so cells come out sorted
                if (S.contains(G.mul(G.mul(tj, h), ti_inv))) cell.push_back(h);
            mass += cell.size();
        }
    }

    if (mass != static_cast<size_t>(M.m) * S.degree())
        throw InvariantViolation("symbol_matrix: cell mass != m * |S|");
    for (int i = 0; i < M.m; ++i)
        for (int j = 0; j < M.m; ++j) {
            std::vector<int> mirrored;
            for (int h : M.cells[i][j]) mirrored.push_back(G.inv[h]);
            std::sort(mirrored.begin(), mirrored.end());
            if (mirrored != M.cells[j][i])
                throw InvariantViolation("symbol_matrix: cell (j,i) != inverses of cell (i,j)");
        }
    return M;
}

int CharacterTable::phase(const Character& chi, int h) const {
    auto it = basis.exponents.find(h);
    if (it == basis.exponents.end())
        throw InvalidArgument("character phase: element is not in the subgroup");
    const std::vector<int>& a = it->second;
    long long p = 0;
    for (size_t i = 0; i < basis.orders.size(); ++i)
        p += static_cast<long long>(chi.exponents[i]) * a[i] * (modulus / basis.orders[i]);
    return static_cast<int>(((p % modulus) + modulus) % modulus);
}

std::complex<double> CharacterTable::value(const Character& chi, int h) const {
    return std::polar(1.0, 2.0 * std::numbers::pi * phase(chi, h) / modulus);
}

CharacterTable abelian_characters(const SubgroupHandle& H) {
    CharacterTable table;
    table.basis = abelian_basis(*H.parent, H);
    table.modulus = 1;
    for (int d : table.basis.orders) table.modulus = std::lcm(table.modulus, d);

    // lexicographic sweep of the exponent box, so all-zero (trivial) is first
    std::vector<int> e(table.basis.orders.size(), 0);
    while (true) {
        table.characters.push_back(Character{e});
        int i = static_cast<int>(e.size()) - 1;
        while (i >= 0 && ++e[i] == table.basis.orders[i]) e[i--] = 0;
        if (i < 0) break;
    }
    if (table.characters.size() != static_cast<size_t>(H.order()))
        throw InvariantViolation("abelian_characters: character count != |H|");
    return table;
}

std::complex<double> CyclotomicSum::to_complex() const {
    std::complex<double> z = 0.0;
    for (int p = 0; p < modulus; ++p)
        if (counts[p])
            z += static_cast<double>(counts[p]) *
                 std::polar(1.0, 2.0 * std::numbers::pi * p / modulus);
    return z;
}

CyclotomicSum CyclotomicSum::conjugate() const {
    CyclotomicSum c;
    c.modulus = modulus;
    c.counts.assign(modulus, 0);
    for (int p = 0; p < modulus; ++p) c.counts[(modulus - p) % modulus] = counts[p];
    return c;
}

ChiMatrix chi_matrix(const CharacterTable& table, const Character& chi,
                     const SymbolMatrix& M) {
    ChiMatrix C;
    C.m = M.m;
    C.exact.assign(M.m, std::vector<CyclotomicSum>(M.m));
    C.rendered.resize(M.m, M.m);
    for (int i = 0; i < M.m; ++i)
        for (int j = 0; j < M.m; ++j) {
            CyclotomicSum& cell = C.exact[i][j];
            cell.modulus = table.modulus;
            cell.counts.assign(table.modulus, 0);
            for (int h : M.cell(i, j)) ++cell.counts[table.phase(chi, h)];
            C.rendered(i, j) = cell.to_complex();
        }
    // Hermitian in exact arithmetic, by the symbol's transpose-inverse symmetry
    for (int i = 0; i < M.m; ++i)
        for (int j = 0; j < M.m; ++j)
            if (!(C.exact[j][i] == C.exact[i][j].conjugate()))
                throw InvariantViolation("chi_matrix: exact entries are not Hermitian");
    return C;
}

KmmmReport kmmm_report(const Group& G, const ConnectionSet& S, const SubgroupHandle& H,
                       const std::vector<int>& pinned) {
    KmmmReport R;
    R.transversal = left_transversal(G, H, pinned);
    R.symbol = symbol_matrix(G, S, R.transversal);
    R.characters = abelian_characters(H);

    for (const Character& chi : R.characters.characters) {
        KmmmBlock blk;
        blk.char_exponents = chi.exponents;
        blk.chi = chi_matrix(R.characters, chi, R.symbol);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(blk.chi.rendered);
        if (solver.info() != Eigen::Success)
            throw InvariantViolation("kmmm_report: block eigensolver failed");
        blk.eigenvalues.assign(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + R.symbol.m);

        if (R.symbol.m == 2) {
            double a = blk.chi.rendered(0, 0).real();
            double d = blk.chi.rendered(1, 1).real();
            double off = std::abs(blk.chi.rendered(0, 1));
            blk.has_quadratic = true;
            blk.q_center = (a + d) / 2.0;
            blk.q_radicand = (a - d) * (a - d) / 4.0 + off * off;
            double root = std::sqrt(blk.q_radicand);
            if (std::abs(blk.eigenvalues[0] - (blk.q_center - root)) > 1e-9 ||
                std::abs(blk.eigenvalues[1] - (blk.q_center + root)) > 1e-9)
                throw InvariantViolation("kmmm_report: quadratic closed form disagrees with solver");
        }
        R.blocks.push_back(std::move(blk));
    }

    for (const KmmmBlock& blk : R.blocks)
        R.spectrum.insert(R.spectrum.end(), blk.eigenvalues.begin(), blk.eigenvalues.end());
    std::sort(R.spectrum.begin(), R.spectrum.end());
    if (R.spectrum.size() != static_cast<size_t>(G.n))
        throw InvariantViolation("kmmm_report: united block spectrum has wrong size");

    // the module's core promise: the united blocks ARE the graph spectrum
    std::vector<double> direct = float_spectrum(cayley_adjacency(G, S));
    for (int i = 0; i < G.n; ++i)
        if (std::abs(direct[i] - R.spectrum[i]) > kFloatIntegralityTol)
            throw InvariantViolation("kmmm_report: block spectrum disagrees with adjacency spectrum");
    return R;
}

std::vector<double> kmmm_spectrum(const Group& G, const ConnectionSet& S,
                                  const SubgroupHandle& H, const std::vector<int>& pinned) {
    return kmmm_report(G, S, H, pinned).spectrum;
}

ConnectionSet lift_connection_set(const Group& G, const SubgroupHandle& N,
                                  const ConnectionSet& quotient_set) {
    require_same_parent(G, N, "lift_connection_set");
    if (!is_normal(G, N)) throw NotNormal("lift_connection_set: subgroup is not normal");
    if (!subgroup_is_abelian(G, N))
        throw NonAbelianSubgroup("lift_connection_set: subgroup is not abelian");
    if (N.order() % 2 == 0)
        throw EvenOrderSubgroup("lift_connection_set: subgroup has even order");

    auto [Q, proj] = quotient(G, N);
    ConnectionSet qs = make_connection_set(Q, quotient_set.elements);  // re-validate vs Q

    std::vector<int> lifted;
    for (int q : qs.elements) {
        if (Q.inv[q] == q) {
            // self-paired coset: it sits in a group of order 2|N| with |N| odd,
            // so it holds an involution; take the first one the scan meets
            int found = -1;
            for (int g = 0; g < G.n && found < 0; ++g)
                if (proj[g] == q && G.mul(g, g) == 0) found = g;
            if (found < 0)
                throw InvariantViolation("lift_connection_set: self-paired coset has no involution");
            lifted.push_back(found);
        } else if (q < Q.inv[q]) {
            int r = -1;
            for (int g = 0; g < G.n && r < 0; ++g)
                if (proj[g] == q) r = g;
            lifted.push_back(r);
            lifted.push_back(G.inv[r]);
        }
    }

    ConnectionSet R = make_connection_set(G, lifted);
    if (R.degree() != qs.degree())
        throw InvariantViolation("lift_connection_set: lifted set has wrong size");
    std::vector<int> shadow;
    for (int r : R.elements) shadow.push_back(proj[r]);
    std::sort(shadow.begin(), shadow.end());
    shadow.erase(std::unique(shadow.begin(), shadow.end()), shadow.end());
    if (shadow != qs.elements)
        throw InvariantViolation("lift_connection_set: projection does not recover the quotient set");
    return R;
}

}  // namespace gint

#include "gint/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace gint {

namespace {

constexpr int kTableCap = 2048;       // hard cap on constructed table size
constexpr int kFullCheckCap = 256;    // full associativity check below this

void append_power_factor(std::string& out, const std::string& gen, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += gen;
    if (e != 1) out += "^" + std::to_string(e);
}

std::string word_label(const std::vector<std::string>& names, const std::vector<int>& exps) {
    std::string out;
    for (size_t i = 0; i < exps.size(); ++i) append_power_factor(out, names[i], exps[i]);
    return out.empty() ? "1" : out;
}

int levenshtein(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    std::iota(prev.begin(), prev.end(), 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::vector<std::string> closest_matches(const std::string& bad,
                                         const std::vector<std::string>& candidates,
                                         size_t limit = 5) {
    std::vector<std::pair<int, std::string>> scored;
    for (const auto& c : candidates) {
        int d = levenshtein(bad, c);
        if (d <= std::max(2, static_cast<int>(bad.size()) / 3)) scored.push_back({d, c});
    }
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (const auto& [d, c] : scored) {
        if (out.size() >= limit) break;
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
    return out;
}

// Fill inverses and check the table invariants. Every constructor funnels
// through here, so a bad table cannot escape.
void finalize(Group& G) {
    const int n = G.n;
    if (n < 1 || static_cast<size_t>(n) * n != G.table.size())
        throw BadTable("table size does not match order");
    if (n > kTableCap) throw CapExceeded("group order " + std::to_string(n) +
                                         " exceeds the table cap " + std::to_string(kTableCap));
    for (int v : G.table)
        if (v < 0 || v >= n) throw BadTable("table entry out of range");
    for (int g = 0; g < n; ++g)
        if (G.mul(0, g) != g || G.mul(g, 0) != g)
            throw BadTable("element 0 is not an identity");
    std::vector<char> seen(n);
    for (int g = 0; g < n; ++g) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int h = 0; h < n; ++h) seen[G.mul(g, h)] = 1;
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            throw BadTable("row " + std::to_string(g) + " is not a permutation");
        std::fill(seen.begin(), seen.end(), 0);
        for (int h = 0; h < n; ++h) seen[G.mul(h, g)] = 1;
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            throw BadTable("column " + std::to_string(g) + " is not a permutation");
    }
    G.inv.assign(n, -1);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (G.mul(g, h) == 0) { G.inv[g] = h; break; }
    for (int g = 0; g < n; ++g)
        if (G.inv[g] < 0 || G.mul(G.inv[g], g) != 0)
            throw BadTable("two-sided inverse missing for element " + std::to_string(g));
    if (n <= kFullCheckCap) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
                        throw BadTable("associativity fails");
    } else {
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int t = 0; t < 20000; ++t) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
                throw BadTable("associativity fails");
        }
    }
    if (G.labels.size() != static_cast<size_t>(n)) throw BadTable("label count mismatch");
    std::set<std::string> uniq(G.labels.begin(), G.labels.end());
    if (uniq.size() != static_cast<size_t>(n)) throw BadTable("labels are not unique");
    for (const auto& [nm, idx] : G.gens)
        if (idx < 0 || idx >= n || nm.empty()) throw BadTable("bad generator registry entry");
}

std::vector<std::string> default_gen_names(size_t r) {
    static const char* pool[] = {"u", "v", "w", "p", "q", "r"};
    std::vector<std::string> out;
    for (size_t i = 0; i < r; ++i)
        out.push_back(i < 6 ? pool[i] : "g" + std::to_string(i + 1));
    return out;
}

}  // namespace

int Group::power(int g, long long e) const {
    int base = g;
    if (e < 0) { base = inv[g]; e = -e; }
    int acc = 0;
    for (long long i = 0; i < e; ++i) acc = mul(acc, base);
    return acc;
}

bool SubgroupHandle::contains(int g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

std::string Fingerprint::to_string() const {
    std::ostringstream os;
    os << "(order=" << order << ", abelian=" << (abelian ? 1 : 0) << ", exp=" << exponent
       << ", |Z|=" << center_order << ", profile={";
    for (size_t i = 0; i < profile.size(); ++i)
        os << (i ? "," : "") << profile[i].first << ":" << profile[i].second;
    os << "}, ab=[";
    for (size_t i = 0; i < abelianization.size(); ++i)
        os << (i ? "," : "") << abelianization[i];
    os << "])";
    return os.str();
}

Group make_abelian(const std::vector<int>& orders, const std::vector<std::string>& gen_names) {
    for (int d : orders)
        if (d < 1) throw InvalidArgument("cyclic factor order must be >= 1");
    long long n = 1;
    for (int d : orders) {
        n *= d;
        if (n > kTableCap) throw CapExceeded("abelian group too large");
    }
    const size_t r = orders.size();
    std::vector<std::string> names = gen_names.empty() ? default_gen_names(r) : gen_names;
    if (names.size() < r) throw InvalidArgument("not enough generator names");

    std::vector<long long> stride(r, 1);
    for (size_t i = r; i-- > 1;) stride[i - 1] = stride[i] * orders[i];

    Group G;
    G.n = static_cast<int>(n);
    std::vector<std::vector<int>> tuples(G.n, std::vector<int>(r));
    for (int g = 0; g < G.n; ++g) {
        long long rem = g;
        for (size_t i = 0; i < r; ++i) { tuples[g][i] = static_cast<int>(rem / stride[i]); rem %= stride[i]; }
    }
    G.table.resize(static_cast<size_t>(G.n) * G.n);
    for (int g = 0; g < G.n; ++g)
        for (int h = 0; h < G.n; ++h) {
            long long idx = 0;
            for (size_t i = 0; i < r; ++i) idx += ((tuples[g][i] + tuples[h][i]) % orders[i]) * stride[i];
            G.table[static_cast<size_t>(g) * G.n + h] = static_cast<int>(idx);
        }
    G.labels.resize(G.n);
    for (int g = 0; g < G.n; ++g) G.labels[g] = word_label(names, tuples[g]);
    for (size_t i = 0; i < r; ++i)
        if (orders[i] > 1) G.gens.push_back({names[i], static_cast<int>(stride[i])});
    std::string nm;
    for (size_t i = 0; i < r; ++i) nm += (i ? " x " : "") + ("C(" + std::to_string(orders[i]) + ")");
    G.name = nm.empty() ? "C(1)" : nm;
    finalize(G);
    return G;
}

Group make_dihedral(int order) {
    if (order < 4 || order % 2 != 0)
        throw InvalidArgument("dihedral order must be even and >= 4 (got " +
                              std::to_string(order) + "); note D(n) here has n elements");
    const int m = order / 2;
    Group G;
    G.n = order;
    G.table.resize(static_cast<size_t>(order) * order);
    auto enc = [&](int i, int j) { return j * m + i; };
    for (int i1 = 0; i1 < m; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < m; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) {
                    int i = ((j1 ? i1 - i2 : i1 + i2) % m + m) % m;  // a^i2 conjugated past b^j1
                    G.table[static_cast<size_t>(enc(i1, j1)) * order + enc(i2, j2)] = enc(i, (j1 + j2) % 2);
                }
    G.labels.resize(order);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < 2; ++j) {
            std::string s;
            append_power_factor(s, "a", i);
            if (j) append_power_factor(s, "b", 1);
            G.labels[enc(i, j)] = s.empty() ? "1" : s;
        }
    G.gens = {{"a", enc(1, 0)}, {"b", enc(0, 1)}};
    G.name = "D(" + std::to_string(order) + ")";
    finalize(G);
    return G;
}

Group generalized_dicyclic(const Group& A) {
    if (!is_abelian(A)) throw NotAbelian("Dic(A) needs abelian A");
    std::vector<int> invols;
    for (int g = 1; g < A.n; ++g)
        if (A.mul(g, g) == 0) invols.push_back(g);
    if (invols.size() != 1)
        throw NoUniqueInvolution("Dic(A) needs exactly one involution in A, found " +
                                 std::to_string(invols.size()));
    if (A.n <= 2) throw TooSmall("Dic(A) needs |A| > 2");
    const int t = invols[0], na = A.n;
    Group G;
    G.n = 2 * na;
    G.table.resize(static_cast<size_t>(G.n) * G.n);
    // element d*na + a stands for x^d . a; x^2 = t and x a x^-1 = a^-1
    for (int d1 = 0; d1 < 2; ++d1)
        for (int a1 = 0; a1 < na; ++a1)
            for (int d2 = 0; d2 < 2; ++d2)
                for (int a2 = 0; a2 < na; ++a2) {
                    int left = d2 ? A.inv[a1] : a1;  // a x = x a^-1
                    int a = A.mul(left, a2);
                    int d = d1 + d2;
                    if (d == 2) { d = 0; a = A.mul(t, a); }
                    G.table[static_cast<size_t>(d1 * na + a1) * G.n + (d2 * na + a2)] = d * na + a;
                }
    G.labels.resize(G.n);
    for (int a = 0; a < na; ++a) {
        G.labels[a] = A.labels[a];
        G.labels[na + a] = a == 0 ? "x" : "x*" + A.labels[a];
    }
    G.gens = A.gens;
    G.gens.push_back({"x", na});
    G.name = "Dic(" + A.name + ")";
    finalize(G);
    return G;
}

Group semidirect_product(const Group& A, const Group& B,
                         const std::vector<std::pair<int, std::vector<int>>>& action) {
    // validate the supplied automorphisms
    for (const auto& [bgen, perm] : action) {
        if (bgen < 0 || bgen >= B.n) throw InvalidArgument("action generator index out of range");
        if (perm.size() != static_cast<size_t>(A.n)) throw NotAutomorphism("permutation size mismatch");
        std::vector<char> seen(A.n, 0);
        for (int v : perm) {
            if (v < 0 || v >= A.n || seen[v]) throw NotAutomorphism("not a bijection");
            seen[v] = 1;
        }
        if (perm[0] != 0) throw NotAutomorphism("automorphism must fix the identity");
        for (int x = 0; x < A.n; ++x)
            for (int y = 0; y < A.n; ++y)
                if (perm[A.mul(x, y)] != A.mul(perm[x], perm[y]))
                    throw NotAutomorphism("map does not preserve products");
    }
    // extend to all of B: phi_{b g} = phi_b o phi_g, checked on revisits so
    // every relation of B is exercised
    std::vector<std::vector<int>> phi(B.n);
    phi[0].resize(A.n);
    std::iota(phi[0].begin(), phi[0].end(), 0);
    std::queue<int> bfs;
    bfs.push(0);
    while (!bfs.empty()) {
        int b = bfs.front();
        bfs.pop();
        for (const auto& [g, gperm] : action) {
            int b2 = B.mul(b, g);
            std::vector<int> cand(A.n);
            for (int x = 0; x < A.n; ++x) cand[x] = phi[b][gperm[x]];
            if (phi[b2].empty()) {
                phi[b2] = std::move(cand);
                bfs.push(b2);
            } else if (phi[b2] != cand) {
                throw ActionInconsistent("action violates a relation of B");
            }
        }
    }
    for (int b = 0; b < B.n; ++b)
        if (phi[b].empty()) throw ActionInconsistent("action generators do not generate B");

    long long n = static_cast<long long>(A.n) * B.n;
    if (n > kTableCap) throw CapExceeded("semidirect product too large");
    Group G;
    G.n = static_cast<int>(n);
    G.table.resize(static_cast<size_t>(G.n) * G.n);
    auto enc = [&](int a, int b) { return b * A.n + a; };
    for (int b1 = 0; b1 < B.n; ++b1)
        for (int a1 = 0; a1 < A.n; ++a1)
            for (int b2 = 0; b2 < B.n; ++b2)
                for (int a2 = 0; a2 < A.n; ++a2)
                    G.table[static_cast<size_t>(enc(a1, b1)) * G.n + enc(a2, b2)] =
                        enc(A.mul(a1, phi[b1][a2]), B.mul(b1, b2));
    G.labels.resize(G.n);
    for (int b = 0; b < B.n; ++b)
        for (int a = 0; a < A.n; ++a) {
            std::string s;
            if (a != 0) s = A.labels[a];
            if (b != 0) s += (s.empty() ? "" : "*") + B.labels[b];
            G.labels[enc(a, b)] = s.empty() ? "1" : s;
        }
    for (const auto& [nm, idx] : A.gens) G.gens.push_back({nm, enc(idx, 0)});
    for (const auto& [nm, idx] : B.gens) G.gens.push_back({nm, enc(0, idx)});
    G.name = A.name + " x| " + B.name;
    finalize(G);
    return G;
}

Group direct_product(const Group& A, const Group& B) {
    long long n = static_cast<long long>(A.n) * B.n;
    if (n > kTableCap) throw CapExceeded("direct product too large");
    Group G;
    G.n = static_cast<int>(n);
    G.table.resize(static_cast<size_t>(G.n) * G.n);
    auto enc = [&](int a, int b) { return b * A.n + a; };
    for (int b1 = 0; b1 < B.n; ++b1)
        for (int a1 = 0; a1 < A.n; ++a1)
            for (int b2 = 0; b2 < B.n; ++b2)
                for (int a2 = 0; a2 < A.n; ++a2)
                    G.table[static_cast<size_t>(enc(a1, b1)) * G.n + enc(a2, b2)] =
                        enc(A.mul(a1, a2), B.mul(b1, b2));
    G.labels.resize(G.n);
    for (int b = 0; b < B.n; ++b)
        for (int a = 0; a < A.n; ++a) {
            std::string s;
            if (a != 0) s = A.labels[a];
            if (b != 0) s += (s.empty() ? "" : "*") + B.labels[b];
            G.labels[enc(a, b)] = s.empty() ? "1" : s;
        }
    for (const auto& [nm, idx] : A.gens) G.gens.push_back({nm, enc(idx, 0)});
    for (const auto& [nm, idx] : B.gens) G.gens.push_back({nm, enc(0, idx)});
    G.name = A.name + " x " + B.name;
    finalize(G);
    return G;
}

namespace {

std::string cycle_label(const std::vector<int>& perm) {
    const int deg = static_cast<int>(perm.size());
    std::vector<char> done(deg, 0);
    std::string out;
    for (int s = 0; s < deg; ++s) {
        if (done[s] || perm[s] == s) continue;
        out += "(";
        int x = s;
        bool first = true;
        while (!done[x]) {
            done[x] = 1;
            out += (first ? "" : ",") + std::to_string(x + 1);
            first = false;
            x = perm[x];
        }
        out += ")";
    }
    return out.empty() ? "1" : out;
}

}  // namespace

Group from_permutations(const std::vector<std::vector<int>>& generators,
                        const std::vector<std::string>& gen_names, int cap) {
    int deg = generators.empty() ? 1 : static_cast<int>(generators[0].size());
    for (const auto& p : generators) {
        if (static_cast<int>(p.size()) != deg)
            throw InvalidArgument("permutations act on different point sets");
        std::vector<char> seen(deg, 0);
        for (int v : p) {
            if (v < 0 || v >= deg || seen[v]) throw InvalidArgument("not a permutation");
            seen[v] = 1;
        }
    }
    std::vector<int> id(deg);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems = {id};
    std::map<std::vector<int>, int> index = {{id, 0}};
    // p.q applies p first, then q; this matches relabelling a^c = a with
    // points mapped through c, which is the convention the witness symbols use
    auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(deg);
        for (int x = 0; x < deg; ++x) r[x] = q[p[x]];
        return r;
    };
    for (size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : generators) {
            auto prod = compose(elems[i], g);
            if (index.emplace(prod, static_cast<int>(elems.size())).second) {
                elems.push_back(prod);
                if (static_cast<int>(elems.size()) > cap)
                    throw ClosureExceedsCap("permutation closure exceeds cap " + std::to_string(cap));
            }
        }
    Group G;
    G.n = static_cast<int>(elems.size());
    G.table.resize(static_cast<size_t>(G.n) * G.n);
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b)
            G.table[static_cast<size_t>(a) * G.n + b] = index.at(compose(elems[a], elems[b]));
    G.labels.resize(G.n);
    for (int a = 0; a < G.n; ++a) G.labels[a] = cycle_label(elems[a]);
    for (size_t i = 0; i < generators.size() && i < gen_names.size(); ++i)
        G.gens.push_back({gen_names[i], index.at(generators[i])});
    G.name = "Perm(" + std::to_string(G.n) + ")";
    finalize(G);
    return G;
}

namespace {

// <a,b,c | a^pa = b^pb = c^pc = 1, [a,b] = c, c central>; normal form
// a^i b^j c^k, so b^j a^i = a^i b^j c^{-ij}
Group h_family(int pa, int pb, int pc, const std::string& name) {
    Group G;
    G.n = pa * pb * pc;
    auto enc = [&](int i, int j, int k) { return (i * pb + j) * pc + k; };
    G.table.resize(static_cast<size_t>(G.n) * G.n);
    for (int i1 = 0; i1 < pa; ++i1)
        for (int j1 = 0; j1 < pb; ++j1)
            for (int k1 = 0; k1 < pc; ++k1)
                for (int i2 = 0; i2 < pa; ++i2)
                    for (int j2 = 0; j2 < pb; ++j2)
                        for (int k2 = 0; k2 < pc; ++k2) {
                            int k = ((k1 + k2 - i2 * j1) % pc + pc) % pc;
                            G.table[static_cast<size_t>(enc(i1, j1, k1)) * G.n +
                                    enc(i2, j2, k2)] = enc((i1 + i2) % pa, (j1 + j2) % pb, k);
                        }
    G.labels.resize(G.n);
    for (int i = 0; i < pa; ++i)
        for (int j = 0; j < pb; ++j)
            for (int k = 0; k < pc; ++k)
                G.labels[enc(i, j, k)] = word_label({"a", "b", "c"}, {i, j, k});
    G.gens = {{"a", enc(1, 0, 0)}, {"b", enc(0, 1, 0)}, {"c", enc(0, 0, 1)}};
    G.name = name;
    finalize(G);
    return G;
}

Group quaternion8() {
    // 0..7 = 1, -1, i, -i, j, -j, k, -k
    static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    // sg[a][b] = 1 iff axis_a . axis_b carries a minus: i*i=j*j=k*k=-1,
    // j*i=-k, k*j=-i, i*k=-j
    Group G;
    G.n = 8;
    G.table.resize(64);
    for (int a = 0; a < 4; ++a)
        for (int s = 0; s < 2; ++s)
            for (int b = 0; b < 4; ++b)
                for (int t = 0; t < 2; ++t)
                    G.table[static_cast<size_t>(a * 2 + s) * 8 + (b * 2 + t)] =
                        ax[a][b] * 2 + (s ^ t ^ sg[a][b]);
    G.labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    G.gens = {{"i", 2}, {"j", 4}, {"k", 6}};
    G.name = "Q8";
    finalize(G);
    return G;
}

Group build_named(const std::string& name) {
    if (name == "Q8") return quaternion8();
    if (name == "D6") return make_dihedral(6);
    if (name == "D8") return make_dihedral(8);
    if (name == "H2" || name == "Z4sZ4") {
        // <a,b | a^4 = b^4 = 1, a^b = a^-1>
        Group A = make_abelian({4}, {"a"});
        Group B = make_abelian({4}, {"b"});
        Group G = semidirect_product(A, B, {{1, {0, 3, 2, 1}}});
        G.name = name;
        return G;
    }
    if (name == "H16") return h_family(4, 2, 2, "H16");
    if (name == "H32") return h_family(4, 4, 2, "H32");
    if (name == "H27") return h_family(3, 3, 3, "H27");
    if (name == "A4") {
        // generated by (1,3)(2,4) and (1,2,3); the letters a, b, c follow the
        // usual witness naming a=(1,2)(3,4), b=(1,3)(2,4), c=(1,2,3)
        Group G = from_permutations({{2, 3, 0, 1}, {1, 2, 0, 3}}, {"b", "c"});
        G.name = "A4";
        int a = -1;
        for (int g = 0; g < G.n; ++g)
            if (G.labels[g] == "(1,2)(3,4)") a = g;
        if (a < 0) throw InvariantViolation("A4 closure is missing (1,2)(3,4)");
        G.gens.push_back({"a", a});
        return G;
    }
    if (name == "Q8sZ3") {
        Group Q = quaternion8();
        Group B = make_abelian({3}, {"s"});
        // phi_s = conjugation by s: i -> k -> j -> i (so i^s = j, j^s = k, k^s = i)
        std::vector<int> perm = {0, 1, 6, 7, 2, 3, 4, 5};
        Group G = semidirect_product(Q, B, {{1, perm}});
        G.name = "Q8sZ3";
        int s = -1;
        for (const auto& [nm, idx] : G.gens)
            if (nm == "s") s = idx;
        if (s < 0) throw InvariantViolation("Q8sZ3 lost its s generator");
        G.gens.push_back({"sigma", s});
        return G;
    }
    if (name == "Dic12") {
        Group G = generalized_dicyclic(make_abelian({6}, {"u"}));
        G.name = "Dic12";
        return G;
    }
    if (name == "D6xZ3" || name == "E9sZ2") {
        Group A = make_abelian({3, 3}, {"u", "v"});
        Group B = make_abelian({2}, {"x"});
        // x inverts v always; it fixes u in D6xZ3 and inverts it in E9sZ2
        std::vector<int> perm(9);
        for (int eu = 0; eu < 3; ++eu)
            for (int ev = 0; ev < 3; ++ev) {
                int iu = name == "D6xZ3" ? eu : (3 - eu) % 3;
                perm[eu * 3 + ev] = iu * 3 + (3 - ev) % 3;
            }
        Group G = semidirect_product(A, B, {{1, perm}});
        G.name = name;
        return G;
    }
    throw UnknownName("unknown group name: " + name,
                      closest_matches(name, named_group_catalog()));
}

}  // namespace

std::vector<std::string> named_group_catalog() {
    return {"Q8", "D6", "D8", "H2", "Z4sZ4", "H16", "H27", "H32",
            "A4", "Q8sZ3", "Dic12", "D6xZ3", "E9sZ2"};
}

Group named_group(const std::string& name) { return build_named(name); }

int element_order(const Group& G, int g) {
    if (g < 0 || g >= G.n) throw InvalidArgument("element index out of range");
    int m = 1, x = g;
    while (x != 0) { x = G.mul(x, g); ++m; }
    return m;
}

std::map<int, int> order_profile(const Group& G) {
    std::map<int, int> prof;
    for (int g = 0; g < G.n; ++g) ++prof[element_order(G, g)];
    return prof;
}

bool is_abelian(const Group& G) {
    for (int a = 0; a < G.n; ++a)
        for (int b = a + 1; b < G.n; ++b)
            if (G.mul(a, b) != G.mul(b, a)) return false;
    return true;
}

int group_exponent(const Group& G) {
    long long e = 1;
    for (int g = 0; g < G.n; ++g) e = std::lcm(e, static_cast<long long>(element_order(G, g)));
    return static_cast<int>(e);
}

std::vector<int> center(const Group& G) {
    std::vector<int> z;
    for (int g = 0; g < G.n; ++g) {
        bool central = true;
        for (int h = 0; h < G.n && central; ++h) central = G.mul(g, h) == G.mul(h, g);
        if (central) z.push_back(g);
    }
    return z;
}

SubgroupHandle generated_subgroup(const Group& G, const std::vector<int>& seed) {
    for (int s : seed)
        if (s < 0 || s >= G.n) throw InvalidArgument("seed element out of range");
    // words over the seed suffice: the set of all products is finite and
    // closed, hence already a subgroup
    std::vector<char> in(G.n, 0);
    std::vector<int> elems = {0};
    in[0] = 1;
    for (size_t i = 0; i < elems.size(); ++i)
        for (int s : seed) {
            int x = G.mul(elems[i], s);
            if (!in[x]) { in[x] = 1; elems.push_back(x); }
        }
    std::sort(elems.begin(), elems.end());
    return SubgroupHandle{&G, elems};
}

SubgroupHandle commutator_subgroup(const Group& G) {
    std::vector<int> comms;
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b) {
            int c = G.mul(G.mul(G.inv[a], G.inv[b]), G.mul(a, b));
            if (c != 0) comms.push_back(c);
        }
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return generated_subgroup(G, comms);
}

bool is_normal(const Group& G, const SubgroupHandle& H) {
    for (int h : H.elements)
        for (int g = 0; g < G.n; ++g)
            if (!H.contains(G.conj(h, g))) return false;
    return true;
}

std::pair<Group, std::vector<int>> quotient(const Group& G, const SubgroupHandle& N) {
    if (N.parent != &G) throw InvalidArgument("subgroup belongs to a different group");
    if (!is_normal(G, N)) throw NotNormal("subgroup is not normal");
    std::vector<int> proj(G.n, -1);
    std::vector<int> reps;
    for (int g = 0; g < G.n; ++g) {
        if (proj[g] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(g);  // g is minimal in its coset: smaller members were already marked
        for (int h : N.elements) proj[G.mul(g, h)] = id;
    }
    Group Q;
    Q.n = static_cast<int>(reps.size());
    Q.table.resize(static_cast<size_t>(Q.n) * Q.n);
    for (int a = 0; a < Q.n; ++a)
        for (int b = 0; b < Q.n; ++b)
            Q.table[static_cast<size_t>(a) * Q.n + b] = proj[G.mul(reps[a], reps[b])];
    Q.labels.resize(Q.n);
    for (int a = 0; a < Q.n; ++a) Q.labels[a] = G.labels[reps[a]];
    for (const auto& [nm, idx] : G.gens) {
        int im = proj[idx];
        bool dup = false;
        for (const auto& entry : Q.gens) dup = dup || (entry.first == nm);
        if (!dup && im != 0) Q.gens.push_back({nm, im});
    }
    Q.name = G.name + "/" + std::to_string(N.order());
    finalize(Q);
    return {std::move(Q), std::move(proj)};
}

Group subgroup_as_group(const Group& G, const SubgroupHandle& H) {
    if (H.parent != &G) throw InvalidArgument("subgroup belongs to a different group");
    std::vector<int> local(G.n, -1);
    for (size_t i = 0; i < H.elements.size(); ++i) local[H.elements[i]] = static_cast<int>(i);
    Group S;
    S.n = H.order();
    S.table.resize(static_cast<size_t>(S.n) * S.n);
    for (int a = 0; a < S.n; ++a)
        for (int b = 0; b < S.n; ++b) {
            int prod = local[G.mul(H.elements[a], H.elements[b])];
            if (prod < 0) throw InvariantViolation("subgroup handle is not closed");
            S.table[static_cast<size_t>(a) * S.n + b] = prod;
        }
    S.labels.resize(S.n);
    for (int a = 0; a < S.n; ++a) S.labels[a] = G.labels[H.elements[a]];
    for (const auto& [nm, idx] : G.gens)
        if (local[idx] > 0) S.gens.push_back({nm, local[idx]});
    S.name = G.name + ":sub" + std::to_string(S.n);
    finalize(S);
    return S;
}

std::vector<SubgroupHandle> minimal_nonabelian_subgroups(const Group& G, int cap) {
    if (G.n > cap) throw CapExceeded("group order exceeds cap " + std::to_string(cap));
    std::set<std::vector<int>> closures;
    for (int a = 0; a < G.n; ++a)
        for (int b = a + 1; b < G.n; ++b)
            if (G.mul(a, b) != G.mul(b, a)) closures.insert(generated_subgroup(G, {a, b}).elements);
    std::vector<SubgroupHandle> out;
    for (const auto& c : closures) {
        bool minimal = true;
        for (const auto& d : closures) {
            if (d.size() >= c.size()) continue;
            if (std::includes(c.begin(), c.end(), d.begin(), d.end())) { minimal = false; break; }
        }
        if (minimal) out.push_back(SubgroupHandle{&G, c});
    }
    std::sort(out.begin(), out.end(), [](const SubgroupHandle& x, const SubgroupHandle& y) {
        return x.elements < y.elements;
    });
    return out;
}

Fingerprint fingerprint(const Group& G) {
    Fingerprint f;
    f.order = G.n;
    f.abelian = is_abelian(G);
    f.exponent = group_exponent(G);
    f.center_order = static_cast<int>(center(G).size());
    for (const auto& [o, c] : order_profile(G)) f.profile.push_back({o, c});
    auto [ab, proj] = quotient(G, commutator_subgroup(G));
    (void)proj;
    SubgroupHandle whole{&ab, {}};
    whole.elements.resize(ab.n);
    std::iota(whole.elements.begin(), whole.elements.end(), 0);
    AbelianBasis basis = abelian_basis(ab, whole);
    // canonical invariant factors: merge the per-prime power lists largest-first
    std::map<int, std::vector<int>> perprime;
    for (int d : basis.orders) {
        int rem = d;
        for (int p = 2; p <= rem; ++p) {
            if (rem % p) continue;
            int pk = 1;
            while (rem % p == 0) { pk *= p; rem /= p; }
            perprime[p].push_back(pk);
        }
    }
    size_t slots = 0;
    for (auto& [p, v] : perprime) {
        std::sort(v.rbegin(), v.rend());
        slots = std::max(slots, v.size());
    }
    for (size_t i = 0; i < slots; ++i) {
        long long d = 1;
        for (auto& [p, v] : perprime)
            if (i < v.size()) d *= v[i];
        f.abelianization.push_back(static_cast<int>(d));
    }
    return f;
}

AbelianBasis abelian_basis(const Group& G, const SubgroupHandle& H) {
    if (H.parent != &G) throw InvalidArgument("subgroup belongs to a different group");
    for (int a : H.elements)
        for (int b : H.elements)
            if (G.mul(a, b) != G.mul(b, a))
                throw NonAbelianSubgroup("abelian basis of a non-abelian subgroup");
    // greedy: take elements of largest order whose span meets the previous
    // span trivially; inside a finite abelian group the maximal-order element
    // generates a direct summand, so the greedy choice never gets stuck
    std::vector<int> sorted = H.elements;
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
        int oa = element_order(G, a), ob = element_order(G, b);
        return oa != ob ? oa > ob : a < b;
    });
    AbelianBasis basis;
    basis.parent = &G;
    std::vector<int> span = {0};
    for (int g : sorted) {
        if (static_cast<int>(span.size()) == H.order()) break;
        if (g == 0) continue;
        int d = element_order(G, g);
        std::vector<int> seed = basis.generators;
        seed.push_back(g);
        SubgroupHandle trial = generated_subgroup(G, seed);
        if (trial.order() == static_cast<int>(span.size()) * d) {
            basis.generators.push_back(g);
            basis.orders.push_back(d);
            span = trial.elements;
        }
    }
    long long prod = 1;
    for (int d : basis.orders) prod *= d;
    if (prod != H.order())
        throw InvariantViolation("abelian basis extraction failed to span the subgroup");
    // exponent tables by direct enumeration of all tuples
    const size_t r = basis.orders.size();
    std::vector<int> tup(r, 0);
    while (true) {
        int prodval = 0;
        for (size_t i = 0; i < r; ++i)
            prodval = G.mul(prodval, G.power(basis.generators[i], tup[i]));
        if (!basis.exponents.emplace(prodval, tup).second)
            throw InvariantViolation("abelian basis tuples are not unique");
        size_t i = r;
        while (i-- > 0) {
            if (++tup[i] < basis.orders[i]) break;
            tup[i] = 0;
            if (i == 0) goto done;
        }
        if (r == 0) break;
    }
done:
    if (basis.exponents.size() != static_cast<size_t>(H.order()))
        throw InvariantViolation("abelian basis does not enumerate the subgroup");
    return basis;
}

namespace {

std::vector<std::string> resolution_candidates(const Group& G) {
    std::vector<std::string> cand = G.labels;
    for (const auto& [nm, idx] : G.gens) cand.push_back(nm);
    return cand;
}

}  // namespace

int resolve_element(const Group& G, const std::string& raw) {
    std::string word;
    for (char c : raw)
        if (!isspace(static_cast<unsigned char>(c))) word += c;
    if (word.empty()) throw UnknownLabel("empty element word");
    for (int g = 0; g < G.n; ++g)
        if (G.labels[g] == word) return g;
    // word evaluation: longest-match generator tokens, optional '*' and '^e'
    size_t pos = 0;
    int acc = 0;
    bool any = false;
    while (pos < word.size()) {
        if (word[pos] == '*') { ++pos; continue; }
        int base = -1;
        size_t len = 0;
        for (const auto& [nm, idx] : G.gens)
            if (nm.size() > len && word.compare(pos, nm.size(), nm) == 0) {
                base = idx;
                len = nm.size();
            }
        if (base < 0 && word[pos] == '1') { base = 0; len = 1; }
        if (base < 0)
            throw UnknownLabel("cannot resolve '" + raw + "' in " + G.name +
                                   " (stuck at position " + std::to_string(pos) + ")",
                               closest_matches(word, resolution_candidates(G)));
        pos += len;
        long long e = 1;
        if (pos < word.size() && word[pos] == '^') {
            ++pos;
            size_t start = pos;
            if (pos < word.size() && (word[pos] == '-' || word[pos] == '+')) ++pos;
            while (pos < word.size() && isdigit(static_cast<unsigned char>(word[pos]))) ++pos;
            if (pos == start || (pos == start + 1 && !isdigit(static_cast<unsigned char>(word[start]))))
                throw UnknownLabel("malformed exponent in '" + raw + "'");
            e = std::stoll(word.substr(start, pos - start));
        }
        acc = G.mul(acc, G.power(base, e));
        any = true;
    }
    if (!any) throw UnknownLabel("empty element word");
    return acc;
}

std::vector<int> resolve_elements(const Group& G, const std::string& csv) {
    std::vector<int> out;
    std::string cur;
    int depth = 0;
    auto flush = [&]() {
        bool blank = cur.find_first_not_of(" \t") == std::string::npos;
        if (!blank) out.push_back(resolve_element(G, cur));
        cur.clear();
    };
    for (char c : csv) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) { flush(); continue; }
        cur += c;
    }
    flush();
    return out;
}

}  // namespace gint

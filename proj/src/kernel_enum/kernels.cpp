#include "contralab/kernel_enum/kernels.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace contralab {

namespace {

BigInt fact(long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt dfact(long m) {
    BigInt r = 1;
    for (long j = m; j > 1; j -= 2) r *= j;
    return r;
}

template <class Fn>
void for_each_permutation(int n, Fn fn) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do fn(p);
    while (std::next_permutation(p.begin(), p.end()));
}

// ---- undirected multigraphs -------------------------------------------------

std::vector<int> pair_vector(const Multigraph& M) {
    std::vector<int> mat(M.v * M.v, 0);
    for (auto [x, y] : M.edges) {
        mat[x * M.v + y]++;
        if (x != y) mat[y * M.v + x]++;
    }
    return mat;
}

std::vector<int> permuted_pairs(const std::vector<int>& mat, int v, const std::vector<int>& p) {
    std::vector<int> out(v * v);
    for (int x = 0; x < v; ++x)
        for (int y = 0; y < v; ++y) out[p[x] * v + p[y]] = mat[x * v + y];
    return out;
}

Multigraph from_matrix(const std::vector<int>& mat, int v) {
    Multigraph M;
    M.v = v;
    for (int x = 0; x < v; ++x)
        for (int y = x; y < v; ++y)
            for (int k = 0; k < mat[x * v + y]; ++k) M.edges.emplace_back(x, y);
    return M;
}

void cubic_search(int v, int x, int y, std::vector<int>& rem, std::vector<std::pair<int, int>>& edges,
                  std::vector<MultigraphEntry>& out) {
    if (x == v) {
        Multigraph M{v, edges};
        out.push_back({M, kappa_multigraph(M)});
        return;
    }
    if (y == v) {
        if (rem[x] != 0) return;
        cubic_search(v, x + 1, x + 1, rem, edges, out);
        return;
    }
    int cap = (x == y) ? rem[x] / 2 : std::min(rem[x], rem[y]);
    for (int k = 0; k <= cap; ++k) {
        rem[x] -= (x == y ? 2 * k : k);
        if (x != y) rem[y] -= k;
        for (int i = 0; i < k; ++i) edges.emplace_back(x, y);
        cubic_search(v, x, y + 1, rem, edges, out);
        for (int i = 0; i < k; ++i) edges.pop_back();
        rem[x] += (x == y ? 2 * k : k);
        if (x != y) rem[y] += k;
    }
}

// ---- implication kernels ----------------------------------------------------

using Arc = std::pair<int, int>;

Arc complement_arc(Arc e) { return {complement(e.second), complement(e.first)}; }

Arc class_key(Arc e) { return std::min(e, complement_arc(e)); }

bool is_self(Arc e) { return e.second == complement(e.first); }

std::map<Arc, int> arc_counts(const std::vector<Arc>& arcs) {
    std::map<Arc, int> c;
    for (auto e : arcs) c[e]++;
    return c;
}

// reach[a] bitmask of literals reachable from a by a nonempty path
std::vector<unsigned> closure(int L, const std::vector<Arc>& arcs) {
    std::vector<unsigned> reach(L, 0);
    for (auto [a, b] : arcs) reach[a] |= 1u << b;
    for (int k = 0; k < L; ++k)
        for (int a = 0; a < L; ++a)
            if (reach[a] >> k & 1) reach[a] |= reach[k];
    return reach;
}

bool contradictory_arcs(int L, const std::vector<Arc>& arcs) {
    if (arcs.empty()) return false;
    auto reach = closure(L, arcs);
    std::vector<bool> present(L, false);
    for (auto [a, b] : arcs) present[a] = present[b] = true;
    for (int a = 0; a < L; ++a)
        if (present[a] && !(reach[a] >> complement(a) & 1)) return false;
    return true;
}

struct ArcClass {
    Arc rep;
    bool self;
    int unit;  // arcs added per multiplicity step along rep
    std::vector<std::pair<int, int>> degree_delta;  // (literal, degree increase per step)
};

std::vector<ArcClass> arc_classes(int L) {
    std::vector<ArcClass> out;
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) {
            Arc e{a, b};
            if (class_key(e) != e) continue;
            ArcClass c;
            c.rep = e;
            c.self = is_self(e);
            std::map<int, int> d;
            if (c.self) {
                c.unit = 2;
                d[a] += 2;
                d[b] += 2;
            } else {
                c.unit = 1;
                Arc f = complement_arc(e);
                d[e.first]++;
                d[e.second]++;
                d[f.first]++;
                d[f.second]++;
            }
            c.degree_delta.assign(d.begin(), d.end());
            out.push_back(c);
        }
    return out;
}

void kernel_search(const std::vector<ArcClass>& classes, size_t i, std::vector<int>& rem,
                   std::vector<int>& mult, const std::function<void(const std::vector<int>&)>& emit) {
    if (i == classes.size()) {
        for (int r : rem)
            if (r != 0) return;
        emit(mult);
        return;
    }
    const ArcClass& c = classes[i];
    int steps = 0;
    while (true) {
        bool ok = true;
        for (auto [lit, d] : c.degree_delta)
            if (rem[lit] < d * steps) ok = false;
        if (!ok) break;
        for (auto [lit, d] : c.degree_delta) rem[lit] -= d * steps;
        mult[i] = steps * c.unit;
        kernel_search(classes, i + 1, rem, mult, emit);
        for (auto [lit, d] : c.degree_delta) rem[lit] += d * steps;
        ++steps;
    }
    mult[i] = 0;
}

std::vector<Arc> arcs_from(const std::vector<ArcClass>& classes, const std::vector<int>& mult) {
    std::vector<Arc> arcs;
    for (size_t i = 0; i < classes.size(); ++i) {
        if (mult[i] == 0) continue;
        for (int k = 0; k < mult[i]; ++k) {
            arcs.push_back(classes[i].rep);
            if (!classes[i].self) arcs.push_back(complement_arc(classes[i].rep));
        }
    }
    std::sort(arcs.begin(), arcs.end());
    return arcs;
}

bool minimal_kernel(int L, const std::vector<ArcClass>& classes, const std::vector<int>& mult) {
    std::vector<size_t> present;
    for (size_t i = 0; i < classes.size(); ++i)
        if (mult[i] > 0) present.push_back(i);
    size_t c = present.size();
    for (unsigned long s = 1; s + 1 < (1ul << c); ++s) {
        std::vector<Arc> sub;
        for (size_t j = 0; j < c; ++j) {
            if (!(s >> j & 1)) continue;
            const ArcClass& ac = classes[present[j]];
            sub.push_back(ac.rep);
            if (!ac.self) sub.push_back(complement_arc(ac.rep));
        }
        if (contradictory_arcs(L, sub)) return false;
    }
    return true;
}

struct SignedPermutation {
    std::vector<int> perm;
    unsigned flips;
    int apply(int lit) const { return 2 * perm[lit >> 1] + ((lit & 1) ^ (flips >> (lit >> 1) & 1)); }
};

std::vector<SignedPermutation> hyperoctahedral_group(int n) {
    std::vector<SignedPermutation> g;
    for_each_permutation(n, [&](const std::vector<int>& p) {
        for (unsigned f = 0; f < (1u << n); ++f) g.push_back({p, f});
    });
    return g;
}

std::vector<Arc> relabel(const SignedPermutation& s, const std::vector<Arc>& arcs) {
    std::vector<Arc> out;
    out.reserve(arcs.size());
    for (auto [a, b] : arcs) out.emplace_back(s.apply(a), s.apply(b));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

// ---- Multigraph ---------------------------------------------------------------

int Multigraph::multiplicity(int x, int y) const {
    if (x > y) std::swap(x, y);
    return static_cast<int>(std::count(edges.begin(), edges.end(), std::make_pair(x, y)));
}

std::vector<int> Multigraph::degrees() const {
    std::vector<int> d(v, 0);
    for (auto [x, y] : edges) {
        d[x]++;
        d[y]++;
    }
    return d;
}

bool Multigraph::operator==(const Multigraph& o) const { return v == o.v && edges == o.edges; }

Rational kappa_multigraph(const Multigraph& M) {
    BigInt den = 1;
    auto mat = pair_vector(M);
    for (int x = 0; x < M.v; ++x) {
        int loops = mat[x * M.v + x];
        den *= BigInt(1) << loops;
        den *= fact(loops);
        for (int y = x + 1; y < M.v; ++y) den *= fact(mat[x * M.v + y]);
    }
    return ratio(1, den);
}

std::vector<MultigraphEntry> enumerate_cubic_multigraphs(int r) {
    if (r < 1 || r > 3) throw KernelError("cubic multigraph enumeration supports r in {1,2,3}");
    int v = 2 * r;
    std::vector<int> rem(v, 3);
    std::vector<std::pair<int, int>> edges;
    std::vector<MultigraphEntry> out;
    cubic_search(v, 0, 0, rem, edges, out);
    return out;
}

std::vector<MultigraphClass> cubic_multigraph_classes(int r) {
    auto all = enumerate_cubic_multigraphs(r);
    int v = 2 * r;
    std::map<std::vector<int>, MultigraphClass> classes;
    for (const auto& e : all) {
        auto mat = pair_vector(e.graph);
        std::vector<int> best;
        long autos = 0;
        for_each_permutation(v, [&](const std::vector<int>& p) {
            auto q = permuted_pairs(mat, v, p);
            if (best.empty() || q < best) best = q;
            if (q == mat) ++autos;
        });
        auto it = classes.find(best);
        if (it == classes.end()) {
            MultigraphClass c;
            c.representative = from_matrix(best, v);
            c.kappa = e.kappa;
            c.vertex_automorphisms = autos;
            c.full_automorphisms = Rational(autos) / e.kappa;
            it = classes.emplace(best, c).first;
        }
        it->second.labelled_count++;
    }
    std::vector<MultigraphClass> out;
    for (auto& [k, c] : classes) out.push_back(c);
    return out;
}

MultigraphSums cubic_multigraph_sums(int r) {
    MultigraphSums s;
    for (const auto& e : enumerate_cubic_multigraphs(r)) s.labelled += e.kappa;
    s.labelled /= fact(2 * r);
    for (const auto& c : cubic_multigraph_classes(r)) {
        s.canonical += c.kappa / c.vertex_automorphisms;
        s.automorphism += 1 / c.full_automorphisms;
    }
    s.labelled.canonicalize();
    s.canonical.canonicalize();
    s.automorphism.canonicalize();
    return s;
}

// ---- ImplicationKernel --------------------------------------------------------

int ImplicationKernel::multiplicity(int a, int b) const {
    return static_cast<int>(std::count(arcs.begin(), arcs.end(), Arc{a, b}));
}

bool ImplicationKernel::complement_closed() const {
    auto c = arc_counts(arcs);
    for (auto [e, k] : c) {
        auto f = complement_arc(e);
        auto it = c.find(f);
        if (it == c.end() || it->second != k) return false;
    }
    return true;
}

bool ImplicationKernel::contradictory() const { return contradictory_arcs(2 * pairs, arcs); }

std::vector<std::pair<int, int>> ImplicationKernel::degrees() const {
    std::vector<std::pair<int, int>> d(2 * pairs, {0, 0});
    for (auto [a, b] : arcs) {
        d[a].second++;
        d[b].first++;
    }
    return d;
}

bool ImplicationKernel::cubic() const {
    for (auto [in, out] : degrees())
        if (in + out != 3) return false;
    return true;
}

int ImplicationKernel::excess_twice() const {
    int present = 0;
    for (auto [in, out] : degrees())
        if (in + out > 0) ++present;
    return static_cast<int>(arcs.size()) - present;
}

void ImplicationKernel::normalize() { std::sort(arcs.begin(), arcs.end()); }

Rational kappa_implication(const ImplicationKernel& K) {
    if (!K.complement_closed()) throw KernelError("kernel is not complement-closed");
    BigInt den = 1;
    for (auto [e, k] : arc_counts(K.arcs)) den *= dfact(k);
    return ratio(1, den);
}

Rational kappa_implication_class(const ImplicationKernel& K) {
    if (!K.complement_closed()) throw KernelError("kernel is not complement-closed");
    BigInt den = 1;
    for (auto [e, k] : arc_counts(K.arcs)) {
        if (class_key(e) != e) continue;
        if (is_self(e)) {
            if (k % 2) throw KernelError("self-complementary arc with odd multiplicity");
            den *= dfact(k);
        } else {
            den *= fact(k);
        }
    }
    return ratio(1, den);
}

Rational kappa_sumrep(const std::vector<std::pair<int, int>>& arcs) {
    BigInt den = 1;
    for (auto [e, k] : arc_counts(arcs)) den *= fact(k);
    return ratio(1, den);
}

std::vector<ContradictoryKernelEntry> enumerate_cubic_contradictory_kernels(int r) {
    if (r < 1 || r > 2) throw KernelError("contradictory kernel enumeration supports r in {1,2}");
    const int n = 2 * r, L = 2 * n;
    auto classes = arc_classes(L);
    auto group = hyperoctahedral_group(n);
    std::vector<ContradictoryKernelEntry> out;
    std::vector<int> rem(L, 3), mult(classes.size(), 0);
    kernel_search(classes, 0, rem, mult, [&](const std::vector<int>& m) {
        auto arcs = arcs_from(classes, m);
        if (!contradictory_arcs(L, arcs)) return;
        ContradictoryKernelEntry e;
        e.kernel.pairs = n;
        e.kernel.arcs = arcs;
        e.kappa = kappa_implication_class(e.kernel);
        e.kappa_double_factorial = kappa_implication(e.kernel);
        e.minimal = minimal_kernel(L, classes, m);
        long stab = 0;
        for (const auto& g : group)
            if (relabel(g, arcs) == arcs) ++stab;
        e.hyperoctahedral_orbit = static_cast<long>(group.size()) / stab;
        out.push_back(std::move(e));
    });
    return out;
}

ContradictorySums contradictory_sums(int r) {
    auto kernels = enumerate_cubic_contradictory_kernels(r);
    const int n = 2 * r;
    auto group = hyperoctahedral_group(n);
    ContradictorySums s;
    std::map<std::vector<Arc>, Rational> classes;
    for (const auto& e : kernels) {
        s.C_all += e.kappa;
        s.C_all_double_factorial += e.kappa_double_factorial;
        if (e.minimal) {
            s.C_minimal += e.kappa;
            s.C_minimal_double_factorial += e.kappa_double_factorial;
            s.minimal_kernels++;
        }
        std::vector<Arc> best;
        long stab = 0;
        for (const auto& g : group) {
            auto img = relabel(g, e.kernel.arcs);
            if (best.empty() || img < best) best = img;
            if (img == e.kernel.arcs) ++stab;
        }
        if (!classes.count(best)) classes[best] = e.kappa / stab;
    }
    s.labelled_kernels = static_cast<long>(kernels.size());
    s.classes = static_cast<long>(classes.size());
    Rational norm = ratio(1, (BigInt(1) << (3 * r)) * fact(n));
    s.C_all *= norm;
    s.C_minimal *= norm;
    s.C_all_double_factorial *= norm;
    s.C_minimal_double_factorial *= norm;
    for (auto& [k, v] : classes) s.C_canonical += v;
    s.C_canonical /= BigInt(1) << r;
    for (Rational* q : {&s.C_all, &s.C_minimal, &s.C_all_double_factorial, &s.C_minimal_double_factorial, &s.C_canonical})
        q->canonicalize();
    return s;
}

namespace {

// Per-pair choices: each complementary pair of kernel arcs contributes one of its two arcs.
std::vector<std::pair<Arc, Arc>> complementary_pairs(const ImplicationKernel& C) {
    std::vector<std::pair<Arc, Arc>> pairs;
    for (auto [e, k] : arc_counts(C.arcs)) {
        if (class_key(e) != e) continue;
        if (is_self(e)) {
            if (k % 2) throw KernelError("self-complementary arc with odd multiplicity");
            for (int i = 0; i < k / 2; ++i) pairs.push_back({e, e});
        } else {
            for (int i = 0; i < k; ++i) pairs.push_back({e, complement_arc(e)});
        }
    }
    return pairs;
}

void validate_sumrep(const ImplicationKernel& C, const std::vector<Arc>& pi) {
    if (!C.complement_closed()) throw KernelError("kernel is not complement-closed");
    auto c = arc_counts(C.arcs);
    auto p = arc_counts(pi);
    for (auto [e, k] : p)
        if (!c.count(e)) throw KernelError("sum-representation uses an arc outside the kernel");
    for (auto [e, k] : c) {
        if (class_key(e) != e) continue;
        int chosen = p.count(e) ? p[e] : 0;
        if (is_self(e)) {
            if (chosen != k / 2) throw KernelError("sum-representation is not one arc per complementary pair");
        } else {
            auto f = complement_arc(e);
            int other = p.count(f) ? p[f] : 0;
            if (chosen + other != k) throw KernelError("sum-representation is not one arc per complementary pair");
        }
    }
}

}  // namespace

Rational sum_rep_multiplicity(const ImplicationKernel& C, const std::vector<std::pair<int, int>>& pi,
                              KappaConvention convention) {
    validate_sumrep(C, pi);
    Rational kc = convention == KappaConvention::class_based ? kappa_implication_class(C) : kappa_implication(C);
    Rational r = Rational(fact(C.pairs)) * kappa_sumrep(pi) / kc;
    r.canonicalize();
    return r;
}

BigInt sum_rep_multiplicity_brute(const ImplicationKernel& C, const std::vector<std::pair<int, int>>& pi) {
    validate_sumrep(C, pi);
    auto pairs = complementary_pairs(C);
    auto target = pi;
    std::sort(target.begin(), target.end());
    long hits = 0;
    for (unsigned long s = 0; s < (1ul << pairs.size()); ++s) {
        std::vector<Arc> chosen;
        for (size_t i = 0; i < pairs.size(); ++i) chosen.push_back((s >> i & 1) ? pairs[i].second : pairs[i].first);
        std::sort(chosen.begin(), chosen.end());
        if (chosen == target) ++hits;
    }
    return fact(C.pairs) * hits;
}

nlohmann::json to_json(const MultigraphEntry& e) {
    nlohmann::json arcs = nlohmann::json::array();
    for (auto [x, y] : e.graph.edges) arcs.push_back({x, y});
    return {{"vertices", e.graph.v}, {"edges", arcs}, {"kappa", rational_string(e.kappa)}};
}

nlohmann::json to_json(const ContradictoryKernelEntry& e) {
    nlohmann::json arcs = nlohmann::json::array();
    for (auto [a, b] : e.kernel.arcs) arcs.push_back({a, b});
    return {{"vertices", 2 * e.kernel.pairs},
            {"arcs", arcs},
            {"kappa", rational_string(e.kappa)},
            {"kappa_double_factorial", rational_string(e.kappa_double_factorial)},
            {"minimal", e.minimal},
            {"labelled_variants", e.hyperoctahedral_orbit}};
}

}  // namespace contralab

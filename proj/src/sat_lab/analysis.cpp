#include "contralab/sat_lab/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace contralab {

namespace {

inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return mix(h ^ mix(v)); }

std::uint64_t hash_sorted(std::vector<std::uint64_t> v, std::uint64_t seed) {
    std::sort(v.begin(), v.end());
    std::uint64_t h = seed;
    for (auto x : v) h = combine(h, x);
    return combine(h, v.size());
}

// Colour refinement over arcs and the complement pairing.
std::string shape_hash(const std::vector<int>& vertices, const std::vector<std::pair<int, int>>& arcs) {
    const std::size_t V = vertices.size();
    auto local = [&](int lit) {
        return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), lit) - vertices.begin());
    };
    std::vector<std::vector<std::size_t>> out(V), in(V);
    std::vector<long> comp(V, -1);
    std::vector<int> loops(V, 0);
    for (auto [u, v] : arcs) {
        auto a = local(u), b = local(v);
        out[a].push_back(b);
        in[b].push_back(a);
        if (a == b) ++loops[a];
    }
    for (std::size_t i = 0; i < V; ++i) {
        auto j = local(negate(vertices[i]));
        if (j < V && vertices[j] == negate(vertices[i])) comp[i] = static_cast<long>(j);
    }
    std::vector<std::uint64_t> colour(V);
    for (std::size_t i = 0; i < V; ++i)
        colour[i] = combine(combine(combine(in[i].size(), out[i].size()), loops[i]), comp[i] >= 0);
    for (std::size_t round = 0; round < V; ++round) {
        std::vector<std::uint64_t> next(V);
        for (std::size_t i = 0; i < V; ++i) {
            std::vector<std::uint64_t> o, n;
            for (auto j : out[i]) o.push_back(colour[j]);
            for (auto j : in[i]) n.push_back(colour[j]);
            std::uint64_t h = combine(colour[i], hash_sorted(o, 1));
            h = combine(h, hash_sorted(n, 2));
            next[i] = combine(h, comp[i] >= 0 ? colour[comp[i]] : 3);
        }
        colour.swap(next);
    }
    std::uint64_t tag = combine(hash_sorted(colour, 4), arcs.size());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(tag));
    return buf;
}

}  // namespace

Kernel cancel_to_kernel(const std::vector<int>& vertices, const std::vector<std::pair<int, int>>& arcs,
                        const std::vector<int>& order) {
    std::vector<int> verts = vertices;
    std::sort(verts.begin(), verts.end());
    const int V = static_cast<int>(verts.size());
    auto local = [&](int lit) {
        auto it = std::lower_bound(verts.begin(), verts.end(), lit);
        if (it == verts.end() || *it != lit) throw std::logic_error("arc endpoint outside the vertex set");
        return static_cast<int>(it - verts.begin());
    };
    std::vector<std::pair<int, int>> a;
    std::vector<char> alive;
    std::vector<std::vector<int>> out(V), in(V);
    std::vector<int> indeg(V, 0), outdeg(V, 0);
    auto add = [&](int u, int v) {
        int id = static_cast<int>(a.size());
        a.emplace_back(u, v);
        alive.push_back(1);
        out[u].push_back(id);
        in[v].push_back(id);
        ++outdeg[u];
        ++indeg[v];
    };
    for (auto [u, v] : arcs) add(local(u), local(v));

    std::vector<int> seq = order;
    if (seq.empty()) {
        seq.resize(V);
        std::iota(seq.begin(), seq.end(), 0);
    }
    if (static_cast<int>(seq.size()) != V) throw std::invalid_argument("order must permute the vertices");
    std::vector<char> removed(V, 0);
    auto first_alive = [&](const std::vector<int>& ids) {
        for (int id : ids)
            if (alive[id]) return id;
        return -1;
    };
    // Cancelling v leaves every other in/out degree unchanged, so one pass reaches the fixpoint.
    for (int v : seq) {
        if (indeg[v] != 1 || outdeg[v] != 1) continue;
        int ai = first_alive(in[v]), ao = first_alive(out[v]);
        if (ai == ao) continue;  // lone loop: frozen
        int u = a[ai].first, w = a[ao].second;
        alive[ai] = alive[ao] = 0;
        --outdeg[u];
        --indeg[w];
        removed[v] = 1;
        add(u, w);
    }

    Kernel k;
    for (int v = 0; v < V; ++v)
        if (!removed[v]) {
            k.vertices.push_back(verts[v]);
            k.degree_profile.emplace_back(indeg[v], outdeg[v]);
        }
    for (std::size_t id = 0; id < a.size(); ++id)
        if (alive[id]) k.arcs.emplace_back(verts[a[id].first], verts[a[id].second]);
    std::sort(k.arcs.begin(), k.arcs.end());
    std::sort(k.degree_profile.begin(), k.degree_profile.end());
    k.cubic = !k.vertices.empty() &&
              std::all_of(k.degree_profile.begin(), k.degree_profile.end(), [](auto p) { return p.first + p.second == 3; });
    k.shape_tag = shape_hash(k.vertices, k.arcs);
    return k;
}

ContradictionReport contradiction_report(const ImplicationDigraph& d, const SccLabels& s) {
    ContradictionReport r;
    for (int v = 0; v < d.variables(); ++v)
        if (s.component[2 * v] == s.component[2 * v + 1]) r.contradictory_variables.push_back(v);
    if (r.contradictory_variables.empty()) return r;
    r.satisfiable = false;

    std::vector<int> lits;
    for (int v : r.contradictory_variables) {
        lits.push_back(2 * v);
        lits.push_back(2 * v + 1);
    }
    auto inside = [&](int lit) { return s.component[lit] == s.component[negate(lit)]; };
    std::vector<std::pair<int, int>> arcs;
    for (int u : lits)
        for (int w : d.successors(u)) {
            bool induced = inside(w);
            if (induced != (s.component[u] == s.component[w]))
                throw std::logic_error("induced arcs differ from component-internal arcs");
            if (induced) arcs.emplace_back(u, w);
        }
    r.component_arcs = static_cast<long>(arcs.size());
    long diff = r.component_arcs - static_cast<long>(lits.size());
    if (diff % 2 != 0) throw std::logic_error("odd arc surplus on a complement-closed component");
    r.excess = static_cast<int>(diff / 2);
    r.kernel = cancel_to_kernel(lits, arcs);
    r.kernel_cubic = r.kernel.cubic;
    return r;
}

ContradictionReport contradiction_report(const ImplicationDigraph& d) { return contradiction_report(d, scc(d)); }

std::string PathMultiplicity::str() const {
    switch (kind) {
    case Kind::exact: return std::to_string(k);
    case Kind::at_least: return ">=" + std::to_string(k);
    case Kind::cyclic: return "cyclic";
    }
    return "?";
}

namespace {

enum : char { kUnknown = 0, kSpine = 1, kClear = 2 };

struct Search {
    const ImplicationDigraph& d;
    const SccLabels& s;
    const SpineOptions& opt;
    std::vector<int> stamp;
    std::vector<int> parent;
    std::vector<long> paths;
    std::vector<int> queue;
    int gen = 0;
    long visits = 0;

    Search(const ImplicationDigraph& d_, const SccLabels& s_, const SpineOptions& o)
        : d(d_), s(s_), opt(o), stamp(d_.nodes(), 0) {}

    bool over_budget() const { return opt.visit_budget > 0 && visits > opt.visit_budget; }

    // Full forward closure of x with BFS parents.
    void closure(int x) {
        ++gen;
        if (parent.empty()) parent.assign(d.nodes(), -1);
        queue.clear();
        queue.push_back(x);
        stamp[x] = gen;
        parent[x] = -1;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int v = queue[i];
            ++visits;
            for (int w : d.successors(v))
                if (stamp[w] != gen) {
                    stamp[w] = gen;
                    parent[w] = v;
                    queue.push_back(w);
                }
        }
    }

    PathMultiplicity multiplicity(int x) {
        // closure(x) is current: region = nodes on some x ~> ~x walk
        std::vector<int> region;
        for (int v : queue)
            if (stamp[negate(v)] == gen) region.push_back(v);
        for (int v : region) {
            if (s.size[s.component[v]] > 1) return {PathMultiplicity::Kind::cyclic, 0};
            for (int w : d.successors(v))
                if (w == v) return {PathMultiplicity::Kind::cyclic, 0};
        }
        if (paths.empty()) paths.assign(d.nodes(), 0);
        // components are numbered sinks first, so descending labels are a topological order
        std::sort(region.begin(), region.end(),
                  [&](int a, int b) { return s.component[a] > s.component[b]; });
        // arcs pair off under the mirror map, so x ~> ~x paths come in distinct mirror pairs
        const long cap = 2L * opt.k_cap;
        paths[x] = 1;
        for (int v : region)
            for (int w : d.successors(v))
                if (stamp[negate(w)] == gen) paths[w] = std::min(cap, paths[w] + paths[v]);
        long k = paths[negate(x)] / 2;
        for (int v : region) paths[v] = 0;
        if (k >= opt.k_cap) return {PathMultiplicity::Kind::at_least, opt.k_cap};
        return {PathMultiplicity::Kind::exact, static_cast<int>(k)};
    }

    SpinalPath witness(int y) {
        std::vector<int> path;
        for (int v = negate(y); v != -1; v = parent[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        std::unordered_map<int, std::size_t> first;
        for (std::size_t t = 0; t < path.size(); ++t) {
            auto [it, fresh] = first.emplace(variable(path[t]), t);
            if (fresh) continue;
            std::size_t j = it->second;
            SpinalPath w;
            w.to_x.assign(path.begin(), path.begin() + static_cast<long>(j) + 1);
            w.through.assign(path.begin() + static_cast<long>(j), path.begin() + static_cast<long>(t) + 1);
            for (auto r = w.to_x.rbegin(); r != w.to_x.rend(); ++r) w.back.push_back(negate(*r));
            return w;
        }
        throw std::logic_error("spine path without a repeated variable");
    }
};

}  // namespace

SpineReport spine_report(const ImplicationDigraph& d, const SccLabels& s, const SpineOptions& opt) {
    if (opt.k_cap < 1) throw SatError("k_cap must be at least 1");
    const int N = d.nodes();
    SpineReport rep;
    Search S(d, s, opt);
    std::vector<char> state(N, kUnknown);
    std::vector<int> order;
    order.reserve(N);
    for (int v = 0; v < N; ++v) {
        if (d.out_degree(v) == 0) state[v] = kClear;
        else if (d.in_degree(v) == 0) order.push_back(v);
    }
    for (int v = 0; v < N; ++v)
        if (state[v] == kUnknown && d.in_degree(v) != 0) order.push_back(v);

    std::vector<int> back;
    for (int x : order) {
        if (state[x] != kUnknown) continue;
        int gen = ++S.gen;
        S.queue.clear();
        S.queue.push_back(x);
        S.stamp[x] = gen;
        bool found = false;
        for (std::size_t i = 0; i < S.queue.size() && !found; ++i) {
            ++S.visits;
            for (int w : d.successors(S.queue[i])) {
                if (S.stamp[w] == gen) continue;
                if (state[w] == kSpine || S.stamp[negate(w)] == gen) {
                    found = true;
                    break;
                }
                S.stamp[w] = gen;
                S.queue.push_back(w);
            }
        }
        if (S.over_budget()) {
            rep.budget_exceeded = true;
            rep.visits = S.visits;
            return rep;
        }
        if (!found) {
            for (int v : S.queue) state[v] = kClear;
            continue;
        }
        // ancestors of a spine literal are spine literals
        state[x] = kSpine;
        back.assign(1, x);
        while (!back.empty()) {
            int v = back.back();
            back.pop_back();
            ++S.visits;
            for (int p : d.successors(negate(v))) {
                int u = negate(p);
                if (state[u] != kSpine) {
                    state[u] = kSpine;
                    back.push_back(u);
                }
            }
        }
    }
    for (int v = 0; v < N; ++v)
        if (state[v] == kSpine) rep.literals.push_back(v);

    if (opt.multiplicities || opt.witnesses) {
        for (int x : rep.literals) {
            S.closure(x);
            if (opt.multiplicities) rep.multiplicity.push_back(S.multiplicity(x));
            if (opt.witnesses) rep.witnesses.push_back(S.witness(x));
            if (S.over_budget()) {
                rep = SpineReport{};
                rep.budget_exceeded = true;
                rep.visits = S.visits;
                return rep;
            }
        }
    }
    rep.visits = S.visits;
    return rep;
}

SpineReport spine_report(const ImplicationDigraph& d, int k_cap) {
    SpineOptions opt;
    opt.k_cap = k_cap;
    opt.witnesses = true;
    return spine_report(d, scc(d), opt);
}

long count_simple_paths(const ImplicationDigraph& d, int from, int to, long cap) {
    std::vector<char> on(d.nodes(), 0);
    long count = 0;
    auto dfs = [&](auto&& self, int v) -> void {
        if (count >= cap) return;
        if (v == to) {
            ++count;
            return;
        }
        on[v] = 1;
        for (int w : d.successors(v))
            if (!on[w]) self(self, w);
        on[v] = 0;
    };
    dfs(dfs, from);
    return std::min(count, cap);
}

nlohmann::json to_json(const ContradictionReport& r) {
    nlohmann::json j;
    j["satisfiable"] = r.satisfiable;
    j["contradictory_variables"] = r.contradictory_variables;
    j["excess"] = r.excess ? nlohmann::json(*r.excess) : nlohmann::json(nullptr);
    if (!r.satisfiable) {
        j["component_arcs"] = r.component_arcs;
        nlohmann::json profile = nlohmann::json::array();
        for (auto [i, o] : r.kernel.degree_profile) profile.push_back({i, o});
        j["kernel_degree_profile"] = profile;
        j["kernel_arcs"] = r.kernel.arcs;
        j["kernel_cubic"] = r.kernel_cubic;
        j["kernel_shape_tag"] = r.kernel.shape_tag;
    }
    return j;
}

nlohmann::json to_json(const SpineReport& r) {
    nlohmann::json j;
    j["budget_exceeded"] = r.budget_exceeded;
    j["size"] = r.literals.size();
    nlohmann::json lits = nlohmann::json::array();
    for (std::size_t i = 0; i < r.literals.size(); ++i) {
        nlohmann::json e;
        e["literal"] = r.literals[i];
        if (i < r.multiplicity.size()) e["paths"] = r.multiplicity[i].str();
        if (i < r.witnesses.size() && r.witnesses[i]) {
            e["witness"] = {{"to_x", r.witnesses[i]->to_x},
                            {"through", r.witnesses[i]->through},
                            {"back", r.witnesses[i]->back}};
        }
        lits.push_back(e);
    }
    j["literals"] = lits;
    return j;
}

}  // namespace contralab

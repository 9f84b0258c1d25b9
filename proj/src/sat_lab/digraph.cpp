#include "contralab/sat_lab/digraph.hpp"

#include <algorithm>

namespace contralab {

ImplicationDigraph::ImplicationDigraph(int n, const std::vector<std::pair<int, int>>& arcs) : n_(n) {
    offset_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : arcs) {
        if (u < 0 || v < 0 || u >= 2 * n || v >= 2 * n) throw SatError("arc endpoint out of range");
        ++offset_[u + 1];
    }
    for (int v = 0; v < 2 * n; ++v) offset_[v + 1] += offset_[v];
    target_.resize(arcs.size());
    std::vector<int> fill(offset_.begin(), offset_.end() - 1);
    for (auto [u, v] : arcs) target_[fill[u]++] = v;
}

std::vector<int> ImplicationDigraph::predecessors(int v) const {
    std::vector<int> out;
    for (int s : successors(negate(v))) out.push_back(negate(s));
    return out;
}

std::vector<std::pair<int, int>> ImplicationDigraph::arc_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(target_.size());
    for (int u = 0; u < nodes(); ++u)
        for (int v : successors(u)) out.emplace_back(u, v);
    return out;
}

bool ImplicationDigraph::skew_symmetric() const {
    auto a = arc_list();
    auto b = a;
    for (auto& [u, v] : b) std::tie(u, v) = std::pair{negate(v), negate(u)};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

ImplicationDigraph build_implication(const Formula& f) {
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(2 * f.clauses.size());
    for (const auto& c : f.clauses) {
        arcs.emplace_back(negate(c.a), c.b);
        arcs.emplace_back(negate(c.b), c.a);
    }
    return ImplicationDigraph(f.n, arcs);
}

SccLabels scc(const ImplicationDigraph& d) {
    const int N = d.nodes();
    SccLabels out;
    out.component.assign(N, -1);
    out.size.reserve(N);
    thread_local std::vector<int> outdeg, queue, index, low, stack, frame_node, frame_edge;

    // Nodes that cannot reach a cycle are singleton components; peeling sinks numbers them sinks first.
    outdeg.resize(N);
    queue.clear();
    for (int v = 0; v < N; ++v) {
        outdeg[v] = d.out_degree(v);
        if (outdeg[v] == 0) queue.push_back(v);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int v = queue[i];
        out.component[v] = out.count++;
        out.size.push_back(1);
        for (int p : d.successors(negate(v))) {
            int u = negate(p);
            if (--outdeg[u] == 0) queue.push_back(u);
        }
    }
    if (static_cast<int>(queue.size()) == N) return out;

    // Tarjan on the remainder
    index.assign(N, -1);
    low.resize(N);
    stack.clear();
    frame_node.clear();
    frame_edge.clear();
    int counter = 0;
    for (int root = 0; root < N; ++root) {
        if (out.component[root] >= 0 || index[root] >= 0) continue;
        frame_node.push_back(root);
        frame_edge.push_back(0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        while (!frame_node.empty()) {
            int v = frame_node.back();
            auto succ = d.successors(v);
            int e = frame_edge.back();
            if (e < static_cast<int>(succ.size())) {
                frame_edge.back() = e + 1;
                int w = succ[e];
                if (index[w] < 0) {
                    if (out.component[w] >= 0) continue;
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    frame_node.push_back(w);
                    frame_edge.push_back(0);
                } else if (out.component[w] < 0) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            frame_node.pop_back();
            frame_edge.pop_back();
            if (!frame_node.empty()) {
                int p = frame_node.back();
                low[p] = std::min(low[p], low[v]);
            }
            if (low[v] == index[v]) {
                int c = out.count++;
                int size = 0;
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    out.component[w] = c;
                    ++size;
                    if (w == v) break;
                }
                out.size.push_back(size);
            }
        }
    }
    return out;
}

bool is_satisfiable(const ImplicationDigraph& d, const SccLabels& s) {
    for (int v = 0; v < d.variables(); ++v)
        if (s.component[2 * v] == s.component[2 * v + 1]) return false;
    return true;
}

bool is_satisfiable(const ImplicationDigraph& d) { return is_satisfiable(d, scc(d)); }

bool reaches(const ImplicationDigraph& d, int from, int to) {
    std::vector<char> seen(d.nodes(), 0);
    std::vector<int> queue{from};
    seen[from] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        if (queue[i] == to) return true;
        for (int w : d.successors(queue[i]))
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    }
    return false;
}

bool reaches_backward(const ImplicationDigraph& d, int from, int to) {
    std::vector<char> seen(d.nodes(), 0);
    std::vector<int> queue{to};
    seen[to] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        if (queue[i] == from) return true;
        for (int w : d.predecessors(queue[i]))
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    }
    return false;
}

SimpleDigraph sample_digraph(long n, long m, Rng& rng) {
    if (n < 1 || m < 0) throw SatError("sample_digraph needs n >= 1, m >= 0");
    auto L = static_cast<std::uint64_t>(2 * n);
    std::uint64_t N = L * (L - 1);
    if (static_cast<std::uint64_t>(m) > N) throw SatError("m exceeds the number of possible arcs");
    thread_local KeySet scratch;
    SimpleDigraph d;
    d.n = static_cast<int>(n);
    d.arcs.reserve(static_cast<std::size_t>(m));
    for (std::uint64_t x : sample_distinct(N, static_cast<std::uint64_t>(m), rng, scratch)) {
        auto u = x / (L - 1), r = x % (L - 1);
        auto v = r < u ? r : r + 1;
        d.arcs.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return d;
}

ConflictCount conflict_pairs(const SimpleDigraph& d) {
    thread_local KeySet present;
    present.reset(d.arcs.size());
    auto key = [&](int u, int v) { return static_cast<std::uint64_t>(u) * 2 * static_cast<std::uint64_t>(d.n) + v; };
    for (auto [u, v] : d.arcs) present.insert(key(u, v));
    ConflictCount c;
    for (auto [u, v] : d.arcs) {
        int cu = negate(v), cv = negate(u);
        if (cu == u && cv == v) {
            ++c.self_arcs;
            continue;
        }
        // count each pair once, from its lexicographically smaller arc
        if (std::pair{u, v} < std::pair{cu, cv} && present.contains(key(cu, cv))) ++c.pairs;
    }
    return c;
}

}  // namespace contralab

#pragma once

#include "contralab/sat_lab/formula.hpp"

#include <span>
#include <utility>
#include <vector>

namespace contralab {

// 2n literal nodes; clause (a v b) contributes ~a -> b and ~b -> a.
// Predecessors follow from skew symmetry: u -> v iff ~v -> ~u.
class ImplicationDigraph {
public:
    ImplicationDigraph() = default;
    ImplicationDigraph(int n, const std::vector<std::pair<int, int>>& arcs);

    int variables() const { return n_; }
    int nodes() const { return 2 * n_; }
    long arcs() const { return static_cast<long>(target_.size()); }
    std::span<const int> successors(int v) const {
        return {target_.data() + offset_[v], target_.data() + offset_[v + 1]};
    }
    int out_degree(int v) const { return offset_[v + 1] - offset_[v]; }
    int in_degree(int v) const { return out_degree(negate(v)); }
    // predecessors of v are the complements of the successors of ~v
    std::vector<int> predecessors(int v) const;
    std::vector<std::pair<int, int>> arc_list() const;
    bool skew_symmetric() const;

private:
    int n_ = 0;
    std::vector<int> offset_;
    std::vector<int> target_;
};

ImplicationDigraph build_implication(const Formula& f);

struct SccLabels {
    std::vector<int> component;  // numbered in reverse topological order (sinks first)
    std::vector<int> size;       // per component
    int count = 0;
};

SccLabels scc(const ImplicationDigraph& d);
bool is_satisfiable(const ImplicationDigraph& d, const SccLabels& s);
bool is_satisfiable(const ImplicationDigraph& d);

bool reaches(const ImplicationDigraph& d, int from, int to);
// Same question answered by a backward search from `to`.
bool reaches_backward(const ImplicationDigraph& d, int from, int to);

// Simple digraph on 2n literal nodes, no loops, distinct ordered arcs.
struct SimpleDigraph {
    int n = 0;
    std::vector<std::pair<int, int>> arcs;
};

SimpleDigraph sample_digraph(long n, long m, Rng& rng);

struct ConflictCount {
    long pairs = 0;      // {a->b, ~b->~a} with the two arcs distinct
    long self_arcs = 0;  // a -> ~a
};

ConflictCount conflict_pairs(const SimpleDigraph& d);

}  // namespace contralab

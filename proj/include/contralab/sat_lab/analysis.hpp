#pragma once

#include "contralab/sat_lab/digraph.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace contralab {

// Multidigraph on literal labels left after cancelling every in-1/out-1 vertex;
// a vertex whose only arcs form a loop is frozen.
struct Kernel {
    std::vector<int> vertices;                // sorted literal labels
    std::vector<std::pair<int, int>> arcs;    // sorted multiset
    std::vector<std::pair<int, int>> degree_profile;  // sorted (in, out) multiset
    bool cubic = false;
    std::string shape_tag;                    // relabelling-invariant hash, 16 hex digits
};

// Cancellation of arcs among `vertices`; `order` permutes the processing sequence (identity if empty).
Kernel cancel_to_kernel(const std::vector<int>& vertices, const std::vector<std::pair<int, int>>& arcs,
                        const std::vector<int>& order = {});

struct ContradictionReport {
    bool satisfiable = true;
    std::vector<int> contradictory_variables;
    std::optional<int> excess;
    long component_arcs = 0;  // induced arcs on contradictory literals
    Kernel kernel;
    bool kernel_cubic = false;
};

ContradictionReport contradiction_report(const ImplicationDigraph& d, const SccLabels& s);
ContradictionReport contradiction_report(const ImplicationDigraph& d);

// k counts x ~> ~x paths up to the mirror pairing (complement of each arc, reversed).
struct PathMultiplicity {
    enum class Kind { exact, at_least, cyclic };
    Kind kind = Kind::exact;
    int k = 0;

    std::string str() const;  // "3", ">=8", "cyclic"
    bool operator==(const PathMultiplicity&) const = default;
};

// y ~> x, x ~> ~x, ~x ~> ~y with all variables on y..x and x..~x distinct except x itself.
struct SpinalPath {
    std::vector<int> to_x;      // y .. x
    std::vector<int> through;   // x .. ~x
    std::vector<int> back;      // ~x .. ~y, the complement of to_x reversed
};

struct SpineOptions {
    int k_cap = 8;
    bool witnesses = false;
    bool multiplicities = true;
    long visit_budget = 0;  // 0 = unbounded
};

struct SpineReport {
    std::vector<int> literals;  // sorted
    std::vector<PathMultiplicity> multiplicity;          // parallel to literals (if requested)
    std::vector<std::optional<SpinalPath>> witnesses;    // parallel to literals (if requested)
    bool budget_exceeded = false;
    long visits = 0;
};

SpineReport spine_report(const ImplicationDigraph& d, const SccLabels& s, const SpineOptions& opt = {});
SpineReport spine_report(const ImplicationDigraph& d, int k_cap = 8);

// Number of simple paths from `from` to `to`, saturating at `cap`.
long count_simple_paths(const ImplicationDigraph& d, int from, int to, long cap);

nlohmann::json to_json(const ContradictionReport& r);
nlohmann::json to_json(const SpineReport& r);

}  // namespace contralab

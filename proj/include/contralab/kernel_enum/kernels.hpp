#pragma once

#include "contralab/series_core/big_float.hpp"

#include <json.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace contralab {

class KernelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Undirected multigraph on vertices 0..v-1; loops allowed, edges stored as (x <= y).
struct Multigraph {
    int v = 0;
    std::vector<std::pair<int, int>> edges;

    int multiplicity(int x, int y) const;
    std::vector<int> degrees() const;  // loops count 2
    bool operator==(const Multigraph& o) const;
};

// 1 / (prod 2^m_xx prod m_xy!)
Rational kappa_multigraph(const Multigraph& M);

struct MultigraphEntry {
    Multigraph graph;
    Rational kappa;
};

// All labelled cubic multigraphs on 2r vertices, r in {1,2,3}.
std::vector<MultigraphEntry> enumerate_cubic_multigraphs(int r);

struct MultigraphClass {
    Multigraph representative;  // canonical form
    Rational kappa;
    long vertex_automorphisms = 0;
    long labelled_count = 0;
    Rational full_automorphisms;  // vertex automorphisms times edge symmetries
};

std::vector<MultigraphClass> cubic_multigraph_classes(int r);

struct MultigraphSums {
    Rational labelled;   // sum kappa / (2r)!
    Rational canonical;  // sum kappa / |vertex Aut|
    Rational automorphism;  // sum 1 / |full Aut|
};

MultigraphSums cubic_multigraph_sums(int r);

// Literals are 2*var + polarity; the complement of literal a is a ^ 1.
inline int complement(int lit) { return lit ^ 1; }

struct ImplicationKernel {
    int pairs = 0;  // variables
    std::vector<std::pair<int, int>> arcs;  // multiset of literal arcs, kept sorted

    int multiplicity(int a, int b) const;
    bool complement_closed() const;
    bool contradictory() const;  // every literal reaches its complement
    std::vector<std::pair<int, int>> degrees() const;  // (in, out) per literal
    bool cubic() const;
    int excess_twice() const;  // #arcs - #literals with nonzero degree
    void normalize();
};

// 1 / prod over ordered literal pairs of m_xy!!
Rational kappa_implication(const ImplicationKernel& K);
// 1 / (prod over self-complementary arcs a->~a of m!! * prod over complementary pairs {a->b, ~b->~a} of m_ab!)
Rational kappa_implication_class(const ImplicationKernel& K);
// 1 / prod d_xy!
Rational kappa_sumrep(const std::vector<std::pair<int, int>>& arcs);

struct ContradictoryKernelEntry {
    ImplicationKernel kernel;
    Rational kappa;        // class-based compensation
    Rational kappa_double_factorial;  // double-factorial compensation
    bool minimal = false;
    long hyperoctahedral_orbit = 0;  // number of labelled variants
};

struct ContradictorySums {
    Rational C_all;       // 2^-3r / (2r)! sum over labelled kernels of kappa
    Rational C_minimal;
    Rational C_all_double_factorial;
    Rational C_minimal_double_factorial;
    Rational C_canonical;  // 2^-r sum over hyperoctahedral classes of kappa / |Stab|
    long labelled_kernels = 0;
    long minimal_kernels = 0;
    long classes = 0;
};

// All labelled complement-closed contradictory kernels with in+out = 3 everywhere,
// on 2r variables and 6r arcs, r in {1,2}. Disconnected unions are included.
std::vector<ContradictoryKernelEntry> enumerate_cubic_contradictory_kernels(int r);
ContradictorySums contradictory_sums(int r);

enum class KappaConvention { class_based, double_factorial };

// n! kappa(pi) / kappa(C)
Rational sum_rep_multiplicity(const ImplicationKernel& C, const std::vector<std::pair<int, int>>& pi,
                              KappaConvention convention = KappaConvention::class_based);
// Explicit count: n! times the number of per-pair arc choices that produce pi.
BigInt sum_rep_multiplicity_brute(const ImplicationKernel& C, const std::vector<std::pair<int, int>>& pi);

nlohmann::json to_json(const MultigraphEntry& e);
nlohmann::json to_json(const ContradictoryKernelEntry& e);

}  // namespace contralab

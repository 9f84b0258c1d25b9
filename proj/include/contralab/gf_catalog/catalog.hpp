#pragma once

#include "contralab/gf_catalog/params.hpp"
#include "contralab/series_core/series.hpp"

#include <functional>
#include <string>

namespace contralab {

enum class CatalogName { T, U, V, T_dir, U_dir, V_dir };

CatalogName parse_catalog_name(const std::string& s);
std::string to_string(CatalogName name);

// T rooted trees, U unrooted trees, V unicyclic components; *_dir are the oriented versions.
Series catalog_series(CatalogName name, int order, Arithmetic a = Arithmetic::exact());

// z * integral_0^z A
Series lambda_link(const Series& A);

enum class ObjectKind { simple_graphs, simple_digraphs, formulas, sum_reps };

ObjectKind parse_object_kind(const std::string& s);

BigInt count_objects(ObjectKind kind, const CountingParams& p);

// Probability that G(n,m) has only tree and unicyclic components.
Scalar prob_trees_unicycles(const CountingParams& p, Arithmetic a = Arithmetic::exact());

// Digraph window expression
//   (2n)!/|D(2n,m)| [z^2n] Lambda^L( U_dir^k/k! e^V_dir (F/z^removed) (1-2T_dir)^-y ),
// with k = 2n - m - forest_deficit trees in the forest part.
struct WindowPattern {
    // Builds the pattern factor F to the requested order.
    std::function<Series(int order, Arithmetic a)> factor;
    int lambda_count = 0;
    int removed_labels = 0;
    int forest_deficit = 0;
    Rational y = 0;

    static WindowPattern identity();
    // 8 T_dir^4 / (1 - 2 T_dir)^3 with two linked complementary pairs:
    // a contradictory pattern inside a tree component.
    static WindowPattern contradictory_tree();
};

Scalar digraph_window_expression(const CountingParams& p, const WindowPattern& pattern,
                                 Arithmetic a = Arithmetic::real());

// |D(2n,m)| / (2^m |G(2n,m)|)
BigFloat digraph_graph_ratio(long n, long m, unsigned bits = kDefaultPrecision);

}  // namespace contralab

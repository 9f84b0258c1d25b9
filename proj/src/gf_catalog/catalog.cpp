#include "contralab/gf_catalog/catalog.hpp"

namespace contralab {

namespace {

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt fact(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Series half(const Series& A) { return scale(A, ratio(1, 2)); }

Series unrooted(const Series& T) { return T - half(T * T); }

// 1/2 [log 1/(1-T) - T - T^2/2]
Series unicyclic(const Series& T) { return half(negate(log1p(negate(T))) - T - half(T * T)); }

Series oriented(const Series& A) { return half(scale_argument(A, 2)); }

Series oriented_unicyclic(const Series& Td) {
    Series two = scale(Td, 2);
    Series Td2 = Td * Td;
    return half(negate(log1p(negate(two))) - two - scale(Td2, 2)) + half(Td2);
}

Scalar normalized(const Scalar& c, const BigInt& num, const BigInt& den, Arithmetic a) {
    if (a.backend == Backend::exact) return Scalar(c.rational() * ratio(num, den));
    BigFloat v = c.real(a.precision);
    v *= BigFloat(num, a.precision);
    v /= BigFloat(den, a.precision);
    return Scalar(v);
}

}  // namespace

CatalogName parse_catalog_name(const std::string& s) {
    if (s == "T") return CatalogName::T;
    if (s == "U") return CatalogName::U;
    if (s == "V") return CatalogName::V;
    if (s == "T_dir") return CatalogName::T_dir;
    if (s == "U_dir") return CatalogName::U_dir;
    if (s == "V_dir") return CatalogName::V_dir;
    throw ParamError("unknown series name: " + s);
}

std::string to_string(CatalogName name) {
    switch (name) {
        case CatalogName::T: return "T";
        case CatalogName::U: return "U";
        case CatalogName::V: return "V";
        case CatalogName::T_dir: return "T_dir";
        case CatalogName::U_dir: return "U_dir";
        case CatalogName::V_dir: return "V_dir";
    }
    return "?";
}

Series catalog_series(CatalogName name, int order, Arithmetic a) {
    if (order < 0) throw ParamError("order must be nonnegative");
    Series T = cayley_tree(order, a);
    switch (name) {
        case CatalogName::T: return T;
        case CatalogName::U: return unrooted(T);
        case CatalogName::V: return unicyclic(T);
        case CatalogName::T_dir: return oriented(T);
        case CatalogName::U_dir: return oriented(unrooted(T));
        case CatalogName::V_dir: return oriented_unicyclic(oriented(T));
    }
    throw ParamError("unknown series name");
}

Series lambda_link(const Series& A) { return shift_up(integrate(A), 1); }

ObjectKind parse_object_kind(const std::string& s) {
    if (s == "simple_graphs") return ObjectKind::simple_graphs;
    if (s == "simple_digraphs") return ObjectKind::simple_digraphs;
    if (s == "formulas") return ObjectKind::formulas;
    if (s == "sum_reps") return ObjectKind::sum_reps;
    throw ParamError("unknown object kind: " + s);
}

BigInt count_objects(ObjectKind kind, const CountingParams& p) {
    unsigned long n = p.n, m = p.m;
    if (p.n < 1 || p.m < 0) throw ParamError("n must be positive and m nonnegative");
    unsigned long slots = 0;
    switch (kind) {
        case ObjectKind::simple_graphs: slots = n * (n - 1) / 2; break;
        case ObjectKind::simple_digraphs: slots = 2 * n * (2 * n - 1); break;
        case ObjectKind::formulas:
        case ObjectKind::sum_reps: slots = 2 * n * (n - 1); break;
    }
    if (m > slots) throw ParamError("m out of range");
    BigInt c = binomial(slots, m);
    if (kind == ObjectKind::sum_reps) mpz_mul_2exp(c.get_mpz_t(), c.get_mpz_t(), m);
    return c;
}

Scalar prob_trees_unicycles(const CountingParams& p, Arithmetic a) {
    if (p.regime != Regime::graph) throw ParamError("prob_trees_unicycles needs the graph regime");
    if (p.n < 1 || p.m < 0) throw ParamError("n must be positive and m nonnegative");
    if (p.m > p.n) throw ParamError("m > n leaves no room for the forest part");
    const long n = p.n, m = p.m, k = n - m;
    const int N = static_cast<int>(m);

    Series T = cayley_tree(N + 1, a);
    Series W = shift_down(unrooted(T), 1);
    Series V = unicyclic(truncate(T, N));
    Scalar c = coefficient(power(W, k) * exp(V), N);

    BigInt num = fact(n);
    BigInt den = fact(k) * binomial(n * (n - 1) / 2, m);
    return normalized(c, num, den, a);
}

WindowPattern WindowPattern::identity() {
    WindowPattern w;
    w.factor = [](int order, Arithmetic a) { return constant(1, order, a); };
    return w;
}

WindowPattern WindowPattern::contradictory_tree() {
    WindowPattern w;
    w.factor = [](int order, Arithmetic a) {
        Series Td = catalog_series(CatalogName::T_dir, order, a);
        Series tail = power(constant(1, order, a) - scale(Td, 2), Rational(-3));
        return scale(power(Td, 4L) * tail, 8);
    };
    w.lambda_count = 2;
    w.removed_labels = 4;
    w.forest_deficit = 1;
    return w;
}

Scalar digraph_window_expression(const CountingParams& p, const WindowPattern& pattern, Arithmetic a) {
    if (p.regime != Regime::twosat) throw ParamError("digraph_window_expression needs the twosat regime");
    if (p.n < 1 || p.m < 0) throw ParamError("n must be positive and m nonnegative");
    if (p.m >= 2 * p.n) throw ParamError("m must be below 2n");
    if (pattern.lambda_count < 0 || pattern.removed_labels != 2 * pattern.lambda_count)
        throw ParamError("each literal-linking step must restore one removed complementary pair");
    if (!pattern.factor) throw ParamError("missing pattern factor");
    const long n2 = 2 * p.n;
    const long k = n2 - p.m - pattern.forest_deficit;
    if (k < 0) throw ParamError("forest deficit exceeds the number of trees");
    const long N = n2 - 2 * pattern.lambda_count - k;
    if (N < 0) return a.backend == Backend::exact ? Scalar(Rational(0)) : Scalar(BigFloat(a.precision));
    const int order = static_cast<int>(N);

    Series Td = catalog_series(CatalogName::T_dir, order + 1, a);
    Series W = shift_down(oriented(unrooted(cayley_tree(order + 1, a))), 1);
    Series Tdn = truncate(Td, order);
    Series F = shift_down(truncate(pattern.factor(order + pattern.removed_labels, a),
                                   order + pattern.removed_labels),
                          pattern.removed_labels);
    Series prod = power(W, k) * exp(oriented_unicyclic(Tdn)) * F;
    if (pattern.y != 0) prod = prod * power(constant(1, order, a) - scale(Tdn, 2), Rational(-pattern.y));
    Scalar c = coefficient(prod, order);

    BigInt num = fact(n2);
    BigInt den = fact(k) * binomial(n2 * (n2 - 1), p.m);
    for (int i = 0; i < pattern.lambda_count; ++i) den *= n2 - 1 - 2 * i;
    return normalized(c, num, den, a);
}

BigFloat digraph_graph_ratio(long n, long m, unsigned bits) {
    unsigned long v = 2 * n;
    BigInt num = binomial(v * (v - 1), m);
    BigInt den = binomial(v * (v - 1) / 2, m);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), m);
    return BigFloat(num, bits) / BigFloat(den, bits);
}

}  // namespace contralab

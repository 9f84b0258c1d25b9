#include <doctest.h>

#include "brute_graphs.hpp"
#include "contralab/gf_catalog/catalog.hpp"
#include "contralab/gf_catalog/threshold.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace contralab;

namespace {

Rational fact(int n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

double rel_gap(const BigFloat& a, const BigFloat& b) { return (abs(a - b) / abs(b)).to_double(); }

// All digraphs on v vertices with m arcs (no loops), counting those whose
// unoriented components have no more arcs than vertices.
double brute_digraph_trees_unicycles(int v, int m) {
    std::vector<brute::Edge> arcs;
    for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b)
            if (a != b) arcs.emplace_back(a, b);
    long good = 0, total = 0;
    brute::for_each_subset(static_cast<int>(arcs.size()), m, [&](const std::vector<int>& idx) {
        std::vector<brute::Edge> e;
        for (int i : idx) e.push_back(arcs[i]);
        ++total;
        if (brute::all_trees_or_unicycles(brute::components(v, e))) ++good;
    });
    return static_cast<double>(good) / total;
}

}  // namespace

TEST_CASE("catalog series small coefficients") {
    auto U = catalog_series(CatalogName::U, 6);
    auto V = catalog_series(CatalogName::V, 6);
    auto Vd = catalog_series(CatalogName::V_dir, 6);
    CHECK(coefficient(U, 3).rational() * 6 == 3);
    CHECK(coefficient(V, 3).rational() * 6 == 1);
    CHECK(coefficient(Vd, 2).rational() * 2 == 1);
    CHECK_THROWS_AS(parse_catalog_name("W"), ParamError);

    for (int n = 1; n <= 6; ++n) {
        long trees = brute::count_graphs(n, n - 1, [](auto& cs) { return cs.size() == 1; });
        CHECK(coefficient(U, n).rational() * fact(n) == trees);
        long unicycles = brute::count_graphs(n, n, [](auto& cs) { return cs.size() == 1; });
        CHECK(coefficient(V, n).rational() * fact(n) == unicycles);
    }
}

TEST_CASE("oriented unicyclic series is V(2z) plus the 2-cycle term") {
    const int N = 20;
    auto Vd = catalog_series(CatalogName::V_dir, N);
    auto V2 = scale_argument(catalog_series(CatalogName::V, N), 2);
    auto T2 = scale_argument(catalog_series(CatalogName::T, N), 2);
    auto rhs = V2 + scale(T2 * T2, ratio(1, 8));
    for (int k = 0; k <= N; ++k) CHECK(coefficient(Vd, k).rational() == coefficient(rhs, k).rational());
    auto Td = catalog_series(CatalogName::T_dir, N);
    auto Ud = catalog_series(CatalogName::U_dir, N);
    CHECK(coefficient(Td, 3).rational() * 6 == 36);
    CHECK(coefficient(Ud, 3).rational() * 6 == 3 * 4);
}

TEST_CASE("forest times unicycles counts graphs without complex components") {
    const int N = 16;
    auto U = catalog_series(CatalogName::U, N);
    auto eV = exp(catalog_series(CatalogName::V, N));
    for (int k = 0; k <= 5; ++k) {
        auto s = power(U, static_cast<long>(k)) * eV;
        for (int n = 0; n <= N; ++n) CHECK(coefficient(s, n).rational() >= 0);
    }
    for (int n = 1; n <= 6; ++n)
        for (int m = 0; m <= std::min(n, n * (n - 1) / 2); ++m) {
            int k = n - m;
            auto s = scale(power(U, static_cast<long>(k)) * eV, 1 / fact(k));
            long good = brute::count_graphs(n, m, brute::all_trees_or_unicycles);
            CHECK(coefficient(s, n).rational() * fact(n) == good);
        }
}

TEST_CASE("literal linking") {
    auto one = constant(1, 0, Arithmetic::exact());
    CHECK(coefficient(lambda_link(one), 2).rational() == 1);
    auto z2 = monomial(2, 2, Arithmetic::exact());
    CHECK(coefficient(lambda_link(z2), 4).rational() == ratio(1, 3));
    CHECK(coefficient(lambda_link(lambda_link(one)), 4).rational() == ratio(1, 3));

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
    std::vector<Rational> c(63);
    for (auto& x : c) x = ratio(num(rng), den(rng));
    auto A = Series(c);
    auto L = lambda_link(A);
    CHECK(L.order() == 64);
    for (int n = 1; 2 * n <= 64; ++n)
        CHECK(coefficient(L, 2 * n).rational() == coefficient(A, 2 * n - 2).rational() / (2 * n - 1));
}

TEST_CASE("count objects") {
    CHECK(count_objects(ObjectKind::formulas, CountingParams::from_m(Regime::twosat, 3, 2)) == 66);
    CHECK(count_objects(ObjectKind::simple_graphs, CountingParams::from_m(Regime::graph, 4, 3)) == 20);
    CHECK(count_objects(ObjectKind::sum_reps, CountingParams::from_m(Regime::twosat, 3, 2)) == 264);
    CHECK(count_objects(ObjectKind::simple_digraphs, CountingParams::from_m(Regime::twosat, 4, 3)) == 27720);

    // admissible clauses on 3 variables, listed directly
    std::set<std::pair<int, int>> clauses;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            if (a / 2 != b / 2) clauses.insert({std::min(a, b), std::max(a, b)});
    CHECK(clauses.size() == 12);

    for (long n = 2; n <= 20; ++n)
        for (long m = 0; m <= 40 && m <= 2 * n * (n - 1); ++m) {
            CountingParams p{n, m, 0, Regime::twosat};
            BigInt f = count_objects(ObjectKind::formulas, p);
            CHECK(f * (BigInt(1) << m) == count_objects(ObjectKind::sum_reps, p));
        }
    CHECK_THROWS_AS(count_objects(ObjectKind::simple_graphs, CountingParams{4, 7, 0, Regime::graph}), ParamError);
}

TEST_CASE("window parameters round half to even") {
    auto p = CountingParams::from_mu(Regime::twosat, 1000, -3);
    CHECK(p.m == 700);
    CHECK(p.mu == doctest::Approx(-3.0));
    auto q = CountingParams::from_mu(Regime::graph, 8, -1.5);  // 4*(1-0.75) = 1
    CHECK(q.m == 1);
    CHECK(window_m(Regime::twosat, 8, 1.0) == 12);
    CHECK(window_m(Regime::twosat, 1, 6.5) == 8);
    CHECK(window_m(Regime::twosat, 1, 5.5) == 6);
    CHECK(window_m(Regime::twosat, 1, 3.5) == 4);
    CHECK(window_m(Regime::twosat, 1, 2.5) == 4);
    CHECK_THROWS_AS(CountingParams::from_m(Regime::graph, 4, 7), ParamError);
}

TEST_CASE("prob_trees_unicycles exact values") {
    CHECK(prob_trees_unicycles(CountingParams::from_m(Regime::graph, 3, 2)).rational() == 1);
    CHECK(prob_trees_unicycles(CountingParams::from_m(Regime::graph, 4, 4)).rational() == 1);
    CHECK(brute::count_graphs(4, 4, brute::all_trees_or_unicycles) == 15);
    CHECK_THROWS_AS(prob_trees_unicycles(CountingParams::from_m(Regime::graph, 5, 6)), ParamError);
    CHECK_THROWS_AS(prob_trees_unicycles(CountingParams::from_m(Regime::twosat, 5, 3)), ParamError);

    for (int n = 2; n <= 7; ++n)
        for (int m = 0; m <= std::min(n, n * (n - 1) / 2); ++m) {
            auto p = CountingParams::from_m(Regime::graph, n, m);
            BigInt total = count_objects(ObjectKind::simple_graphs, p);
            long good = brute::count_graphs(n, m, brute::all_trees_or_unicycles);
            CHECK(prob_trees_unicycles(p).rational() == ratio(good, total));
        }

    for (int n = 2; n <= 12; ++n) {
        Rational prev = 2;
        for (int m = 0; m <= std::min(n, n * (n - 1) / 2); ++m) {
            Rational v = prob_trees_unicycles(CountingParams::from_m(Regime::graph, n, m)).rational();
            CHECK(v > 0);
            CHECK(v <= 1);
            CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("prob_trees_unicycles through Lagrange inversion") {
    // e^V(t) = (1-t)^(-1/2) exp(-t/2 - t^2/4) as a function of the tree variable
    const int n = 18, m = 12, k = n - m, N = n;
    auto a = Arithmetic::exact();
    auto t = monomial(1, N, a);
    auto one = constant(1, N, a);
    auto eV = power(one - t, ratio(-1, 2)) * exp(scale(t, ratio(-1, 2)) - scale(t * t, ratio(1, 4)));
    auto f = scale(power(t - scale(t * t, ratio(1, 2)), static_cast<long>(k)), 1 / fact(k)) * eV;
    Rational via_lagrange = lagrange_coefficient(differentiate(f), n).rational();
    BigInt total = count_objects(ObjectKind::simple_graphs, CountingParams::from_m(Regime::graph, n, m));
    Rational direct = prob_trees_unicycles(CountingParams::from_m(Regime::graph, n, m)).rational();
    CHECK(via_lagrange * fact(n) / total == direct);
}

TEST_CASE("prob_trees_unicycles float backend") {
    auto p = CountingParams::from_m(Regime::graph, 60, 40);
    BigFloat exact(prob_trees_unicycles(p).rational(), 256);
    BigFloat f256 = prob_trees_unicycles(p, Arithmetic::real(256)).real();
    CHECK(rel_gap(f256, exact) < 1e-38);

    auto q = CountingParams::from_mu(Regime::graph, 200, -3);
    BigFloat lo = prob_trees_unicycles(q, Arithmetic::real(160)).real();
    BigFloat hi = prob_trees_unicycles(q, Arithmetic::real(320)).real();
    CHECK(rel_gap(lo, hi) < 1e-40);
    CHECK(hi.to_double() < 1.0);
    CHECK(hi.to_double() > 0.99);
}

TEST_CASE("prob_trees_unicycles against sampled graphs") {
    const int n = 30, m = 20, samples = 100000;
    double p = prob_trees_unicycles(CountingParams::from_m(Regime::graph, n, m)).to_double();
    auto pairs = brute::all_pairs(n);
    std::mt19937_64 rng(2024);
    long good = 0;
    std::vector<int> idx(pairs.size());
    for (int s = 0; s < samples; ++s) {
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < m; ++i) {
            std::uniform_int_distribution<int> pick(i, static_cast<int>(idx.size()) - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        std::vector<brute::Edge> e;
        for (int i = 0; i < m; ++i) e.push_back(pairs[idx[i]]);
        if (brute::all_trees_or_unicycles(brute::components(n, e))) ++good;
    }
    double phat = static_cast<double>(good) / samples;
    double sigma = std::sqrt(p * (1 - p) / samples);
    CHECK(p < 1.0);
    CHECK(std::abs(phat - p) < 3 * sigma);
}

TEST_CASE("digraph window expression, identity pattern") {
    auto id = WindowPattern::identity();
    for (int m : {3, 4}) {
        auto p = CountingParams::from_m(Regime::twosat, 4, m);
        Rational exact = digraph_window_expression(p, id, Arithmetic::exact()).rational();
        CHECK(exact.get_d() == doctest::Approx(brute_digraph_trees_unicycles(8, m)).epsilon(1e-12));
        double real = digraph_window_expression(p, id, Arithmetic::real()).to_double();
        CHECK(real == doctest::Approx(exact.get_d()).epsilon(1e-14));
    }
    CHECK(digraph_window_expression(CountingParams::from_m(Regime::twosat, 4, 3), id, Arithmetic::exact())
              .rational() == 1);

    auto bad = WindowPattern::contradictory_tree();
    bad.removed_labels = 2;
    CHECK_THROWS_AS(digraph_window_expression(CountingParams::from_m(Regime::twosat, 20, 15), bad), ParamError);
    CHECK_THROWS_AS(digraph_window_expression(CountingParams::from_m(Regime::twosat, 4, 8), id), ParamError);
    CHECK_THROWS_AS(digraph_window_expression(CountingParams::from_m(Regime::graph, 4, 3), id), ParamError);
}

TEST_CASE("digraph to graph count ratio") {
    double r = digraph_graph_ratio(10000, 10000).to_double();
    CHECK(std::abs(r / std::exp(0.125) - 1) < 0.01);
}

TEST_CASE("degree threshold") {
    auto all = degree_threshold(DegreeSet::naturals());
    CHECK(all.z_star == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(all.r_star == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(degree_threshold(DegreeSet::of({1, 2})), ParamError);
    CHECK_THROWS_AS(degree_threshold(DegreeSet::of({2, 3})), ParamError);

    auto three = degree_threshold(DegreeSet::of({1, 2, 3}));
    double s2 = std::sqrt(2.0);
    CHECK(three.z_star == doctest::Approx(s2).epsilon(1e-12));
    CHECK(std::abs(three.z_star - three.z_bisection) < 1e-10);
    double r = s2 * (2 + s2) / (s2 + 1 + s2 / 3);
    CHECK(three.r_star == doctest::Approx(r).epsilon(1e-12));

    DegreeSet weighted;
    weighted.terms = {{1, 1.0}, {2, 0.5}, {4, 2.0}, {5, 1.0}};
    auto w = degree_threshold(weighted);
    CHECK(std::abs(w.z_star - w.z_bisection) < 1e-10);
    double g = w.z_star * weighted.omega(w.z_star, 2) - weighted.omega(w.z_star, 1);
    CHECK(std::abs(g) < 1e-10);
}

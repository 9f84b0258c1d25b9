#include <doctest.h>

#include "contralab/asymptotics/constants.hpp"
#include "contralab/asymptotics/expansion.hpp"
#include "contralab/kernel_enum/kernels.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace contralab;

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

double rel_gap(const Rational& y, double mu, int R) {
    double q = a_quadrature(y, mu);
    return std::abs(a_series(y, mu, R) - q) / q;
}

}  // namespace

TEST_CASE("double factorial and generalized binomial") {
    CHECK(double_factorial(5, Parity::odd) == 15);
    CHECK(double_factorial(-1, Parity::odd) == 1);
    CHECK(double_factorial(6, Parity::even) == 48);
    CHECK(double_factorial(0, Parity::even) == 1);
    CHECK_THROWS_AS(double_factorial(5, Parity::even), ParamError);
    CHECK_THROWS_AS(double_factorial(-3, Parity::odd), ParamError);

    CHECK(gen_binomial(ratio(7, 3), 0) == 1);
    CHECK(gen_binomial(-1, 2) == 1);
    CHECK(gen_binomial(ratio(1, 2), 2) == ratio(-1, 8));
    CHECK(gen_binomial(5, 2) == 10);
}

TEST_CASE("expansion coefficients") {
    CHECK(c_coefficient(0, ratio(2, 7)) == 1);
    CHECK(c_coefficient(1, ratio(1, 2)) == ratio(5, 24));
    CHECK(c_coefficient(1, 3) == ratio(35, 6));
    CHECK(c_coefficient_at_index(3, 1) == 0);
    CHECK(c_coefficient_at_index(2, 3) == ratio(35, 6));
    CHECK(expansion_coefficient(1, 3, true).value == ratio(-35, 6));
    CHECK(expansion_coefficient(2, 3, true).value == c_coefficient(2, 3));

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
    for (int i = 0; i < 20; ++i) {
        Rational y = ratio(num(rng), den(rng));
        CHECK(c_coefficient(1, y) == (3 * y * y + 3 * y - 1) / 6);
    }
}

TEST_CASE("truncated series") {
    const double inv = 1 / std::sqrt(2 * std::numbers::pi);
    CHECK(a_series(ratio(1, 2), -2, 0) == doctest::Approx(inv).epsilon(1e-15));
    CHECK(a_series(ratio(1, 2), -2, 1) == doctest::Approx(inv * (1 - (5.0 / 24) / 8)).epsilon(1e-15));
    double bound = c_coefficient(2, 3).get_d() * std::pow(4.0, -6) * 1.5;
    CHECK(std::abs(a_series(3, -4, 2) - a_series(3, -4, 1)) < bound);
    CHECK_THROWS_AS(a_series(1, 0, 1), ParamError);
    CHECK_THROWS_AS(a_series(1, -2, -1), ParamError);
}

TEST_CASE("quadrature oracle") {
    auto q = a_quadrature_detail(ratio(1, 2), -3);
    CHECK(std::abs(q.imaginary) < 1e-12);
    CHECK(q.value == doctest::Approx(0.396368372097265).epsilon(1e-11));
    CHECK(a_quadrature(3, -4) == doctest::Approx(0.01149830629263).epsilon(1e-10));
    CHECK_THROWS_AS(a_quadrature(1, -1.2), ParamError);

    // y = 0: the series terminates up to the |mu|^-12 term
    for (double mu : {-3.0, -4.0, -6.0, -8.0}) CHECK(rel_gap(0, mu, 3) < 2 * std::pow(-mu, -9));

    // leading correction at y = 1/2, mu = -3
    CHECK(rel_gap(ratio(1, 2), -3, 1) == doctest::Approx(1.272e-3).epsilon(2e-3));
    CHECK(rel_gap(ratio(1, 2), -3, 1) < 1.5e-3);
}

TEST_CASE("series converges to quadrature at the predicted rates") {
    std::vector<double> a{3, 4, 5};
    std::vector<double> step;
    for (double x : a) step.push_back(std::abs(a_series(ratio(1, 2), -x, 2) - a_series(ratio(1, 2), -x, 1)) / a_quadrature(ratio(1, 2), -x));
    CHECK(slope(a, step) == doctest::Approx(-6).epsilon(0.5 / 6));

    std::vector<double> grid{3, 4, 6};
    for (auto y : {ratio(1, 2), Rational(1), Rational(3)}) {
        std::vector<double> r1, r2;
        for (double x : grid) {
            r1.push_back(rel_gap(y, -x, 1));
            r2.push_back(rel_gap(y, -x, 2));
        }
        CHECK(r2[0] > r2[1]);
        CHECK(r2[1] > r2[2]);
        for (size_t i = 0; i < grid.size(); ++i) CHECK(r2[i] < r1[i]);
        double s1 = slope(grid, r1), s2 = slope(grid, r2);
        CHECK(s1 == doctest::Approx(-6).epsilon(1.0 / 6));
        CHECK(s2 < -7.5);
        CHECK(s2 > -10);
    }
}

TEST_CASE("constants match the exhaustive kernel sums") {
    CHECK(graph_constant_e(1) == ratio(5, 24));
    CHECK(graph_constant_e(2) == ratio(385, 1152));
    CHECK(graph_constant_e(3) == ratio(85085, 82944));
    for (int r = 1; r <= 3; ++r) CHECK(graph_constant_e(r) == cubic_multigraph_sums(r).labelled);

    CHECK(twosat_constant_C(1) == ratio(1, 16));
    for (int r = 1; r <= 2; ++r) {
        auto s = contradictory_sums(r);
        CHECK(twosat_constant_C(r) == s.C_all);
        CHECK(twosat_constant_C(r, ComponentSum::minimal) == s.C_minimal);
    }
    CHECK(twosat_constant_C(2) == ratio(321, 512));
    CHECK_THROWS_AS(twosat_constant_C(3), ParamError);
    CHECK_THROWS_AS(twosat_constant_C(0), ParamError);
    CHECK_THROWS_AS(graph_constant_e(0), ParamError);
}

TEST_CASE("law predictions") {
    auto l = law_predictions(CountingParams::from_mu(Regime::twosat, 100000, -2));
    CHECK(l.p_unsat_leading == doctest::Approx(1.0 / 128).epsilon(1e-3));

    auto p = CountingParams::from_mu(Regime::twosat, 100000, -3);
    auto k = law_predictions(p);
    double scale = std::cbrt(1e5) / -p.mu;
    CHECK(k.gamma_factorial_moment(1, 1) == doctest::Approx(3 * scale));
    CHECK(k.gamma_mean(1) == doctest::Approx(3 * scale));
    CHECK(k.gamma_factorial_moment(2, 2) == doctest::Approx(42 * scale * scale));
    CHECK(k.spine_mean == doctest::Approx(119.69).epsilon(1e-3));
    CHECK(k.spine_mean == doctest::Approx(0.5 * std::pow(1e5, 2.0 / 3) / (p.mu * p.mu)));

    // all-components C_2 exceeds C_1 |mu|^3 until |mu|^3 > C_2/C_1
    double cross = std::cbrt(Rational(twosat_constant_C(2) / twosat_constant_C(1)).get_d());
    CHECK(cross == doctest::Approx(2.157).epsilon(1e-3));
    for (double mu : {-2.2, -3.0, -5.0, -10.0}) {
        auto q = law_predictions(CountingParams::from_mu(Regime::twosat, 100000, mu));
        CHECK(q.p_unsat_leading > 0);
        CHECK(q.spine_mean > 0);
        CHECK(q.gamma_mean(2) > 0);
        CHECK(q.p_excess(1) > q.p_excess(2));
    }
    CHECK(l.p_excess(2) > l.p_excess(1));

    CHECK_THROWS_AS(law_predictions(CountingParams::from_mu(Regime::graph, 1000, -2)), ParamError);
    CHECK_THROWS_AS(law_predictions(CountingParams::from_mu(Regime::twosat, 1000, 1)), ParamError);
}

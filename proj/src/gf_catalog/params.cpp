#include "contralab/gf_catalog/params.hpp"

#include <cmath>

namespace contralab {

std::string to_string(Regime r) { return r == Regime::graph ? "graph" : "twosat"; }

Regime parse_regime(const std::string& s) {
    if (s == "graph") return Regime::graph;
    if (s == "twosat") return Regime::twosat;
    throw ParamError("unknown regime: " + s);
}

namespace {

long max_m(Regime regime, long n) {
    return regime == Regime::graph ? n * (n - 1) / 2 : 2 * n * (n - 1);
}

}  // namespace

double window_mu(Regime regime, long n, long m) {
    double ratio = regime == Regime::graph ? 2.0 * m / n : static_cast<double>(m) / n;
    return (ratio - 1.0) * std::cbrt(static_cast<double>(n));
}

long window_m(Regime regime, long n, double mu) {
    double base = regime == Regime::graph ? n / 2.0 : static_cast<double>(n);
    return static_cast<long>(std::nearbyint(base * (1.0 + mu / std::cbrt(static_cast<double>(n)))));
}

CountingParams CountingParams::from_mu(Regime regime, long n, double mu) {
    if (n < 1) throw ParamError("n must be positive");
    return from_m(regime, n, window_m(regime, n, mu));
}

CountingParams CountingParams::from_m(Regime regime, long n, long m) {
    if (n < 1) throw ParamError("n must be positive");
    if (m < 0 || m > max_m(regime, n)) throw ParamError("m out of range for the regime");
    return {n, m, window_mu(regime, n, m), regime};
}

}  // namespace contralab

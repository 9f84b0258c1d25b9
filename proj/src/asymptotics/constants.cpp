#include "contralab/asymptotics/constants.hpp"
#include "contralab/kernel_enum/kernels.hpp"

#include <array>
#include <cmath>
#include <mutex>

namespace contralab {

Rational graph_constant_e(int r) {
    if (r < 1) throw ParamError("graph_constant_e needs r >= 1");
    BigInt a, b, c, p;
    mpz_fac_ui(a.get_mpz_t(), 6 * r);
    mpz_fac_ui(b.get_mpz_t(), 3 * r);
    mpz_fac_ui(c.get_mpz_t(), 2 * r);
    mpz_ui_pow_ui(p.get_mpz_t(), 3, 2 * r);
    return ratio(a, (BigInt(1) << (5 * r)) * p * b * c);
}

namespace {

struct SumsCache {
    std::array<std::once_flag, kContradictoryEnumerationLimit + 1> once;
    std::array<ContradictorySums, kContradictoryEnumerationLimit + 1> sums;
};

SumsCache& cache() {
    static SumsCache c;
    return c;
}

}  // namespace

Rational twosat_constant_C(int r, ComponentSum which) {
    if (r < 1) throw ParamError("twosat_constant_C needs r >= 1");
    if (r > kContradictoryEnumerationLimit) throw ParamError("C_r unavailable beyond r = 2");
    if (r == 1) return ratio(1, 16);
    auto& c = cache();
    std::call_once(c.once[r], [&] { c.sums[r] = contradictory_sums(r); });
    return which == ComponentSum::all ? c.sums[r].C_all : c.sums[r].C_minimal;
}

double LawPredictions::p_excess(int r) const { return twosat_constant_C(r).get_d() * std::pow(-mu, -3.0 * r); }

double LawPredictions::gamma_mean(int r) const {
    if (r < 1) throw ParamError("gamma_mean needs r >= 1");
    return 3.0 * r * std::cbrt(static_cast<double>(n)) / -mu;
}

double LawPredictions::gamma_factorial_moment(int r, int k) const {
    if (r < 1 || k < 0) throw ParamError("gamma_factorial_moment needs r >= 1, k >= 0");
    double scale = std::cbrt(static_cast<double>(n)) / -mu;
    return std::exp(std::lgamma(3.0 * r + k) - std::lgamma(3.0 * r)) * std::pow(scale, k);
}

LawPredictions law_predictions(const CountingParams& p) {
    if (p.regime != Regime::twosat) throw ParamError("law_predictions needs the twosat regime");
    if (!(p.mu < 0)) throw ParamError("law_predictions needs mu < 0");
    LawPredictions l;
    l.n = p.n;
    l.mu = p.mu;
    double a = -p.mu;
    l.p_unsat_leading = 1 / (16 * a * a * a);
    l.spine_mean = 0.5 * std::pow(static_cast<double>(p.n), 2.0 / 3) / (a * a);
    return l;
}

}  // namespace contralab

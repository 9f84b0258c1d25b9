#include "contralab/gf_catalog/threshold.hpp"
#include "contralab/gf_catalog/params.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <functional>

namespace contralab {

DegreeSet DegreeSet::naturals() {
    DegreeSet d;
    d.all_naturals = true;
    return d;
}

DegreeSet DegreeSet::of(std::vector<int> degrees) {
    DegreeSet d;
    for (int k : degrees) d.terms.emplace_back(k, 1.0);
    return d;
}

double DegreeSet::omega(double z, int derivative) const {
    if (all_naturals) return std::exp(z);
    double s = 0;
    for (auto [d, w] : terms) {
        int p = d - derivative;
        if (p < 0) continue;
        s += w * std::pow(z, p) / std::tgamma(p + 1.0);
    }
    return s;
}

namespace {

double bisect(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ThresholdResult degree_threshold(const DegreeSet& delta, double z_max) {
    if (!delta.all_naturals) {
        bool has_one = false;
        for (auto [d, w] : delta.terms) {
            if (d < 0 || w < 0) throw ParamError("degrees and weights must be nonnegative");
            if (d == 1 && w > 0) has_one = true;
        }
        if (!has_one) throw ParamError("degree set must contain 1");
    }
    auto g = [&](double z) { return z * delta.omega(z, 2) - delta.omega(z, 1); };

    double lo = 0.0, hi = 1.0;
    while (!(g(hi) > 0)) {
        lo = hi;
        hi *= 2;
        if (hi > z_max) throw ParamError("no sign change of z omega'' - omega' in (0, z_max)");
    }

    boost::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    ThresholdResult r;
    r.z_star = 0.5 * (a + b);
    r.z_bisection = bisect(g, lo, hi);
    r.r_star = r.z_star * delta.omega(r.z_star, 1) / delta.omega(r.z_star, 0);
    return r;
}

}  // namespace contralab

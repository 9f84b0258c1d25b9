#pragma once

#include "contralab/gf_catalog/params.hpp"
#include "contralab/series_core/big_float.hpp"

namespace contralab {

constexpr int kContradictoryEnumerationLimit = 2;

// (6r)! / (2^5r 3^2r (3r)! (2r)!)
Rational graph_constant_e(int r);

enum class ComponentSum { all, minimal };

// Sum over labelled cubic contradictory components of excess r; r <= 2.
Rational twosat_constant_C(int r, ComponentSum which = ComponentSum::all);

struct LawPredictions {
    long n = 0;
    double mu = 0;
    double p_unsat_leading = 0;  // 1 / (16 |mu|^3)
    double spine_mean = 0;       // n^(2/3) / (2 mu^2)

    double p_excess(int r) const;                         // C_r |mu|^-3r
    double gamma_mean(int r) const;                       // 3r n^(1/3) / |mu|
    double gamma_factorial_moment(int r, int k) const;    // Gamma(3r+k)/Gamma(3r) (n^(1/3)/|mu|)^k
};

LawPredictions law_predictions(const CountingParams& p);

}  // namespace contralab

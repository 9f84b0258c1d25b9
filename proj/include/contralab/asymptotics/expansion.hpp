#pragma once

#include "contralab/series_core/big_float.hpp"

namespace contralab {

enum class Parity { odd, even };

// k!! over integers of k's parity; (-1)!! = 0!! = 1.
BigInt double_factorial(long k, Parity parity);

// a (a-1) ... (a-k+1) / k!
Rational gen_binomial(const Rational& a, long k);

// c_2r(y) = sum_k (-1/3)^(2r-k)/(2r-k)! binom(1-y, k) (6r-2k-1)!!
Rational c_coefficient(long r, const Rational& y);
// Coefficient by its full index j; odd indices vanish.
Rational c_coefficient_at_index(long j, const Rational& y);

struct ExpansionCoefficient {
    long r = 0;
    Rational y;
    Rational value;
    bool sign_applied = false;  // (-1)^r folded into value
};

ExpansionCoefficient expansion_coefficient(long r, const Rational& y, bool sign_applied);

// |mu|^-(y-1/2) (2 pi)^-1/2 sum_{r<=R} (-1)^r c_2r(y) |mu|^-3r
double a_series(const Rational& y, double mu, int R);

struct QuadratureResult {
    double value = 0;
    double imaginary = 0;
    double cutoff = 0;
    long evaluations = 0;
};

// (1/(2 pi alpha^(y-1/2))) integral (1 + i t/alpha^(3/2))^(1-y) exp(-t^2/2 - i t^3/(3 alpha^(3/2))) dt,
// alpha = -mu, by adaptive Simpson on [-T0, T0].
QuadratureResult a_quadrature_detail(const Rational& y, double mu, double tolerance = 1e-12);
double a_quadrature(const Rational& y, double mu);

}  // namespace contralab

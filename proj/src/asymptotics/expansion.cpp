#include "contralab/asymptotics/expansion.hpp"
#include "contralab/gf_catalog/params.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace contralab {

BigInt double_factorial(long k, Parity parity) {
    bool odd = (k % 2 != 0);
    if ((parity == Parity::odd) != odd) throw ParamError("double factorial parity mismatch");
    if (k < -1) throw ParamError("double factorial needs k >= -1");
    BigInt r = 1;
    for (long j = k; j > 1; j -= 2) r *= j;
    return r;
}

Rational gen_binomial(const Rational& a, long k) {
    if (k < 0) throw ParamError("gen_binomial needs k >= 0");
    Rational r = 1;
    for (long j = 0; j < k; ++j) r *= a - j;
    for (long j = 2; j <= k; ++j) r /= j;
    r.canonicalize();
    return r;
}

Rational c_coefficient(long r, const Rational& y) {
    if (r < 0) throw ParamError("c_coefficient needs r >= 0");
    Rational s = 0;
    for (long k = 0; k <= 2 * r; ++k) {
        long j = 2 * r - k;
        BigInt f;
        mpz_fac_ui(f.get_mpz_t(), j);
        BigInt p3;
        mpz_ui_pow_ui(p3.get_mpz_t(), 3, j);
        Rational term = ratio(j % 2 ? -1 : 1, p3 * f);
        term *= gen_binomial(1 - y, k);
        term *= double_factorial(6 * r - 2 * k - 1, Parity::odd);
        s += term;
    }
    s.canonicalize();
    return s;
}

Rational c_coefficient_at_index(long j, const Rational& y) {
    if (j % 2 != 0) return 0;
    return c_coefficient(j / 2, y);
}

ExpansionCoefficient expansion_coefficient(long r, const Rational& y, bool sign_applied) {
    Rational v = c_coefficient(r, y);
    if (sign_applied && r % 2) v = -v;
    return {r, y, v, sign_applied};
}

double a_series(const Rational& y, double mu, int R) {
    if (!(mu < 0)) throw ParamError("a_series needs mu < 0");
    if (R < 0) throw ParamError("a_series needs R >= 0");
    double a = -mu;
    double s = 0;
    for (int r = 0; r <= R; ++r) s += expansion_coefficient(r, y, true).value.get_d() * std::pow(a, -3.0 * r);
    return std::pow(a, -(y.get_d() - 0.5)) * s / std::sqrt(2 * std::numbers::pi);
}

namespace {

using cplx = std::complex<double>;

struct Simpson {
    const std::function<cplx(double)>& f;
    long evaluations = 0;
    bool converged = true;

    cplx eval(double t) {
        ++evaluations;
        return f(t);
    }

    cplx recurse(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        cplx flm = eval(lm), frm = eval(rm);
        cplx left = (m - a) / 6 * (fa + 4.0 * flm + fm);
        cplx right = (b - m) / 6 * (fm + 4.0 * frm + fb);
        cplx diff = left + right - whole;
        if (std::abs(diff) <= 15 * tol) return left + right + diff / 15.0;
        if (depth <= 0) {
            converged = false;
            return left + right + diff / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, tol / 2, depth - 1) +
               recurse(m, b, fm, frm, fb, right, tol / 2, depth - 1);
    }

    cplx integrate(double a, double b, double tol, int pieces) {
        cplx total = 0;
        double h = (b - a) / pieces;
        for (int i = 0; i < pieces; ++i) {
            double lo = a + i * h, hi = lo + h, mid = 0.5 * (lo + hi);
            cplx flo = eval(lo), fmid = eval(mid), fhi = eval(hi);
            cplx whole = h / 6 * (flo + 4.0 * fmid + fhi);
            total += recurse(lo, hi, flo, fmid, fhi, whole, tol / pieces, 40);
        }
        return total;
    }
};

}  // namespace

QuadratureResult a_quadrature_detail(const Rational& y, double mu, double tolerance) {
    if (!(mu <= -1.5)) throw ParamError("a_quadrature needs mu <= -1.5");
    const double alpha = -mu;
    const double yy = y.get_d();
    const double s = std::pow(alpha, 1.5);
    std::function<cplx(double)> f = [&](double t) {
        double x = t / s;
        // principal branch of (1 + i x)^(1-y)
        cplx logbase(0.5 * std::log1p(x * x), std::atan(x));
        return std::exp((1 - yy) * logbase + cplx(-t * t / 2, -t * t * t / (3 * s)));
    };
    auto tail = [&](double T) {
        double growth = std::pow(1 + T * T / (s * s), std::abs(1 - yy) / 2);
        return 2 * growth * std::exp(-T * T / 2) / T;
    };

    double T0 = std::max(12.0, 8 * std::pow(alpha, 0.75));
    while (tail(T0) > tolerance) T0 *= 2;

    Simpson simpson{f};
    cplx I = simpson.integrate(-T0, T0, tolerance, 64);
    if (!simpson.converged) throw std::runtime_error("a_quadrature: tolerance not met");
    double norm = 2 * std::numbers::pi * std::pow(alpha, yy - 0.5);
    QuadratureResult r;
    r.value = I.real() / norm;
    r.imaginary = I.imag() / norm;
    r.cutoff = T0;
    r.evaluations = simpson.evaluations;
    if (std::abs(r.imaginary) > 1e-8) throw std::runtime_error("a_quadrature: imaginary residue too large");
    return r;
}

double a_quadrature(const Rational& y, double mu) { return a_quadrature_detail(y, mu).value; }

}  // namespace contralab

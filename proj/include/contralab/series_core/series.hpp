#pragma once

#include "contralab/series_core/big_float.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace contralab {

enum class Backend { exact, real };

// Coefficient field selector: exact rationals, or floats of a given precision.
struct Arithmetic {
    Backend backend = Backend::exact;
    unsigned precision = kDefaultPrecision;

    static Arithmetic exact() { return {Backend::exact, 0}; }
    static Arithmetic real(unsigned bits = kDefaultPrecision) { return {Backend::real, bits}; }
};

class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A single coefficient or derived value in either backend.
class Scalar {
public:
    Scalar(Rational q) : v_(std::move(q)) {}
    Scalar(BigFloat x) : v_(std::move(x)) {}

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const;
    BigFloat real(unsigned bits = kDefaultPrecision) const;
    double to_double() const;
    // "p/q" for exact values, 17 significant digits for floats.
    std::string str() const;

private:
    std::variant<Rational, BigFloat> v_;
};

// Truncated power series c_0 + c_1 z + ... + c_N z^N. Coefficients beyond N are unknown.
class Series {
public:
    explicit Series(std::vector<Rational> coeffs);
    Series(std::vector<BigFloat> coeffs, unsigned precision);

    Backend backend() const { return exact_ ? Backend::exact : Backend::real; }
    Arithmetic arithmetic() const;
    int order() const;
    unsigned precision() const { return precision_; }

    const std::vector<Rational>& exact_coefficients() const;
    const std::vector<BigFloat>& real_coefficients() const;

    Scalar operator[](int n) const;

private:
    bool exact_;
    unsigned precision_ = 0;
    std::vector<Rational> q_;
    std::vector<BigFloat> f_;
};

constexpr int kMaxOrder = 1 << 16;

Series zero_series(int order, Arithmetic a);
Series constant(const Rational& c, int order, Arithmetic a);
Series monomial(int k, int order, Arithmetic a, const Rational& c = 1);
Series from_rationals(const std::vector<Rational>& c, Arithmetic a);
Series to_backend(const Series& A, Arithmetic a);
Series truncate(const Series& A, int order);

Series add(const Series& A, const Series& B);
Series subtract(const Series& A, const Series& B);
Series negate(const Series& A);
Series scale(const Series& A, const Rational& c);
Series multiply(const Series& A, const Series& B);

Series exp(const Series& A);
Series log1p(const Series& A);
// A^k by repeated squaring; any constant term.
Series power(const Series& A, long k);
// A^alpha for constant term 1.
Series power(const Series& A, const Rational& alpha);
Series reciprocal(const Series& A);

Series integrate(const Series& A);
Series differentiate(const Series& A);
Series scale_argument(const Series& A, const Rational& c);
// Multiply by z^k; order grows by k.
Series shift_up(const Series& A, int k);
// Divide by z^k; the first k coefficients must vanish.
Series shift_down(const Series& A, int k);

Series cayley_tree(int order, Arithmetic a = Arithmetic::exact());

Scalar coefficient(const Series& A, int n);
// (1/n) [t^(n-1)] f'(t) e^(nt), which is [z^n] f(T(z)).
Scalar lagrange_coefficient(const Series& f_prime, int n);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return subtract(a, b); }
inline Series operator*(const Series& a, const Series& b) { return multiply(a, b); }

}  // namespace contralab

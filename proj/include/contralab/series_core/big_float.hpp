#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace contralab {

using Rational = mpq_class;
using BigInt = mpz_class;

constexpr unsigned kDefaultPrecision = 256;

// Multiple precision float with a per-value precision in bits.
// Binary operations round to the larger precision of the operands.
class BigFloat {
public:
    explicit BigFloat(unsigned bits = kDefaultPrecision);
    BigFloat(long v, unsigned bits);
    BigFloat(double v, unsigned bits);
    BigFloat(const Rational& q, unsigned bits);
    BigFloat(const BigInt& z, unsigned bits);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Scientific notation with the given number of significant digits.
    std::string str(int digits = 17) const;

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    BigFloat operator-() const;

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

private:
    void widen(unsigned bits);
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat factorial(unsigned long n, unsigned bits);
BigFloat pi(unsigned bits);

std::string rational_string(const Rational& q);

// Canonical p/q.
inline Rational ratio(const BigInt& p, const BigInt& q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

}  // namespace contralab

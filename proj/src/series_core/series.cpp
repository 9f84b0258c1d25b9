#include "contralab/series_core/series.hpp"

#include <algorithm>

namespace contralab {

namespace {

template <class T>
struct Field;

template <>
struct Field<Rational> {
    unsigned prec = 0;
    Rational make(const Rational& q) const { return q; }
    Rational zero() const { return Rational(0); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static void addmul(Rational& acc, const Rational& a, const Rational& b) { acc += a * b; }
    static void submul(Rational& acc, const Rational& a, const Rational& b) { acc -= a * b; }
};

template <>
struct Field<BigFloat> {
    unsigned prec = kDefaultPrecision;
    BigFloat make(const Rational& q) const { return BigFloat(q, prec); }
    BigFloat zero() const { return BigFloat(prec); }
    static bool is_zero(const BigFloat& x) { return x.is_zero(); }
    static void addmul(BigFloat& acc, const BigFloat& a, const BigFloat& b) {
        mpfr_fma(acc.raw(), a.raw(), b.raw(), acc.raw(), MPFR_RNDN);
    }
    static void submul(BigFloat& acc, const BigFloat& a, const BigFloat& b) {
        mpfr_fms(acc.raw(), a.raw(), b.raw(), acc.raw(), MPFR_RNDN);
        mpfr_neg(acc.raw(), acc.raw(), MPFR_RNDN);
    }
};

template <class T>
int valuation(const std::vector<T>& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (!Field<T>::is_zero(a[i])) return static_cast<int>(i);
    return static_cast<int>(a.size());
}

template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b, int N, const Field<T>& F) {
    std::vector<T> r(N + 1, F.zero());
    int va = valuation(a), vb = valuation(b);
    for (int k = va + vb; k <= N; ++k)
        for (int i = va; i <= k - vb; ++i) Field<T>::addmul(r[k], a[i], b[k - i]);
    return r;
}

template <class T>
std::vector<T> exp_rec(const std::vector<T>& a, const Field<T>& F) {
    int N = static_cast<int>(a.size()) - 1;
    std::vector<T> e(N + 1, F.zero());
    e[0] = F.make(1);
    for (int k = 1; k <= N; ++k) {
        T s = F.zero();
        for (int j = 1; j <= k; ++j) {
            if (Field<T>::is_zero(a[j])) continue;
            Field<T>::addmul(s, a[j] * F.make(j), e[k - j]);
        }
        e[k] = s / F.make(k);
    }
    return e;
}

template <class T>
std::vector<T> log1p_rec(const std::vector<T>& a, const Field<T>& F) {
    int N = static_cast<int>(a.size()) - 1;
    std::vector<T> l(N + 1, F.zero());
    for (int k = 1; k <= N; ++k) {
        T s = a[k] * F.make(k);
        for (int j = 1; j < k; ++j) {
            if (Field<T>::is_zero(a[k - j])) continue;
            Field<T>::submul(s, l[j] * F.make(j), a[k - j]);
        }
        l[k] = s / F.make(k);
    }
    return l;
}

template <class T>
std::vector<T> pow_rec(const std::vector<T>& a, const Rational& alpha, const Field<T>& F) {
    int N = static_cast<int>(a.size()) - 1;
    std::vector<T> p(N + 1, F.zero());
    p[0] = F.make(1);
    for (int k = 1; k <= N; ++k) {
        T s = F.zero();
        for (int j = 1; j <= k; ++j) {
            if (Field<T>::is_zero(a[j])) continue;
            Rational w = (alpha + 1) * j - k;
            Field<T>::addmul(s, a[j] * F.make(w), p[k - j]);
        }
        p[k] = s / F.make(k);
    }
    return p;
}

template <class T>
std::vector<T> recip_rec(const std::vector<T>& a, const Field<T>& F) {
    int N = static_cast<int>(a.size()) - 1;
    std::vector<T> r(N + 1, F.zero());
    T inv = F.make(1) / a[0];
    r[0] = inv;
    for (int k = 1; k <= N; ++k) {
        T s = F.zero();
        for (int j = 1; j <= k; ++j) {
            if (Field<T>::is_zero(a[j])) continue;
            Field<T>::addmul(s, a[j], r[k - j]);
        }
        r[k] = -(s * inv);
    }
    return r;
}

Series wrap(std::vector<Rational> v, unsigned) { return Series(std::move(v)); }
Series wrap(std::vector<BigFloat> v, unsigned prec) { return Series(std::move(v), prec); }

template <class Fn>
Series unary(const Series& A, Fn fn) {
    if (A.backend() == Backend::exact) {
        Field<Rational> F;
        return wrap(fn(A.exact_coefficients(), F), 0);
    }
    Field<BigFloat> F{A.precision()};
    return wrap(fn(A.real_coefficients(), F), A.precision());
}

template <class Fn>
Series binary(const Series& A, const Series& B, Fn fn) {
    if (A.backend() != B.backend()) throw SeriesError("series backend mismatch");
    if (A.backend() == Backend::exact) {
        Field<Rational> F;
        return wrap(fn(A.exact_coefficients(), B.exact_coefficients(), F), 0);
    }
    unsigned prec = std::max(A.precision(), B.precision());
    Field<BigFloat> F{prec};
    return wrap(fn(A.real_coefficients(), B.real_coefficients(), F), prec);
}

template <class T>
bool is_zero_at(const std::vector<T>& a, int k) {
    return Field<T>::is_zero(a[k]);
}

bool constant_is(const Series& A, long v) {
    if (A.backend() == Backend::exact) return A.exact_coefficients()[0] == v;
    return mpfr_cmp_si(A.real_coefficients()[0].raw(), v) == 0;
}

}  // namespace

const Rational& Scalar::rational() const {
    if (!is_exact()) throw SeriesError("value is not exact");
    return std::get<Rational>(v_);
}

BigFloat Scalar::real(unsigned bits) const {
    if (is_exact()) return BigFloat(std::get<Rational>(v_), bits);
    return std::get<BigFloat>(v_);
}

double Scalar::to_double() const {
    if (is_exact()) return std::get<Rational>(v_).get_d();
    return std::get<BigFloat>(v_).to_double();
}

std::string Scalar::str() const {
    if (is_exact()) return rational_string(std::get<Rational>(v_));
    return std::get<BigFloat>(v_).str(17);
}

Series::Series(std::vector<Rational> coeffs) : exact_(true), q_(std::move(coeffs)) {
    if (q_.empty()) throw SeriesError("series needs at least one coefficient");
    for (auto& c : q_) c.canonicalize();
}

Series::Series(std::vector<BigFloat> coeffs, unsigned precision)
    : exact_(false), precision_(precision), f_(std::move(coeffs)) {
    if (f_.empty()) throw SeriesError("series needs at least one coefficient");
}

Arithmetic Series::arithmetic() const {
    return exact_ ? Arithmetic::exact() : Arithmetic::real(precision_);
}

int Series::order() const {
    return static_cast<int>(exact_ ? q_.size() : f_.size()) - 1;
}

const std::vector<Rational>& Series::exact_coefficients() const {
    if (!exact_) throw SeriesError("series is not exact");
    return q_;
}

const std::vector<BigFloat>& Series::real_coefficients() const {
    if (exact_) throw SeriesError("series is not real");
    return f_;
}

Scalar Series::operator[](int n) const { return coefficient(*this, n); }

Series zero_series(int order, Arithmetic a) { return constant(0, order, a); }

Series constant(const Rational& c, int order, Arithmetic a) {
    return monomial(0, order, a, c);
}

Series monomial(int k, int order, Arithmetic a, const Rational& c) {
    if (order < 0 || order > kMaxOrder) throw SeriesError("order out of range");
    std::vector<Rational> v(order + 1);
    if (k >= 0 && k <= order) v[k] = c;
    return from_rationals(v, a);
}

Series from_rationals(const std::vector<Rational>& c, Arithmetic a) {
    if (a.backend == Backend::exact) return Series(c);
    std::vector<BigFloat> f;
    f.reserve(c.size());
    for (const auto& q : c) f.emplace_back(q, a.precision);
    return Series(std::move(f), a.precision);
}

Series to_backend(const Series& A, Arithmetic a) {
    if (A.backend() == Backend::exact) return from_rationals(A.exact_coefficients(), a);
    if (a.backend == Backend::exact) throw SeriesError("cannot convert float series to exact");
    std::vector<BigFloat> f;
    for (const auto& x : A.real_coefficients()) {
        BigFloat y(a.precision);
        mpfr_set(y.raw(), x.raw(), MPFR_RNDN);
        f.push_back(std::move(y));
    }
    return Series(std::move(f), a.precision);
}

Series truncate(const Series& A, int order) {
    if (order > A.order()) throw SeriesError("cannot truncate beyond the valid order");
    return unary(A, [&](const auto& a, const auto&) {
        return std::vector(a.begin(), a.begin() + order + 1);
    });
}

Series add(const Series& A, const Series& B) {
    return binary(A, B, [](const auto& a, const auto& b, const auto& F) {
        size_t n = std::min(a.size(), b.size());
        std::vector<std::decay_t<decltype(a[0])>> r;
        r.reserve(n);
        for (size_t i = 0; i < n; ++i) r.push_back(F.make(0) + a[i] + b[i]);
        return r;
    });
}

Series subtract(const Series& A, const Series& B) { return add(A, negate(B)); }

Series negate(const Series& A) { return scale(A, -1); }

Series scale(const Series& A, const Rational& c) {
    return unary(A, [&](const auto& a, const auto& F) {
        auto r = a;
        auto cc = F.make(c);
        for (auto& x : r) x = F.make(0) + x * cc;
        return r;
    });
}

Series multiply(const Series& A, const Series& B) {
    return binary(A, B, [](const auto& a, const auto& b, const auto& F) {
        int N = static_cast<int>(std::min(a.size(), b.size())) - 1;
        return mul(a, b, N, F);
    });
}

Series exp(const Series& A) {
    if (!constant_is(A, 0)) throw SeriesError("exp needs a zero constant term");
    return unary(A, [](const auto& a, const auto& F) { return exp_rec(a, F); });
}

Series log1p(const Series& A) {
    if (!constant_is(A, 0)) throw SeriesError("log1p needs a zero constant term");
    return unary(A, [](const auto& a, const auto& F) { return log1p_rec(a, F); });
}

Series power(const Series& A, long k) {
    if (k < 0) return power(reciprocal(A), -k);
    return unary(A, [&](const auto& a, const auto& F) {
        int N = static_cast<int>(a.size()) - 1;
        using T = std::decay_t<decltype(a[0])>;
        std::vector<T> result(N + 1, F.zero());
        result[0] = F.make(1);
        std::vector<T> base = a;
        long e = k;
        while (e > 0) {
            if (e & 1) result = mul(result, base, N, F);
            e >>= 1;
            if (e > 0) base = mul(base, base, N, F);
        }
        return result;
    });
}

Series power(const Series& A, const Rational& alpha) {
    if (alpha.get_den() == 1 && alpha >= 0) return power(A, alpha.get_num().get_si());
    if (!constant_is(A, 1)) throw SeriesError("fractional power needs constant term 1");
    return unary(A, [&](const auto& a, const auto& F) { return pow_rec(a, alpha, F); });
}

Series reciprocal(const Series& A) {
    if (constant_is(A, 0)) throw SeriesError("reciprocal of a series with zero constant term");
    return unary(A, [](const auto& a, const auto& F) { return recip_rec(a, F); });
}

Series integrate(const Series& A) {
    return unary(A, [](const auto& a, const auto& F) {
        int N = std::min(static_cast<int>(a.size()), kMaxOrder);
        std::vector<std::decay_t<decltype(a[0])>> r(N + 1, F.zero());
        for (int k = 1; k <= N; ++k) r[k] = a[k - 1] / F.make(k);
        return r;
    });
}

Series differentiate(const Series& A) {
    if (A.order() == 0) return A.backend() == Backend::exact ? Series({Rational(0)}) : scale(A, 0);
    return unary(A, [](const auto& a, const auto& F) {
        int N = static_cast<int>(a.size()) - 2;
        std::vector<std::decay_t<decltype(a[0])>> r(N + 1, F.zero());
        for (int k = 0; k <= N; ++k) r[k] = a[k + 1] * F.make(k + 1);
        return r;
    });
}

Series scale_argument(const Series& A, const Rational& c) {
    return unary(A, [&](const auto& a, const auto& F) {
        auto r = a;
        Rational p = 1;
        for (auto& x : r) {
            x = x * F.make(p);
            p *= c;
        }
        return r;
    });
}

Series shift_up(const Series& A, int k) {
    if (k < 0) return shift_down(A, -k);
    if (A.order() + k > kMaxOrder) throw SeriesError("order out of range");
    return unary(A, [&](const auto& a, const auto& F) {
        std::vector<std::decay_t<decltype(a[0])>> r(a.size() + k, F.zero());
        for (size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
        return r;
    });
}

Series shift_down(const Series& A, int k) {
    if (k < 0) return shift_up(A, -k);
    if (k > A.order()) throw SeriesError("shift exceeds the valid order");
    return unary(A, [&](const auto& a, const auto&) {
        for (int i = 0; i < k; ++i)
            if (!is_zero_at(a, i)) throw SeriesError("cannot divide by z^k: low coefficients are nonzero");
        return std::vector(a.begin() + k, a.end());
    });
}

Series cayley_tree(int order, Arithmetic a) {
    if (order < 0 || order > kMaxOrder) throw SeriesError("order out of range");
    if (a.backend == Backend::exact) {
        std::vector<Rational> c(order + 1);
        BigInt fact = 1;
        for (int n = 1; n <= order; ++n) {
            fact *= n;
            BigInt p;
            mpz_ui_pow_ui(p.get_mpz_t(), n, n - 1);
            c[n] = Rational(p, fact);
        }
        return Series(std::move(c));
    }
    std::vector<BigFloat> c;
    c.emplace_back(a.precision);
    BigFloat fact(1L, a.precision);
    for (int n = 1; n <= order; ++n) {
        fact *= BigFloat(static_cast<long>(n), a.precision);
        BigFloat p(a.precision);
        mpfr_set_ui(p.raw(), n, MPFR_RNDN);
        mpfr_pow_ui(p.raw(), p.raw(), n - 1, MPFR_RNDN);
        c.push_back(p / fact);
    }
    return Series(std::move(c), a.precision);
}

Scalar coefficient(const Series& A, int n) {
    if (n < 0 || n > A.order()) throw SeriesError("coefficient index outside the valid order");
    if (A.backend() == Backend::exact) return Scalar(A.exact_coefficients()[n]);
    return Scalar(A.real_coefficients()[n]);
}

Scalar lagrange_coefficient(const Series& f_prime, int n) {
    if (n <= 0) throw SeriesError("lagrange_coefficient needs n >= 1");
    if (f_prime.order() < n - 1) throw SeriesError("f' is not known to order n-1");
    Series fp = truncate(f_prime, n - 1);
    Series e = exp(monomial(1, n - 1, fp.arithmetic(), n));
    Series prod = multiply(fp, e);
    Scalar c = coefficient(prod, n - 1);
    if (c.is_exact()) return Scalar(c.rational() / n);
    return Scalar(c.real(fp.precision()) / BigFloat(static_cast<long>(n), fp.precision()));
}

}  // namespace contralab

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

#include "qhiso/quaternion.hpp"

namespace qhiso {

/// Element of the field Q(sqrt 2), stored as a + b*sqrt(2) with exact
/// rational a, b.  Enough to carry the Cayley transform (entries sqrt(2)/2)
/// without leaving exact arithmetic.
struct ExactReal {
    mpq_class a{0}, b{0};

    ExactReal() = default;
    ExactReal(int v) : a(v) {}
    ExactReal(long v) : a(static_cast<long>(v)) {}
    ExactReal(const mpq_class& rat) : a(rat) {}
    ExactReal(mpq_class rat, mpq_class irr) : a(std::move(rat)), b(std::move(irr)) {}

    static ExactReal sqrt2() { return ExactReal(mpq_class(0), mpq_class(1)); }
    static ExactReal sqrt2_half() { return ExactReal(mpq_class(0), mpq_class(1, 2)); }

    friend ExactReal operator+(const ExactReal& p, const ExactReal& q) {
        return ExactReal(p.a + q.a, p.b + q.b);
    }
    friend ExactReal operator-(const ExactReal& p, const ExactReal& q) {
        return ExactReal(p.a - q.a, p.b - q.b);
    }
    friend ExactReal operator-(const ExactReal& q) { return ExactReal(-q.a, -q.b); }
    friend ExactReal operator*(const ExactReal& p, const ExactReal& q) {
        return ExactReal(p.a * q.a + 2 * p.b * q.b, p.a * q.b + p.b * q.a);
    }
    friend ExactReal operator/(const ExactReal& p, const ExactReal& q) {
        // 1/(a + b√2) = (a - b√2)/(a² - 2b²)
        mpq_class den = q.a * q.a - 2 * q.b * q.b;
        if (den == 0) throw std::domain_error("ExactReal: division by zero");
        return p * ExactReal(q.a / den, -q.b / den);
    }

    ExactReal& operator+=(const ExactReal& q) { return *this = *this + q; }
    ExactReal& operator-=(const ExactReal& q) { return *this = *this - q; }
    ExactReal& operator*=(const ExactReal& q) { return *this = *this * q; }

    bool is_zero() const { return a == 0 && b == 0; }
    friend bool operator==(const ExactReal& p, const ExactReal& q) {
        return p.a == q.a && p.b == q.b;
    }
    friend bool operator!=(const ExactReal& p, const ExactReal& q) { return !(p == q); }

    /// Exact sign: sqrt(2) irrational, so a + b√2 = 0 only when a = b = 0.
    int sign() const {
        if (b == 0) return sgn(a);
        if (a == 0) return sgn(b);
        int sa = sgn(a), sb = sgn(b);
        if (sa == sb) return sa;
        // opposite signs: compare a² with 2b²
        mpq_class lhs = a * a, rhs = 2 * b * b;
        if (lhs == rhs) return 0; // unreachable for nonzero value, kept for safety
        return lhs > rhs ? sa : sb;
    }

    friend bool operator<(const ExactReal& p, const ExactReal& q) { return (p - q).sign() < 0; }
    friend bool operator>(const ExactReal& p, const ExactReal& q) { return (p - q).sign() > 0; }

    ExactReal abs() const { return sign() >= 0 ? *this : -*this; }

    double to_double() const { return a.get_d() + b.get_d() * 1.4142135623730951; }

    std::string str() const;
};

/// Complex number over Q(sqrt 2); a field, so Gaussian elimination stays exact.
struct XComplex {
    ExactReal re, im;

    XComplex() = default;
    XComplex(ExactReal r) : re(std::move(r)) {}
    XComplex(ExactReal r, ExactReal i) : re(std::move(r)), im(std::move(i)) {}
    XComplex(int v) : re(v) {}

    friend XComplex operator+(const XComplex& p, const XComplex& q) {
        return XComplex(p.re + q.re, p.im + q.im);
    }
    friend XComplex operator-(const XComplex& p, const XComplex& q) {
        return XComplex(p.re - q.re, p.im - q.im);
    }
    friend XComplex operator-(const XComplex& q) { return XComplex(-q.re, -q.im); }
    friend XComplex operator*(const XComplex& p, const XComplex& q) {
        return XComplex(p.re * q.re - p.im * q.im, p.re * q.im + p.im * q.re);
    }
    friend XComplex operator/(const XComplex& p, const XComplex& q) {
        ExactReal n = q.re * q.re + q.im * q.im;
        if (n.is_zero()) throw std::domain_error("XComplex: division by zero");
        XComplex r = p * XComplex(q.re, -q.im);
        return XComplex(r.re / n, r.im / n);
    }
    XComplex& operator+=(const XComplex& q) { return *this = *this + q; }
    XComplex& operator-=(const XComplex& q) { return *this = *this - q; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    friend bool operator==(const XComplex& p, const XComplex& q) {
        return p.re == q.re && p.im == q.im;
    }

    ExactReal norm_sq() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline XComplex conj(const XComplex& z) { return XComplex(z.re, -z.im); }

using XQuat = Quat<ExactReal>;

inline ExactReal max_abs(const XQuat& q) {
    ExactReal m = q.w.abs();
    for (const ExactReal* c : {&q.x, &q.y, &q.z}) {
        ExactReal a = c->abs();
        if (a > m) m = a;
    }
    return m;
}

inline XComplex complex_part(const XQuat& q) { return XComplex(q.w, q.x); }
inline XComplex jpart(const XQuat& q) { return XComplex(q.y, -q.z); }

/// Parse an exact scalar: "p/q", integer, plain decimal ("-0.125", read
/// exactly), optionally with a "+r/s√2"-style second term written "r2*..."
/// is not supported; inputs are rational.  Throws std::invalid_argument.
ExactReal parse_exact_real(const std::string& text);

/// Exact quaternion from the "w+xi+yj+zk" text form with rational terms.
XQuat parse_exact_quaternion(const std::string& text);

} // namespace qhiso

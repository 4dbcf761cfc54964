#pragma once

/**
 * @file real.hpp
 * @brief Arbitrary-precision reals and complex numbers on top of MPFR.
 *
 * Every value carries its own binary precision. A binary operation produces
 * a result at the larger of the two operand precisions, so mixing values of
 * different precision never silently truncates the more precise one.
 */

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace chtg {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kMinPrecision = 53;

/// Default working precision, overridable through the CHTG_PREC environment variable.
inline Precision default_precision() {
    if (const char* env = std::getenv("CHTG_PREC")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= kMinPrecision) return static_cast<Precision>(v);
    }
    return kDefaultPrecision;
}

class Real {
  public:
    explicit Real(Precision prec = kDefaultPrecision) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(long x, Precision prec) : Real(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x, Precision prec) : Real(static_cast<long>(x), prec) {}
    Real(double x, Precision prec) : Real(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const mpq_class& q, Precision prec) : Real(prec) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    Real(const mpz_class& z, Precision prec) : Real(prec) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }

    /// Parses a decimal string such as "1.25e-3".
    static Real parse(const std::string& text, Precision prec) {
        Real r(prec);
        if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("not a decimal number: " + text);
        return r;
    }

    Real(const Real& o) : Real(o.prec()) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept : Real(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.prec());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    Precision prec() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    /// Same value rounded to another precision.
    Real with_prec(Precision prec) const {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    /// Scientific notation with the given number of significant digits.
    std::string to_string(int digits = 30) const {
        if (mpfr_zero_p(v_)) return "0";
        char* buf = nullptr;
        std::string fmt = "%." + std::to_string(std::max(digits - 1, 0)) + "Re";
        mpfr_asprintf(&buf, fmt.c_str(), v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    /// Fixed notation with the given number of significant digits.
    std::string to_fixed(int digits = 50) const {
        if (mpfr_zero_p(v_)) return "0";
        char* buf = nullptr;
        std::string fmt = "%." + std::to_string(digits) + "Rg";
        mpfr_asprintf(&buf, fmt.c_str(), v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    static Real pi(Precision prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    /// 2^e at the given precision.
    static Real pow2(long e, Precision prec) {
        Real r(1L, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { return inplace(o, mpfr_add); }
    Real& operator-=(const Real& o) { return inplace(o, mpfr_sub); }
    Real& operator*=(const Real& o) { return inplace(o, mpfr_mul); }
    Real& operator/=(const Real& o) { return inplace(o, mpfr_div); }

    friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend Real abs(const Real& a) { return unary(a, mpfr_abs); }
    friend Real sqrt(const Real& a) { return unary(a, mpfr_sqrt); }
    friend Real cbrt(const Real& a) { return unary(a, mpfr_cbrt); }
    friend Real sin(const Real& a) { return unary(a, mpfr_sin); }
    friend Real cos(const Real& a) { return unary(a, mpfr_cos); }
    friend Real acos(const Real& a) { return unary(a, mpfr_acos); }
    friend Real exp(const Real& a) { return unary(a, mpfr_exp); }
    friend Real log(const Real& a) { return unary(a, mpfr_log); }
    friend Real atan2(const Real& y, const Real& x) { return binary(y, x, mpfr_atan2); }
    friend Real hypot(const Real& a, const Real& b) { return binary(a, b, mpfr_hypot); }
    friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }

    friend std::ostream& operator<<(std::ostream& os, const Real& r) { return os << r.to_string(20); }

  private:
    using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using Unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    static Real binary(const Real& a, const Real& b, Binary f) {
        Real r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real unary(const Real& a, Unary f) {
        Real r(a.prec());
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real& inplace(const Real& o, Binary f) {
        if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
        f(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    mpfr_t v_;
};

/// Complex number with MPFR parts; both parts share one precision.
struct AComplex {
    Real re;
    Real im;

    explicit AComplex(Precision prec = kDefaultPrecision) : re(prec), im(prec) {}
    AComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit AComplex(const Real& r) : re(r), im(r.prec()) {}
    AComplex(long r, Precision prec) : re(r, prec), im(prec) {}
    AComplex(int r, Precision prec) : re(r, prec), im(prec) {}

    /// e^{i theta}
    static AComplex polar(const Real& theta) { return {cos(theta), sin(theta)}; }
    static AComplex polar(const Real& modulus, const Real& theta) {
        return {modulus * cos(theta), modulus * sin(theta)};
    }
    static AComplex i_unit(Precision prec) { return {Real(prec), Real(1L, prec)}; }

    Precision prec() const { return std::max(re.prec(), im.prec()); }

    AComplex& operator+=(const AComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    AComplex& operator-=(const AComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    AComplex& operator*=(const AComplex& o) { return *this = *this * o; }

    friend AComplex operator+(const AComplex& a, const AComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend AComplex operator-(const AComplex& a, const AComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend AComplex operator-(const AComplex& a) { return {-a.re, -a.im}; }
    friend AComplex operator*(const AComplex& a, const AComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend AComplex operator*(const Real& s, const AComplex& a) { return {s * a.re, s * a.im}; }
    friend AComplex operator/(const AComplex& a, const AComplex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend AComplex operator/(const AComplex& a, const Real& s) { return {a.re / s, a.im / s}; }

    friend AComplex conj(const AComplex& a) { return {a.re, -a.im}; }
    friend Real norm2(const AComplex& a) { return a.re * a.re + a.im * a.im; }
    friend Real abs(const AComplex& a) { return hypot(a.re, a.im); }
    friend Real arg(const AComplex& a) { return atan2(a.im, a.re); }

    /// Principal square root.
    friend AComplex sqrt(const AComplex& a) {
        if (a.re.is_zero() && a.im.is_zero()) return AComplex(a.prec());
        return polar(sqrt(abs(a)), arg(a) / Real(2L, a.prec()));
    }
    /// Principal cube root.
    friend AComplex cbrt(const AComplex& a) {
        if (a.re.is_zero() && a.im.is_zero()) return AComplex(a.prec());
        return polar(cbrt(abs(a)), arg(a) / Real(3L, a.prec()));
    }

    friend std::ostream& operator<<(std::ostream& os, const AComplex& z) {
        return os << '(' << z.re << ", " << z.im << ')';
    }
};

}  // namespace chtg

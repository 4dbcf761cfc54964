#pragma once

/**
 * @file angle.hpp
 * @brief Rationals and exact rational multiples of pi.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chtg {

/// Exact rational number; GMP keeps it reduced with a positive denominator.
using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/**
 * The angle pi * num / den.
 *
 * Stored reduced with 0 <= num/den < 2, i.e. the representative in [0, 2pi).
 * Arithmetic is modulo 2pi. Operations that are not well defined modulo 2pi
 * (halving) go through `Rational` multiples of pi instead, see `from_pi_multiple`.
 */
class Angle {
  public:
    Angle() = default;

    Angle(long num, long den) {
        if (den == 0) throw std::invalid_argument("invalid angle");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long g = std::gcd(num < 0 ? -num : num, den);
        if (g == 0) g = 1;
        num /= g;
        den /= g;
        long period = 2 * den;
        num %= period;
        if (num < 0) num += period;
        num_ = num;
        den_ = den;
    }

    /// Canonical angle for q*pi.
    static Angle from_pi_multiple(const Rational& q) {
        if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
            throw std::overflow_error("angle out of range");
        return Angle(q.get_num().get_si(), q.get_den().get_si());
    }

    long num() const { return num_; }
    long den() const { return den_; }

    /// num/den in [0, 2), the angle in units of pi.
    Rational pi_multiple() const { return Rational(num_, den_); }

    double radians() const { return 3.14159265358979323846 * static_cast<double>(num_) / static_cast<double>(den_); }

    friend Angle operator+(const Angle& a, const Angle& b) { return from_pi_multiple(a.pi_multiple() + b.pi_multiple()); }
    friend Angle operator-(const Angle& a, const Angle& b) { return from_pi_multiple(a.pi_multiple() - b.pi_multiple()); }
    friend Angle operator-(const Angle& a) { return Angle(-a.num_, a.den_); }
    friend Angle operator*(long k, const Angle& a) { return Angle(k * a.num_, a.den_); }

    friend bool operator==(const Angle&, const Angle&) = default;
    /// Orders by value in [0, 2pi).
    friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "13π/45", "π", "0".
    std::string to_string() const {
        if (num_ == 0) return "0";
        std::string s = num_ == 1 ? "" : std::to_string(num_);
        s += "π";
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

  private:
    long num_ = 0;
    long den_ = 1;
};

/// Checked constructor used at API boundaries.
inline Angle angle(long num, long den) { return Angle(num, den); }

}  // namespace chtg

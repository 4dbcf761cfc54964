#pragma once

/**
 * @file trig.hpp
 * @brief Exact trigonometry on rational multiples of pi.
 */

#include "chtg/exact/angle.hpp"
#include "chtg/exact/cyclotomic.hpp"
#include "chtg/exact/real.hpp"

#include <optional>
#include <stdexcept>

namespace chtg {

/// e^{i t} as zeta_{2 den}^{num}.
inline Cyclo root_of_unity(const Angle& t) { return Cyclo::root_of_unity(2 * t.den(), t.num()); }

/// e^{i pi q} for a rational q.
inline Cyclo root_of_unity_pi(const Rational& q) { return root_of_unity(Angle::from_pi_multiple(q)); }

inline Cyclo cos_exact(const Angle& t) {
    return (root_of_unity(t) + root_of_unity(-t)).scaled(Rational(1, 2));
}

inline Cyclo sin_exact(const Angle& t) { return cos_exact(Angle(1, 2) - t); }

inline Cyclo cos_pi(const Rational& q) { return cos_exact(Angle::from_pi_multiple(q)); }
inline Cyclo sin_pi(const Rational& q) { return sin_exact(Angle::from_pi_multiple(q)); }

inline std::optional<Rational> is_rational(const Cyclo& x) { return x.rational_value(); }

inline AComplex to_float(const Cyclo& x, Precision prec = kDefaultPrecision) {
    if (prec < kMinPrecision) throw std::invalid_argument("precision below 53 bits");
    return x.to_float(prec);
}

/// Real part of x, (x + conj x)/2.
inline Cyclo real_part(const Cyclo& x) { return (x + x.conj()).scaled(Rational(1, 2)); }

/// Imaginary part of x, (x - conj x)/(2i).
inline Cyclo imag_part(const Cyclo& x) {
    return ((x - x.conj()) * Cyclo::i_unit()).scaled(Rational(-1, 2));
}

/// |x|^2 = x conj x.
inline Cyclo norm2(const Cyclo& x) { return x * x.conj(); }

/**
 * Exact sign of the real part of x.
 *
 * Zero is decided exactly; otherwise the value is evaluated with rising
 * precision until it clears the rigorous error bound of `Cyclo::to_float`.
 */
inline int real_sign(const Cyclo& x) {
    Cyclo r = real_part(x);
    if (r.is_zero()) return 0;
    if (auto q = r.rational_value()) return sgn(*q);
    double mass = 1.0 + r.abs_coeff_sum();
    for (Precision prec = 64;; prec *= 2) {
        Real v = r.to_float(prec).re;
        Real bound = Real::pow2(3 - static_cast<long>(prec), prec) * Real(mass, prec);
        if (abs(v) > bound) return v.sign();
        if (prec > (Precision(1) << 20)) throw std::runtime_error("sign undecided");
    }
}

/// Exact comparison of real parts: -1, 0 or +1.
inline int compare_real(const Cyclo& a, const Cyclo& b) { return real_sign(a - b); }

}  // namespace chtg

#pragma once

/**
 * @file spectral.hpp
 * @brief Form preservation, signatures, eigenvalues, projective comparison and
 *        isometry types for 3x3 matrices.
 */

#include "chtg/linalg/mat3.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace chtg {

struct Signature {
    int n_pos = 0;
    int n_neg = 0;
    int n_zero = 0;

    bool degenerate() const { return n_zero > 0; }

    /// "(2,1)", "(3,0)", ... or "degenerate".
    std::string verdict() const {
        if (n_zero > 0) return "degenerate";
        return "(" + std::to_string(n_pos) + "," + std::to_string(n_neg) + ")";
    }

    friend bool operator==(const Signature&, const Signature&) = default;
};

enum class ElementType { RegularElliptic, Loxodromic, Boundary };

inline std::string to_string(ElementType t) {
    switch (t) {
        case ElementType::RegularElliptic: return "regular-elliptic";
        case ElementType::Loxodromic: return "loxodromic";
        case ElementType::Boundary: return "boundary";
    }
    return "";
}

/// 10^-digits at the given precision.
inline Real tolerance(int digits, Precision prec = kDefaultPrecision) {
    Real ten(10L, prec);
    Real r(prec);
    mpfr_pow_si(r.get(), ten.get(), -digits, MPFR_RNDN);
    return r;
}

/// Max-norm of M^* H M - H.
inline Real form_residual(const FloatMat& m, const FloatMat& h) { return max_abs(m.adjoint() * h * m - h); }

/// Exact variant: 0 when M preserves H exactly, else the numeric max-norm of the defect.
inline Real form_residual(const ExactMat& m, const ExactMat& h, Precision prec = kDefaultPrecision) {
    ExactMat d = m.adjoint() * h * m - h;
    return max_abs(to_float(d, prec));
}

namespace detail {

/// Sign variations in a sequence, zeros skipped.
inline int sign_changes(std::initializer_list<int> signs) {
    int last = 0, changes = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace detail

/**
 * Exact signature of a Hermitian matrix.
 *
 * The characteristic polynomial x^3 - c1 x^2 + c2 x - c3 has only real roots,
 * so Descartes' rule counts positive and negative roots exactly; the zero
 * multiplicity is the number of vanishing trailing coefficients.
 */
inline Signature hermitian_signature(const ExactMat& h) {
    if (!(h == h.adjoint())) throw std::invalid_argument("non-Hermitian matrix");
    int c1 = real_sign(h.trace());
    int c2 = real_sign(h.principal_minor_sum());
    int c3 = real_sign(h.det());
    Signature s;
    s.n_zero = c3 != 0 ? 0 : (c2 != 0 ? 1 : (c1 != 0 ? 2 : 3));
    s.n_pos = detail::sign_changes({1, -c1, c2, -c3});
    s.n_neg = detail::sign_changes({1, c1, c2, c3});
    return s;
}

/// Roots of x^3 + a x^2 + b x + c.
inline std::array<AComplex, 3> cubic_roots(const AComplex& a, const AComplex& b, const AComplex& c, Precision prec) {
    Precision w = prec + 64;
    AComplex A = a, B = b, C = c;
    A.re = A.re.with_prec(w), A.im = A.im.with_prec(w);
    B.re = B.re.with_prec(w), B.im = B.im.with_prec(w);
    C.re = C.re.with_prec(w), C.im = C.im.with_prec(w);
    Real three(3L, w);
    AComplex d0 = A * A - three * B;
    AComplex d1 = Real(2L, w) * A * A * A - Real(9L, w) * A * B + Real(27L, w) * C;
    AComplex disc = sqrt(d1 * d1 - Real(4L, w) * d0 * d0 * d0);
    AComplex plus = d1 + disc, minus = d1 - disc;
    AComplex big = abs(plus) >= abs(minus) ? plus : minus;
    AComplex cc = cbrt(big / AComplex(2L, w));
    std::array<AComplex, 3> roots{AComplex(w), AComplex(w), AComplex(w)};
    Real tiny = Real::pow2(-static_cast<long>(w) + 16, w);
    if (abs(cc) <= tiny) {
        for (auto& r : roots) r = -(A / AComplex(3L, w));
    } else {
        AComplex xi = AComplex::polar(Real::pi(w) * Real(2L, w) / three);
        AComplex ck = cc;
        for (int k = 0; k < 3; ++k) {
            roots[k] = -(A + ck + d0 / ck) / AComplex(3L, w);
            ck = ck * xi;
        }
    }
    // Newton polish where the derivative is not degenerate.
    for (auto& x : roots) {
        for (int it = 0; it < 4; ++it) {
            AComplex f = ((x + A) * x + B) * x + C;
            AComplex df = (three * x + Real(2L, w) * A) * x + B;
            if (abs(df) <= Real::pow2(-static_cast<long>(w) / 4, w)) break;
            x = x - f / df;
        }
    }
    for (auto& x : roots) {
        x.re = x.re.with_prec(prec);
        x.im = x.im.with_prec(prec);
    }
    return roots;
}

/// Eigenvalues of M as an unordered multiset.
inline std::array<AComplex, 3> eigenvalues3(const FloatMat& m, Precision prec = 0) {
    if (prec == 0) prec = m.prec();
    AComplex tr = m.trace(), c2 = m.principal_minor_sum(), d = m.det();
    return cubic_roots(-tr, c2, -d, prec);
}

/// Numeric signature with eigenvalues below 10^-zero_digits counted as zero.
inline Signature hermitian_signature(const FloatMat& h, int zero_digits = 30) {
    Precision prec = h.prec();
    if (!(max_abs(h - h.adjoint()) <= Real::pow2(-static_cast<long>(prec) / 2, prec)))
        throw std::invalid_argument("non-Hermitian matrix");
    Real thr = tolerance(zero_digits, prec);
    Signature s;
    for (const auto& ev : eigenvalues3(h, prec)) {
        if (abs(ev.re) < thr)
            ++s.n_zero;
        else if (ev.re.sign() > 0)
            ++s.n_pos;
        else
            ++s.n_neg;
    }
    return s;
}

/// Cube roots of unity 1, omega, omega^2.
inline std::array<AComplex, 3> cube_roots_of_unity(Precision prec) {
    Real third = Real::pi(prec) * Real(2L, prec) / Real(3L, prec);
    return {AComplex(1L, prec), AComplex::polar(third), AComplex::polar(Real(2L, prec) * third)};
}

/// min over lambda in {1, w, w^2} of max|A - lambda B|.
inline Real projective_residual(const FloatMat& a, const FloatMat& b) {
    Precision prec = std::max(a.prec(), b.prec());
    std::optional<Real> best;
    for (const auto& lam : cube_roots_of_unity(prec)) {
        Real r = max_abs(a - lam * b);
        if (!best || r < *best) best = r;
    }
    return *best;
}

inline bool projective_equal(const FloatMat& a, const FloatMat& b, const Real& tol) {
    return projective_residual(a, b) <= tol;
}

/// Exact test: A = lambda B for a cube root of unity lambda.
inline bool projective_equal(const ExactMat& a, const ExactMat& b) {
    for (long k = 0; k < 3; ++k) {
        Cyclo lam = Cyclo::root_of_unity(3, k);
        if (a == lam * b) return true;
    }
    return false;
}

/// Least k <= max_order with M^k projectively the identity.
inline std::optional<int> projective_order(const FloatMat& m, int max_order, const Real& tol) {
    if (max_order < 1) throw std::invalid_argument("max_order must be positive");
    FloatMat id = FloatMat::identity(m.prec());
    FloatMat power = m;
    for (int k = 1; k <= max_order; ++k) {
        if (projective_equal(power, id, tol)) return k;
        power = power * m;
    }
    return std::nullopt;
}

inline std::optional<int> projective_order(const ExactMat& m, int max_order) {
    if (max_order < 1) throw std::invalid_argument("max_order must be positive");
    ExactMat id = ExactMat::identity();
    ExactMat power = m;
    for (int k = 1; k <= max_order; ++k) {
        if (projective_equal(power, id)) return k;
        power = power * m;
    }
    return std::nullopt;
}

/// f(tr) = |tr|^4 - 8 Re(tr^3) + 18 |tr|^2 - 27.
inline Real trace_discriminant(const AComplex& tr) {
    Precision p = tr.prec();
    Real n2 = norm2(tr);
    AComplex cube = tr * tr * tr;
    return n2 * n2 - Real(8L, p) * cube.re + Real(18L, p) * n2 - Real(27L, p);
}

inline ElementType classify_isometry(const AComplex& tr, const Real& tol) {
    Real f = trace_discriminant(tr);
    if (abs(f) <= tol) return ElementType::Boundary;
    return f.sign() > 0 ? ElementType::Loxodromic : ElementType::RegularElliptic;
}

inline ElementType classify_isometry(const AComplex& tr) { return classify_isometry(tr, tolerance(30, tr.prec())); }

/// Bottleneck distance between two three-point multisets over all 6 matchings.
inline Real multiset_distance(const std::array<AComplex, 3>& x, const std::array<AComplex, 3>& y) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::optional<Real> best;
    for (const auto& p : perms) {
        Real worst(x[0].prec());
        for (int i = 0; i < 3; ++i) worst = max(worst, abs(x[i] - y[p[i]]));
        if (!best || worst < *best) best = worst;
    }
    return *best;
}

}  // namespace chtg

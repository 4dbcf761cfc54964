#pragma once

/**
 * @file group.hpp
 * @brief Generators R1, R2, R3, the Hermitian form H and the symmetry S.
 *
 * With u = e^{2 pi i/3p}, ubar^{1/2} = e^{-pi i/3p} and alpha = 2 sin(pi/p):
 *
 *     R1 = [u^2, rho, -u conj(tau); 0, ubar, 0; 0, 0, ubar]
 *     R2 = [ubar, 0, 0; -u conj(rho), u^2, sigma; 0, 0, ubar]
 *     R3 = [ubar, 0, 0; 0, ubar, 0; tau, -u conj(sigma), u^2]
 *     H  = [alpha, b1, conj(b3); conj(b1), alpha, b2; b3, conj(b2), alpha]
 *
 * where b1 = -i ubar^{1/2} rho, b2 = -i ubar^{1/2} sigma, b3 = -i ubar^{1/2} tau.
 * In symmetric mode (sigma = tau = sqrt(rho + conj rho), Re rho > 0)
 *
 *     S  = [rho, u(1 - rho - conj rho), u^2 sigma; ubar, 0, 0; 0, ubar sigma, -1].
 *
 * Parameters that are cyclotomic give an exact copy of every matrix; the
 * floating copies are always present.
 */

#include "chtg/linalg.hpp"
#include "chtg/trigroup/rows.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace chtg {

struct GroupParams {
    int p = 2;
    AComplex rho;
    Real sigma;
    Real tau;
    std::optional<Cyclo> rho_exact;
    std::optional<Cyclo> sigma_exact;
    std::optional<Cyclo> tau_exact;
    bool symmetric = false;
    /// Set by build_symmetric.
    int n = 0;
    int m = 0;
    int im_sign = 1;

    bool exact() const { return rho_exact && sigma_exact && tau_exact; }
    /// phi = 2 pi/p
    Angle phi() const { return angle(2, p); }
};

template <class T>
struct GroupMatrices {
    Mat3<T> R1, R2, R3, H;
    std::optional<Mat3<T>> S;
};

struct Group {
    GroupParams params;
    Precision prec = kDefaultPrecision;
    FloatMat R1, R2, R3, H;
    std::optional<FloatMat> S;
    std::array<FloatMat, 3> inverses;
    std::optional<GroupMatrices<Cyclo>> exact;
    Signature signature;
    /// True when H does not have signature (2,1).
    bool signature_warning = false;

    const FloatMat& generator(int i) const {
        switch (i) {
            case 1: return R1;
            case 2: return R2;
            case 3: return R3;
            case -1: return inverses[0];
            case -2: return inverses[1];
            case -3: return inverses[2];
        }
        throw std::invalid_argument("generator index out of range");
    }

    const FloatMat& symmetry() const {
        if (!S) throw std::invalid_argument("group is not in symmetric mode");
        return *S;
    }

    AComplex u() const { return AComplex::polar(Real::pi(prec) * Real(2L, prec) / Real(3L * params.p, prec)); }
};

namespace detail {

template <class T>
struct GroupScalars {
    T one, u, ubar, ubar_half, i, alpha, rho, sigma, tau;
};

template <class T>
GroupMatrices<T> assemble(const GroupScalars<T>& c, bool with_s, Precision prec) {
    using Tr = ScalarTraits<T>;
    const T zero = Tr::zero(prec);
    const T& u = c.u;
    const T& ub = c.ubar;
    T u2 = u * u;
    GroupMatrices<T> g{
        Mat3<T>({u2, c.rho, zero - u * Tr::conj(c.tau), zero, ub, zero, zero, zero, ub}, prec),
        Mat3<T>({ub, zero, zero, zero - u * Tr::conj(c.rho), u2, c.sigma, zero, zero, ub}, prec),
        Mat3<T>({ub, zero, zero, zero, ub, zero, c.tau, zero - u * Tr::conj(c.sigma), u2}, prec),
        Mat3<T>(prec),
        std::nullopt};
    T k = zero - c.i * c.ubar_half;
    T b1 = k * c.rho, b2 = k * c.sigma, b3 = k * c.tau;
    g.H = Mat3<T>({c.alpha, b1, Tr::conj(b3), Tr::conj(b1), c.alpha, b2, b3, Tr::conj(b2), c.alpha}, prec);
    if (with_s) {
        T re2 = c.rho + Tr::conj(c.rho);
        g.S = Mat3<T>({c.rho, u * (c.one - re2), u2 * c.sigma, ub, zero, zero, zero, ub * c.sigma, zero - c.one},
                      prec);
    }
    return g;
}

inline GroupScalars<Cyclo> exact_scalars(int p, const Cyclo& rho, const Cyclo& sigma, const Cyclo& tau) {
    return {Cyclo(1),
            Cyclo::root_of_unity(3L * p, 1),
            Cyclo::root_of_unity(3L * p, -1),
            Cyclo::root_of_unity(6L * p, -1),
            Cyclo::i_unit(),
            sin_exact(angle(1, p)).scaled(2),
            rho,
            sigma,
            tau};
}

inline GroupScalars<AComplex> float_scalars(int p, const AComplex& rho, const Real& sigma, const Real& tau,
                                             Precision prec) {
    Real pi = Real::pi(prec);
    Real theta = pi * Real(2L, prec) / Real(3L * p, prec);
    return {AComplex(1L, prec),
            AComplex::polar(theta),
            AComplex::polar(-theta),
            AComplex::polar(-pi / Real(3L * p, prec)),
            AComplex::i_unit(prec),
            AComplex(Real(2L, prec) * sin(pi / Real(static_cast<long>(p), prec))),
            rho,
            AComplex(sigma),
            AComplex(tau)};
}

inline void finish_group(Group& g) {
    g.inverses = {g.R1.inverse(), g.R2.inverse(), g.R3.inverse()};
    g.signature = g.exact ? hermitian_signature(g.exact->H) : hermitian_signature(g.H);
    g.signature_warning = g.signature != Signature{2, 1, 0};
}

inline Real with_prec(const Real& x, Precision prec) { return x.with_prec(prec); }

inline AComplex with_prec(const AComplex& z, Precision prec) { return {z.re.with_prec(prec), z.im.with_prec(prec)}; }

}  // namespace detail

/// Exact test that 2cos(pi/m) >= 2cos^2(pi/n).
inline bool symmetric_feasible(int n, int m) {
    Cyclo cn = cos_exact(angle(1, n));
    Cyclo lhs = cos_exact(angle(1, m)).scaled(2);
    return compare_real(lhs, (cn * cn).scaled(2)) >= 0;
}

/**
 * Group from floating parameters. `attach_s` builds S from rho and sigma even
 * when the parameters are not symmetric, for sensitivity probes.
 */
inline Group build_group(int p, const AComplex& rho, const Real& sigma, const Real& tau,
                         Precision prec = default_precision(), bool attach_s = false) {
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    Group g;
    g.prec = prec;
    g.params.p = p;
    g.params.rho = detail::with_prec(rho, prec);
    g.params.sigma = sigma.with_prec(prec);
    g.params.tau = tau.with_prec(prec);
    Real tol = Real::pow2(-static_cast<long>(prec) / 2, prec);
    Real re2 = Real(2L, prec) * g.params.rho.re;
    g.params.symmetric = g.params.rho.re.sign() > 0 && abs(g.params.sigma - g.params.tau) <= tol &&
                         abs(g.params.sigma * g.params.sigma - re2) <= tol;
    auto c = detail::float_scalars(p, g.params.rho, g.params.sigma, g.params.tau, prec);
    auto mats = detail::assemble(c, g.params.symmetric || attach_s, prec);
    g.R1 = mats.R1;
    g.R2 = mats.R2;
    g.R3 = mats.R3;
    g.H = mats.H;
    g.S = mats.S;
    detail::finish_group(g);
    return g;
}

/// Group from cyclotomic parameters; sigma and tau must be real.
inline Group build_group(int p, const Cyclo& rho, const Cyclo& sigma, const Cyclo& tau,
                         Precision prec = default_precision()) {
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    if (!sigma.is_real() || !tau.is_real()) throw std::invalid_argument("sigma and tau must be real");
    Group g;
    g.prec = prec;
    g.params.p = p;
    g.params.rho = rho.to_float(prec);
    g.params.sigma = sigma.to_float(prec).re;
    g.params.tau = tau.to_float(prec).re;
    g.params.rho_exact = rho;
    g.params.sigma_exact = sigma;
    g.params.tau_exact = tau;
    g.params.symmetric =
        real_sign(rho) > 0 && sigma == tau && real_sign(sigma) >= 0 && sigma * sigma == rho + rho.conj();
    auto mats = detail::assemble(detail::exact_scalars(p, rho, sigma, tau), g.params.symmetric, prec);
    g.R1 = to_float(mats.R1, prec);
    g.R2 = to_float(mats.R2, prec);
    g.R3 = to_float(mats.R3, prec);
    g.H = to_float(mats.H, prec);
    if (mats.S) g.S = to_float(*mats.S, prec);
    g.exact = std::move(mats);
    detail::finish_group(g);
    return g;
}

/**
 * Symmetric group from rho alone: sigma = tau = sqrt(rho + conj rho).
 *
 * The square root is taken exactly when it is supplied or rational, otherwise
 * the group is built on the floating path.
 */
inline Group build_from_rho(int p, const Cyclo& rho, std::optional<Cyclo> sigma = std::nullopt,
                            Precision prec = default_precision()) {
    Cyclo re2 = rho + rho.conj();
    if (real_sign(rho) <= 0) throw std::domain_error("no such symmetric group");
    if (!sigma) {
        auto q = re2.rational_value();
        if (q && q->get_num() > 0) {
            mpz_class a, b;
            if (mpz_perfect_square_p(q->get_num().get_mpz_t()) && mpz_perfect_square_p(q->get_den().get_mpz_t())) {
                mpz_sqrt(a.get_mpz_t(), q->get_num().get_mpz_t());
                mpz_sqrt(b.get_mpz_t(), q->get_den().get_mpz_t());
                sigma = Cyclo(Rational(a, b));
            }
        }
    }
    if (sigma) {
        if (!(*sigma * *sigma == re2) || real_sign(*sigma) < 0) throw std::invalid_argument("sigma^2 != rho + conj(rho)");
        return build_group(p, rho, *sigma, *sigma, prec);
    }
    AComplex r = rho.to_float(prec);
    Real s = sqrt(Real(2L, prec) * r.re);
    return build_group(p, r, s, s, prec);
}

/**
 * The symmetric group with |rho| = 2cos(pi/m), sigma = tau = 2cos(pi/n),
 * Re rho = 2cos^2(pi/n) and sign(Im rho) = im_sign.
 */
inline Group build_symmetric(int p, int n, int m, int im_sign = 1, Precision prec = default_precision()) {
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    if (n < 3 || m < 3) throw std::invalid_argument("n and m must be at least 3");
    if (im_sign != 1 && im_sign != -1) throw std::invalid_argument("im_sign must be +1 or -1");
    if (!symmetric_feasible(n, m)) throw std::domain_error("no such symmetric group");
    Cyclo sigma = cos_exact(angle(1, n)).scaled(2);
    Cyclo re = (sigma * sigma).scaled(Rational(1, 2));
    Cyclo mod = cos_exact(angle(1, m)).scaled(2);
    Cyclo im2 = mod * mod - re * re;

    std::optional<Cyclo> rho;
    if (im2.is_zero()) {
        rho = re;
    } else if (auto r = candidate_rho(n, m)) {
        if (!(real_part(*r) == re) || !(norm2(*r) == mod * mod) || real_sign(imag_part(*r)) <= 0)
            throw std::logic_error("candidate row inconsistent with (n, m)");
        rho = im_sign > 0 ? *r : r->conj();
    }

    Group g;
    if (rho) {
        g = build_group(p, *rho, sigma, sigma, prec);
    } else {
        Real im = sqrt(im2.to_float(prec + 32).re).with_prec(prec);
        if (im_sign < 0) im = -im;
        AComplex r(re.to_float(prec).re, im);
        Real s = sigma.to_float(prec).re;
        g = build_group(p, r, s, s, prec);
    }
    g.params.n = n;
    g.params.m = m;
    g.params.im_sign = im_sign;
    return g;
}

/// The symmetry S of a symmetric-mode group.
inline const FloatMat& symmetry_S(const Group& g) { return g.symmetry(); }

inline const ExactMat& symmetry_S_exact(const Group& g) {
    if (!g.exact || !g.exact->S) throw std::invalid_argument("group has no exact symmetric-mode S");
    return *g.exact->S;
}

/**
 * e^{-i phi/3} (z + (e^{i phi} - 1) <z, v>/<v, v> v) as a matrix, <z, v> = v^* H z.
 */
inline ExactMat reflection_matrix(const Angle& phi, const std::array<Cyclo, 3>& v, const ExactMat& h) {
    Cyclo vv = inner(v, v, h);
    if (!vv.is_real() || real_sign(vv) <= 0) throw std::domain_error("polar vector not positive");
    Cyclo coef = (root_of_unity(phi) - Cyclo(1)) * vv.inverse();
    std::array<Cyclo, 3> row;  // v^* H
    for (int j = 0; j < 3; ++j) {
        Cyclo acc;
        for (int i = 0; i < 3; ++i) acc += v[i].conj() * h(i, j);
        row[j] = acc;
    }
    ExactMat m = ExactMat::identity();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) += coef * v[i] * row[j];
    Cyclo scale = root_of_unity_pi(-phi.pi_multiple() / 3);
    return scale * m;
}

inline FloatMat reflection_matrix(const Angle& phi, const std::array<AComplex, 3>& v, const FloatMat& h) {
    Precision prec = h.prec();
    AComplex vv = inner(v, v, h);
    Real tol = Real::pow2(-static_cast<long>(prec) / 2, prec);
    if (!(vv.re > tol)) throw std::domain_error("polar vector not positive");
    Real th = Real(phi.pi_multiple(), prec) * Real::pi(prec);
    AComplex coef = (AComplex::polar(th) - AComplex(1L, prec)) / vv;
    std::array<AComplex, 3> row{AComplex(prec), AComplex(prec), AComplex(prec)};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) row[j] += conj(v[i]) * h(i, j);
    FloatMat m = FloatMat::identity(prec);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) += coef * v[i] * row[j];
    AComplex scale = AComplex::polar(-th / Real(3L, prec));
    return scale * m;
}

}  // namespace chtg

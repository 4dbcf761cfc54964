#pragma once

/**
 * @file verify.hpp
 * @brief Words, braid lengths, trace formulas, the symmetry relations and the
 *        eigenvalue prediction for R1 R2.
 */

#include "chtg/trigroup/group.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chtg {

/// Signed generator indices; -i stands for the inverse of R_i.
struct Word {
    std::vector<int> letters;

    /// Parses whitespace- or comma-separated indices such as "1 2 -3".
    static Word parse(const std::string& text) {
        Word w;
        std::string cleaned = text;
        for (char& c : cleaned)
            if (c == ',' || c == '[' || c == ']') c = ' ';
        std::istringstream is(cleaned);
        std::string tok;
        while (is >> tok) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("invalid word token: " + tok);
            }
            if (used != tok.size() || v == 0 || v < -3 || v > 3) throw std::invalid_argument("invalid word token: " + tok);
            w.letters.push_back(v);
        }
        return w;
    }

    /// The formal inverse: reversed with every letter inverted.
    Word inverse() const {
        Word w;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(-*it);
        return w;
    }

    Word operator+(const Word& o) const {
        Word w = *this;
        w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
        return w;
    }

    std::string to_string() const {
        std::string s;
        for (int l : letters) {
            if (!s.empty()) s += ' ';
            s += std::to_string(l);
        }
        return s;
    }
};

inline ExactMat evaluate_word_exact(const Group& g, const Word& w) {
    if (!g.exact) throw std::invalid_argument("group has no exact matrices");
    ExactMat m = ExactMat::identity();
    for (int l : w.letters) {
        int i = l < 0 ? -l : l;
        const ExactMat& r = i == 1 ? g.exact->R1 : (i == 2 ? g.exact->R2 : g.exact->R3);
        m = m * (l < 0 ? r.adjugate() : r);
    }
    return m;
}

/**
 * Left-to-right product of the letters; the empty word is the identity.
 * Exact groups multiply exactly and round once.
 */
inline FloatMat evaluate_word(const Group& g, const Word& w) {
    if (g.exact) return to_float(evaluate_word_exact(g, w), g.prec);
    FloatMat m = FloatMat::identity(g.prec);
    for (int l : w.letters) m = m * g.generator(l);
    return m;
}

/**
 * Least l in [2, max_l] with the alternating products ABA... and BAB... of l
 * factors projectively equal; nullopt means "> max_l".
 */
inline std::optional<int> braid_length(const FloatMat& a, const FloatMat& b, int max_l, const Real& tol) {
    if (max_l < 2) throw std::invalid_argument("max_l must be at least 2");
    FloatMat pab = a * b, pba = b * a;
    for (int l = 2;; ++l) {
        if (projective_equal(pab, pba, tol)) return l;
        if (l == max_l) return std::nullopt;
        bool next_odd = (l + 1) % 2 == 1;
        pab = pab * (next_odd ? a : b);
        pba = pba * (next_odd ? b : a);
    }
}

inline std::optional<int> braid_length(const ExactMat& a, const ExactMat& b, int max_l) {
    if (max_l < 2) throw std::invalid_argument("max_l must be at least 2");
    ExactMat pab = a * b, pba = b * a;
    for (int l = 2;; ++l) {
        if (projective_equal(pab, pba)) return l;
        if (l == max_l) return std::nullopt;
        bool next_odd = (l + 1) % 2 == 1;
        pab = pab * (next_odd ? a : b);
        pba = pba * (next_odd ? b : a);
    }
}

/// br(R2,R3), br(R1,R3), br(R1,R2), br(R1, R3^-1 R2 R3): the (l1, l2, l3; l4) type.
struct BraidReport {
    std::array<std::optional<int>, 4> lengths;

    /// "(3,3,4;4)", with ">24" for lengths beyond the bound.
    std::string to_string(int max_l) const {
        auto f = [&](const std::optional<int>& v) { return v ? std::to_string(*v) : ">" + std::to_string(max_l); };
        return "(" + f(lengths[0]) + "," + f(lengths[1]) + "," + f(lengths[2]) + ";" + f(lengths[3]) + ")";
    }
};

inline BraidReport braid_report(const Group& g, int max_l, const Real& tol) {
    FloatMat conj = g.inverses[2] * g.R2 * g.R3;
    return {{braid_length(g.R2, g.R3, max_l, tol), braid_length(g.R1, g.R3, max_l, tol),
             braid_length(g.R1, g.R2, max_l, tol), braid_length(g.R1, conj, max_l, tol)}};
}

struct TraceInvariants {
    /// tr(R1R2), tr(R2R3), tr(R1R3), tr(R1 R3^-1 R2 R3)
    std::array<AComplex, 4> from_matrices;
    std::array<AComplex, 4> closed_form;
    Real max_difference;
    /// Set when both sides were compared in exact arithmetic.
    bool exact = false;
};

/// Traces by multiplication and by tr = u(2 - |x|^2) + ubar^2; throws on disagreement.
inline TraceInvariants trace_invariants(const Group& g, const Real& tol) {
    TraceInvariants out{{AComplex(g.prec), AComplex(g.prec), AComplex(g.prec), AComplex(g.prec)},
                        {AComplex(g.prec), AComplex(g.prec), AComplex(g.prec), AComplex(g.prec)},
                        Real(g.prec)};
    if (g.exact && g.params.exact()) {
        const auto& e = *g.exact;
        const Cyclo& rho = *g.params.rho_exact;
        const Cyclo& sigma = *g.params.sigma_exact;
        const Cyclo& tau = *g.params.tau_exact;
        Cyclo u = Cyclo::root_of_unity(3L * g.params.p, 1);
        Cyclo ub2 = Cyclo::root_of_unity(3L * g.params.p, -2);
        auto closed = [&](const Cyclo& x) { return u * (Cyclo(2) - norm2(x)) + ub2; };
        std::array<Cyclo, 4> mt{(e.R1 * e.R2).trace(), (e.R2 * e.R3).trace(), (e.R1 * e.R3).trace(),
                                (e.R1 * e.R3.adjugate() * e.R2 * e.R3).trace()};
        std::array<Cyclo, 4> cf{closed(rho), closed(sigma), closed(tau), closed(sigma * tau - rho.conj())};
        for (int k = 0; k < 4; ++k) {
            if (!(mt[k] == cf[k])) throw std::logic_error("trace formula mismatch");
            out.from_matrices[k] = mt[k].to_float(g.prec);
            out.closed_form[k] = cf[k].to_float(g.prec);
        }
        out.exact = true;
        return out;
    }
    Precision prec = g.prec;
    AComplex u = g.u();
    AComplex ub2 = conj(u * u);
    auto closed = [&](const AComplex& x) { return u * (AComplex(2L, prec) - AComplex(norm2(x))) + ub2; };
    AComplex sig(g.params.sigma), tau(g.params.tau);
    out.from_matrices = {(g.R1 * g.R2).trace(), (g.R2 * g.R3).trace(), (g.R1 * g.R3).trace(),
                         (g.R1 * g.inverses[2] * g.R2 * g.R3).trace()};
    out.closed_form = {closed(g.params.rho), closed(sig), closed(tau), closed(sig * tau - conj(g.params.rho))};
    for (int k = 0; k < 4; ++k) out.max_difference = max(out.max_difference, abs(out.from_matrices[k] - out.closed_form[k]));
    if (out.max_difference > tol) throw std::logic_error("trace formula mismatch");
    return out;
}

struct SymmetryItem {
    std::string name;
    Real residual;
    bool pass = false;
};

struct SymmetryReport {
    std::vector<SymmetryItem> identities;
    std::vector<SymmetryItem> vector_relations;
    /// S^2 = R1 R2 R3 as exact matrices, when the group is exact.
    std::optional<bool> exact_s_squared;

    bool pass() const {
        for (const auto& i : identities)
            if (!i.pass) return false;
        for (const auto& i : vector_relations)
            if (!i.pass) return false;
        return !exact_s_squared || *exact_s_squared;
    }
};

/// The symmetry relations, projectively, plus the polar-vector relations.
inline SymmetryReport verify_symmetry(const Group& g, const Real& tol) {
    if (!g.S) throw std::invalid_argument("group is not in symmetric mode");
    if (g.params.rho.re.sign() <= 0) throw std::invalid_argument("group is not in symmetric mode");
    const FloatMat& S = *g.S;
    FloatMat Si = S.inverse();
    const FloatMat &R1 = g.R1, &R2 = g.R2, &R3 = g.R3;
    const FloatMat &R1i = g.inverses[0], &R3i = g.inverses[2];
    SymmetryReport rep;
    auto add = [&](std::vector<SymmetryItem>& list, const std::string& name, Real r) {
        bool ok = r <= tol;
        list.push_back({name, std::move(r), ok});
    };
    add(rep.identities, "S^2 = R1R2R3", projective_residual(S * S, R1 * R2 * R3));
    add(rep.identities, "S R1 S^-1 = R1R2R1^-1", projective_residual(S * R1 * Si, R1 * R2 * R1i));
    add(rep.identities, "S R2 S^-1 = R1R3R1R3^-1R1^-1", projective_residual(S * R2 * Si, R1 * R3 * R1 * R3i * R1i));
    add(rep.identities, "S R3 S^-1 = R1R3R1^-1", projective_residual(S * R3 * Si, R1 * R3 * R1i));
    add(rep.identities, "S(R2R3)S^-1 = R1R3", projective_residual(S * R2 * R3 * Si, R1 * R3));
    add(rep.identities, "S(R1R3^-1R2R3)S^-1 = R1R2", projective_residual(S * R1 * R3i * R2 * R3 * Si, R1 * R2));

    Precision prec = g.prec;
    auto basis = [&](int k) {
        std::array<AComplex, 3> v{AComplex(prec), AComplex(prec), AComplex(prec)};
        v[k] = AComplex(1L, prec);
        return v;
    };
    auto diff = [](const std::array<AComplex, 3>& x, const std::array<AComplex, 3>& y) {
        Real r(x[0].prec());
        for (int k = 0; k < 3; ++k) r = max(r, abs(x[k] - y[k]));
        return r;
    };
    auto v1 = basis(0), v2 = basis(1), v3 = basis(2);
    add(rep.vector_relations, "S v1 = R1 v2", diff(mat_vec(S, v1), mat_vec(R1, v2)));
    add(rep.vector_relations, "S v2 = R1R3 v1", diff(mat_vec(S, v2), mat_vec(FloatMat(R1 * R3), v1)));
    FloatMat mu_r1 = (-g.u()) * R1;
    add(rep.vector_relations, "S v3 = -u R1 v3", diff(mat_vec(S, v3), mat_vec(mu_r1, v3)));

    if (g.exact && g.exact->S) {
        const auto& e = *g.exact;
        rep.exact_s_squared = (*e.S * *e.S) == e.R1 * e.R2 * e.R3;
    }
    return rep;
}

/**
 * Distance between the eigenvalues of R1 R2 and {ubar^2, -u e^{2i zeta}, -u e^{-2i zeta}}
 * where |rho| = 2cos(zeta).
 */
inline Real lemma21_eigencheck(const Group& g, const Real& tol) {
    Precision prec = g.prec;
    FloatMat m = g.R1 * g.R2;
    Real mod = abs(g.params.rho);
    if (mod > Real(2L, prec) + tol || classify_isometry(m.trace(), tol) == ElementType::Loxodromic)
        throw std::domain_error("lemma hypothesis violated");
    Real half = mod / Real(2L, prec);
    if (half > Real(1L, prec)) half = Real(1L, prec);
    Real zeta = acos(half);
    AComplex u = g.u();
    AComplex e2 = AComplex::polar(Real(2L, prec) * zeta);
    std::array<AComplex, 3> predicted{conj(u * u), -(u * e2), -(u * conj(e2))};
    return multiset_distance(eigenvalues3(m, prec), predicted);
}

}  // namespace chtg

#pragma once

/**
 * @file scan.hpp
 * @brief Signature scans over p, closed-form comparisons and the parameter table.
 *
 * The exact determinant of H is the reference everywhere; printed statements
 * and formulas are checked against it.
 */

#include "chtg/reports/registry.hpp"

#include <optional>
#include <thread>

namespace chtg {

struct SignatureRow {
    int p = 2;
    std::optional<Cyclo> det_exact;
    Real det;
    int det_sign = 0;
    /// Inertia of H; "(1,2)" occurs when det(H) > 0 but H is indefinite.
    Signature signature;
    std::string verdict;
    /// (2,1) iff det < 0, degenerate iff det = 0, otherwise (3,0) or (1,2).
    bool consistent = true;
};

struct SignatureReport {
    std::string candidate;
    std::vector<SignatureRow> rows;
};

namespace detail {

inline SignatureRow signature_row(const CandidateSpec& c, int p, Precision prec) {
    Group g = c.build(p, prec);
    SignatureRow r;
    r.p = p;
    r.signature = g.signature;
    r.verdict = g.signature.verdict();
    int& sign = r.det_sign;
    if (g.exact) {
        r.det_exact = g.exact->H.det();
        r.det = r.det_exact->to_float(prec).re;
        sign = real_sign(*r.det_exact);
    } else {
        r.det = g.H.det().re;
        sign = r.det.sign();
    }
    const Signature& s = g.signature;
    r.consistent = (s == Signature{2, 1, 0} && sign < 0) || (s.degenerate() && sign == 0) ||
                   ((s == Signature{3, 0, 0} || s == Signature{1, 2, 0}) && sign > 0);
    return r;
}

}  // namespace detail

/// Verdict per p in [p_min, p_max]. Throws std::invalid_argument for unknown candidates or ranges.
inline SignatureReport signature_scan(const std::string& candidate, int p_min, int p_max,
                                      Precision prec = default_precision(), unsigned workers = 1) {
    if (p_min < 2 || p_max < p_min) throw std::invalid_argument("invalid p range");
    if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
    CandidateSpec c = find_candidate(candidate);
    SignatureReport rep;
    rep.candidate = c.id;
    rep.rows.resize(p_max - p_min + 1);
    auto work = [&](unsigned w) {
        for (int p = p_min + static_cast<int>(w); p <= p_max; p += static_cast<int>(workers))
            rep.rows[p - p_min] = detail::signature_row(c, p, prec);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return rep;
}

struct ClaimMismatch {
    int p;
    std::string expected, actual;
};

/// Sign of det(H) implied by a printed verdict: (2,1) < 0, degenerate = 0, (3,0) > 0.
inline int det_sign_of(const std::string& verdict) {
    if (verdict == "(2,1)") return -1;
    if (verdict == "degenerate") return 0;
    if (verdict == "(3,0)") return 1;
    throw std::invalid_argument("unknown verdict: " + verdict);
}

/**
 * A statement holds when the sign of the exact det(H) matches at every p.
 * Rows where the sign matches but the inertia differs (printed (3,0), exact
 * (1,2)) are listed separately as inertia notes.
 */
struct ClaimCheck {
    SignatureClaim claim;
    int p_lo = 2, p_hi = 2;
    std::vector<ClaimMismatch> mismatches;
    std::vector<ClaimMismatch> inertia_notes;
    bool holds() const { return mismatches.empty(); }

    std::string summary() const {
        std::string s;
        if (holds()) {
            s = "holds for p=" + std::to_string(p_lo) + ".." + std::to_string(p_hi);
        } else {
            s = "MISMATCH with statement \"" + claim.statement + "\":";
            for (const auto& mm : mismatches)
                s += " p=" + std::to_string(mm.p) + " expected " + mm.expected + ", exact det gives " + mm.actual + ";";
            s.pop_back();
        }
        if (!inertia_notes.empty()) {
            s += "; inertia differs at p=";
            for (std::size_t i = 0; i < inertia_notes.size(); ++i)
                s += (i ? "," : "") + std::to_string(inertia_notes[i].p);
            s += " (printed " + inertia_notes[0].expected + ", exact " + inertia_notes[0].actual + ", det > 0)";
        }
        return s;
    }
};

/// Checks a printed statement on its range intersected with [2, p_max].
inline ClaimCheck check_claim(const SignatureClaim& claim, int p_max, Precision prec = default_precision(),
                              unsigned workers = 1) {
    ClaimCheck out;
    out.claim = claim;
    out.p_lo = claim.p_lo;
    out.p_hi = std::min(claim.p_hi, p_max);
    if (out.p_hi < out.p_lo) return out;
    SignatureReport rep = signature_scan(claim.candidate, out.p_lo, out.p_hi, prec, workers);
    for (const auto& r : rep.rows) {
        std::string want = claim.expected(r.p);
        if (det_sign_of(want) != r.det_sign)
            out.mismatches.push_back({r.p, want, r.verdict});
        else if (want != r.verdict)
            out.inertia_notes.push_back({r.p, want, r.verdict});
    }
    return out;
}

struct ClosedFormCheck {
    std::string formula_id;
    std::string candidate;
    std::string expression;
    int p = 2;
    Cyclo closed;
    Cyclo matrix;
    Real closed_value, matrix_value, abs_difference;
    bool exact_equal = false;
    bool agree = false;
};

/// Closed form against the exact matrix determinant; agreement means exact or within 1e-40.
inline ClosedFormCheck detH_closed_form(const ClosedForm& f, int p, Precision prec = default_precision()) {
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    ClosedFormCheck c;
    c.formula_id = f.formula_id;
    c.candidate = f.candidate;
    c.expression = f.expression;
    c.p = p;
    c.closed = f.evaluate(p);
    Group g = find_candidate(f.candidate).build(p, prec);
    if (!g.exact) throw std::logic_error("closed-form candidate without exact parameters");
    c.matrix = g.exact->H.det();
    c.exact_equal = c.closed == c.matrix;
    AComplex cf = c.closed.to_float(prec), mf = c.matrix.to_float(prec);
    c.closed_value = cf.re;
    c.matrix_value = mf.re;
    c.abs_difference = abs(cf - mf);
    c.agree = c.exact_equal || c.abs_difference <= Real(1e-40, prec);
    return c;
}

inline ClosedFormCheck detH_closed_form(const std::string& formula_id, int p, Precision prec = default_precision()) {
    return detH_closed_form(find_closed_form(formula_id), p, prec);
}

// ---------------------------------------------------------------------------

struct TheoremRow {
    int n = 0, m = 0;
    /// Printed values, entered as exact cyclotomic expressions.
    Cyclo rho, s, sigma;
    std::string rho_text, s_text, sigma_text;
    /// Checks: |rho| = 2cos(pi/m), rho + conj rho = sigma^2, s = rho - 1,
    /// sigma = 2cos(pi/n), tr(S) of the built group is rho - 1 (or its conjugate),
    /// and the angle decomposition gives s up to omega and conjugation.
    bool modulus_ok = false, sigma_square_ok = false, s_ok = false, sigma_ok = false, group_ok = false,
         angles_ok = false;
    bool ok() const { return modulus_ok && sigma_square_ok && s_ok && sigma_ok && group_ok && angles_ok; }
};

namespace detail {

inline Cyclo e_pi(long num, long den) { return root_of_unity_pi(Rational(num, den)); }

inline TheoremRow validate_theorem_row(TheoremRow r) {
    Cyclo mod = cos_exact(angle(1, r.m)).scaled(2);
    r.modulus_ok = norm2(r.rho) == mod * mod;
    r.sigma_square_ok = r.rho + r.rho.conj() == r.sigma * r.sigma;
    r.s_ok = r.s == r.rho - Cyclo(1);
    r.sigma_ok = r.sigma == cos_exact(angle(1, r.n)).scaled(2);
    Group g = build_symmetric(3, r.n, r.m, 1, 256);
    Cyclo trs = g.exact->S->trace();
    r.group_ok = trs == r.rho - Cyclo(1) || trs == (r.rho - Cyclo(1)).conj();
    auto ab = candidate_angles(r.n, r.m);
    Cyclo t = unit_triple_sum(ab->first, ab->second);
    bool match = false;
    for (int k = 0; k < 3; ++k) {
        Cyclo w = Cyclo::root_of_unity(3, k);
        match |= t == w * r.s || t == w * r.s.conj();
    }
    r.angles_ok = match;
    return r;
}

}  // namespace detail

/// The five sporadic rows and the diagonal row at k = k_diag.
inline std::vector<TheoremRow> theorem_table(int k_diag = 6) {
    if (k_diag < 3) throw std::invalid_argument("k must be at least 3");
    using detail::e_pi;
    Cyclo i = Cyclo::i_unit();
    Cyclo sqrt2 = cos_pi(Rational(1, 4)).scaled(2);
    Cyclo sqrt3 = cos_pi(Rational(1, 6)).scaled(2);
    Cyclo sqrt5 = cos_pi(Rational(1, 5)).scaled(4) - Cyclo(1);
    // i sqrt7 = 1 + 2(z + z^2 + z^4), z = e^{2 pi i/7}
    Cyclo i_sqrt7 = Cyclo(1) + (e_pi(2, 7) + e_pi(4, 7) + e_pi(8, 7)).scaled(2);
    Cyclo half(Rational(1, 2));

    std::vector<TheoremRow> rows;
    auto add = [&](int n, int m, Cyclo rho, Cyclo s, Cyclo sigma, std::string rt, std::string st, std::string gt) {
        TheoremRow r;
        r.n = n;
        r.m = m;
        r.rho = std::move(rho);
        r.s = std::move(s);
        r.sigma = std::move(sigma);
        r.rho_text = std::move(rt);
        r.s_text = std::move(st);
        r.sigma_text = std::move(gt);
        rows.push_back(detail::validate_theorem_row(std::move(r)));
    };
    add(3, 4, (Cyclo(1) + i_sqrt7) * half, e_pi(2, 7) + e_pi(4, 7) + e_pi(-6, 7), Cyclo(1), "(1+i sqrt7)/2",
        "e^{2pi i/7}+e^{4pi i/7}+e^{-6pi i/7}", "1");
    add(3, 5, e_pi(2, 5) * cos_pi(Rational(1, 5)).scaled(2), e_pi(2, 5) + e_pi(7, 15) + e_pi(-13, 15), Cyclo(1),
        "2e^{2pi i/5}cos(pi/5)", "e^{2pi i/5}+e^{7pi i/15}+e^{-13pi i/15}", "1");
    add(4, 3, Cyclo(1), Cyclo(), sqrt2, "1", "0", "sqrt2");
    add(5, 4, (Cyclo(1) + i * sqrt3) * (sqrt5 - i * sqrt3) * Cyclo(Rational(1, 4)),
        e_pi(-2, 3) + e_pi(2, 15) + e_pi(8, 15), (Cyclo(1) + sqrt5) * half, "(1+i sqrt3)(sqrt5-i sqrt3)/4",
        "e^{-2pi i/3}+e^{2pi i/15}+e^{8pi i/15}", "(1+sqrt5)/2");
    add(8, 6, (Cyclo(1) + i) * (Cyclo(1) - i * sqrt2.inverse()), e_pi(1, 2) + e_pi(1, 12) + e_pi(-7, 12),
        cos_pi(Rational(1, 8)).scaled(2), "(1+i)(1-i/sqrt2)", "e^{pi i/2}+e^{pi i/12}+e^{-7pi i/12}",
        "sqrt(2+sqrt2)");
    int k = k_diag;
    std::string ks = std::to_string(k);
    add(k, k, e_pi(1, k) * cos_pi(Rational(1, k)).scaled(2), e_pi(2, k), cos_pi(Rational(1, k)).scaled(2),
        "2e^{i pi/" + ks + "}cos(pi/" + ks + ")", "e^{2pi i/" + ks + "}", "2cos(pi/" + ks + ")");
    return rows;
}

}  // namespace chtg

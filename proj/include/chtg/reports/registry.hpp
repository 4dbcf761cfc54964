#pragma once

/**
 * @file registry.hpp
 * @brief Named candidate groups, printed signature statements and printed det(H) formulas.
 *
 * Candidate ids: "(n,m)+" / "(n,m)-" for the symmetric group with
 * sign(Im rho) = +-1, and "s=-exp(-i*pi/3)", "s=-exp(i*pi/3)" for the two
 * groups built from s directly (rho = 1 + s).
 */

#include "chtg/trigroup.hpp"

#include <climits>
#include <functional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chtg {

struct CandidateSpec {
    std::string id;
    int n = 0;
    int m = 0;
    int im_sign = 1;
    /// Description of s = tr(S).
    std::string s_label;
    std::function<Group(int p, Precision prec)> build;
};

inline std::string candidate_id(int n, int m, int im_sign) {
    return "(" + std::to_string(n) + "," + std::to_string(m) + ")" + (im_sign > 0 ? "+" : "-");
}

namespace detail {

inline CandidateSpec symmetric_spec(int n, int m, int im_sign) {
    CandidateSpec c;
    c.id = candidate_id(n, m, im_sign);
    c.n = n;
    c.m = m;
    c.im_sign = im_sign;
    auto rho = candidate_rho(n, m);
    if (!rho) throw std::invalid_argument("unknown candidate: " + c.id);
    Cyclo s = (im_sign > 0 ? *rho : rho->conj()) - Cyclo(1);
    c.s_label = s.to_string();
    c.build = [n, m, im_sign](int p, Precision prec) { return build_symmetric(p, n, m, im_sign, prec); };
    return c;
}

inline CandidateSpec from_s_spec(const std::string& id, const Cyclo& s, const std::string& label) {
    CandidateSpec c;
    c.id = id;
    c.n = 3;
    c.m = 3;
    c.im_sign = real_sign(imag_part(s)) >= 0 ? 1 : -1;
    c.s_label = label;
    c.build = [s](int p, Precision prec) { return build_from_rho(p, Cyclo(1) + s, std::nullopt, prec); };
    return c;
}

}  // namespace detail

inline const std::string kMinusOmegaBar = "s=-exp(-i*pi/3)";
inline const std::string kMinusOmega = "s=-exp(i*pi/3)";

/// Looks up a candidate by id. Throws std::invalid_argument for unknown ids.
inline CandidateSpec find_candidate(const std::string& id) {
    if (id == kMinusOmegaBar) return detail::from_s_spec(id, -root_of_unity_pi(Rational(-1, 3)), "-e^{-i pi/3}");
    if (id == kMinusOmega) return detail::from_s_spec(id, -root_of_unity_pi(Rational(1, 3)), "-e^{i pi/3}");
    static const std::regex re(R"(\((\d+),(\d+)\)([+-]))");
    std::smatch mt;
    if (std::regex_match(id, mt, re)) {
        int n = std::stoi(mt[1]), m = std::stoi(mt[2]);
        int sign = mt[3] == "+" ? 1 : -1;
        if (n >= 3 && m >= 3 && n <= 1000 && m <= 1000 && candidate_angles(n, m))
            return detail::symmetric_spec(n, m, sign);
    }
    throw std::invalid_argument("unknown candidate: " + id);
}

/// Every sporadic row in both variants, then the diagonal rows k = 3..k_max.
inline std::vector<std::string> candidate_ids(int k_max = 12) {
    std::vector<std::string> ids;
    for (auto [n, m] : sporadic_candidates())
        for (int s : {1, -1}) ids.push_back(candidate_id(n, m, s));
    for (int k = 3; k <= k_max; ++k)
        for (int s : {1, -1}) ids.push_back(candidate_id(k, k, s));
    return ids;
}

// ---------------------------------------------------------------------------
// Printed signature statements.

struct SignatureClaim {
    std::string claim_id;
    std::string candidate;
    /// The statement as printed, in plain notation.
    std::string statement;
    int p_lo = 2;
    /// Inclusive; INT_MAX for open-ended statements.
    int p_hi = INT_MAX;
    std::function<std::string(int p)> expected;
    /// Part of the reproduction set; false for statements known to disagree.
    bool gated = true;
};

namespace detail {

inline std::function<std::string(int)> verdicts(int deg_p, int pos_below) {
    return [=](int p) -> std::string {
        if (p == deg_p) return "degenerate";
        if (p < pos_below) return "(3,0)";
        return "(2,1)";
    };
}

}  // namespace detail

inline const std::vector<SignatureClaim>& signature_claims() {
    static const std::vector<SignatureClaim> claims = [] {
        using detail::verdicts;
        std::vector<SignatureClaim> c;
        c.push_back({"diagonal-k3", "(3,3)+", "s=e^{2 pi i/3}: (2,1) for p>=4, degenerate at p=3, (3,0) at p=2", 2,
                     INT_MAX, verdicts(3, 3)});
        c.push_back({"diagonal-k4", "(4,4)+", "s=e^{2 pi i/4}: (2,1) for p>=3, degenerate at p=2", 2, INT_MAX,
                     verdicts(2, 2)});
        c.push_back({"diagonal-k5", "(5,5)+", "s=e^{2 pi i/k}, k>=5: (2,1) for p>=2", 2, INT_MAX, verdicts(0, 2)});
        c.push_back({"pair33-minus", kMinusOmegaBar, "s=-e^{-i pi/3}: (2,1) for p>=4, degenerate at p=3, (3,0) at p=2",
                     2, INT_MAX, verdicts(3, 3)});
        c.push_back({"pair33-plus", kMinusOmega, "s=-e^{i pi/3}: degenerate at p=6, (3,0) for p!=6", 2, INT_MAX,
                     [](int p) -> std::string { return p == 6 ? "degenerate" : "(3,0)"; }});
        c.push_back({"pair35-minus", "(3,5)-", "s=e^{-2 pi i/5}+e^{-4 pi i/5}: (2,1) for p<=7, (3,0) for p>=8", 2,
                     INT_MAX, [](int p) -> std::string { return p <= 7 ? "(2,1)" : "(3,0)"; }});
        c.push_back({"pair35-plus", "(3,5)+", "s=e^{2 pi i/5}+e^{4 pi i/5}: (2,1) for p>=2", 2, INT_MAX,
                     verdicts(0, 2)});
        c.push_back({"row34-large-p", "(3,4)+", "(3,4): (2,1) for p>=5", 5, INT_MAX, verdicts(0, 2)});
        SignatureClaim small{"row34-small-p", "(3,4)+", "(3,4): positive otherwise (p<=4)", 2, 4,
                             [](int) -> std::string { return "(3,0)"; }};
        small.gated = false;
        c.push_back(small);
        c.push_back({"row43", "(4,3)+", "(4,3): (3,0) at p=2, degenerate at p=3, (2,1) for p>=4", 2, INT_MAX,
                     verdicts(3, 3)});
        c.push_back({"row54", "(5,4)+", "(5,4): (3,0) at p=2, (2,1) for p>=3", 2, INT_MAX, verdicts(0, 3)});
        c.push_back({"row86-large-p", "(8,6)+", "(8,6): (2,1) for p>=3", 3, INT_MAX, verdicts(0, 2)});
        SignatureClaim p2{"row86-p2", "(8,6)+", "(8,6): (3,0) at p=2", 2, 2, [](int) -> std::string { return "(3,0)"; }};
        p2.gated = false;
        c.push_back(p2);
        return c;
    }();
    return claims;
}

// ---------------------------------------------------------------------------
// Printed closed forms for det(H), as functions of phi = 2pi/p.

struct ClosedForm {
    std::string formula_id;
    std::string candidate;
    /// The formula as printed, in plain notation.
    std::string expression;
    std::function<Cyclo(int p)> evaluate;
};

namespace detail {

inline Cyclo sqrt3() { return cos_pi(Rational(1, 6)).scaled(2); }
inline Cyclo sqrt5() { return cos_pi(Rational(1, 5)).scaled(4) - Cyclo(1); }
/// sqrt(5 + 2 sqrt 5) = tan(2pi/5)
inline Cyclo sqrt5_2sqrt5() { return sin_pi(Rational(2, 5)) * cos_pi(Rational(2, 5)).inverse(); }

inline ClosedForm diagonal_form(int k) {
    return {"diagonal-k" + std::to_string(k), candidate_id(k, k, 1),
            "i e^{-(4 theta + 3 phi) i/2} (-1 + e^{(2 theta + phi) i}) (e^{i theta} + e^{i phi})^2, theta = 2pi/k",
            [k](int p) {
                Rational th(2, k), ph(2, p);
                Cyclo pre = Cyclo::i_unit() * root_of_unity_pi(-(4 * th + 3 * ph) / 2);
                Cyclo mid = root_of_unity_pi(2 * th + ph) - Cyclo(1);
                Cyclo sum = root_of_unity_pi(th) + root_of_unity_pi(ph);
                return pre * mid * sum * sum;
            }};
}

}  // namespace detail

inline std::vector<ClosedForm> closed_forms(int k_max = 12) {
    using detail::sqrt3;
    using detail::sqrt5;
    using detail::sqrt5_2sqrt5;
    auto half = [](int p) { return Rational(1, p); };  // phi/2 in units of pi
    std::vector<ClosedForm> f;
    f.push_back({"row43", "(4,3)+", "-2 sin(3 phi/2)", [=](int p) { return sin_pi(3 * half(p)).scaled(-2); }});
    f.push_back({"pair33-minus", "(3,3)+", "-sqrt3 cos(phi/2) + sin(phi/2) - 2 sin(3 phi/2)", [=](int p) {
                     return sin_pi(half(p)) - sqrt3() * cos_pi(half(p)) - sin_pi(3 * half(p)).scaled(2);
                 }});
    f.push_back({"pair33-plus", "(3,3)-", "+sqrt3 cos(phi/2) + sin(phi/2) - 2 sin(3 phi/2)", [=](int p) {
                     return sin_pi(half(p)) + sqrt3() * cos_pi(half(p)) - sin_pi(3 * half(p)).scaled(2);
                 }});
    f.push_back({"pair35-plus", "(3,5)+",
                 "-sqrt(5 + 2 sqrt5) cos(phi/2) - (2 + sqrt5 + 4 cos phi) sin(phi/2)", [=](int p) {
                     Cyclo lin = Cyclo(2) + sqrt5() + cos_pi(2 * half(p)).scaled(4);
                     return -(sqrt5_2sqrt5() * cos_pi(half(p))) - lin * sin_pi(half(p));
                 }});
    f.push_back({"pair35-minus", "(3,5)-",
                 "sqrt(5 + 2 sqrt5) cos(phi/2) - (2 + sqrt5 + 4 cos phi) sin(phi/2)", [=](int p) {
                     Cyclo lin = Cyclo(2) + sqrt5() + cos_pi(2 * half(p)).scaled(4);
                     return sqrt5_2sqrt5() * cos_pi(half(p)) - lin * sin_pi(half(p));
                 }});
    f.push_back({"row34", "(3,4)+", "(1/2)(1 - 8 cos phi) sin(phi/2)", [=](int p) {
                     return ((Cyclo(1) - cos_pi(2 * half(p)).scaled(8)) * sin_pi(half(p))).scaled(Rational(1, 2));
                 }});
    f.push_back({"row86", "(8,6)+", "-2 cos(phi)(1 + 2 sin phi)", [=](int p) {
                     return (cos_pi(2 * half(p)) * (Cyclo(1) + sin_pi(2 * half(p)).scaled(2))).scaled(-2);
                 }});
    for (int k = 3; k <= k_max; ++k) f.push_back(detail::diagonal_form(k));
    return f;
}

inline ClosedForm find_closed_form(const std::string& formula_id) {
    for (auto& f : closed_forms(1000))
        if (f.formula_id == formula_id) return f;
    throw std::invalid_argument("unknown closed form: " + formula_id);
}

}  // namespace chtg

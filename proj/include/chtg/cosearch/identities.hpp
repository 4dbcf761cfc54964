#pragma once

/**
 * @file identities.hpp
 * @brief Exact checks of the trigonometric identities used in the classification.
 *
 * Suites:
 *   monaghan    a-o   rational linear relations among cosines; a-c depend on phi
 *   parker      i-xiii  values of (2 theta, s) solving
 *                       cos 2theta - cos(a-b) - cos(a+2b) - cos(2a+b) = 1/2;
 *                       i and ii depend on psi (passed as phi)
 *   lemma-nm    expand, factor   1 + cos(a-b) + cos(a+2b) + cos(2a+b) rewritten
 *   half-angle  1, 2, 3   rewrites valid when cos a + cos b + cos(a+b) = 1/2
 *
 * In monaghan b and c, "cos(phi +- x)" stands for cos(phi + x) + cos(phi - x).
 */

#include "chtg/cosearch/residuals.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chtg {

namespace detail {

/// coef * cos(phi_coef * phi + offset * pi)
struct CosTerm {
    int coef;
    int phi_coef;
    Rational offset;
};

struct LinearCosIdentity {
    std::vector<CosTerm> terms;
    Rational rhs;
    bool parametric;
};

inline std::vector<CosTerm> pm_terms(int coef, const Rational& x) { return {{coef, 1, x}, {coef, 1, -x}}; }

inline const std::map<std::string, LinearCosIdentity>& monaghan_table() {
    static const std::map<std::string, LinearCosIdentity> table = [] {
        auto q = [](long n, long d) { return Rational(n, d); };
        auto join = [](std::initializer_list<std::vector<CosTerm>> parts) {
            std::vector<CosTerm> out;
            for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
            return out;
        };
        auto consts = [](std::initializer_list<std::pair<int, Rational>> xs) {
            std::vector<CosTerm> out;
            for (const auto& [c, x] : xs) out.push_back({c, 0, x});
            return out;
        };
        std::map<std::string, LinearCosIdentity> t;
        t["a"] = {{{1, 1, q(0, 1)}, {1, 1, q(2, 3)}, {1, 1, q(4, 3)}}, 0, true};
        t["b"] = {join({{{1, 1, q(0, 1)}}, pm_terms(1, q(2, 5)), pm_terms(-1, q(2, 15)), pm_terms(1, q(7, 15))}), 0,
                  true};
        t["c"] = {join({{{1, 1, q(0, 1)}}, pm_terms(-1, q(1, 5)), pm_terms(1, q(1, 15)), pm_terms(-1, q(4, 15))}), 0,
                  true};
        Rational half(1, 2);
        t["d"] = {consts({{1, q(1, 3)}}), half, false};
        t["e"] = {consts({{1, q(1, 5)}, {-1, q(2, 5)}}), half, false};
        t["f"] = {consts({{1, q(1, 5)}, {-1, q(1, 15)}, {1, q(4, 15)}}), half, false};
        t["g"] = {consts({{-1, q(2, 5)}, {1, q(2, 15)}, {-1, q(7, 15)}}), half, false};
        t["h"] = {consts({{-1, q(1, 15)}, {1, q(2, 15)}, {1, q(4, 15)}, {-1, q(7, 15)}}), half, false};
        t["i"] = {consts({{1, q(1, 7)}, {-1, q(2, 7)}, {1, q(3, 7)}}), half, false};
        t["j"] = {consts({{1, q(1, 7)}, {-1, q(2, 7)}, {1, q(2, 21)}, {-1, q(5, 21)}}), half, false};
        t["k"] = {consts({{1, q(1, 7)}, {1, q(3, 7)}, {-1, q(1, 21)}, {1, q(8, 21)}}), half, false};
        t["l"] = {consts({{-1, q(2, 7)}, {1, q(3, 7)}, {1, q(4, 21)}, {1, q(10, 21)}}), half, false};
        t["m"] = {consts({{1, q(1, 7)}, {-1, q(1, 21)}, {1, q(2, 21)}, {-1, q(5, 21)}, {1, q(8, 21)}}), half, false};
        t["n"] = {consts({{-1, q(2, 7)}, {1, q(2, 21)}, {1, q(4, 21)}, {-1, q(5, 21)}, {1, q(10, 21)}}), half, false};
        t["o"] = {consts({{1, q(3, 7)}, {-1, q(1, 21)}, {1, q(4, 21)}, {1, q(8, 21)}, {1, q(10, 21)}}), half, false};
        return t;
    }();
    return table;
}

/// One entry of the Parker list, as pi-multiples; psi is the free parameter of i and ii.
struct ParkerEntry {
    bool parametric;
    std::function<Rational(const Rational& psi)> two_theta;
    /// A decomposition of s into three unit terms e^{ia} + e^{ib} + e^{-i(a+b)}.
    std::function<std::pair<Rational, Rational>(const Rational& psi)> ab;
    /// The listed forms of s.
    std::function<std::vector<Cyclo>(const Rational& psi)> s_forms;
};

inline const std::map<std::string, ParkerEntry>& parker_table() {
    static const std::map<std::string, ParkerEntry> table = [] {
        using R = Rational;
        auto e = [](const R& x) { return root_of_unity_pi(x); };
        auto two_cos = [](const R& x) { return cos_pi(x).scaled(2); };
        auto fixed = [](R t, R a, R b, std::function<Cyclo()> s) {
            return ParkerEntry{false, [t](const R&) { return t; }, [a, b](const R&) { return std::pair<R, R>{a, b}; },
                               [s](const R&) { return std::vector<Cyclo>{s()}; }};
        };
        auto third = [&](const R& c) { return [=] { return e(R(1, 3)) + e(R(-1, 6)) * two_cos(c); }; };
        auto ninth = [&](const R& c) { return [=] { return e(R(2, 9)) + e(R(-1, 9)) * two_cos(c); }; };
        auto one_plus = [&](const R& c) { return [=] { return Cyclo(1) + two_cos(c); }; };

        std::map<std::string, ParkerEntry> t;
        t["i"] = {true, [](const R&) { return R(2, 3); },
                  [](const R& psi) { return std::pair<R, R>{R(1) - psi / 3, psi / 6}; },
                  [=](const R& psi) { return std::vector<Cyclo>{-e(-psi / 3)}; }};
        t["ii"] = {true, [](const R& psi) { return psi; },
                   [](const R& psi) { return std::pair<R, R>{R(2) * psi / 3, (R(1) - psi) / 3}; },
                   [=](const R& psi) {
                       return std::vector<Cyclo>{e(R(2) * psi / 3) + e(-psi / 3), e(psi / 6) * two_cos(psi / 2)};
                   }};
        t["iii"] = fixed(R(1, 3), R(1, 3), R(1, 12), third(R(1, 4)));
        t["iv"] = fixed(R(1, 5), R(1, 3), R(1, 30), third(R(1, 5)));
        t["v"] = fixed(R(3, 5), R(1, 3), R(7, 30), third(R(2, 5)));
        t["vi"] = fixed(R(1, 2), R(2, 7), R(4, 7), [=] { return e(R(2, 7)) + e(R(4, 7)) + e(R(-6, 7)); });
        t["vii"] = fixed(R(1, 2), R(2, 9), R(13, 45), ninth(R(2, 5)));
        t["viii"] = fixed(R(1, 2), R(2, 9), R(31, 45), ninth(R(4, 5)));
        t["ix"] = fixed(R(1, 7), R(2, 9), R(11, 63), ninth(R(2, 7)));
        t["x"] = fixed(R(5, 7), R(2, 9), R(29, 63), ninth(R(4, 7)));
        t["xi"] = fixed(R(3, 7), R(2, 9), R(47, 63), ninth(R(6, 7)));
        t["xii"] = fixed(R(2, 5), R(0), R(2, 5), one_plus(R(2, 5)));
        t["xiii"] = fixed(R(4, 5), R(0), R(4, 5), one_plus(R(4, 5)));
        return t;
    }();
    return table;
}

inline std::invalid_argument unknown_identity(const std::string& suite, const std::string& id) {
    return std::invalid_argument("unknown identity: " + suite + " " + id);
}

inline const Angle& require(const std::optional<Angle>& x, const char* what) {
    if (!x) throw std::invalid_argument(std::string("identity requires ") + what);
    return *x;
}

}  // namespace detail

/// True when x = omega^k y or omega^k conj(y) for some k.
inline bool equal_up_to_omega_conj(const Cyclo& x, const Cyclo& y) {
    for (int k = 0; k < 3; ++k) {
        Cyclo w = Cyclo::root_of_unity(3, k);
        if (x == w * y || x == w * y.conj()) return true;
    }
    return false;
}

inline std::vector<std::string> identity_suites() { return {"monaghan", "parker", "lemma-nm", "half-angle"}; }

inline std::vector<std::string> identity_ids(const std::string& suite) {
    if (suite == "monaghan") {
        std::vector<std::string> ids;
        for (const auto& [k, v] : detail::monaghan_table()) ids.push_back(k);
        return ids;
    }
    if (suite == "parker")
        return {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii"};
    if (suite == "lemma-nm") return {"expand", "factor"};
    if (suite == "half-angle") return {"1", "2", "3"};
    throw std::invalid_argument("unknown identity suite: " + suite);
}

/// Number of angle arguments an identity takes: 0, 1 (phi) or 2 (phi, psi).
inline int identity_arity(const std::string& suite, const std::string& id) {
    if (suite == "monaghan") {
        auto it = detail::monaghan_table().find(id);
        if (it == detail::monaghan_table().end()) throw detail::unknown_identity(suite, id);
        return it->second.parametric ? 1 : 0;
    }
    if (suite == "parker") {
        auto it = detail::parker_table().find(id);
        if (it == detail::parker_table().end()) throw detail::unknown_identity(suite, id);
        return it->second.parametric ? 1 : 0;
    }
    if (suite == "lemma-nm") {
        if (id != "expand" && id != "factor") throw detail::unknown_identity(suite, id);
        return 2;
    }
    if (suite == "half-angle") {
        if (id != "1" && id != "2" && id != "3") throw detail::unknown_identity(suite, id);
        return 2;
    }
    throw std::invalid_argument("unknown identity suite: " + suite);
}

/// cos a + cos b + cos(a+b) = 1/2, the hypothesis of the half-angle suite.
inline bool half_angle_hypothesis(const Angle& a, const Angle& b) {
    return cos_exact(a) + cos_exact(b) + cos_exact(a + b) == Cyclo(Rational(1, 2));
}

/**
 * Exact check of one identity. Throws std::invalid_argument for an unknown
 * suite or id, or a missing angle; std::domain_error when the half-angle
 * hypothesis fails.
 */
inline bool validate_identity(const std::string& suite, const std::string& id,
                              const std::optional<Angle>& phi = std::nullopt,
                              const std::optional<Angle>& psi = std::nullopt) {
    int arity = identity_arity(suite, id);
    Rational x = arity >= 1 ? detail::require(phi, "phi").pi_multiple() : Rational(0);
    Rational y = arity >= 2 ? detail::require(psi, "psi").pi_multiple() : Rational(0);

    if (suite == "monaghan") {
        const auto& ident = detail::monaghan_table().at(id);
        Cyclo sum;
        for (const auto& t : ident.terms) sum += cos_pi(t.phi_coef * x + t.offset).scaled(t.coef);
        return sum == Cyclo(ident.rhs);
    }

    if (suite == "parker") {
        const auto& entry = detail::parker_table().at(id);
        auto [qa, qb] = entry.ab(x);
        Angle a = Angle::from_pi_multiple(qa), b = Angle::from_pi_multiple(qb);
        Cyclo lhs = cos_pi(entry.two_theta(x)) - cos_exact(a - b) - cos_exact(a + 2L * b) - cos_exact(2L * a + b);
        if (!(lhs == Cyclo(Rational(1, 2)))) return false;
        Cyclo s = trace_S(a, b);
        for (const Cyclo& form : entry.s_forms(x))
            if (!equal_up_to_omega_conj(s, form)) return false;
        return true;
    }

    if (suite == "lemma-nm") {
        Cyclo lhs = Cyclo(1) + cos_pi(x - y) + cos_pi(x + 2 * y) + cos_pi(2 * x + y);
        Cyclo h = cos_pi((x - y) / 2);
        if (id == "expand") return lhs == (h * h).scaled(2) + (h * cos_pi(3 * (x + y) / 2)).scaled(2);
        return lhs == (h * cos_pi((x + 2 * y) / 2) * cos_pi((2 * x + y) / 2)).scaled(4);
    }

    // half-angle
    if (!half_angle_hypothesis(*phi, *psi))
        throw std::domain_error("half-angle identity requires cos a + cos b + cos(a+b) = 1/2");
    Cyclo ca = cos_pi(x);
    Cyclo d = Cyclo(Rational(1, 2)) - ca;
    Cyclo c_mid = cos_pi(x / 2 + y);
    if (id == "1") {
        Cyclo prod = (cos_pi(x / 2) * c_mid).scaled(2);
        return prod == cos_pi(y) + cos_pi(x + y) && prod == d;
    }
    if (id == "2") {
        Cyclo sq = (c_mid * c_mid).scaled(2);
        return cos_pi(x + 2 * y) + Cyclo(1) == sq && sq == d * d * (Cyclo(1) + ca).inverse();
    }
    Cyclo prod = (cos_pi(3 * x / 2) * c_mid).scaled(2);
    return cos_pi(x - y) + cos_pi(2 * x + y) == prod && prod == (d * d).scaled(-2);
}

}  // namespace chtg

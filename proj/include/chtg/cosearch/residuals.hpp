#pragma once

/**
 * @file residuals.hpp
 * @brief The trace equations for tr(S) and the symmetry group acting on (a, b).
 *
 * With s = e^{ia} + e^{ib} + e^{-i(a+b)}, a symmetric group of type (n, m)
 * requires
 *
 *     minor:  cos(2pi/n) - cos a - cos b - cos(a+b) = 0
 *     main:   cos(2pi/m) - cos(2pi/n) - cos(a-b) - cos(a+2b) - cos(2a+b) - 1 = 0
 */

#include "chtg/trigroup/rows.hpp"

#include <array>
#include <utility>
#include <vector>

namespace chtg {

inline Cyclo trace_S(const Angle& a, const Angle& b) { return unit_triple_sum(a, b); }

inline Cyclo minor_residual(int n, const Angle& a, const Angle& b) {
    return cos_exact(angle(2, n)) - cos_exact(a) - cos_exact(b) - cos_exact(a + b);
}

inline Cyclo main_residual(int m, int n, const Angle& a, const Angle& b) {
    return cos_exact(angle(2, m)) - cos_exact(angle(2, n)) - cos_exact(a - b) - cos_exact(a + 2L * b) -
           cos_exact(2L * a + b) - Cyclo(1);
}

using AnglePair = std::pair<Angle, Angle>;

/// Canonical representative of the orbit of (a, b).
struct AbOrbit {
    Angle a, b;

    friend bool operator==(const AbOrbit&, const AbOrbit&) = default;
    friend auto operator<=>(const AbOrbit& x, const AbOrbit& y) {
        if (auto c = x.a <=> y.a; c != 0) return c;
        return x.b <=> y.b;
    }
    std::string to_string() const { return "(" + a.to_string() + ", " + b.to_string() + ")"; }
};

/**
 * All 36 images of (a, b): ordered pairs from the triple {a, b, -a-b}, after
 * an optional global sign change and a shift of every term by 2k pi/3.
 * Index = 18 * sign + 6 * shift + permutation.
 */
inline std::array<AnglePair, 36> orbit_images(const Angle& a, const Angle& b) {
    std::array<AnglePair, 36> out;
    std::size_t idx = 0;
    for (int sign : {1, -1})
        for (int k = 0; k < 3; ++k) {
            Angle shift(2L * k, 3);
            std::array<Angle, 3> t{a, b, -(a + b)};
            for (auto& x : t) x = (sign > 0 ? x : -x) + shift;
            static constexpr int perms[6][2] = {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}};
            for (const auto& pr : perms) out[idx++] = {t[pr[0]], t[pr[1]]};
        }
    return out;
}

/// Lexicographically least image under the 36 symmetry operations.
inline AbOrbit canonicalize_ab(const Angle& a, const Angle& b) {
    AbOrbit best{a, b};
    for (const auto& [x, y] : orbit_images(a, b)) {
        AbOrbit c{x, y};
        if (c < best) best = c;
    }
    return best;
}

}  // namespace chtg

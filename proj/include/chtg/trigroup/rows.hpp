#pragma once

/**
 * @file rows.hpp
 * @brief Exact parameters of the candidate (n, m) rows.
 */

#include "chtg/exact.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace chtg {

/// e^{ia} + e^{ib} + e^{-i(a+b)}
inline Cyclo unit_triple_sum(const Angle& a, const Angle& b) {
    return root_of_unity(a) + root_of_unity(b) + root_of_unity(-(a + b));
}

/// A pair (a, b) whose unit triple sum is s = rho - 1 for the candidate (n, m).
inline std::optional<std::pair<Angle, Angle>> candidate_angles(int n, int m) {
    if (n == m && n >= 3) return std::pair{angle(2, n), angle(n - 2, 2 * n)};
    if (n == 3 && m == 4) return std::pair{angle(2, 7), angle(4, 7)};
    if (n == 3 && m == 5) return std::pair{angle(2, 5), angle(7, 15)};
    if (n == 4 && m == 3) return std::pair{angle(0, 1), angle(2, 3)};
    if (n == 5 && m == 4) return std::pair{angle(2, 15), angle(8, 15)};
    if (n == 8 && m == 6) return std::pair{angle(1, 2), angle(1, 12)};
    return std::nullopt;
}

/// The five sporadic rows in table order; the diagonal family is separate.
inline const std::vector<std::pair<int, int>>& sporadic_candidates() {
    static const std::vector<std::pair<int, int>> rows{{3, 4}, {3, 5}, {4, 3}, {5, 4}, {8, 6}};
    return rows;
}

/// rho = 1 + s with Im(rho) >= 0, when (n, m) is a candidate.
inline std::optional<Cyclo> candidate_rho(int n, int m) {
    auto ab = candidate_angles(n, m);
    if (!ab) return std::nullopt;
    return Cyclo(1) + unit_triple_sum(ab->first, ab->second);
}

}  // namespace chtg

#pragma once

/**
 * @file search.hpp
 * @brief Bounded enumeration of (a, b, n, m) solving the trace equations.
 *
 * Every pair of angles with denominator at most den_max is screened in double
 * precision: (minor) fixes n, then |s|^2 fixes m through (main). Surviving
 * hits are confirmed with exact cyclotomic arithmetic and grouped by
 * (n, m, canonical orbit).
 */

#include "chtg/cosearch/residuals.hpp"
#include "chtg/trigroup/group.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace chtg {

struct Candidate {
    int n = 0;
    int m = 0;
    Angle a, b;
    Cyclo s, rho, sigma;
    bool exact_confirmed = false;
    bool parameter_feasible = false;
    AbOrbit orbit;
    /// Raw hits in this class; the list itself is kept only in verbose mode.
    std::size_t multiplicity = 0;
    std::vector<AnglePair> raw_hits;
};

struct SearchBounds {
    int m_max = 12;
    int n_max = 12;
    int den_max = 90;
};

struct SearchOptions {
    double prefilter_tol = 1e-9;
    unsigned workers = 1;
    /// Evaluate every pair exactly instead of using the double prefilter.
    bool exact_audit = false;
    /// Keep raw hit lists and classes that failed exact confirmation.
    bool verbose = false;
    const std::atomic<bool>* cancel = nullptr;
};

struct SearchStats {
    std::size_t angles = 0;
    std::size_t pairs = 0;
    std::size_t raw_hits = 0;
    std::size_t confirmed = 0;
    std::size_t rejected = 0;
};

struct SearchResult {
    std::vector<Candidate> candidates;
    SearchStats stats;
    bool complete = true;
};

/// Angles num pi/den in [0, 2pi) with den <= den_max, sorted by value.
inline std::vector<Angle> enumerate_angles(int den_max) {
    std::vector<Angle> out;
    for (long den = 1; den <= den_max; ++den)
        for (long num = 0; num < 2 * den; ++num)
            if (std::gcd(num, den) == 1 || (num == 0 && den == 1)) out.emplace_back(num, den);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

struct RawHit {
    std::size_t i, j;
    int n, m;
};

inline void check_bounds(const SearchBounds& b) {
    if (b.m_max < 3 || b.n_max < 3) throw std::invalid_argument("m_max and n_max must be at least 3");
    if (b.den_max < 2) throw std::invalid_argument("den_max must be at least 2");
}

inline std::vector<RawHit> prefilter_rows(const std::vector<Angle>& angles, const SearchBounds& bounds,
                                          const SearchOptions& opt, unsigned worker, unsigned stride,
                                          std::atomic<bool>& aborted) {
    const double two_pi = 2.0 * 3.14159265358979323846;
    std::vector<double> ca(angles.size()), sa(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i) {
        ca[i] = std::cos(angles[i].radians());
        sa[i] = std::sin(angles[i].radians());
    }
    std::vector<double> cn(bounds.n_max + 1), cm(bounds.m_max + 1);
    for (int n = 3; n <= bounds.n_max; ++n) cn[n] = std::cos(two_pi / n);
    for (int m = 3; m <= bounds.m_max; ++m) cm[m] = std::cos(two_pi / m);
    const double tol = opt.prefilter_tol;
    const double lo = cn[3] - tol, hi = cn[bounds.n_max] + tol;

    std::vector<RawHit> hits;
    for (std::size_t i = worker; i < angles.size(); i += stride) {
        if (opt.cancel && opt.cancel->load(std::memory_order_relaxed)) {
            aborted = true;
            break;
        }
        for (std::size_t j = 0; j < angles.size(); ++j) {
            double cab = ca[i] * ca[j] - sa[i] * sa[j];
            double v = ca[i] + ca[j] + cab;
            if (v < lo || v > hi) continue;
            for (int n = 3; n <= bounds.n_max; ++n) {
                if (std::fabs(v - cn[n]) > tol) continue;
                double sab = sa[i] * ca[j] + ca[i] * sa[j];
                double im = sa[i] + sa[j] - sab;
                // cos(a-b) + cos(a+2b) + cos(2a+b) = (|s|^2 - 3)/2
                double w = 1.0 + cn[n] + (v * v + im * im - 3.0) / 2.0;
                for (int m = 3; m <= bounds.m_max; ++m)
                    if (std::fabs(cm[m] - w) <= tol) hits.push_back({i, j, n, m});
            }
        }
    }
    return hits;
}

inline std::vector<RawHit> exact_rows(const std::vector<Angle>& angles, const SearchBounds& bounds,
                                      const SearchOptions& opt, unsigned worker, unsigned stride,
                                      std::atomic<bool>& aborted) {
    std::vector<Cyclo> cn(bounds.n_max + 1), cm(bounds.m_max + 1);
    for (int n = 3; n <= bounds.n_max; ++n) cn[n] = cos_exact(angle(2, n));
    for (int m = 3; m <= bounds.m_max; ++m) cm[m] = cos_exact(angle(2, m));
    std::vector<RawHit> hits;
    for (std::size_t i = worker; i < angles.size(); i += stride) {
        if (opt.cancel && opt.cancel->load(std::memory_order_relaxed)) {
            aborted = true;
            break;
        }
        const Angle& a = angles[i];
        for (std::size_t j = 0; j < angles.size(); ++j) {
            const Angle& b = angles[j];
            Cyclo v = cos_exact(a) + cos_exact(b) + cos_exact(a + b);
            for (int n = 3; n <= bounds.n_max; ++n) {
                if (!(v == cn[n])) continue;
                Cyclo w = Cyclo(1) + cn[n] + cos_exact(a - b) + cos_exact(a + 2L * b) + cos_exact(2L * a + b);
                for (int m = 3; m <= bounds.m_max; ++m)
                    if (w == cm[m]) hits.push_back({i, j, n, m});
            }
        }
    }
    return hits;
}

inline bool confirm_exact(int n, int m, const Angle& a, const Angle& b) {
    try {
        return minor_residual(n, a, b).is_zero() && main_residual(m, n, a, b).is_zero();
    } catch (const std::overflow_error&) {
        return false;
    }
}

}  // namespace detail

inline SearchResult search(const SearchBounds& bounds, const SearchOptions& opt = {}) {
    detail::check_bounds(bounds);
    if (opt.workers < 1) throw std::invalid_argument("worker count must be at least 1");
    const std::vector<Angle> angles = enumerate_angles(bounds.den_max);

    SearchResult result;
    result.stats.angles = angles.size();
    result.stats.pairs = angles.size() * angles.size();

    std::atomic<bool> aborted{false};
    std::vector<std::vector<detail::RawHit>> parts(opt.workers);
    auto run = [&](unsigned w) {
        parts[w] = opt.exact_audit ? detail::exact_rows(angles, bounds, opt, w, opt.workers, aborted)
                                   : detail::prefilter_rows(angles, bounds, opt, w, opt.workers, aborted);
    };
    if (opt.workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < opt.workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    result.complete = !aborted;

    std::vector<detail::RawHit> hits;
    for (auto& part : parts) hits.insert(hits.end(), part.begin(), part.end());
    std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) {
        return std::tie(x.n, x.m, x.i, x.j) < std::tie(y.n, y.m, y.i, y.j);
    });
    result.stats.raw_hits = hits.size();

    struct HitClass {
        std::vector<AnglePair> confirmed, rejected;
    };
    std::map<std::tuple<int, int, AbOrbit>, HitClass> classes;
    for (const auto& h : hits) {
        const Angle& a = angles[h.i];
        const Angle& b = angles[h.j];
        bool ok = opt.exact_audit || detail::confirm_exact(h.n, h.m, a, b);
        auto& g = classes[{h.n, h.m, canonicalize_ab(a, b)}];
        (ok ? g.confirmed : g.rejected).push_back({a, b});
        ++(ok ? result.stats.confirmed : result.stats.rejected);
    }

    for (auto& [key, g] : classes) {
        bool confirmed = !g.confirmed.empty();
        if (!confirmed && !opt.verbose) continue;
        const auto& list = confirmed ? g.confirmed : g.rejected;
        Candidate c;
        c.n = std::get<0>(key);
        c.m = std::get<1>(key);
        c.orbit = std::get<2>(key);
        c.a = list.front().first;
        c.b = list.front().second;
        c.s = trace_S(c.a, c.b);
        c.rho = Cyclo(1) + c.s;
        c.sigma = cos_exact(angle(1, c.n)).scaled(2);
        c.exact_confirmed = confirmed;
        c.parameter_feasible = symmetric_feasible(c.n, c.m);
        c.multiplicity = list.size();
        if (opt.verbose) c.raw_hits = list;
        result.candidates.push_back(std::move(c));
    }
    std::sort(result.candidates.begin(), result.candidates.end(), [](const Candidate& x, const Candidate& y) {
        if (x.n != y.n) return x.n < y.n;
        if (x.m != y.m) return x.m < y.m;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return result;
}

inline nlohmann::ordered_json angle_json(const Angle& t) { return {{"num", t.num()}, {"den", t.den()}}; }

/// Fixed-notation real and imaginary parts; exactly zero parts print as "0".
inline std::pair<std::string, std::string> fixed_parts(const Cyclo& z, int digits = 50) {
    AComplex f = z.to_float(256);
    auto part = [&](const Cyclo& exact, const Real& x) { return exact.is_zero() ? std::string("0") : x.to_fixed(digits); };
    return {part(real_part(z), f.re), part(imag_part(z), f.im)};
}

inline nlohmann::ordered_json to_json(const Candidate& c, bool verbose = false) {
    auto [re, im] = fixed_parts(c.s);
    nlohmann::ordered_json j;
    j["n"] = c.n;
    j["m"] = c.m;
    j["a"] = angle_json(c.a);
    j["b"] = angle_json(c.b);
    j["s"] = {{"re", re}, {"im", im}};
    j["exact_confirmed"] = c.exact_confirmed;
    j["parameter_feasible"] = c.parameter_feasible;
    if (verbose) {
        j["multiplicity"] = c.multiplicity;
        nlohmann::ordered_json raw = nlohmann::ordered_json::array();
        for (const auto& [a, b] : c.raw_hits) raw.push_back({angle_json(a), angle_json(b)});
        j["raw_hits"] = raw;
    }
    return j;
}

inline nlohmann::ordered_json to_json(const std::vector<Candidate>& cs, bool verbose = false) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : cs) arr.push_back(to_json(c, verbose));
    return arr;
}

}  // namespace chtg

#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in cyclotomic fields Q(zeta_N).
 *
 * A `Cyclo` is a rational linear combination of powers of zeta_N = e^{2 pi i/N}.
 * Values are kept in canonical form: the remainder modulo the N-th cyclotomic
 * polynomial Phi_N, so the power-basis coefficients 1, zeta, ..., zeta^{phi(N)-1}
 * are unique for a given conductor. Coefficients are integer numerators over
 * one common positive denominator.
 *
 * Operands of different conductors are lifted to the least common multiple.
 * After every operation the conductor shrinks to N/g where g is the gcd of N
 * and every exponent in use; this does not always reach the minimal conductor,
 * and nothing depends on it doing so. Equality is decided by an exact zero test
 * of the difference, so it is independent of the representative.
 */

#include "chtg/exact/angle.hpp"
#include "chtg/exact/real.hpp"

#include <gmpxx.h>

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chtg {

/// Upper bound on conductors created by arithmetic (default 10^6).
inline std::atomic<long>& cyclo_conductor_limit() {
    static std::atomic<long> limit{1000000};
    return limit;
}

namespace detail {

inline std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline long euler_phi(long n) {
    long r = n;
    for (long p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

inline long checked_lcm(long a, long b) {
    long l = std::lcm(a, b);
    if (l > cyclo_conductor_limit().load()) throw std::overflow_error("conductor too large");
    return l;
}

/// Phi_N written as x^degree + sum(coeff * x^exponent) over `lower`.
struct CyclotomicPolynomial {
    long conductor = 1;
    long degree = 1;
    std::vector<std::pair<long, long>> lower;
};

using ZPoly = std::vector<mpz_class>;

/// Exact quotient of integer polynomials; the divisor must be monic.
inline ZPoly divide_exact(const ZPoly& num, const ZPoly& den) {
    ZPoly rem = num;
    std::size_t dd = den.size() - 1;
    ZPoly q(rem.size() - dd);
    for (std::size_t i = rem.size(); i-- > dd;) {
        mpz_class c = rem[i];
        if (c == 0) continue;
        q[i - dd] = c;
        for (std::size_t k = 0; k <= dd; ++k) rem[i - dd + k] -= c * den[k];
    }
    for (std::size_t k = 0; k < dd; ++k)
        if (rem[k] != 0) throw std::logic_error("inexact cyclotomic division");
    return q;
}

inline CyclotomicPolynomial compute_cyclotomic(long n) {
    // Phi_{m q}(x) = Phi_m(x^q) / Phi_m(x) for a prime q not dividing m,
    // then Phi_n(x) = Phi_rad(n)(x^{n / rad(n)}).
    ZPoly poly{mpz_class(-1), mpz_class(1)};
    long rad = 1;
    for (long q : prime_factors(n)) {
        ZPoly stretched((poly.size() - 1) * q + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) stretched[i * q] = poly[i];
        poly = divide_exact(stretched, poly);
        rad *= q;
    }
    long t = n / rad;
    CyclotomicPolynomial out;
    out.conductor = n;
    out.degree = static_cast<long>(poly.size() - 1) * t;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        if (poly[i] == 0) continue;
        if (!poly[i].fits_slong_p()) throw std::overflow_error("conductor too large");
        out.lower.emplace_back(static_cast<long>(i) * t, poly[i].get_si());
    }
    return out;
}

/// Cached Phi_N; safe to call concurrently.
inline const CyclotomicPolynomial& cyclotomic_polynomial(long n) {
    static std::mutex mu;
    static std::map<long, std::unique_ptr<const CyclotomicPolynomial>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<const CyclotomicPolynomial>(compute_cyclotomic(n))).first;
    return *it->second;
}

/// Folds exponents modulo N (zeta^N = 1).
inline void fold(ZPoly& p, long n) {
    if (static_cast<long>(p.size()) <= n) return;
    for (std::size_t i = n; i < p.size(); ++i)
        if (p[i] != 0) p[i % n] += p[i];
    p.resize(n);
}

/// Remainder modulo Phi_N, in place.
inline void reduce_mod_phi(ZPoly& p, long n) {
    fold(p, n);
    const CyclotomicPolynomial& phi = cyclotomic_polynomial(n);
    long deg = phi.degree;
    for (long i = static_cast<long>(p.size()) - 1; i >= deg; --i) {
        if (p[i] == 0) continue;
        mpz_class c;
        mpz_swap(c.get_mpz_t(), p[i].get_mpz_t());
        for (const auto& [e, ce] : phi.lower) {
            mpz_ptr dst = p[i - deg + e].get_mpz_t();
            if (ce > 0)
                mpz_submul_ui(dst, c.get_mpz_t(), static_cast<unsigned long>(ce));
            else
                mpz_addmul_ui(dst, c.get_mpz_t(), static_cast<unsigned long>(-ce));
        }
    }
    if (static_cast<long>(p.size()) > deg) p.resize(deg);
}

using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    const mpq_class& lead = b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (a[i] == 0) continue;
        mpq_class c = a[i] / lead;
        q[i - b.size() + 1] = c;
        for (std::size_t k = 0; k < b.size(); ++k) a[i - b.size() + 1 + k] -= c * b[k];
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline QPoly sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
    QPoly r = a;
    if (!q.empty() && !b.empty()) {
        if (r.size() < q.size() + b.size() - 1) r.resize(q.size() + b.size() - 1);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
    }
    trim(r);
    return r;
}

}  // namespace detail

class Cyclo {
  public:
    Cyclo() = default;
    Cyclo(long v) : num_(v == 0 ? 0 : 1, mpz_class(v)) {}  // NOLINT: integers embed implicitly
    Cyclo(int v) : Cyclo(static_cast<long>(v)) {}          // NOLINT
    Cyclo(const Rational& q) {                             // NOLINT
        if (q != 0) {
            num_.push_back(q.get_num());
            den_ = q.get_den();
        }
    }

    /// zeta_N^k
    static Cyclo root_of_unity(long n, long k) {
        if (n <= 0) throw std::invalid_argument("conductor must be positive");
        if (n > cyclo_conductor_limit().load()) throw std::overflow_error("conductor too large");
        k %= n;
        if (k < 0) k += n;
        Cyclo c;
        c.n_ = n;
        c.num_.assign(k + 1, mpz_class(0));
        c.num_[k] = 1;
        c.finish();
        return c;
    }

    /// sum of c * zeta_N^e over the given terms.
    static Cyclo from_terms(long n, const std::vector<std::pair<long, Rational>>& terms) {
        Cyclo acc;
        for (const auto& [e, c] : terms) acc = acc + root_of_unity(n, e).scaled(c);
        return acc;
    }

    static Cyclo i_unit() { return root_of_unity(4, 1); }

    long conductor() const { return n_; }
    const std::vector<mpz_class>& numerators() const { return num_; }
    const mpz_class& denominator() const { return den_; }

    /// Coefficient of zeta^j in the canonical representation.
    Rational coeff(long j) const {
        if (j < 0 || j >= static_cast<long>(num_.size())) return 0;
        Rational q(num_[j], den_);
        q.canonicalize();
        return q;
    }

    bool is_zero() const { return num_.empty(); }

    /// The rational value, if this number is rational.
    std::optional<Rational> rational_value() const {
        if (num_.size() > 1) return std::nullopt;
        return coeff(0);
    }

    bool is_real() const { return (*this - conj()).is_zero(); }

    /// Complex conjugation: zeta^j -> zeta^{N-j}.
    Cyclo conj() const { return galois(-1); }

    /// The automorphism zeta -> zeta^k, gcd(k, N) = 1.
    Cyclo galois(long k) const {
        if (num_.size() <= 1) return *this;
        k %= n_;
        if (k < 0) k += n_;
        if (std::gcd(k, n_) != 1) throw std::invalid_argument("galois exponent not coprime to conductor");
        detail::ZPoly p(n_);
        for (std::size_t j = 0; j < num_.size(); ++j)
            if (num_[j] != 0) p[(static_cast<long>(j) * k) % n_] += num_[j];
        Cyclo c;
        c.n_ = n_;
        c.num_ = std::move(p);
        c.den_ = den_;
        c.finish();
        return c;
    }

    /// Same value written over conductor l, a multiple of conductor().
    Cyclo lift(long l) const {
        if (l % n_ != 0) throw std::invalid_argument("lift target must be a multiple of the conductor");
        if (l == n_ || num_.size() <= 1) {
            Cyclo c = *this;
            if (num_.size() <= 1) c.n_ = l;
            return c;
        }
        long t = l / n_;
        detail::ZPoly p((static_cast<long>(num_.size()) - 1) * t + 1);
        for (std::size_t j = 0; j < num_.size(); ++j) p[j * t] = num_[j];
        detail::reduce_mod_phi(p, l);
        Cyclo c;
        c.n_ = l;
        c.num_ = std::move(p);
        c.den_ = den_;
        c.trim();
        return c;
    }

    Cyclo scaled(const Rational& q) const {
        if (q == 0 || is_zero()) return Cyclo();
        Cyclo c = *this;
        for (auto& v : c.num_) v *= q.get_num();
        c.den_ *= q.get_den();
        c.finish();
        return c;
    }

    Cyclo inverse() const;

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) { return add(a, b, false); }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return add(a, b, true); }
    friend Cyclo operator-(const Cyclo& a) {
        Cyclo c = a;
        for (auto& v : c.num_) v = -v;
        return c;
    }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        if (a.n_ == b.n_) return a.den_ == b.den_ && a.num_ == b.num_;
        return (a - b).is_zero();
    }

    /// Sum of |coefficients|, used for floating error bounds.
    double abs_coeff_sum() const {
        mpz_class s = 0;
        for (const auto& v : num_) s += abs(v);
        return mpq_class(s, den_).get_d();
    }

    /// Numeric value; the error is below 2^{3-prec} (1 + abs_coeff_sum()).
    AComplex to_float(Precision prec) const {
        long terms = static_cast<long>(num_.size()) + 1;
        Precision work = prec + 32 + static_cast<Precision>(mpz_sizeinbase(mpz_class(terms).get_mpz_t(), 2));
        Real re(work), im(work);
        Real two_pi_over_n = Real::pi(work) * Real(2L, work) / Real(n_, work);
        Real s(work), c(work), theta(work), zr(work);
        for (std::size_t j = 0; j < num_.size(); ++j) {
            if (num_[j] == 0) continue;
            zr = Real(num_[j], work);
            if (j == 0) {
                re += zr;
                continue;
            }
            theta = two_pi_over_n * Real(static_cast<long>(j), work);
            mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
            re += zr * c;
            im += zr * s;
        }
        Real d(den_, work);
        re /= d;
        im /= d;
        return {re.with_prec(prec), im.with_prec(prec)};
    }

    /// Human-readable form, e.g. "1/2 + z7^2 - 3*z7^4".
    std::string to_string() const {
        if (num_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t j = 0; j < num_.size(); ++j) {
            if (num_[j] == 0) continue;
            Rational q = coeff(static_cast<long>(j));
            bool neg = q < 0;
            if (neg) q = -q;
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            first = false;
            if (j == 0) {
                os << q.get_str();
            } else {
                if (q != 1) os << q.get_str() << "*";
                os << "z" << n_;
                if (j != 1) os << "^" << j;
            }
        }
        return os.str();
    }

  private:
    static Cyclo add(const Cyclo& a, const Cyclo& b, bool subtract) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;
        long l = detail::checked_lcm(a.n_, b.n_);
        Cyclo x = a.lift(l);
        Cyclo y = b.lift(l);
        Cyclo c;
        c.n_ = l;
        std::size_t len = std::max(x.num_.size(), y.num_.size());
        c.num_.assign(len, mpz_class(0));
        if (x.den_ == y.den_) {
            for (std::size_t j = 0; j < x.num_.size(); ++j) c.num_[j] = x.num_[j];
            for (std::size_t j = 0; j < y.num_.size(); ++j) {
                if (subtract)
                    c.num_[j] -= y.num_[j];
                else
                    c.num_[j] += y.num_[j];
            }
            c.den_ = x.den_;
        } else {
            for (std::size_t j = 0; j < x.num_.size(); ++j) c.num_[j] = x.num_[j] * y.den_;
            for (std::size_t j = 0; j < y.num_.size(); ++j) {
                if (subtract)
                    mpz_submul(c.num_[j].get_mpz_t(), y.num_[j].get_mpz_t(), x.den_.get_mpz_t());
                else
                    mpz_addmul(c.num_[j].get_mpz_t(), y.num_[j].get_mpz_t(), x.den_.get_mpz_t());
            }
            c.den_ = x.den_ * y.den_;
        }
        c.finish();
        return c;
    }

    void trim() {
        while (!num_.empty() && num_.back() == 0) num_.pop_back();
    }

    /// Restores the canonical form: remainder mod Phi_N, reduced content, shrunk conductor.
    void finish() {
        detail::reduce_mod_phi(num_, n_);
        trim();
        for (;;) {
            if (num_.empty()) {
                n_ = 1;
                den_ = 1;
                return;
            }
            long g = n_;
            for (std::size_t j = 1; j < num_.size() && g > 1; ++j)
                if (num_[j] != 0) g = std::gcd(g, static_cast<long>(j));
            if (g <= 1) break;
            long m = n_ / g;
            detail::ZPoly p((num_.size() - 1) / g + 1);
            for (std::size_t j = 0; j < num_.size(); j += g) p[j / g] = num_[j];
            num_ = std::move(p);
            n_ = m;
            detail::reduce_mod_phi(num_, n_);
            trim();
        }
        mpz_class g = den_;
        for (const auto& v : num_) {
            if (g == 1) break;
            if (v != 0) g = gcd(g, v);
        }
        if (g != 1) {
            for (auto& v : num_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    long n_ = 1;
    std::vector<mpz_class> num_;
    mpz_class den_ = 1;
};

inline Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.is_zero() || b.is_zero()) return Cyclo();
    if (a.num_.size() == 1) return b.scaled(a.coeff(0));
    if (b.num_.size() == 1) return a.scaled(b.coeff(0));
    long l = detail::checked_lcm(a.n_, b.n_);
    Cyclo x = a.lift(l);
    Cyclo y = b.lift(l);
    detail::ZPoly acc(x.num_.size() + y.num_.size() - 1);
    for (std::size_t i = 0; i < x.num_.size(); ++i) {
        if (x.num_[i] == 0) continue;
        mpz_srcptr xi = x.num_[i].get_mpz_t();
        for (std::size_t j = 0; j < y.num_.size(); ++j) {
            if (y.num_[j] == 0) continue;
            mpz_addmul(acc[i + j].get_mpz_t(), xi, y.num_[j].get_mpz_t());
        }
    }
    Cyclo c;
    c.n_ = l;
    c.num_ = std::move(acc);
    c.den_ = x.den_ * y.den_;
    c.finish();
    return c;
}

/// Multiplicative inverse by the extended Euclidean algorithm against Phi_N.
inline Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (num_.size() == 1) return Cyclo(Rational(1) / coeff(0));
    const auto& phi = detail::cyclotomic_polynomial(n_);
    detail::QPoly r0(phi.degree + 1);
    r0[phi.degree] = 1;
    for (const auto& [e, c] : phi.lower) r0[e] = c;
    detail::QPoly r1;
    for (std::size_t j = 0; j < num_.size(); ++j) r1.push_back(coeff(static_cast<long>(j)));
    detail::trim(r1);
    detail::QPoly s0, s1{mpq_class(1)};
    while (r1.size() > 1) {
        auto [q, r] = detail::divmod(r0, r1);
        detail::QPoly s2 = detail::sub_mul(s0, q, s1);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::logic_error("cyclotomic inverse failed");
    Cyclo out;
    mpq_class lead = r1[0];
    for (std::size_t j = 0; j < s1.size(); ++j)
        if (s1[j] != 0) out += root_of_unity(n_, static_cast<long>(j)).scaled(s1[j] / lead);
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.to_string(); }

}  // namespace chtg

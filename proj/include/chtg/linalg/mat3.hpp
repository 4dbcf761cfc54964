#pragma once

/**
 * @file mat3.hpp
 * @brief 3x3 matrices over exact cyclotomic numbers or MPFR complex numbers.
 */

#include "chtg/exact.hpp"

#include <array>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace chtg {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Cyclo> {
    static constexpr bool exact = true;
    static Cyclo zero(Precision) { return Cyclo(); }
    static Cyclo one(Precision) { return Cyclo(1); }
    static Cyclo conj(const Cyclo& x) { return x.conj(); }
    static Precision prec(const Cyclo&) { return kDefaultPrecision; }
};

template <>
struct ScalarTraits<AComplex> {
    static constexpr bool exact = false;
    static AComplex zero(Precision prec) { return AComplex(prec); }
    static AComplex one(Precision prec) { return AComplex(1L, prec); }
    static AComplex conj(const AComplex& x) { return {x.re, -x.im}; }
    static Precision prec(const AComplex& x) { return x.prec(); }
};

template <class T>
class Mat3 {
  public:
    using Traits = ScalarTraits<T>;
    static constexpr bool exact = Traits::exact;

    explicit Mat3(Precision prec = kDefaultPrecision) : prec_(prec) {
        e_.reserve(9);
        for (int k = 0; k < 9; ++k) e_.push_back(Traits::zero(prec));
    }

    /// Row-major list of nine entries.
    Mat3(std::initializer_list<T> entries, Precision prec = kDefaultPrecision) : e_(entries), prec_(prec) {
        if (e_.size() != 9) throw std::invalid_argument("Mat3 needs nine entries");
    }

    static Mat3 identity(Precision prec = kDefaultPrecision) {
        Mat3 m(prec);
        for (int i = 0; i < 3; ++i) m(i, i) = Traits::one(prec);
        return m;
    }

    static Mat3 scalar(const T& s, Precision prec = kDefaultPrecision) {
        Mat3 m(prec);
        for (int i = 0; i < 3; ++i) m(i, i) = s;
        return m;
    }

    T& operator()(int i, int j) { return e_[3 * i + j]; }
    const T& operator()(int i, int j) const { return e_[3 * i + j]; }

    Precision prec() const { return prec_; }

    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 r(std::max(a.prec_, b.prec_));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                T acc = a(i, 0) * b(0, j);
                acc += a(i, 1) * b(1, j);
                acc += a(i, 2) * b(2, j);
                r(i, j) = std::move(acc);
            }
        return r;
    }
    friend Mat3 operator+(const Mat3& a, const Mat3& b) {
        Mat3 r = a;
        for (int k = 0; k < 9; ++k) r.e_[k] += b.e_[k];
        return r;
    }
    friend Mat3 operator-(const Mat3& a, const Mat3& b) {
        Mat3 r = a;
        for (int k = 0; k < 9; ++k) r.e_[k] -= b.e_[k];
        return r;
    }
    friend Mat3 operator*(const T& s, const Mat3& a) {
        Mat3 r = a;
        for (auto& x : r.e_) x = s * x;
        return r;
    }
    Mat3& operator*=(const Mat3& o) { return *this = *this * o; }

    friend bool operator==(const Mat3& a, const Mat3& b)
        requires exact
    {
        for (int k = 0; k < 9; ++k)
            if (!(a.e_[k] == b.e_[k])) return false;
        return true;
    }

    /// Conjugate transpose.
    Mat3 adjoint() const {
        Mat3 r(prec_);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = Traits::conj((*this)(j, i));
        return r;
    }

    Mat3 transpose() const {
        Mat3 r(prec_);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    T trace() const {
        T t = (*this)(0, 0);
        t += (*this)(1, 1);
        t += (*this)(2, 2);
        return t;
    }

    T det() const {
        const Mat3& m = *this;
        T d = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
        d -= m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0));
        d += m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        return d;
    }

    /// Sum of the three principal 2x2 minors.
    T principal_minor_sum() const {
        const Mat3& m = *this;
        T s = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        s += m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
        s += m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        return s;
    }

    /// Classical adjugate: adj(M) M = det(M) I.
    Mat3 adjugate() const {
        const Mat3& m = *this;
        Mat3 r(prec_);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
                int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
                r(i, j) = m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1);
            }
        return r;
    }

    Mat3 inverse() const;

    /// M^k for k >= 0; negative k uses the inverse.
    Mat3 pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        Mat3 result = identity(prec_);
        Mat3 base = *this;
        while (k > 0) {
            if (k & 1) result = result * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return result;
    }

    const std::vector<T>& entries() const { return e_; }

  private:
    std::vector<T> e_;
    Precision prec_;
};

using ExactMat = Mat3<Cyclo>;
using FloatMat = Mat3<AComplex>;

/// Largest entry modulus.
inline Real max_abs(const FloatMat& m) {
    Real r(m.prec());
    for (const auto& z : m.entries()) r = max(r, abs(z));
    return r;
}

template <class T>
Mat3<T> Mat3<T>::inverse() const {
    T d = det();
    if constexpr (exact) {
        if (d.is_zero()) throw std::domain_error("singular matrix");
        if (d == Cyclo(1)) return adjugate();
        return d.inverse() * adjugate();
    } else {
        Precision p = prec_;
        if (!(abs(d) > Real::pow2(-static_cast<long>(p) / 2, p))) throw std::domain_error("singular matrix");
        Mat3 adj = adjugate();
        AComplex inv = AComplex(1L, p) / d;
        return inv * adj;
    }
}

inline FloatMat to_float(const ExactMat& m, Precision prec) {
    FloatMat r(prec);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).to_float(prec);
    return r;
}

/// H-inner product <z, v> = v^* H z.
template <class T>
T inner(const std::array<T, 3>& z, const std::array<T, 3>& v, const Mat3<T>& h) {
    using Tr = ScalarTraits<T>;
    T acc = Tr::zero(h.prec());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += Tr::conj(v[i]) * h(i, j) * z[j];
    return acc;
}

template <class T>
std::array<T, 3> mat_vec(const Mat3<T>& m, const std::array<T, 3>& v) {
    std::array<T, 3> r{m(0, 0) * v[0], m(1, 0) * v[0], m(2, 0) * v[0]};
    for (int i = 0; i < 3; ++i) {
        r[i] += m(i, 1) * v[1];
        r[i] += m(i, 2) * v[2];
    }
    return r;
}

}  // namespace chtg

#include "chtg/exact.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace chtg;

namespace {

Real fabs_diff(const AComplex& a, const AComplex& b) { return max(abs(a.re - b.re), abs(a.im - b.im)); }

bool close(const AComplex& z, double re, double im, long log2_tol, Precision prec = 256) {
    Real tol = Real::pow2(log2_tol, prec);
    return abs(z.re - Real(re, prec)) < tol && abs(z.im - Real(im, prec)) < tol;
}

Cyclo random_cyclo(std::mt19937_64& rng) {
    static const long conductors[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 20, 21, 24, 30};
    std::uniform_int_distribution<int> pick(0, std::size(conductors) - 1);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> den(1, 5);
    long n = conductors[pick(rng)];
    std::uniform_int_distribution<long> exp(0, n - 1);
    Cyclo x;
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) x += Cyclo::root_of_unity(n, exp(rng)).scaled(Rational(coeff(rng), den(rng)));
    return x;
}

/// Best rational approximation with denominator <= max_den by continued fractions.
Rational best_rational(const Real& x, long max_den) {
    Precision prec = x.prec();
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Real y = x;
    for (int iter = 0; iter < 200; ++iter) {
        Real fl(prec);
        mpfr_floor(fl.get(), y.get());
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), fl.get(), MPFR_RNDN);
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Real frac = y - fl;
        if (frac < Real::pow2(-static_cast<long>(prec) + 8, prec)) break;
        y = Real(1L, prec) / frac;
    }
    Rational q(p1, q1);
    q.canonicalize();
    return q;
}

}  // namespace

TEST(Angle, CanonicalForm) {
    EXPECT_EQ(angle(1, 3).num(), 1);
    EXPECT_EQ(angle(1, 3).den(), 3);
    EXPECT_EQ(angle(26, 15).num(), 26);
    EXPECT_EQ(angle(26, 15).den(), 15);
    Angle a = angle(-4, 10);
    EXPECT_EQ(a.num(), 8);
    EXPECT_EQ(a.den(), 5);
    EXPECT_EQ(angle(3, -6), angle(3, 2));
    EXPECT_EQ(angle(4, 2), angle(0, 1));
    EXPECT_EQ(angle(13, 45).to_string(), "13π/45");
}

TEST(Angle, ZeroDenominatorRejected) {
    try {
        angle(1, 0);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_STREQ(e.what(), "invalid angle");
    }
}

TEST(RootOfUnity, Examples) {
    EXPECT_EQ(root_of_unity(angle(1, 1)), Cyclo(-1));
    Cyclo z3 = root_of_unity(angle(2, 3));
    EXPECT_EQ(z3 + z3 * z3, Cyclo(-1));
    Cyclo s = root_of_unity(angle(2, 7)) + root_of_unity(angle(4, 7)) + root_of_unity(angle(-6, 7));
    EXPECT_EQ(is_rational(real_part(s)), Rational(-1, 2));
    // Im^2 = 7/4
    EXPECT_EQ(is_rational(imag_part(s) * imag_part(s)), Rational(7, 4));
    EXPECT_GT(real_sign(imag_part(s)), 0);
}

TEST(CosExact, KnownValues) {
    EXPECT_EQ(is_rational(cos_exact(angle(1, 3))), Rational(1, 2));
    EXPECT_EQ(is_rational(cos_exact(angle(1, 5)) - cos_exact(angle(2, 5))), Rational(1, 2));
    EXPECT_EQ(is_rational(cos_exact(angle(1, 7)) - cos_exact(angle(2, 7)) + cos_exact(angle(3, 7))),
              Rational(1, 2));
    EXPECT_EQ(is_rational(sin_exact(angle(1, 6))), Rational(1, 2));
    EXPECT_EQ(is_rational(sin_exact(angle(3, 2))), Rational(-1));
}

TEST(CycloOps, Examples) {
    Cyclo z3 = Cyclo::root_of_unity(3, 1);
    EXPECT_EQ(z3 + z3 * z3, Cyclo(-1));
    Cyclo z8 = Cyclo::root_of_unity(8, 1);
    Cyclo sq = z8 * z8;
    EXPECT_EQ(sq, Cyclo::i_unit());
    EXPECT_EQ(sq.conductor(), 4);
    EXPECT_EQ(Cyclo::root_of_unity(7, 1).conj(), Cyclo::root_of_unity(7, 6));
    EXPECT_EQ(-Cyclo(3), Cyclo(-3));
    EXPECT_EQ(Cyclo::root_of_unity(5, 2).scaled(Rational(3, 4)) - Cyclo::root_of_unity(5, 2).scaled(Rational(3, 4)),
              Cyclo());
}

TEST(CycloOps, ConjugationIndexMap) {
    Cyclo x = Cyclo::root_of_unity(9, 2).scaled(Rational(5, 3)) + Cyclo::root_of_unity(9, 4) + Cyclo(2);
    Cyclo expect = Cyclo::root_of_unity(9, 7).scaled(Rational(5, 3)) + Cyclo::root_of_unity(9, 5) + Cyclo(2);
    EXPECT_EQ(x.conj(), expect);
}

TEST(CycloOps, ConductorBound) {
    long saved = cyclo_conductor_limit().load();
    cyclo_conductor_limit() = 100;
    Cyclo a = Cyclo::root_of_unity(11, 1);
    Cyclo b = Cyclo::root_of_unity(13, 1);
    try {
        (void)(a * b);
        FAIL();
    } catch (const std::overflow_error& e) {
        EXPECT_STREQ(e.what(), "conductor too large");
    }
    cyclo_conductor_limit() = saved;
}

TEST(CycloOps, InverseAndDivision) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        Cyclo x = random_cyclo(rng);
        if (x.is_zero()) continue;
        EXPECT_EQ(x * x.inverse(), Cyclo(1));
    }
    EXPECT_THROW(Cyclo().inverse(), std::domain_error);
}

TEST(CycloOps, LiftPreservesValue) {
    Cyclo x = Cyclo::root_of_unity(6, 1) + Cyclo(Rational(1, 3));
    Cyclo y = x.lift(30);
    EXPECT_EQ(y.conductor(), 30);
    EXPECT_EQ(x, y);
}

TEST(IsRational, Examples) {
    EXPECT_EQ(is_rational(cos_exact(angle(2, 5)) + cos_exact(angle(4, 5))), Rational(-1, 2));
    EXPECT_FALSE(is_rational(cos_exact(angle(1, 7))).has_value());
    EXPECT_EQ(is_rational(cos_exact(angle(1, 2))), Rational(0));
}

TEST(ToFloat, Examples) {
    AComplex h = to_float(Cyclo(Rational(1, 2)), 53);
    EXPECT_EQ(h.re.to_double(), 0.5);
    EXPECT_TRUE(h.im.is_zero());
    EXPECT_TRUE(close(to_float(Cyclo::i_unit(), 256), 0.0, 1.0, -250));
    Cyclo s = root_of_unity(angle(2, 7)) + root_of_unity(angle(4, 7)) + root_of_unity(angle(-6, 7));
    AComplex v = to_float(s, 256);
    Real half_sqrt7 = sqrt(Real(7L, 256)) / Real(2L, 256);
    EXPECT_LT(abs(v.re + Real(Rational(1, 2), 256)), Real::pow2(-250, 256));
    EXPECT_LT(abs(v.im - half_sqrt7), Real::pow2(-250, 256));
    EXPECT_EQ(v.im.to_string(11), "1.3228756555e+00");
}

TEST(RealSign, DecidesCloseValues) {
    // cos(pi/7) - cos(2 pi/7) + cos(3 pi/7) - 1/2 is exactly zero.
    Cyclo z = cos_exact(angle(1, 7)) - cos_exact(angle(2, 7)) + cos_exact(angle(3, 7)) - Cyclo(Rational(1, 2));
    EXPECT_EQ(real_sign(z), 0);
    EXPECT_EQ(real_sign(cos_exact(angle(1, 7)) - Cyclo(Rational(9, 10))), 1);
    EXPECT_EQ(real_sign(cos_exact(angle(2, 3))), -1);
}

TEST(ExactProperties, PythagoreanAndEuler) {
    std::mt19937_64 rng(20240917);
    std::uniform_int_distribution<long> den(1, 60);
    for (int i = 0; i < 300; ++i) {
        long d = den(rng);
        long n = std::uniform_int_distribution<long>(-2 * d, 2 * d)(rng);
        Angle t(n, d);
        Cyclo c = cos_exact(t), s = sin_exact(t);
        EXPECT_EQ(c * c + s * s, Cyclo(1)) << t.to_string();
        EXPECT_EQ(root_of_unity(t), c + Cyclo::i_unit() * s) << t.to_string();
        EXPECT_TRUE(c.is_real());
        EXPECT_TRUE(s.is_real());
    }
}

TEST(ExactProperties, FloatAdditivity) {
    std::mt19937_64 rng(20240918);
    for (int i = 0; i < 300; ++i) {
        Cyclo x = random_cyclo(rng), y = random_cyclo(rng);
        Precision prec = 256;
        AComplex lhs = to_float(x + y, prec);
        AComplex rhs = to_float(x, prec) + to_float(y, prec);
        double mass = 3.0 + x.abs_coeff_sum() + y.abs_coeff_sum() + (x + y).abs_coeff_sum();
        Real bound = Real::pow2(3 - 256 + 2, prec) * Real(mass, prec);
        EXPECT_LE(fabs_diff(lhs, rhs), bound);
    }
}

TEST(ExactProperties, IsRationalAgreesWithBruteForce) {
    std::mt19937_64 rng(20240919);
    const Precision prec = 320;
    int rational_count = 0;
    for (int i = 0; i < 1000; ++i) {
        Cyclo x = random_cyclo(rng);
        // Make about half of the samples rational by taking the trace over conjugates.
        if (i % 2 == 0 && x.conductor() > 2) {
            Cyclo tr;
            for (long k = 1; k < x.conductor(); ++k)
                if (std::gcd(k, x.conductor()) == 1) tr += x.galois(k);
            x = tr;
        }
        AComplex v = to_float(x, prec);
        Real tol = Real::pow2(-200, prec);
        bool oracle = false;
        if (abs(v.im) < tol) {
            Rational q = best_rational(v.re, 1000000);
            oracle = abs(v.re - Real(q, prec)) < tol && (x - Cyclo(q)).is_zero();
        }
        auto got = is_rational(x);
        EXPECT_EQ(got.has_value(), oracle) << x.to_string();
        if (got) {
            ++rational_count;
            EXPECT_LT(abs(v.re - Real(*got, prec)), tol);
        }
    }
    EXPECT_GT(rational_count, 300);
}

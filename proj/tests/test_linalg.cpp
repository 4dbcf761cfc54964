#include "chtg/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace chtg;

namespace {

const Precision kPrec = 256;

Cyclo gaussian(std::mt19937_64& rng, int range) {
    std::uniform_int_distribution<int> d(-range, range);
    return Cyclo(d(rng)) + Cyclo::i_unit() * Cyclo(d(rng));
}

ExactMat random_hermitian(std::mt19937_64& rng) {
    ExactMat h;
    std::uniform_int_distribution<int> d(-3, 3);
    for (int i = 0; i < 3; ++i) {
        h(i, i) = Cyclo(d(rng));
        for (int j = i + 1; j < 3; ++j) {
            h(i, j) = gaussian(rng, 2);
            h(j, i) = h(i, j).conj();
        }
    }
    return h;
}

/// Rank-deficient Hermitian matrix x v v^* + y w w^*.
ExactMat low_rank_hermitian(std::mt19937_64& rng) {
    std::array<Cyclo, 3> v{gaussian(rng, 2), gaussian(rng, 2), gaussian(rng, 2)};
    std::array<Cyclo, 3> w{gaussian(rng, 2), gaussian(rng, 2), gaussian(rng, 2)};
    std::uniform_int_distribution<int> d(-2, 2);
    Cyclo x(d(rng)), y(d(rng));
    ExactMat h;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h(i, j) = x * v[i] * v[j].conj() + y * w[i] * w[j].conj();
    return h;
}

FloatMat random_float(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    FloatMat m(kPrec);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = AComplex(Real(d(rng), kPrec), Real(d(rng), kPrec));
    return m;
}

Real tol(long log2) { return Real::pow2(log2, kPrec); }

}  // namespace

TEST(Mat3, ExactDeterminantTraceInverse) {
    Cyclo z = Cyclo::root_of_unity(9, 1);
    ExactMat m{z * z, Cyclo(3), Cyclo::i_unit(), Cyclo(), z.conj(), Cyclo(1), Cyclo(), Cyclo(), z.conj()};
    EXPECT_EQ(m.det(), Cyclo(1));
    EXPECT_EQ(m.trace(), z * z + z.conj().scaled(2));
    EXPECT_EQ(m * m.inverse(), ExactMat::identity());
    EXPECT_EQ(m.inverse(), m.adjugate());
    EXPECT_EQ(m.pow(9) * m.pow(-9), ExactMat::identity());
}

TEST(Mat3, SingularInverseRejected) {
    ExactMat m{Cyclo(1), Cyclo(2), Cyclo(3), Cyclo(2), Cyclo(4), Cyclo(6), Cyclo(0), Cyclo(1), Cyclo(1)};
    try {
        (void)m.inverse();
        FAIL();
    } catch (const std::domain_error& e) {
        EXPECT_STREQ(e.what(), "singular matrix");
    }
    EXPECT_THROW((void)to_float(m, kPrec).inverse(), std::domain_error);
}

TEST(Mat3, FloatInverse) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        FloatMat m = random_float(rng);
        EXPECT_LT(max_abs(m * m.inverse() - FloatMat::identity(kPrec)), tol(-kPrec + 10));
    }
}

TEST(FormResidual, ScalarExamples) {
    ExactMat h{Cyclo(2), Cyclo(1), Cyclo(), Cyclo(1), Cyclo(-1), Cyclo(), Cyclo(), Cyclo(), Cyclo(5)};
    EXPECT_TRUE(form_residual(ExactMat::identity(), h).is_zero());
    Real r = form_residual(ExactMat::scalar(Cyclo(2)), h);
    EXPECT_EQ(r, Real(15L, kPrec));  // 3 * max|H|
}

TEST(Signature, ExactDiagonal) {
    ExactMat h = ExactMat::identity();
    h(2, 2) = Cyclo(-1);
    EXPECT_EQ(hermitian_signature(h).verdict(), "(2,1)");
    h(1, 1) = Cyclo();
    Signature s = hermitian_signature(h);
    EXPECT_EQ(s, (Signature{1, 1, 1}));
    EXPECT_EQ(s.verdict(), "degenerate");
    EXPECT_EQ(hermitian_signature(ExactMat()), (Signature{0, 0, 3}));
    EXPECT_EQ(hermitian_signature(ExactMat::identity()).verdict(), "(3,0)");
}

TEST(Signature, NonHermitianRejected) {
    ExactMat m = ExactMat::identity();
    m(0, 1) = Cyclo::i_unit();
    EXPECT_THROW(hermitian_signature(m), std::invalid_argument);
    EXPECT_THROW(hermitian_signature(to_float(m, kPrec)), std::invalid_argument);
}

TEST(Eigenvalues, Triangular) {
    Cyclo z = Cyclo::root_of_unity(12, 1);
    ExactMat m{z * z, Cyclo(3), Cyclo(1), Cyclo(), z.conj(), Cyclo(5), Cyclo(), Cyclo(), z.conj()};
    auto ev = eigenvalues3(to_float(m, kPrec));
    std::array<AComplex, 3> expect{to_float(z * z, kPrec), to_float(z.conj(), kPrec), to_float(z.conj(), kPrec)};
    EXPECT_LT(multiset_distance(ev, expect), tol(-kPrec / 2));
}

TEST(Eigenvalues, Identity) {
    auto ev = eigenvalues3(FloatMat::identity(kPrec));
    for (const auto& x : ev) EXPECT_LT(abs(x - AComplex(1L, kPrec)), tol(-200));
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify_isometry(AComplex(3L, kPrec)), ElementType::Boundary);
    EXPECT_EQ(classify_isometry(AComplex(0L, kPrec)), ElementType::RegularElliptic);
    EXPECT_EQ(classify_isometry(AComplex(4L, kPrec)), ElementType::Loxodromic);
    EXPECT_EQ(to_string(ElementType::RegularElliptic), "regular-elliptic");
}

TEST(Projective, ScalarMultiples) {
    std::mt19937_64 rng(12);
    FloatMat m = random_float(rng);
    AComplex w = cube_roots_of_unity(kPrec)[1];
    EXPECT_TRUE(projective_equal(m, w * m, tol(-240)));
    EXPECT_FALSE(projective_equal(m, AComplex(-1L, kPrec) * m, tol(-240)));
    ExactMat e = ExactMat::identity();
    e(0, 1) = Cyclo(2);
    EXPECT_TRUE(projective_equal(e, Cyclo::root_of_unity(3, 2) * e));
    EXPECT_FALSE(projective_equal(e, Cyclo::i_unit() * e));
}

TEST(Projective, Order) {
    EXPECT_EQ(projective_order(FloatMat::identity(kPrec), 5, tol(-200)), 1);
    Cyclo z = Cyclo::root_of_unity(15, 1);
    ExactMat d{z * z, Cyclo(), Cyclo(), Cyclo(), z.conj(), Cyclo(), Cyclo(), Cyclo(), z.conj()};
    EXPECT_EQ(projective_order(d, 24), 5);
    EXPECT_EQ(projective_order(to_float(d, kPrec), 24, tol(-200)), 5);
    EXPECT_EQ(projective_order(d, 4), std::nullopt);
}

TEST(LinalgProperties, SylvesterInvariance) {
    std::mt19937_64 rng(20240920);
    int done = 0, degenerate = 0;
    while (done < 100) {
        ExactMat h = done % 4 == 3 ? low_rank_hermitian(rng) : random_hermitian(rng);
        ExactMat p;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) p(i, j) = gaussian(rng, 2);
        if (p.det().is_zero()) continue;
        Signature s = hermitian_signature(h);
        EXPECT_EQ(hermitian_signature(p.adjoint() * h * p), s);
        if (!h.det().is_zero()) {
            Signature f = hermitian_signature(to_float(h, kPrec));
            EXPECT_EQ(f, s);
        }
        degenerate += s.degenerate();
        ++done;
    }
    EXPECT_GE(degenerate, 20);
}

TEST(LinalgProperties, EigenvaluesMatchCharacteristicPolynomial) {
    std::mt19937_64 rng(20240921);
    for (int i = 0; i < 100; ++i) {
        FloatMat m = random_float(rng);
        auto ev = eigenvalues3(m);
        AComplex sum = ev[0] + ev[1] + ev[2];
        AComplex prod = ev[0] * ev[1] * ev[2];
        EXPECT_LT(abs(sum - m.trace()), tol(-kPrec / 2));
        EXPECT_LT(abs(prod - m.det()), tol(-kPrec / 2));
    }
}

TEST(LinalgProperties, ProjectiveEqualityIsEquivalence) {
    std::mt19937_64 rng(20240922);
    auto roots = cube_roots_of_unity(kPrec);
    std::vector<FloatMat> sample;
    for (int i = 0; i < 4; ++i) {
        FloatMat m = random_float(rng);
        for (const auto& r : roots) sample.push_back(r * m);
    }
    Real t = tol(-200);
    for (std::size_t a = 0; a < sample.size(); ++a) {
        EXPECT_TRUE(projective_equal(sample[a], sample[a], t));
        for (std::size_t b = 0; b < sample.size(); ++b) {
            bool ab = projective_equal(sample[a], sample[b], t);
            EXPECT_EQ(ab, projective_equal(sample[b], sample[a], t));
            EXPECT_EQ(ab, a / 3 == b / 3);
            for (std::size_t c = 0; c < sample.size(); ++c)
                if (ab && projective_equal(sample[b], sample[c], t)) {
                    EXPECT_TRUE(projective_equal(sample[a], sample[c], t));
                }
        }
    }
}

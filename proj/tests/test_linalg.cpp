#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace entgame;
using entgame::testing::Rng;

namespace {

Matrix running_product() { return {{2, 1, 1}, {1, 0, 1}, {1, 1, 2}}; }

}  // namespace

TEST(Rational, ParsesFractionsDecimalsAndIntegers) {
    EXPECT_EQ(parse_rational("357/100"), Rational(357, 100));
    EXPECT_EQ(parse_rational("3.57"), Rational(357, 100));
    EXPECT_EQ(parse_rational("-2"), Rational(-2));
    EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
    EXPECT_EQ(parse_rational("1e-6"), Rational(1, 1000000));
    EXPECT_EQ(parse_rational("0.0625"), Rational(1, 16));
    EXPECT_EQ(parse_rational("010/08"), Rational(5, 4));
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
    EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
}

TEST(Rational, RationalizeStaysClose) {
    EXPECT_EQ(rationalize(0.5), Rational(1, 2));
    const double x = 3.5615528128088303;
    EXPECT_NEAR(to_double(rationalize(x)), x, 1e-12);
}

TEST(MatMul, Examples) {
    const Matrix a{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    const Matrix e{{1, 0, 0}, {1, 1, 1}, {0, 0, 1}};
    EXPECT_EQ(mat_mul(a, e), running_product());
    EXPECT_EQ(mat_mul(Matrix::identity(3), running_product()), running_product());
    const Matrix row{{1, 2}}, col{{3}, {4}};
    EXPECT_EQ(mat_mul(row, col), (Matrix{{11}}));
    EXPECT_THROW(mat_mul(row, row), Error);
}

TEST(OneNorm, Examples) {
    EXPECT_EQ(one_norm(running_product()), 10);
    EXPECT_EQ(one_norm(Matrix(3, 3)), 0);
    EXPECT_EQ(one_norm(Matrix::identity(3)), 3);
    EXPECT_EQ(one_norm(Matrix{{-1, 2}}), 3);
}

TEST(SpectralRadius, Examples) {
    const double golden = (3.0 + std::sqrt(17.0)) / 2.0;
    const auto r = spectral_radius(running_product());
    EXPECT_NEAR(r.value, golden, 1e-9);
    EXPECT_TRUE(entgame::testing::contains_quadratic(r.lower, r.upper, 3, 17, 2));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.upper - r.lower, default_radius_tolerance());

    const auto id = spectral_radius(Matrix::identity(4));
    EXPECT_EQ(id.lower, 1);
    EXPECT_EQ(id.upper, 1);
    const auto ones = spectral_radius(Matrix{{1, 1}, {1, 1}});
    EXPECT_LE(ones.lower, 2);
    EXPECT_GE(ones.upper, 2);
    EXPECT_NEAR(ones.value, 2.0, 1e-9);
    const auto perm = spectral_radius(Matrix{{0, 1}, {1, 0}});
    EXPECT_LE(perm.lower, 1);
    EXPECT_GE(perm.upper, 1);
    EXPECT_NEAR(perm.value, 1.0, 1e-9);
}

TEST(SpectralRadius, ReducibleAndNilpotent) {
    const auto nil = spectral_radius(Matrix{{0, 1}, {0, 0}});
    EXPECT_EQ(nil.lower, 0);
    EXPECT_NEAR(nil.value, 0.0, 1e-12);
    const auto tri = spectral_radius(Matrix{{1, 5}, {0, 3}});
    EXPECT_LE(tri.lower, 3);
    EXPECT_GE(tri.upper, 3);
    EXPECT_TRUE(certify_radius_upper(Matrix{{1, 5}, {0, 3}}, tri.upper, tri.upper_witness));
}

TEST(SpectralRadius, RejectsBadInput) {
    EXPECT_THROW(spectral_radius(Matrix(2, 3)), Error);
    EXPECT_THROW(spectral_radius(Matrix{{1, -1}, {0, 1}}), Error);
}

TEST(PerronVector, Examples) {
    const Vector v = perron_vector(running_product());
    const double rho = (3.0 + std::sqrt(17.0)) / 2.0;
    const double s = 2.0 + 2.0 / rho;
    EXPECT_NEAR(to_double(v[0]), 1.0 / s, 1e-9);
    EXPECT_NEAR(to_double(v[1]), 2.0 / rho / s, 1e-9);
    EXPECT_NEAR(to_double(v[2]), 1.0 / s, 1e-9);
    EXPECT_NEAR(to_double(v[0]), 0.3904, 1e-4);
    EXPECT_NEAR(to_double(v[1]), 0.2192, 1e-4);
    Rational sum = 0;
    for (const auto& x : v) sum += x;
    EXPECT_EQ(sum, 1);

    const Vector w = perron_vector(Matrix{{1, 1}, {1, 1}});
    EXPECT_EQ(w, (Vector{Rational(1, 2), Rational(1, 2)}));

    try {
        perron_vector(Matrix::identity(3));
        FAIL() << "identity accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::reducible_matrix);
        EXPECT_NE(std::string(e.what()).find("{"), std::string::npos);
    }
}

TEST(CertifyRadius, UpperExamples) {
    EXPECT_TRUE(certify_radius_upper(running_product(), 4, {1, 1, 1}));
    EXPECT_FALSE(certify_radius_upper(Matrix{{1, 1}, {1, 1}}, 1, {1, 1}));
    EXPECT_TRUE(certify_radius_upper(running_product(), Rational(357, 100), {1, Rational(5615, 10000), 1}));
    EXPECT_THROW(certify_radius_upper(running_product(), 4, {1, 0, 1}), Error);
    EXPECT_THROW(certify_radius_upper(running_product(), 4, {1, 1}), Error);
}

TEST(CertifyRadius, LowerExamples) {
    EXPECT_TRUE(certify_radius_lower(running_product(), 2, {1, 0, 1}));
    EXPECT_TRUE(certify_radius_lower(Matrix::identity(3), 1, {1, 1, 1}));
    EXPECT_FALSE(certify_radius_lower(Matrix{{0, 1}, {0, 0}}, Rational(1, 2), {1, 1}));
    EXPECT_THROW(certify_radius_lower(running_product(), 2, {0, 0, 0}), Error);
    EXPECT_THROW(certify_radius_lower(running_product(), -1, {1, 1, 1}), Error);
}

TEST(GelfandBounds, DecreaseTowardRadius) {
    const auto b = gelfand_bounds(to_double(running_product()), 12);
    const double rho = (3.0 + std::sqrt(17.0)) / 2.0;
    for (std::size_t k = 1; k < b.size(); ++k) EXPECT_LE(b[k], b[k - 1] + 1e-12);
    EXPECT_GE(b.back(), rho - 1e-9);
    EXPECT_NEAR(b.back(), rho, 1e-3);
}

// ---- properties on random matrices -------------------------------------

TEST(SpectralProperties, AgreesWithEigenAndEnclosuresCertify) {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = entgame::testing::random_dim(rng, 5);
        const Matrix m = entgame::testing::random_matrix(rng, n, n);
        const auto r = spectral_radius(m);
        const double ref = entgame::testing::eigen_radius(m);
        EXPECT_NEAR(r.value, ref, 1e-7 * std::max(1.0, ref)) << to_string(m);
        EXPECT_LE(to_double(r.lower), ref + 1e-9 * std::max(1.0, ref));
        EXPECT_GE(to_double(r.upper), ref - 1e-9 * std::max(1.0, ref));
        EXPECT_TRUE(certify_radius_upper(m, r.upper, r.upper_witness));
        EXPECT_TRUE(certify_radius_lower(m, r.lower, r.lower_witness));
    }
}

TEST(SpectralProperties, Monotone) {
    Rng rng(12);
    const Rational tol = default_radius_tolerance();
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = entgame::testing::random_dim(rng, 4);
        const Matrix a = entgame::testing::random_matrix(rng, n, n);
        const Matrix b = a + entgame::testing::random_matrix(rng, n, n, 2, 0.6);
        EXPECT_LE(spectral_radius(a).upper, spectral_radius(b).upper + 2 * tol);
    }
}

TEST(SpectralProperties, ProductCommutes) {
    Rng rng(13);
    const Rational tol = default_radius_tolerance();
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = entgame::testing::random_dim(rng, 4), k = entgame::testing::random_dim(rng, 4);
        const Matrix a = entgame::testing::random_matrix(rng, n, k);
        const Matrix b = entgame::testing::random_matrix(rng, k, n);
        const auto ab = spectral_radius(mat_mul(a, b));
        const auto ba = spectral_radius(mat_mul(b, a));
        EXPECT_LE(ab.lower, ba.upper + 2 * tol);
        EXPECT_LE(ba.lower, ab.upper + 2 * tol);
    }
}

TEST(SpectralProperties, GelfandBracketsPowerIteration) {
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = entgame::testing::random_dim(rng, 4);
        const Matrix m = entgame::testing::random_matrix(rng, n, n, 4, 0.1);
        const auto b = gelfand_bounds(to_double(m), 10);
        const auto r = spectral_radius(m);
        for (std::size_t k = 1; k < b.size(); ++k) EXPECT_LE(b[k], b[k - 1] * (1 + 1e-12) + 1e-300);
        EXPECT_GE(b.back() * (1 + 1e-9), r.value);
    }
}

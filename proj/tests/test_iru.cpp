#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace entgame;
using entgame::testing::Rng;

namespace {

IruSet running_a() {
    return IruSet(3, {RowSet(3, {{1, 1, 0}}), RowSet(3, {{0, 1, 0}, {1, 0, 1}}), RowSet(3, {{0, 1, 1}})});
}

IruSet running_e() {
    return IruSet(3, {RowSet(3, {{0, 1, 0}, {1, 0, 0}}), RowSet(3, {{1, 1, 1}}), RowSet(3, {{0, 1, 0}, {0, 0, 1}})});
}

std::set<std::string> as_strings(const std::vector<Matrix>& ms) {
    std::set<std::string> out;
    for (const auto& m : ms) out.insert(to_string(m));
    return out;
}

}  // namespace

TEST(RowSet, DeduplicatesAndValidates) {
    const RowSet rs(2, {{1, 2}, {1, 2}, {0, 1}});
    EXPECT_EQ(rs.size(), 2U);
    EXPECT_THROW(RowSet(2, {}), Error);
    EXPECT_THROW(RowSet(2, {{1}}), Error);
    EXPECT_THROW(RowSet(1, {{-1}}), Error);
    EXPECT_TRUE(RowSet(2, {{1, 2}, {0, 1}}).same_rows(RowSet(2, {{0, 1}, {1, 2}})));
}

TEST(Enumerate, Examples) {
    EXPECT_EQ(enumerate(running_a()).size(), 2U);
    EXPECT_EQ(enumerate(running_e()).size(), 4U);
    EXPECT_EQ(enumerate(IruSet::singleton(Matrix::identity(3))).size(), 1U);
    EXPECT_EQ(running_e().family_size(), 4U);
}

TEST(Enumerate, LexicographicOrderAndCap) {
    const auto ms = enumerate(running_e());
    EXPECT_EQ(ms[0], (Matrix{{0, 1, 0}, {1, 1, 1}, {0, 1, 0}}));
    EXPECT_EQ(ms[1], (Matrix{{0, 1, 0}, {1, 1, 1}, {0, 0, 1}}));
    EXPECT_EQ(ms[2], (Matrix{{1, 0, 0}, {1, 1, 1}, {0, 1, 0}}));
    EXPECT_EQ(ms[3], (Matrix{{1, 0, 0}, {1, 1, 1}, {0, 0, 1}}));
    try {
        enumerate(running_e(), 3);
        FAIL() << "cap ignored";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::cap_exceeded);
    }
}

TEST(Enumerate, RestartableEnumerator) {
    MemberEnumerator it(running_e());
    int first = 0;
    while (it.next()) ++first;
    it.reset();
    int second = 0;
    while (it.next()) ++second;
    EXPECT_EQ(first, 4);
    EXPECT_EQ(second, 4);
}

TEST(RightProduct, Examples) {
    const Matrix a0{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    std::vector<Matrix> brute;
    for (const auto& e : enumerate(running_e())) brute.push_back(mat_mul(e, a0));
    EXPECT_EQ(as_strings(enumerate(right_product(running_e(), a0))), as_strings(brute));
    EXPECT_TRUE(right_product(running_e(), Matrix::identity(3)).same_family(running_e()));
    const IruSet z = right_product(running_e(), Matrix(3, 3));
    EXPECT_EQ(z.family_size(), 1U);
    EXPECT_TRUE(is_zero(enumerate(z).front()));
    EXPECT_THROW(right_product(running_e(), Matrix(2, 2)), Error);
}

TEST(JsrJssr, Examples) {
    const auto r = jsr_jssr(running_a());
    EXPECT_LE(r.jsr.lower, 2);
    EXPECT_GE(r.jsr.upper, 2);
    EXPECT_LE(r.jssr.lower, 1);
    EXPECT_GE(r.jssr.upper, 1);
    EXPECT_EQ(r.argmax, (Matrix{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
    EXPECT_EQ(r.argmin, (Matrix{{1, 1, 0}, {0, 1, 0}, {0, 1, 1}}));

    const auto id = jsr_jssr(IruSet::singleton(Matrix::identity(2)));
    EXPECT_EQ(id.jsr.lower, 1);
    EXPECT_EQ(id.jssr.upper, 1);

    const IruSet s(2, {RowSet(2, {{2, 0}, {0, 0}}), RowSet(2, {{0, 1}})});
    const auto t = jsr_jssr(s);
    EXPECT_LE(t.jsr.lower, 2);
    EXPECT_GE(t.jsr.upper, 2);
    EXPECT_EQ(t.argmax, (Matrix{{2, 0}, {0, 1}}));
    EXPECT_THROW(jsr_jssr(IruSet(2, {RowSet(2, {{1, 1}})})), Error);
}

TEST(SampleConv, Examples) {
    const Matrix id = Matrix::identity(3);
    EXPECT_EQ(sample_conv(IruSet::singleton(id), 1), id);
    EXPECT_EQ(sample_conv(IruSet::singleton(id), 99), id);

    const IruSet e = running_e();
    EXPECT_TRUE(e.contains(convex_combination(e, {{1, 0}, {1}, {0, 1}})));

    const Matrix m = sample_conv(e, 42);
    const auto w = sample_conv_weights(e, 42);
    EXPECT_EQ(m(0, 2), 0);
    EXPECT_EQ(m(0, 0) + m(0, 1), 1);
    EXPECT_EQ(m(0, 1), w[0][0]);
    EXPECT_EQ(m(0, 0), w[0][1]);
    EXPECT_EQ(sample_conv(e, 42), m);
}

TEST(Hourglass, Examples) {
    const Matrix id = Matrix::identity(2);
    const auto single = hourglass_check(IruSet::singleton(id), {1, 2}, {1, 2}, id);
    EXPECT_TRUE(single.all_ge.holds_for_all);
    EXPECT_TRUE(single.all_le.holds_for_all);

    const IruSet a = running_a();
    const Matrix lo{{1, 1, 0}, {0, 1, 0}, {0, 1, 1}};
    const Vector u{1, 0, 1};
    const auto r = hourglass_check(a, u, mul(lo, u), lo);
    EXPECT_TRUE(r.all_ge.holds_for_all);
    EXPECT_FALSE(r.all_le.holds_for_all);

    const IruSet tiny(1, {RowSet(1, {{1}, {2}})});
    const auto t = hourglass_check(tiny, {1}, {1}, Matrix{{1}});
    EXPECT_TRUE(t.all_ge.holds_for_all);
    ASSERT_TRUE(t.all_le.counterexample);
    EXPECT_EQ(*t.all_le.counterexample, (Matrix{{2}}));

    EXPECT_THROW(hourglass_check(tiny, {1}, {2}, Matrix{{1}}), Error);
    EXPECT_THROW(hourglass_check(tiny, {1}, {3}, Matrix{{3}}), Error);
}

// ---- properties ------------------------------------------------------------

TEST(IruProperties, RightProductMatchesBruteForce) {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = entgame::testing::random_dim(rng), k = entgame::testing::random_dim(rng),
                          c = entgame::testing::random_dim(rng);
        const IruSet s = entgame::testing::random_iru(rng, n, k);
        const Matrix b = entgame::testing::random_matrix(rng, k, c);
        std::vector<Matrix> brute;
        for (const auto& m : enumerate(s)) brute.push_back(mat_mul(m, b));
        EXPECT_EQ(as_strings(enumerate(right_product(s, b))), as_strings(brute));
    }
}

TEST(IruProperties, HullStaysWithinJointRadii) {
    Rng rng(22);
    const Rational tol = default_radius_tolerance();
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = entgame::testing::random_dim(rng, 3);
        const IruSet s = entgame::testing::random_iru(rng, n, n);
        const auto r = jsr_jssr(s);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Matrix m = sample_conv(s, seed);
            const auto est = spectral_radius(m);
            EXPECT_GE(est.upper, r.jssr.lower - tol);
            EXPECT_LE(est.lower, r.jsr.upper + tol);
        }
    }
}

TEST(IruProperties, BergerWangAtDeskScale) {
    Rng rng(23);
    const Rational tol = default_radius_tolerance();
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = entgame::testing::random_dim(rng, 3);
        IruSet s = entgame::testing::random_iru(rng, n, n, 2);
        if (s.family_size() > 6) continue;
        const auto r = jsr_jssr(s);
        const double jsr_hi = to_double(r.jsr.upper + tol), jsr_lo = to_double(r.jsr.lower - tol);
        const auto members = enumerate(s);
        std::vector<MatrixD> level;
        for (const auto& m : members) level.push_back(to_double(m));
        std::vector<double> norm_bound;
        for (int k = 1; k <= 4; ++k) {
            double rho_max = 0.0, norm_max = 0.0;
            for (const auto& p : level) {
                rho_max = std::max(rho_max, std::pow(entgame::testing::eigen_radius(p), 1.0 / k));
                norm_max = std::max(norm_max, std::pow(one_norm(p), 1.0 / k));
            }
            EXPECT_LE(rho_max, jsr_hi * (1 + 1e-9));
            EXPECT_GE(norm_max, jsr_lo * (1 - 1e-9));
            norm_bound.push_back(norm_max);
            if (k == 4) break;
            std::vector<MatrixD> next;
            for (const auto& p : level)
                for (const auto& m : members) next.push_back(mat_mul(p, to_double(m)));
            level = std::move(next);
        }
        EXPECT_LE(norm_bound[1], norm_bound[0] * (1 + 1e-12));
        EXPECT_LE(norm_bound[3], norm_bound[1] * (1 + 1e-12));
    }
}

TEST(IruProperties, HourglassBranchesVerifiedByEnumeration) {
    Rng rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = entgame::testing::random_dim(rng), k = entgame::testing::random_dim(rng);
        const IruSet s = entgame::testing::random_iru(rng, n, k);
        const auto members = enumerate(s);
        const Matrix w = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
        Vector u(k);
        for (auto& x : u) x = Rational(std::uniform_int_distribution<int>(1, 9)(rng), std::uniform_int_distribution<int>(1, 4)(rng));
        const Vector v = mul(w, u);
        const auto r = hourglass_check(s, u, v, w);
        auto all = [&](auto rel) {
            return std::all_of(members.begin(), members.end(), [&](const Matrix& m) {
                const Vector mu = mul(m, u);
                for (std::size_t i = 0; i < n; ++i)
                    if (!rel(mu[i], v[i])) return false;
                return true;
            });
        };
        const auto ge = [](const Rational& a, const Rational& b) { return a >= b; };
        const auto le = [](const Rational& a, const Rational& b) { return a <= b; };
        EXPECT_EQ(r.all_ge.holds_for_all, all(ge));
        EXPECT_EQ(r.all_le.holds_for_all, all(le));
        for (const auto* c : {&r.all_ge, &r.all_le}) {
            if (c->holds_for_all) continue;
            ASSERT_TRUE(c->counterexample);
            EXPECT_TRUE(s.contains(*c->counterexample));
            const Vector mu = mul(*c->counterexample, u);
            EXPECT_NE(mu, v);
            for (std::size_t i = 0; i < n; ++i) {
                if (c == &r.all_ge) EXPECT_LE(mu[i], v[i]);
                else EXPECT_GE(mu[i], v[i]);
            }
        }
    }
}

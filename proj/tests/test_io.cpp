#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace entgame;
using entgame::testing::Rng;

namespace {

io::json load(const std::string& name) {
    const std::string path = std::string(ENTGAME_DATA_DIR) + "/" + name;
    return io::parse_json(io::read_file(path), path);
}

template <class T, class F>
T round_trip(const T& x, F from) {
    return from(io::parse_json(io::to_json(x).dump(), "round-trip"));
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::internal;
}

}  // namespace

TEST(Io, Rationals) {
    EXPECT_EQ(io::rational_from_json(io::json("7/3")), Rational(7, 3));
    EXPECT_EQ(io::rational_from_json(io::json(5)), Rational(5));
    EXPECT_EQ(io::rational_from_json(io::json(0.25)), Rational(1, 4));
    EXPECT_EQ(io::to_json(Rational(-6, 4)), io::json("-3/2"));
    EXPECT_THROW(io::rational_from_json(io::json("3/0")), Error);
    EXPECT_THROW(io::rational_from_json(io::json("x")), Error);
    EXPECT_THROW(io::rational_from_json(io::json::array()), Error);
}

TEST(Io, MatricesAndSets) {
    const Matrix m{{1, Rational(1, 3)}, {0, 2}};
    EXPECT_EQ(round_trip(m, io::matrix_from_json), m);
    EXPECT_THROW(io::matrix_from_json(io::json::parse(R"([[1,2],[3]])")), Error);
    EXPECT_THROW(io::matrix_from_json(io::json::array()), Error);

    const IruSet a = io::iru_set_from_json(load("running_adam.json"));
    EXPECT_EQ(a.n_rows(), 3U);
    EXPECT_EQ(a.family_size(), 2U);
    EXPECT_EQ(round_trip(a, io::iru_set_from_json), a);

    const auto pair = io::matrix_pair_from_json(load("running_pair.json"));
    EXPECT_EQ(round_trip(pair, io::matrix_pair_from_json), pair);
    EXPECT_EQ(pair.adam, a);
}

TEST(Io, RejectsFlaggedNegativeSets) {
    auto j = load("running_adam.json");
    j["nonnegative"] = false;
    EXPECT_EQ(kind_of([&] { io::iru_set_from_json(j); }), ErrorKind::precondition_violated);
    j = load("running_adam.json");
    j["row_sets"][0][0][0] = "-1";
    EXPECT_THROW(io::iru_set_from_json(j), Error);
    j = load("running_adam.json");
    j["rows"] = 2;
    EXPECT_EQ(kind_of([&] { io::iru_set_from_json(j); }), ErrorKind::parse_error);
    j = load("running_adam.json");
    j["row_sets"][1][0][0] = "1/0";
    EXPECT_THROW(io::iru_set_from_json(j), Error);
}

TEST(Io, Arenas) {
    const Arena a = io::arena_from_json(load("running_arena.json"));
    EXPECT_EQ(a.despot_states.size(), 3U);
    EXPECT_EQ(round_trip(a, io::arena_from_json), a);
    EXPECT_EQ(io::arena_from_json(load("minimal_arena.json")).transitions.size(), 2U);
    EXPECT_THROW(io::arena_from_json(load("blocking_arena.json")), Error);
    auto j = load("minimal_arena.json");
    j["transitions"][0].erase("weight");
    EXPECT_EQ(io::arena_from_json(j).transitions[0].weight, 1);
    j.erase("alphabet");
    EXPECT_EQ(kind_of([&] { io::arena_from_json(j); }), ErrorKind::parse_error);
    EXPECT_THROW(io::parse_json("{not json", "inline"), Error);
    EXPECT_THROW(io::read_file("/nonexistent/entgame.json"), Error);
}

TEST(Io, BigWeightsSurvive) {
    Arena a = io::arena_from_json(load("minimal_arena.json"));
    const BigInt big = boost::multiprecision::pow(BigInt(2), 100);
    a.transitions[0].weight = big;
    const Arena b = round_trip(a, io::arena_from_json);
    EXPECT_EQ(b.transitions[0].weight, big);
}

TEST(Io, MeanPayoffArenas) {
    const MpgArena m = io::mpg_from_json(load("mpg_cycle.json"));
    EXPECT_EQ(m.transitions.size(), 2U);
    EXPECT_EQ(round_trip(m, io::mpg_from_json), m);
}

TEST(Io, StrategiesCertificatesIntervals) {
    const PositionalStrategy s{Player::tribune, {{"t1", "a"}, {"t2", "b"}}};
    EXPECT_EQ(round_trip(s, io::strategy_from_json), s);
    EXPECT_THROW(io::strategy_from_json(io::json::parse(R"({"owner":"people","choice":{}})")), Error);

    Certificate c{CertificateKind::mm_lt, {1, Rational(1, 2)}, Matrix{{1, 0}, {0, 1}}};
    EXPECT_EQ(round_trip(c, io::certificate_from_json), c);
    c.chosen_matrix.reset();
    c.kind = CertificateKind::jssr_ge;
    EXPECT_EQ(round_trip(c, io::certificate_from_json), c);
    EXPECT_THROW(io::certificate_kind_from_string("jsr?"), Error);

    const auto pair = io::matrix_pair_from_json(load("running_pair.json"));
    const ValueInterval v = value_bisection(pair.adam, pair.eve, Rational(1, 1000));
    const ValueInterval w = round_trip(v, io::value_interval_from_json);
    EXPECT_EQ(w.lower, v.lower);
    EXPECT_EQ(w.upper, v.upper);
    EXPECT_EQ(w.lower_witness, v.lower_witness);
    EXPECT_EQ(w.upper_witness, v.upper_witness);
    EXPECT_TRUE(verify_certificate(w.upper_witness, pair.adam, &pair.eve, w.upper));
    EXPECT_TRUE(verify_certificate(w.lower_witness, pair.adam, &pair.eve, w.lower));
}

TEST(Io, EncodedGames) {
    const auto m = TwoCounterMachine::parse(io::read_file(std::string(ENTGAME_DATA_DIR) + "/machines/ping.txt"));
    for (const EncodedMmg& g : {encode_integer(m), encode_nonneg(m)}) {
        const io::json j = io::to_json(g);
        EXPECT_EQ(j["nonnegative"].get<bool>(), g.variant == EncodingVariant::nonnegative);
        EXPECT_EQ(j["convention"], "row-vector");
        EXPECT_EQ(io::encoded_mmg_from_json(j), g);
    }
    io::json bad = io::to_json(encode_nonneg(m));
    bad["dimension"] = 3;
    EXPECT_EQ(kind_of([&] { io::encoded_mmg_from_json(bad); }), ErrorKind::dimension_mismatch);
}

TEST(IoProperties, RandomSetsRoundTrip) {
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const IruSet s = entgame::testing::random_iru(rng, entgame::testing::random_dim(rng), entgame::testing::random_dim(rng));
        EXPECT_EQ(round_trip(s, io::iru_set_from_json), s);
        const Matrix m = entgame::testing::random_matrix(rng, 3, 2);
        EXPECT_EQ(round_trip(m, io::matrix_from_json), m);
    }
}

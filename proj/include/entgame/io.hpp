#pragma once

// JSON file formats. Rationals travel as "p/q" strings; plain JSON numbers
// are accepted on input.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entgame/counter_machine.hpp"
#include "entgame/decision.hpp"
#include "entgame/error.hpp"
#include "entgame/games.hpp"
#include "entgame/iru_set.hpp"
#include "entgame/matrix.hpp"
#include "entgame/rational.hpp"

namespace entgame::io {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::invalid_argument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::parse_error, what + ": " + e.what());
    }
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::parse_error, what + ": missing field '" + key + "'");
    return j.at(key);
}

inline std::vector<std::string> strings(const json& j, const std::string& what) {
    if (!j.is_array()) throw Error(ErrorKind::parse_error, what + ": expected an array of strings");
    std::vector<std::string> out;
    for (const auto& s : j) {
        if (!s.is_string()) throw Error(ErrorKind::parse_error, what + ": expected a string");
        out.push_back(s.get<std::string>());
    }
    return out;
}

inline BigInt integer(const json& j, const std::string& what) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_number_unsigned()) return BigInt(j.get<unsigned long long>());
    if (j.is_string()) {
        Rational q = parse_rational(j.get<std::string>());
        if (boost::multiprecision::denominator(q) != 1) throw Error(ErrorKind::parse_error, what + ": expected an integer");
        return boost::multiprecision::numerator(q);
    }
    throw Error(ErrorKind::parse_error, what + ": expected an integer");
}

inline json integer_json(const BigInt& n) {
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
        return n.convert_to<long long>();
    return n.str();
}

}  // namespace detail

// ---- scalars, vectors, matrices -------------------------------------------

inline json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
    if (j.is_number_float()) return parse_rational(j.dump());
    throw Error(ErrorKind::parse_error, "expected a rational, got " + j.dump());
}

inline json to_json(const Vector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Vector vector_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorKind::parse_error, "expected an array of rationals");
    Vector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline json to_json(const Matrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row_vector(i)));
    return a;
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::parse_error, "expected a non-empty array of rows");
    std::vector<Vector> rows;
    for (const auto& r : j) rows.push_back(vector_from_json(r));
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw Error(ErrorKind::parse_error, "matrix rows differ in length");
    return Matrix::from_rows(rows);
}

// ---- matrix sets ----------------------------------------------------------

inline json to_json(const IruSet& s) {
    json sets = json::array();
    bool nonneg = true;
    for (const auto& rs : s.row_sets()) {
        json rows = json::array();
        for (const auto& r : rs.rows()) rows.push_back(to_json(r));
        sets.push_back(rows);
    }
    for (const auto& rs : s.row_sets())
        for (const auto& r : rs.rows())
            for (const auto& x : r) nonneg = nonneg && x >= 0;
    return json{{"rows", s.n_rows()}, {"cols", s.n_cols()}, {"row_sets", sets}, {"nonnegative", nonneg}};
}

inline IruSet iru_set_from_json(const json& j) {
    const std::string what = "matrix set";
    const auto n = detail::field(j, "rows", what).get<std::size_t>();
    const auto m = detail::field(j, "cols", what).get<std::size_t>();
    const json& sets = detail::field(j, "row_sets", what);
    if (j.contains("nonnegative") && j.at("nonnegative") == false)
        throw Error(ErrorKind::precondition_violated, what + ": flagged as containing negative entries");
    if (!sets.is_array() || sets.size() != n)
        throw Error(ErrorKind::parse_error, what + ": expected " + std::to_string(n) + " row sets");
    std::vector<RowSet> rs;
    for (const auto& s : sets) {
        if (!s.is_array()) throw Error(ErrorKind::parse_error, what + ": a row set must be an array of rows");
        std::vector<Vector> rows;
        for (const auto& r : s) rows.push_back(vector_from_json(r));
        rs.emplace_back(m, rows);
    }
    return IruSet(m, std::move(rs));
}

struct MatrixPair {
    IruSet adam;
    IruSet eve;
    bool operator==(const MatrixPair&) const = default;
};

inline json to_json(const MatrixPair& p) { return json{{"adam", to_json(p.adam)}, {"eve", to_json(p.eve)}}; }

inline MatrixPair matrix_pair_from_json(const json& j) {
    return {iru_set_from_json(detail::field(j, "adam", "matrix pair")), iru_set_from_json(detail::field(j, "eve", "matrix pair"))};
}

// ---- arenas ---------------------------------------------------------------

inline json to_json(const Arena& a) {
    json ts = json::array();
    for (const auto& t : a.transitions)
        ts.push_back(json{{"from", t.from}, {"action", t.action}, {"to", t.to}, {"weight", detail::integer_json(t.weight)}});
    return json{{"despot_states", a.despot_states}, {"tribune_states", a.tribune_states}, {"alphabet", a.alphabet}, {"transitions", ts}};
}

inline Arena arena_from_json(const json& j) {
    const std::string what = "arena";
    Arena a;
    a.despot_states = detail::strings(detail::field(j, "despot_states", what), what);
    a.tribune_states = detail::strings(detail::field(j, "tribune_states", what), what);
    a.alphabet = detail::strings(detail::field(j, "alphabet", what), what);
    const json& ts = detail::field(j, "transitions", what);
    if (!ts.is_array()) throw Error(ErrorKind::parse_error, what + ": transitions must be an array");
    for (const auto& t : ts) {
        Transition tr{detail::field(t, "from", what).get<std::string>(), detail::field(t, "action", what).get<std::string>(),
                      detail::field(t, "to", what).get<std::string>(), 1};
        if (t.contains("weight")) tr.weight = detail::integer(t.at("weight"), what);
        a.transitions.push_back(std::move(tr));
    }
    a.validate();
    return a;
}

inline json to_json(const MpgArena& m) {
    json ts = json::array();
    for (const auto& e : m.transitions) ts.push_back(json{{"from", e.from}, {"to", e.to}, {"weight", detail::integer_json(e.weight)}});
    return json{{"despot_states", m.despot_states}, {"tribune_states", m.tribune_states}, {"transitions", ts}};
}

inline MpgArena mpg_from_json(const json& j) {
    const std::string what = "mean-payoff arena";
    MpgArena m;
    m.despot_states = detail::strings(detail::field(j, "despot_states", what), what);
    m.tribune_states = detail::strings(detail::field(j, "tribune_states", what), what);
    const json& ts = detail::field(j, "transitions", what);
    if (!ts.is_array()) throw Error(ErrorKind::parse_error, what + ": transitions must be an array");
    for (const auto& t : ts)
        m.transitions.push_back({detail::field(t, "from", what).get<std::string>(), detail::field(t, "to", what).get<std::string>(),
                                 t.contains("weight") ? detail::integer(t.at("weight"), what) : BigInt(0)});
    return m;
}

inline json to_json(const PositionalStrategy& s) {
    json c = json::object();
    for (const auto& [state, action] : s.choice) c[state] = action;
    return json{{"owner", to_string(s.owner)}, {"choice", c}};
}

inline PositionalStrategy strategy_from_json(const json& j) {
    const std::string owner = detail::field(j, "owner", "strategy").get<std::string>();
    if (owner != "despot" && owner != "tribune") throw Error(ErrorKind::parse_error, "strategy: unknown owner '" + owner + "'");
    PositionalStrategy s{owner == "despot" ? Player::despot : Player::tribune, {}};
    for (const auto& [state, action] : detail::field(j, "choice", "strategy").items()) s.choice[state] = action.get<std::string>();
    return s;
}

// ---- certificates and intervals -------------------------------------------

inline CertificateKind certificate_kind_from_string(const std::string& s) {
    for (auto k : {CertificateKind::jsr_lt, CertificateKind::jsr_le, CertificateKind::jssr_gt, CertificateKind::jssr_ge,
                   CertificateKind::mm_lt, CertificateKind::mm_ge})
        if (s == to_string(k)) return k;
    throw Error(ErrorKind::parse_error, "unknown certificate kind '" + s + "'");
}

inline json to_json(const Certificate& c) {
    json j{{"kind", to_string(c.kind)}, {"vector", to_json(c.vector)}};
    if (c.chosen_matrix) j["chosen_matrix"] = to_json(*c.chosen_matrix);
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.kind = certificate_kind_from_string(detail::field(j, "kind", "certificate").get<std::string>());
    c.vector = vector_from_json(detail::field(j, "vector", "certificate"));
    if (j.contains("chosen_matrix")) c.chosen_matrix = matrix_from_json(j.at("chosen_matrix"));
    return c;
}

inline json to_json(const ValueInterval& v) {
    return json{{"lower", to_json(v.lower)},
                {"upper", to_json(v.upper)},
                {"lower_float", to_double(v.lower)},
                {"upper_float", to_double(v.upper)},
                {"lower_witness", to_json(v.lower_witness)},
                {"upper_witness", to_json(v.upper_witness)}};
}

inline ValueInterval value_interval_from_json(const json& j) {
    return {rational_from_json(detail::field(j, "lower", "interval")), rational_from_json(detail::field(j, "upper", "interval")),
            certificate_from_json(detail::field(j, "lower_witness", "interval")),
            certificate_from_json(detail::field(j, "upper_witness", "interval"))};
}

// ---- encoded games ----------------------------------------------------------

inline json to_json(const EncodedMmg& g) {
    auto named = [](const std::vector<NamedMatrix>& v) {
        json a = json::array();
        for (const auto& m : v) a.push_back(json{{"name", m.name}, {"matrix", to_json(m.matrix)}});
        return a;
    };
    bool nonneg = true;
    for (const auto* side : {&g.adam, &g.eve})
        for (const auto& m : *side) nonneg = nonneg && is_nonnegative(m.matrix);
    return json{{"variant", to_string(g.variant)},
                {"dimension", g.dimension},
                {"coordinate_labels", g.coordinate_labels},
                {"convention", "row-vector"},
                {"nonnegative", nonneg},
                {"adam", named(g.adam)},
                {"eve", named(g.eve)},
                {"warnings", g.warnings}};
}

inline EncodedMmg encoded_mmg_from_json(const json& j) {
    const std::string what = "encoded game";
    EncodedMmg g;
    const std::string variant = detail::field(j, "variant", what).get<std::string>();
    if (variant == "integer") g.variant = EncodingVariant::integer;
    else if (variant == "nonnegative") g.variant = EncodingVariant::nonnegative;
    else throw Error(ErrorKind::parse_error, what + ": unknown variant '" + variant + "'");
    g.dimension = detail::field(j, "dimension", what).get<std::size_t>();
    g.coordinate_labels = detail::strings(detail::field(j, "coordinate_labels", what), what);
    auto named = [&](const json& a) {
        std::vector<NamedMatrix> out;
        for (const auto& m : a) {
            NamedMatrix nm{detail::field(m, "name", what).get<std::string>(), matrix_from_json(detail::field(m, "matrix", what))};
            if (nm.matrix.rows() != g.dimension || nm.matrix.cols() != g.dimension)
                throw Error(ErrorKind::dimension_mismatch, what + ": matrix " + nm.name + " has the wrong size");
            out.push_back(std::move(nm));
        }
        return out;
    };
    g.adam = named(detail::field(j, "adam", what));
    g.eve = named(detail::field(j, "eve", what));
    if (j.contains("warnings")) g.warnings = detail::strings(j.at("warnings"), what);
    return g;
}

}  // namespace entgame::io

#pragma once

// Two-counter Minsky machines and their matrix-game encodings.
//
// Both encodings act on row vectors: v' = v·M. Integer variant coordinates
// are q_0..q_{|Q|-1}, x, y, One, E, Neg; non-negative variant coordinates
// are q_0..q_{|Q|-1}, x+, x-, y+, y-.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entgame/error.hpp"
#include "entgame/matrix.hpp"
#include "entgame/rational.hpp"

namespace entgame {

enum class Counter { x, y };

inline const char* to_string(Counter c) { return c == Counter::x ? "x" : "y"; }

struct Inc {
    Counter counter;
    std::string next;
    bool operator==(const Inc&) const = default;
};
struct JzDec {
    Counter counter;
    std::string if_zero;
    std::string otherwise;
    bool operator==(const JzDec&) const = default;
};
struct Stop {
    bool operator==(const Stop&) const = default;
};
using Instruction = std::variant<Inc, JzDec, Stop>;

struct MachineConfig {
    std::size_t state = 0;
    BigInt x = 0;
    BigInt y = 0;
    bool operator==(const MachineConfig&) const = default;
    [[nodiscard]] const BigInt& counter(Counter c) const { return c == Counter::x ? x : y; }
    BigInt& counter(Counter c) { return c == Counter::x ? x : y; }
};

/// One machine transition; Inc gives one, JzDec two (zero branch first).
struct MachineTransition {
    enum class Kind { increment, keep, decrement } kind;
    std::size_t from;
    std::size_t to;
    Counter counter;
    bool operator==(const MachineTransition&) const = default;
};

class TwoCounterMachine {
public:
    TwoCounterMachine(std::vector<std::string> states, std::vector<Instruction> program)
        : states_(std::move(states)), program_(std::move(program)) {
        if (states_.empty()) throw Error(ErrorKind::invalid_argument, "machine: no states");
        if (states_.size() != program_.size()) throw Error(ErrorKind::invalid_argument, "machine: one instruction per state");
        for (std::size_t i = 0; i < states_.size(); ++i)
            for (std::size_t j = i + 1; j < states_.size(); ++j)
                if (states_[i] == states_[j]) throw Error(ErrorKind::invalid_argument, "machine: state '" + states_[i] + "' defined twice");
        for (std::size_t i = 0; i < program_.size(); ++i) {
            auto check = [&](const std::string& s) {
                if (!index_of(s))
                    throw Error(ErrorKind::invalid_argument, "machine: state '" + states_[i] + "' jumps to undefined '" + s + "'");
            };
            if (auto* inc = std::get_if<Inc>(&program_[i])) {
                check(inc->next);
                transitions_.push_back({MachineTransition::Kind::increment, i, *index_of(inc->next), inc->counter});
            } else if (auto* jz = std::get_if<JzDec>(&program_[i])) {
                check(jz->if_zero);
                check(jz->otherwise);
                transitions_.push_back({MachineTransition::Kind::keep, i, *index_of(jz->if_zero), jz->counter});
                transitions_.push_back({MachineTransition::Kind::decrement, i, *index_of(jz->otherwise), jz->counter});
            }
        }
    }

    /// Line format: "q0: inc x -> q1", "q1: ifz y -> q2 else dec -> q3",
    /// "q2: stop". '#' starts a comment; the first state is initial.
    static TwoCounterMachine parse(std::string_view text) {
        std::vector<std::string> states;
        std::vector<Instruction> program;
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream words(line);
            std::vector<std::string> w;
            for (std::string s; words >> s;) w.push_back(s);
            if (w.empty()) continue;
            auto fail = [&](const std::string& why) {
                return Error(ErrorKind::parse_error, "machine line " + std::to_string(line_no) + ": " + why);
            };
            std::string head = w[0];
            if (head.size() > 1 && head.back() == ':') {
                head.pop_back();
            } else if (w.size() > 1 && w[1] == ":") {
                w.erase(w.begin() + 1);
            } else {
                throw fail("expected '<state>:'");
            }
            auto counter = [&](const std::string& c) {
                if (c == "x") return Counter::x;
                if (c == "y") return Counter::y;
                throw fail("unknown counter '" + c + "'");
            };
            states.push_back(head);
            if (w.size() == 2 && w[1] == "stop") {
                program.emplace_back(Stop{});
            } else if (w.size() == 5 && w[1] == "inc" && w[3] == "->") {
                program.emplace_back(Inc{counter(w[2]), w[4]});
            } else if (w.size() == 9 && w[1] == "ifz" && w[3] == "->" && w[5] == "else" && w[6] == "dec" && w[7] == "->") {
                program.emplace_back(JzDec{counter(w[2]), w[4], w[8]});
            } else {
                throw fail("cannot parse instruction '" + line + "'");
            }
        }
        return TwoCounterMachine(std::move(states), std::move(program));
    }

    [[nodiscard]] std::string to_text() const {
        std::string out;
        for (std::size_t i = 0; i < states_.size(); ++i) {
            out += states_[i] + ": ";
            if (auto* inc = std::get_if<Inc>(&program_[i]))
                out += std::string("inc ") + to_string(inc->counter) + " -> " + inc->next;
            else if (auto* jz = std::get_if<JzDec>(&program_[i]))
                out += std::string("ifz ") + to_string(jz->counter) + " -> " + jz->if_zero + " else dec -> " + jz->otherwise;
            else
                out += "stop";
            out += "\n";
        }
        return out;
    }

    [[nodiscard]] const std::vector<std::string>& states() const noexcept { return states_; }
    [[nodiscard]] const std::vector<Instruction>& program() const noexcept { return program_; }
    [[nodiscard]] const std::vector<MachineTransition>& transitions() const noexcept { return transitions_; }
    [[nodiscard]] std::optional<std::size_t> index_of(const std::string& s) const {
        auto it = std::find(states_.begin(), states_.end(), s);
        if (it == states_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - states_.begin());
    }

    /// Index into transitions() of the move taken from c; nullopt at stop.
    [[nodiscard]] std::optional<std::size_t> transition_from(const MachineConfig& c) const {
        for (std::size_t k = 0; k < transitions_.size(); ++k) {
            const auto& t = transitions_[k];
            if (t.from != c.state) continue;
            switch (t.kind) {
                case MachineTransition::Kind::increment: return k;
                case MachineTransition::Kind::keep:
                    if (c.counter(t.counter) == 0) return k;
                    break;
                case MachineTransition::Kind::decrement:
                    if (c.counter(t.counter) != 0) return k;
                    break;
            }
        }
        return std::nullopt;
    }

    /// Applies transition k blindly (counters may go negative).
    [[nodiscard]] MachineConfig apply(const MachineConfig& c, std::size_t k) const {
        const auto& t = transitions_.at(k);
        MachineConfig n = c;
        n.state = t.to;
        if (t.kind == MachineTransition::Kind::increment) n.counter(t.counter) += 1;
        if (t.kind == MachineTransition::Kind::decrement) n.counter(t.counter) -= 1;
        return n;
    }

    /// Steps until stop, at most max_steps; number of transitions taken if
    /// the machine halted.
    [[nodiscard]] std::optional<std::size_t> halting_time(std::size_t max_steps) const {
        MachineConfig c;
        for (std::size_t n = 0; n <= max_steps; ++n) {
            auto k = transition_from(c);
            if (!k) return n;
            c = apply(c, *k);
        }
        return std::nullopt;
    }

    bool operator==(const TwoCounterMachine& o) const { return states_ == o.states_ && program_ == o.program_; }

private:
    std::vector<std::string> states_;
    std::vector<Instruction> program_;
    std::vector<MachineTransition> transitions_;
};

enum class EncodingVariant { integer, nonnegative };

inline const char* to_string(EncodingVariant v) { return v == EncodingVariant::integer ? "integer" : "nonnegative"; }

struct NamedMatrix {
    std::string name;
    Matrix matrix;
    bool operator==(const NamedMatrix&) const = default;
};

struct EncodedMmg {
    EncodingVariant variant = EncodingVariant::integer;
    std::size_t dimension = 0;
    std::vector<std::string> coordinate_labels;
    std::vector<NamedMatrix> adam;
    std::vector<NamedMatrix> eve;
    std::vector<std::string> warnings;

    bool operator==(const EncodedMmg&) const = default;

    [[nodiscard]] std::size_t coordinate(const std::string& label) const {
        auto it = std::find(coordinate_labels.begin(), coordinate_labels.end(), label);
        if (it == coordinate_labels.end()) throw Error(ErrorKind::invalid_argument, "no coordinate '" + label + "'");
        return static_cast<std::size_t>(it - coordinate_labels.begin());
    }
    [[nodiscard]] const Matrix& adam_matrix(const std::string& name) const { return lookup(adam, name); }
    [[nodiscard]] const Matrix& eve_matrix(const std::string& name) const { return lookup(eve, name); }

private:
    static const Matrix& lookup(const std::vector<NamedMatrix>& v, const std::string& name) {
        for (const auto& m : v)
            if (m.name == name) return m.matrix;
        throw Error(ErrorKind::invalid_argument, "no matrix named '" + name + "'");
    }
};

namespace detail {

/// z := sum_k coeffs[k] v_k as a row-vector matrix: identity with column z
/// replaced.
inline Matrix assignment(std::size_t dim, std::size_t target, const std::vector<std::pair<std::size_t, Rational>>& coeffs) {
    Matrix m = Matrix::identity(dim);
    for (std::size_t k = 0; k < dim; ++k) m(k, target) = 0;
    for (const auto& [k, c] : coeffs) m(k, target) += c;
    return m;
}

/// Sequential composition of assignments, first applied first.
inline Matrix sequence(std::size_t dim, const std::vector<Matrix>& steps) {
    Matrix m = Matrix::identity(dim);
    for (const auto& s : steps) m = mat_mul(m, s);
    return m;
}

inline std::string transition_name(const TwoCounterMachine& m, const MachineTransition& t) {
    const char* kind = t.kind == MachineTransition::Kind::increment ? "I" : t.kind == MachineTransition::Kind::keep ? "K" : "D";
    return std::string(kind) + "_" + m.states()[t.from] + "_" + m.states()[t.to] + "_" + to_string(t.counter);
}

}  // namespace detail

inline EncodedMmg encode_integer(const TwoCounterMachine& m) {
    const std::size_t nq = m.states().size();
    EncodedMmg g;
    g.variant = EncodingVariant::integer;
    g.dimension = nq + 5;
    g.coordinate_labels = m.states();
    for (const char* l : {"x", "y", "One", "E", "Neg"}) g.coordinate_labels.emplace_back(l);
    const std::size_t x = nq, y = nq + 1, one = nq + 2, e = nq + 3, neg = nq + 4, dim = g.dimension;
    auto counter = [&](Counter c) { return c == Counter::x ? x : y; };
    using detail::assignment;

    for (const auto& t : m.transitions()) {
        const std::size_t c = counter(t.counter);
        std::vector<Matrix> steps{assignment(dim, t.from, {{t.from, 1}, {one, -1}}), assignment(dim, t.to, {{t.to, 1}, {one, 1}})};
        switch (t.kind) {
            case MachineTransition::Kind::increment: steps.push_back(assignment(dim, c, {{c, 1}, {one, 1}})); break;
            case MachineTransition::Kind::keep: steps.push_back(assignment(dim, c, {{c, -1}})); break;
            case MachineTransition::Kind::decrement: steps.push_back(assignment(dim, c, {{c, 1}, {one, -1}})); break;
        }
        g.eve.push_back({detail::transition_name(m, t), detail::sequence(dim, steps)});
    }

    std::vector<Matrix> init{assignment(dim, 0, {{e, 1}})};
    for (std::size_t q = 1; q < nq; ++q) init.push_back(assignment(dim, q, {}));
    init.push_back(assignment(dim, x, {}));
    init.push_back(assignment(dim, y, {}));
    init.push_back(assignment(dim, one, {{e, 1}}));
    init.push_back(assignment(dim, neg, {}));
    g.adam.push_back({"Init", detail::sequence(dim, init)});
    g.adam.push_back({"Id", Matrix::identity(dim)});
    for (std::size_t c = 0; c < nq + 2; ++c) g.adam.push_back({"F_" + g.coordinate_labels[c], assignment(dim, neg, {{c, 1}})});
    g.adam.push_back({"A", assignment(dim, neg, {{neg, 1}, {one, 1}})});
    g.adam.push_back({"P", assignment(dim, e, {{e, 1}, {neg, 1}})});
    if (g.eve.empty()) g.warnings.push_back("machine has no transitions; Eve's set is empty");
    return g;
}

inline EncodedMmg encode_nonneg(const TwoCounterMachine& m) {
    const std::size_t nq = m.states().size();
    EncodedMmg g;
    g.variant = EncodingVariant::nonnegative;
    g.dimension = nq + 4;
    g.coordinate_labels = m.states();
    for (const char* l : {"x+", "x-", "y+", "y-"}) g.coordinate_labels.emplace_back(l);
    const std::size_t dim = g.dimension;
    auto plus = [&](Counter c) { return c == Counter::x ? nq : nq + 2; };

    for (const auto& t : m.transitions()) {
        // q' := 2q, every other state coordinate cleared; the untouched
        // counter doubles.
        Matrix a(dim, dim);
        a(t.from, t.to) = 2;
        const std::size_t p = plus(t.counter), n = p + 1;
        const std::size_t op = plus(t.counter == Counter::x ? Counter::y : Counter::x), on = op + 1;
        a(op, op) = 2;
        a(on, on) = 2;
        switch (t.kind) {
            case MachineTransition::Kind::increment:
                a(p, p) = 4;
                a(n, n) = 1;
                break;
            case MachineTransition::Kind::keep:
                a(n, p) = 2;
                a(p, n) = 2;
                break;
            case MachineTransition::Kind::decrement:
                a(p, p) = 1;
                a(n, n) = 4;
                break;
        }
        g.eve.push_back({detail::transition_name(m, t), std::move(a)});
    }

    g.adam.push_back({"Id", Matrix::identity(dim)});
    for (Counter c : {Counter::x, Counter::y}) {
        Matrix r(dim, dim);
        const std::size_t src = plus(c);
        r(src, 0) = 1;
        for (std::size_t k = nq; k < dim; ++k) r(src, k) = 1;
        g.adam.push_back({std::string("P_") + to_string(c), std::move(r)});
    }
    Matrix pq(dim, dim);
    for (std::size_t q = 0; q < nq; ++q) {
        pq(q, 0) = 1;
        for (std::size_t k = nq; k < dim; ++k) pq(q, k) = 1;
    }
    g.adam.push_back({"P_q", std::move(pq)});
    for (const auto& nm : g.adam)
        if (!is_nonnegative(nm.matrix)) throw Error(ErrorKind::internal, "encode_nonneg: negative entry in " + nm.name);
    if (g.eve.empty()) g.warnings.push_back("machine has no transitions; Eve's set is empty");
    return g;
}

// ---- scripted plays, integer variant -------------------------------------

struct ScriptedTurn {
    std::size_t turn = 0;
    std::string adam;
    std::string eve;
    bool eve_cheated = false;
    Vector vector;  ///< after both moves
};

struct ScriptedPlayReport {
    std::vector<ScriptedTurn> turns;
    /// Coordinates >= 0 and E >= 1 at every turn before the first cheat.
    bool invariant_held = true;
    std::optional<std::size_t> first_cheat;
    std::optional<std::size_t> halting_time;
    /// Turn of the Init that zeroed the running product.
    std::optional<std::size_t> annihilated_at;
    bool product_zero = false;
    /// ||product||^(1/n) at the last turn, entrywise 1-norm.
    double norm_root = 0.0;
    Rational max_abs_coordinate = 0;
};

struct ScriptOptions {
    std::size_t max_turns = 100;
    /// Eve plays a wrong transition at this turn (from the same state when
    /// one exists).
    std::optional<std::size_t> cheat_at;
    bool stop_when_annihilated = true;
};

inline Vector integer_start_vector(const EncodedMmg& g) {
    Vector v(g.dimension, Rational(0));
    v[0] = 1;
    v[g.coordinate("E")] = 1;
    v[g.coordinate("One")] = 1;
    return v;
}

/// Adam: Init, then Id until a negative state/counter coordinate appears,
/// then F_c, A until Neg = -1, P, Init. Eve: the (i-t+1)-th transition of
/// the execution after Adam's last Init at turn t, cheating when the
/// machine has halted or at opt.cheat_at.
inline ScriptedPlayReport run_scripted_play(const EncodedMmg& g, const TwoCounterMachine& m, const ScriptOptions& opt = {}) {
    if (g.variant != EncodingVariant::integer) throw Error(ErrorKind::invalid_argument, "run_scripted_play: needs the integer encoding");
    if (g.dimension != m.states().size() + 5) throw Error(ErrorKind::dimension_mismatch, "run_scripted_play: encoding does not match machine");
    if (g.eve.empty()) throw Error(ErrorKind::invalid_argument, "run_scripted_play: Eve has no matrices");
    ScriptedPlayReport rep;
    rep.halting_time = m.halting_time(opt.max_turns);
    const std::size_t nq = m.states().size();
    const std::size_t neg = g.coordinate("Neg"), e_coord = g.coordinate("E");

    Vector v = integer_start_vector(g);
    Matrix product = Matrix::identity(g.dimension);
    MachineConfig eve_config;  // Eve's copy of the run since the last Init
    enum class Phase { simulate, adjust, reset } phase = Phase::simulate;
    std::optional<std::size_t> flash_coord;
    bool cheated_yet = false;

    for (std::size_t turn = 1; turn <= opt.max_turns; ++turn) {
        ScriptedTurn st;
        st.turn = turn;
        // Adam.
        if (turn == 1 || phase == Phase::reset) {
            st.adam = "Init";
        } else if (phase == Phase::simulate) {
            st.adam = "Id";
            for (std::size_t c = 0; c < nq + 2; ++c)
                if (v[c] < 0) {
                    flash_coord = c;
                    break;
                }
            if (flash_coord) {
                st.adam = "F_" + g.coordinate_labels[*flash_coord];
                phase = Phase::adjust;
            }
        } else if (phase == Phase::adjust) {
            st.adam = v[neg] == -1 ? "P" : "A";
            if (v[neg] == -1) phase = Phase::reset;
        }
        const Matrix& am = g.adam_matrix(st.adam);
        v = mul(v, am);
        product = mat_mul(product, am);
        if (st.adam == "Init") {
            if (turn > 1 && phase == Phase::reset && !rep.annihilated_at && is_zero(product)) rep.annihilated_at = turn;
            phase = Phase::simulate;
            flash_coord.reset();
            eve_config = MachineConfig{};
        }

        // Eve.
        auto faithful = m.transition_from(eve_config);
        std::size_t k = 0;
        const bool deliberate = opt.cheat_at && *opt.cheat_at == turn;
        if (faithful && !deliberate) {
            k = *faithful;
        } else {
            st.eve_cheated = true;
            std::optional<std::size_t> alt;
            for (std::size_t j = 0; j < m.transitions().size() && !alt; ++j)
                if (m.transitions()[j].from == eve_config.state && (!faithful || j != *faithful)) alt = j;
            for (std::size_t j = 0; j < m.transitions().size() && !alt; ++j)
                if (!faithful || j != *faithful) alt = j;
            k = alt.value_or(0);
        }
        st.eve = g.eve[k].name;
        eve_config = m.apply(eve_config, k);
        v = mul(v, g.eve[k].matrix);
        product = mat_mul(product, g.eve[k].matrix);
        if (st.eve_cheated && !cheated_yet) {
            cheated_yet = true;
            rep.first_cheat = turn;
        }
        if (!cheated_yet) {
            const bool ok = std::all_of(v.begin(), v.end(), [](const Rational& z) { return z >= 0; }) && v[e_coord] >= 1;
            rep.invariant_held = rep.invariant_held && ok;
        }
        for (const auto& z : v) rep.max_abs_coordinate = std::max(rep.max_abs_coordinate, Rational(abs(z)));
        st.vector = v;
        rep.turns.push_back(std::move(st));
        const Rational n = one_norm(product);
        rep.norm_root = n == 0 ? 0.0 : std::pow(to_double(n), 1.0 / static_cast<double>(turn));
        if (rep.annihilated_at && opt.stop_when_annihilated) break;
    }
    rep.product_zero = is_zero(product);
    return rep;
}

// ---- non-negative variant ------------------------------------------------

struct PunishmentFactor {
    std::size_t start_turn = 0;
    std::size_t length = 0;
    std::string reset;  ///< P_x, P_y or P_q
    Rational ratio;     ///< new scale / old scale
    bool within_bound = false;  ///< ratio <= 2^(length-1)
    [[nodiscard]] double rate() const {
        return ratio == 0 ? 0.0 : std::pow(to_double(ratio), 1.0 / static_cast<double>(length));
    }
};

struct NonnegReport {
    bool machine_halts = false;
    /// Non-halting: max coordinate / 2^n after each step n.
    std::vector<Rational> magnitude;
    bool magnitude_ok = true;
    /// Halting: factors between consecutive resets.
    std::vector<PunishmentFactor> factors;
    bool factors_ok = true;
    double max_factor_rate = 0.0;
};

inline Vector nonneg_start_vector(const EncodedMmg& g) {
    Vector v(g.dimension, Rational(0));
    v[0] = 1;
    for (std::size_t k = g.dimension - 4; k < g.dimension; ++k) v[k] = 1;
    return v;
}

/// Non-halting machine: faithful Eve, Adam plays Id, check some coordinate
/// >= 2^n. Halting machine: Eve avoids stop by lying on a zero test when
/// she can and on the state otherwise; Adam answers every lie with P_c or
/// P_q on the next turn and each factor is checked against 2^(f-1).
inline NonnegReport check_nonneg_punishment(const EncodedMmg& g, const TwoCounterMachine& m, std::size_t horizon) {
    if (g.variant != EncodingVariant::nonnegative) throw Error(ErrorKind::invalid_argument, "check_nonneg_punishment: needs the non-negative encoding");
    if (g.dimension != m.states().size() + 4) throw Error(ErrorKind::dimension_mismatch, "check_nonneg_punishment: encoding does not match machine");
    NonnegReport rep;
    rep.machine_halts = m.halting_time(horizon).has_value();
    Vector v = nonneg_start_vector(g);
    MachineConfig config;
    auto max_coord = [&] { return *std::max_element(v.begin(), v.end()); };

    if (!rep.machine_halts) {
        Rational scale = 1;
        for (std::size_t n = 1; n <= horizon; ++n) {
            const std::size_t k = *m.transition_from(config);
            config = m.apply(config, k);
            v = mul(v, g.eve[k].matrix);
            scale *= 2;
            rep.magnitude.push_back(max_coord() / scale);
            rep.magnitude_ok = rep.magnitude_ok && rep.magnitude.back() >= 1;
        }
        return rep;
    }
    if (g.eve.empty()) return rep;

    Rational scale = 1;
    std::size_t factor_start = 1;
    std::optional<std::string> pending;
    for (std::size_t turn = 1; turn <= horizon; ++turn) {
        std::string adam = "Id";
        if (pending) {
            adam = *pending;
            pending.reset();
        }
        v = mul(v, g.adam_matrix(adam));
        if (adam != "Id") {
            const Rational new_scale = v[0];
            PunishmentFactor f;
            f.start_turn = factor_start;
            f.length = turn - factor_start;
            f.reset = adam;
            f.ratio = new_scale / scale;
            f.within_bound = f.ratio <= pow2(static_cast<long>(f.length) - 1);
            rep.factors_ok = rep.factors_ok && f.within_bound;
            rep.max_factor_rate = std::max(rep.max_factor_rate, f.rate());
            rep.factors.push_back(f);
            if (new_scale == 0) break;
            scale = new_scale;
            factor_start = turn;
            config = MachineConfig{};
        }

        const auto faithful = m.transition_from(config);
        std::optional<std::size_t> k;
        if (faithful) {
            k = faithful;
            const auto& t = m.transitions()[*faithful];
            if (std::holds_alternative<Stop>(m.program()[t.to]))
                for (std::size_t j = 0; j < m.transitions().size(); ++j)
                    if (j != *faithful && m.transitions()[j].from == config.state) k = j;
        }
        if (!k) {
            for (std::size_t j = 0; j < m.transitions().size() && !k; ++j)
                if (m.transitions()[j].from != config.state) k = j;
            if (!k) k = 0;
            pending = "P_q";
        } else if (k != faithful) {
            pending = std::string("P_") + to_string(m.transitions()[*k].counter);
        }
        v = mul(v, g.eve[*k].matrix);
        config = m.apply(config, *k);
    }
    return rep;
}

}  // namespace entgame

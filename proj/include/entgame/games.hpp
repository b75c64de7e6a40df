#pragma once

// Entropy games on arenas, their matrix-game translation, saddle-point
// solving, forest counting and growth simulation, and the mean-payoff
// reduction.
//
// Conventions: Despot owns D and picks rows of A (|D| x |T|), Tribune owns
// T and picks rows of E (|T| x |D|). Counts are row vectors, x' = x·A·E.
// One payoff unit is one full turn, i.e. one A·E factor (four symbols).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "entgame/decision.hpp"
#include "entgame/error.hpp"
#include "entgame/iru_set.hpp"
#include "entgame/matrix.hpp"
#include "entgame/rational.hpp"
#include "entgame/spectral.hpp"

namespace entgame {

struct Transition {
    std::string from;
    std::string action;
    std::string to;
    BigInt weight = 1;

    bool operator==(const Transition&) const = default;
};

enum class Player { despot, tribune };

inline const char* to_string(Player p) { return p == Player::despot ? "despot" : "tribune"; }

struct Arena {
    std::vector<std::string> despot_states;
    std::vector<std::string> tribune_states;
    std::vector<std::string> alphabet;
    std::vector<Transition> transitions;

    bool operator==(const Arena&) const = default;

    [[nodiscard]] std::optional<std::size_t> despot_index(const std::string& s) const { return find(despot_states, s); }
    [[nodiscard]] std::optional<std::size_t> tribune_index(const std::string& s) const { return find(tribune_states, s); }

    [[nodiscard]] const std::vector<std::string>& states_of(Player p) const {
        return p == Player::despot ? despot_states : tribune_states;
    }

    /// Actions with at least one transition out of `state`, alphabet order.
    [[nodiscard]] std::vector<std::string> enabled_actions(const std::string& state) const {
        std::vector<std::string> out;
        for (const auto& a : alphabet)
            if (std::any_of(transitions.begin(), transitions.end(),
                            [&](const Transition& t) { return t.from == state && t.action == a; }))
                out.push_back(a);
        return out;
    }

    /// Throws unless states are disjoint, transitions alternate, weights are
    /// positive and no state is blocking.
    void validate() const {
        auto dup = [](std::vector<std::string> v) {
            std::sort(v.begin(), v.end());
            auto it = std::adjacent_find(v.begin(), v.end());
            return it == v.end() ? std::optional<std::string>{} : *it;
        };
        std::vector<std::string> all = despot_states;
        all.insert(all.end(), tribune_states.begin(), tribune_states.end());
        if (despot_states.empty() || tribune_states.empty())
            throw Error(ErrorKind::invalid_argument, "arena: both players need at least one state");
        if (auto d = dup(all)) throw Error(ErrorKind::invalid_argument, "arena: state '" + *d + "' listed twice");
        if (auto d = dup(alphabet)) throw Error(ErrorKind::invalid_argument, "arena: action '" + *d + "' listed twice");
        for (const auto& t : transitions) {
            const bool d_to_t = despot_index(t.from) && tribune_index(t.to);
            const bool t_to_d = tribune_index(t.from) && despot_index(t.to);
            if (!d_to_t && !t_to_d)
                throw Error(ErrorKind::invalid_argument,
                            "arena: transition " + t.from + " -" + t.action + "-> " + t.to + " does not alternate between players");
            if (!find(alphabet, t.action))
                throw Error(ErrorKind::invalid_argument, "arena: action '" + t.action + "' not in the alphabet");
            if (t.weight <= 0)
                throw Error(ErrorKind::invalid_argument, "arena: transition " + t.from + " -" + t.action + "-> " + t.to +
                                                             " has non-positive weight");
        }
        for (const auto& s : all)
            if (std::none_of(transitions.begin(), transitions.end(), [&](const Transition& t) { return t.from == s; }))
                throw Error(ErrorKind::blocking_state, "arena: state '" + s + "' has no outgoing transition");
    }

private:
    static std::optional<std::size_t> find(const std::vector<std::string>& v, const std::string& s) {
        auto it = std::find(v.begin(), v.end(), s);
        if (it == v.end()) return std::nullopt;
        return static_cast<std::size_t>(it - v.begin());
    }
};

struct PositionalStrategy {
    Player owner = Player::despot;
    std::map<std::string, std::string> choice;

    bool operator==(const PositionalStrategy&) const = default;
    [[nodiscard]] const std::string& operator()(const std::string& state) const {
        auto it = choice.find(state);
        if (it == choice.end()) throw Error(ErrorKind::invalid_argument, "strategy has no action for '" + state + "'");
        return it->second;
    }
};

/// arena_to_iru output. row_actions[i][k] lists the actions of state i
/// producing row k of its row set (alphabet order).
struct Translation {
    IruSet a_set;
    IruSet e_set;
    std::vector<std::vector<std::vector<std::string>>> despot_row_actions;
    std::vector<std::vector<std::vector<std::string>>> tribune_row_actions;

    [[nodiscard]] const IruSet& set_of(Player p) const { return p == Player::despot ? a_set : e_set; }
    [[nodiscard]] const auto& row_actions(Player p) const {
        return p == Player::despot ? despot_row_actions : tribune_row_actions;
    }

    /// Matrix of a positional strategy.
    [[nodiscard]] Matrix matrix_of(const Arena& arena, const PositionalStrategy& s) const {
        const auto& states = arena.states_of(s.owner);
        const auto& actions = row_actions(s.owner);
        Choice c(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            const std::string& a = s(states[i]);
            bool found = false;
            for (std::size_t k = 0; k < actions[i].size() && !found; ++k)
                if (std::find(actions[i][k].begin(), actions[i][k].end(), a) != actions[i][k].end()) {
                    c[i] = k;
                    found = true;
                }
            if (!found) throw Error(ErrorKind::invalid_argument, "action '" + a + "' is not enabled in state '" + states[i] + "'");
        }
        return set_of(s.owner).member(c);
    }

    /// Positional strategy of a member; the first action of each row.
    [[nodiscard]] PositionalStrategy strategy_of(const Arena& arena, Player owner, const Matrix& m) const {
        auto c = set_of(owner).choice_of(m);
        if (!c) throw Error(ErrorKind::invalid_argument, "matrix is not a member of the translated set");
        PositionalStrategy s{owner, {}};
        const auto& states = arena.states_of(owner);
        for (std::size_t i = 0; i < states.size(); ++i) s.choice[states[i]] = row_actions(owner)[i][(*c)[i]].front();
        return s;
    }
};

namespace detail {

inline IruSet translate_side(const Arena& arena, Player owner, std::vector<std::vector<std::vector<std::string>>>& actions) {
    const auto& from = arena.states_of(owner);
    const auto& to = arena.states_of(owner == Player::despot ? Player::tribune : Player::despot);
    std::vector<RowSet> sets;
    actions.assign(from.size(), {});
    for (std::size_t i = 0; i < from.size(); ++i) {
        std::vector<Vector> rows;
        for (const auto& a : arena.alphabet) {
            Vector row(to.size(), Rational(0));
            for (const auto& t : arena.transitions) {
                if (t.from != from[i] || t.action != a) continue;
                const auto j = static_cast<std::size_t>(std::find(to.begin(), to.end(), t.to) - to.begin());
                row[j] += Rational(t.weight);
            }
            if (std::all_of(row.begin(), row.end(), [](const Rational& x) { return x == 0; })) continue;
            auto it = std::find(rows.begin(), rows.end(), row);
            if (it == rows.end()) {
                rows.push_back(row);
                actions[i].push_back({a});
            } else {
                actions[i][static_cast<std::size_t>(it - rows.begin())].push_back(a);
            }
        }
        if (rows.empty()) throw Error(ErrorKind::blocking_state, "arena: state '" + from[i] + "' is blocking");
        sets.emplace_back(to.size(), rows);
    }
    return IruSet(to.size(), std::move(sets));
}

}  // namespace detail

inline Translation arena_to_iru(const Arena& arena) {
    arena.validate();
    std::vector<std::vector<std::vector<std::string>>> da, ta;
    IruSet a = detail::translate_side(arena, Player::despot, da);
    IruSet e = detail::translate_side(arena, Player::tribune, ta);
    return Translation{std::move(a), std::move(e), std::move(da), std::move(ta)};
}

// ---- saddle points -------------------------------------------------------

struct SolveOptions {
    Rational tol = Rational(1, 1000000);
    Rational radius_tol = default_radius_tolerance();
    std::uint64_t cap = default_enumeration_cap();
    unsigned threads = 1;
};

/// A saddle pair with its exact certificates:
///   jsr(E·A0) < upper   (so rho(A0 E) <= upper for every E)
///   jssr(A·E0) >= lower (so rho(A E0) >= lower for every A)
/// and lower <= rho(A0 E0) <= upper.
struct SaddlePoint {
    Matrix a0;
    Matrix e0;
    RadiusEstimate radius;
    Rational lower;
    Rational upper;
    Certificate adam_side;
    Certificate eve_side;
};

/// rho(A_i E_j) over all pairs, floats, row-major over enumeration order.
struct RadiusTable {
    std::vector<Matrix> adam;
    std::vector<Matrix> eve;
    std::vector<double> rho;

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return rho[i * eve.size() + j]; }

    [[nodiscard]] double min_max() const {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < adam.size(); ++i) {
            double worst = 0.0;
            for (std::size_t j = 0; j < eve.size(); ++j) worst = std::max(worst, (*this)(i, j));
            best = std::min(best, worst);
        }
        return best;
    }
    [[nodiscard]] double max_min() const {
        double best = 0.0;
        for (std::size_t j = 0; j < eve.size(); ++j) {
            double worst = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < adam.size(); ++i) worst = std::min(worst, (*this)(i, j));
            best = std::max(best, worst);
        }
        return best;
    }
};

inline RadiusTable radius_table(const IruSet& a_set, const IruSet& e_set, std::uint64_t cap = default_enumeration_cap(),
                                unsigned threads = 1) {
    detail::require_compatible(a_set, e_set, "radius_table");
    RadiusTable t{enumerate(a_set, cap), enumerate(e_set, cap), {}};
    std::vector<MatrixD> ad, ed;
    for (const auto& m : t.adam) ad.push_back(to_double(m));
    for (const auto& m : t.eve) ed.push_back(to_double(m));
    t.rho.assign(ad.size() * ed.size(), 0.0);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < ad.size(); i += stride)
            for (std::size_t j = 0; j < ed.size(); ++j) t.rho[i * ed.size() + j] = spectral_radius_value(mat_mul(ad[i], ed[j]));
    };
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(ad.size())));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work, k, threads);
    }
    return t;
}

/// Exact check of a candidate saddle pair; nullopt if it fails.
inline std::optional<SaddlePoint> confirm_saddle(const IruSet& a_set, const IruSet& e_set, const Matrix& a0,
                                                 const Matrix& e0, const Rational& radius_tol = default_radius_tolerance()) {
    detail::require_compatible(a_set, e_set, "confirm_saddle");
    SaddlePoint p{a0, e0, spectral_radius(mat_mul(a0, e0), radius_tol), 0, 0, {}, {}};
    p.lower = p.radius.lower;
    p.upper = p.radius.upper;
    const IruSet eve_side = right_product(e_set, a0);
    Decision up = decide_jsr_lt(eve_side, p.upper);
    if (!up.holds) {
        p.upper += radius_tol;
        up = decide_jsr_lt(eve_side, p.upper);
        if (!up.holds) return std::nullopt;
    }
    Decision low = decide_jssr_ge(right_product(a_set, e0), p.lower);
    if (!low.holds) return std::nullopt;
    p.adam_side = *up.certificate;
    p.eve_side = *low.certificate;
    return p;
}

/// Rechecks the certificates of a saddle point without solving anything.
inline bool verify_saddle(const IruSet& a_set, const IruSet& e_set, const SaddlePoint& p) {
    if (!a_set.contains(p.a0) || !e_set.contains(p.e0)) return false;
    const Matrix m = mat_mul(p.a0, p.e0);
    return p.lower <= p.upper && verify_certificate(p.adam_side, right_product(e_set, p.a0), nullptr, p.upper) &&
           verify_certificate(p.eve_side, right_product(a_set, p.e0), nullptr, p.lower) &&
           certify_radius_upper(m, p.upper, p.radius.upper_witness) &&
           certify_radius_lower(m, p.lower, p.radius.lower_witness);
}

/// First pair in (A, E) enumeration order that is a float saddle and
/// survives exact confirmation.
inline SaddlePoint find_saddle(const IruSet& a_set, const IruSet& e_set, const SolveOptions& opt = {}) {
    const RadiusTable t = radius_table(a_set, e_set, opt.cap, opt.threads);
    const double slack = 1e-9;
    std::vector<double> row_max(t.adam.size(), 0.0), col_min(t.eve.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < t.adam.size(); ++i)
        for (std::size_t j = 0; j < t.eve.size(); ++j) {
            row_max[i] = std::max(row_max[i], t(i, j));
            col_min[j] = std::min(col_min[j], t(i, j));
        }
    for (std::size_t i = 0; i < t.adam.size(); ++i)
        for (std::size_t j = 0; j < t.eve.size(); ++j) {
            const double r = t(i, j);
            if (r < row_max[i] - slack * std::max(1.0, r) || r > col_min[j] + slack * std::max(1.0, r)) continue;
            if (auto p = confirm_saddle(a_set, e_set, t.adam[i], t.eve[j], opt.radius_tol)) return *p;
        }
    throw Error(ErrorKind::internal, "find_saddle: no saddle pair confirmed");
}

struct MatrixGameSolution {
    ValueInterval value;
    SaddlePoint saddle;
};

inline MatrixGameSolution solve_matrix_game(const IruSet& a_set, const IruSet& e_set, const SolveOptions& opt = {}) {
    MatrixGameSolution s{value_bisection(a_set, e_set, opt.tol, opt.cap), find_saddle(a_set, e_set, opt)};
    if (s.value.lower > s.saddle.upper || s.value.upper < s.saddle.lower)
        throw Error(ErrorKind::internal, "solve: bisection interval misses the saddle enclosure");
    return s;
}

struct GameSolution {
    ValueInterval value;
    PositionalStrategy despot_strategy;
    PositionalStrategy tribune_strategy;
    SaddlePoint saddle;
};

inline GameSolution solve(const Arena& arena, const SolveOptions& opt = {}) {
    const Translation tr = arena_to_iru(arena);
    MatrixGameSolution s = solve_matrix_game(tr.a_set, tr.e_set, opt);
    return GameSolution{std::move(s.value), tr.strategy_of(arena, Player::despot, s.saddle.a0),
                        tr.strategy_of(arena, Player::tribune, s.saddle.e0), std::move(s.saddle)};
}

// ---- forest counting -----------------------------------------------------

/// (turn, state) -> action; turns count from 1.
using ActionOracle = std::function<std::string(std::size_t, const std::string&)>;

inline ActionOracle positional_oracle(PositionalStrategy s) {
    return [s = std::move(s)](std::size_t, const std::string& state) { return s(state); };
}

/// Plays script[turn-1] whatever the state, cycling when the script runs out.
inline ActionOracle script_oracle(std::vector<std::string> script) {
    if (script.empty()) throw Error(ErrorKind::invalid_argument, "script_oracle: empty script");
    return [script = std::move(script)](std::size_t turn, const std::string&) {
        return script[(turn - 1) % script.size()];
    };
}

struct ForestTrace {
    /// levels[0] over D (all ones), then alternately over T and D.
    std::vector<std::vector<BigInt>> levels;

    [[nodiscard]] Player owner_of_level(std::size_t k) const { return k % 2 == 0 ? Player::despot : Player::tribune; }
    [[nodiscard]] BigInt total(std::size_t k) const {
        BigInt s = 0;
        for (const auto& x : levels.at(k)) s += x;
        return s;
    }
};

/// Per-state counts of compatible play prefixes, summed over every initial
/// state in D.
inline ForestTrace forest_counts(const Arena& arena, const ActionOracle& despot, const ActionOracle& tribune,
                                 std::size_t turns) {
    arena.validate();
    ForestTrace trace;
    trace.levels.emplace_back(arena.despot_states.size(), BigInt(1));
    auto step = [&](Player p, const ActionOracle& oracle, std::size_t turn) {
        const auto& from = arena.states_of(p);
        const auto& to = arena.states_of(p == Player::despot ? Player::tribune : Player::despot);
        const auto& x = trace.levels.back();
        std::vector<BigInt> y(to.size(), BigInt(0));
        for (std::size_t i = 0; i < from.size(); ++i) {
            if (x[i] == 0) continue;
            const std::string a = oracle(turn, from[i]);
            bool legal = false;
            for (const auto& t : arena.transitions) {
                if (t.from != from[i] || t.action != a) continue;
                legal = true;
                const auto j = static_cast<std::size_t>(std::find(to.begin(), to.end(), t.to) - to.begin());
                y[j] += x[i] * t.weight;
            }
            if (!legal)
                throw Error(ErrorKind::invalid_argument, std::string(to_string(p)) + " played illegal action '" + a +
                                                             "' in state '" + from[i] + "' at turn " + std::to_string(turn));
        }
        trace.levels.push_back(std::move(y));
    };
    for (std::size_t turn = 1; turn <= turns; ++turn) {
        step(Player::despot, despot, turn);
        step(Player::tribune, tribune, turn);
    }
    return trace;
}

/// Same dynamics read as species counts: Damien picks the environment for
/// each species d, Theo for each t.
inline ForestTrace population_trace(const Arena& arena, const ActionOracle& damien, const ActionOracle& theo,
                                    std::size_t turns) {
    return forest_counts(arena, damien, theo, turns);
}

// ---- payoff simulation ---------------------------------------------------

/// (step, history A1,E1,...) -> next matrix. Steps count from 1.
using MatrixOracle = std::function<MatrixD(std::size_t, std::span<const MatrixD>)>;

inline MatrixOracle constant_oracle(const Matrix& m) {
    return [d = to_double(m)](std::size_t, std::span<const MatrixD>) { return d; };
}

inline MatrixOracle random_member_oracle(const IruSet& s, std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    std::vector<std::vector<VectorD>> rows;
    for (const auto& rs : s.row_sets()) {
        rows.emplace_back();
        for (const auto& r : rs.rows()) rows.back().push_back(to_double(r));
    }
    return [rng, rows = std::move(rows), n_cols = s.n_cols()](std::size_t, std::span<const MatrixD>) {
        MatrixD m(rows.size(), n_cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::uniform_int_distribution<std::size_t> pick(0, rows[i].size() - 1);
            const auto& r = rows[i][pick(*rng)];
            for (std::size_t j = 0; j < n_cols; ++j) m(i, j) = r[j];
        }
        return m;
    };
}

inline MatrixOracle random_hull_oracle(const IruSet& s, std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng, s](std::size_t, std::span<const MatrixD>) { return to_double(sample_conv(s, (*rng)())); };
}

struct GrowthReport {
    /// root[k-1] = ||A1 E1 ... Ak Ek||^(1/k).
    std::vector<double> root;
    /// log ||A1 E1 ... Ak Ek|| (natural log), -inf once the product is zero.
    std::vector<double> log_norm;
    /// Finite-horizon stand-in for the limsup: max over the last quarter of
    /// the windowed rates (||P_k|| / ||P_h||)^(1/(k-h)), h = steps/2.
    double tail = 0.0;
    std::optional<std::size_t> zero_from;
};

inline GrowthReport simulate_payoff(std::size_t n_rows, std::size_t n_cols, const MatrixOracle& adam,
                                    const MatrixOracle& eve, std::size_t steps) {
    if (steps == 0) throw Error(ErrorKind::invalid_argument, "simulate_payoff: steps must be positive");
    GrowthReport out;
    std::vector<MatrixD> history;
    MatrixD p = MatrixD::identity(n_rows);
    double log_norm = 0.0;
    auto check = [](const MatrixD& m, std::size_t r, std::size_t c, const char* who) {
        if (m.rows() != r || m.cols() != c)
            throw Error(ErrorKind::dimension_mismatch, std::string(who) + " oracle returned a " + std::to_string(m.rows()) +
                                                           "x" + std::to_string(m.cols()) + " matrix, expected " +
                                                           std::to_string(r) + "x" + std::to_string(c));
    };
    for (std::size_t k = 1; k <= steps; ++k) {
        MatrixD a = adam(k, history);
        check(a, n_rows, n_cols, "Adam's");
        history.push_back(a);
        MatrixD e = eve(k, history);
        check(e, n_cols, n_rows, "Eve's");
        history.push_back(e);
        if (!out.zero_from) {
            p = mat_mul(mat_mul(p, a), e);
            const double n = one_norm(p);
            if (n == 0.0) {
                out.zero_from = k;
            } else {
                p = scaled(p, 1.0 / n);
                log_norm += std::log(n);
            }
        }
        if (out.zero_from) {
            out.log_norm.push_back(-std::numeric_limits<double>::infinity());
            out.root.push_back(0.0);
        } else {
            out.log_norm.push_back(log_norm);
            out.root.push_back(std::exp(log_norm / static_cast<double>(k)));
        }
    }
    if (out.zero_from) return out;
    if (steps == 1) {
        out.tail = out.root[0];
        return out;
    }
    const std::size_t h = steps / 2;
    const std::size_t first = std::max(h + 1, (3 * steps + 3) / 4);
    out.tail = 0.0;
    for (std::size_t k = first; k <= steps; ++k)
        out.tail = std::max(out.tail, std::exp((out.log_norm[k - 1] - out.log_norm[h - 1]) / static_cast<double>(k - h)));
    return out;
}

inline GrowthReport simulate_payoff(const IruSet& a_set, const IruSet& e_set, const MatrixOracle& adam,
                                    const MatrixOracle& eve, std::size_t steps) {
    detail::require_compatible(a_set, e_set, "simulate_payoff");
    return simulate_payoff(a_set.n_rows(), a_set.n_cols(), adam, eve, steps);
}

/// Entropy in bits per symbol of a per-turn growth rate (4 symbols a turn).
inline double eg_payoff_entropy(double growth) {
    if (!(growth > 0.0)) throw Error(ErrorKind::invalid_argument, "eg_payoff_entropy: growth must be positive");
    return std::log2(growth) / 4.0;
}

inline double eg_payoff_entropy(const GrowthReport& g) { return eg_payoff_entropy(g.tail); }

// ---- mean-payoff games ---------------------------------------------------

struct MpgEdge {
    std::string from;
    std::string to;
    BigInt weight = 0;

    bool operator==(const MpgEdge&) const = default;
};

struct MpgArena {
    std::vector<std::string> despot_states;
    std::vector<std::string> tribune_states;
    std::vector<MpgEdge> transitions;

    bool operator==(const MpgArena&) const = default;
};

/// Fresh action e<k> per edge k, weight 2^w. The result is deterministic.
inline Arena mpg_to_weighted_eg(const MpgArena& m) {
    Arena a{m.despot_states, m.tribune_states, {}, {}};
    for (std::size_t k = 0; k < m.transitions.size(); ++k) {
        const auto& e = m.transitions[k];
        if (e.weight < 0) throw Error(ErrorKind::invalid_argument, "mpg: negative weight on " + e.from + " -> " + e.to);
        std::string name = "e" + std::to_string(k);
        BigInt w = 1;
        for (BigInt i = 0; i < e.weight; ++i) w *= 2;
        a.alphabet.push_back(name);
        a.transitions.push_back({e.from, name, e.to, w});
    }
    a.validate();
    return a;
}

}  // namespace entgame

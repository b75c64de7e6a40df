// entgame: command-line front end.
//
// Exit codes: decide -> 0 true, 1 false, 2 error; everything else -> 0 ok,
// 2 error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entgame.hpp"

namespace {

using namespace entgame;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

struct Globals {
    bool json = false;
    std::string tol = "1/1000000";
    std::uint64_t cap = default_enumeration_cap();
    unsigned threads = 1;
    std::string output;
};

void emit(const Globals& g, const json& doc) {
    const std::string text = doc.dump(2) + "\n";
    if (g.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw Error(ErrorKind::invalid_argument, "cannot write '" + g.output + "'");
    out << text;
}

SolveOptions solve_options(const Globals& g) {
    SolveOptions o;
    o.tol = parse_rational(g.tol);
    if (o.tol <= 0) throw Error(ErrorKind::invalid_argument, "--tol must be positive");
    o.cap = g.cap;
    o.threads = g.threads;
    return o;
}

std::string fmt(double x, int digits = 10) {
    std::ostringstream ss;
    ss << std::setprecision(digits) << x;
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

enum class InputKind { arena, pair, set, mpg };

InputKind classify(const json& j) {
    if (j.contains("alphabet")) return InputKind::arena;
    if (j.contains("adam") && j.contains("eve")) return InputKind::pair;
    if (j.contains("row_sets")) return InputKind::set;
    if (j.contains("despot_states")) return InputKind::mpg;
    throw Error(ErrorKind::parse_error, "unrecognized input document");
}

json load(const std::string& path) { return io::parse_json(io::read_file(path), path); }

io::MatrixPair load_pair(const json& j) {
    if (classify(j) == InputKind::arena) {
        Translation t = arena_to_iru(io::arena_from_json(j));
        return {t.a_set, t.e_set};
    }
    return io::matrix_pair_from_json(j);
}

// ---- translate ------------------------------------------------------------

int cmd_translate(const Globals& g, const std::string& path) {
    const Arena arena = io::arena_from_json(load(path));
    const Translation t = arena_to_iru(arena);
    json doc = io::to_json(io::MatrixPair{t.a_set, t.e_set});
    if (!g.json && g.output.empty()) {
        auto show = [&](const char* name, const IruSet& s, const std::vector<std::string>& states,
                        const std::vector<std::vector<std::vector<std::string>>>& acts) {
            for (std::size_t i = 0; i < s.n_rows(); ++i) {
                std::cout << name << (i + 1) << " (" << states[i] << "): {";
                for (std::size_t k = 0; k < s.row_set(i).size(); ++k) {
                    std::cout << (k ? ", " : "") << to_string(s.row_set(i)[k]) << " <- ";
                    for (std::size_t a = 0; a < acts[i][k].size(); ++a) std::cout << (a ? "," : "") << acts[i][k][a];
                }
                std::cout << "}\n";
            }
        };
        show("A", t.a_set, arena.despot_states, t.despot_row_actions);
        show("E", t.e_set, arena.tribune_states, t.tribune_row_actions);
        return kExitOk;
    }
    emit(g, doc);
    return kExitOk;
}

// ---- value ----------------------------------------------------------------

int cmd_value(const Globals& g, const std::string& path) {
    const json in = load(path);
    const SolveOptions opt = solve_options(g);
    json doc;
    std::optional<GameSolution> arena_solution;
    MatrixGameSolution s;
    if (classify(in) == InputKind::arena) {
        arena_solution = solve(io::arena_from_json(in), opt);
        s = {arena_solution->value, arena_solution->saddle};
    } else {
        const io::MatrixPair p = io::matrix_pair_from_json(in);
        s = solve_matrix_game(p.adam, p.eve, opt);
    }
    const double mid = (to_double(s.value.lower) + to_double(s.value.upper)) / 2;
    doc["interval"] = io::to_json(s.value);
    doc["value"] = mid;
    doc["saddle"] = {{"adam", io::to_json(s.saddle.a0)},
                     {"eve", io::to_json(s.saddle.e0)},
                     {"radius_lower", io::to_json(s.saddle.lower)},
                     {"radius_upper", io::to_json(s.saddle.upper)},
                     {"adam_certificate", io::to_json(s.saddle.adam_side)},
                     {"eve_certificate", io::to_json(s.saddle.eve_side)}};
    if (arena_solution) {
        doc["despot_strategy"] = io::to_json(arena_solution->despot_strategy);
        doc["tribune_strategy"] = io::to_json(arena_solution->tribune_strategy);
        doc["entropy_bits_per_symbol"] = mid > 0 ? json(eg_payoff_entropy(mid)) : json(nullptr);
    }
    if (g.json) {
        emit(g, doc);
        return kExitOk;
    }
    std::cout << "value in [" << to_string(s.value.lower) << ", " << to_string(s.value.upper) << "]\n"
              << "       ~ " << fmt(mid) << " (width " << fmt(to_double(s.value.upper - s.value.lower), 3) << ")\n"
              << "Adam plays  " << to_string(s.saddle.a0) << "\n"
              << "Eve plays   " << to_string(s.saddle.e0) << "\n";
    if (arena_solution) {
        std::cout << "Despot:";
        for (const auto& [st, a] : arena_solution->despot_strategy.choice) std::cout << " " << st << "=" << a;
        std::cout << "\nTribune:";
        for (const auto& [st, a] : arena_solution->tribune_strategy.choice) std::cout << " " << st << "=" << a;
        std::cout << "\n";
        if (mid > 0) std::cout << "entropy " << fmt(eg_payoff_entropy(mid), 6) << " bits/symbol (one turn = 4 symbols)\n";
    }
    return kExitOk;
}

// ---- decide ---------------------------------------------------------------

int cmd_decide(const Globals& g, const std::string& path, const std::string& query, const std::string& alpha_text,
               const std::string& side) {
    const json in = load(path);
    const Rational alpha = parse_rational(alpha_text);
    Decision d;
    std::optional<io::MatrixPair> pair;
    std::optional<IruSet> single;
    const bool mm = query.rfind("mm", 0) == 0;
    if (mm) {
        pair = load_pair(in);
    } else if (classify(in) == InputKind::set) {
        single = io::iru_set_from_json(in);
    } else {
        io::MatrixPair p = load_pair(in);
        if (side != "adam" && side != "eve") throw Error(ErrorKind::invalid_argument, "--set must be adam or eve");
        single = side == "adam" ? p.adam : p.eve;
    }
    if (query == "jsr<") d = decide_jsr_lt(*single, alpha);
    else if (query == "jsr<=") d = decide_jsr_le(*single, alpha);
    else if (query == "jssr>") d = decide_jssr_gt(*single, alpha);
    else if (query == "jssr>=") d = decide_jssr_ge(*single, alpha);
    else if (query == "mm<") d = decide_mm_lt(pair->adam, pair->eve, alpha, g.cap);
    else if (query == "mm>=") d = decide_mm_ge(pair->adam, pair->eve, alpha, g.cap);
    else if (query == "mm<=") d = decide_mm_le(pair->adam, pair->eve, alpha, g.cap);
    else throw Error(ErrorKind::invalid_argument, "unknown query '" + query + "'");

    if (d.certificate) {
        const bool ok = single ? verify_certificate(*d.certificate, *single, nullptr, alpha)
                               : verify_certificate(*d.certificate, pair->adam, &pair->eve, alpha);
        if (!ok) throw Error(ErrorKind::internal, "emitted certificate failed verification");
    }
    if (g.json) {
        json doc{{"query", query}, {"alpha", io::to_json(alpha)}, {"holds", d.holds}};
        doc["certificate"] = d.certificate ? io::to_json(*d.certificate) : json(nullptr);
        emit(g, doc);
    } else {
        std::cout << query << " " << to_string(alpha) << ": " << (d.holds ? "true" : "false") << "\n";
        if (d.certificate) {
            std::cout << "certificate v = " << to_string(d.certificate->vector) << "\n";
            if (d.certificate->chosen_matrix) std::cout << "chosen matrix = " << to_string(*d.certificate->chosen_matrix) << "\n";
        }
    }
    return d.holds ? kExitOk : kExitFalse;
}

// ---- simulate -------------------------------------------------------------

ActionOracle action_oracle(const std::string& how, Player owner, const Arena& arena, const Translation& tr,
                           const SolveOptions& opt) {
    const auto colon = how.find(':');
    const std::string kind = how.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : how.substr(colon + 1);
    if (kind == "script") {
        std::vector<std::string> acts = arg.find(',') != std::string::npos ? split(arg, ',') : std::vector<std::string>{};
        if (acts.empty())
            for (char c : arg) acts.emplace_back(1, c);
        return script_oracle(acts);
    }
    if (kind == "positional") {
        PositionalStrategy s{owner, {}};
        for (const auto& item : split(arg, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::invalid_argument, "positional strategy needs state=action pairs");
            s.choice[item.substr(0, eq)] = item.substr(eq + 1);
        }
        (void)tr.matrix_of(arena, s);
        return positional_oracle(std::move(s));
    }
    if (kind == "optimal") {
        const GameSolution sol = solve(arena, opt);
        return positional_oracle(owner == Player::despot ? sol.despot_strategy : sol.tribune_strategy);
    }
    if (kind == "random") {
        auto rng = std::make_shared<std::mt19937_64>(arg.empty() ? 0 : std::stoull(arg));
        return [rng, &arena](std::size_t, const std::string& state) {
            const auto acts = arena.enabled_actions(state);
            std::uniform_int_distribution<std::size_t> pick(0, acts.size() - 1);
            return acts[pick(*rng)];
        };
    }
    throw Error(ErrorKind::invalid_argument, "unknown strategy '" + how + "' (script:, positional:, optimal, random:)");
}

MatrixOracle matrix_oracle(const std::string& how, const IruSet& own, const Matrix& optimal) {
    const auto colon = how.find(':');
    const std::string kind = how.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : how.substr(colon + 1);
    if (kind == "constant") {
        if (arg.empty() || arg == "optimal") return constant_oracle(optimal);
        Choice c;
        for (const auto& s : split(arg, ',')) c.push_back(std::stoul(s));
        return constant_oracle(own.member(c));
    }
    if (kind == "optimal") return constant_oracle(optimal);
    if (kind == "random") return random_member_oracle(own, arg.empty() ? 0 : std::stoull(arg));
    if (kind == "hull") return random_hull_oracle(own, arg.empty() ? 0 : std::stoull(arg));
    throw Error(ErrorKind::invalid_argument, "unknown strategy '" + how + "' (constant:, optimal, random:, hull:)");
}

json growth_json(const GrowthReport& r) {
    json doc{{"tail_estimate", r.tail}, {"root", r.root}, {"note", "finite-horizon estimate of a limsup"}};
    doc["zero_from"] = r.zero_from ? json(*r.zero_from) : json(nullptr);
    return doc;
}

int cmd_simulate(const Globals& g, const std::string& path, const std::string& despot, const std::string& tribune,
                 std::size_t turns) {
    const json in = load(path);
    const SolveOptions opt = solve_options(g);
    if (turns == 0) throw Error(ErrorKind::invalid_argument, "--turns must be positive");
    if (classify(in) == InputKind::arena) {
        const Arena arena = io::arena_from_json(in);
        const Translation tr = arena_to_iru(arena);
        const ForestTrace f = forest_counts(arena, action_oracle(despot, Player::despot, arena, tr, opt),
                                            action_oracle(tribune, Player::tribune, arena, tr, opt), turns);
        json levels = json::array();
        for (std::size_t k = 0; k < f.levels.size(); ++k) {
            json counts = json::object();
            const auto& states = arena.states_of(f.owner_of_level(k));
            for (std::size_t i = 0; i < states.size(); ++i) counts[states[i]] = io::detail::integer_json(f.levels[k][i]);
            levels.push_back(json{{"level", k}, {"counts", counts}, {"total", io::detail::integer_json(f.total(k))}});
        }
        const double growth = std::pow(f.total(f.levels.size() - 1).convert_to<double>(), 1.0 / static_cast<double>(turns));
        if (g.json) {
            emit(g, json{{"levels", levels}, {"growth", growth}, {"note", "|F_2n|^(1/n), finite-horizon estimate of a limsup"}});
            return kExitOk;
        }
        for (std::size_t k = 0; k < f.levels.size(); ++k) {
            const auto& states = arena.states_of(f.owner_of_level(k));
            std::cout << "level " << k << ":";
            for (std::size_t i = 0; i < states.size(); ++i) std::cout << " " << states[i] << "=" << f.levels[k][i];
            std::cout << "  (total " << f.total(k) << ")\n";
        }
        std::cout << "growth |F_2n|^(1/n) = " << fmt(growth) << " (finite-horizon estimate)\n";
        return kExitOk;
    }
    const io::MatrixPair p = io::matrix_pair_from_json(in);
    const bool needs_opt = despot.find("optimal") != std::string::npos || tribune.find("optimal") != std::string::npos ||
                           despot == "constant" || tribune == "constant";
    std::optional<SaddlePoint> saddle;
    if (needs_opt) saddle = find_saddle(p.adam, p.eve, opt);
    const Matrix none(1, 1);
    const GrowthReport r = simulate_payoff(p.adam, p.eve, matrix_oracle(despot, p.adam, saddle ? saddle->a0 : none),
                                           matrix_oracle(tribune, p.eve, saddle ? saddle->e0 : none), turns);
    if (g.json) {
        emit(g, growth_json(r));
        return kExitOk;
    }
    for (std::size_t k = 0; k < r.root.size(); ++k)
        if (k + 1 == r.root.size() || (k + 1) % std::max<std::size_t>(1, r.root.size() / 10) == 0)
            std::cout << "k=" << (k + 1) << "  ||P_k||^(1/k) = " << fmt(r.root[k]) << "\n";
    std::cout << "tail estimate " << fmt(r.tail) << " (finite-horizon estimate of a limsup)\n";
    if (r.zero_from) std::cout << "product is zero from step " << *r.zero_from << "\n";
    return kExitOk;
}

// ---- two-counter machines -------------------------------------------------

int cmd_encode(const Globals& g, const std::string& path, const std::string& variant) {
    const TwoCounterMachine m = TwoCounterMachine::parse(io::read_file(path));
    EncodedMmg enc;
    if (variant == "integer") enc = encode_integer(m);
    else if (variant == "nonneg" || variant == "nonnegative") enc = encode_nonneg(m);
    else throw Error(ErrorKind::invalid_argument, "--variant must be integer or nonneg");
    for (const auto& w : enc.warnings) std::cerr << "warning: " << w << "\n";
    emit(g, io::to_json(enc));
    return kExitOk;
}

int cmd_check(const Globals& g, const std::string& path, std::size_t turns, std::optional<std::size_t> cheat_at) {
    const TwoCounterMachine m = TwoCounterMachine::parse(io::read_file(path));
    const EncodedMmg gi = encode_integer(m);
    const EncodedMmg gn = encode_nonneg(m);
    json doc;
    doc["halting_time"] = m.halting_time(turns) ? json(*m.halting_time(turns)) : json(nullptr);
    if (!gi.eve.empty()) {
        const ScriptedPlayReport r = run_scripted_play(gi, m, {turns, cheat_at, true});
        doc["integer"] = {{"turns_played", r.turns.size()},
                          {"invariant_held", r.invariant_held},
                          {"first_cheat", r.first_cheat ? json(*r.first_cheat) : json(nullptr)},
                          {"annihilated_at", r.annihilated_at ? json(*r.annihilated_at) : json(nullptr)},
                          {"product_zero", r.product_zero},
                          {"norm_root", r.norm_root},
                          {"max_abs_coordinate", io::to_json(r.max_abs_coordinate)}};
        json trace = json::array();
        for (const auto& t : r.turns)
            trace.push_back({{"turn", t.turn}, {"adam", t.adam}, {"eve", t.eve}, {"cheat", t.eve_cheated}, {"vector", io::to_json(t.vector)}});
        doc["integer"]["trace"] = trace;
    } else {
        doc["integer"] = nullptr;
        std::cerr << "warning: machine has no transitions; nothing to play\n";
    }
    const NonnegReport n = check_nonneg_punishment(gn, m, turns);
    json factors = json::array();
    for (const auto& f : n.factors)
        factors.push_back({{"start", f.start_turn}, {"length", f.length}, {"reset", f.reset}, {"ratio", io::to_json(f.ratio)},
                           {"within_bound", f.within_bound}, {"rate", f.rate()}});
    doc["nonnegative"] = {{"machine_halts", n.machine_halts},
                          {"magnitude_ok", n.magnitude_ok},
                          {"factors_ok", n.factors_ok},
                          {"max_factor_rate", n.max_factor_rate},
                          {"factors", factors}};
    if (g.json) {
        emit(g, doc);
        return kExitOk;
    }
    std::cout << "machine: " << (doc["halting_time"].is_null() ? "no halt within " + std::to_string(turns) + " steps"
                                                               : "halts after " + doc["halting_time"].dump() + " steps")
              << "\n";
    if (!doc["integer"].is_null()) {
        const auto& r = doc["integer"];
        std::cout << "integer encoding: invariant " << (r["invariant_held"].get<bool>() ? "held" : "BROKEN")
                  << ", first cheat " << (r["first_cheat"].is_null() ? "none" : r["first_cheat"].dump())
                  << ", product " << (r["product_zero"].get<bool>() ? "annihilated at turn " + r["annihilated_at"].dump() : "non-zero")
                  << ", ||P||^(1/n) = " << fmt(r["norm_root"].get<double>(), 6) << "\n";
    }
    if (n.machine_halts) {
        std::cout << "non-negative encoding: " << n.factors.size() << " punished factors, all within 2^(f-1): "
                  << (n.factors_ok ? "yes" : "NO") << ", max per-factor rate " << fmt(n.max_factor_rate, 6) << "\n";
    } else {
        std::cout << "non-negative encoding: some coordinate >= 2^n at every step: " << (n.magnitude_ok ? "yes" : "NO") << "\n";
    }
    return kExitOk;
}

// ---- mean-payoff ----------------------------------------------------------

int cmd_mpg(const Globals& g, const std::string& path, bool do_solve) {
    const MpgArena m = io::mpg_from_json(load(path));
    const Arena a = mpg_to_weighted_eg(m);
    if (!do_solve) {
        emit(g, io::to_json(a));
        return kExitOk;
    }
    const GameSolution s = solve(a, solve_options(g));
    const double lo = to_double(s.value.lower), hi = to_double(s.value.upper);
    const double log_value = std::log2((lo + hi) / 2);
    if (g.json) {
        emit(g, json{{"arena", io::to_json(a)}, {"interval", io::to_json(s.value)}, {"log2_value", log_value}});
        return kExitOk;
    }
    if (!g.output.empty()) emit(g, io::to_json(a));
    std::cout << "EG value in [" << fmt(lo) << ", " << fmt(hi) << "]\n"
              << "log2 value = " << fmt(log_value, 8) << " (mean payoff per turn)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy games and matrix multiplication games over IRU sets"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "emit one JSON document on stdout");
    app.add_option("--tol", g.tol, "value tolerance (rational or decimal)")->capture_default_str();
    app.add_option("--cap", g.cap, "enumeration cap")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads for pair tables")->capture_default_str();
    app.add_option("-o,--output", g.output, "write the document to a file");

    std::string path, query, alpha, side = "adam", despot, tribune, variant = "integer";
    std::size_t turns = 10;
    std::optional<std::size_t> cheat_at;
    bool do_solve = false;

    auto* translate = app.add_subcommand("translate", "arena -> matrix-set pair");
    translate->add_option("arena", path, "arena JSON")->required();

    auto* value = app.add_subcommand("value", "game value and optimal strategies");
    value->add_option("file", path, "arena or matrix-pair JSON")->required();

    auto* decide = app.add_subcommand("decide", "exact threshold query");
    decide->add_option("file", path, "matrix set, pair or arena JSON")->required();
    decide->add_option("--query", query, "jsr<, jsr<=, jssr>, jssr>=, mm<, mm>=, mm<=")->required();
    decide->add_option("--alpha", alpha, "threshold p/q")->required();
    decide->add_option("--set", side, "which set of a pair for jsr/jssr queries (adam|eve)")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "forest counts or growth of a play");
    simulate->add_option("file", path, "arena or matrix-pair JSON")->required();
    simulate->add_option("--despot,--adam", despot, "script:ab | positional:d1=a,... | optimal | random:SEED (arena); "
                                                    "constant[:i,j,..|optimal] | random:SEED | hull:SEED (pair)")
        ->required();
    simulate->add_option("--tribune,--eve", tribune, "as --despot")->required();
    simulate->add_option("--turns", turns, "number of turns")->capture_default_str();

    auto* encode = app.add_subcommand("encode-2cmm", "two-counter machine -> matrix game");
    encode->add_option("machine", path, "machine text file")->required();
    encode->add_option("--variant", variant, "integer | nonneg")->capture_default_str();

    auto* check = app.add_subcommand("check-2cmm", "scripted plays on both encodings");
    check->add_option("machine", path, "machine text file")->required();
    check->add_option("--turns", turns, "horizon")->capture_default_str();
    check->add_option("--cheat-at", cheat_at, "make Eve cheat at this turn");

    auto* mpg = app.add_subcommand("mpg", "mean-payoff game -> weighted entropy game");
    mpg->add_option("file", path, "mean-payoff arena JSON")->required();
    mpg->add_flag("--solve", do_solve, "also report log2 of the entropy-game value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*translate) return cmd_translate(g, path);
        if (*value) return cmd_value(g, path);
        if (*decide) return cmd_decide(g, path, query, alpha, side);
        if (*simulate) return cmd_simulate(g, path, despot, tribune, turns);
        if (*encode) return cmd_encode(g, path, variant);
        if (*check) return cmd_check(g, path, turns, cheat_at);
        if (*mpg) return cmd_mpg(g, path, do_solve);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

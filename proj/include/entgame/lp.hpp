#pragma once

// Exact rational linear programming. Two-phase dictionary simplex with
// Bland's rule, so it terminates on degenerate systems without tolerances.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "entgame/error.hpp"
#include "entgame/matrix.hpp"
#include "entgame/rational.hpp"

namespace entgame {

enum class Relation { le, ge, eq };

struct Constraint {
    Vector coefficients;
    Relation relation = Relation::le;
    Rational rhs;
};

/// Variables are free unless flagged in `nonnegative`; an empty flag list
/// means all free. Without an objective the solve is a feasibility check.
struct FeasibilitySystem {
    std::size_t variables = 0;
    std::vector<Constraint> constraints;
    std::optional<Vector> objective;
    std::vector<bool> nonnegative;

    void add(Vector coefficients, Relation relation, Rational rhs) {
        if (coefficients.size() != variables)
            throw Error(ErrorKind::dimension_mismatch, "FeasibilitySystem: coefficient row has " +
                                                           std::to_string(coefficients.size()) + " entries, expected " +
                                                           std::to_string(variables));
        constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
    }
};

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    Vector solution;
};

namespace detail {

/// max c·x s.t. A x <= b, x >= 0. The tableau layout follows the classic
/// compact dictionary: row m is the objective, row m+1 the phase-one
/// objective, column n the auxiliary variable, column n+1 the constants.
class SimplexTableau {
public:
    SimplexTableau(const std::vector<Vector>& a, const Vector& b, const Vector& c)
        : m_(b.size()), n_(c.size()), basis_(m_), nonbasis_(n_ + 1), d_(m_ + 2, Vector(n_ + 2, Rational(0))) {
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
        for (std::size_t i = 0; i < m_; ++i) {
            basis_[i] = static_cast<long>(n_ + i);
            d_[i][n_] = -1;
            d_[i][n_ + 1] = b[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            nonbasis_[j] = static_cast<long>(j);
            d_[m_][j] = -c[j];
        }
        nonbasis_[n_] = -1;
        d_[m_ + 1][n_] = 1;
    }

    LpResult solve() {
        LpResult result;
        std::size_t r = 0;
        for (std::size_t i = 1; i < m_; ++i)
            if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
        if (m_ > 0 && d_[r][n_ + 1] < 0) {
            pivot(r, n_);
            if (!run(2) || d_[m_ + 1][n_ + 1] < 0) {
                result.status = LpStatus::infeasible;
                return result;
            }
            for (std::size_t i = 0; i < m_; ++i) {
                if (basis_[i] != -1) continue;
                std::optional<std::size_t> s;
                for (std::size_t j = 0; j <= n_; ++j) {
                    if (d_[i][j] == 0 || nonbasis_[j] == -1) continue;
                    if (!s || nonbasis_[j] < nonbasis_[*s]) s = j;
                }
                if (s) pivot(i, *s);
            }
        }
        const bool bounded = run(1);
        result.solution.assign(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_) result.solution[basis_[i]] = d_[i][n_ + 1];
        result.status = bounded ? LpStatus::optimal : LpStatus::unbounded;
        if (bounded) result.value = d_[m_][n_ + 1];
        return result;
    }

private:
    void pivot(std::size_t r, std::size_t s) {
        const Rational inv = Rational(1) / d_[r][s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r || d_[i][s] == 0) continue;
            const Rational f = d_[i][s] * inv;
            for (std::size_t j = 0; j < n_ + 2; ++j)
                if (d_[r][j] != 0) d_[i][j] -= d_[r][j] * f;
            d_[i][s] = d_[r][s] * f;
        }
        for (std::size_t j = 0; j < n_ + 2; ++j)
            if (j != s) d_[r][j] *= inv;
        for (std::size_t i = 0; i < m_ + 2; ++i)
            if (i != r) d_[i][s] *= -inv;
        d_[r][s] = inv;
        std::swap(basis_[r], nonbasis_[s]);
    }

    // Bland: entering = lowest-labelled improving column, leaving = min
    // ratio with lowest-labelled basic variable on ties.
    bool run(int phase) {
        const std::size_t x = m_ + static_cast<std::size_t>(phase) - 1;
        for (;;) {
            std::optional<std::size_t> s;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (nonbasis_[j] == -phase || d_[x][j] >= 0) continue;
                if (!s || nonbasis_[j] < nonbasis_[*s]) s = j;
            }
            if (!s) return true;
            std::optional<std::size_t> r;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (d_[i][*s] <= 0) continue;
                const Rational ratio = d_[i][n_ + 1] / d_[i][*s];
                if (!r || ratio < best || (ratio == best && basis_[i] < basis_[*r])) {
                    r = i;
                    best = ratio;
                }
            }
            if (!r) return false;
            pivot(*r, *s);
        }
    }

    std::size_t m_, n_;
    std::vector<long> basis_, nonbasis_;
    std::vector<Vector> d_;
};

}  // namespace detail

/// Maximizes the objective (or finds any feasible point) exactly.
inline LpResult lp_max(const FeasibilitySystem& sys) {
    const std::size_t nv = sys.variables;
    if (!sys.nonnegative.empty() && sys.nonnegative.size() != nv)
        throw Error(ErrorKind::dimension_mismatch, "lp_max: nonnegative flags must cover every variable");
    if (sys.objective && sys.objective->size() != nv)
        throw Error(ErrorKind::dimension_mismatch, "lp_max: objective length");

    // Free variables split as x = x+ - x-; the split column for variable k
    // is column_of_negative[k].
    std::vector<std::optional<std::size_t>> negative_column(nv);
    std::size_t columns = nv;
    for (std::size_t k = 0; k < nv; ++k) {
        const bool free = sys.nonnegative.empty() || !sys.nonnegative[k];
        if (free) negative_column[k] = columns++;
    }
    auto expand = [&](const Vector& coeffs, bool negate) {
        Vector row(columns, Rational(0));
        for (std::size_t k = 0; k < nv; ++k) {
            const Rational c = negate ? Rational(-coeffs[k]) : coeffs[k];
            row[k] = c;
            if (negative_column[k]) row[*negative_column[k]] = -c;
        }
        return row;
    };

    std::vector<Vector> a;
    Vector b;
    for (const auto& con : sys.constraints) {
        if (con.coefficients.size() != nv) throw Error(ErrorKind::dimension_mismatch, "lp_max: constraint length");
        if (con.relation != Relation::ge) {
            a.push_back(expand(con.coefficients, false));
            b.push_back(con.rhs);
        }
        if (con.relation != Relation::le) {
            a.push_back(expand(con.coefficients, true));
            b.push_back(-con.rhs);
        }
    }
    const Vector c = sys.objective ? expand(*sys.objective, false) : Vector(columns, Rational(0));

    detail::SimplexTableau tableau(a, b, c);
    LpResult raw = tableau.solve();
    LpResult out;
    out.status = raw.status;
    out.value = raw.value;
    if (raw.status == LpStatus::infeasible) return out;
    out.solution.assign(nv, Rational(0));
    for (std::size_t k = 0; k < nv; ++k) {
        out.solution[k] = raw.solution[k];
        if (negative_column[k]) out.solution[k] -= raw.solution[*negative_column[k]];
    }
    return out;
}

}  // namespace entgame

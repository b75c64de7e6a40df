#pragma once

// Independent-row-uncertainty (IRU) families: every matrix whose i-th row is
// drawn independently from the i-th row set.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "entgame/error.hpp"
#include "entgame/matrix.hpp"
#include "entgame/rational.hpp"
#include "entgame/spectral.hpp"

namespace entgame {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1000000;

/// Enumeration cap, overridable through ENTGAME_ENUM_CAP.
inline std::uint64_t default_enumeration_cap() {
    if (const char* env = std::getenv("ENTGAME_ENUM_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return kDefaultEnumerationCap;
}

/// Finite set of non-negative rows of a common length. Duplicates are
/// dropped, first occurrence wins; otherwise insertion order is kept.
class RowSet {
public:
    RowSet(std::size_t dim, const std::vector<Vector>& rows) : dim_(dim) {
        if (rows.empty()) throw Error(ErrorKind::invalid_argument, "RowSet: empty row set");
        for (const auto& r : rows) {
            if (r.size() != dim) throw Error(ErrorKind::dimension_mismatch, "RowSet: row length mismatch");
            if (std::any_of(r.begin(), r.end(), [](const Rational& x) { return x < 0; }))
                throw Error(ErrorKind::precondition_violated, "RowSet: negative entry");
            if (std::find(rows_.begin(), rows_.end(), r) == rows_.end()) rows_.push_back(r);
        }
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
    [[nodiscard]] const std::vector<Vector>& rows() const noexcept { return rows_; }
    [[nodiscard]] const Vector& operator[](std::size_t k) const { return rows_[k]; }

    [[nodiscard]] std::optional<std::size_t> index_of(std::span<const Rational> row) const {
        for (std::size_t k = 0; k < rows_.size(); ++k)
            if (std::equal(rows_[k].begin(), rows_[k].end(), row.begin(), row.end())) return k;
        return std::nullopt;
    }

    [[nodiscard]] bool is_positive() const {
        return std::all_of(rows_.begin(), rows_.end(), [](const Vector& r) {
            return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x > 0; });
        });
    }

    /// Same rows regardless of order.
    [[nodiscard]] bool same_rows(const RowSet& other) const {
        return dim_ == other.dim_ && size() == other.size() &&
               std::all_of(rows_.begin(), rows_.end(), [&](const Vector& r) { return other.index_of(r).has_value(); });
    }

    bool operator==(const RowSet&) const = default;

private:
    std::size_t dim_;
    std::vector<Vector> rows_;
};

using Choice = std::vector<std::size_t>;

class IruSet {
public:
    IruSet(std::size_t n_cols, std::vector<RowSet> row_sets) : n_cols_(n_cols), row_sets_(std::move(row_sets)) {
        if (row_sets_.empty()) throw Error(ErrorKind::invalid_argument, "IruSet: needs at least one row set");
        for (const auto& rs : row_sets_)
            if (rs.dim() != n_cols_) throw Error(ErrorKind::dimension_mismatch, "IruSet: row set dimension mismatch");
    }

    /// The IRU set whose only member is m.
    static IruSet singleton(const Matrix& m) {
        std::vector<RowSet> sets;
        for (std::size_t i = 0; i < m.rows(); ++i) sets.emplace_back(m.cols(), std::vector<Vector>{m.row_vector(i)});
        return IruSet(m.cols(), std::move(sets));
    }

    [[nodiscard]] std::size_t n_rows() const noexcept { return row_sets_.size(); }
    [[nodiscard]] std::size_t n_cols() const noexcept { return n_cols_; }
    [[nodiscard]] bool square() const noexcept { return n_rows() == n_cols_; }
    [[nodiscard]] const std::vector<RowSet>& row_sets() const noexcept { return row_sets_; }
    [[nodiscard]] const RowSet& row_set(std::size_t i) const { return row_sets_[i]; }

    /// Number of members, saturating at uint64 max.
    [[nodiscard]] std::uint64_t family_size() const {
        std::uint64_t total = 1;
        for (const auto& rs : row_sets_) {
            if (total > std::numeric_limits<std::uint64_t>::max() / rs.size()) return std::numeric_limits<std::uint64_t>::max();
            total *= rs.size();
        }
        return total;
    }

    [[nodiscard]] bool is_positive() const {
        return std::all_of(row_sets_.begin(), row_sets_.end(), [](const RowSet& rs) { return rs.is_positive(); });
    }

    [[nodiscard]] Matrix member(std::span<const std::size_t> choice) const {
        if (choice.size() != n_rows()) throw Error(ErrorKind::dimension_mismatch, "IruSet::member: choice length");
        Matrix m(n_rows(), n_cols_);
        for (std::size_t i = 0; i < n_rows(); ++i) m.set_row(i, row_sets_[i][choice[i]]);
        return m;
    }

    [[nodiscard]] MatrixD member_d(std::span<const std::size_t> choice) const {
        return to_double(member(choice));
    }

    /// Row indices of m if it is a member.
    [[nodiscard]] std::optional<Choice> choice_of(const Matrix& m) const {
        if (m.rows() != n_rows() || m.cols() != n_cols_) return std::nullopt;
        Choice c(n_rows());
        for (std::size_t i = 0; i < n_rows(); ++i) {
            auto k = row_sets_[i].index_of(m.row(i));
            if (!k) return std::nullopt;
            c[i] = *k;
        }
        return c;
    }

    [[nodiscard]] bool contains(const Matrix& m) const { return choice_of(m).has_value(); }

    /// Equal as families: same shape and, per row, the same set of rows.
    [[nodiscard]] bool same_family(const IruSet& other) const {
        if (n_rows() != other.n_rows() || n_cols_ != other.n_cols_) return false;
        for (std::size_t i = 0; i < n_rows(); ++i)
            if (!row_sets_[i].same_rows(other.row_sets_[i])) return false;
        return true;
    }

    bool operator==(const IruSet&) const = default;

private:
    std::size_t n_cols_;
    std::vector<RowSet> row_sets_;
};

/// Streams the members of an IRU set in lexicographic order of row-choice
/// indices (first row most significant). Restartable via reset().
class MemberEnumerator {
public:
    explicit MemberEnumerator(const IruSet& s, std::uint64_t cap = default_enumeration_cap()) : set_(&s) {
        if (s.family_size() > cap)
            throw Error(ErrorKind::cap_exceeded, "IRU family has " + std::to_string(s.family_size()) +
                                                     " members, above the enumeration cap " + std::to_string(cap));
        reset();
    }

    void reset() {
        choice_.assign(set_->n_rows(), 0);
        started_ = false;
        done_ = false;
    }

    /// Advances to the next member; false once exhausted.
    bool next() {
        if (done_) return false;
        if (!started_) {
            started_ = true;
            return true;
        }
        for (std::size_t i = choice_.size(); i-- > 0;) {
            if (++choice_[i] < set_->row_set(i).size()) return true;
            choice_[i] = 0;
        }
        done_ = true;
        return false;
    }

    [[nodiscard]] const Choice& choice() const { return choice_; }
    [[nodiscard]] Matrix matrix() const { return set_->member(choice_); }

private:
    const IruSet* set_;
    Choice choice_;
    bool started_ = false;
    bool done_ = false;
};

/// Calls f(choice, matrix) for every member.
template <class F>
void for_each_member(const IruSet& s, F&& f, std::uint64_t cap = default_enumeration_cap()) {
    MemberEnumerator it(s, cap);
    while (it.next()) f(it.choice(), it.matrix());
}

inline std::vector<Matrix> enumerate(const IruSet& s, std::uint64_t cap = default_enumeration_cap()) {
    std::vector<Matrix> out;
    for_each_member(s, [&](const Choice&, const Matrix& m) { out.push_back(m); }, cap);
    return out;
}

/// The IRU set {A·b : A in s}, row sets {a·b : a in s_i}.
inline IruSet right_product(const IruSet& s, const Matrix& b) {
    if (s.n_cols() != b.rows())
        throw Error(ErrorKind::dimension_mismatch, "right_product: set has " + std::to_string(s.n_cols()) +
                                                       " columns, matrix has " + std::to_string(b.rows()) + " rows");
    std::vector<RowSet> sets;
    sets.reserve(s.n_rows());
    for (const auto& rs : s.row_sets()) {
        std::vector<Vector> rows;
        rows.reserve(rs.size());
        for (const auto& r : rs.rows()) rows.push_back(mul(r, b));
        sets.emplace_back(b.cols(), rows);
    }
    return IruSet(b.cols(), std::move(sets));
}

struct RadiusPair {
    RadiusEstimate jsr;
    RadiusEstimate jssr;
    Matrix argmax;
    Matrix argmin;
};

/// Joint spectral radius and subradius of a finite IRU set: the max and min
/// of rho over its members. Ties go to the earliest member.
inline RadiusPair jsr_jssr(const IruSet& s, const Rational& tol = default_radius_tolerance(),
                           std::uint64_t cap = default_enumeration_cap()) {
    if (!s.square()) throw Error(ErrorKind::dimension_mismatch, "jsr_jssr: IRU set must be square");
    double best_max = -1.0, best_min = std::numeric_limits<double>::infinity();
    Choice arg_max, arg_min;
    const double slack = std::max(1e-12, to_double(tol) / 8.0);
    for_each_member(
        s,
        [&](const Choice& c, const Matrix& m) {
            const double r = spectral_radius_value(to_double(m));
            if (arg_max.empty() || r > best_max + slack) {
                best_max = r;
                arg_max = c;
            }
            if (arg_min.empty() || r < best_min - slack) {
                best_min = r;
                arg_min = c;
            }
        },
        cap);
    RadiusPair out{.jsr = {}, .jssr = {}, .argmax = s.member(arg_max), .argmin = s.member(arg_min)};
    out.jsr = spectral_radius(out.argmax, tol);
    out.jssr = spectral_radius(out.argmin, tol);
    return out;
}

/// Member of conv(s) given explicit per-row convex weights.
inline Matrix convex_combination(const IruSet& s, const std::vector<Vector>& weights) {
    if (weights.size() != s.n_rows()) throw Error(ErrorKind::dimension_mismatch, "convex_combination: one weight vector per row");
    Matrix m(s.n_rows(), s.n_cols());
    for (std::size_t i = 0; i < s.n_rows(); ++i) {
        const auto& rs = s.row_set(i);
        const auto& w = weights[i];
        if (w.size() != rs.size()) throw Error(ErrorKind::dimension_mismatch, "convex_combination: weight count");
        Rational total = 0;
        for (const auto& x : w) {
            if (x < 0) throw Error(ErrorKind::invalid_argument, "convex_combination: negative weight");
            total += x;
        }
        if (total != 1) throw Error(ErrorKind::invalid_argument, "convex_combination: weights must sum to 1");
        for (std::size_t k = 0; k < rs.size(); ++k)
            for (std::size_t j = 0; j < s.n_cols(); ++j) m(i, j) += w[k] * rs[k][j];
    }
    return m;
}

/// Seeded random convex weights: integer draws in [0, 1000] per row vertex,
/// normalized; an all-zero draw becomes uniform.
inline std::vector<Vector> sample_conv_weights(const IruSet& s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> draw(0, 1000);
    std::vector<Vector> weights;
    weights.reserve(s.n_rows());
    for (const auto& rs : s.row_sets()) {
        Vector w(rs.size());
        Rational total = 0;
        for (auto& x : w) {
            x = draw(rng);
            total += x;
        }
        if (total == 0) {
            for (auto& x : w) x = 1;
            total = static_cast<long>(w.size());
        }
        for (auto& x : w) x /= total;
        weights.push_back(std::move(w));
    }
    return weights;
}

inline Matrix sample_conv(const IruSet& s, std::uint64_t seed) {
    return convex_combination(s, sample_conv_weights(s, seed));
}

/// One clause of the hourglass alternative: either every member stays on
/// one side of v, or `counterexample` is a member on the other side.
struct HourglassClause {
    bool holds_for_all = false;
    std::optional<Matrix> counterexample;
    std::size_t replaced_row = 0;
};

struct HourglassReport {
    HourglassClause all_ge;  ///< clause (i): A u >= v for all A, or Ā u <= v, Ā u != v
    HourglassClause all_le;  ///< clause (ii): A u <= v for all A, or Ā u >= v, Ā u != v
};

inline HourglassReport hourglass_check(const IruSet& s, const Vector& u, const Vector& v, const Matrix& witness) {
    if (u.size() != s.n_cols() || v.size() != s.n_rows())
        throw Error(ErrorKind::dimension_mismatch, "hourglass_check: vector sizes");
    if (!s.contains(witness)) throw Error(ErrorKind::invalid_argument, "hourglass_check: witness is not a member");
    if (mul(witness, u) != v) throw Error(ErrorKind::invalid_argument, "hourglass_check: witness·u != v");

    // Members differ row-wise, so a single violating row swapped into the
    // witness already lands in the opposite bulb.
    auto clause = [&](auto violates) {
        HourglassClause out;
        for (std::size_t i = 0; i < s.n_rows(); ++i) {
            for (const auto& r : s.row_set(i).rows()) {
                if (violates(dot<Rational>(r, u), v[i])) {
                    Matrix bar = witness;
                    bar.set_row(i, r);
                    out.counterexample = std::move(bar);
                    out.replaced_row = i;
                    return out;
                }
            }
        }
        out.holds_for_all = true;
        return out;
    };
    HourglassReport report;
    report.all_ge = clause([](const Rational& lhs, const Rational& rhs) { return lhs < rhs; });
    report.all_le = clause([](const Rational& lhs, const Rational& rhs) { return lhs > rhs; });
    return report;
}

}  // namespace entgame

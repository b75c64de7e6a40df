#pragma once

// Exact threshold decisions for joint spectral radius / subradius of IRU
// sets and for the min-max value of the matrix game, each backed by a
// checkable rational certificate.
//
//   jsr  <  a  iff  exists v > 0 with A v < a v for all members   (non-negative)
//   jssr >= a  iff  exists v >= 0, v != 0 with A v >= a v          (non-negative)
//   jsr  <= a, jssr > a: analogous, only for positive sets.
//
// The "for all members" quantifier is checked row by row, so every system
// is polynomial in the row-set sizes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entgame/error.hpp"
#include "entgame/iru_set.hpp"
#include "entgame/lp.hpp"
#include "entgame/matrix.hpp"

namespace entgame {

enum class CertificateKind { jsr_lt, jsr_le, jssr_gt, jssr_ge, mm_lt, mm_ge };

inline const char* to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::jsr_lt: return "jsr_lt";
        case CertificateKind::jsr_le: return "jsr_le";
        case CertificateKind::jssr_gt: return "jssr_gt";
        case CertificateKind::jssr_ge: return "jssr_ge";
        case CertificateKind::mm_lt: return "mm_lt";
        case CertificateKind::mm_ge: return "mm_ge";
    }
    return "?";
}

struct Certificate {
    CertificateKind kind = CertificateKind::jsr_lt;
    Vector vector;
    /// A0 for mm_lt, E0 for mm_ge.
    std::optional<Matrix> chosen_matrix;

    bool operator==(const Certificate&) const = default;
};

struct Decision {
    bool holds = false;
    std::optional<Certificate> certificate;
};

namespace detail {

enum class Side { upper, lower };

inline void require_square(const IruSet& s, const char* who) {
    if (!s.square()) throw Error(ErrorKind::dimension_mismatch, std::string(who) + ": IRU set must be square");
}

inline void require_positive(const IruSet& s, const char* who) {
    if (!s.is_positive())
        throw Error(ErrorKind::precondition_violated,
                    std::string(who) + ": set has zero entries; this query is only decided for positive sets");
}

/// Row constraint  row·v - alpha v_i  (+/-) eps  against 0. Variables are
/// v_0..v_{N-1} followed optionally by eps.
inline Vector row_coefficients(const Vector& row, std::size_t i, const Rational& alpha, std::size_t variables) {
    Vector c(variables, Rational(0));
    for (std::size_t j = 0; j < row.size(); ++j) c[j] = row[j];
    c[i] -= alpha;
    return c;
}

/// Strict variant: max eps s.t. row·v - alpha v_i + eps <= 0 (upper) or
/// row·v - alpha v_i - eps >= 0 (lower), v >= 1, eps <= 1. Holds iff eps* > 0.
inline Decision strict_system(const IruSet& s, const Rational& alpha, Side side, CertificateKind kind) {
    const std::size_t n = s.n_rows();
    FeasibilitySystem sys;
    sys.variables = n + 1;
    sys.nonnegative.assign(n + 1, true);
    sys.nonnegative[n] = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& row : s.row_set(i).rows()) {
            Vector c = row_coefficients(row, i, alpha, n + 1);
            if (side == Side::upper) {
                c[n] = 1;
                sys.add(std::move(c), Relation::le, 0);
            } else {
                c[n] = -1;
                sys.add(std::move(c), Relation::ge, 0);
            }
        }
        Vector unit(n + 1, Rational(0));
        unit[i] = 1;
        sys.add(std::move(unit), Relation::ge, 1);
    }
    Vector eps(n + 1, Rational(0));
    eps[n] = 1;
    sys.add(eps, Relation::le, 1);
    sys.objective = eps;

    const LpResult res = lp_max(sys);
    if (res.status != LpStatus::optimal)
        throw Error(ErrorKind::internal, std::string("strict threshold LP not optimal: ") + to_string(res.status));
    Decision d;
    d.holds = res.value > 0;
    if (d.holds) d.certificate = Certificate{kind, Vector(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(n)), std::nullopt};
    return d;
}

/// Non-strict variant: row·v (<= | >=) alpha v_i with v >= 1 (positive
/// certificates) or v >= 0, sum v >= 1 (non-negative, non-zero).
inline Decision weak_system(const IruSet& s, const Rational& alpha, Side side, bool positive_vector,
                            CertificateKind kind) {
    const std::size_t n = s.n_rows();
    FeasibilitySystem sys;
    sys.variables = n;
    sys.nonnegative.assign(n, true);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& row : s.row_set(i).rows())
            sys.add(row_coefficients(row, i, alpha, n), side == Side::upper ? Relation::le : Relation::ge, 0);
    if (positive_vector) {
        for (std::size_t i = 0; i < n; ++i) {
            Vector unit(n, Rational(0));
            unit[i] = 1;
            sys.add(std::move(unit), Relation::ge, 1);
        }
    } else {
        sys.add(Vector(n, Rational(1)), Relation::ge, 1);
    }
    const LpResult res = lp_max(sys);
    Decision d;
    d.holds = res.status != LpStatus::infeasible;
    if (d.holds) d.certificate = Certificate{kind, res.solution, std::nullopt};
    return d;
}

}  // namespace detail

inline Decision decide_jsr_lt(const IruSet& s, const Rational& alpha) {
    detail::require_square(s, "decide_jsr_lt");
    return detail::strict_system(s, alpha, detail::Side::upper, CertificateKind::jsr_lt);
}

inline Decision decide_jssr_ge(const IruSet& s, const Rational& alpha) {
    detail::require_square(s, "decide_jssr_ge");
    return detail::weak_system(s, alpha, detail::Side::lower, false, CertificateKind::jssr_ge);
}

inline Decision decide_jsr_le(const IruSet& s, const Rational& alpha) {
    detail::require_square(s, "decide_jsr_le");
    detail::require_positive(s, "decide_jsr_le");
    return detail::weak_system(s, alpha, detail::Side::upper, true, CertificateKind::jsr_le);
}

inline Decision decide_jssr_gt(const IruSet& s, const Rational& alpha) {
    detail::require_square(s, "decide_jssr_gt");
    detail::require_positive(s, "decide_jssr_gt");
    return detail::strict_system(s, alpha, detail::Side::lower, CertificateKind::jssr_gt);
}

namespace detail {

inline void require_compatible(const IruSet& a_set, const IruSet& e_set, const char* who) {
    if (a_set.n_cols() != e_set.n_rows() || e_set.n_cols() != a_set.n_rows())
        throw Error(ErrorKind::dimension_mismatch,
                    std::string(who) + ": Adam's set is " + std::to_string(a_set.n_rows()) + "x" +
                        std::to_string(a_set.n_cols()) + ", Eve's set is " + std::to_string(e_set.n_rows()) + "x" +
                        std::to_string(e_set.n_cols()));
}

}  // namespace detail

/// mm(A, E) < alpha: search A0 with jsr(E·A0) < alpha, first in
/// enumeration order.
inline Decision decide_mm_lt(const IruSet& a_set, const IruSet& e_set, const Rational& alpha,
                             std::uint64_t cap = default_enumeration_cap()) {
    detail::require_compatible(a_set, e_set, "decide_mm_lt");
    MemberEnumerator it(a_set, cap);
    while (it.next()) {
        Matrix a0 = it.matrix();
        Decision d = decide_jsr_lt(right_product(e_set, a0), alpha);
        if (d.holds) {
            d.certificate->kind = CertificateKind::mm_lt;
            d.certificate->chosen_matrix = std::move(a0);
            return d;
        }
    }
    return {};
}

/// mm(A, E) >= alpha: search E0 with jssr(A·E0) >= alpha.
inline Decision decide_mm_ge(const IruSet& a_set, const IruSet& e_set, const Rational& alpha,
                             std::uint64_t cap = default_enumeration_cap()) {
    detail::require_compatible(a_set, e_set, "decide_mm_ge");
    MemberEnumerator it(e_set, cap);
    while (it.next()) {
        Matrix e0 = it.matrix();
        Decision d = decide_jssr_ge(right_product(a_set, e0), alpha);
        if (d.holds) {
            d.certificate->kind = CertificateKind::mm_ge;
            d.certificate->chosen_matrix = std::move(e0);
            return d;
        }
    }
    return {};
}

/// mm(A, E) <= alpha for positive sets, via jsr(E·A0) <= alpha.
inline Decision decide_mm_le(const IruSet& a_set, const IruSet& e_set, const Rational& alpha,
                             std::uint64_t cap = default_enumeration_cap()) {
    detail::require_compatible(a_set, e_set, "decide_mm_le");
    detail::require_positive(a_set, "decide_mm_le");
    detail::require_positive(e_set, "decide_mm_le");
    MemberEnumerator it(a_set, cap);
    while (it.next()) {
        Matrix a0 = it.matrix();
        Decision d = decide_jsr_le(right_product(e_set, a0), alpha);
        if (d.holds) {
            d.certificate->chosen_matrix = std::move(a0);
            return d;
        }
    }
    return {};
}

/// Re-checks every defining inequality of a certificate against the row
/// constraints; no LP is solved.
inline bool verify_certificate(const Certificate& cert, const IruSet& a_set, const IruSet* e_set, const Rational& alpha) {
    const Vector& v = cert.vector;
    auto rows_satisfy = [&](const IruSet& s, auto&& relation) {
        if (!s.square() || v.size() != s.n_rows()) return false;
        for (std::size_t i = 0; i < s.n_rows(); ++i)
            for (const auto& row : s.row_set(i).rows())
                if (!relation(dot<Rational>(row, v), alpha * v[i])) return false;
        return true;
    };
    auto positive = [&] { return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x > 0; }); };
    auto nonneg_nonzero = [&] {
        return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; }) &&
               std::any_of(v.begin(), v.end(), [](const Rational& x) { return x > 0; });
    };
    const auto lt = [](const Rational& l, const Rational& r) { return l < r; };
    const auto le = [](const Rational& l, const Rational& r) { return l <= r; };
    const auto gt = [](const Rational& l, const Rational& r) { return l > r; };
    const auto ge = [](const Rational& l, const Rational& r) { return l >= r; };

    switch (cert.kind) {
        case CertificateKind::jsr_lt: return positive() && rows_satisfy(a_set, lt);
        case CertificateKind::jsr_le: return positive() && rows_satisfy(a_set, le);
        case CertificateKind::jssr_gt: return positive() && rows_satisfy(a_set, gt);
        case CertificateKind::jssr_ge: return alpha >= 0 && nonneg_nonzero() && rows_satisfy(a_set, ge);
        case CertificateKind::mm_lt:
        case CertificateKind::mm_ge: {
            if (!e_set) throw Error(ErrorKind::invalid_argument, "verify_certificate: mm certificate needs both sets");
            if (!cert.chosen_matrix) throw Error(ErrorKind::invalid_argument, "verify_certificate: mm certificate lacks its matrix");
            detail::require_compatible(a_set, *e_set, "verify_certificate");
            if (cert.kind == CertificateKind::mm_lt) {
                if (!a_set.contains(*cert.chosen_matrix)) return false;
                return positive() && rows_satisfy(right_product(*e_set, *cert.chosen_matrix), lt);
            }
            if (!e_set->contains(*cert.chosen_matrix)) return false;
            return alpha >= 0 && nonneg_nonzero() && rows_satisfy(right_product(a_set, *cert.chosen_matrix), ge);
        }
    }
    return false;
}

struct ValueInterval {
    Rational lower;
    Rational upper;
    /// mm >= lower (kind mm_ge) and mm < upper (kind mm_lt).
    Certificate lower_witness;
    Certificate upper_witness;
};

/// Upper bound on rho(AE) over all pairs: the entrywise norm is
/// submultiplicative and maximized row by row over an IRU set.
inline Rational max_product_norm_bound(const IruSet& a_set, const IruSet& e_set) {
    auto max_norm = [](const IruSet& s) {
        Rational total = 0;
        for (const auto& rs : s.row_sets()) {
            Rational best = 0;
            for (const auto& r : rs.rows()) {
                Rational sum = 0;
                for (const auto& x : r) sum += x;
                best = std::max(best, sum);
            }
            total += best;
        }
        return total;
    };
    return max_norm(a_set) * max_norm(e_set);
}

/// Brackets mm(A, E) by bisection on dyadic thresholds, each step decided
/// exactly by decide_mm_lt.
inline ValueInterval value_bisection(const IruSet& a_set, const IruSet& e_set, const Rational& tol,
                                     std::uint64_t cap = default_enumeration_cap()) {
    detail::require_compatible(a_set, e_set, "value_bisection");
    if (tol <= 0) throw Error(ErrorKind::invalid_argument, "value_bisection: tolerance must be positive");
    const Rational bound = max_product_norm_bound(a_set, e_set);
    Rational lo = 0;
    // power of two strictly above every rho(AE)
    BigInt top = 1;
    while (Rational(top) <= bound) top *= 2;
    Rational hi = Rational(top);
    std::optional<Certificate> upper_cert;
    while (hi - lo > tol) {
        const Rational mid = (lo + hi) / 2;
        Decision d = decide_mm_lt(a_set, e_set, mid, cap);
        if (d.holds) {
            hi = mid;
            upper_cert = std::move(d.certificate);
        } else {
            lo = mid;
        }
    }
    if (!upper_cert) {
        Decision d = decide_mm_lt(a_set, e_set, hi, cap);
        if (!d.holds) throw Error(ErrorKind::internal, "value_bisection: initial upper bound not certified");
        upper_cert = std::move(d.certificate);
    }
    Decision low = decide_mm_ge(a_set, e_set, lo, cap);
    if (!low.holds) throw Error(ErrorKind::internal, "value_bisection: complementary lower certificate missing");
    return {lo, hi, *low.certificate, *upper_cert};
}

}  // namespace entgame

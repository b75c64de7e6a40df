#pragma once

// Spectral radius of non-negative matrices.
//
// Floats drive the eigen-iteration; every returned bound is exact. The
// support graph is split into strongly connected components, each
// irreducible block is iterated with the shift B + I (primitive, so the
// iteration converges even for periodic blocks), and the iterate is
// rationalized to produce exact Collatz-Wielandt ratios. rho(m) is the
// maximum over blocks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "entgame/error.hpp"
#include "entgame/matrix.hpp"
#include "entgame/rational.hpp"

namespace entgame {

inline Rational default_radius_tolerance() { return Rational(1, 10000000000LL); }

inline constexpr std::size_t kPowerIterationCap = 10000;

struct RadiusEstimate {
    double value = 0.0;
    Rational lower;
    Rational upper;
    std::size_t iterations = 0;
    bool converged = false;
    /// Positive vector with m·v <= upper·v.
    Vector upper_witness;
    /// Non-negative, non-zero vector with m·v >= lower·v.
    Vector lower_witness;
};

namespace detail {

template <class T>
std::vector<std::vector<std::size_t>> strongly_connected_components(const BasicMatrix<T>& m) {
    // Tarjan, iterative. Components come out in reverse topological order.
    const std::size_t n = m.rows();
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, unset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const std::size_t v = f.node;
            if (f.next < n) {
                const std::size_t w = f.next++;
                if (m(v, w) == 0) continue;
                if (index[w] == unset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty()) {
                const std::size_t parent = call.back().node;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return components;
}

template <class T>
bool trivial_component(const BasicMatrix<T>& m, const std::vector<std::size_t>& comp) {
    return comp.size() == 1 && m(comp[0], comp[0]) == 0;
}

template <class T>
BasicMatrix<T> submatrix(const BasicMatrix<T>& m, const std::vector<std::size_t>& idx) {
    BasicMatrix<T> b(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = m(idx[i], idx[j]);
    return b;
}

struct BlockIteration {
    VectorD v;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Shifted power iteration on an irreducible block with Collatz-Wielandt
/// stopping rule hi - lo <= tol.
inline BlockIteration iterate_block(const MatrixD& b, double tol, std::size_t cap) {
    const std::size_t k = b.rows();
    BlockIteration out;
    out.v.assign(k, 1.0);
    if (k == 1) {
        out.lo = out.hi = b(0, 0);
        out.converged = true;
        return out;
    }
    VectorD bv(k);
    for (std::size_t it = 0; it <= cap; ++it) {
        out.iterations = it;
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < k; ++j) acc += b(i, j) * out.v[j];
            bv[i] = acc;
            const double r = acc / out.v[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        out.lo = lo;
        out.hi = hi;
        const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi);
        if (hi - lo <= std::max(tol, floor)) {
            out.converged = hi - lo <= tol;
            return out;
        }
        if (it == cap) break;
        double top = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            out.v[i] += bv[i];
            top = std::max(top, out.v[i]);
        }
        for (auto& x : out.v) x /= top;
    }
    out.converged = false;
    return out;
}

inline Vector solve_exact(Matrix a, Vector rhs) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) throw Error(ErrorKind::internal, "solve_exact: singular system");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(rhs[col], rhs[pivot]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            const Rational f = a(r, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= a(i, i);
    return rhs;
}

inline std::string describe_blocks(const std::vector<std::vector<std::size_t>>& comps) {
    std::string s;
    for (const auto& c : comps) {
        s += s.empty() ? "{" : ", {";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        s += "}";
    }
    return s;
}

template <class T>
void require_square_nonnegative(const BasicMatrix<T>& m, const char* who) {
    if (!m.square() || m.rows() == 0)
        throw Error(ErrorKind::dimension_mismatch, std::string(who) + ": matrix must be square and non-empty");
    if (!is_nonnegative(m)) throw Error(ErrorKind::precondition_violated, std::string(who) + ": matrix must be non-negative");
}

}  // namespace detail

/// Float-only spectral radius for non-negative matrices; used where many
/// radii are compared and no exact enclosure is needed.
inline double spectral_radius_value(const MatrixD& m, double tol = 1e-13, std::size_t cap = kPowerIterationCap) {
    detail::require_square_nonnegative(m, "spectral_radius_value");
    double best = 0.0;
    for (const auto& comp : detail::strongly_connected_components(m)) {
        if (detail::trivial_component(m, comp)) continue;
        const auto it = detail::iterate_block(detail::submatrix(m, comp), tol, cap);
        best = std::max(best, 0.5 * (it.lo + it.hi));
    }
    return best;
}

inline bool certify_radius_upper(const Matrix& m, const Rational& rho, const Vector& v) {
    if (!m.square() || m.cols() != v.size()) throw Error(ErrorKind::dimension_mismatch, "certify_radius_upper: size mismatch");
    if (!std::all_of(v.begin(), v.end(), [](const Rational& x) { return x > 0; }))
        throw Error(ErrorKind::invalid_argument, "certify_radius_upper: witness must be positive");
    const Vector mv = mul(m, v);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (mv[i] > rho * v[i]) return false;
    return true;
}

inline bool certify_radius_lower(const Matrix& m, const Rational& rho, const Vector& v) {
    if (!m.square() || m.cols() != v.size()) throw Error(ErrorKind::dimension_mismatch, "certify_radius_lower: size mismatch");
    if (rho < 0) throw Error(ErrorKind::invalid_argument, "certify_radius_lower: rho must be non-negative");
    if (!std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; }) ||
        std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }))
        throw Error(ErrorKind::invalid_argument, "certify_radius_lower: witness must be non-negative and non-zero");
    const Vector mv = mul(m, v);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (mv[i] < rho * v[i]) return false;
    return true;
}

inline RadiusEstimate spectral_radius(const Matrix& m, const Rational& tol = default_radius_tolerance()) {
    detail::require_square_nonnegative(m, "spectral_radius");
    if (tol <= 0) throw Error(ErrorKind::invalid_argument, "spectral_radius: tolerance must be positive");
    const std::size_t n = m.rows();
    const MatrixD md = to_double(m);
    const auto comps = detail::strongly_connected_components(m);
    const bool irreducible = comps.size() == 1 && !detail::trivial_component(m, comps[0]);
    // Reducible input pays tol/2 on the upper side, so blocks get the rest.
    const double block_tol = to_double(tol) / (irreducible ? 2.0 : 4.0);

    RadiusEstimate est;
    est.converged = true;
    double float_value = 0.0;
    Rational best_lower = -1;
    Rational best_upper = 0;

    Vector joined(n, Rational(1));
    for (const auto& comp : comps) {
        Rational lower, upper;
        Vector local;
        if (detail::trivial_component(m, comp)) {
            lower = upper = 0;
            local = Vector{Rational(1)};
        } else {
            const auto it = detail::iterate_block(detail::submatrix(md, comp), block_tol, kPowerIterationCap);
            est.iterations += it.iterations;
            est.converged = est.converged && it.converged;
            float_value = std::max(float_value, 0.5 * (it.lo + it.hi));
            local.resize(comp.size());
            for (std::size_t i = 0; i < comp.size(); ++i) local[i] = rationalize(it.v[i]);
            const Vector bv = mul(detail::submatrix(m, comp), local);
            for (std::size_t i = 0; i < comp.size(); ++i) {
                const Rational r = bv[i] / local[i];
                if (i == 0 || r < lower) lower = r;
                if (i == 0 || r > upper) upper = r;
            }
        }
        for (std::size_t i = 0; i < comp.size(); ++i) joined[comp[i]] = local[i];
        if (lower > best_lower) {
            best_lower = lower;
            est.lower_witness.assign(n, Rational(0));
            for (std::size_t i = 0; i < comp.size(); ++i) est.lower_witness[comp[i]] = local[i];
            if (irreducible) est.upper_witness = est.lower_witness;
        }
        best_upper = std::max(best_upper, upper);
    }
    est.lower = best_lower;

    if (irreducible) {
        est.upper = best_upper;
    } else if (certify_radius_upper(m, best_upper, joined)) {
        // blocks decoupled enough for the plain witness
        est.upper = best_upper;
        est.upper_witness = joined;
    } else {
        // u > rho, so (uI - m)^{-1} 1 is a positive vector with m v = u v - 1.
        est.upper = best_upper + tol / 2;
        Matrix shifted(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) shifted(i, j) = (i == j ? est.upper : Rational(0)) - m(i, j);
        est.upper_witness = detail::solve_exact(shifted, Vector(n, Rational(1)));
    }
    if (!certify_radius_upper(m, est.upper, est.upper_witness) || !certify_radius_lower(m, est.lower, est.lower_witness))
        throw Error(ErrorKind::internal, "spectral_radius: enclosure witness failed exact re-check");

    est.converged = est.converged && (est.upper - est.lower <= tol);
    est.value = std::clamp(float_value, to_double(est.lower), to_double(est.upper));
    while (Rational(est.value) < est.lower) est.value = std::nextafter(est.value, std::numeric_limits<double>::infinity());
    while (Rational(est.value) > est.upper) est.value = std::nextafter(est.value, -std::numeric_limits<double>::infinity());
    return est;
}

/// Normalized (sum 1) Perron vector of an irreducible non-negative matrix.
inline Vector perron_vector(const Matrix& m, const Rational& tol = default_radius_tolerance()) {
    detail::require_square_nonnegative(m, "perron_vector");
    const auto comps = detail::strongly_connected_components(m);
    if (comps.size() != 1 || detail::trivial_component(m, comps[0]))
        throw Error(ErrorKind::reducible_matrix,
                    "perron_vector: reducible matrix, normalized eigenvector not unique; blocks " +
                        detail::describe_blocks(comps));
    const MatrixD md = to_double(m);
    const double tol_d = to_double(tol);
    const auto it = detail::iterate_block(md, std::min(tol_d / 4.0, 1e-14), kPowerIterationCap);

    Vector v(it.v.size());
    Rational sum = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = rationalize(it.v[i]);
        sum += v[i];
    }
    for (auto& x : v) x /= sum;

    const double rho = 0.5 * (it.lo + it.hi);
    const VectorD vd = to_double(v);
    const VectorD mv = mul(md, vd);
    double residual = 0.0;
    for (std::size_t i = 0; i < vd.size(); ++i) residual += std::abs(mv[i] - rho * vd[i]);
    if (residual > tol_d)
        throw Error(ErrorKind::internal, "perron_vector: residual " + std::to_string(residual) + " above tolerance");
    return v;
}

/// Upper bounds ||m^(2^k)||^(1/2^k) for k = 0..levels via repeated squaring
/// in log scale.
inline std::vector<double> gelfand_bounds(const MatrixD& m, int levels) {
    if (!m.square()) throw Error(ErrorKind::dimension_mismatch, "gelfand_bounds: matrix must be square");
    std::vector<double> bounds;
    MatrixD current = m;
    double log_scale = 0.0;  // log of the factor removed from current
    double power = 1.0;
    for (int k = 0; k <= levels; ++k) {
        const double norm = one_norm(current);
        if (norm == 0.0) {
            bounds.resize(static_cast<std::size_t>(levels) + 1, 0.0);
            return bounds;
        }
        bounds.push_back(std::exp((log_scale + std::log(norm)) / power));
        log_scale += std::log(norm);
        current = scaled(current, 1.0 / norm);
        current = current * current;
        log_scale *= 2.0;
        power *= 2.0;
    }
    return bounds;
}

}  // namespace entgame

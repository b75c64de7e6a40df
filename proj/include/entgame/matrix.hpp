#pragma once

// Dense row-major matrices over exact rationals (decisions) and doubles
// (eigen-iterations). Vectors are plain std::vectors; `mul(m, v)` treats v
// as a column, `mul(v, m)` as a row.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "entgame/error.hpp"
#include "entgame/rational.hpp"

namespace entgame {

template <class T>
class BasicMatrix {
public:
    BasicMatrix() = default;
    BasicMatrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    BasicMatrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw Error(ErrorKind::dimension_mismatch, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static BasicMatrix from_rows(const std::vector<std::vector<T>>& rows) {
        BasicMatrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.empty() ? 0 : rows.front().size();
        m.data_.reserve(m.rows_ * m.cols_);
        for (const auto& row : rows) {
            if (row.size() != m.cols_) throw Error(ErrorKind::dimension_mismatch, "ragged row list");
            m.data_.insert(m.data_.end(), row.begin(), row.end());
        }
        return m;
    }

    static BasicMatrix identity(std::size_t n) {
        BasicMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    [[nodiscard]] std::vector<T> row_vector(std::size_t i) const {
        auto r = row(i);
        return {r.begin(), r.end()};
    }

    void set_row(std::size_t i, std::span<const T> values) {
        if (values.size() != cols_) throw Error(ErrorKind::dimension_mismatch, "row length mismatch");
        std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
    }

    [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

    bool operator==(const BasicMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = BasicMatrix<Rational>;
using MatrixD = BasicMatrix<double>;
using Vector = std::vector<Rational>;
using VectorD = std::vector<double>;

template <class T>
BasicMatrix<T> mat_mul(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
    if (a.cols() != b.rows())
        throw Error(ErrorKind::dimension_mismatch,
                    "mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    BasicMatrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

template <class T>
BasicMatrix<T> operator*(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
    return mat_mul(a, b);
}

template <class T>
BasicMatrix<T> operator+(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::dimension_mismatch, "matrix sum shape mismatch");
    BasicMatrix<T> c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

template <class T>
BasicMatrix<T> scaled(const BasicMatrix<T>& a, const T& factor) {
    BasicMatrix<T> c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= factor;
    return c;
}

/// Column action m·v.
template <class T>
std::vector<T> mul(const BasicMatrix<T>& m, std::span<const T> v) {
    if (m.cols() != v.size()) throw Error(ErrorKind::dimension_mismatch, "matrix-vector size mismatch");
    std::vector<T> out(m.rows(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        T acc(0);
        auto r = m.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * v[j];
        out[i] = acc;
    }
    return out;
}

template <class T>
std::vector<T> mul(const BasicMatrix<T>& m, const std::vector<T>& v) {
    return mul(m, std::span<const T>(v));
}

/// Row action v·m.
template <class T>
std::vector<T> mul(const std::vector<T>& v, const BasicMatrix<T>& m) {
    if (m.rows() != v.size()) throw Error(ErrorKind::dimension_mismatch, "vector-matrix size mismatch");
    std::vector<T> out(m.cols(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        auto r = m.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) out[j] += v[i] * r[j];
    }
    return out;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::dimension_mismatch, "dot product size mismatch");
    T acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/// Entrywise 1-norm; for non-negative input this is the sum of all entries.
template <class T>
T one_norm(const BasicMatrix<T>& m) {
    T acc(0);
    for (const auto& x : m.data()) acc += x < 0 ? T(-x) : x;
    return acc;
}

template <class T>
T one_norm(const std::vector<T>& v) {
    T acc(0);
    for (const auto& x : v) acc += x < 0 ? T(-x) : x;
    return acc;
}

template <class T>
bool is_nonnegative(const BasicMatrix<T>& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](const T& x) { return x >= 0; });
}

template <class T>
bool is_positive(const BasicMatrix<T>& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](const T& x) { return x > 0; });
}

template <class T>
bool is_zero(const BasicMatrix<T>& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](const T& x) { return x == 0; });
}

inline MatrixD to_double(const Matrix& m) {
    MatrixD d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = to_double(m(i, j));
    return d;
}

inline VectorD to_double(const Vector& v) {
    VectorD d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d[i] = to_double(v[i]);
    return d;
}

inline std::string to_string(const Matrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ",";
            s += to_string(m(i, j));
        }
        s += "]";
    }
    return s + "]";
}

inline std::string to_string(const Vector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

}  // namespace entgame

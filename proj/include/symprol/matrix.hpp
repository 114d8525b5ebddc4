#pragma once

#include "symprol/errors.hpp"
#include "symprol/exec.hpp"
#include "symprol/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symprol {

template <class F>
using Vec = std::vector<F>;

/// Dense row-major matrix over Scalar or GScalar.
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols, F(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = F(1);
        return m;
    }

    static Matrix from_rows(const std::vector<Vec<F>>& rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw MathError("Matrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_columns(const std::vector<Vec<F>>& cols, std::size_t rows)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw MathError("Matrix::from_columns: ragged columns");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return m_rows; }
    std::size_t cols() const { return m_cols; }

    F& operator()(std::size_t i, std::size_t j) { return m_data[i * m_cols + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return m_data[i * m_cols + j]; }

    Vec<F> row(std::size_t i) const
    {
        return Vec<F>(m_data.begin() + static_cast<std::ptrdiff_t>(i * m_cols),
                      m_data.begin() + static_cast<std::ptrdiff_t>((i + 1) * m_cols));
    }

    Vec<F> column(std::size_t j) const
    {
        Vec<F> c(m_rows);
        for (std::size_t i = 0; i < m_rows; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    bool is_zero() const
    {
        for (const F& x : m_data)
            if (!x.is_zero())
                return false;
        return true;
    }

    F trace() const
    {
        F t(0);
        for (std::size_t i = 0; i < std::min(m_rows, m_cols); ++i)
            t += (*this)(i, i);
        return t;
    }

    Matrix transpose() const
    {
        Matrix t(m_cols, m_rows);
        for (std::size_t i = 0; i < m_rows; ++i)
            for (std::size_t j = 0; j < m_cols; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Vec<F> apply(const Vec<F>& v) const
    {
        if (v.size() != m_cols)
            throw MathError("Matrix::apply: size mismatch");
        Vec<F> out(m_rows, F(0));
        for (std::size_t i = 0; i < m_rows; ++i)
            for (std::size_t j = 0; j < m_cols; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero())
                    out[i] += (*this)(i, j) * v[j];
        return out;
    }

    Matrix& operator+=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < m_data.size(); ++k)
            m_data[k] += o.m_data[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < m_data.size(); ++k)
            m_data[k] -= o.m_data[k];
        return *this;
    }
    Matrix& operator*=(const F& s)
    {
        for (F& x : m_data)
            x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
    friend Matrix operator*(const F& s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a) { return a *= F(-1); }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.m_cols != b.m_rows)
            throw MathError("Matrix product: size mismatch");
        Matrix c(a.m_rows, b.m_cols);
        for (std::size_t i = 0; i < a.m_rows; ++i)
            for (std::size_t k = 0; k < a.m_cols; ++k) {
                const F& aik = a(i, k);
                if (aik.is_zero())
                    continue;
                for (std::size_t j = 0; j < b.m_cols; ++j)
                    if (!b(k, j).is_zero())
                        c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.m_rows == b.m_rows && a.m_cols == b.m_cols && a.m_data == b.m_data;
    }

    std::string str() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < m_rows; ++i) {
            out += i ? "; " : "";
            for (std::size_t j = 0; j < m_cols; ++j)
                out += (j ? ", " : "") + (*this)(i, j).str();
        }
        return out + "]";
    }

private:
    void check_same_shape(const Matrix& o) const
    {
        if (m_rows != o.m_rows || m_cols != o.m_cols)
            throw MathError("Matrix: shape mismatch");
    }

    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<F> m_data;
};

template <class F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b)
{
    return a * b - b * a;
}

template <class F>
struct Echelon {
    Matrix<F> reduced;               ///< full reduced row-echelon form (zero rows at bottom)
    std::vector<std::size_t> pivots; ///< pivot column of row r, r < rank
    std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination with the first nonzero entry as pivot, columns
/// scanned left to right. Under Exec::parallel the elimination of the other
/// rows for each pivot runs as an OpenMP loop; each row sees exactly the same
/// sequence of exact updates as in the serial path, so the results coincide.
template <class F>
Echelon<F> rref(Matrix<F> m, Exec exec = Exec::parallel)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const bool go_parallel = exec == Exec::parallel && static_cast<long>(rows * cols) >= parallel_threshold;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c).is_zero())
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
        const F inv = m(r, c).inverse();
        for (std::size_t j = c; j < cols; ++j)
            if (!m(r, j).is_zero())
                m(r, j) *= inv;
        const long n_rows = static_cast<long>(rows);
        const long pivot_row = static_cast<long>(r);
#pragma omp parallel for schedule(dynamic, 4) if (go_parallel)
        for (long i = 0; i < n_rows; ++i) {
            if (i == pivot_row || m(i, c).is_zero())
                continue;
            const F factor = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!m(pivot_row, j).is_zero())
                    m(i, j) -= factor * m(pivot_row, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon<F>{std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m, Exec exec = Exec::parallel)
{
    return rref(m, exec).rank();
}

/// Solves a x = b exactly; empty optional if inconsistent. Free variables are
/// set to zero, so the returned solution is canonical.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& b, Exec exec = Exec::parallel)
{
    if (b.size() != a.rows())
        throw MathError("solve: size mismatch");
    Matrix<F> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const Echelon<F> e = rref(std::move(aug), exec);
    if (!e.pivots.empty() && e.pivots.back() == a.cols())
        return std::nullopt;
    Vec<F> x(a.cols(), F(0));
    for (std::size_t r = 0; r < e.rank(); ++r)
        x[e.pivots[r]] = e.reduced(r, a.cols());
    return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a)
{
    if (a.rows() != a.cols())
        throw MathError("inverse: matrix not square");
    const std::size_t n = a.rows();
    Matrix<F> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = F(1);
    }
    const Echelon<F> e = rref(std::move(aug));
    if (e.rank() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    Matrix<F> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

template <class F>
F determinant(Matrix<F> m)
{
    if (m.rows() != m.cols())
        throw MathError("determinant: matrix not square");
    const std::size_t n = m.rows();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero())
            ++p;
        if (p == n)
            return F(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        const F inv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero())
                continue;
            const F factor = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= factor * m(c, j);
        }
    }
    return det;
}

inline Matrix<GScalar> complexify(const Matrix<Scalar>& m)
{
    Matrix<GScalar> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = GScalar(m(i, j));
    return out;
}

template <class F>
bool is_zero_vector(const Vec<F>& v)
{
    for (const F& x : v)
        if (!x.is_zero())
            return false;
    return true;
}

template <class F>
std::string vector_str(const Vec<F>& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + v[i].str();
    return out + ")";
}

} // namespace symprol

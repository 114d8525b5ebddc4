#pragma once

#include "symprol/matrix.hpp"

#include <optional>
#include <vector>

namespace symprol {

/// Finite-dimensional subspace of F^ambient stored as its reduced
/// row-echelon basis. Two subspaces are equal iff their bases are identical
/// entry for entry.
template <class F>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : m_ambient(ambient), m_basis(0, ambient) {}

    static Subspace span(std::size_t ambient, const std::vector<Vec<F>>& vectors, Exec exec = Exec::parallel)
    {
        return from_matrix(Matrix<F>::from_rows(vectors, ambient), exec);
    }

    static Subspace from_matrix(const Matrix<F>& rows, Exec exec = Exec::parallel)
    {
        Echelon<F> e = rref(rows, exec);
        Subspace s(rows.cols());
        s.m_basis = Matrix<F>(e.rank(), rows.cols());
        for (std::size_t r = 0; r < e.rank(); ++r)
            for (std::size_t j = 0; j < rows.cols(); ++j)
                s.m_basis(r, j) = e.reduced(r, j);
        s.m_pivots = std::move(e.pivots);
        return s;
    }

    static Subspace full(std::size_t ambient) { return from_matrix(Matrix<F>::identity(ambient)); }

    std::size_t ambient() const { return m_ambient; }
    std::size_t dim() const { return m_pivots.size(); }
    bool is_zero() const { return m_pivots.empty(); }
    const Matrix<F>& basis() const { return m_basis; }
    Vec<F> vector(std::size_t i) const { return m_basis.row(i); }
    std::vector<Vec<F>> vectors() const
    {
        std::vector<Vec<F>> out;
        for (std::size_t i = 0; i < dim(); ++i)
            out.push_back(vector(i));
        return out;
    }
    const std::vector<std::size_t>& pivots() const { return m_pivots; }

    /// Normal form of v modulo this subspace: pivot coordinates cleared.
    Vec<F> reduce(Vec<F> v) const
    {
        check_vector(v);
        for (std::size_t r = 0; r < dim(); ++r) {
            const F c = v[m_pivots[r]];
            if (c.is_zero())
                continue;
            for (std::size_t j = 0; j < m_ambient; ++j)
                if (!m_basis(r, j).is_zero())
                    v[j] -= c * m_basis(r, j);
        }
        return v;
    }

    bool contains(const Vec<F>& v) const { return is_zero_vector(reduce(v)); }

    bool contains(const Subspace& o) const
    {
        check_ambient(o);
        for (std::size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.vector(i)))
                return false;
        return true;
    }

    /// Coefficients of v in the canonical basis, if v lies in the subspace.
    std::optional<Vec<F>> coordinates(const Vec<F>& v) const
    {
        if (!contains(v))
            return std::nullopt;
        Vec<F> c(dim());
        for (std::size_t r = 0; r < dim(); ++r)
            c[r] = v[m_pivots[r]];
        return c;
    }

    /// Linear functionals vanishing on the subspace, as a subspace of the dual.
    Subspace annihilator(Exec exec = Exec::parallel) const;

    friend Subspace operator+(const Subspace& a, const Subspace& b)
    {
        a.check_ambient(b);
        Matrix<F> m(a.dim() + b.dim(), a.m_ambient);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.m_ambient; ++j)
                m(i, j) = a.m_basis(i, j);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < a.m_ambient; ++j)
                m(a.dim() + i, j) = b.m_basis(i, j);
        return from_matrix(m);
    }

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.m_ambient == b.m_ambient && a.m_pivots == b.m_pivots && a.m_basis == b.m_basis;
    }

private:
    void check_ambient(const Subspace& o) const
    {
        if (o.m_ambient != m_ambient)
            throw MathError("Subspace: ambient dimension mismatch");
    }
    void check_vector(const Vec<F>& v) const
    {
        if (v.size() != m_ambient)
            throw MathError("Subspace: vector has wrong length");
    }

    std::size_t m_ambient = 0;
    Matrix<F> m_basis;
    std::vector<std::size_t> m_pivots;
};

/// Null space {v : m v = 0} in canonical form; dim = cols - rank.
template <class F>
Subspace<F> kernel(const Matrix<F>& m, Exec exec = Exec::parallel)
{
    const std::size_t cols = m.cols();
    if (m.rows() == 0)
        return Subspace<F>::full(cols);
    const Echelon<F> e = rref(m, exec);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vec<F>> vecs;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        Vec<F> v(cols, F(0));
        v[f] = F(1);
        for (std::size_t r = 0; r < e.rank(); ++r)
            if (!e.reduced(r, f).is_zero())
                v[e.pivots[r]] = -e.reduced(r, f);
        vecs.push_back(std::move(v));
    }
    return Subspace<F>::span(cols, vecs, exec);
}

template <class F>
Subspace<F> Subspace<F>::annihilator(Exec exec) const
{
    if (dim() == 0)
        return Subspace::full(m_ambient);
    return kernel(m_basis, exec);
}

/// a ∩ b computed as the annihilator of ann(a) + ann(b).
template <class F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b, Exec exec = Exec::parallel)
{
    if (a.ambient() != b.ambient())
        throw MathError("Subspace: ambient dimension mismatch");
    return (a.annihilator(exec) + b.annihilator(exec)).annihilator(exec);
}

inline Subspace<GScalar> complexify(const Subspace<Scalar>& s)
{
    return Subspace<GScalar>::from_matrix(complexify(s.basis()));
}

} // namespace symprol

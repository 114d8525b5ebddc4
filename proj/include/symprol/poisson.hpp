#pragma once

#include "symprol/matrix.hpp"
#include "symprol/subspace.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace symprol {

/// V = R^{2n} with basis (p1..pn, q1..qn), index i < n for p_{i+1} and
/// n + i for q_{i+1}. Omega(p_i, q_i) = -1, Omega(q_i, p_i) = +1.
class SymplecticSpace {
public:
    explicit SymplecticSpace(int n);

    int n() const { return m_n; }
    int dim() const { return 2 * m_n; }

    /// Omega(e_i, e_j) on basis vectors.
    int omega(int i, int j) const;
    Matrix<Scalar> omega_matrix() const;

    std::string label(int index) const;
    /// Index of a label such as "p2"; throws ParseError if unknown.
    int index_of(std::string_view label) const;

    int p(int k) const { return k - 1; }     ///< index of p_k, k is 1-based
    int q(int k) const { return m_n + k - 1; } ///< index of q_k, k is 1-based

    friend bool operator==(const SymplecticSpace&, const SymplecticSpace&) = default;

private:
    int m_n;
};

/// Sorted multiset of basis indices.
using Monomial = std::vector<std::uint8_t>;

/// Number of basis monomials of S^k(V) for dim V = 2n.
std::size_t dim_sym(int n, int k);

/// Monomials of S^k(V) in lexicographic order of their sorted index lists.
/// This order fixes the coordinates of every Subspace of S^k(V).
const std::vector<Monomial>& sym_basis(int n, int k);
std::size_t sym_index(int n, const Monomial& m);

std::string monomial_str(const SymplecticSpace& v, const Monomial& m);

/// Homogeneous element of S^k(V). Coefficients are never stored as zero.
/// A zero tensor may carry any degree; arithmetic with zero adopts the
/// degree of the other operand.
template <class F>
class BasicSymTensor {
public:
    using Terms = std::map<Monomial, F>;

    BasicSymTensor(int n, int degree) : m_n(n), m_degree(degree) {}

    static BasicSymTensor generator(int n, int index)
    {
        BasicSymTensor t(n, 1);
        t.m_terms[Monomial{static_cast<std::uint8_t>(index)}] = F(1);
        return t;
    }

    static BasicSymTensor monomial(int n, Monomial m, F coef = F(1))
    {
        std::sort(m.begin(), m.end());
        BasicSymTensor t(n, static_cast<int>(m.size()));
        if (!coef.is_zero())
            t.m_terms[std::move(m)] = std::move(coef);
        return t;
    }

    /// Builds the tensor with the given coordinates in sym_basis(n, k).
    static BasicSymTensor from_coordinates(int n, int k, const Vec<F>& coords)
    {
        const auto& basis = sym_basis(n, k);
        if (coords.size() != basis.size())
            throw MathError("SymTensor::from_coordinates: wrong length");
        BasicSymTensor t(n, k);
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (!coords[i].is_zero())
                t.m_terms[basis[i]] = coords[i];
        return t;
    }

    int n() const { return m_n; }
    int degree() const { return m_degree; }
    bool is_zero() const { return m_terms.empty(); }
    const Terms& terms() const { return m_terms; }

    F coefficient(const Monomial& m) const
    {
        auto it = m_terms.find(m);
        return it == m_terms.end() ? F(0) : it->second;
    }

    /// Coordinates in sym_basis(n, degree()).
    Vec<F> coordinates() const { return coordinates(m_degree); }
    Vec<F> coordinates(int k) const
    {
        Vec<F> c(dim_sym(m_n, k), F(0));
        if (is_zero())
            return c;
        if (k != m_degree)
            throw MathError("SymTensor::coordinates: degree mismatch");
        for (const auto& [m, f] : m_terms)
            c[sym_index(m_n, m)] = f;
        return c;
    }

    void add_term(const Monomial& m, const F& coef)
    {
        if (coef.is_zero())
            return;
        if (m_terms.empty())
            m_degree = static_cast<int>(m.size());
        else if (static_cast<int>(m.size()) != m_degree)
            throw MathError("SymTensor: mixing degrees " + std::to_string(m_degree) + " and " +
                            std::to_string(m.size()));
        auto [it, inserted] = m_terms.emplace(m, coef);
        if (!inserted) {
            it->second += coef;
            if (it->second.is_zero())
                m_terms.erase(it);
        }
    }

    BasicSymTensor& operator+=(const BasicSymTensor& o)
    {
        check_space(o);
        if (is_zero())
            m_degree = o.m_degree;
        for (const auto& [m, f] : o.m_terms)
            add_term(m, f);
        return *this;
    }
    BasicSymTensor& operator-=(const BasicSymTensor& o)
    {
        check_space(o);
        if (is_zero())
            m_degree = o.m_degree;
        for (const auto& [m, f] : o.m_terms)
            add_term(m, -f);
        return *this;
    }
    BasicSymTensor& operator*=(const F& s)
    {
        if (s.is_zero()) {
            m_terms.clear();
            return *this;
        }
        for (auto& [m, f] : m_terms)
            f *= s;
        return *this;
    }

    friend BasicSymTensor operator+(BasicSymTensor a, const BasicSymTensor& b) { return a += b; }
    friend BasicSymTensor operator-(BasicSymTensor a, const BasicSymTensor& b) { return a -= b; }
    friend BasicSymTensor operator*(BasicSymTensor a, const F& s) { return a *= s; }
    friend BasicSymTensor operator*(const F& s, BasicSymTensor a) { return a *= s; }
    friend BasicSymTensor operator-(BasicSymTensor a) { return a *= F(-1); }

    /// Symmetric product (multiplication in S(V)).
    friend BasicSymTensor operator*(const BasicSymTensor& a, const BasicSymTensor& b)
    {
        a.check_space(b);
        BasicSymTensor out(a.m_n, a.m_degree + b.m_degree);
        for (const auto& [ma, fa] : a.m_terms)
            for (const auto& [mb, fb] : b.m_terms) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                std::sort(m.begin(), m.end());
                out.add_term(m, fa * fb);
            }
        return out;
    }

    /// Equality as elements of S(V): zero tensors of any degree are equal.
    friend bool operator==(const BasicSymTensor& a, const BasicSymTensor& b)
    {
        if (a.m_n != b.m_n || a.m_terms != b.m_terms)
            return false;
        return a.is_zero() || a.m_degree == b.m_degree;
    }

    /// Printer grammar, e.g. "2*p1^2 - p1*q1 + 1/2*q2^2"; "0" for zero.
    std::string str() const;

private:
    void check_space(const BasicSymTensor& o) const
    {
        if (o.m_n != m_n)
            throw MathError("SymTensor: different symplectic spaces");
    }

    int m_n;
    int m_degree;
    Terms m_terms;
};

using SymTensor = BasicSymTensor<Scalar>;
using GSymTensor = BasicSymTensor<GScalar>;

GSymTensor complexify(const SymTensor& t);

/// Parses the printer grammar. Coefficients are rationals, optionally
/// followed by '*'; for GSymTensor they may also be parenthesised Gaussian
/// rationals such as "(1+2 i)". Throws ParseError.
SymTensor parse_tensor(const SymplecticSpace& v, std::string_view text);
GSymTensor parse_gtensor(const SymplecticSpace& v, std::string_view text);

/// Omega on degree-1 tensors.
template <class F>
F omega(const SymplecticSpace& v, const BasicSymTensor<F>& a, const BasicSymTensor<F>& b);

/// uv : w -> Omega(u,w) v + Omega(v,w) u, extended linearly.
template <class F>
BasicSymTensor<F> quad_action(const SymplecticSpace& v, const BasicSymTensor<F>& t, const BasicSymTensor<F>& w);

/// [U, W] = sum_{a,b} Omega(u_a, w_b) (U minus u_a)(W minus w_b). Degree-0
/// results (constants) are dropped and returned as a zero tensor of degree 0.
template <class F>
BasicSymTensor<F> poisson_bracket(const SymplecticSpace& v, const BasicSymTensor<F>& a, const BasicSymTensor<F>& b);

/// Monomial-level bracket including the constant term; used by models that
/// keep constants (the key is the empty monomial).
std::map<Monomial, Scalar> poisson_monomials(const SymplecticSpace& v, const Monomial& a, const Monomial& b);

/// Column j is quad_action(t, e_j) in the basis (p1..pn, q1..qn).
template <class F>
Matrix<F> quad_to_matrix(const SymplecticSpace& v, const BasicSymTensor<F>& t);

/// Inverse of quad_to_matrix. Throws MathError unless Omega M + M^T Omega = 0.
SymTensor matrix_to_quad(const SymplecticSpace& v, const Matrix<Scalar>& m);

bool is_symplectic_matrix(const SymplecticSpace& v, const Matrix<Scalar>& m);

/// Span of tensors of a common degree k as a Subspace of S^k(V).
Subspace<Scalar> span_of(const SymplecticSpace& v, int k, const std::vector<SymTensor>& tensors);
Subspace<GScalar> span_of(const SymplecticSpace& v, int k, const std::vector<GSymTensor>& tensors);

std::vector<SymTensor> tensors_of(const SymplecticSpace& v, int k, const Subspace<Scalar>& s);
std::vector<GSymTensor> tensors_of(const SymplecticSpace& v, int k, const Subspace<GScalar>& s);

} // namespace symprol

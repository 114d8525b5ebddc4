#pragma once

#include "symprol/scalar.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>

namespace symprol {

/// Power series in one or two variables truncated at total degree D. Terms of
/// degree above D are dropped by every operation; zero coefficients are never
/// stored. One-variable series use only the first exponent.
class TruncSeries {
public:
    using Exponent = std::array<int, 2>;
    using Terms = std::map<Exponent, Scalar>;

    TruncSeries(int vars, int degree);

    static TruncSeries constant(int vars, int degree, const Scalar& c);
    /// The coordinate function of variable `var` (0 or 1).
    static TruncSeries variable(int vars, int degree, int var);
    static TruncSeries monomial(int vars, int degree, Exponent e, const Scalar& c = Scalar(1));

    int vars() const { return m_vars; }
    int degree() const { return m_degree; }
    const Terms& terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }

    Scalar coefficient(Exponent e) const;
    Scalar constant_term() const { return coefficient({0, 0}); }
    /// Lowest total degree of a nonzero term; -1 for zero.
    int order() const;
    /// Highest total degree of a nonzero term; -1 for zero.
    int max_degree() const;

    /// Adds c x^e; silently dropped above the truncation degree.
    void add_term(Exponent e, const Scalar& c);

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const Scalar& s);

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const Scalar& s) { return a *= s; }
    friend TruncSeries operator*(const Scalar& s, TruncSeries a) { return a *= s; }
    friend TruncSeries operator-(TruncSeries a) { return a *= Scalar(-1); }
    /// Truncated product.
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

    TruncSeries derivative(int var) const;
    /// Drops the constant term.
    TruncSeries without_constant() const;
    /// Only the terms of total degree < d.
    TruncSeries below(int d) const;
    /// Multiplicative inverse up to the truncation degree; throws MathError if
    /// the constant term vanishes.
    TruncSeries inverse() const;

    /// Variable names default to "y" for one variable and "x","y" for two.
    /// Prints "1 + x^2 - 2*x*y", "0" for zero.
    std::string str() const;
    std::string str(const std::string& v0, const std::string& v1) const;

    friend bool operator==(const TruncSeries& a, const TruncSeries& b)
    {
        return a.m_vars == b.m_vars && a.m_terms == b.m_terms;
    }

private:
    void check(const TruncSeries& o) const;

    int m_vars;
    int m_degree;
    Terms m_terms;
};

/// Formal vector field a dx + b dy on the plane with truncated coefficients.
class PlaneVF {
public:
    explicit PlaneVF(int degree);
    PlaneVF(TruncSeries a, TruncSeries b);
    static PlaneVF partial(int degree, int var);

    const TruncSeries& a() const { return m_a; }
    const TruncSeries& b() const { return m_b; }
    int degree() const { return m_a.degree(); }
    bool is_zero() const { return m_a.is_zero() && m_b.is_zero(); }

    /// Value at the origin.
    std::pair<Scalar, Scalar> at_origin() const { return {m_a.constant_term(), m_b.constant_term()}; }
    /// Lowest degree of a nonzero coefficient; -1 for zero.
    int order() const;

    /// X(f) = a df/dx + b df/dy.
    TruncSeries apply(const TruncSeries& f) const;
    /// div(rho X) for a density rho; zero up to the truncation degree minus
    /// one means X preserves rho dx^dy.
    TruncSeries divergence(const TruncSeries& rho) const;

    PlaneVF& operator+=(const PlaneVF& o);
    PlaneVF& operator-=(const PlaneVF& o);
    PlaneVF& operator*=(const Scalar& s);
    friend PlaneVF operator+(PlaneVF x, const PlaneVF& y) { return x += y; }
    friend PlaneVF operator-(PlaneVF x, const PlaneVF& y) { return x -= y; }
    friend PlaneVF operator*(PlaneVF x, const Scalar& s) { return x *= s; }
    friend PlaneVF operator*(const Scalar& s, PlaneVF x) { return x *= s; }

    /// [X, Y]^i = X(Y^i) - Y(X^i).
    friend PlaneVF bracket(const PlaneVF& x, const PlaneVF& y);

    /// "(1 + x^2 - y^2)*Dx + 2*x*y*Dy".
    std::string str() const;
    std::string str(const std::string& v0, const std::string& v1) const;

    friend bool operator==(const PlaneVF&, const PlaneVF&) = default;

private:
    TruncSeries m_a;
    TruncSeries m_b;
};

} // namespace symprol

#include "symprol/series.hpp"

#include "symprol/errors.hpp"

namespace symprol {

TruncSeries::TruncSeries(int vars, int degree) : m_vars(vars), m_degree(degree)
{
    if (vars != 1 && vars != 2)
        throw MathError("TruncSeries: 1 or 2 variables");
    if (degree < 0)
        throw MathError("TruncSeries: negative truncation degree");
}

TruncSeries TruncSeries::constant(int vars, int degree, const Scalar& c)
{
    return monomial(vars, degree, {0, 0}, c);
}

TruncSeries TruncSeries::variable(int vars, int degree, int var)
{
    if (var < 0 || var >= vars)
        throw MathError("TruncSeries::variable: index out of range");
    Exponent e{0, 0};
    e[static_cast<std::size_t>(var)] = 1;
    return monomial(vars, degree, e);
}

TruncSeries TruncSeries::monomial(int vars, int degree, Exponent e, const Scalar& c)
{
    TruncSeries s(vars, degree);
    s.add_term(e, c);
    return s;
}

Scalar TruncSeries::coefficient(Exponent e) const
{
    auto it = m_terms.find(e);
    return it == m_terms.end() ? Scalar(0) : it->second;
}

int TruncSeries::order() const
{
    int best = -1;
    for (const auto& [e, c] : m_terms)
        if (best < 0 || e[0] + e[1] < best)
            best = e[0] + e[1];
    return best;
}

int TruncSeries::max_degree() const
{
    int best = -1;
    for (const auto& [e, c] : m_terms)
        best = std::max(best, e[0] + e[1]);
    return best;
}

void TruncSeries::add_term(Exponent e, const Scalar& c)
{
    if (e[0] < 0 || e[1] < 0 || (m_vars == 1 && e[1] != 0))
        throw MathError("TruncSeries: bad exponent");
    if (c.is_zero() || e[0] + e[1] > m_degree)
        return;
    auto [it, inserted] = m_terms.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            m_terms.erase(it);
    }
}

void TruncSeries::check(const TruncSeries& o) const
{
    if (o.m_vars != m_vars)
        throw MathError("TruncSeries: variable count mismatch");
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o)
{
    check(o);
    m_degree = std::min(m_degree, o.m_degree);
    for (auto it = m_terms.begin(); it != m_terms.end();)
        it = it->first[0] + it->first[1] > m_degree ? m_terms.erase(it) : std::next(it);
    for (const auto& [e, c] : o.m_terms)
        add_term(e, c);
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o)
{
    return *this += -o;
}

TruncSeries& TruncSeries::operator*=(const Scalar& s)
{
    if (s.is_zero()) {
        m_terms.clear();
        return *this;
    }
    for (auto& [e, c] : m_terms)
        c *= s;
    return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
{
    a.check(b);
    TruncSeries out(a.m_vars, std::min(a.m_degree, b.m_degree));
    for (const auto& [ea, ca] : a.m_terms)
        for (const auto& [eb, cb] : b.m_terms)
            out.add_term({ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
    return out;
}

TruncSeries TruncSeries::derivative(int var) const
{
    if (var < 0 || var >= m_vars)
        throw MathError("TruncSeries::derivative: index out of range");
    const auto v = static_cast<std::size_t>(var);
    TruncSeries out(m_vars, m_degree);
    for (const auto& [e, c] : m_terms) {
        if (e[v] == 0)
            continue;
        Exponent d = e;
        d[v] -= 1;
        out.add_term(d, c * Scalar(e[v]));
    }
    return out;
}

TruncSeries TruncSeries::without_constant() const
{
    TruncSeries out = *this;
    out.m_terms.erase({0, 0});
    return out;
}

TruncSeries TruncSeries::below(int d) const
{
    TruncSeries out(m_vars, m_degree);
    for (const auto& [e, c] : m_terms)
        if (e[0] + e[1] < d)
            out.m_terms.emplace(e, c);
    return out;
}

TruncSeries TruncSeries::inverse() const
{
    const Scalar c0 = constant_term();
    if (c0.is_zero())
        throw MathError("TruncSeries::inverse: zero constant term");
    // 1/(c0 (1 + u)) = (1/c0) sum (-u)^j
    const TruncSeries u = without_constant() * c0.inverse();
    TruncSeries term = constant(m_vars, m_degree, Scalar(1));
    TruncSeries sum = term;
    for (int j = 1; j <= m_degree; ++j) {
        term = term * (-u);
        sum += term;
    }
    return sum * c0.inverse();
}

namespace {

std::string monomial_text(const TruncSeries::Exponent& e, const std::string& v0, const std::string& v1)
{
    std::string out;
    auto put = [&](const std::string& v, int p) {
        if (p == 0)
            return;
        if (!out.empty())
            out += "*";
        out += v;
        if (p > 1)
            out += "^" + std::to_string(p);
    };
    put(v0, e[0]);
    put(v1, e[1]);
    return out;
}

} // namespace

std::string TruncSeries::str() const
{
    return m_vars == 1 ? str("y", "") : str("x", "y");
}

std::string TruncSeries::str(const std::string& v0, const std::string& v1) const
{
    // graded order: by total degree, then lexicographically with x first
    std::map<std::pair<int, Exponent>, Scalar> ordered;
    for (const auto& [e, c] : m_terms)
        ordered.emplace(std::make_pair(e[0] + e[1], Exponent{-e[0], e[1]}), c);
    std::string out;
    for (const auto& [key, c] : ordered) {
        const Exponent e{-key.second[0], key.second[1]};
        const bool neg = c.sign() < 0;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        const Scalar a = c.abs();
        const std::string m = monomial_text(e, v0, v1);
        if (m.empty())
            out += a.str();
        else if (a.is_one())
            out += m;
        else
            out += a.str() + "*" + m;
    }
    return out.empty() ? "0" : out;
}

PlaneVF::PlaneVF(int degree) : m_a(2, degree), m_b(2, degree) {}

PlaneVF::PlaneVF(TruncSeries a, TruncSeries b) : m_a(std::move(a)), m_b(std::move(b))
{
    if (m_a.vars() != 2 || m_b.vars() != 2)
        throw MathError("PlaneVF: coefficients must be series in two variables");
}

PlaneVF PlaneVF::partial(int degree, int var)
{
    PlaneVF v(degree);
    (var == 0 ? v.m_a : v.m_b) = TruncSeries::constant(2, degree, Scalar(1));
    return v;
}

int PlaneVF::order() const
{
    const int a = m_a.order();
    const int b = m_b.order();
    if (a < 0)
        return b;
    if (b < 0)
        return a;
    return std::min(a, b);
}

TruncSeries PlaneVF::apply(const TruncSeries& f) const
{
    return m_a * f.derivative(0) + m_b * f.derivative(1);
}

TruncSeries PlaneVF::divergence(const TruncSeries& rho) const
{
    return (rho * m_a).derivative(0) + (rho * m_b).derivative(1);
}

PlaneVF& PlaneVF::operator+=(const PlaneVF& o)
{
    m_a += o.m_a;
    m_b += o.m_b;
    return *this;
}

PlaneVF& PlaneVF::operator-=(const PlaneVF& o)
{
    m_a -= o.m_a;
    m_b -= o.m_b;
    return *this;
}

PlaneVF& PlaneVF::operator*=(const Scalar& s)
{
    m_a *= s;
    m_b *= s;
    return *this;
}

PlaneVF bracket(const PlaneVF& x, const PlaneVF& y)
{
    return PlaneVF(x.apply(y.m_a) - y.apply(x.m_a), x.apply(y.m_b) - y.apply(x.m_b));
}

std::string PlaneVF::str() const
{
    return str("x", "y");
}

std::string PlaneVF::str(const std::string& v0, const std::string& v1) const
{
    std::string out;
    auto part = [&](const TruncSeries& c, const std::string& d) {
        if (c.is_zero())
            return;
        if (!out.empty())
            out += " + ";
        const bool single = c.terms().size() == 1;
        const std::string s = c.str(v0, v1);
        if (single && s == "1")
            out += d;
        else if (single && s == "-1")
            out += "-" + d;
        else if (single)
            out += s + "*" + d;
        else
            out += "(" + s + ")*" + d;
    };
    part(m_a, "D" + v0);
    part(m_b, "D" + v1);
    return out.empty() ? "0" : out;
}

} // namespace symprol

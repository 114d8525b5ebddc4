#include "symprol/poisson.hpp"

#include <cctype>
#include <mutex>

namespace symprol {

SymplecticSpace::SymplecticSpace(int n) : m_n(n)
{
    if (n < 1 || n > 60)
        throw InputError("SymplecticSpace: half-dimension must be in [1, 60]");
}

int SymplecticSpace::omega(int i, int j) const
{
    if (i < m_n && j == i + m_n)
        return -1;
    if (j < m_n && i == j + m_n)
        return 1;
    return 0;
}

Matrix<Scalar> SymplecticSpace::omega_matrix() const
{
    Matrix<Scalar> m(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            m(i, j) = Scalar(omega(i, j));
    return m;
}

std::string SymplecticSpace::label(int index) const
{
    if (index < 0 || index >= dim())
        throw MathError("SymplecticSpace::label: index out of range");
    return (index < m_n ? "p" : "q") + std::to_string(index % m_n + 1);
}

int SymplecticSpace::index_of(std::string_view label) const
{
    if (label.size() < 2 || (label[0] != 'p' && label[0] != 'q'))
        throw ParseError("unknown basis label '" + std::string(label) + "'");
    int k = 0;
    for (char c : label.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("unknown basis label '" + std::string(label) + "'");
        k = k * 10 + (c - '0');
        if (k > m_n)
            break;
    }
    if (k < 1 || k > m_n)
        throw ParseError("basis label '" + std::string(label) + "' out of range for n=" + std::to_string(m_n));
    return label[0] == 'p' ? p(k) : q(k);
}

std::size_t dim_sym(int n, int k)
{
    // binomial(2n + k - 1, k)
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(2 * n + i - 1) / static_cast<std::size_t>(i);
    return r;
}

namespace {

void enumerate(int dim, int k, int start, Monomial& cur, std::vector<Monomial>& out)
{
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < dim; ++i) {
        cur.push_back(static_cast<std::uint8_t>(i));
        enumerate(dim, k, i, cur, out);
        cur.pop_back();
    }
}

} // namespace

const std::vector<Monomial>& sym_basis(int n, int k)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<Monomial>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({n, k});
    if (it != cache.end())
        return it->second;
    std::vector<Monomial> out;
    Monomial cur;
    if (k >= 0)
        enumerate(2 * n, k, 0, cur, out);
    return cache.emplace(std::make_pair(n, k), std::move(out)).first->second;
}

std::size_t sym_index(int n, const Monomial& m)
{
    const auto& basis = sym_basis(n, static_cast<int>(m.size()));
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m)
        throw MathError("sym_index: monomial not in basis");
    return static_cast<std::size_t>(it - basis.begin());
}

std::string monomial_str(const SymplecticSpace& v, const Monomial& m)
{
    std::string out;
    std::size_t i = 0;
    while (i < m.size()) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i])
            ++j;
        if (!out.empty())
            out += "*";
        out += v.label(m[i]);
        if (j - i > 1)
            out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

namespace {

bool negative_real(const Scalar& s) { return s.sign() < 0; }
bool negative_real(const GScalar& s) { return s.is_real() && s.re().sign() < 0; }

} // namespace

template <class F>
std::string BasicSymTensor<F>::str() const
{
    if (m_terms.empty())
        return "0";
    const SymplecticSpace v(m_n);
    std::string out;
    bool first = true;
    for (const auto& [m, coef] : m_terms) {
        F c = coef;
        const bool neg = negative_real(c);
        if (neg)
            c = -c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        if (!c.is_one())
            out += coefficient_text(c) + "*";
        out += monomial_str(v, m);
    }
    return out;
}

template class BasicSymTensor<Scalar>;
template class BasicSymTensor<GScalar>;

GSymTensor complexify(const SymTensor& t)
{
    GSymTensor out(t.n(), t.degree());
    for (const auto& [m, c] : t.terms())
        out.add_term(m, GScalar(c));
    return out;
}

namespace {

class TensorParser {
public:
    TensorParser(const SymplecticSpace& v, std::string_view text) : m_v(v), m_text(text) {}

    template <class F>
    BasicSymTensor<F> parse(F (*parse_coef)(std::string_view))
    {
        BasicSymTensor<F> out(m_v.n(), 0);
        skip_ws();
        if (at_end())
            fail("empty tensor");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++m_pos;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;

            bool has_coef = false;
            F coef(1);
            if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '(')) {
                coef = parse_coef(read_coefficient());
                has_coef = true;
                skip_ws();
                if (!at_end() && peek() == '*') {
                    ++m_pos;
                    skip_ws();
                }
            }
            Monomial mono;
            while (!at_end() && (peek() == 'p' || peek() == 'q')) {
                const std::size_t start = m_pos++;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
                    ++m_pos;
                const int index = m_v.index_of(m_text.substr(start, m_pos - start));
                int power = 1;
                skip_ws();
                if (!at_end() && peek() == '^') {
                    ++m_pos;
                    skip_ws();
                    const std::size_t ps = m_pos;
                    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
                        ++m_pos;
                    if (ps == m_pos)
                        fail("expected exponent after '^'");
                    power = std::stoi(std::string(m_text.substr(ps, m_pos - ps)));
                    if (power < 1 || power > 64)
                        fail("exponent out of range");
                    skip_ws();
                }
                for (int k = 0; k < power; ++k)
                    mono.push_back(static_cast<std::uint8_t>(index));
                if (!at_end() && peek() == '*') {
                    ++m_pos;
                    skip_ws();
                    if (at_end() || (peek() != 'p' && peek() != 'q'))
                        fail("expected a basis label after '*'");
                }
            }
            if (mono.empty()) {
                if (!has_coef)
                    fail("expected a term");
                if (!coef.is_zero())
                    fail("nonzero constant term (constants are not tensors of positive degree)");
                continue;
            }
            std::sort(mono.begin(), mono.end());
            if (sign < 0)
                coef = -coef;
            if (!out.is_zero() && static_cast<int>(mono.size()) != out.degree())
                fail("terms of different degrees");
            out.add_term(mono, coef);
            skip_ws();
        }
        return out;
    }

private:
    std::string read_coefficient()
    {
        const std::size_t start = m_pos;
        if (peek() == '(') {
            const std::size_t close = m_text.find(')', m_pos);
            if (close == std::string_view::npos)
                fail("unbalanced '('");
            m_pos = close + 1;
            return std::string(m_text.substr(start, m_pos - start));
        }
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
            ++m_pos;
        if (!at_end() && peek() == '/') {
            ++m_pos;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
                ++m_pos;
        }
        return std::string(m_text.substr(start, m_pos - start));
    }

    char peek() const { return m_text[m_pos]; }
    bool at_end() const { return m_pos >= m_text.size(); }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            ++m_pos;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("tensor '" + std::string(m_text) + "': " + what + " at position " + std::to_string(m_pos));
    }

    const SymplecticSpace& m_v;
    std::string_view m_text;
    std::size_t m_pos = 0;
};

Scalar parse_real_coef(std::string_view s)
{
    if (!s.empty() && s.front() == '(') {
        GScalar g = GScalar::parse(s);
        if (!g.is_real())
            throw ParseError("complex coefficient in a real tensor: " + std::string(s));
        return g.re();
    }
    return Scalar::parse(s);
}

GScalar parse_complex_coef(std::string_view s)
{
    return GScalar::parse(s);
}

} // namespace

SymTensor parse_tensor(const SymplecticSpace& v, std::string_view text)
{
    return TensorParser(v, text).parse<Scalar>(&parse_real_coef);
}

GSymTensor parse_gtensor(const SymplecticSpace& v, std::string_view text)
{
    return TensorParser(v, text).parse<GScalar>(&parse_complex_coef);
}

template <class F>
F omega(const SymplecticSpace& v, const BasicSymTensor<F>& a, const BasicSymTensor<F>& b)
{
    if ((!a.is_zero() && a.degree() != 1) || (!b.is_zero() && b.degree() != 1))
        throw MathError("omega: arguments must have degree 1");
    F out(0);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            const int w = v.omega(ma[0], mb[0]);
            if (w != 0)
                out += ca * cb * F(w);
        }
    return out;
}

template <class F>
BasicSymTensor<F> quad_action(const SymplecticSpace& v, const BasicSymTensor<F>& t, const BasicSymTensor<F>& w)
{
    if ((!t.is_zero() && t.degree() != 2) || (!w.is_zero() && w.degree() != 1))
        throw MathError("quad_action: expects degrees 2 and 1");
    BasicSymTensor<F> out(v.n(), 1);
    for (const auto& [mt, ct] : t.terms()) {
        const int u = mt[0];
        const int x = mt[1];
        for (const auto& [mw, cw] : w.terms()) {
            const int j = mw[0];
            if (const int a = v.omega(u, j); a != 0)
                out.add_term(Monomial{static_cast<std::uint8_t>(x)}, ct * cw * F(a));
            if (const int b = v.omega(x, j); b != 0)
                out.add_term(Monomial{static_cast<std::uint8_t>(u)}, ct * cw * F(b));
        }
    }
    return out;
}

std::map<Monomial, Scalar> poisson_monomials(const SymplecticSpace& v, const Monomial& a, const Monomial& b)
{
    std::map<Monomial, Scalar> out;
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t i2 = i;
        while (i2 < a.size() && a[i2] == a[i])
            ++i2;
        std::size_t j = 0;
        while (j < b.size()) {
            std::size_t j2 = j;
            while (j2 < b.size() && b[j2] == b[j])
                ++j2;
            const int w = v.omega(a[i], b[j]);
            if (w != 0) {
                Monomial m;
                m.reserve(a.size() + b.size() - 2);
                m.insert(m.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
                m.insert(m.end(), a.begin() + static_cast<std::ptrdiff_t>(i + 1), a.end());
                m.insert(m.end(), b.begin(), b.begin() + static_cast<std::ptrdiff_t>(j));
                m.insert(m.end(), b.begin() + static_cast<std::ptrdiff_t>(j + 1), b.end());
                std::sort(m.begin(), m.end());
                const Scalar c(static_cast<long>(w) * static_cast<long>(i2 - i) * static_cast<long>(j2 - j));
                auto [it, inserted] = out.emplace(std::move(m), c);
                if (!inserted) {
                    it->second += c;
                    if (it->second.is_zero())
                        out.erase(it);
                }
            }
            j = j2;
        }
        i = i2;
    }
    return out;
}

template <class F>
BasicSymTensor<F> poisson_bracket(const SymplecticSpace& v, const BasicSymTensor<F>& a, const BasicSymTensor<F>& b)
{
    if (a.n() != v.n() || b.n() != v.n())
        throw MathError("poisson_bracket: tensors from a different space");
    const int degree = std::max(0, a.degree() + b.degree() - 2);
    BasicSymTensor<F> out(v.n(), degree);
    if (degree == 0)
        return out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            for (const auto& [m, c] : poisson_monomials(v, ma, mb))
                out.add_term(m, ca * cb * F(c));
    return out;
}

template <class F>
Matrix<F> quad_to_matrix(const SymplecticSpace& v, const BasicSymTensor<F>& t)
{
    const int d = v.dim();
    Matrix<F> m(d, d);
    for (int j = 0; j < d; ++j) {
        const BasicSymTensor<F> img = quad_action(v, t, BasicSymTensor<F>::generator(v.n(), j));
        for (const auto& [mono, c] : img.terms())
            m(mono[0], j) = c;
    }
    return m;
}

bool is_symplectic_matrix(const SymplecticSpace& v, const Matrix<Scalar>& m)
{
    if (m.rows() != static_cast<std::size_t>(v.dim()) || m.cols() != static_cast<std::size_t>(v.dim()))
        return false;
    const Matrix<Scalar> om = v.omega_matrix();
    return (om * m + m.transpose() * om).is_zero();
}

SymTensor matrix_to_quad(const SymplecticSpace& v, const Matrix<Scalar>& m)
{
    if (!is_symplectic_matrix(v, m))
        throw MathError("matrix_to_quad: matrix is not in sp(V)");
    const auto& basis = sym_basis(v.n(), 2);
    const std::size_t d = static_cast<std::size_t>(v.dim());
    std::vector<Vec<Scalar>> cols;
    for (const Monomial& mono : basis) {
        const Matrix<Scalar> mk = quad_to_matrix(v, SymTensor::monomial(v.n(), mono));
        Vec<Scalar> c;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                c.push_back(mk(i, j));
        cols.push_back(std::move(c));
    }
    Vec<Scalar> rhs;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            rhs.push_back(m(i, j));
    const auto x = solve(Matrix<Scalar>::from_columns(cols, d * d), rhs, Exec::serial);
    if (!x)
        throw MathError("matrix_to_quad: no preimage (internal inconsistency)");
    return SymTensor::from_coordinates(v.n(), 2, *x);
}

namespace {

template <class F>
Subspace<F> span_impl(const SymplecticSpace& v, int k, const std::vector<BasicSymTensor<F>>& tensors)
{
    std::vector<Vec<F>> rows;
    for (const auto& t : tensors) {
        if (t.n() != v.n())
            throw MathError("span_of: tensor from a different space");
        rows.push_back(t.coordinates(k));
    }
    return Subspace<F>::span(dim_sym(v.n(), k), rows);
}

template <class F>
std::vector<BasicSymTensor<F>> tensors_impl(const SymplecticSpace& v, int k, const Subspace<F>& s)
{
    std::vector<BasicSymTensor<F>> out;
    for (std::size_t i = 0; i < s.dim(); ++i)
        out.push_back(BasicSymTensor<F>::from_coordinates(v.n(), k, s.vector(i)));
    return out;
}

} // namespace

Subspace<Scalar> span_of(const SymplecticSpace& v, int k, const std::vector<SymTensor>& tensors)
{
    return span_impl(v, k, tensors);
}

Subspace<GScalar> span_of(const SymplecticSpace& v, int k, const std::vector<GSymTensor>& tensors)
{
    return span_impl(v, k, tensors);
}

std::vector<SymTensor> tensors_of(const SymplecticSpace& v, int k, const Subspace<Scalar>& s)
{
    return tensors_impl(v, k, s);
}

std::vector<GSymTensor> tensors_of(const SymplecticSpace& v, int k, const Subspace<GScalar>& s)
{
    return tensors_impl(v, k, s);
}

template Scalar omega(const SymplecticSpace&, const SymTensor&, const SymTensor&);
template GScalar omega(const SymplecticSpace&, const GSymTensor&, const GSymTensor&);
template SymTensor quad_action(const SymplecticSpace&, const SymTensor&, const SymTensor&);
template GSymTensor quad_action(const SymplecticSpace&, const GSymTensor&, const GSymTensor&);
template SymTensor poisson_bracket(const SymplecticSpace&, const SymTensor&, const SymTensor&);
template GSymTensor poisson_bracket(const SymplecticSpace&, const GSymTensor&, const GSymTensor&);
template Matrix<Scalar> quad_to_matrix(const SymplecticSpace&, const SymTensor&);
template Matrix<GScalar> quad_to_matrix(const SymplecticSpace&, const GSymTensor&);

} // namespace symprol

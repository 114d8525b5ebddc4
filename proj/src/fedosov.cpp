#include "symprol/fedosov.hpp"

#include "symprol/errors.hpp"

#include <cctype>
#include <sstream>

namespace symprol {

Vec<Scalar> unit(std::size_t dim, std::size_t i)
{
    Vec<Scalar> v(dim);
    v.at(i) = Scalar(1);
    return v;
}

Scalar SymplecticLieAlgebra::w(const Vec<Scalar>& x, const Vec<Scalar>& y) const
{
    Scalar s(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (!y[j].is_zero() && !omega(i, j).is_zero())
                s += x[i] * omega(i, j) * y[j];
    }
    return s;
}

// --- text format -----------------------------------------------------------

namespace {

std::string strip(std::string_view s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += c;
    return out;
}

class LineParser {
public:
    LineParser(std::string text, std::size_t line) : m_s(std::move(text)), m_line(line) {}

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("line " + std::to_string(m_line) + ": " + what);
    }

    bool done() const { return m_pos >= m_s.size(); }
    char peek() const { return done() ? '\0' : m_s[m_pos]; }
    void expect(char c)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++m_pos;
    }

    std::size_t label(std::size_t dim)
    {
        expect('e');
        const std::size_t start = m_pos;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            ++m_pos;
        if (start == m_pos)
            fail("expected a basis label e<k>");
        const std::size_t k = std::stoul(m_s.substr(start, m_pos - start));
        if (k < 1 || k > dim)
            fail("label e" + std::to_string(k) + " out of range 1.." + std::to_string(dim));
        return k - 1;
    }

    std::optional<Scalar> number()
    {
        const std::size_t start = m_pos;
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')
            ++m_pos;
        if (start == m_pos)
            return std::nullopt;
        try {
            return Scalar::parse(m_s.substr(start, m_pos - start));
        } catch (const ParseError&) {
            fail("bad rational '" + m_s.substr(start, m_pos - start) + "'");
        }
    }

    Scalar signed_number()
    {
        Scalar sign(1);
        if (peek() == '-' || peek() == '+') {
            sign = peek() == '-' ? Scalar(-1) : Scalar(1);
            ++m_pos;
        }
        auto n = number();
        if (!n)
            fail("expected a rational");
        return sign * *n;
    }

    /// Sum of [rational][*]e<k> terms, or "0".
    Vec<Scalar> combination(std::size_t dim)
    {
        Vec<Scalar> v(dim);
        if (m_s.substr(m_pos) == "0") {
            m_pos = m_s.size();
            return v;
        }
        bool first = true;
        while (!done()) {
            Scalar sign(1);
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? Scalar(-1) : Scalar(1);
                ++m_pos;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Scalar c = number().value_or(Scalar(1));
            if (peek() == '*')
                ++m_pos;
            v[label(dim)] += sign * c;
            first = false;
        }
        if (first)
            fail("empty right-hand side");
        return v;
    }

private:
    std::string m_s;
    std::size_t m_line;
    std::size_t m_pos = 0;
};

} // namespace

SymplecticLieAlgebra parse_symplectic_algebra(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> dim;
    SymplecticLieAlgebra out;
    std::vector<bool> bracket_seen;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream words(raw);
        std::string head;
        if (!(words >> head))
            continue;
        if (head == "name") {
            std::string rest;
            std::getline(words, rest);
            const auto b = rest.find_first_not_of(" \t");
            out.name = b == std::string::npos ? "" : rest.substr(b);
            continue;
        }
        if (head == "dim") {
            if (dim)
                throw ParseError("line " + std::to_string(line_no) + ": dim given twice");
            long n = 0;
            std::string extra;
            if (!(words >> n) || n < 1 || (words >> extra))
                throw ParseError("line " + std::to_string(line_no) + ": expected 'dim <positive integer>'");
            dim = static_cast<std::size_t>(n);
            std::vector<std::string> labels;
            for (std::size_t i = 1; i <= *dim; ++i)
                labels.push_back("e" + std::to_string(i));
            out.g = LieAlgebra(labels);
            out.omega = Matrix<Scalar>(*dim, *dim);
            bracket_seen.assign(*dim * *dim, false);
            continue;
        }
        const std::string s = strip(raw);
        LineParser p(s, line_no);
        if (!dim)
            p.fail("'dim' must come first");
        const std::size_t n = *dim;
        if (s[0] == '[') {
            p.expect('[');
            const auto i = p.label(n);
            p.expect(',');
            const auto j = p.label(n);
            p.expect(']');
            p.expect('=');
            const auto v = p.combination(n);
            if (i == j)
                p.fail("[x,x] must not be given");
            if (bracket_seen[i * n + j])
                p.fail("bracket given twice");
            bracket_seen[i * n + j] = bracket_seen[j * n + i] = true;
            out.g.set_bracket(i, j, v);
        } else if (s[0] == 'w') {
            p.expect('w');
            p.expect('(');
            const auto i = p.label(n);
            p.expect(',');
            const auto j = p.label(n);
            p.expect(')');
            p.expect('=');
            const Scalar c = p.signed_number();
            if (!p.done())
                p.fail("trailing text");
            if (i == j && !c.is_zero())
                p.fail("w(x,x) must vanish");
            out.omega(i, j) = c;
            out.omega(j, i) = -c;
        } else {
            p.fail("expected 'name', 'dim', '[ei,ej] = ...' or 'w(ei,ej) = ...'");
        }
    }
    if (!dim)
        throw ParseError("missing 'dim'");
    return out;
}

std::string format_symplectic_algebra(const SymplecticLieAlgebra& a)
{
    std::string out;
    if (!a.name.empty())
        out += "name " + a.name + "\n";
    out += "dim " + std::to_string(a.dim()) + "\n";
    out += a.g.table_str();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            if (!a.omega(i, j).is_zero())
                out += "w(" + a.g.label(i) + "," + a.g.label(j) + ") = " + a.omega(i, j).str() + "\n";
    return out;
}

// --- symplectic check ------------------------------------------------------

std::string SymplecticCheck::str() const
{
    auto triple = [](const std::array<std::size_t, 3>& t) {
        return "(e" + std::to_string(t[0] + 1) + ",e" + std::to_string(t[1] + 1) + ",e" + std::to_string(t[2] + 1) +
               ")";
    };
    std::string out;
    auto add = [&](const std::string& s) { out += (out.empty() ? "" : "; ") + s; };
    if (!antisymmetric)
        add("form not antisymmetric");
    if (!nondegenerate)
        add("form degenerate");
    if (jacobi_failure)
        add("Jacobi fails at " + triple(*jacobi_failure));
    if (cocycle_failure)
        add("not a cocycle at " + triple(*cocycle_failure));
    return out.empty() ? "valid" : out;
}

namespace {

template <std::size_t K>
std::vector<std::array<std::size_t, K>> index_tuples(std::size_t n, bool strictly_increasing)
{
    std::vector<std::array<std::size_t, K>> out;
    std::array<std::size_t, K> t{};
    auto rec = [&](auto& self, std::size_t pos, std::size_t from) -> void {
        if (pos == K) {
            out.push_back(t);
            return;
        }
        for (std::size_t i = strictly_increasing ? from : 0; i < n; ++i) {
            t[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// First tuple for which `bad` holds, scanned in parallel, reported in order.
template <std::size_t K, class Bad>
std::optional<std::array<std::size_t, K>> first_failure(const std::vector<std::array<std::size_t, K>>& tuples,
                                                        Bad bad, Exec exec)
{
    std::vector<char> flags(tuples.size(), 0);
    const long count = static_cast<long>(tuples.size());
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
    for (long t = 0; t < count; ++t)
        flags[static_cast<std::size_t>(t)] = bad(tuples[static_cast<std::size_t>(t)]) ? 1 : 0;
    for (std::size_t t = 0; t < tuples.size(); ++t)
        if (flags[t])
            return tuples[t];
    return std::nullopt;
}

} // namespace

SymplecticCheck check_symplectic(const SymplecticLieAlgebra& a, Exec exec)
{
    SymplecticCheck out;
    const std::size_t n = a.dim();
    if (a.omega.rows() != n || a.omega.cols() != n)
        throw InputError("symplectic form has the wrong size");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (a.omega(i, j) != -a.omega(j, i))
                out.antisymmetric = false;
    out.nondegenerate = determinant(a.omega) != Scalar(0);
    out.jacobi_failure = a.g.jacobi_violation(exec);
    out.cocycle_failure = first_failure(
        index_tuples<3>(n, true),
        [&](const std::array<std::size_t, 3>& t) {
            const auto x = unit(n, t[0]), y = unit(n, t[1]), z = unit(n, t[2]);
            return !(a.w(a.g.bracket(x, y), z) + a.w(a.g.bracket(y, z), x) + a.w(a.g.bracket(z, x), y)).is_zero();
        },
        exec);
    return out;
}

// --- products ---------------------------------------------------------------

Product::Product(std::size_t dim) : m_dim(dim), m_table(dim * dim, Vec<Scalar>(dim)) {}

Vec<Scalar> Product::operator()(const Vec<Scalar>& x, const Vec<Scalar>& y) const
{
    Vec<Scalar> out(m_dim);
    for (std::size_t i = 0; i < m_dim; ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < m_dim; ++j) {
            if (y[j].is_zero())
                continue;
            const Scalar c = x[i] * y[j];
            const auto& e = at(i, j);
            for (std::size_t k = 0; k < m_dim; ++k)
                if (!e[k].is_zero())
                    out[k] += c * e[k];
        }
    }
    return out;
}

Matrix<Scalar> Product::left(const Vec<Scalar>& x) const
{
    std::vector<Vec<Scalar>> cols;
    for (std::size_t j = 0; j < m_dim; ++j)
        cols.push_back((*this)(x, unit(m_dim, j)));
    return Matrix<Scalar>::from_columns(cols, m_dim);
}

Matrix<Scalar> Product::right(const Vec<Scalar>& x) const
{
    std::vector<Vec<Scalar>> cols;
    for (std::size_t j = 0; j < m_dim; ++j)
        cols.push_back((*this)(unit(m_dim, j), x));
    return Matrix<Scalar>::from_columns(cols, m_dim);
}

Product lsa_from_symplectic(const SymplecticLieAlgebra& a)
{
    const auto check = check_symplectic(a);
    if (!check.ok())
        throw InputError("not a symplectic Lie algebra: " + check.str());
    const std::size_t n = a.dim();
    // w(v, e_k) = (W^T v)_k
    const auto wt_inv = inverse(a.omega.transpose());
    Product p(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec<Scalar> r(n);
            for (std::size_t k = 0; k < n; ++k)
                r[k] = -a.w(unit(n, j), a.g.bracket(i, k));
            p.at(i, j) = wt_inv->apply(r);
        }
    return p;
}

LeftSymmetricCheck check_left_symmetric(const Product& p, const LieAlgebra& g, Exec exec)
{
    const std::size_t n = p.dim();
    LeftSymmetricCheck out;
    out.associator_failure = first_failure(
        index_tuples<3>(n, false),
        [&](const std::array<std::size_t, 3>& t) {
            const auto x = unit(n, t[0]), y = unit(n, t[1]), z = unit(n, t[2]);
            const auto lhs = p(p(x, y), z);
            const auto l2 = p(x, p(y, z));
            const auto rhs = p(p(y, x), z);
            const auto r2 = p(y, p(x, z));
            for (std::size_t k = 0; k < n; ++k)
                if (lhs[k] - l2[k] != rhs[k] - r2[k])
                    return true;
            return false;
        },
        exec);
    out.commutator_failure = first_failure(
        index_tuples<2>(n, true),
        [&](const std::array<std::size_t, 2>& t) {
            for (std::size_t k = 0; k < n; ++k)
                if (p.at(t[0], t[1])[k] - p.at(t[1], t[0])[k] != g.bracket(t[0], t[1])[k])
                    return true;
            return false;
        },
        exec);
    return out;
}

Product connection(const Product& p)
{
    const std::size_t n = p.dim();
    Product out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                out.at(i, j)[k] = Scalar(2, 3) * p.at(i, j)[k] - Scalar(1, 3) * p.at(j, i)[k];
    return out;
}

Product connection_via_correction(const Product& p)
{
    const std::size_t n = p.dim();
    auto corr = [&](std::size_t i, std::size_t j) { // N(e_i, e_j) = -e_j e_i
        Vec<Scalar> v = p.at(j, i);
        for (auto& c : v)
            c = -c;
        return v;
    };
    Product out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto a = corr(i, j);
            const auto b = corr(j, i);
            for (std::size_t k = 0; k < n; ++k)
                out.at(i, j)[k] = p.at(i, j)[k] + Scalar(1, 3) * (a[k] + b[k]);
        }
    return out;
}

ConnectionCheck check_connection(const SymplecticLieAlgebra& a, const Product& nabla)
{
    const std::size_t n = a.dim();
    ConnectionCheck out;
    out.torsion_failure = first_failure(
        index_tuples<2>(n, true),
        [&](const std::array<std::size_t, 2>& t) {
            for (std::size_t k = 0; k < n; ++k)
                if (nabla.at(t[0], t[1])[k] - nabla.at(t[1], t[0])[k] != a.g.bracket(t[0], t[1])[k])
                    return true;
            return false;
        },
        Exec::serial);
    out.parallel_failure = first_failure(
        index_tuples<3>(n, false),
        [&](const std::array<std::size_t, 3>& t) {
            return !(a.w(nabla.at(t[0], t[1]), unit(n, t[2])) + a.w(unit(n, t[1]), nabla.at(t[0], t[2]))).is_zero();
        },
        Exec::serial);
    return out;
}

std::vector<Matrix<Scalar>> curvature(const LieAlgebra& g, const Product& nabla)
{
    const std::size_t n = g.dim();
    std::vector<Matrix<Scalar>> ops;
    for (std::size_t i = 0; i < n; ++i)
        ops.push_back(nabla.left(unit(n, i)));
    std::vector<Matrix<Scalar>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.push_back(ops[i] * ops[j] - ops[j] * ops[i] - nabla.left(g.bracket(i, j)));
    return out;
}

std::vector<Matrix<Scalar>> curvature_closed_form(const LieAlgebra& g, const Product& p)
{
    const std::size_t n = g.dim();
    std::vector<Matrix<Scalar>> rs;
    for (std::size_t i = 0; i < n; ++i)
        rs.push_back(p.right(unit(n, i)));
    std::vector<Matrix<Scalar>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& b = g.bracket(i, j);
            out.push_back(commutator(rs[i], rs[j]) * Scalar(-1, 9) + p.left(b) * Scalar(-2, 9) +
                          p.right(b) * Scalar(1, 9));
        }
    return out;
}

Matrix<Scalar> ricci_from_curvature(const std::vector<Matrix<Scalar>>& curv, std::size_t n)
{
    Matrix<Scalar> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                out(i, j) += curv[i * n + k](k, j);
    return out;
}

Matrix<Scalar> ricci(const Product& p)
{
    const std::size_t n = p.dim();
    std::vector<Matrix<Scalar>> ls;
    for (std::size_t i = 0; i < n; ++i)
        ls.push_back(p.left(unit(n, i)));
    Matrix<Scalar> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = Scalar(1, 9) * (p.left(p.at(i, j)).trace() + (ls[i] * ls[j]).trace());
    return out;
}

Matrix<Scalar> left_trace_form(const Product& p)
{
    const std::size_t n = p.dim();
    std::vector<Matrix<Scalar>> ls;
    for (std::size_t i = 0; i < n; ++i)
        ls.push_back(p.left(unit(n, i)));
    Matrix<Scalar> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = (ls[i] * ls[j]).trace();
    return out;
}

TraceIdentities trace_identities(const SymplecticLieAlgebra& a, const Product& p)
{
    const std::size_t n = a.dim();
    std::vector<Matrix<Scalar>> ls, rs;
    for (std::size_t i = 0; i < n; ++i) {
        ls.push_back(p.left(unit(n, i)));
        rs.push_back(p.right(unit(n, i)));
    }
    auto e = [&](std::size_t i) { return unit(n, i); };
    TraceIdentities out;
    out.item1 = first_failure(
        index_tuples<3>(n, false),
        [&](const std::array<std::size_t, 3>& t) {
            return !(a.w(p.at(t[0], t[1]), e(t[2])) + a.w(p.at(t[2], t[1]), e(t[0]))).is_zero();
        },
        Exec::serial);
    out.item2 = first_failure(
        index_tuples<3>(n, false),
        [&](const std::array<std::size_t, 3>& t) {
            const auto [x, y, z] = t;
            return !(a.w(p.at(x, y), e(z)) + a.w(p.at(y, z), e(x)) + a.w(p.at(z, x), e(y))).is_zero();
        },
        Exec::serial);
    out.item3 = first_failure(
        index_tuples<2>(n, false),
        [&](const std::array<std::size_t, 2>& t) {
            const Scalar rr = (rs[t[0]] * rs[t[1]]).trace();
            return rr != p.right(p.at(t[0], t[1])).trace() || rr != Scalar(2) * p.left(p.at(t[0], t[1])).trace();
        },
        Exec::serial);
    out.item4 = first_failure(
        index_tuples<2>(n, false),
        [&](const std::array<std::size_t, 2>& t) {
            const Scalar rr = (rs[t[0]] * rs[t[1]]).trace();
            return rr != Scalar(2) * (rs[t[1]] * ls[t[0]]).trace() || rr != Scalar(2) * (rs[t[0]] * ls[t[1]]).trace();
        },
        Exec::serial);
    return out;
}

// --- report -----------------------------------------------------------------

FedosovReport fedosov_report(const SymplecticLieAlgebra& a, Exec exec)
{
    FedosovReport r;
    r.algebra = a;
    r.symplectic = check_symplectic(a, exec);
    if (!r.symplectic.ok())
        throw InputError((a.name.empty() ? std::string("algebra") : a.name) + " is not symplectic: " +
                         r.symplectic.str());
    const std::size_t n = a.dim();
    r.product = lsa_from_symplectic(a);
    r.left_symmetric = check_left_symmetric(r.product, a.g, exec);
    r.nabla = connection(r.product);
    r.paths_agree = r.nabla == connection_via_correction(r.product);
    r.connection = check_connection(a, r.nabla);
    r.curv = curvature(a.g, r.nabla);
    r.curvature_agrees = r.curv == curvature_closed_form(a.g, r.product);
    r.ric = ricci(r.product);
    r.ricci_agrees = r.ric == ricci_from_curvature(r.curv, n);
    r.ricci_symmetric = r.ric == r.ric.transpose();
    r.traces = trace_identities(a, r.product);
    r.kappa = left_trace_form(r.product);
    r.killing = killing_form(a.g);
    r.nilpotent = is_nilpotent(a.g);
    r.solvable = is_solvable(a.g);
    return r;
}

std::vector<std::string> FedosovReport::failures() const
{
    std::vector<std::string> out;
    if (!symplectic.ok())
        out.push_back("symplectic: " + symplectic.str());
    if (left_symmetric.associator_failure)
        out.push_back("product is not left-symmetric");
    if (left_symmetric.commutator_failure)
        out.push_back("xy - yx != [x,y]");
    if (!paths_agree)
        out.push_back("connection formulas disagree");
    if (connection.torsion_failure)
        out.push_back("connection has torsion");
    if (connection.parallel_failure)
        out.push_back("connection does not preserve w");
    if (!curvature_agrees)
        out.push_back("curvature closed form differs from the definition");
    if (!ricci_agrees)
        out.push_back("Ricci closed form differs from the curvature trace");
    if (!ricci_symmetric)
        out.push_back("Ricci form not symmetric");
    if (traces.item1)
        out.push_back("trace identity 1 fails");
    if (traces.item2)
        out.push_back("trace identity 2 fails");
    if (traces.item3)
        out.push_back("trace identity 3 fails");
    if (traces.item4)
        out.push_back("trace identity 4 fails");
    if (nilpotent && !ric.is_zero())
        out.push_back("nilpotent but ric != 0");
    if (nilpotent && !kappa.is_zero())
        out.push_back("nilpotent but kappa != 0");
    if (kappa.is_zero() && !solvable)
        out.push_back("kappa = 0 but not solvable");
    return out;
}

// --- examples ---------------------------------------------------------------

SymplecticLieAlgebra abelian_symplectic(std::size_t m)
{
    std::string text = "name R^" + std::to_string(2 * m) + "\ndim " + std::to_string(2 * m) + "\n";
    for (std::size_t i = 1; i <= m; ++i)
        text += "w(e" + std::to_string(i) + ",e" + std::to_string(i + m) + ") = 1\n";
    return parse_symplectic_algebra(text);
}

SymplecticLieAlgebra affine_line()
{
    return parse_symplectic_algebra("name aff(R)\ndim 2\n[e1,e2] = e2\nw(e1,e2) = 1\n");
}

std::vector<SymplecticLieAlgebra> nilpotent_corpus()
{
    static const char* const texts[] = {
        "name R^4\ndim 4\nw(e1,e3) = 1\nw(e2,e4) = 1\n",
        "name heis3+R\ndim 4\n[e1,e2] = e3\nw(e1,e3) = 1\nw(e2,e4) = 1\n",
        "name n4\ndim 4\n[e1,e2] = e3\n[e1,e3] = e4\nw(e1,e4) = 1\nw(e2,e3) = 1\n",
        "name heis3+R^3\ndim 6\n[e1,e2] = e3\nw(e1,e3) = 1\nw(e2,e4) = 1\nw(e5,e6) = 1\n",
        "name n4+R^2\ndim 6\n[e1,e2] = e3\n[e1,e3] = e4\nw(e1,e4) = 1\nw(e2,e3) = 1\nw(e5,e6) = 1\n",
        "name L6\ndim 6\n[e1,e2] = e3\n[e1,e3] = e4\n[e1,e4] = e5\n[e1,e5] = e6\n"
        "w(e1,e4) = 1\nw(e1,e6) = -1\nw(e2,e3) = -1\nw(e2,e5) = 1\nw(e3,e4) = -1\n",
        "name h3+h3\ndim 6\n[e1,e2] = e3\n[e4,e5] = e6\n"
        "w(e1,e3) = 1\nw(e1,e5) = 1\nw(e2,e3) = -1\nw(e2,e5) = 1\nw(e4,e5) = 1\nw(e4,e6) = -1\nw(e5,e6) = -1\n",
        "name (0,0,12,13,14+23,0)\ndim 6\n[e1,e2] = e3\n[e1,e3] = e4\n[e1,e4] = e5\n[e2,e3] = e5\n"
        "w(e1,e4) = 1\nw(e1,e5) = -1\nw(e2,e3) = -1\nw(e2,e4) = -1\nw(e2,e5) = 1\nw(e2,e6) = -1\nw(e3,e4) = -1\n",
    };
    std::vector<SymplecticLieAlgebra> out;
    for (const char* t : texts)
        out.push_back(parse_symplectic_algebra(t));
    return out;
}

// --- Nomizu maps ------------------------------------------------------------

ReductiveData ReductiveData::flat(std::size_t m_dim)
{
    ReductiveData d;
    d.m_dim = m_dim;
    d.bracket_h.assign(m_dim * m_dim, Vec<Scalar>());
    d.bracket_m.assign(m_dim * m_dim, Vec<Scalar>(m_dim));
    return d;
}

namespace {

Vec<Scalar> flatten(const Matrix<Scalar>& m)
{
    Vec<Scalar> v;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            v.push_back(m(i, j));
    return v;
}

Matrix<Scalar> combine(const std::vector<Matrix<Scalar>>& ms, const Vec<Scalar>& c, std::size_t n)
{
    Matrix<Scalar> out(n, n);
    for (std::size_t a = 0; a < ms.size(); ++a)
        if (!c[a].is_zero())
            out += ms[a] * c[a];
    return out;
}

Vec<Scalar> add(Vec<Scalar> a, const Vec<Scalar>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

struct HSpan {
    Matrix<Scalar> columns; ///< flattened h matrices as columns
    std::optional<Vec<Scalar>> coordinates(const Matrix<Scalar>& m) const
    {
        return solve(columns, flatten(m), Exec::serial);
    }
};

} // namespace

void check_reductive(const ReductiveData& d)
{
    const std::size_t n = d.m_dim;
    const std::size_t hd = d.h.size();
    if (d.bracket_h.size() != n * n || d.bracket_m.size() != n * n)
        throw InputError("reductive data: bracket tables must have m_dim^2 entries");
    for (const auto& a : d.h)
        if (a.rows() != n || a.cols() != n)
            throw InputError("reductive data: h matrices must be m_dim x m_dim");
    for (std::size_t k = 0; k < n * n; ++k)
        if (d.bracket_h[k].size() != hd || d.bracket_m[k].size() != n)
            throw InputError("reductive data: bracket entries have the wrong length");
    std::vector<Vec<Scalar>> cols;
    for (const auto& a : d.h)
        cols.push_back(flatten(a));
    const HSpan hs{Matrix<Scalar>::from_columns(cols, n * n)};
    if (rank(hs.columns) != hd)
        throw InputError("reductive data: h matrices are linearly dependent");
    for (std::size_t a = 0; a < hd; ++a)
        for (std::size_t b = a + 1; b < hd; ++b)
            if (!hs.coordinates(commutator(d.h[a], d.h[b])))
                throw InputError("reductive data: h is not closed at [" + d.h_labels.at(a) + "," + d.h_labels.at(b) +
                                 "]");
    auto bh = [&](const Vec<Scalar>& x, const Vec<Scalar>& y) {
        Vec<Scalar> out(hd);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!x[i].is_zero() && !y[j].is_zero())
                    for (std::size_t a = 0; a < hd; ++a)
                        out[a] += x[i] * y[j] * d.bracket_h[i * n + j][a];
        return out;
    };
    auto bm = [&](const Vec<Scalar>& x, const Vec<Scalar>& y) {
        Vec<Scalar> out(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!x[i].is_zero() && !y[j].is_zero())
                    for (std::size_t k = 0; k < n; ++k)
                        out[k] += x[i] * y[j] * d.bracket_m[i * n + j][k];
        return out;
    };
    auto pair = [](std::size_t i, std::size_t j) {
        return "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")";
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& a = d.bracket_h[i * n + j];
            const auto& b = d.bracket_h[j * n + i];
            const auto& c = d.bracket_m[i * n + j];
            const auto& e = d.bracket_m[j * n + i];
            for (std::size_t k = 0; k < hd; ++k)
                if (a[k] != -b[k])
                    throw InputError("reductive data: bracket not antisymmetric at " + pair(i, j));
            for (std::size_t k = 0; k < n; ++k)
                if (c[k] != -e[k])
                    throw InputError("reductive data: bracket not antisymmetric at " + pair(i, j));
        }
    // [A, [x,y]] = [Ax, y] + [x, Ay]
    for (std::size_t a = 0; a < hd; ++a)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto x = unit(n, i), y = unit(n, j);
                const auto ax = d.h[a].apply(x), ay = d.h[a].apply(y);
                const auto lh = hs.coordinates(commutator(d.h[a], combine(d.h, bh(x, y), n)));
                const auto rh = add(bh(ax, y), bh(x, ay));
                const auto lm = d.h[a].apply(bm(x, y));
                const auto rm = add(bm(ax, y), bm(x, ay));
                if (!lh || *lh != rh || lm != rm)
                    throw InputError("reductive data: bracket is not h-equivariant at " + d.h_labels.at(a) + " and " +
                                     pair(i, j));
            }
    // Jacobi on m x m x m
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const auto x = unit(n, i), y = unit(n, j), z = unit(n, k);
                Vec<Scalar> hpart(hd), mpart(n);
                const std::array<std::array<const Vec<Scalar>*, 3>, 3> cyc{
                    {{&x, &y, &z}, {&y, &z, &x}, {&z, &x, &y}}};
                for (const auto& t : cyc) {
                    const auto& [u, v, w] = t;
                    const auto uv_m = bm(*u, *v);
                    hpart = add(hpart, bh(uv_m, *w));
                    mpart = add(mpart, bm(uv_m, *w));
                    // [[u,v]_h, w] = action of the h part on w
                    mpart = add(mpart, combine(d.h, bh(*u, *v), n).apply(*w));
                }
                if (!is_zero_vector(hpart) || !is_zero_vector(mpart))
                    throw InputError("reductive data: Jacobi fails at (e" + std::to_string(i + 1) + ",e" +
                                     std::to_string(j + 1) + ",e" + std::to_string(k + 1) + ")");
            }
}

NomizuResult nomizu_solutions(const ReductiveData& d, bool equivariant)
{
    check_reductive(d);
    const std::size_t n = d.m_dim;
    const std::size_t hd = d.h.size();
    const std::size_t unknowns = n * hd; // lambda_{i a}: L(e_i) = sum_a lambda_{i a} h_a
    std::vector<Vec<Scalar>> rows;
    Vec<Scalar> rhs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) {
                Vec<Scalar> row(unknowns);
                for (std::size_t a = 0; a < hd; ++a) {
                    row[i * hd + a] += d.h[a](r, j);
                    row[j * hd + a] -= d.h[a](r, i);
                }
                rows.push_back(std::move(row));
                rhs.push_back(d.bracket_m[i * n + j][r]);
            }
    if (equivariant) {
        for (std::size_t b = 0; b < hd; ++b) {
            const auto& A = d.h[b];
            std::vector<Matrix<Scalar>> ad;
            for (std::size_t a = 0; a < hd; ++a)
                ad.push_back(commutator(A, d.h[a]));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t s = 0; s < n; ++s) {
                        Vec<Scalar> row(unknowns);
                        for (std::size_t j = 0; j < n; ++j)
                            if (!A(j, i).is_zero())
                                for (std::size_t a = 0; a < hd; ++a)
                                    row[j * hd + a] += A(j, i) * d.h[a](r, s);
                        for (std::size_t a = 0; a < hd; ++a)
                            row[i * hd + a] -= ad[a](r, s);
                        rows.push_back(std::move(row));
                        rhs.push_back(Scalar(0));
                    }
        }
    }
    NomizuResult out;
    out.unknowns = unknowns;
    out.equations = rows.size();
    if (unknowns == 0) {
        out.consistent = is_zero_vector(rhs);
        return out;
    }
    const auto m = Matrix<Scalar>::from_rows(rows, unknowns);
    out.solution_dim = unknowns - rank(m);
    if (auto x = solve(m, rhs)) {
        out.consistent = true;
        for (std::size_t i = 0; i < n; ++i) {
            Vec<Scalar> c(x->begin() + static_cast<std::ptrdiff_t>(i * hd),
                          x->begin() + static_cast<std::ptrdiff_t>((i + 1) * hd));
            out.particular.push_back(combine(d.h, c, n));
        }
    }
    return out;
}

ReductiveData sp_flat(int n)
{
    const SymplecticSpace v(n);
    ReductiveData d = ReductiveData::flat(static_cast<std::size_t>(v.dim()));
    for (const auto& mono : sym_basis(n, 2)) {
        const auto t = SymTensor::monomial(n, mono);
        d.h_labels.push_back(t.str());
        d.h.push_back(quad_to_matrix(v, t));
    }
    for (auto& b : d.bracket_h)
        b.assign(d.h.size(), Scalar(0));
    return d;
}

ReductiveData u2_symmetric(const Scalar& c)
{
    const SymplecticSpace v(2);
    const std::size_t n = 4;
    auto gen = [&](std::size_t i) { return SymTensor::generator(2, static_cast<int>(i)); };
    auto complex_j = [&](std::size_t i) { // J p_k = q_k, J q_k = -p_k
        const int k = static_cast<int>(i);
        return k < 2 ? gen(static_cast<std::size_t>(v.q(k + 1))) : -gen(static_cast<std::size_t>(v.p(k - 1)));
    };
    Matrix<Scalar> jm(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto col = complex_j(i).coordinates(1);
        for (std::size_t r = 0; r < n; ++r)
            jm(r, i) = col[r];
    }
    // u(2): quadratics whose action commutes with J
    const auto& basis = sym_basis(2, 2);
    std::vector<Matrix<Scalar>> acts;
    for (const auto& mono : basis)
        acts.push_back(quad_to_matrix(v, SymTensor::monomial(2, mono)));
    Matrix<Scalar> sys(n * n, basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const auto f = flatten(commutator(acts[a], jm));
        for (std::size_t r = 0; r < n * n; ++r)
            sys(r, a) = f[r];
    }
    const auto u2 = kernel(sys);
    const auto u2_tensors = tensors_of(v, 2, u2);

    ReductiveData d = ReductiveData::flat(n);
    for (const auto& t : u2_tensors) {
        d.h_labels.push_back(t.str());
        d.h.push_back(quad_to_matrix(v, t));
    }
    SymTensor z(2, 2);
    for (std::size_t i = 0; i < n; ++i)
        z += gen(i) * gen(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            SymTensor t = complex_j(i) * gen(j) - gen(i) * complex_j(j);
            t += z * (c * Scalar(v.omega(static_cast<int>(i), static_cast<int>(j))));
            const auto coords = u2.coordinates(t.coordinates(2));
            if (!coords)
                throw MathError("u2_symmetric: bracket leaves u(2)");
            d.bracket_h[i * n + j] = *coords;
        }
    return d;
}

} // namespace symprol

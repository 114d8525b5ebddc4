#include "symprol/lie_algebra.hpp"

#include "symprol/errors.hpp"

namespace symprol {

std::string combination_str(const Vec<Scalar>& coeffs, const std::vector<std::string>& labels)
{
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Scalar& c = coeffs[i];
        if (c.is_zero())
            continue;
        const bool neg = c.sign() < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const Scalar a = c.abs();
        if (!a.is_one())
            out += a.str() + " ";
        out += labels.at(i);
    }
    return out.empty() ? "0" : out;
}

LieAlgebra::LieAlgebra(std::vector<std::string> labels)
    : m_labels(std::move(labels)), m_table(m_labels.size() * m_labels.size(), Vec<Scalar>(m_labels.size()))
{
}

std::size_t LieAlgebra::index_of(const std::string& label) const
{
    for (std::size_t i = 0; i < dim(); ++i)
        if (m_labels[i] == label)
            return i;
    throw InputError("unknown basis label '" + label + "'");
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const Vec<Scalar>& v)
{
    if (i >= dim() || j >= dim() || v.size() != dim())
        throw MathError("LieAlgebra::set_bracket: index or length out of range");
    if (i == j) {
        for (const auto& c : v)
            if (!c.is_zero())
                throw MathError("LieAlgebra::set_bracket: [x,x] must vanish");
        return;
    }
    m_table[i * dim() + j] = v;
    Vec<Scalar> neg(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        neg[k] = -v[k];
    m_table[j * dim() + i] = std::move(neg);
}

Vec<Scalar> LieAlgebra::bracket(const Vec<Scalar>& x, const Vec<Scalar>& y) const
{
    const std::size_t n = dim();
    if (x.size() != n || y.size() != n)
        throw MathError("LieAlgebra::bracket: wrong vector length");
    Vec<Scalar> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero() || i == j)
                continue;
            const Scalar c = x[i] * y[j];
            const auto& b = bracket(i, j);
            for (std::size_t k = 0; k < n; ++k)
                if (!b[k].is_zero())
                    out[k] += c * b[k];
        }
    }
    return out;
}

Matrix<Scalar> LieAlgebra::ad(const Vec<Scalar>& x) const
{
    const std::size_t n = dim();
    Matrix<Scalar> m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec<Scalar> e(n);
        e[j] = Scalar(1);
        const auto col = bracket(x, e);
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) = col[i];
    }
    return m;
}

Matrix<Scalar> LieAlgebra::ad(std::size_t i) const
{
    Vec<Scalar> e(dim());
    e.at(i) = Scalar(1);
    return ad(e);
}

std::optional<std::array<std::size_t, 3>> LieAlgebra::jacobi_violation(Exec exec) const
{
    const std::size_t n = dim();
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                triples.push_back({i, j, k});
    std::vector<char> bad(triples.size(), 0);
    const long count = static_cast<long>(triples.size());
    const bool par = exec == Exec::parallel && count * static_cast<long>(n * n) >= parallel_threshold;
#pragma omp parallel for schedule(dynamic, 16) if (par)
    for (long t = 0; t < count; ++t) {
        const auto [i, j, k] = triples[static_cast<std::size_t>(t)];
        Vec<Scalar> ei(n), ej(n), ek(n);
        ei[i] = ej[j] = ek[k] = Scalar(1);
        const auto a = bracket(ei, bracket(ej, ek));
        const auto b = bracket(ej, bracket(ek, ei));
        const auto c = bracket(ek, bracket(ei, ej));
        for (std::size_t m = 0; m < n; ++m)
            if (!(a[m] + b[m] + c[m]).is_zero()) {
                bad[static_cast<std::size_t>(t)] = 1;
                break;
            }
    }
    for (std::size_t t = 0; t < triples.size(); ++t)
        if (bad[t])
            return triples[t];
    return std::nullopt;
}

std::string LieAlgebra::table_str() const
{
    std::string out;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i + 1; j < dim(); ++j) {
            const auto& b = bracket(i, j);
            bool zero = true;
            for (const auto& c : b)
                zero = zero && c.is_zero();
            if (!zero)
                out += "[" + m_labels[i] + "," + m_labels[j] + "] = " + combination_str(b, m_labels) + "\n";
        }
    return out;
}

Subspace<Scalar> bracket_span(const LieAlgebra& g, const Subspace<Scalar>& a, const Subspace<Scalar>& b)
{
    std::vector<Vec<Scalar>> out;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            out.push_back(g.bracket(a.vector(i), b.vector(j)));
    return Subspace<Scalar>::span(g.dim(), out);
}

namespace {

template <class Next>
std::vector<Subspace<Scalar>> series(const LieAlgebra& g, Next next)
{
    std::vector<Subspace<Scalar>> out{Subspace<Scalar>::full(g.dim())};
    while (true) {
        auto s = next(out.back());
        if (s == out.back())
            break;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

std::vector<Subspace<Scalar>> derived_series(const LieAlgebra& g)
{
    return series(g, [&](const Subspace<Scalar>& s) { return bracket_span(g, s, s); });
}

std::vector<Subspace<Scalar>> lower_central_series(const LieAlgebra& g)
{
    const auto full = Subspace<Scalar>::full(g.dim());
    return series(g, [&](const Subspace<Scalar>& s) { return bracket_span(g, full, s); });
}

bool is_solvable(const LieAlgebra& g)
{
    return derived_series(g).back().is_zero();
}

bool is_nilpotent(const LieAlgebra& g)
{
    return lower_central_series(g).back().is_zero();
}

Subspace<Scalar> center(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    // x is central iff ad(e_j) x = 0 for all j
    Matrix<Scalar> sys(n * n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto a = g.ad(j);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                sys(j * n + r, c) = a(r, c);
    }
    return kernel(sys);
}

Matrix<Scalar> killing_form(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    std::vector<Matrix<Scalar>> ads;
    for (std::size_t i = 0; i < n; ++i)
        ads.push_back(g.ad(i));
    Matrix<Scalar> k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            k(i, j) = k(j, i) = (ads[i] * ads[j]).trace();
    return k;
}

LieAlgebra subalgebra(const LieAlgebra& g, const Subspace<Scalar>& s, const std::string& prefix)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < s.dim(); ++i)
        labels.push_back(prefix + std::to_string(i + 1));
    LieAlgebra out(labels);
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = i + 1; j < s.dim(); ++j) {
            auto c = s.coordinates(g.bracket(s.vector(i), s.vector(j)));
            if (!c)
                throw MathError("subalgebra: span is not closed under the bracket");
            out.set_bracket(i, j, *c);
        }
    return out;
}

} // namespace symprol

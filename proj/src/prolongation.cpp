#include "symprol/prolongation.hpp"

#include <array>
#include <cstdlib>

namespace symprol {

std::optional<std::pair<SymTensor, SymTensor>> closure_violation(const SymplecticSpace& v, const Subspace<Scalar>& s)
{
    const auto basis = tensors_of(v, 2, s);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const SymTensor b = poisson_bracket(v, basis[i], basis[j]);
            if (!s.contains(b.coordinates(2)))
                return std::make_pair(basis[i], basis[j]);
        }
    return std::nullopt;
}

bool is_subalgebra(const SymplecticSpace& v, const Subspace<Scalar>& s)
{
    return !closure_violation(v, s).has_value();
}

LinearSubalgebra make_subalgebra(const SymplecticSpace& v, const std::vector<SymTensor>& generators)
{
    for (const auto& g : generators)
        if (!g.is_zero() && g.degree() != 2)
            throw MathError("generator '" + g.str() + "' is not in S^2(V)");
    LinearSubalgebra h{v, span_of(v, 2, generators), false};
    if (auto bad = closure_violation(v, h.span))
        throw MathError("not a subalgebra: [" + bad->first.str() + ", " + bad->second.str() +
                        "] = " + poisson_bracket(v, bad->first, bad->second).str() + " leaves the span");
    h.closure_checked = true;
    return h;
}

std::vector<std::size_t> ProlongationChain::dims() const
{
    std::vector<std::size_t> out;
    for (const auto& l : levels)
        out.push_back(l.dim());
    return out;
}

Subspace<Scalar> prolong_step(const SymplecticSpace& v, const Subspace<Scalar>& prev, Exec exec)
{
    const int n = v.n();
    const int d = v.dim();
    if (prev.ambient() == 0)
        throw MathError("prolong_step: empty previous level");
    int k1 = 1;
    while (dim_sym(n, k1) < prev.ambient())
        ++k1;
    if (dim_sym(n, k1) != prev.ambient())
        throw MathError("prolong_step: previous level is not a subspace of a symmetric power");
    const int k2 = k1 + 1;
    const auto& cols = sym_basis(n, k2);
    const std::size_t n_cols = cols.size();

    std::vector<std::size_t> free_coords;
    {
        std::vector<bool> is_pivot(prev.ambient(), false);
        for (std::size_t p : prev.pivots())
            is_pivot[p] = true;
        for (std::size_t i = 0; i < prev.ambient(); ++i)
            if (!is_pivot[i])
                free_coords.push_back(i);
    }
    if (free_coords.empty())
        return Subspace<Scalar>::full(n_cols);
    const std::size_t n_rows = static_cast<std::size_t>(d) * free_coords.size();

    // Column c holds the non-pivot coordinates of reduce([m_c, e_j]) for every j.
    std::vector<Vec<Scalar>> columns(n_cols);
    const long total = static_cast<long>(n_cols);
    const bool go_parallel = exec == Exec::parallel && static_cast<long>(n_cols * n_rows) >= parallel_threshold;
#pragma omp parallel for schedule(dynamic, 1) if (go_parallel)
    for (long c = 0; c < total; ++c) {
        Vec<Scalar> col(n_rows, Scalar(0));
        const Monomial& m = cols[static_cast<std::size_t>(c)];
        for (int j = 0; j < d; ++j) {
            const Monomial e{static_cast<std::uint8_t>(j)};
            Vec<Scalar> coords(prev.ambient(), Scalar(0));
            bool any = false;
            for (const auto& [mono, coef] : poisson_monomials(v, m, e)) {
                coords[sym_index(n, mono)] = coef;
                any = true;
            }
            if (!any)
                continue;
            coords = prev.reduce(std::move(coords));
            for (std::size_t f = 0; f < free_coords.size(); ++f)
                col[static_cast<std::size_t>(j) * free_coords.size() + f] = coords[free_coords[f]];
        }
        columns[static_cast<std::size_t>(c)] = std::move(col);
    }
    return kernel(Matrix<Scalar>::from_columns(columns, n_rows), exec);
}

ProlongationChain prolong_chain(const LinearSubalgebra& h, int kmax, Exec exec)
{
    if (kmax < 0)
        throw InputError("prolong_chain: kmax must be nonnegative");
    if (!h.closure_checked && !is_subalgebra(h.space, h.span))
        throw MathError("prolong_chain: input is not closed under the bracket");
    ProlongationChain chain{h.space, {h.span}};
    for (int k = 1; k <= kmax; ++k) {
        const Subspace<Scalar>& prev = chain.levels.back();
        if (prev.is_zero())
            chain.levels.emplace_back(dim_sym(h.space.n(), k + 2));
        else
            chain.levels.push_back(prolong_step(h.space, prev, exec));
    }
    return chain;
}

Subspace<Scalar> parabolic_prolong_closed_form(Parabolic which, int k)
{
    if (k < 0)
        throw InputError("parabolic_prolong_closed_form: k must be nonnegative");
    const SymplecticSpace v(2);
    const int q1 = v.q(1);
    const int q2 = v.q(2);
    const int p1 = v.p(1);
    const auto& basis = sym_basis(2, k + 2);
    std::vector<Vec<Scalar>> rows;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Monomial& m = basis[i];
        const auto qdeg = std::count(m.begin(), m.end(), q1) + std::count(m.begin(), m.end(), q2);
        const auto q1deg = std::count(m.begin(), m.end(), q1);
        const auto p1deg = std::count(m.begin(), m.end(), p1);
        bool keep = false;
        if (which == Parabolic::p1)
            keep = qdeg <= 1;
        else
            keep = q1deg == 0 || (q1deg == 1 && p1deg == k + 1);
        if (keep) {
            Vec<Scalar> r(basis.size(), Scalar(0));
            r[i] = Scalar(1);
            rows.push_back(std::move(r));
        }
    }
    return Subspace<Scalar>::span(basis.size(), rows);
}

WitnessGrid WitnessGrid::standard()
{
    return parse("0,1,-1,2,-2,i,-i,1+i,1-i,-1+i,-1-i");
}

WitnessGrid WitnessGrid::parse(std::string_view text)
{
    WitnessGrid g;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos)
            end = text.size();
        const std::string_view item = text.substr(start, end - start);
        if (item.find_first_not_of(" \t") == std::string_view::npos)
            throw ParseError("witness grid: empty entry in '" + std::string(text) + "'");
        g.values.push_back(GScalar::parse(item));
        start = end + 1;
    }
    return g;
}

WitnessGrid WitnessGrid::from_env()
{
    if (const char* env = std::getenv("SYMPROL_WITNESS_GRID"); env && *env)
        return parse(env);
    return standard();
}

std::size_t tensor_rank(const SymplecticSpace& v, const GSymTensor& t)
{
    return rank(quad_to_matrix(v, t), Exec::serial);
}

bool in_s2p(const SymplecticSpace& v, const GSymTensor& t)
{
    for (const auto& [m, c] : t.terms())
        for (auto idx : m)
            if (idx >= v.n())
                return false;
    return true;
}

Scalar s2p_norm(const SymTensor& t)
{
    const SymplecticSpace v(2);
    if (t.n() != 2 || (!t.is_zero() && t.degree() != 2) || !in_s2p(v, complexify(t)))
        throw MathError("s2p_norm: tensor is not in S^2(P) for n = 2");
    const Scalar x1 = t.coefficient({0, 0});
    const Scalar x2 = t.coefficient({0, 1});
    const Scalar x3 = t.coefficient({1, 1});
    return Scalar(4) * x1 * x3 - x2 * x2;
}

namespace {

bool gaussian_sqrt(const GScalar& z, GScalar& root)
{
    const Scalar& x = z.re();
    const Scalar& y = z.im();
    Scalar r;
    if (!(x * x + y * y).exact_sqrt(r))
        return false;
    Scalar u;
    if (((x + r) / Scalar(2)).exact_sqrt(u) && !u.is_zero()) {
        root = GScalar(u, y / (Scalar(2) * u));
        return root * root == z;
    }
    Scalar w;
    if (y.is_zero() && (-x).exact_sqrt(w)) {
        root = GScalar(Scalar(0), w);
        return true;
    }
    return false;
}

WitnessResult s2p_plane_witness(const SymplecticSpace& v, const GSymTensor& a, const GSymTensor& b)
{
    auto coef = [](const GSymTensor& t) {
        return std::array<GScalar, 3>{t.coefficient({0, 0}), t.coefficient({0, 1}), t.coefficient({1, 1})};
    };
    const auto A = coef(a);
    const auto B = coef(b);
    // Disc(sA + tB) = qa s^2 + qb s t + qc t^2
    const GScalar qa = A[1] * A[1] - GScalar(4) * A[0] * A[2];
    const GScalar qc = B[1] * B[1] - GScalar(4) * B[0] * B[2];
    const GScalar qb = GScalar(2) * A[1] * B[1] - GScalar(4) * (A[0] * B[2] + B[0] * A[2]);
    WitnessResult out;
    out.exists_over_c = true;
    out.certified = true;
    if (qa.is_zero()) {
        out.witness = a;
        out.note = "discriminant form vanishes at the first basis vector";
        return out;
    }
    const GScalar disc = qb * qb - GScalar(4) * qa * qc;
    GScalar root;
    if (gaussian_sqrt(disc, root)) {
        const GScalar z = (-qb + root) / (GScalar(2) * qa);
        out.witness = a * z + b;
        out.note = "zero of the binary discriminant form";
        if (tensor_rank(v, *out.witness) != 1)
            throw MathError("rank_one_witness: discriminant root does not give a rank-one element");
        return out;
    }
    out.note = "binary discriminant form has a zero over C (form discriminant " + disc.str() +
               " is not a square in Q(i))";
    return out;
}

} // namespace

WitnessResult rank_one_witness(const SymplecticSpace& v, const Subspace<GScalar>& s, const WitnessGrid& grid)
{
    WitnessResult out;
    const auto basis = tensors_of(v, 2, s);
    if (basis.empty()) {
        out.certified = true;
        out.note = "zero subspace";
        return out;
    }
    for (const auto& b : basis)
        if (tensor_rank(v, b) == 1) {
            out.witness = b;
            out.certified = true;
            out.exists_over_c = true;
            out.note = "basis element of rank one";
            return out;
        }
    if (basis.size() == 1) {
        out.certified = true;
        out.note = "line spanned by an element of rank " + std::to_string(tensor_rank(v, basis[0]));
        return out;
    }
    bool all_s2p = v.n() == 2;
    for (const auto& b : basis)
        all_s2p = all_s2p && in_s2p(v, b);
    if (all_s2p)
        return s2p_plane_witness(v, basis[0], basis[1]);

    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            for (const GScalar& c : grid.values) {
                if (c.is_zero())
                    continue;
                for (const GSymTensor& cand : {basis[i] + basis[j] * c, basis[i] * c + basis[j]}) {
                    if (tensor_rank(v, cand) == 1) {
                        out.witness = cand;
                        out.exists_over_c = true;
                        out.certified = true;
                        out.note = "grid search";
                        return out;
                    }
                }
            }
    out.note = "no rank-one element found by grid search (absence not certified)";
    return out;
}

std::string to_string(TypeKind k)
{
    switch (k) {
    case TypeKind::finite:
        return "Finite";
    case TypeKind::infinite:
        return "Infinite";
    case TypeKind::undecided:
        return "Undecided";
    }
    return "?";
}

TypeVerdict finite_type_verdict(const LinearSubalgebra& h, const WitnessGrid& grid, int kmax, Exec exec)
{
    TypeVerdict out;
    out.dim_h = h.dim();
    const ProlongationChain first = prolong_chain(h, 1, exec);
    out.dim_h1 = first.levels[1].dim();
    out.h1_basis = tensors_of(h.space, 3, first.levels[1]);
    if (out.dim_h1 == 0) {
        out.kind = TypeKind::finite;
        out.reason = "h1=0";
        return out;
    }
    const WitnessResult w = rank_one_witness(h.space, complexify(h.span), grid);
    if (w.witness) {
        out.kind = TypeKind::infinite;
        out.witness = w.witness;
        out.reason = "rank-one element: " + w.note;
        return out;
    }
    if (w.exists_over_c) {
        out.kind = TypeKind::infinite;
        out.reason = "rank-one element over C: " + w.note;
        return out;
    }
    if (h.space.n() == 2) {
        out.kind = TypeKind::infinite;
        out.reason = "h1 has dim " + std::to_string(out.dim_h1) +
                     "; finite-type subalgebras of sp4 have vanishing first prolongation";
        return out;
    }
    const ProlongationChain chain = prolong_chain(h, kmax, exec);
    for (std::size_t k = 2; k < chain.levels.size(); ++k)
        if (chain.levels[k].is_zero()) {
            out.kind = TypeKind::finite;
            out.reason = "h" + std::to_string(k) + "=0";
            return out;
        }
    out.kind = TypeKind::undecided;
    out.reason = "no rank-one element found and h" + std::to_string(kmax) + " != 0";
    return out;
}

} // namespace symprol

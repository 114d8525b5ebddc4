#include "symprol/realizations.hpp"

#include "symprol/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace symprol {

namespace {

TruncSeries line(int degree, int power, const Scalar& c = Scalar(1))
{
    return TruncSeries::monomial(1, degree, {power, 0}, c);
}

struct Term {
    int ex, ey;
    long c;
};

TruncSeries poly(int degree, std::initializer_list<Term> terms)
{
    TruncSeries s(2, degree);
    for (const auto& t : terms)
        s.add_term({t.ex, t.ey}, Scalar(t.c));
    return s;
}

PlaneVF field(int degree, std::initializer_list<Term> a, std::initializer_list<Term> b)
{
    return PlaneVF(poly(degree, a), poly(degree, b));
}

void put_series(Flat& out, int part, int power, const TruncSeries& s)
{
    for (const auto& [e, c] : s.terms())
        out[{part, power, e[0], e[1]}] += c;
}

void prune(Flat& f)
{
    for (auto it = f.begin(); it != f.end();)
        it = it->second.is_zero() ? f.erase(it) : std::next(it);
}

std::string y_power(int i)
{
    if (i == 0)
        return "";
    return i == 1 ? "y" : "y^" + std::to_string(i);
}

} // namespace

Scalar plane_omega(const PlaneVF& x, const PlaneVF& y)
{
    const auto [a1, b1] = x.at_origin();
    const auto [a2, b2] = y.at_origin();
    return -(a1 * b2 - b1 * a2);
}

// --- P2 model --------------------------------------------------------------

P2Element::P2Element(int degree) : degree(degree), a(1, degree), f(1, degree) {}

P2Element P2Element::line_field(int degree, const TruncSeries& a)
{
    P2Element e(degree);
    e.a += a;
    return e;
}

P2Element P2Element::current(int degree, int power, const PlaneVF& field)
{
    P2Element e(degree);
    e.x.assign(static_cast<std::size_t>(power) + 1, PlaneVF(degree));
    e.x[static_cast<std::size_t>(power)] += field;
    return e;
}

P2Element P2Element::xi(int degree, const TruncSeries& f)
{
    P2Element e(degree);
    e.f += f.without_constant();
    return e;
}

P2Element& P2Element::operator+=(const P2Element& o)
{
    a += o.a;
    f += o.f;
    if (x.size() < o.x.size())
        x.resize(o.x.size(), PlaneVF(degree));
    for (std::size_t i = 0; i < o.x.size(); ++i)
        x[i] += o.x[i];
    return *this;
}

P2Element& P2Element::operator*=(const Scalar& s)
{
    a *= s;
    f *= s;
    for (auto& v : x)
        v *= s;
    return *this;
}

Flat P2Element::flat() const
{
    Flat out;
    put_series(out, 0, 0, a);
    for (std::size_t i = 0; i < x.size(); ++i) {
        put_series(out, 1, static_cast<int>(i), x[i].a());
        put_series(out, 2, static_cast<int>(i), x[i].b());
    }
    put_series(out, 3, 0, f);
    prune(out);
    return out;
}

std::string P2Element::str() const
{
    std::vector<std::string> parts;
    if (!a.is_zero())
        parts.push_back(a.terms().size() == 1 && a.str() == "1" ? "Dy" : "(" + a.str() + ")*Dy");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero())
            continue;
        const std::string v = x[i].str("u", "v");
        parts.push_back(i == 0 ? v : y_power(static_cast<int>(i)) + "*(" + v + ")");
    }
    if (!f.is_zero())
        parts.push_back("xi*(" + f.str() + ")");
    if (parts.empty())
        return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        out += " + " + parts[i];
    return out;
}

P2Element p2_bracket(const P2Element& e1, const P2Element& e2)
{
    const int d = std::min(e1.degree, e2.degree);
    P2Element out(d);
    out.a += e1.a * e2.a.derivative(0) - e2.a * e1.a.derivative(0);
    out.f += (e1.a * e2.f.derivative(0) - e2.a * e1.f.derivative(0)).without_constant();
    out.x.assign(std::max(e1.x.size(), e2.x.size()) * 2 + static_cast<std::size_t>(d) + 1, PlaneVF(d));

    // a(y) Dy acting on y^i X gives a(y) i y^(i-1) X
    auto act = [&](const TruncSeries& a, const std::vector<PlaneVF>& xs, const Scalar& sign) {
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (xs[i].is_zero())
                continue;
            for (const auto& [e, c] : a.terms()) {
                const std::size_t p = static_cast<std::size_t>(e[0]) + i - 1;
                if (p > static_cast<std::size_t>(d))
                    continue;
                out.x[p] += xs[i] * (sign * c * Scalar(static_cast<long>(i)));
            }
        }
    };
    act(e1.a, e2.x, Scalar(1));
    act(e2.a, e1.x, Scalar(-1));

    for (std::size_t i = 0; i < e1.x.size(); ++i) {
        if (e1.x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < e2.x.size(); ++j) {
            if (e2.x[j].is_zero() || i + j > static_cast<std::size_t>(d))
                continue;
            out.x[i + j] += bracket(e1.x[i], e2.x[j]);
            if (i + j > 0)
                out.f.add_term({static_cast<int>(i + j), 0}, plane_omega(e1.x[i], e2.x[j]));
        }
    }
    while (!out.x.empty() && out.x.back().is_zero())
        out.x.pop_back();
    return out;
}

// --- P1 model --------------------------------------------------------------

P1Element::P1Element(int degree) : v(degree), f(2, degree) {}

P1Element::P1Element(PlaneVF v, TruncSeries f) : v(std::move(v)), f(f.without_constant()) {}

P1Element& P1Element::operator+=(const P1Element& o)
{
    v += o.v;
    f += o.f;
    return *this;
}

P1Element& P1Element::operator*=(const Scalar& s)
{
    v *= s;
    f *= s;
    return *this;
}

Flat P1Element::flat() const
{
    Flat out;
    put_series(out, 0, 0, v.a());
    put_series(out, 1, 0, v.b());
    put_series(out, 2, 0, f);
    prune(out);
    return out;
}

std::string P1Element::str() const
{
    if (f.is_zero())
        return v.str();
    if (v.is_zero())
        return "xi*(" + f.str() + ")";
    return v.str() + " + xi*(" + f.str() + ")";
}

P1Element p1_bracket(const P1Element& e1, const P1Element& e2)
{
    return P1Element(bracket(e1.v, e2.v), e1.v.apply(e2.f) - e2.v.apply(e1.f));
}

// --- realized algebras -----------------------------------------------------

ModelGrading p2_grading()
{
    return {[](const FlatKey& k) {
                switch (k[0]) {
                case 0: return k[2] - 1;
                case 3: return k[2] - 2;
                default: return k[1] + k[2] + k[3] - 1;
                }
            },
            4};
}

ModelGrading p1_grading()
{
    return {[](const FlatKey& k) { return k[2] + k[3] - (k[0] == 2 ? 2 : 1); }, 4};
}

ModelGrading plane_grading()
{
    return {[](const FlatKey& k) { return k[2] + k[3] - 1; }, 2};
}

Flat flat_of(const PlaneVF& v)
{
    Flat out;
    put_series(out, 0, 0, v.a());
    put_series(out, 1, 0, v.b());
    prune(out);
    return out;
}

FlatSpace flat_space(const std::vector<Flat>& flats)
{
    std::set<FlatKey> keys;
    for (const auto& f : flats)
        for (const auto& [k, c] : f)
            keys.insert(k);
    FlatSpace out{std::vector<FlatKey>(keys.begin(), keys.end()), Matrix<Scalar>(keys.size(), flats.size())};
    for (std::size_t j = 0; j < flats.size(); ++j)
        for (const auto& [k, c] : flats[j]) {
            const auto it = std::lower_bound(out.keys.begin(), out.keys.end(), k);
            out.columns(static_cast<std::size_t>(it - out.keys.begin()), j) = c;
        }
    return out;
}

namespace {

std::optional<Vec<Scalar>> solve_in(const FlatSpace& space, const Flat& f)
{
    Vec<Scalar> rhs(space.keys.size());
    for (const auto& [k, c] : f) {
        const auto it = std::lower_bound(space.keys.begin(), space.keys.end(), k);
        if (it == space.keys.end() || *it != k)
            return std::nullopt;
        rhs[static_cast<std::size_t>(it - space.keys.begin())] = c;
    }
    return solve(space.columns, rhs, Exec::serial);
}

} // namespace

std::optional<Vec<Scalar>> RealizedAlgebra::coordinates(const Flat& f) const
{
    return solve_in(flat_space(flats), f);
}

namespace detail {

RealizedAlgebra assemble(std::string name, std::vector<std::string> labels, std::vector<std::string> elements,
                         std::vector<Flat> flats, ModelGrading grading,
                         const std::function<Flat(std::size_t, std::size_t)>& bracket_flat,
                         const std::function<bool(std::size_t, std::size_t, std::size_t)>& jacobi_zero, Exec exec)
{
    RealizedAlgebra out;
    out.name = std::move(name);
    out.labels = std::move(labels);
    out.elements = std::move(elements);
    out.flats = std::move(flats);
    out.grading = std::move(grading);
    out.algebra = LieAlgebra(out.labels);
    const std::size_t n = out.labels.size();
    if (out.flats.size() != n)
        throw MathError("realize: label count differs from basis size");

    const FlatSpace space = flat_space(out.flats);
    if (rank(space.columns, Exec::serial) != n)
        throw InputError(out.name + ": basis elements are linearly dependent");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    std::vector<std::optional<Vec<Scalar>>> consts(pairs.size());
    const long np = static_cast<long>(pairs.size());
    const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(dynamic, 4) if (par)
    for (long t = 0; t < np; ++t) {
        const auto [i, j] = pairs[static_cast<std::size_t>(t)];
        consts[static_cast<std::size_t>(t)] = solve_in(space, bracket_flat(i, j));
    }
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        if (!consts[t]) {
            if (!out.closure_failure)
                out.closure_failure = pairs[t];
            continue;
        }
        out.algebra.set_bracket(pairs[t].first, pairs[t].second, *consts[t]);
    }

    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                triples.push_back({i, j, k});
    const long nt = static_cast<long>(triples.size());
    std::size_t failures = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : failures) if (par)
    for (long t = 0; t < nt; ++t) {
        const auto [i, j, k] = triples[static_cast<std::size_t>(t)];
        if (!jacobi_zero(i, j, k))
            ++failures;
    }
    out.model_jacobi_failures = failures;
    return out;
}

} // namespace detail

RealizedAlgebra realize_plane(std::string name, std::vector<std::string> labels, const std::vector<PlaneVF>& basis,
                              Exec exec)
{
    std::vector<Flat> flats;
    std::vector<std::string> elements;
    for (const auto& b : basis) {
        flats.push_back(flat_of(b));
        elements.push_back(b.str());
    }
    auto bf = [&](std::size_t i, std::size_t j) { return flat_of(bracket(basis[i], basis[j])); };
    auto jz = [&](std::size_t i, std::size_t j, std::size_t k) {
        return (bracket(bracket(basis[i], basis[j]), basis[k]) + bracket(bracket(basis[j], basis[k]), basis[i]) +
                bracket(bracket(basis[k], basis[i]), basis[j]))
            .is_zero();
    };
    return detail::assemble(std::move(name), std::move(labels), std::move(elements), std::move(flats),
                            plane_grading(), bf, jz, exec);
}

Filtration order_filtration(const RealizedAlgebra& g)
{
    const std::size_t n = g.dim();
    const FlatSpace space = flat_space(g.flats);
    std::vector<int> deg;
    int top = -1;
    for (const auto& k : space.keys) {
        deg.push_back(g.grading.degree(k));
        top = std::max(top, deg.back());
    }

    auto level = [&](int j) {
        std::vector<Vec<Scalar>> rows;
        for (std::size_t r = 0; r < space.keys.size(); ++r)
            if (deg[r] < j)
                rows.push_back(space.columns.row(r));
        return rows.empty() ? Subspace<Scalar>::full(n) : kernel(Matrix<Scalar>::from_rows(rows, n));
    };

    Filtration out;
    for (int j = -1;; ++j) {
        out.levels.push_back(level(j));
        if (out.levels.back().is_zero() || j > top)
            break;
    }
    while (out.levels.size() < 3)
        out.levels.push_back(Subspace<Scalar>(n));

    std::vector<Vec<Scalar>> origin_rows;
    for (std::size_t r = 0; r < space.keys.size(); ++r)
        if (deg[r] < 0)
            origin_rows.push_back(space.columns.row(r));
    out.transitive = rank(Matrix<Scalar>::from_rows(origin_rows, n)) == g.grading.manifold_dim;

    const auto& g0 = out.levels[1];
    out.stability_dim = g0.dim();
    out.isotropy_dim = g0.dim() - out.levels[2].dim();

    // z in g_0 with [z, e_j] in g_0 for every j
    Matrix<Scalar> sys(n * n, g0.dim());
    for (std::size_t i = 0; i < g0.dim(); ++i) {
        const auto ad = g.algebra.ad(g0.vector(i));
        for (std::size_t j = 0; j < n; ++j) {
            const auto r = g0.reduce(ad.column(j));
            for (std::size_t m = 0; m < n; ++m)
                sys(j * n + m, i) = r[m];
        }
    }
    out.isotropy_kernel_dim = kernel(sys).dim();
    return out;
}

// --- plane algebras --------------------------------------------------------

std::string to_string(PlaneBase b)
{
    switch (b) {
    case PlaneBase::hyperbolic: return "hyperbolic";
    case PlaneBase::sphere: return "sphere";
    case PlaneBase::sl2aff: return "sl2aff";
    case PlaneBase::euclid: return "euclid";
    case PlaneBase::gl2aff: return "gl2aff";
    case PlaneBase::conf: return "conf";
    case PlaneBase::euc_alpha: return "euc";
    }
    return "?";
}

PlaneBase parse_plane_base(const std::string& s)
{
    for (auto b : {PlaneBase::hyperbolic, PlaneBase::sphere, PlaneBase::sl2aff, PlaneBase::euclid,
                   PlaneBase::gl2aff, PlaneBase::conf, PlaneBase::euc_alpha})
        if (to_string(b) == s)
            return b;
    throw InputError("unknown base '" + s + "' (hyperbolic, sphere, sl2aff, euclid, gl2aff, conf, euc)");
}

std::vector<PlaneVF> PlaneAlgebra::basis() const
{
    auto out = s;
    out.insert(out.end(), n.begin(), n.end());
    return out;
}

std::vector<std::string> PlaneAlgebra::labels() const
{
    auto out = s_labels;
    out.insert(out.end(), n_labels.begin(), n_labels.end());
    return out;
}

PlaneAlgebra plane_algebra(PlaneBase base, int d, const Scalar& alpha)
{
    PlaneAlgebra p{base, {}, {}, {}, {}, TruncSeries::constant(2, d, Scalar(1)), false};
    auto translations = [&] {
        p.n_labels = {"Tx", "Ty"};
        p.n = {PlaneVF::partial(d, 0), PlaneVF::partial(d, 1)};
    };
    const PlaneVF euler = field(d, {{1, 0, 1}}, {{0, 1, 1}});
    const PlaneVF rot = field(d, {{0, 1, -1}}, {{1, 0, 1}}); // x Dy - y Dx
    switch (base) {
    case PlaneBase::hyperbolic:
        // upper half plane moved so that the origin sits at (0, 1)
        p.s_labels = {"T", "D", "K"};
        p.s = {PlaneVF::partial(d, 0), field(d, {{1, 0, 1}}, {{0, 0, 1}, {0, 1, 1}}),
               field(d, {{2, 0, 1}, {0, 0, -1}, {0, 1, -2}, {0, 2, -1}}, {{1, 0, 2}, {1, 1, 2}})};
        p.density = poly(d, {{0, 0, 1}, {0, 1, 2}, {0, 2, 1}}).inverse();
        break;
    case PlaneBase::sphere:
        p.s_labels = {"R", "A", "B"};
        p.s = {field(d, {{0, 1, 1}}, {{1, 0, -1}}), field(d, {{0, 0, 1}, {2, 0, 1}, {0, 2, -1}}, {{1, 1, 2}}),
               field(d, {{1, 1, 2}}, {{0, 0, 1}, {2, 0, -1}, {0, 2, 1}})};
        p.density = poly(d, {{0, 0, 1}, {2, 0, 1}, {0, 2, 1}});
        p.density = (p.density * p.density).inverse();
        p.density_advisory = true;
        break;
    case PlaneBase::sl2aff:
        p.s_labels = {"E", "F", "H"};
        p.s = {field(d, {}, {{1, 0, 1}}), field(d, {{0, 1, 1}}, {}), field(d, {{1, 0, 1}}, {{0, 1, -1}})};
        translations();
        break;
    case PlaneBase::euclid:
        p.s_labels = {"R"};
        p.s = {rot * Scalar(-1)};
        translations();
        break;
    case PlaneBase::gl2aff:
        p.s_labels = {"xDx", "xDy", "yDx", "yDy"};
        p.s = {field(d, {{1, 0, 1}}, {}), field(d, {}, {{1, 0, 1}}), field(d, {{0, 1, 1}}, {}),
               field(d, {}, {{0, 1, 1}})};
        translations();
        break;
    case PlaneBase::conf:
        p.s_labels = {"E", "J"};
        p.s = {euler, rot};
        translations();
        break;
    case PlaneBase::euc_alpha:
        if (alpha.sign() < 0)
            throw InputError("euc: alpha must be >= 0");
        p.s_labels = {"Ja"};
        p.s = {euler * alpha - rot};
        translations();
        break;
    }
    return p;
}

bool preserves_density(const PlaneAlgebra& a)
{
    for (const auto& x : a.basis())
        if (!x.divergence(a.density).is_zero())
            return false;
    return true;
}

namespace {

bool same_span(const std::vector<Flat>& a, const std::vector<Flat>& b)
{
    std::vector<Flat> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const auto ra = rank(flat_space(a).columns, Exec::serial);
    return ra == rank(flat_space(b).columns, Exec::serial) && ra == rank(flat_space(both).columns, Exec::serial);
}

std::vector<Flat> flats_of(const std::vector<PlaneVF>& fields)
{
    std::vector<Flat> out;
    for (const auto& f : fields)
        out.push_back(flat_of(f));
    return out;
}

} // namespace

std::optional<PlaneBase> match_primitive_symplectic(const std::vector<PlaneVF>& fields, int degree)
{
    const auto mine = flats_of(fields);
    for (auto b : {PlaneBase::hyperbolic, PlaneBase::sphere, PlaneBase::sl2aff, PlaneBase::euclid})
        if (same_span(mine, flats_of(plane_algebra(b, degree).basis())))
            return b;
    return std::nullopt;
}

// --- constructions ---------------------------------------------------------

namespace {

/// Combinations of `fields` vanishing at the origin.
std::vector<PlaneVF> vanishing_at_origin(const std::vector<PlaneVF>& fields, int d)
{
    Matrix<Scalar> ev(2, fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
        const auto [a, b] = fields[j].at_origin();
        ev(0, j) = a;
        ev(1, j) = b;
    }
    std::vector<PlaneVF> out;
    const auto k = kernel(ev);
    for (std::size_t i = 0; i < k.dim(); ++i) {
        PlaneVF v(d);
        const auto c = k.vector(i);
        for (std::size_t j = 0; j < fields.size(); ++j)
            v += fields[j] * c[j];
        out.push_back(v);
    }
    return out;
}

Subspace<Scalar> subspace_of(const RealizedAlgebra& g, const std::vector<Flat>& flats)
{
    std::vector<Vec<Scalar>> vs;
    for (const auto& f : flats) {
        auto c = g.coordinates(f);
        if (!c)
            throw MathError(g.name + ": predicted element outside the algebra");
        vs.push_back(*c);
    }
    return Subspace<Scalar>::span(g.dim(), vs);
}

void check_common(ConstructionReport& r, bool kernel_expected)
{
    auto fail = [&](std::string s) { r.failures.push_back(std::move(s)); };
    const auto& g = r.g;
    if (g.closure_failure)
        fail("not closed: [" + g.labels[g.closure_failure->first] + "," + g.labels[g.closure_failure->second] + "]");
    if (g.model_jacobi_failures > 0)
        fail("Jacobi fails in the model on " + std::to_string(g.model_jacobi_failures) + " triples");
    if (auto t = g.algebra.jacobi_violation())
        fail("structure constants violate Jacobi at (" + g.labels[(*t)[0]] + "," + g.labels[(*t)[1]] + "," +
             g.labels[(*t)[2]] + ")");
    if (g.dim() != r.expected_dim)
        fail("dim " + std::to_string(g.dim()) + " != " + std::to_string(r.expected_dim));
    if (!r.filtration.transitive)
        fail("not transitive");
    if (r.filtration.stability_dim != r.expected_stability_dim)
        fail("stability dim " + std::to_string(r.filtration.stability_dim) +
             " != " + std::to_string(r.expected_stability_dim));
    if (r.filtration.isotropy_dim != r.expected_isotropy_dim)
        fail("isotropy dim " + std::to_string(r.filtration.isotropy_dim) +
             " != " + std::to_string(r.expected_isotropy_dim));
    if (!r.stability_matches)
        fail("stability subalgebra differs from the predicted one");
    if (kernel_expected != (r.filtration.isotropy_kernel_dim > 0))
        fail("isotropy kernel dim " + std::to_string(r.filtration.isotropy_kernel_dim) +
             (kernel_expected ? " should be positive" : " should be 0"));
    if (!r.density_advisory && !r.density_ok)
        fail("plane algebra does not preserve its density");
}

} // namespace

ConstructionReport build_thmK1(PlaneBase base, int k, int n_power, int degree, Exec exec)
{
    const bool simple = base == PlaneBase::hyperbolic || base == PlaneBase::sphere;
    if (!simple && base != PlaneBase::sl2aff && base != PlaneBase::euclid)
        throw InputError("K1 base must be hyperbolic, sphere, sl2aff or euclid");
    if (k < 1)
        throw InputError("K1 needs k >= 1");
    if (n_power < 0 || (simple && n_power != 0))
        throw InputError("K1: N must be 0 for " + to_string(base));
    if (2 * n_power > k)
        throw InputError("K1 needs 2N <= k");
    const int d = degree > 0 ? degree : std::max(2 * k + 2, 8);
    const PlaneAlgebra plane = plane_algebra(base, d);

    std::vector<std::string> labels{"Dy", "yDy"};
    std::vector<P2Element> basis{P2Element::line_field(d, line(d, 0)), P2Element::line_field(d, line(d, 1))};
    for (std::size_t i = 0; i < plane.s.size(); ++i) {
        labels.push_back(plane.s_labels[i]);
        basis.push_back(P2Element::current(d, 0, plane.s[i]));
    }
    for (int i = 0; i <= n_power; ++i)
        for (std::size_t j = 0; j < plane.n.size(); ++j) {
            labels.push_back(i == 0 ? plane.n_labels[j] : y_power(i) + "." + plane.n_labels[j]);
            basis.push_back(P2Element::current(d, i, plane.n[j]));
        }
    for (int m = 1; m <= k; ++m) {
        labels.push_back("xi." + y_power(m));
        basis.push_back(P2Element::xi(d, line(d, m)));
    }

    ConstructionReport r;
    r.g = realize("K1(" + to_string(base) + ",k=" + std::to_string(k) + ",N=" + std::to_string(n_power) + ")",
                  labels, basis, p2_bracket, p2_grading(), exec);
    r.filtration = order_filtration(r.g);
    const std::size_t s = plane.s.size();
    const std::size_t nn = plane.n.size();
    r.expected_dim = 2 + s + nn * static_cast<std::size_t>(n_power + 1) + static_cast<std::size_t>(k);
    r.expected_stability_dim = r.expected_dim - 4;
    if (simple)
        r.expected_isotropy_dim = k > 1 ? 3 : 2;
    else
        r.expected_isotropy_dim = 1 + s + (n_power > 0 ? nn : 0) + (k > 1 ? 1 : 0);

    std::vector<Flat> predicted{basis[1].flat()};
    for (const auto& v : vanishing_at_origin(plane.s, d))
        predicted.push_back(P2Element::current(d, 0, v).flat());
    for (int i = 1; i <= n_power; ++i)
        for (const auto& t : plane.n)
            predicted.push_back(P2Element::current(d, i, t).flat());
    for (int m = 2; m <= k; ++m)
        predicted.push_back(P2Element::xi(d, line(d, m)).flat());
    r.stability_matches = subspace_of(r.g, predicted) == r.filtration.stability();

    // the ideal without a Dy component, restricted to the leaf y = 0 modulo xi
    std::vector<Vec<Scalar>> rows;
    const FlatSpace space = flat_space(r.g.flats);
    for (std::size_t i = 0; i < space.keys.size(); ++i)
        if (space.keys[i][0] == 0)
            rows.push_back(space.columns.row(i));
    const auto ideal = kernel(Matrix<Scalar>::from_rows(rows, r.g.dim()));
    std::vector<PlaneVF> leaf;
    for (std::size_t i = 0; i < ideal.dim(); ++i) {
        P2Element e(d);
        const auto c = ideal.vector(i);
        for (std::size_t j = 0; j < basis.size(); ++j)
            e += basis[j] * c[j];
        if (!e.x.empty() && !e.x[0].is_zero())
            leaf.push_back(e.x[0]);
    }
    if (auto m = match_primitive_symplectic(leaf, d))
        r.transverse = to_string(*m);
    if (r.transverse != to_string(base))
        r.failures.push_back("transverse algebra is '" + r.transverse + "', expected " + to_string(base));

    r.density_ok = preserves_density(plane);
    r.density_advisory = plane.density_advisory;
    check_common(r, k > 2);
    return r;
}

namespace {

std::string xi_monomial(int a, int b)
{
    return TruncSeries::monomial(2, a + b, {a, b}).str();
}

} // namespace

XiSpec XiSpec::parse(const std::string& text)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t += c;
    XiSpec out;
    if (!t.empty() && t[0] == 'P') {
        std::size_t pos = t.size() > 1 && t[1] == '^' ? 2 : 1;
        try {
            std::size_t used = 0;
            out.k = std::stoi(t.substr(pos), &used);
            if (used != t.size() - pos || out.k < 1)
                throw ParseError("");
        } catch (const std::exception&) {
            throw ParseError("bad xi spec '" + text + "': expected P<k> with k >= 1");
        }
        return out;
    }
    std::size_t i = 0;
    while (i < t.size()) {
        if (t.compare(i, 2, "W(") != 0)
            throw ParseError("bad xi spec '" + text + "': expected P<k> or W(k,l)+W(k,l)...");
        const auto close = t.find(')', i);
        const auto comma = t.find(',', i);
        if (close == std::string::npos || comma == std::string::npos || comma > close)
            throw ParseError("bad xi spec '" + text + "': unterminated W(k,l)");
        try {
            out.tops.emplace_back(std::stoi(t.substr(i + 2, comma - i - 2)),
                                  std::stoi(t.substr(comma + 1, close - comma - 1)));
        } catch (const std::exception&) {
            throw ParseError("bad xi spec '" + text + "': non-integer in W(k,l)");
        }
        i = close + 1;
        if (i < t.size()) {
            if (t[i] != '+')
                throw ParseError("bad xi spec '" + text + "': expected '+'");
            ++i;
        }
    }
    if (out.tops.empty())
        throw ParseError("empty xi spec");
    return out;
}

std::string XiSpec::str() const
{
    if (tops.empty())
        return "P" + std::to_string(k);
    std::string out;
    for (const auto& [a, b] : tops)
        out += (out.empty() ? "" : "+") + ("W(" + std::to_string(a) + "," + std::to_string(b) + ")");
    return out;
}

namespace {

/// Canonical basis of span(polys), leading monomials of low degree first.
std::vector<TruncSeries> canonical_polys(const std::vector<TruncSeries>& polys, int d)
{
    std::set<std::pair<int, TruncSeries::Exponent>> ordered;
    for (const auto& p : polys)
        for (const auto& [e, c] : p.terms())
            ordered.insert({e[0] + e[1], TruncSeries::Exponent{-e[0], e[1]}});
    std::vector<TruncSeries::Exponent> keys;
    for (const auto& [deg, e] : ordered)
        keys.push_back({-e[0], e[1]});
    std::vector<Vec<Scalar>> rows;
    for (const auto& p : polys) {
        Vec<Scalar> v(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i)
            v[i] = p.coefficient(keys[i]);
        rows.push_back(v);
    }
    const auto s = Subspace<Scalar>::span(keys.size(), rows);
    std::vector<TruncSeries> out;
    for (std::size_t r = 0; r < s.dim(); ++r) {
        TruncSeries p(2, d);
        const auto v = s.vector(r);
        for (std::size_t i = 0; i < keys.size(); ++i)
            p.add_term(keys[i], v[i]);
        out.push_back(p);
    }
    return out;
}

} // namespace

std::vector<std::pair<int, int>> triangle_nodes(int k0, int l0)
{
    if (k0 < 1 || l0 > k0 || l0 < -k0 || (k0 - l0) % 2 != 0)
        throw InputError("triangle top (" + std::to_string(k0) + "," + std::to_string(l0) +
                         ") needs k >= 1, |l| <= k and k = l mod 2");
    const int m0 = (k0 + l0) / 2;
    const int n0 = (k0 - l0) / 2;
    std::vector<std::pair<int, int>> out;
    for (int m = 0; m <= m0; ++m)
        for (int n = 0; n <= n0; ++n)
            if (m + n > 0)
                out.emplace_back(m + n, m - n);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<TruncSeries, TruncSeries> node_real_pair(int k, int l, int degree)
{
    if ((k - l) % 2 != 0 || l > k || l < -k)
        throw InputError("bad node (" + std::to_string(k) + "," + std::to_string(l) + ")");
    const int m = (k + l) / 2;
    const int n = (k - l) / 2;
    TruncSeries re = TruncSeries::constant(2, degree, Scalar(1));
    TruncSeries im(2, degree);
    const TruncSeries x = TruncSeries::variable(2, degree, 0);
    const TruncSeries y = TruncSeries::variable(2, degree, 1);
    // multiply by x + s i y
    auto times = [&](int s) {
        const TruncSeries sy = y * Scalar(s);
        TruncSeries nre = re * x - im * sy;
        TruncSeries nim = re * sy + im * x;
        re = std::move(nre);
        im = std::move(nim);
    };
    for (int i = 0; i < m; ++i)
        times(1);
    for (int i = 0; i < n; ++i)
        times(-1);
    return {re, im};
}

std::vector<TruncSeries> triangle_real_basis(const std::vector<std::pair<int, int>>& tops, int degree)
{
    std::set<std::pair<int, int>> nodes;
    for (const auto& [k, l] : tops)
        for (const auto& nd : triangle_nodes(k, l))
            nodes.insert(nd);
    for (const auto& [k, l] : nodes)
        if (!nodes.count({k, -l}))
            throw InputError("triangle modules are not conjugation-invariant: node (" + std::to_string(k) + "," +
                             std::to_string(l) + ") present without (" + std::to_string(k) + "," +
                             std::to_string(-l) + ")");
    std::vector<TruncSeries> polys;
    for (const auto& [k, l] : nodes) {
        auto [re, im] = node_real_pair(k, l, degree);
        polys.push_back(re);
        polys.push_back(im);
    }
    return canonical_polys(polys, degree);
}

ConstructionReport build_thmK2(PlaneBase base, const XiSpec& xi, const Scalar& alpha, int degree, Exec exec)
{
    if (base != PlaneBase::sl2aff && base != PlaneBase::gl2aff && base != PlaneBase::conf &&
        base != PlaneBase::euc_alpha)
        throw InputError("K2 base must be sl2aff, gl2aff, conf or euc");
    if (xi.tops.empty() && xi.k < 1)
        throw InputError("K2 needs a nonzero xi");
    int top = xi.k;
    for (const auto& [k, l] : xi.tops)
        top = std::max(top, k);
    const int d = degree > 0 ? degree : std::max(2 * top + 2, 8);
    const PlaneAlgebra plane = plane_algebra(base, d, alpha);

    std::vector<TruncSeries> polys;
    std::vector<std::string> xi_labels;
    if (xi.tops.empty()) {
        for (int deg = 1; deg <= xi.k; ++deg)
            for (int a = deg; a >= 0; --a) {
                polys.push_back(TruncSeries::monomial(2, d, {a, deg - a}));
                xi_labels.push_back("xi." + xi_monomial(a, deg - a));
            }
    } else {
        polys = triangle_real_basis(xi.tops, d);
        for (std::size_t i = 0; i < polys.size(); ++i)
            xi_labels.push_back("xi" + std::to_string(i + 1));
    }

    // invariance of xi under the plane algebra, modulo constants
    {
        std::vector<Flat> xs;
        for (const auto& p : polys)
            xs.push_back(P1Element(PlaneVF(d), p).flat());
        const FlatSpace space = flat_space(xs);
        const auto fields = plane.basis();
        const auto names = plane.labels();
        for (std::size_t i = 0; i < fields.size(); ++i)
            for (const auto& p : polys)
                if (!solve_in(space, P1Element(PlaneVF(d), fields[i].apply(p)).flat()))
                    throw InputError("xi is not invariant under " + to_string(base) + ": " + names[i] + "(" +
                                     p.str() + ") = " + fields[i].apply(p).str());
    }

    std::vector<std::string> labels = plane.labels();
    std::vector<P1Element> basis;
    for (const auto& x : plane.basis())
        basis.emplace_back(x, TruncSeries(2, d));
    for (std::size_t i = 0; i < polys.size(); ++i) {
        labels.push_back(xi_labels[i]);
        basis.emplace_back(PlaneVF(d), polys[i]);
    }

    ConstructionReport r;
    r.g = realize("K2(" + to_string(base) + ",xi=" + xi.str() + ")", labels, basis, p1_bracket, p1_grading(), exec);
    r.filtration = order_filtration(r.g);
    r.expected_dim = plane.basis().size() + polys.size();
    r.expected_stability_dim = r.expected_dim - 4;

    // xi elements without linear part, and those that are homogeneous quadratic
    const auto vanishing = vanishing_at_origin(plane.basis(), d);
    Matrix<Scalar> lin(2, polys.size());
    std::vector<Vec<Scalar>> nq_rows;
    {
        std::set<TruncSeries::Exponent> others;
        for (const auto& p : polys)
            for (const auto& [e, c] : p.terms())
                if (e[0] + e[1] != 2)
                    others.insert(e);
        for (const auto& e : others) {
            Vec<Scalar> row(polys.size());
            for (std::size_t j = 0; j < polys.size(); ++j)
                row[j] = polys[j].coefficient(e);
            nq_rows.push_back(row);
        }
        for (std::size_t j = 0; j < polys.size(); ++j) {
            lin(0, j) = polys[j].coefficient({1, 0});
            lin(1, j) = polys[j].coefficient({0, 1});
        }
    }
    const auto xi_stab = kernel(lin);
    const auto xi_quad = nq_rows.empty() ? Subspace<Scalar>::full(polys.size())
                                         : kernel(Matrix<Scalar>::from_rows(nq_rows, polys.size()));
    r.expected_isotropy_dim = vanishing.size() + xi_quad.dim();

    std::vector<Flat> predicted;
    for (const auto& v : vanishing)
        predicted.push_back(P1Element(v, TruncSeries(2, d)).flat());
    for (std::size_t i = 0; i < xi_stab.dim(); ++i) {
        TruncSeries p(2, d);
        const auto c = xi_stab.vector(i);
        for (std::size_t j = 0; j < polys.size(); ++j)
            p += polys[j] * c[j];
        predicted.push_back(P1Element(PlaneVF(d), p).flat());
    }
    r.stability_matches = subspace_of(r.g, predicted) == r.filtration.stability();
    r.transverse = to_string(base);
    r.density_ok = true;
    check_common(r, top > 2);
    return r;
}

// --- Chevalley-Eilenberg ---------------------------------------------------

H1Result ce_h1(const LieAlgebra& g, const std::vector<Matrix<Scalar>>& rho)
{
    const std::size_t n = g.dim();
    if (rho.size() != n)
        throw InputError("ce_h1: need one module matrix per basis element");
    const std::size_t m = n == 0 ? 0 : rho[0].rows();
    for (const auto& r : rho)
        if (r.rows() != m || r.cols() != m)
            throw InputError("ce_h1: module matrices must all be square of the same size");

    auto rho_of = [&](const Vec<Scalar>& v) {
        Matrix<Scalar> out(m, m);
        for (std::size_t k = 0; k < n; ++k)
            if (!v[k].is_zero())
                out += rho[k] * v[k];
        return out;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rho_of(g.bracket(i, j)) != commutator(rho[i], rho[j]))
                throw InputError("ce_h1: not a representation on the pair (" + g.label(i) + "," + g.label(j) + ")");

    // unknown c(e_i)_a at index i*m + a
    std::vector<Vec<Scalar>> eqs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t a = 0; a < m; ++a) {
                Vec<Scalar> row(n * m);
                const auto& b = g.bracket(i, j);
                for (std::size_t k = 0; k < n; ++k)
                    row[k * m + a] += b[k];
                for (std::size_t c = 0; c < m; ++c) {
                    row[j * m + c] -= rho[i](a, c);
                    row[i * m + c] += rho[j](a, c);
                }
                eqs.push_back(std::move(row));
            }
    const auto z = eqs.empty() ? Subspace<Scalar>::full(n * m) : kernel(Matrix<Scalar>::from_rows(eqs, n * m));

    std::vector<Vec<Scalar>> cob;
    for (std::size_t b = 0; b < m; ++b) {
        Vec<Scalar> v(n * m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < m; ++a)
                v[i * m + a] = rho[i](a, b);
        cob.push_back(std::move(v));
    }
    const auto bsp = Subspace<Scalar>::span(n * m, cob);
    if (!z.contains(bsp))
        throw MathError("ce_h1: coboundaries are not cocycles");

    H1Result out;
    out.dim_cocycles = z.dim();
    out.dim_coboundaries = bsp.dim();
    out.dim = z.dim() - bsp.dim();
    std::vector<Vec<Scalar>> reduced;
    for (std::size_t i = 0; i < z.dim(); ++i)
        reduced.push_back(bsp.reduce(z.vector(i)));
    const auto q = Subspace<Scalar>::span(n * m, reduced);
    for (std::size_t r = 0; r < q.dim(); ++r) {
        const auto v = q.vector(r);
        std::vector<Vec<Scalar>> c;
        for (std::size_t i = 0; i < n; ++i)
            c.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(i * m),
                           v.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
        out.representatives.push_back(std::move(c));
    }
    return out;
}

std::string BracketModule::cochain_str(const std::vector<Vec<Scalar>>& c) const
{
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        SymTensor t(algebra_basis.empty() ? 1 : algebra_basis[0].n(), 2);
        for (std::size_t b = 0; b < module_basis.size(); ++b)
            if (!c[i][b].is_zero())
                t += module_basis[b] * c[i][b];
        out += (i ? "; " : "") + ("c(" + algebra_basis[i].str() + ") = " + (t.is_zero() ? "0" : t.str()));
    }
    return out;
}

BracketModule bracket_module(const SymplecticSpace& v, const std::vector<SymTensor>& algebra_gens,
                             const std::vector<SymTensor>& module_gens)
{
    const LinearSubalgebra h = [&] {
        try {
            return make_subalgebra(v, algebra_gens);
        } catch (const MathError& e) {
            throw InputError(std::string("bracket_module: ") + e.what());
        }
    }();
    const auto msp = span_of(v, 2, module_gens);
    BracketModule out;
    out.algebra_basis = h.basis();
    out.module_basis = tensors_of(v, 2, msp);
    std::vector<std::string> labels;
    for (const auto& t : out.algebra_basis)
        labels.push_back(t.str());
    out.algebra = LieAlgebra(labels);
    const std::size_t n = out.algebra_basis.size();
    const std::size_t m = out.module_basis.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto b = poisson_bracket(v, out.algebra_basis[i], out.algebra_basis[j]);
            out.algebra.set_bracket(i, j, *h.span.coordinates(b.coordinates(2)));
        }
    for (std::size_t i = 0; i < n; ++i) {
        Matrix<Scalar> r(m, m);
        for (std::size_t b = 0; b < m; ++b) {
            const auto img = poisson_bracket(v, out.algebra_basis[i], out.module_basis[b]);
            const auto c = msp.coordinates(img.coordinates(2));
            if (!c)
                throw InputError("module is not invariant: [" + out.algebra_basis[i].str() + ", " +
                                 out.module_basis[b].str() + "] = " + img.str());
            for (std::size_t a = 0; a < m; ++a)
                r(a, b) = (*c)[a];
        }
        out.rho.push_back(std::move(r));
    }
    return out;
}

NonsplitResult nonsplit_check(const std::vector<SymTensor>& hbar, const std::vector<SymTensor>& c,
                              const std::vector<SymTensor>& psi)
{
    const SymplecticSpace v(2);
    const std::size_t n = hbar.size();
    if (c.size() != n || psi.size() != n)
        throw InputError("nonsplit: c and psi need one value per basis element");
    const int p1 = v.p(1), p2 = v.p(2), q2 = v.q(2);
    auto only = [](const SymTensor& t, std::initializer_list<int> allowed) {
        for (const auto& [mono, coef] : t.terms())
            for (auto idx : mono)
                if (std::find(allowed.begin(), allowed.end(), idx) == allowed.end())
                    return false;
        return true;
    };
    auto has_p1_factor = [&](const SymTensor& t) {
        for (const auto& [mono, coef] : t.terms())
            if (std::count(mono.begin(), mono.end(), static_cast<std::uint8_t>(p1)) != 1)
                return false;
        return true;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (hbar[i].degree() != 2 || !only(hbar[i], {p2, q2}))
            throw InputError("nonsplit: " + hbar[i].str() + " is not in sl(W)");
        if (!c[i].is_zero() && (c[i].degree() != 2 || !only(c[i], {p1, p2, q2}) || !has_p1_factor(c[i])))
            throw InputError("nonsplit: c value " + c[i].str() + " is not in p1 W");
        if (!psi[i].is_zero() && (psi[i].degree() != 2 || !only(psi[i], {p1})))
            throw InputError("nonsplit: psi value " + psi[i].str() + " is not in R p1^2");
    }
    std::vector<Vec<Scalar>> cols;
    for (const auto& h : hbar)
        cols.push_back(h.coordinates(2));
    const auto hm = Matrix<Scalar>::from_columns(cols, dim_sym(2, 2));
    if (rank(hm) != n)
        throw InputError("nonsplit: hbar elements are linearly dependent");

    auto combine = [&](const std::vector<SymTensor>& vals, const Vec<Scalar>& a) {
        SymTensor t(2, 2);
        for (std::size_t k = 0; k < n; ++k)
            if (!a[k].is_zero())
                t += vals[k] * a[k];
        return t;
    };

    NonsplitResult out;
    out.equations_hold = true;
    for (std::size_t i = 0; i < n && out.equations_hold; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto b = poisson_bracket(v, hbar[i], hbar[j]);
            const auto a = solve(hm, b.coordinates(2));
            if (!a)
                throw InputError("nonsplit: hbar is not closed at [" + hbar[i].str() + ", " + hbar[j].str() + "]");
            const auto lc = combine(c, *a);
            const auto rc = poisson_bracket(v, c[i], hbar[j]) + poisson_bracket(v, hbar[i], c[j]);
            const auto lp = combine(psi, *a);
            const auto rp = poisson_bracket(v, c[i], c[j]);
            if (!(lc - rc).is_zero() || !(lp - rp).is_zero()) {
                out.equations_hold = false;
                out.violating_pair = std::make_pair(i, j);
                out.detail = "at [" + hbar[i].str() + ", " + hbar[j].str() + "]: c-defect " + (lc - rc).str() +
                             ", psi-defect " + (lp - rp).str();
                break;
            }
        }
    for (std::size_t i = 0; i < n; ++i)
        out.generators.push_back(hbar[i] + c[i] + psi[i]);
    const auto viol = closure_violation(v, span_of(v, 2, out.generators));
    out.closed = !viol;
    if (viol && out.detail.empty())
        out.detail = "graph not closed at [" + viol->first.str() + ", " + viol->second.str() + "]";
    return out;
}

} // namespace symprol

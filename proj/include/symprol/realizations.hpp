#pragma once

#include "symprol/lie_algebra.hpp"
#include "symprol/prolongation.hpp"
#include "symprol/series.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symprol {

/// Sparse coordinates of a model element: (part, y-power, exponent, exponent).
using FlatKey = std::array<int, 4>;
using Flat = std::map<FlatKey, Scalar>;

/// Omega(X(0), Y(0)) for plane fields with W = span(p, q), p ~ Dx, q ~ Dy and
/// Omega(p, q) = -1, i.e. -det(X(0), Y(0)).
Scalar plane_omega(const PlaneVF& x, const PlaneVF& y);

// ---------------------------------------------------------------------------
// Abstract model of the full prolongation of p2: formal fields a(y) Dy on the
// line, y-dependent fields sum y^i X_i on W, and the central part xi made of
// series in y modulo constants.

struct P2Element {
    int degree;
    TruncSeries a;          ///< coefficient of Dy
    std::vector<PlaneVF> x; ///< x[i] multiplies y^i
    TruncSeries f;          ///< xi part, constant term always dropped

    explicit P2Element(int degree);
    static P2Element line_field(int degree, const TruncSeries& a);
    static P2Element current(int degree, int power, const PlaneVF& field);
    static P2Element xi(int degree, const TruncSeries& f);

    P2Element& operator+=(const P2Element& o);
    P2Element& operator*=(const Scalar& s);
    friend P2Element operator+(P2Element a, const P2Element& b) { return a += b; }
    friend P2Element operator-(P2Element a, const P2Element& b) { return a += b * Scalar(-1); }
    friend P2Element operator*(P2Element a, const Scalar& s) { return a *= s; }

    Flat flat() const;
    /// Plane coordinates print as u, v; the line coordinate as y.
    std::string str() const;
};

/// Semidirect bracket: derivations of R[[y]] act on y-coefficients and on xi;
/// [y^i X, y^j Y] = y^(i+j) [X, Y] + y^(i+j) Omega(X, Y), the last term in xi
/// (hence dropped when i = j = 0).
P2Element p2_bracket(const P2Element& e1, const P2Element& e2);

// ---------------------------------------------------------------------------
// Abstract model of the full prolongation of p1: formal fields on the plane
// acting on the abelian ideal of series in x, y modulo constants.

struct P1Element {
    PlaneVF v;
    TruncSeries f; ///< constant term always dropped

    explicit P1Element(int degree);
    P1Element(PlaneVF v, TruncSeries f);

    P1Element& operator+=(const P1Element& o);
    P1Element& operator*=(const Scalar& s);
    friend P1Element operator+(P1Element a, const P1Element& b) { return a += b; }
    friend P1Element operator*(P1Element a, const Scalar& s) { return a *= s; }

    Flat flat() const;
    std::string str() const;
};

/// [X + f, Y + g] = [X, Y] + X(g) - Y(f) modulo constants.
P1Element p1_bracket(const P1Element& e1, const P1Element& e2);

// ---------------------------------------------------------------------------
// Finite-dimensional algebras realized inside a model.

/// Filtration degree of a flat key, and the dimension of the manifold.
struct ModelGrading {
    std::function<int(const FlatKey&)> degree;
    std::size_t manifold_dim = 0;
};

ModelGrading p2_grading();
ModelGrading p1_grading();
ModelGrading plane_grading();

Flat flat_of(const PlaneVF& v);

struct RealizedAlgebra {
    std::string name;
    std::vector<std::string> labels;
    std::vector<std::string> elements; ///< printed basis elements
    std::vector<Flat> flats;
    ModelGrading grading;
    LieAlgebra algebra;
    /// First basis pair whose bracket leaves the span, if any.
    std::optional<std::pair<std::size_t, std::size_t>> closure_failure;
    /// Basis triples with nonzero Jacobiator computed in the model itself.
    std::size_t model_jacobi_failures = 0;

    std::size_t dim() const { return labels.size(); }
    bool closed() const { return !closure_failure; }
    /// Coordinates of an element in the basis; empty if outside the span.
    std::optional<Vec<Scalar>> coordinates(const Flat& f) const;
};

/// Span of flats as a matrix over the union of their keys.
struct FlatSpace {
    std::vector<FlatKey> keys;
    Matrix<Scalar> columns; ///< one column per flat
};
FlatSpace flat_space(const std::vector<Flat>& flats);

namespace detail {
RealizedAlgebra assemble(std::string name, std::vector<std::string> labels, std::vector<std::string> elements,
                         std::vector<Flat> flats, ModelGrading grading,
                         const std::function<Flat(std::size_t, std::size_t)>& bracket_flat,
                         const std::function<bool(std::size_t, std::size_t, std::size_t)>& jacobi_zero, Exec exec);
}

/// Computes the structure constants of span(basis) and checks closure and the
/// Jacobi identity in the model on every basis triple.
template <class E, class Bracket>
RealizedAlgebra realize(std::string name, std::vector<std::string> labels, const std::vector<E>& basis,
                        Bracket bracket, ModelGrading grading, Exec exec = Exec::parallel)
{
    std::vector<Flat> flats;
    std::vector<std::string> elements;
    for (const auto& b : basis) {
        flats.push_back(b.flat());
        elements.push_back(b.str());
    }
    auto bf = [&](std::size_t i, std::size_t j) { return bracket(basis[i], basis[j]).flat(); };
    auto jz = [&](std::size_t i, std::size_t j, std::size_t k) {
        const auto s = bracket(bracket(basis[i], basis[j]), basis[k]) +
                       bracket(bracket(basis[j], basis[k]), basis[i]) +
                       bracket(bracket(basis[k], basis[i]), basis[j]);
        return s.flat().empty();
    };
    return detail::assemble(std::move(name), std::move(labels), std::move(elements), std::move(flats),
                            std::move(grading), bf, jz, exec);
}

RealizedAlgebra realize_plane(std::string name, std::vector<std::string> labels, const std::vector<PlaneVF>& basis,
                              Exec exec = Exec::parallel);

/// g = g_{-1} > g_0 > g_1 > ... by order of vanishing at the origin.
struct Filtration {
    /// levels[j] is g_{j-1} in basis coordinates; the last level is zero.
    std::vector<Subspace<Scalar>> levels;
    bool transitive = false;
    std::size_t stability_dim = 0; ///< dim g_0
    std::size_t isotropy_dim = 0;  ///< dim g_0 / g_1
    /// dim of {z in g_0 : [z, g] in g_0}, the kernel of the linear isotropy
    /// representation on g / g_0.
    std::size_t isotropy_kernel_dim = 0;

    const Subspace<Scalar>& stability() const { return levels.at(1); }
};

Filtration order_filtration(const RealizedAlgebra& g);

// ---------------------------------------------------------------------------
// Primitive plane algebras.

enum class PlaneBase {
    hyperbolic, ///< sl2 of the hyperbolic plane, origin moved to a regular point
    sphere,     ///< so3 of the round sphere in stereographic coordinates
    sl2aff,     ///< sl2 + R^2
    euclid,     ///< so2 + R^2
    gl2aff,     ///< gl2 + R^2
    conf,       ///< span(Dx, Dy, E, J)
    euc_alpha,  ///< span(Dx, Dy, alpha E - J)
};

std::string to_string(PlaneBase b);
/// Accepts the to_string names; throws InputError.
PlaneBase parse_plane_base(const std::string& s);

struct PlaneAlgebra {
    PlaneBase base;
    std::vector<std::string> s_labels;
    std::vector<PlaneVF> s; ///< Levi or isotropy part
    std::vector<std::string> n_labels;
    std::vector<PlaneVF> n; ///< abelian ideal (translations), empty for simple bases
    /// Area density rho with rho(0) = 1 preserved by the fields.
    TruncSeries density;
    /// True when the density is not stated in closed form by the construction
    /// and its check is informational only.
    bool density_advisory = false;

    std::vector<PlaneVF> basis() const;
    std::vector<std::string> labels() const;
};

PlaneAlgebra plane_algebra(PlaneBase base, int degree, const Scalar& alpha = Scalar(0));

/// div(rho X) = 0 up to the truncation degree, for every basis field.
bool preserves_density(const PlaneAlgebra& a);

/// Name of the base whose span equals span(fields) among the four primitive
/// symplectic plane algebras, if any.
std::optional<PlaneBase> match_primitive_symplectic(const std::vector<PlaneVF>& fields, int degree);

// ---------------------------------------------------------------------------
// Finite-dimensional transitive subalgebras of the two models.

struct ConstructionReport {
    RealizedAlgebra g;
    Filtration filtration;
    std::size_t expected_dim = 0;
    std::size_t expected_stability_dim = 0;
    std::size_t expected_isotropy_dim = 0;
    /// Stability subalgebra equals the predicted one as a subspace.
    bool stability_matches = false;
    /// Name of the primitive algebra found transversally, empty if none.
    std::string transverse;
    bool density_ok = false;
    bool density_advisory = false;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

/// aff(R) + gbar + P^k_+ for hyperbolic/sphere, aff(R) + (s + P^N (x) n) + P^k_+
/// for sl2aff/euclid. Requires k >= 1, and 2N <= k (N = 0 for simple bases).
/// degree 0 selects max(2k + 2, 8). Throws InputError.
ConstructionReport build_thmK1(PlaneBase base, int k, int n_power = 0, int degree = 0, Exec exec = Exec::parallel);

/// Either P^k_+ or a sum of triangle modules W^{k,l} given by their tops.
struct XiSpec {
    int k = 0;
    std::vector<std::pair<int, int>> tops;

    /// "P3" / "P^3", or "W(1,1)+W(1,-1)". Throws ParseError.
    static XiSpec parse(const std::string& text);
    std::string str() const;
};

/// gtilde + xi inside the p1 model. Affine bases need xi = P^k_+; conf and
/// euc_alpha need triangle tops closed under l -> -l. Throws InputError with
/// the offending generator and polynomial if xi is not invariant.
ConstructionReport build_thmK2(PlaneBase base, const XiSpec& xi, const Scalar& alpha = Scalar(0), int degree = 0,
                               Exec exec = Exec::parallel);

// ---------------------------------------------------------------------------
// Triangle modules for conf(R^2).

/// Nodes P^{k,l} with k > 0 below the top (k0, l0), as pairs (k, l).
std::vector<std::pair<int, int>> triangle_nodes(int k0, int l0);

/// Real and imaginary parts of z^m zbar^n, m = (k+l)/2, n = (k-l)/2.
std::pair<TruncSeries, TruncSeries> node_real_pair(int k, int l, int degree);

/// Real polynomial basis (canonical form) of the real form of the sum of the
/// given triangle modules. Throws InputError unless conjugation-invariant.
std::vector<TruncSeries> triangle_real_basis(const std::vector<std::pair<int, int>>& tops, int degree);

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg H^1 and nonsplit extensions inside p2.

struct H1Result {
    std::size_t dim = 0;
    std::size_t dim_cocycles = 0;
    std::size_t dim_coboundaries = 0;
    /// representatives[r][i] = c(e_i) in module coordinates, canonical form.
    std::vector<std::vector<Vec<Scalar>>> representatives;
};

/// rho[i] is the action of basis element i on the module. Throws InputError if
/// rho is not a representation.
H1Result ce_h1(const LieAlgebra& g, const std::vector<Matrix<Scalar>>& rho);

/// A subalgebra of S^2(V) acting by the Poisson bracket on an invariant
/// subspace of S^2(V).
struct BracketModule {
    std::vector<SymTensor> algebra_basis;
    std::vector<SymTensor> module_basis;
    LieAlgebra algebra;
    std::vector<Matrix<Scalar>> rho;

    std::string cochain_str(const std::vector<Vec<Scalar>>& c) const;
};

/// Throws InputError if the algebra is not closed or the module not invariant.
BracketModule bracket_module(const SymplecticSpace& v, const std::vector<SymTensor>& algebra_gens,
                             const std::vector<SymTensor>& module_gens);

struct NonsplitResult {
    std::vector<SymTensor> generators; ///< X + c(X) + psi(X)
    bool closed = false;
    bool equations_hold = false;
    /// First pair (i, j) of basis indices violating the equations.
    std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
    std::string detail;
};

/// hbar is a basis of a subalgebra of sl(W); c maps it into p1 W and psi into
/// R p1^2 (n = 2). The graph {X + c(X) + psi(X)} is closed iff
/// c[X,Y] = [cX,Y] + [X,cY] and psi[X,Y] = [cX,cY].
NonsplitResult nonsplit_check(const std::vector<SymTensor>& hbar, const std::vector<SymTensor>& c,
                              const std::vector<SymTensor>& psi);

} // namespace symprol

#pragma once

#include "symprol/lie_algebra.hpp"
#include "symprol/poisson.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symprol {

/// Lie algebra with a scalar 2-form; valid when the form is a nondegenerate
/// 2-cocycle.
struct SymplecticLieAlgebra {
    std::string name;
    LieAlgebra g;
    Matrix<Scalar> omega; ///< omega(i, j) = w(e_i, e_j)

    std::size_t dim() const { return g.dim(); }
    Scalar w(const Vec<Scalar>& x, const Vec<Scalar>& y) const;
};

/// Text format, one statement per line, '#' starts a comment:
///   name aff(R)
///   dim 2
///   [e1,e2] = e2            (right side: sum of  [rational] e<k>)
///   w(e1,e2) = 1            (w(e2,e1) is implied)
/// Labels are e1..e<dim>. Throws ParseError with the line number.
SymplecticLieAlgebra parse_symplectic_algebra(std::string_view text);
/// Inverse of the parser.
std::string format_symplectic_algebra(const SymplecticLieAlgebra& a);

struct SymplecticCheck {
    bool antisymmetric = true;
    bool nondegenerate = true;
    std::optional<std::array<std::size_t, 3>> jacobi_failure;
    /// First triple with w([x,y],z) + w([y,z],x) + w([z,x],y) != 0.
    std::optional<std::array<std::size_t, 3>> cocycle_failure;

    bool ok() const { return antisymmetric && nondegenerate && !jacobi_failure && !cocycle_failure; }
    std::string str() const;
};

SymplecticCheck check_symplectic(const SymplecticLieAlgebra& a, Exec exec = Exec::parallel);

/// Bilinear product on a basis: table[i * dim + j] = e_i e_j.
class Product {
public:
    Product() = default;
    explicit Product(std::size_t dim);

    std::size_t dim() const { return m_dim; }
    const Vec<Scalar>& at(std::size_t i, std::size_t j) const { return m_table[i * m_dim + j]; }
    Vec<Scalar>& at(std::size_t i, std::size_t j) { return m_table[i * m_dim + j]; }
    Vec<Scalar> operator()(const Vec<Scalar>& x, const Vec<Scalar>& y) const;

    /// Left multiplication z -> xz and right multiplication z -> zx.
    Matrix<Scalar> left(const Vec<Scalar>& x) const;
    Matrix<Scalar> right(const Vec<Scalar>& x) const;

    friend bool operator==(const Product&, const Product&) = default;

private:
    std::size_t m_dim = 0;
    std::vector<Vec<Scalar>> m_table;
};

Vec<Scalar> unit(std::size_t dim, std::size_t i);

/// The product with w(xy, z) = -w(y, [x, z]). Throws InputError unless
/// check_symplectic passes.
Product lsa_from_symplectic(const SymplecticLieAlgebra& a);

struct LeftSymmetricCheck {
    /// First triple with (xy)z - x(yz) != (yx)z - y(xz).
    std::optional<std::array<std::size_t, 3>> associator_failure;
    /// First pair with xy - yx != [x, y].
    std::optional<std::array<std::size_t, 2>> commutator_failure;

    bool ok() const { return !associator_failure && !commutator_failure; }
};

LeftSymmetricCheck check_left_symmetric(const Product& p, const LieAlgebra& g, Exec exec = Exec::parallel);

/// nabla_x y = 2/3 xy - 1/3 yx.
Product connection(const Product& p);
/// Same connection written as xy + 1/3 N(x,y) + 1/3 N(y,x) with N(x,y) = -yx.
Product connection_via_correction(const Product& p);

struct ConnectionCheck {
    std::optional<std::array<std::size_t, 2>> torsion_failure;
    /// First triple with w(nabla_x y, z) + w(y, nabla_x z) != 0.
    std::optional<std::array<std::size_t, 3>> parallel_failure;

    bool ok() const { return !torsion_failure && !parallel_failure; }
};

ConnectionCheck check_connection(const SymplecticLieAlgebra& a, const Product& nabla);

/// curvature[i * dim + j] is R(e_i, e_j) = [nabla_i, nabla_j] - nabla_[e_i,e_j].
std::vector<Matrix<Scalar>> curvature(const LieAlgebra& g, const Product& nabla);
/// -1/9 [R_x, R_y] - 2/9 L_[x,y] + 1/9 R_[x,y] from the left-symmetric product.
std::vector<Matrix<Scalar>> curvature_closed_form(const LieAlgebra& g, const Product& p);

/// ric(x, y) = tr(z -> R(x, z) y).
Matrix<Scalar> ricci_from_curvature(const std::vector<Matrix<Scalar>>& curv, std::size_t dim);
/// 1/9 (tr L_xy + tr(L_x L_y)).
Matrix<Scalar> ricci(const Product& p);

/// kappa(x, y) = tr(L_x L_y).
Matrix<Scalar> left_trace_form(const Product& p);

struct TraceIdentities {
    /// w(xy, z) + w(zy, x) = 0
    std::optional<std::array<std::size_t, 3>> item1;
    /// cyclic sum of w(xy, z) = 0
    std::optional<std::array<std::size_t, 3>> item2;
    /// tr(R_x R_y) = tr R_xy = 2 tr L_xy
    std::optional<std::array<std::size_t, 2>> item3;
    /// tr(R_x R_y) = 2 tr(R_y L_x) = 2 tr(R_x L_y)
    std::optional<std::array<std::size_t, 2>> item4;

    bool ok() const { return !item1 && !item2 && !item3 && !item4; }
};

TraceIdentities trace_identities(const SymplecticLieAlgebra& a, const Product& p);

/// Everything computed for one symplectic Lie algebra.
struct FedosovReport {
    SymplecticLieAlgebra algebra;
    SymplecticCheck symplectic;
    Product product;
    LeftSymmetricCheck left_symmetric;
    Product nabla;
    bool paths_agree = false; ///< both connection formulas give the same table
    ConnectionCheck connection;
    std::vector<Matrix<Scalar>> curv;
    bool curvature_agrees = false;
    Matrix<Scalar> ric;
    bool ricci_agrees = false;
    bool ricci_symmetric = false;
    TraceIdentities traces;
    Matrix<Scalar> kappa;
    Matrix<Scalar> killing;
    bool nilpotent = false;
    bool solvable = false;

    /// Failed invariants, including nilpotent => ric = kappa = 0 and
    /// kappa = 0 => solvable.
    std::vector<std::string> failures() const;
};

/// Throws InputError if the algebra is not symplectic.
FedosovReport fedosov_report(const SymplecticLieAlgebra& a, Exec exec = Exec::parallel);

SymplecticLieAlgebra abelian_symplectic(std::size_t half_dim);
/// [e1,e2] = e2, w(e1,e2) = 1.
SymplecticLieAlgebra affine_line();
/// Nilpotent symplectic Lie algebras of dimension 4 and 6, abelian R^4 included.
std::vector<SymplecticLieAlgebra> nilpotent_corpus();

// ---------------------------------------------------------------------------
// Invariant connections on reductive spaces g = h + m.

struct ReductiveData {
    std::size_t m_dim = 0;
    std::vector<std::string> h_labels;
    std::vector<Matrix<Scalar>> h; ///< action of a basis of h on m
    /// [e_i, e_j] for basis vectors of m, split into the h part (coefficients in
    /// the h basis) and the m part; indexed i * m_dim + j.
    std::vector<Vec<Scalar>> bracket_h;
    std::vector<Vec<Scalar>> bracket_m;

    /// m with no h and the zero bracket.
    static ReductiveData flat(std::size_t m_dim);
};

/// Throws InputError if h is not closed, the bracket is not antisymmetric or
/// not h-equivariant, or Jacobi fails on m x m x m.
void check_reductive(const ReductiveData& d);

struct NomizuResult {
    bool consistent = false;
    /// Dimension of the solution space of the homogeneous system.
    std::size_t solution_dim = 0;
    /// L(e_i) for one solution, when consistent.
    std::vector<Matrix<Scalar>> particular;
    std::size_t unknowns = 0;
    std::size_t equations = 0;

    /// Zero or one solution.
    bool unique_or_none() const { return !consistent || solution_dim == 0; }
};

/// Linear maps L: m -> h with L(x)y - L(y)x = pi_m [x, y], and if
/// `equivariant` also L(A x) = [A, L(x)] for A in h.
NomizuResult nomizu_solutions(const ReductiveData& d, bool equivariant = true);

/// h = sp(V) on m = V = R^{2n}, zero bracket on m.
ReductiveData sp_flat(int n);
/// h = u(2) = sp(R^4) commuting with J (J p_i = q_i), m = R^4 with
/// [x, y] = (Jx)y - x(Jy) + c w(x, y) Z in h, Z = sum of the squares of the
/// basis vectors (an element of S^2(V) ~ sp(V)). Jacobi holds only for c = -1.
ReductiveData u2_symmetric(const Scalar& c = Scalar(-1));

} // namespace symprol

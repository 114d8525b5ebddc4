#pragma once

#include "symprol/prolongation.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symprol {

/// Named tensors of S^2(V), n = 2.
namespace lorentz {
SymTensor e0();
SymTensor e1();
SymTensor e2();
SymTensor F();
SymTensor K1();
SymTensor K2();
SymTensor L3();
} // namespace lorentz

/// Complex structure p_j -> q_j, q_j -> -p_j, as a 4x4 matrix on (p1, p2, q1, q2).
Matrix<Scalar> complex_structure_J();
/// Split analogue p1 -> q1, q1 -> -p1, p2 -> -q2, q2 -> p2.
Matrix<Scalar> split_structure_J();
/// Complex structure with J* Omega = -Omega: p1 -> p2, p2 -> -p1, q1 -> -q2, q2 -> q1.
Matrix<Scalar> anti_symplectic_J();

enum class ParamKind {
    sign,          ///< epsilon in {-1, +1}
    sign_or_zero,  ///< epsilon in {-1, 0, +1}
    nonzero,       ///< rational a != 0
    positive,      ///< rational a > 0
};

struct ParamSpec {
    std::string name;
    ParamKind kind;

    bool legal(const Scalar& value) const;
    /// Values exercised by verify_all.
    std::vector<Scalar> representatives() const;
    std::string describe() const;
};

using ParamMap = std::map<std::string, Scalar>;

struct CatalogEntry {
    std::string name;
    std::string group;
    std::vector<std::string> aliases;
    std::string description;
    std::vector<ParamSpec> params;
    std::function<std::vector<SymTensor>(const ParamMap&)> generators;
    std::size_t expected_dim = 0;
    bool finite_type = true;
    /// Known dim of the first prolongation (always 0 for finite type).
    std::optional<std::size_t> expected_h1;
};

const std::vector<CatalogEntry>& catalog();

/// Exact name first, then a unique alias. Throws InputError.
const CatalogEntry& find_entry(std::string_view name);

/// Checks that every declared parameter is bound to a legal value and that
/// nothing else is bound. Throws InputError.
void check_params(const CatalogEntry& e, const ParamMap& params);

LinearSubalgebra instantiate(const CatalogEntry& e, const ParamMap& params);
LinearSubalgebra instantiate(std::string_view name, const ParamMap& params);

struct VerifyReport {
    std::string name;
    ParamMap params;
    bool closed = false;
    std::size_t dim = 0;
    std::size_t dim_h1 = 0;
    TypeVerdict verdict;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

VerifyReport verify_entry(const CatalogEntry& e, const ParamMap& params,
                          const WitnessGrid& grid = WitnessGrid::standard());

/// Every entry at every combination of representative parameters, ordered by
/// entry name then parameters.
std::vector<VerifyReport> verify_all(const WitnessGrid& grid = WitnessGrid::standard(), Exec exec = Exec::parallel);

/// All combinations of representative values for the entry's parameters.
std::vector<ParamMap> representative_params(const CatalogEntry& e);

std::string params_str(const ParamMap& p);

// ---------------------------------------------------------------------------
// Goursat correspondence for s1 = sp(V1) + sp(V2).
//
// sl2 is coordinatized by (p^2, pq, q^2); on V1 this is (p1^2, p1q1, q1^2)
// and on V2 (p2^2, p2q2, q2^2).

namespace sl2 {
Subspace<Scalar> zero();
Subspace<Scalar> so2();  ///< p^2 + q^2
Subspace<Scalar> diag(); ///< pq
Subspace<Scalar> n2();   ///< p^2
Subspace<Scalar> b2();   ///< p^2, pq
Subspace<Scalar> full();
/// Bracket in sl2 coordinates.
Vec<Scalar> bracket(const Vec<Scalar>& x, const Vec<Scalar>& y);
/// Ad of diag(1, -1).
Matrix<Scalar> ad_diag();
} // namespace sl2

struct GoursatQuintuple {
    Subspace<Scalar> a, a0, b, b0;
    /// Canonical basis of A modulo A0 (reduced modulo A0, then echelon form).
    std::vector<Vec<Scalar>> quotient_basis;
    /// theta of each quotient basis vector, reduced modulo B0.
    std::vector<Vec<Scalar>> images;

    friend bool operator==(const GoursatQuintuple&, const GoursatQuintuple&) = default;
};

/// Builds a quintuple from a map given as a 3x3 matrix on sl2 coordinates,
/// applied to representatives of A/A0. Validates subalgebras, ideals and that
/// the induced map is a Lie algebra isomorphism. Throws MathError.
GoursatQuintuple make_quintuple(const Subspace<Scalar>& a, const Subspace<Scalar>& a0, const Subspace<Scalar>& b,
                                const Subspace<Scalar>& b0, const Matrix<Scalar>& theta);

/// Empty string if valid, else the first violated condition.
std::string quintuple_violation(const GoursatQuintuple& q);

LinearSubalgebra goursat_subalgebra(const GoursatQuintuple& q);
/// Requires h inside s1; throws MathError otherwise.
GoursatQuintuple goursat_quintuple(const LinearSubalgebra& h);

struct NamedQuintuple {
    std::string name;
    GoursatQuintuple q;
};

/// The quintuples describing finite-type subalgebras of s1 up to conjugation:
/// Cartan pairs with trivial quotient, twisted diagonals of Cartan
/// subalgebras by nonzero multiples of the identity, and twisted diagonals
/// of n2, b2, sl2 by id and Ad diag(1,-1).
std::vector<NamedQuintuple> finite_type_quintuples();

} // namespace symprol

#pragma once

#include "symprol/exec.hpp"
#include "symprol/matrix.hpp"
#include "symprol/scalar.hpp"
#include "symprol/subspace.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace symprol {

/// "2 e1 - 1/2 e3"; "0" for the zero vector.
std::string combination_str(const Vec<Scalar>& coeffs, const std::vector<std::string>& labels);

/// Finite-dimensional Lie algebra given by structure constants on a labelled
/// basis. Antisymmetry is enforced by set_bracket; Jacobi is checked on demand.
class LieAlgebra {
public:
    LieAlgebra() = default;
    /// Abelian algebra on the given labels.
    explicit LieAlgebra(std::vector<std::string> labels);

    std::size_t dim() const { return m_labels.size(); }
    const std::vector<std::string>& labels() const { return m_labels; }
    const std::string& label(std::size_t i) const { return m_labels.at(i); }
    /// Index of a label; throws InputError.
    std::size_t index_of(const std::string& label) const;

    /// Sets [e_i, e_j] = v and [e_j, e_i] = -v. Throws MathError for i == j with v != 0.
    void set_bracket(std::size_t i, std::size_t j, const Vec<Scalar>& v);
    const Vec<Scalar>& bracket(std::size_t i, std::size_t j) const { return m_table[i * dim() + j]; }
    Vec<Scalar> bracket(const Vec<Scalar>& x, const Vec<Scalar>& y) const;

    /// Column j is [x, e_j].
    Matrix<Scalar> ad(const Vec<Scalar>& x) const;
    Matrix<Scalar> ad(std::size_t i) const;

    /// First basis triple i < j < k with a nonzero Jacobiator.
    std::optional<std::array<std::size_t, 3>> jacobi_violation(Exec exec = Exec::parallel) const;
    bool is_lie() const { return !jacobi_violation(); }

    /// Nonzero structure constants, one bracket per line: "[a,b] = 2 c".
    std::string table_str() const;

    friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

private:
    std::vector<std::string> m_labels;
    std::vector<Vec<Scalar>> m_table;
};

/// Span of [a, b] for a in A, b in B.
Subspace<Scalar> bracket_span(const LieAlgebra& g, const Subspace<Scalar>& a, const Subspace<Scalar>& b);

/// g, [g,g], [[g,g],[g,g]], ... until it stabilizes.
std::vector<Subspace<Scalar>> derived_series(const LieAlgebra& g);
/// g, [g,g], [g,[g,g]], ... until it stabilizes.
std::vector<Subspace<Scalar>> lower_central_series(const LieAlgebra& g);

bool is_solvable(const LieAlgebra& g);
bool is_nilpotent(const LieAlgebra& g);

Subspace<Scalar> center(const LieAlgebra& g);
Matrix<Scalar> killing_form(const LieAlgebra& g);

/// Restriction of the bracket to a subalgebra, in the canonical basis of s.
/// Throws MathError if s is not closed.
LieAlgebra subalgebra(const LieAlgebra& g, const Subspace<Scalar>& s, const std::string& prefix = "b");

} // namespace symprol

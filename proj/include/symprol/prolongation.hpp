#pragma once

#include "symprol/poisson.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symprol {

/// Subspace of S^2(V) together with the space it lives in.
struct LinearSubalgebra {
    SymplecticSpace space;
    Subspace<Scalar> span;
    bool closure_checked = false;

    std::size_t dim() const { return span.dim(); }
    std::vector<SymTensor> basis() const { return tensors_of(space, 2, span); }
};

/// First basis pair whose bracket leaves the span, if any.
std::optional<std::pair<SymTensor, SymTensor>> closure_violation(const SymplecticSpace& v, const Subspace<Scalar>& s);
bool is_subalgebra(const SymplecticSpace& v, const Subspace<Scalar>& s);

/// Spans the generators and checks closure. Throws MathError naming the
/// violating pair if the span is not a subalgebra.
LinearSubalgebra make_subalgebra(const SymplecticSpace& v, const std::vector<SymTensor>& generators);

/// levels[k] is h^(k), a subspace of S^{k+2}(V).
struct ProlongationChain {
    SymplecticSpace space;
    std::vector<Subspace<Scalar>> levels;

    std::vector<std::size_t> dims() const;
};

/// {T in S^{k+2}(V) : [T, e_j] in prev for all j}, where prev sits in S^{k+1}(V).
Subspace<Scalar> prolong_step(const SymplecticSpace& v, const Subspace<Scalar>& prev, Exec exec = Exec::parallel);

/// h^(0..kmax). Stops computing once a level vanishes (later levels are zero).
ProlongationChain prolong_chain(const LinearSubalgebra& h, int kmax = 4, Exec exec = Exec::parallel);

enum class Parabolic { p1, p2 };

/// Closed-form k-th prolongation of the parabolic subalgebras for n = 2:
/// p1^(k) is spanned by monomials of q-degree at most 1, p2^(k) by monomials
/// free of q1 together with p1^{k+1} q1.
Subspace<Scalar> parabolic_prolong_closed_form(Parabolic which, int k);

/// Coefficients tried in the pairwise witness search.
struct WitnessGrid {
    std::vector<GScalar> values;

    /// {0, +-1, +-2, +-i, +-1+-i}
    static WitnessGrid standard();
    /// Comma separated Gaussian rationals, e.g. "0,1,-1,2,i,1+i".
    static WitnessGrid parse(std::string_view text);
    /// SYMPROL_WITNESS_GRID if set, otherwise standard().
    static WitnessGrid from_env();
};

struct WitnessResult {
    std::optional<GSymTensor> witness;
    /// True when absence of a witness is certified (lines), or when a rank-one
    /// element is certified to exist over C without a Q(i) representative.
    bool certified = false;
    bool exists_over_c = false;
    std::string note;
};

/// Rank of quad_to_matrix(t).
std::size_t tensor_rank(const SymplecticSpace& v, const GSymTensor& t);

WitnessResult rank_one_witness(const SymplecticSpace& v, const Subspace<GScalar>& s,
                               const WitnessGrid& grid = WitnessGrid::standard());

/// 4 x1 x3 - x2^2 for X = x1 p1^2 + x2 p1 p2 + x3 p2^2 in S^2(P), n = 2.
/// A line RX has infinite type iff this vanishes.
Scalar s2p_norm(const SymTensor& t);
bool in_s2p(const SymplecticSpace& v, const GSymTensor& t);

enum class TypeKind { finite, infinite, undecided };
std::string to_string(TypeKind k);

struct TypeVerdict {
    TypeKind kind = TypeKind::undecided;
    std::string reason;
    std::optional<GSymTensor> witness;
    std::size_t dim_h = 0;
    std::size_t dim_h1 = 0;
    std::vector<SymTensor> h1_basis;
};

/// h1 = 0 gives Finite. Otherwise a rank-one witness gives Infinite; for
/// n = 2 a nonzero first prolongation is itself decisive (finite-type
/// subalgebras of sp4 have vanishing first prolongation). Failing both, a
/// vanishing higher level up to kmax gives Finite, else Undecided.
TypeVerdict finite_type_verdict(const LinearSubalgebra& h, const WitnessGrid& grid = WitnessGrid::standard(),
                                int kmax = 4, Exec exec = Exec::parallel);

} // namespace symprol

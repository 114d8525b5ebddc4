// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "symprol/catalog.hpp"
#include "symprol/fedosov.hpp"
#include "symprol/realizations.hpp"

#include <exception>
#include <functional>
#include <iostream>
#include <sstream>

using namespace symprol;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string first_failure;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            first_failure = what;
        }
    }
};

const SymplecticSpace V2(2);

SymTensor T(const char* s)
{
    return parse_tensor(V2, s);
}

std::size_t h1_dim(const LinearSubalgebra& h)
{
    return prolong_chain(h, 1).levels.at(1).dim();
}

void maximal_finite(Outcome& o)
{
    std::size_t count = 0;
    for (const auto& e : catalog()) {
        if (e.group != "maxfin")
            continue;
        for (const auto& p : representative_params(e)) {
            const auto h = instantiate(e, p);
            const std::string tag = e.name + " " + params_str(p);
            o.require(is_subalgebra(h.space, h.span), tag + " not closed");
            o.require(h.dim() <= 4, tag + " has dim > 4");
            o.require(h1_dim(h) == 0, tag + " has h1 != 0");
            ++count;
        }
    }
    o.require(count >= 7, "fewer than 7 items");
    o.detail << count << " instances closed, dim <= 4, h1 = 0";
}

void infinite_suite(Outcome& o)
{
    for (const char* name : {"p1", "p2", "s1", "s4"}) {
        const auto v = finite_type_verdict(instantiate(name, {}));
        o.require(v.kind == TypeKind::infinite, std::string(name) + " not Infinite");
    }
    for (const char* name : {"s2", "s3", "s5"}) {
        const auto h = instantiate(name, {});
        const auto v = finite_type_verdict(h);
        o.require(v.kind == TypeKind::finite && h1_dim(h) == 0, std::string(name) + " not Finite with h1 = 0");
    }
    o.detail << "p1 p2 s1 s4 Infinite; s2 s3 s5 Finite with h1 = 0";
}

void prolongation_dims(Outcome& o)
{
    const auto sp = prolong_chain(instantiate("sp4", {}), 2).dims();
    o.require(sp == std::vector<std::size_t>{10, 20, 35}, "sp(V) chain is not 10, 20, 35");
    const auto p1 = prolong_chain(instantiate("p1", {}), 1).levels.at(1);
    const auto p2 = prolong_chain(instantiate("p2", {}), 1).levels.at(1);
    o.require(p1.dim() == 10 && p1 == parabolic_prolong_closed_form(Parabolic::p1, 1), "p1^(1) mismatch");
    o.require(p2.dim() == 11 && p2 == parabolic_prolong_closed_form(Parabolic::p2, 1), "p2^(1) mismatch");
    o.require(h1_dim(instantiate("s1", {})) == 8, "s1^(1) != 8");
    o.detail << "sp(V): 10 20 35; p1^(1) = 10, p2^(1) = 11 equal closed forms; s1^(1) = 8";
}

void tables(Outcome& o)
{
    const auto qs = finite_type_quintuples();
    for (const auto& [name, q] : qs) {
        const auto h = goursat_subalgebra(q);
        o.require(goursat_quintuple(h) == q, "quintuple " + name + " does not roundtrip");
        o.require(h1_dim(h) == 0, "quintuple " + name + " has h1 != 0");
    }
    std::size_t rows = 0;
    for (const auto& e : catalog()) {
        if (e.group != "p1fin")
            continue;
        for (const auto& p : representative_params(e)) {
            const auto h = instantiate(e, p);
            o.require(is_subalgebra(h.space, h.span) && h1_dim(h) == 0, e.name + " " + params_str(p));
            ++rows;
        }
    }
    const auto verdict_of = [&](const std::string& name, TypeKind want) {
        const auto& e = find_entry(name);
        for (const auto& p : representative_params(e)) {
            const auto r = verify_entry(e, p);
            o.require(r.pass() && r.verdict.kind == want, name + " " + params_str(p));
        }
    };
    for (const char* n : {"p2sub.iii", "p2sub.iv", "p2sub.vii", "p2sub.viii", "p2sub.ix", "p2sub.x"})
        verdict_of(n, TypeKind::finite);
    for (const char* n : {"p2sub.i", "p2sub.ii", "p2sub.vi"})
        verdict_of(n, TypeKind::infinite);
    o.detail << qs.size() << " quintuples roundtrip; " << rows
             << " p1 table instances h1 = 0; p2 entries iii iv vii-x Finite, i ii vi Infinite";
}

void ce_cohomology(Outcome& o)
{
    const auto b2 = bracket_module(V2, {T("p2^2"), T("p2*q2")}, {T("p1^2")});
    const auto hb = ce_h1(b2.algebra, b2.rho);
    o.require(hb.dim == 1 && b2.cochain_str(hb.representatives.at(0)) == "c(p2^2) = 0; c(p2*q2) = p1^2",
              "H1(b2, R p1^2)");
    const auto n2 = bracket_module(V2, {T("p2^2")}, {T("p1*p2"), T("p1*q2")});
    const auto hn = ce_h1(n2.algebra, n2.rho);
    o.require(hn.dim == 1 && n2.cochain_str(hn.representatives.at(0)) == "c(p2^2) = p1*q2", "H1(n2, p1 W)");
    const std::vector<std::vector<SymTensor>> zero{
        {T("p2^2"), T("p2*q2"), T("q2^2")}, {T("p2*q2")}, {T("p2^2 + q2^2")}, {T("p2^2"), T("p2*q2")}};
    for (const auto& alg : zero) {
        const auto m = bracket_module(V2, alg, {T("p1*p2"), T("p1*q2")});
        o.require(ce_h1(m.algebra, m.rho).dim == 0, "H1 on p1 W not zero");
    }
    o.detail << "H1(b2, R p1^2) = 1, H1(n2, p1 W) = 1 with c(p2^2) = p1*q2, " << zero.size() << " other cases 0";
}

void constructions(Outcome& o)
{
    std::size_t built = 0;
    const auto check = [&](const ConstructionReport& r, bool kernel_expected) {
        std::string why = r.g.name;
        for (const auto& f : r.failures)
            why += "; " + f;
        o.require(r.pass(), why);
        o.require(!r.g.algebra.jacobi_violation(), r.g.name + " Jacobi");
        o.require(r.g.algebra.dim() == r.expected_dim, r.g.name + " dim");
        o.require(r.filtration.stability_dim == r.expected_stability_dim &&
                      r.filtration.isotropy_dim == r.expected_isotropy_dim,
                  r.g.name + " stability/isotropy");
        o.require((r.filtration.isotropy_kernel_dim > 0) == kernel_expected, r.g.name + " isotropy kernel");
        ++built;
    };
    for (auto b : {PlaneBase::hyperbolic, PlaneBase::sphere, PlaneBase::sl2aff, PlaneBase::euclid})
        for (int k = 1; k <= 3; ++k) {
            const bool affine = b == PlaneBase::sl2aff || b == PlaneBase::euclid;
            for (int n = 0; n <= (affine ? std::min(1, k / 2) : 0); ++n) {
                const auto r = build_thmK1(b, k, n);
                const std::size_t gbar = plane_algebra(b, 4).basis().size();
                const std::size_t s = plane_algebra(b, 4).s.size();
                const std::size_t law = 2 + (affine ? s + (n + 1) * 2 : gbar) + k;
                o.require(r.g.algebra.dim() == law, r.g.name + " dimension law");
                check(r, k > 2);
            }
        }
    for (auto b : {PlaneBase::sl2aff, PlaneBase::gl2aff})
        for (int k = 1; k <= 3; ++k)
            check(build_thmK2(b, XiSpec::parse("P" + std::to_string(k))), k > 2);
    for (int k = 1; k <= 3; ++k) {
        const std::string w = "W(" + std::to_string(k) + "," + std::to_string(k) + ")+W(" + std::to_string(k) + ",-" +
                              std::to_string(k) + ")";
        check(build_thmK2(PlaneBase::conf, XiSpec::parse(w)), k > 2);
    }
    o.detail << built << " constructions: Jacobi exact, dims and stability/isotropy match, kernel iff degree > 2";
}

/// Brute-force Ricci form: solve w(xy, z) = -w(y, [x, z]) entrywise, build
/// nabla_x y = 2/3 xy - 1/3 yx, then R(x, z) by the definition.
Matrix<Scalar> ricci_oracle(const SymplecticLieAlgebra& a)
{
    const std::size_t n = a.dim();
    const auto winv = *inverse(a.omega.transpose());
    std::vector<Matrix<Scalar>> left(n, Matrix<Scalar>(n, n)); // left[x](:, y) = xy
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            // w(xy, e_z) for each z, as a vector b; omega^T * (xy) = b
            Vec<Scalar> b(n, Scalar(0));
            for (std::size_t z = 0; z < n; ++z)
                for (std::size_t m = 0; m < n; ++m)
                    b[z] -= a.omega(y, m) * a.g.bracket(x, z)[m];
            const auto xy = winv.apply(b);
            for (std::size_t m = 0; m < n; ++m)
                left[x](m, y) = xy[m];
        }
    std::vector<Matrix<Scalar>> nab(n, Matrix<Scalar>(n, n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t m = 0; m < n; ++m)
                nab[x](m, y) = Scalar(2, 3) * left[x](m, y) - Scalar(1, 3) * left[y](m, x);
    Matrix<Scalar> ric(n, n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            Matrix<Scalar> nb(n, n);
            for (std::size_t m = 0; m < n; ++m)
                nb = nb + a.g.bracket(x, z)[m] * nab[m];
            const auto r = nab[x] * nab[z] - nab[z] * nab[x] - nb;
            for (std::size_t y = 0; y < n; ++y)
                ric(x, y) += r(z, y); // tr(z -> R(x, z) y)
        }
    return ric;
}

void fedosov(Outcome& o)
{
    auto all = nilpotent_corpus();
    all.push_back(affine_line());
    std::size_t nil = 0;
    for (const auto& a : all) {
        const auto r = fedosov_report(a);
        std::string why = a.name;
        for (const auto& f : r.failures())
            why += "; " + f;
        o.require(r.failures().empty(), why);
        o.require(r.left_symmetric.ok() && r.connection.ok() && r.curvature_agrees && r.ricci_agrees &&
                      r.traces.ok(),
                  a.name + " invariants");
        o.require(r.ric == ricci_oracle(a), a.name + " ricci differs from oracle");
        if (r.nilpotent) {
            ++nil;
            o.require(r.ric.is_zero() && r.kappa.is_zero(), a.name + " nilpotent with ric or kappa != 0");
        }
    }
    const auto aff = ricci_oracle(affine_line());
    o.require(aff(0, 0) == Scalar(2, 9), "aff(R) ric(e1,e1) != 2/9");
    o.detail << all.size() << " algebras (" << nil << " nilpotent); aff(R) ric(e1,e1) = " << aff(0, 0).str();
}

void nomizu(Outcome& o)
{
    const auto u2 = nomizu_solutions(u2_symmetric());
    o.require(u2.unique_or_none(), "u2 Nomizu system has several solutions");
    const auto sp = nomizu_solutions(sp_flat(2), false);
    o.require(sp.consistent && sp.solution_dim == 20 && sp.solution_dim == dim_sym(2, 3), "sp(R^4) homogeneous dim");
    o.detail << "u2: " << (u2.consistent ? "unique solution" : "no solution") << "; sp(R^4) unconstrained dim "
             << sp.solution_dim << " = dim S^3(V)";
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"maximal-finite-type-suite", maximal_finite},       {"infinite-type-suite", infinite_suite},
        {"prolongation-dimensions", prolongation_dims}, {"tables-suite", tables},
        {"ce-cohomology", ce_cohomology},    {"k1-k2-constructions", constructions},
        {"fedosov-suite", fedosov},          {"nomizu-uniqueness", nomizu},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << ' ' << criteria[i].first << ": "
                  << (o.pass ? o.detail.str() : o.first_failure) << '\n';
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}

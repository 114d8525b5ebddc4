#include "symprol/catalog.hpp"

#include <doctest.h>

#include <set>

using namespace symprol;

namespace {

const SymplecticSpace V2(2);

SymTensor T(const char* s)
{
    return parse_tensor(V2, s);
}

Subspace<Scalar> span2(const std::vector<SymTensor>& ts)
{
    return span_of(V2, 2, ts);
}

bool commutes_with(const LinearSubalgebra& h, const Matrix<Scalar>& j)
{
    for (const auto& t : h.basis()) {
        const auto m = quad_to_matrix(V2, t);
        if (!(m * j == j * m))
            return false;
    }
    return true;
}

ParamMap eps(long e)
{
    return {{"eps", Scalar(e)}};
}

} // namespace

TEST_CASE("catalog names are unique and aliases resolve")
{
    std::set<std::string> names;
    for (const auto& e : catalog())
        CHECK(names.insert(e.name).second);
    CHECK(find_entry("u2").name == "s2=u2");
    CHECK(find_entry("D_{4,12}").name == "maxfin.6");
    CHECK(find_entry("F_{6,5}").name == "p1fin.F_{6,5}");
    CHECK_THROWS_AS(find_entry("nonsense"), InputError);
}

TEST_CASE("parameter checking")
{
    const auto& e = find_entry("maxfin.6");
    CHECK_THROWS_AS(instantiate(e, {}), InputError);
    CHECK_THROWS_AS(instantiate(e, eps(0)), InputError);
    CHECK_THROWS_AS(instantiate(e, eps(2)), InputError);
    CHECK_THROWS_AS(instantiate(e, {{"eps", Scalar(1)}, {"a", Scalar(1)}}), InputError);
    CHECK(instantiate(e, eps(-1)).dim() == 2);
    CHECK_THROWS_AS(instantiate("p1fin.D_{6,13}", {{"a", Scalar(-1)}}), InputError);
    CHECK_THROWS_AS(instantiate("p1fin.~F_{3,9}", {{"a", Scalar(0)}}), InputError);
    CHECK(instantiate("p1fin.~F_{3,9}", {{"a", Scalar(1, 3)}}).dim() == 1);
}

TEST_CASE("lorentz combinations")
{
    using namespace lorentz;
    CHECK(K2() + L3() == T("p2*q1"));
    CHECK(e0() + e1() == T("p1^2"));
    CHECK(e0() - e1() == T("p2^2"));
    CHECK(F() - K1() == T("-p1*q1"));
    CHECK(F() + K1() == T("-p2*q2"));
}

TEST_CASE("maximal subalgebras and their structures")
{
    const auto u2 = instantiate("s2=u2", {});
    const auto u11 = instantiate("s3=u11", {});
    const auto s4 = instantiate("s4=sl2C", {});
    CHECK(commutes_with(u2, complex_structure_J()));
    CHECK(commutes_with(u11, split_structure_J()));
    CHECK(commutes_with(s4, anti_symplectic_J()));

    const auto om = V2.omega_matrix();
    const auto j = anti_symplectic_J();
    CHECK(j * j == Scalar(-1) * Matrix<Scalar>::identity(4));
    CHECK(j.transpose() * om * j == Scalar(-1) * om);
    CHECK(complex_structure_J().transpose() * om * complex_structure_J() == om);
    CHECK(split_structure_J().transpose() * om * split_structure_J() == om);

    // the commutant of J inside sp4 is exactly s4
    std::vector<Vec<Scalar>> rows;
    const auto& basis = sym_basis(2, 2);
    Matrix<Scalar> sys(16, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto m = quad_to_matrix(V2, SymTensor::monomial(2, basis[c]));
        const auto d = m * j - j * m;
        for (std::size_t r = 0; r < 16; ++r)
            sys(r, c) = d(r / 4, r % 4);
    }
    CHECK(kernel(sys) == s4.span);
}

TEST_CASE("D_{4,13} forms coincide")
{
    for (long e : {-1L, 1L}) {
        const auto a = instantiate("p1fin.D_{4,13}", eps(e));
        const auto b = instantiate("p1fin.D_{4,13}'", eps(e));
        CHECK(a.span == b.span);
        CHECK(instantiate("p1max.3.D413", eps(e)).span == a.span);
    }
}

TEST_CASE("sign conventions of D_{4,12} and D_{6,14}")
{
    for (long e : {-1L, 1L}) {
        const auto d412 = instantiate("p1fin.D_{4,12}", eps(e));
        CHECK(d412.span == instantiate("maxfin.6", eps(-e)).span);
        const auto d614 = instantiate("p1fin.D_{6,14}", eps(e));
        CHECK(d614.span == span2({T("p2*q2") - Scalar(e) * T("p1^2"), T("p1*p2")}));
    }
}

TEST_CASE("normalizer entries computed independently")
{
    using namespace lorentz;
    const std::vector<SymTensor> co = {F(), K1(), K2(), L3()};
    for (const auto& [x, name] : {std::pair{e0(), "p1max.2.e0"}, std::pair{e2(), "p1max.2.e2"}}) {
        const auto line = span2({x});
        std::vector<Vec<Scalar>> cols;
        for (const auto& c : co)
            cols.push_back(line.reduce(poisson_bracket(V2, c, x).coordinates(2)));
        const auto ker = kernel(Matrix<Scalar>::from_columns(cols, dim_sym(2, 2)));
        std::vector<SymTensor> nor{x};
        for (const auto& k : ker.vectors()) {
            SymTensor t(2, 2);
            for (std::size_t i = 0; i < co.size(); ++i)
                t += k[i] * co[i];
            nor.push_back(t);
        }
        CHECK(span2(nor) == instantiate(name, {}).span);
    }
    CHECK(instantiate("p1max.2.e0", {}).span == instantiate("DF_{5,3}", {}).span);
    CHECK(instantiate("p1max.2.e2", {}).span == instantiate("DF_{3,5}", {}).span);
}

TEST_CASE("p2max.5 with eps = -1 has both lines of negative norm")
{
    using namespace lorentz;
    CHECK(s2p_norm(e1()) < Scalar(0));
    CHECK(s2p_norm(e2()) < Scalar(0));
    CHECK(s2p_norm(e0()) > Scalar(0));
    const auto h = instantiate("p2max.5", eps(-1));
    CHECK(h.span.contains((Scalar(-2) * e1()).coordinates(2)));
}

TEST_CASE("verify_all passes and is deterministic")
{
    const auto par = verify_all(WitnessGrid::standard(), Exec::parallel);
    const auto ser = verify_all(WitnessGrid::standard(), Exec::serial);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        std::string why;
        for (const auto& f : par[i].failures)
            why += f + "; ";
        INFO(par[i].name << " " << params_str(par[i].params) << " " << why);
        CHECK(par[i].pass());
        CHECK(par[i].name == ser[i].name);
        CHECK(par[i].params == ser[i].params);
        CHECK(par[i].dim_h1 == ser[i].dim_h1);
        CHECK(par[i].verdict.kind == ser[i].verdict.kind);
    }
    for (std::size_t i = 1; i < par.size(); ++i)
        CHECK(par[i - 1].name <= par[i].name);
}

TEST_CASE("verify reports a wrong expectation")
{
    CatalogEntry bogus = find_entry("S2P");
    bogus.finite_type = true;
    bogus.expected_h1 = 0;
    const auto r = verify_entry(bogus, {});
    CHECK_FALSE(r.pass());
    CatalogEntry open = find_entry("S2P");
    open.generators = [](const ParamMap&) { return std::vector<SymTensor>{T("p1^2"), T("q1^2")}; };
    const auto r2 = verify_entry(open, {});
    CHECK_FALSE(r2.closed);
    CHECK_FALSE(r2.pass());
}

TEST_CASE("goursat quintuples")
{
    const auto qs = finite_type_quintuples();
    CHECK(qs.size() == 9 + 6 + 6);
    for (const auto& [name, q] : qs) {
        INFO(name);
        CHECK(quintuple_violation(q).empty());
        const auto h = goursat_subalgebra(q);
        CHECK(goursat_quintuple(h) == q);
        const auto v = finite_type_verdict(h);
        CHECK(v.kind == TypeKind::finite);
    }
    const auto h2 = goursat_subalgebra(
        make_quintuple(sl2::full(), sl2::zero(), sl2::full(), sl2::zero(), Matrix<Scalar>::identity(3)));
    CHECK(h2.span == instantiate("s1sub.h2", {}).span);
    const auto h3 =
        goursat_subalgebra(make_quintuple(sl2::full(), sl2::zero(), sl2::full(), sl2::zero(), sl2::ad_diag()));
    CHECK(h3.span == instantiate("s1sub.h3", {}).span);
}

TEST_CASE("goursat roundtrip on every subalgebra of s1 from the catalog")
{
    for (const auto& e : catalog())
        for (const auto& p : representative_params(e)) {
            const auto h = instantiate(e, p);
            bool inside = true;
            for (const auto& t : h.basis())
                for (const auto& [m, c] : t.terms())
                    inside = inside && (m[0] % 2) == (m[1] % 2);
            if (!inside)
                continue;
            INFO(e.name);
            const auto q = goursat_quintuple(h);
            CHECK(goursat_subalgebra(q).span == h.span);
        }
}

TEST_CASE("goursat rejects bad data")
{
    // theta must be a homomorphism: 2 * id on b2 is not
    CHECK_THROWS_AS(
        make_quintuple(sl2::b2(), sl2::zero(), sl2::b2(), sl2::zero(), Scalar(2) * Matrix<Scalar>::identity(3)),
        MathError);
    // A0 must be an ideal
    CHECK_THROWS_AS(make_quintuple(sl2::full(), sl2::diag(), sl2::diag(), sl2::zero(), Matrix<Scalar>::identity(3)),
                    MathError);
    CHECK_THROWS_AS(goursat_quintuple(instantiate("p2sub.iv", {})), MathError);
}

TEST_CASE("goursat random roundtrip")
{
    // quintuples with theta = scalar * Ad-power on diagonal Cartan subalgebras
    for (long lam = -3; lam <= 3; ++lam) {
        if (lam == 0)
            continue;
        for (const auto& c : {sl2::diag(), sl2::so2()}) {
            const auto q = make_quintuple(c, sl2::zero(), c, sl2::zero(), Scalar(lam) * Matrix<Scalar>::identity(3));
            const auto h = goursat_subalgebra(q);
            CHECK(h.dim() == 1);
            CHECK(goursat_quintuple(h) == q);
        }
    }
}

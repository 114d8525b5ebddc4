#include "symprol/poisson.hpp"

#include <doctest.h>

#include <random>

using namespace symprol;

namespace {

const SymplecticSpace V2(2);

SymTensor T(const char* text) { return parse_tensor(V2, text); }

SymTensor random_tensor(std::mt19937& rng, const SymplecticSpace& v, int k)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> pick(0, 3);
    SymTensor t(v.n(), k);
    for (const auto& m : sym_basis(v.n(), k))
        if (pick(rng) == 0)
            t.add_term(m, Scalar(coef(rng), 1 + pick(rng)));
    return t;
}

} // namespace

TEST_CASE("omega convention")
{
    CHECK(omega(V2, T("p1"), T("q1")) == Scalar(-1));
    CHECK(omega(V2, T("q1"), T("p1")) == Scalar(1));
    CHECK(omega(V2, T("p1"), T("p2")) == Scalar(0));
    CHECK_THROWS_AS(omega(V2, T("p1^2"), T("p1")), MathError);
}

TEST_CASE("quad_action on basis vectors")
{
    CHECK(quad_action(V2, T("q1*p1"), T("p1")) == T("p1"));
    CHECK(quad_action(V2, T("q1*p1"), T("q1")) == T("-q1"));
    CHECK(quad_action(V2, T("p1*p2"), T("q1")) == T("-p2"));
    CHECK(quad_action(V2, T("p1^2"), T("q2")).is_zero());
    CHECK(quad_action(V2, T("p1^2"), T("q1")) == T("-2*p1"));
    CHECK_THROWS_AS(quad_action(V2, T("p1"), T("q2")), MathError);
}

TEST_CASE("quad_to_matrix examples")
{
    const auto m = quad_to_matrix(V2, T("q1*p1"));
    Matrix<Scalar> expect(4, 4);
    expect(V2.p(1), V2.p(1)) = Scalar(1);
    expect(V2.q(1), V2.q(1)) = Scalar(-1);
    CHECK(m == expect);
    CHECK(quad_to_matrix(V2, SymTensor(2, 2)).is_zero());
    CHECK(rank(quad_to_matrix(V2, T("p2*q2"))) == 2);
    CHECK(rank(quad_to_matrix(V2, T("p1^2"))) == 1);
    CHECK(matrix_to_quad(V2, m) == T("p1*q1"));
    CHECK_THROWS_AS(matrix_to_quad(V2, Matrix<Scalar>::identity(4)), MathError);
}

TEST_CASE("poisson bracket examples")
{
    CHECK(poisson_bracket(V2, T("q1*p1"), T("p1^2")) == T("2*p1^2"));
    CHECK(poisson_bracket(V2, T("p1^2"), T("p1^2")).is_zero());
    CHECK(poisson_bracket(V2, T("p1"), T("q1*p1")) == T("-p1"));
    CHECK(poisson_bracket(V2, T("p1"), T("q1*p1")) == -quad_action(V2, T("q1*p1"), T("p1")));
    // constants are dropped
    CHECK(poisson_bracket(V2, T("p1"), T("q1")).is_zero());
    const auto full = poisson_monomials(V2, {0}, {2});
    REQUIRE(full.size() == 1);
    CHECK(full.begin()->first.empty());
    CHECK(full.begin()->second == Scalar(-1));
}

TEST_CASE("dim_sym")
{
    CHECK(dim_sym(2, 2) == 10);
    CHECK(dim_sym(2, 3) == 20);
    CHECK(dim_sym(2, 4) == 35);
    CHECK(sym_basis(2, 3).size() == 20);
    CHECK(dim_sym(3, 0) == 1);
}

TEST_CASE("tensor printer and parser")
{
    CHECK(T("2*p1^2 - p1*q1 + 1/2*q2^2").str() == "2*p1^2 - p1*q1 + 1/2*q2^2");
    CHECK(T("2 p1 q1") == T("2*p1*q1"));
    CHECK(T("q1*p1") == T("p1*q1"));
    CHECK(T("p1^2 - p1^2").str() == "0");
    CHECK(T("-p2^3").str() == "-p2^3");
    CHECK_THROWS_AS(T("p1 + p1^2"), ParseError);
    CHECK_THROWS_AS(T("p3"), ParseError);
    CHECK_THROWS_AS(T("3"), ParseError);
    CHECK_THROWS_AS(T(""), ParseError);
    CHECK_THROWS_AS(T("(1+i)*p1"), ParseError);
    const auto g = parse_gtensor(V2, "(1+2 i)*p1^2 - (i)*p2^2 + q1*q2");
    CHECK(g.str() == "(1+2 i)*p1^2 + (-1 i)*p2^2 + q1*q2");
    CHECK(parse_gtensor(V2, g.str()) == g);
}

TEST_CASE("property: printer roundtrip")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const SymTensor t = random_tensor(rng, V2, 1 + trial % 4);
        if (t.is_zero())
            continue;
        CHECK(parse_tensor(V2, t.str()) == t);
    }
}

TEST_CASE("property: antisymmetry, Jacobi and grading")
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> deg(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_tensor(rng, V2, deg(rng));
        const auto b = random_tensor(rng, V2, deg(rng));
        const auto c = random_tensor(rng, V2, deg(rng));
        const auto ab = poisson_bracket(V2, a, b);
        CHECK(ab == -poisson_bracket(V2, b, a));
        if (!ab.is_zero())
            CHECK(ab.degree() == a.degree() + b.degree() - 2);
        if (a.degree() + b.degree() + c.degree() >= 5) {
            const auto j = poisson_bracket(V2, a, poisson_bracket(V2, b, c)) +
                           poisson_bracket(V2, b, poisson_bracket(V2, c, a)) +
                           poisson_bracket(V2, c, poisson_bracket(V2, a, b));
            CHECK(j.is_zero());
        }
    }
}

TEST_CASE("property: S^2 is sp(V) with brackets going to commutators")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_tensor(rng, V2, 2);
        const auto b = random_tensor(rng, V2, 2);
        const auto ma = quad_to_matrix(V2, a);
        CHECK(is_symplectic_matrix(V2, ma));
        CHECK(matrix_to_quad(V2, ma) == a);
        CHECK(quad_to_matrix(V2, poisson_bracket(V2, a, b)) == commutator(ma, quad_to_matrix(V2, b)));
        for (int j = 0; j < V2.dim(); ++j) {
            const auto e = SymTensor::generator(2, j);
            CHECK(poisson_bracket(V2, a, e) == quad_action(V2, a, e));
        }
    }
}

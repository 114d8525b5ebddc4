#include "symprol/subspace.hpp"

#include <doctest.h>

#include <random>

using namespace symprol;

namespace {

Matrix<Scalar> random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int zero_bias)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> z(0, 9);
    Matrix<Scalar> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (z(rng) >= zero_bias)
                m(i, j) = Scalar(num(rng), den(rng));
    return m;
}

Vec<Scalar> unit(std::size_t n, std::size_t i)
{
    Vec<Scalar> v(n, Scalar(0));
    v[i] = Scalar(1);
    return v;
}

} // namespace

TEST_CASE("scalar arithmetic is exact and reduced")
{
    Scalar a(6, -4);
    CHECK(a.str() == "-3/2");
    CHECK((a * a).str() == "9/4");
    CHECK((Scalar(1, 3) + Scalar(1, 6)).str() == "1/2");
    CHECK(Scalar::parse(" -10/4 ") == Scalar(-5, 2));
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), MathError);
    CHECK_THROWS_AS(Scalar::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("x"), ParseError);
    Scalar r;
    CHECK(Scalar(9, 4).exact_sqrt(r));
    CHECK(r == Scalar(3, 2));
    CHECK_FALSE(Scalar(2).exact_sqrt(r));
    CHECK_FALSE(Scalar(-4).exact_sqrt(r));
}

TEST_CASE("gaussian rationals")
{
    const GScalar i = GScalar::i();
    CHECK(i * i == GScalar(-1));
    CHECK(GScalar::parse("1/2+3/4 i") == GScalar(Scalar(1, 2), Scalar(3, 4)));
    CHECK(GScalar::parse("-i") == -i);
    CHECK(GScalar::parse("(2-i)") == GScalar(Scalar(2), Scalar(-1)));
    CHECK(GScalar(Scalar(1, 2), Scalar(-3, 4)).str() == "1/2-3/4 i");
    const GScalar z(Scalar(2), Scalar(-3));
    CHECK(z * z.inverse() == GScalar(1));
    CHECK(coefficient_text(z) == "(2-3 i)");
    CHECK(coefficient_text(GScalar(5)) == "5");
}

TEST_CASE("rank examples")
{
    CHECK(rank(Matrix<Scalar>::identity(4)) == 4);
    CHECK(rank(Matrix<Scalar>(4, 4)) == 0);
}

TEST_CASE("kernel examples")
{
    CHECK(kernel(Matrix<Scalar>::identity(3)).is_zero());
    CHECK(kernel(Matrix<Scalar>(3, 3)).dim() == 3);
    const auto k = kernel(Matrix<Scalar>::from_rows({{Scalar(2), Scalar(-1)}}, 2));
    REQUIRE(k.dim() == 1);
    CHECK(k == Subspace<Scalar>::span(2, {{Scalar(1), Scalar(2)}}));
}

TEST_CASE("subspace operations")
{
    const auto a = Subspace<Scalar>::span(3, {unit(3, 0)});
    const auto b = Subspace<Scalar>::span(3, {unit(3, 1)});
    CHECK(intersect(a, b).is_zero());
    CHECK((a + b).dim() == 2);
    CHECK(intersect(a, a) == a);
    const auto diag = Subspace<Scalar>::span(3, {{Scalar(1), Scalar(1), Scalar(0)}});
    CHECK(intersect(diag, a + b).dim() == 1);
    CHECK(diag.contains(Vec<Scalar>{Scalar(3), Scalar(3), Scalar(0)}));
    CHECK_FALSE(diag.contains(unit(3, 0)));
    CHECK_THROWS_AS(a + Subspace<Scalar>(4), MathError);
}

TEST_CASE("solve, inverse and determinant")
{
    const auto m = Matrix<Scalar>::from_rows({{Scalar(2), Scalar(1)}, {Scalar(1), Scalar(3)}}, 2);
    const auto x = solve(m, {Scalar(3), Scalar(5)});
    REQUIRE(x);
    CHECK((*x)[0] == Scalar(4, 5));
    CHECK((*x)[1] == Scalar(7, 5));
    CHECK(determinant(m) == Scalar(5));
    CHECK(*inverse(m) * m == Matrix<Scalar>::identity(2));
    const auto sing = Matrix<Scalar>::from_rows({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}, 2);
    CHECK_FALSE(inverse(sing));
    CHECK_FALSE(solve(sing, {Scalar(1), Scalar(0)}));
}

TEST_CASE("property: rank, kernel, canonical form, Grassmann")
{
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> size(1, 7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = static_cast<std::size_t>(size(rng));
        const std::size_t c = static_cast<std::size_t>(size(rng));
        const auto m = random_matrix(rng, r, c, 4);
        CHECK(rank(m) == rank(m.transpose()));
        const auto k = kernel(m);
        CHECK(k.dim() == c - rank(m));
        for (const auto& v : k.vectors())
            CHECK(is_zero_vector(m.apply(v)));

        const auto s = Subspace<Scalar>::from_matrix(m);
        CHECK(Subspace<Scalar>::from_matrix(s.basis()) == s);

        const auto a = Subspace<Scalar>::from_matrix(random_matrix(rng, static_cast<std::size_t>(size(rng)), 6, 6));
        const auto b = Subspace<Scalar>::from_matrix(random_matrix(rng, static_cast<std::size_t>(size(rng)), 6, 6));
        CHECK(a.dim() + b.dim() == (a + b).dim() + intersect(a, b).dim());
        CHECK((a + b).contains(a));
        CHECK(a.contains(intersect(a, b)));
    }
}

TEST_CASE("serial and parallel elimination agree")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const auto m = random_matrix(rng, 80, 70, 7);
        const auto s = rref(m, Exec::serial);
        const auto p = rref(m, Exec::parallel);
        CHECK(s.reduced == p.reduced);
        CHECK(s.pivots == p.pivots);
    }
}

TEST_CASE("complexification keeps canonical data")
{
    const auto s = Subspace<Scalar>::span(2, {{Scalar(2), Scalar(4)}});
    const auto c = complexify(s);
    CHECK(c.dim() == 1);
    CHECK(c.vector(0)[1] == GScalar(2));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cadkit/parser.hpp"
#include "cadkit/polyalg.hpp"
#include "test_support.hpp"

#include <random>

using namespace cadkit;
using cadkit::testing::cofactor_determinant;
using cadkit::testing::random_polynomial;

namespace
{
const VarOrder xy({"x", "y"});
const VarOrder xyzw({"x", "y", "z", "w"});

Polynomial P(const char* s, const VarOrder& o = xy)
{
    return parse_polynomial(s, o);
}

/// Sylvester determinant by cofactor expansion, independent of the
/// fraction-free elimination used by the library.
Polynomial sylvester_oracle(const Polynomial& p, const Polynomial& q, std::size_t v)
{
    const auto pc = p.coefficients(v);
    const auto qc = q.coefficients(v);
    const std::size_t m = pc.size() - 1;
    const std::size_t n = qc.size() - 1;
    std::vector< std::vector< Polynomial > > syl(m + n, std::vector< Polynomial >(m + n, Polynomial(p.nvars())));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < pc.size(); ++j)
            syl[r][r + j] = pc[j];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < qc.size(); ++j)
            syl[n + r][r + j] = qc[j];
    return cofactor_determinant(syl, p.nvars());
}
} // namespace

TEST_CASE("parser handles the problem-file grammar")
{
    CHECK(P("x^2 + y^2 - 4") == P("y^2+x^2-4"));
    CHECK(P("(x-4)*(y-1) - 1/4") == P("x*y - x - 4*y + 4 - 1/4"));
    CHECK(P("(x-4)(y-1)") == P("x*y - x - 4*y + 4"));
    CHECK(P("2x") == P("x*2"));
    CHECK(P("-x^2") == P("0 - x*x"));
    CHECK(P("x^2+y^2-4").to_string(xy) == "y^2+x^2-4");
    CHECK(P("x^4-4*x^2+1").to_string(xy) == "x^4-4*x^2+1");
    CHECK_THROWS_AS(P("x + q"), ParseError);
    CHECK_THROWS_AS(P("x / y"), ParseError);
    CHECK_THROWS_AS(P("(x + 1"), ParseError);
    CHECK_THROWS_AS(P("x ^ y"), ParseError);
}

TEST_CASE("coefficients are listed leading first")
{
    auto c = P("x*y - 1").coefficients(1);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == P("x"));
    CHECK(c[1] == P("-1"));

    c = P("x^2 + y^2 - 4").coefficients(1);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == P("1"));
    CHECK(c[1].is_zero());
    CHECK(c[2] == P("x^2 - 4"));

    c = parse_polynomial("z + y*w", xyzw).coefficients(3);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == parse_polynomial("y", xyzw));
    CHECK(c[1] == parse_polynomial("z", xyzw));
}

TEST_CASE("content_primitive")
{
    auto [c1, p1] = content_primitive(P("2*x*y + 4*x"), 1);
    CHECK(c1 == P("2*x"));
    CHECK(p1 == P("y + 2"));

    auto [c2, p2] = content_primitive(P("x^2 + y^2 - 4"), 1);
    CHECK(c2 == P("1"));
    CHECK(p2 == P("x^2 + y^2 - 4"));

    auto [c3, p3] = content_primitive(P("x^2*y^2 - x^2"), 1);
    CHECK(c3 * p3 == P("x^2*y^2 - x^2"));
    CHECK(c3 == P("x^2"));
    CHECK(p3 == P("y^2 - 1"));
    // cross-check by expansion: gcd of the coefficients x^2 and -x^2
    CHECK(gcd(P("x^2"), P("-x^2")) == P("x^2"));

    CHECK_THROWS_WITH(content_primitive(Polynomial(2), 1), "zero polynomial");
}

TEST_CASE("squarefree_finest_basis")
{
    std::vector< Polynomial > in1{P("x^2 - 2*x + 1")};
    auto b1 = squarefree_finest_basis(in1);
    REQUIRE(b1.polys.size() == 1);
    CHECK(b1.polys[0] == P("x - 1"));

    std::vector< Polynomial > in2{P("x^2 - 1"), P("x - 1")};
    auto b2 = squarefree_finest_basis(in2);
    REQUIRE(b2.polys.size() == 2);
    CHECK(b2.contains(P("x - 1")));
    CHECK(b2.contains(P("x + 1")));
    CHECK(b2.polys[0] * b2.polys[1] == P("x^2 - 1"));

    std::vector< Polynomial > in3{P("x^2 + y^2 - 4"), P("x*y - 1")};
    auto b3 = squarefree_finest_basis(in3);
    CHECK(b3.polys.size() == 2);
    CHECK(b3.contains(P("x^2 + y^2 - 4")));
    CHECK(b3.contains(P("x*y - 1")));
    CHECK(b3.contents.empty());

    std::vector< Polynomial > in4{P("x*y^2 - x"), P("3")};
    auto b4 = squarefree_finest_basis(in4);
    CHECK(b4.contents == std::vector< Polynomial >{P("x")});
    REQUIRE(b4.polys.size() == 1); // squarefree, not split into irreducibles
    CHECK(b4.polys[0] == P("y^2 - 1"));
}

TEST_CASE("resultant against the Sylvester oracle")
{
    const Polynomial f = P("x^2 + y^2 - 4");
    const Polynomial g = P("x*y - 1");
    const Polynomial expected = P("x^4 - 4*x^2 + 1");
    CHECK(sylvester_oracle(f, g, 1) == expected);
    CHECK(resultant(f, g, 1) == expected);

    const Polynomial f1 = P("x^2 + y^2 - 1");
    const Polynomial g1 = P("x*y - 1/4");
    CHECK(sylvester_oracle(f1, g1, 1) == P("x^4 - x^2 + 1/16"));
    CHECK(resultant(f1, g1, 1) == P("x^4 - x^2 + 1/16"));

    // Linear case: Sylvester determinant of y - a and y - b is a - b.
    CHECK(resultant(P("y - 3"), P("y - 5"), 1) == P("-2"));
    CHECK(resultant(P("y - 5"), P("y - 3"), 1) == P("2"));

    CHECK_THROWS_WITH(resultant(P("x + 1"), P("y"), 1), "not in main variable");
}

TEST_CASE("discriminant")
{
    CHECK(discriminant(P("y^2 + x^2 - 4"), 1) == P("-4*x^2 + 16"));
    CHECK(discriminant(P("y^2 - x"), 1) == P("4*x"));
    const VarOrder abcy({"a", "b", "c", "y"});
    CHECK(discriminant(parse_polynomial("a*y^2 + b*y + c", abcy), 3) == parse_polynomial("b^2 - 4*a*c", abcy));
    CHECK_THROWS_WITH(discriminant(P("x*y + 1"), 1), "degree too low");
}

TEST_CASE("gcd and exact division")
{
    CHECK(gcd(P("x^2 - 1"), P("x^2 + 2*x + 1")) == P("x + 1"));
    CHECK(gcd(P("x*y + x"), P("y^2 - 1")) == P("y + 1"));
    CHECK(gcd(P("2*x"), P("4")) == P("1"));
    CHECK(divide_exact(P("x^2*y - y"), P("x - 1")) == P("x*y + y"));
    CHECK_FALSE(divide(P("x^2 + 1"), P("x - 1")).has_value());
    CHECK_THROWS(divide_exact(P("x^2 + 1"), P("x - 1")));
}

TEST_CASE("property: resultant vanishes exactly with a common factor")
{
    std::mt19937 rng(20131);
    int planted = 0;
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        Polynomial a = random_polynomial(rng, 2, 2, 3);
        Polynomial b = random_polynomial(rng, 2, 2, 3);
        const bool plant = trial % 2 == 0;
        if (plant)
        {
            Polynomial h = random_polynomial(rng, 2, 1, 2);
            if (h.degree(1) < 1)
                h += Polynomial::variable(2, 1);
            a *= h;
            b *= h;
        }
        if (a.degree(1) < 1 || b.degree(1) < 1)
            continue;
        const Polynomial r = resultant(a, b, 1);
        const bool common = gcd(a, b).degree(1) >= 1;
        CHECK(r.is_zero() == common);
        if (plant)
        {
            CHECK(r.is_zero());
            ++planted;
        }
        // swap symmetry with sign (-1)^(deg a * deg b)
        const Polynomial rs = resultant(b, a, 1);
        const int e = a.degree(1) * b.degree(1);
        CHECK(rs == (e % 2 == 0 ? r : -r));
        ++checked;
    }
    CHECK(planted > 400);
    CHECK(checked > 700);
}

TEST_CASE("property: Bareiss resultant matches cofactor expansion")
{
    std::mt19937 rng(77);
    for (int trial = 0; trial < 150; ++trial)
    {
        Polynomial a = random_polynomial(rng, 2, 3, 3);
        Polynomial b = random_polynomial(rng, 2, 2, 3);
        if (a.degree(1) < 1 || b.degree(1) < 1)
            continue;
        CHECK(resultant(a, b, 1) == sylvester_oracle(a, b, 1));
    }
}

TEST_CASE("property: content times primitive reconstructs the input")
{
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 1000; ++trial)
    {
        Polynomial p = random_polynomial(rng, 3, 3, 4);
        if (trial % 3 == 0)
            p *= random_polynomial(rng, 3, 1, 2).substitute(2, 1); // content in x, y
        if (p.is_zero())
            continue;
        auto [c, prim] = content_primitive(p, 2);
        CHECK(c * prim == p);
        CHECK_FALSE(c.involves(2));
        if (prim.involves(2))
        {
            Polynomial g(3);
            for (const auto& coef : prim.coefficients(2))
                g = gcd(g, coef);
            CHECK(g.is_constant());
        }
    }
}

TEST_CASE("property: finest squarefree basis")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector< Polynomial > in;
        const Polynomial shared = random_polynomial(rng, 2, 1, 2);
        for (int i = 0; i < 3; ++i)
        {
            Polynomial p = random_polynomial(rng, 2, 2, 3);
            if (i == 1)
                p *= shared * shared;
            if (i == 2)
                p *= shared;
            in.push_back(p);
        }
        const Basis basis = squarefree_finest_basis(in);
        for (std::size_t i = 0; i < basis.polys.size(); ++i)
        {
            const auto& b = basis.polys[i];
            CHECK_FALSE(b.is_constant());
            const std::size_t v = *b.main_variable();
            CHECK(gcd(b, b.derivative(v)).is_constant());
            CHECK(b == primitive_part(b, v));
            for (std::size_t j = i + 1; j < basis.polys.size(); ++j)
                CHECK(gcd(b, basis.polys[j]).is_constant());
        }
        // each input is a constant times contents times powers of basis elements
        for (const auto& p : in)
        {
            if (p.is_constant())
                continue;
            Polynomial rest = p;
            for (const auto& b : basis.polys)
            {
                while (auto q = divide(rest, b))
                    rest = *q;
            }
            for (const auto& c : basis.contents)
            {
                while (auto q = divide(rest, c))
                    rest = *q;
            }
            // what is left has no factor in the main variable
            if (!rest.is_constant())
            {
                const std::size_t v = *p.main_variable();
                CHECK_FALSE(primitive_part(rest, v).involves(v));
            }
        }
    }
}

TEST_CASE("arithmetic stays exact")
{
    const Polynomial third = P("x/3");
    CHECK(third * Rational(3) == P("x"));
    CHECK((third + third + third) == P("x"));
    CHECK(P("(x + 1/7)^3").substitute(0, Rational(-1, 7)).is_zero());
}

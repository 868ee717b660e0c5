#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cadkit/parser.hpp"
#include "cadkit/projection.hpp"
#include "test_support.hpp"

#include <random>

using namespace cadkit;
using cadkit::testing::random_polynomial;

namespace
{
const VarOrder xy({"x", "y"});
const VarOrder xyzw({"x", "y", "z", "w"});

Polynomial P(const char* s, const VarOrder& o = xy)
{
    return parse_polynomial(s, o);
}

Basis basis_of(std::initializer_list< Polynomial > ps)
{
    return squarefree_finest_basis(std::vector< Polynomial >(ps));
}

/// Set equality up to constant multiples.
bool same_set(const std::vector< Polynomial >& a, const std::vector< Polynomial >& b)
{
    return simplify_set(a) == simplify_set(b);
}

bool subset(const std::vector< Polynomial >& a, const std::vector< Polynomial >& b)
{
    const auto sb = simplify_set(b);
    for (const auto& p : simplify_set(a))
    {
        if (std::find(sb.begin(), sb.end(), p) == sb.end())
            return false;
    }
    return true;
}
} // namespace

TEST_CASE("necessary coefficients stop once the leading ones cannot vanish together")
{
    CHECK(necessary_coefficients(P("x^2 + y^2 - 4"), 1) == std::vector< Polynomial >{P("1")});
    CHECK(necessary_coefficients(P("x*y - 1"), 1) == std::vector< Polynomial >{P("x")});
    CHECK(necessary_coefficients(P("x*y^2 + (x-1)*y + x^2"), 1) == std::vector< Polynomial >{P("x")});
    CHECK(necessary_coefficients(P("x*y^2 + x*(x-1)*y + x^2 + 1"), 1) ==
          std::vector< Polynomial >{P("x"), P("x^2 - x")});
    CHECK(necessary_coefficients(P("(x-4)*(y-1) - 1/4"), 1) == std::vector< Polynomial >{P("x - 4")});
    const VarOrder xyz({"x", "y", "z"});
    // x and y share the zero at the origin, so the constant is reached
    CHECK(necessary_coefficients(parse_polynomial("x*z^2 + y*z + 3", xyz), 2) ==
          std::vector< Polynomial >{parse_polynomial("x", xyz), parse_polynomial("y", xyz)});
}

TEST_CASE("mccallum_P")
{
    const Polynomial f = P("x^2 + y^2 - 4");
    const Polynomial g = P("x*y - 1");
    CHECK(same_set(mccallum_P(basis_of({f, g}), 1), {P("x^2 - 4"), P("x"), P("x^4 - 4*x^2 + 1")}));
    CHECK(same_set(mccallum_P(basis_of({P("y^2 - x")}), 1), {P("x")}));
    CHECK(same_set(mccallum_P(basis_of({g}), 1), {P("x")}));
}

TEST_CASE("reduced_P_F")
{
    const Polynomial f = P("x^2 + y^2 - 4");
    const Polynomial g = P("x*y - 1");
    const Basis F = basis_of({f});
    const Basis B = basis_of({f, g});
    CHECK(same_set(reduced_P_F(F, B, 1), {P("x^2 - 4"), P("x^4 - 4*x^2 + 1")}));
    CHECK(same_set(reduced_P_F(B, B, 1), mccallum_P(B, 1)));

    const Polynomial f4 = parse_polynomial("x + y + z + w", xyzw);
    const Polynomial g4 = parse_polynomial("z*y - x^2*w", xyzw);
    // oracle: substitute w = -(x+y+z) into g
    const Polynomial w_sub = parse_polynomial("-(x + y + z)", xyzw);
    Polynomial oracle(4);
    for (const auto& [e, c] : g4.terms())
    {
        Exponents rest = e;
        rest[3] = 0;
        Polynomial term = Polynomial::monomial(rest, c);
        for (std::uint32_t i = 0; i < e[3]; ++i)
            term *= w_sub;
        oracle += term;
    }
    CHECK(same_set(reduced_P_F(basis_of({f4}), basis_of({f4, g4}), 3), {oracle}));
    CHECK(same_set({oracle}, {parse_polynomial("z*y + x^2*(x + y + z)", xyzw)}));
}

TEST_CASE("tticad_P")
{
    const Polynomial f1 = P("x^2 + y^2 - 1");
    const Polynomial g1 = P("x*y - 1/4");
    const Polynomial f2 = P("(x-4)^2 + (y-1)^2 - 1");
    const Polynomial g2 = P("(x-4)*(y-1) - 1/4");
    ECStructure s;
    s.A_list = {basis_of({f1, g1}), basis_of({f2, g2})};
    s.E_list = {basis_of({f1}), basis_of({f2})};
    const auto out = tticad_P(s, 1);
    CHECK(same_set(out, {P("x^2 - 1"), P("(x-4)^2 - 1"), P("x^4 - x^2 + 1/16"), P("(x-4)^4 - (x-4)^2 + 1/16"),
                         resultant(f1, f2, 1)}));

    ECStructure one;
    one.A_list = {s.A_list[0]};
    one.E_list = {s.E_list[0]};
    CHECK(same_set(tticad_P(one, 1), reduced_P_F(s.E_list[0], s.A_list[0], 1)));

    ECStructure all;
    all.A_list = s.A_list;
    all.E_list = s.A_list;
    const Basis un = basis_of({f1, g1, f2, g2});
    CHECK(subset(tticad_P(all, 1), mccallum_P(un, 1)));
    CHECK(subset(out, mccallum_P(un, 1)));
}

TEST_CASE("excl_P")
{
    const Polynomial f = P("x^2 + y^2 - 4");
    const Polynomial g = P("x*y - 1");
    const Basis A = basis_of({f, g});
    CHECK(same_set(excl_P(A, basis_of({f}), 1), {P("x")}));
    CHECK(excl_P(A, A, 1).empty());

    const Polynomial f6 = parse_polynomial("z + y*w", xyzw);
    const Polynomial g6 = parse_polynomial("y*x + 1", xyzw);
    const Polynomial h6 = parse_polynomial("w*(z + 1) + 1", xyzw);
    const auto ex = excl_P(basis_of({f6, g6, h6}), basis_of({f6}), 3);
    CHECK(same_set(ex, {parse_polynomial("z + 1", xyzw)}));
}

TEST_CASE("full_projection")
{
    const Polynomial f = P("x^2 + y^2 - 4");
    const Polynomial g = P("x*y - 1");
    const auto ps = full_projection(std::vector< Polynomial >{f, g}, 2);
    REQUIRE(ps.levels.size() == 2);
    CHECK(same_set(ps.levels[1], {f, g}));
    CHECK(same_set(ps.levels[0], {P("x^2 - 4"), P("x"), P("x^4 - 4*x^2 + 1")}));
    CHECK(ps.provenance.at(normalize(P("x^4 - 4*x^2 + 1"))) == Provenance::resultant);
    CHECK(ps.provenance.at(normalize(P("x"))) == Provenance::coefficient);
    CHECK(ps.provenance.at(normalize(f)) == Provenance::input);

    const VarOrder xo({"x"});
    const auto uni = full_projection(std::vector< Polynomial >{parse_polynomial("x^2 - 2", xo)}, 1);
    REQUIRE(uni.levels.size() == 1);
    CHECK(uni.levels[0] == std::vector< Polynomial >{parse_polynomial("x^2 - 2", xo)});

    const auto ps2 = full_projection(std::vector< Polynomial >{P("x^2 + y^2 - 1"), P("x*y - 1/4")}, 2);
    CHECK(ps2.levels[0].size() == 3);
    CHECK(same_set(ps2.levels[0], {P("x^2 - 1"), P("x"), P("x^4 - x^2 + 1/16")}));

    // contents are pushed down to their own level
    const auto ps3 = full_projection(std::vector< Polynomial >{P("x*y^2 - x")}, 2);
    CHECK(same_set(ps3.levels[1], {P("y^2 - 1")}));
    CHECK(same_set(ps3.levels[0], {P("x")}));
    CHECK(ps3.provenance.at(P("x")) == Provenance::content);
}

TEST_CASE("property: reduced operators sit inside the full operator")
{
    std::mt19937 rng(4711);
    for (int trial = 0; trial < 300; ++trial)
    {
        std::vector< Polynomial > polys;
        for (int i = 0; i < 3; ++i)
        {
            Polynomial p = random_polynomial(rng, 3, 2, 3);
            if (p.degree(2) < 1)
                p += Polynomial::variable(3, 2);
            polys.push_back(p);
        }
        const Basis A = squarefree_finest_basis(polys);
        const Basis E = squarefree_finest_basis(std::vector< Polynomial >{polys[0]});
        // E must be a subset of A; the basis of A may have split polys[0]
        Basis Esub;
        for (const auto& p : A.polys)
            if (divide(polys[0], p))
                Esub.polys.push_back(p);
        if (Esub.polys.empty())
            continue;
        const auto red = reduced_P_F(Esub, A, 2);
        const auto full = mccallum_P(A, 2);
        CHECK(subset(red, full));
        const auto ex = excl_P(A, Esub, 2);
        for (const auto& p : ex)
            CHECK_FALSE(subset({p}, red));
        for (const auto& p : simplify_set(full))
            CHECK((subset({p}, red) || subset({p}, ex) || subset({p}, mccallum_P(Esub, 2))));
        CHECK(simplify_set(simplify_set(red)) == simplify_set(red));
        for (const auto& p : full)
            CHECK(*p.main_variable() < 2);
        const auto ps = full_projection(polys, 3);
        for (std::size_t k = 0; k < 3; ++k)
            for (const auto& p : ps.levels[k])
                CHECK(*p.main_variable() == k);
        (void)E;
    }
}

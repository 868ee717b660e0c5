#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cadkit/heuristics.hpp"
#include "cadkit/parser.hpp"
#include "test_support.hpp"

#include <random>
#include <regex>

using namespace cadkit;
using cadkit::testing::random_polynomial;

namespace
{
const VarOrder xy({"x", "y"});

Polynomial P(const char* s, const VarOrder& o = xy)
{
    return parse_polynomial(s, o);
}

/// sotd read off the printed monomials: each variable factor counts its exponent.
std::size_t printed_sotd(const Polynomial& p, const VarOrder& o)
{
    const std::string text = p.to_string(o);
    std::size_t total = 0;
    const std::regex factor("([a-z][a-z0-9_]*)(\\^([0-9]+))?");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), factor); it != std::sregex_iterator(); ++it)
        total += (*it)[3].matched ? std::stoul((*it)[3].str()) : 1;
    return total;
}

/// Distinct real roots of a set of univariate polynomials via one Sturm count
/// of the squarefree part of their product.
std::size_t sturm_ndrr(const std::vector< Polynomial >& polys)
{
    if (polys.empty())
        return 0;
    Polynomial prod(polys.front().nvars(), Rational(1));
    for (const auto& p : polys)
        prod *= p;
    if (prod.is_constant())
        return 0;
    const Polynomial sqf = divide_exact(prod, gcd(prod, prod.derivative(0)));
    return static_cast< std::size_t >(count_real_roots(sqf));
}

Clause conj(std::vector< Constraint > cs, std::optional< std::size_t > ec = std::nullopt)
{
    Clause c;
    c.constraints = std::move(cs);
    c.ec = ec;
    return c;
}
} // namespace

TEST_CASE("sotd examples")
{
    CHECK(sotd(std::vector< Polynomial >{P("x^2 + y^2 - 4")}) == 4);
    CHECK(sotd(std::vector< Polynomial >{P("x*y - 1")}) == 2);
    CHECK(sotd(std::vector< Polynomial >{}) == 0);

    const std::vector< Polynomial > ex1{P("x^2 + y^2 - 4"), P("x*y - 1")};
    // x^2-4, x, x^4-4x^2+1 below the inputs: 2 + 1 + 6, inputs 4 + 2
    CHECK(sotd(full_projection(std::span< const Polynomial >(ex1), 2)) == 15);
    const std::vector< std::vector< Polynomial > > A{ex1};
    const std::vector< std::vector< Polynomial > > E{{ex1[0]}};
    CHECK(sotd(ec_projection(A, E, 2)) == 14);
}

TEST_CASE("ndrr on the circle and hyperbola line polynomials")
{
    const std::vector< Polynomial > ex1{P("x^2 + y^2 - 4"), P("x*y - 1")};
    const ProjectionSet full = full_projection(std::span< const Polynomial >(ex1), 2);
    CHECK(ndrr(full) == 7);
    CHECK(ndrr(full) == sturm_ndrr(full.levels[0]));
    const std::vector< std::vector< Polynomial > > A{ex1};
    const std::vector< std::vector< Polynomial > > E{{ex1[0]}};
    const ProjectionSet ec = ec_projection(A, E, 2);
    CHECK(ndrr(ec) == 6);
    CHECK(ndrr(ec) == sturm_ndrr(ec.levels[0]));
}

TEST_CASE("property: sotd against printed monomials")
{
    std::mt19937 rng(99);
    const VarOrder xyz({"x", "y", "z"});
    for (int trial = 0; trial < 1000; ++trial)
    {
        const Polynomial a = random_polynomial(rng, 3, 4, 5);
        const Polynomial b = random_polynomial(rng, 3, 4, 5);
        CHECK(sotd(std::vector< Polynomial >{a}) == printed_sotd(a, xyz));
        // additive over disjoint unions
        CHECK(sotd(std::vector< Polynomial >{a, b}) ==
              sotd(std::vector< Polynomial >{a}) + sotd(std::vector< Polynomial >{b}));
        // renaming variables does not change it
        const Ordering swap{2, 0, 1};
        CHECK(sotd(std::vector< Polynomial >{reorder(a, swap)}) == sotd(std::vector< Polynomial >{a}));
        const std::size_t nonconstant = (a.is_constant() ? 0 : 1) + (b.is_constant() ? 0 : 1);
        CHECK(sotd(std::vector< Polynomial >{a, b}) >= nonconstant);
    }
}

TEST_CASE("property: ndrr bounds and scaling")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 1000; ++trial)
    {
        std::vector< Polynomial > polys;
        std::size_t degrees = 0;
        for (int i = 0; i < 3; ++i)
        {
            Polynomial p = random_polynomial(rng, 1, 5, 4);
            if (p.is_constant())
                continue;
            degrees += static_cast< std::size_t >(p.degree(0));
            polys.push_back(p);
        }
        ProjectionSet ps;
        ps.nvars = 1;
        ps.levels = {polys};
        const std::size_t n = ndrr(ps);
        CHECK(n == sturm_ndrr(polys));
        CHECK(n <= degrees);
        for (auto& p : ps.levels[0])
            p *= Rational(-3, 7);
        CHECK(ndrr(ps) == n);
    }
}

TEST_CASE("greedy_order")
{
    const std::vector< Polynomial > ex1{P("x^2 + y^2 - 4"), P("x*y - 1")};
    CHECK(greedy_order(ex1, 2) == Ordering{0, 1});
    const VarOrder xo({"x"});
    CHECK(greedy_order(std::vector< Polynomial >{parse_polynomial("x^2 - 2", xo)}, 1) == Ordering{0});

    // eliminating y first leaves x^5-type terms; eliminating x first is worse
    const std::vector< Polynomial > skew{P("y^2 + x^5*y + x"), P("y - x^3")};
    const Ordering chosen = greedy_order(skew, 2);
    CHECK((chosen == Ordering{0, 1} || chosen == Ordering{1, 0}));
}

TEST_CASE("property: greedy_order respects random blocks")
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial)
    {
        std::vector< Polynomial > polys{random_polynomial(rng, 4, 2, 3), random_polynomial(rng, 4, 2, 3)};
        std::vector< std::size_t > vars{0, 1, 2, 3};
        std::shuffle(vars.begin(), vars.end(), rng);
        Blocks blocks;
        std::size_t i = 0;
        while (i < vars.size())
        {
            const std::size_t len = 1 + rng() % (vars.size() - i);
            blocks.emplace_back(vars.begin() + static_cast< std::ptrdiff_t >(i),
                                vars.begin() + static_cast< std::ptrdiff_t >(i + len));
            i += len;
        }
        const Ordering o = greedy_order(polys, 4, blocks);
        CHECK(respects_blocks(o, blocks));
        for (const auto& ord : block_orderings(4, blocks))
            CHECK(respects_blocks(ord, blocks));
    }
}

TEST_CASE("enumerate_formulations")
{
    FormulaSequence two;
    two.clauses = {conj({{P("x^2 + y^2 - 4"), Relop::eq, "f"}, {P("x*y - 1"), Relop::lt, "g"}}, 0)};
    const Dimension order[] = {Dimension::order};
    CHECK(enumerate_formulations(two, 2, order).candidates.size() == 2);

    FormulaSequence eqs;
    eqs.clauses = {conj({{P("x^2 + y^2 - 4"), Relop::eq, "f"}, {P("x*y - 1"), Relop::eq, "g"}}, 0)};
    const Dimension ec[] = {Dimension::ec};
    const auto e = enumerate_formulations(eqs, 2, ec);
    REQUIRE(e.candidates.size() == 2);
    CHECK(e.candidates[0].ec[0] == 0u);
    CHECK(e.candidates[1].ec[0] == 1u);

    const VarOrder xyz({"x", "y", "z"});
    FormulaSequence three;
    three.clauses = {conj({{parse_polynomial("x + y + z", xyz), Relop::eq, "f"}}, 0)};
    const Blocks blocks{{0}, {1, 2}};
    const auto o3 = enumerate_formulations(three, 3, order, blocks);
    REQUIRE(o3.candidates.size() == 2);
    for (const auto& f : o3.candidates)
        CHECK(f.order.front() == 0);

    const Dimension all[] = {Dimension::order, Dimension::ec, Dimension::split};
    const auto capped = enumerate_formulations(three, 3, all, {}, 4);
    CHECK(capped.total == 6);
    CHECK(capped.candidates.size() == 4);
    CHECK(capped.truncated);

    FormulaSequence phi2;
    phi2.clauses = {conj({{P("x^2 + y^2 - 1"), Relop::eq, "f1"}, {P("x*y - 1/4"), Relop::lt, "g1"}}, 0),
                    conj({{P("(x-4)^2 + (y-1)^2 - 1"), Relop::eq, "f2"}, {P("(x-4)*(y-1) - 1/4"), Relop::lt, "g2"}}, 0)};
    const Dimension split[] = {Dimension::split};
    const auto s = enumerate_formulations(phi2, 2, split);
    REQUIRE(s.candidates.size() == 2);
    CHECK(s.candidates[0].split.size() == 2);
    CHECK(s.candidates[1].split.size() == 1);
}

TEST_CASE("rank_formulations")
{
    FormulaSequence phi2;
    phi2.clauses = {conj({{P("x^2 + y^2 - 1"), Relop::eq, "f1"}, {P("x*y - 1/4"), Relop::lt, "g1"}}, 0),
                    conj({{P("(x-4)^2 + (y-1)^2 - 1"), Relop::eq, "f2"}, {P("(x-4)*(y-1) - 1/4"), Relop::lt, "g2"}}, 0)};
    const Formulation given = given_formulation(phi2, 2);
    const std::vector< Formulation > one{given};
    CHECK(rank_formulations(one, phi2, 2, MeasureSpec::parse("sotd")).best == 0);

    // the given split uses the reduced operator and must match tticad's own projection
    const ProjectionSet ps = formulation_projection(phi2, 2, given);
    CHECK(sotd(ps) == sotd(formula_projection(phi2, 2)));

    const Dimension dims[] = {Dimension::order, Dimension::split};
    const auto cands = enumerate_formulations(phi2, 2, dims).candidates;
    const Ranking by_sotd = rank_formulations(cands, phi2, 2, MeasureSpec::parse("sotd"));
    const Ranking weighted = rank_formulations(cands, phi2, 2, MeasureSpec::parse("weighted:1,0"));
    CHECK(by_sotd.best == weighted.best);
    for (const auto& row : by_sotd.rows)
        CHECK(row.sotd >= by_sotd.rows[by_sotd.best].sotd);
    const Ranking by_ndrr = rank_formulations(cands, phi2, 2, MeasureSpec::parse("ndrr,sotd"));
    for (std::size_t i = 0; i < by_ndrr.rows.size(); ++i)
    {
        const auto& r = by_ndrr.rows[i];
        const auto& b = by_ndrr.rows[by_ndrr.best];
        CHECK((r.ndrr > b.ndrr || (r.ndrr == b.ndrr && r.sotd >= b.sotd)));
        if (i < by_ndrr.best)
            CHECK((r.ndrr > b.ndrr || r.sotd > b.sotd));
    }

    // circle and hyperbola under both orders: ndrr of each full projection's line polynomials
    FormulaSequence ex1;
    ex1.clauses = {conj({{P("x^2 + y^2 - 4"), Relop::ne, "f"}, {P("x*y - 1"), Relop::ne, "g"}})};
    const Dimension order[] = {Dimension::order};
    const auto orders = enumerate_formulations(ex1, 2, order).candidates;
    const Ranking r1 = rank_formulations(orders, ex1, 2, MeasureSpec::parse("ndrr"));
    CHECK(r1.rows[0].ndrr == 7);
    const std::vector< Polynomial > swapped{P("y^2 + x^2 - 4"), P("y*x - 1")};
    CHECK(r1.rows[1].ndrr == sturm_ndrr(full_projection(std::span< const Polynomial >(swapped), 2).levels[0]));
    CHECK(r1.best == 0);

    // two designations for f = 0 and g = 0 and h < 0
    const VarOrder xyz({"x", "y", "z"});
    FormulaSequence three;
    three.clauses = {conj({{parse_polynomial("z - x*y", xyz), Relop::eq, "f"},
                           {parse_polynomial("z^3 + x^2*z + y^4 - 1", xyz), Relop::eq, "g"},
                           {parse_polynomial("x + y + z", xyz), Relop::lt, "h"}},
                          0)};
    const Dimension ec[] = {Dimension::ec};
    const auto designations = enumerate_formulations(three, 3, ec).candidates;
    REQUIRE(designations.size() == 2);
    const Ranking rd = rank_formulations(designations, three, 3, MeasureSpec::parse("sotd"));
    const std::size_t expect = rd.rows[1].sotd < rd.rows[0].sotd ? 1 : 0;
    CHECK(rd.best == expect);

    CHECK_THROWS_AS(MeasureSpec::parse("weighted:0,0"), std::invalid_argument);
    CHECK_THROWS_AS(MeasureSpec::parse("cells"), std::invalid_argument);
}

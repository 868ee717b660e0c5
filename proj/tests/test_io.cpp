#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cadkit/io.hpp"
#include "cadkit/parser.hpp"

#include <functional>

using namespace cadkit;
using nlohmann::json;

namespace
{
const std::string corpus = CADKIT_CORPUS_DIR;

json example1()
{
    return json::parse(R"({"variables": ["x", "y"],
        "polynomials": [{"name": "f", "poly": "x^2 + y^2 - 4"}, {"name": "g", "poly": "x*y - 1"}],
        "formula": [{"constraints": ["f = 0", "g < 0"], "ec": "f"}]})");
}

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++n;
    return n;
}
} // namespace

TEST_CASE("problem parsing")
{
    const Problem p = parse_problem(example1());
    CHECK(p.nvars() == 2);
    CHECK(p.names == std::vector< std::string >{"f", "g"});
    REQUIRE(p.formula);
    REQUIRE(p.formula->clauses.size() == 1);
    const Clause& c = p.formula->clauses[0];
    CHECK(c.ec == std::optional< std::size_t >(0));
    CHECK(c.constraints[1].relop == Relop::lt);
    CHECK(c.constraints[1].poly == parse_polynomial("x*y - 1", p.variables));
}

TEST_CASE("malformed problems are input errors")
{
    auto rejects = [](const std::function< void(json&) >& edit) {
        json doc = example1();
        edit(doc);
        CHECK_THROWS_AS(parse_problem(doc), std::invalid_argument);
    };
    rejects([](json& d) { d.erase("variables"); });
    rejects([](json& d) { d["variables"] = {"x", "x"}; });
    rejects([](json& d) { d["polynomials"][1]["name"] = "f"; });
    rejects([](json& d) { d["polynomials"][0]["poly"] = "x + z"; });
    rejects([](json& d) { d["polynomials"][0]["poly"] = "x - x"; });
    rejects([](json& d) { d["formula"][0]["constraints"][1] = "h < 0"; });
    rejects([](json& d) { d["formula"][0]["constraints"][1] = "g < 1"; });
    rejects([](json& d) { d["formula"][0]["ec"] = "g"; });
    rejects([](json& d) { d["formula"] = json::array(); });
    CHECK_THROWS_AS(load_problem(corpus + "/missing.prob"), std::invalid_argument);
}

TEST_CASE("every corpus file loads")
{
    for (const char* name : {"example1", "example4", "example6", "phi1", "phi2", "phi3", "relaxed_phi1",
                             "relaxed_phi2", "relaxed_phi3"})
    {
        CAPTURE(name);
        const Problem p = load_problem(corpus + "/" + name + ".prob");
        CHECK(p.formula);
        CHECK_FALSE(p.polys.empty());
    }
}

TEST_CASE("blocks and reordering")
{
    const VarOrder xyz({"x", "y", "z"});
    CHECK(parse_blocks("x;y,z", xyz) == Blocks{{0}, {1, 2}});
    CHECK_THROWS_AS(parse_blocks("x;y", xyz), std::invalid_argument);
    CHECK_THROWS_AS(parse_blocks("x,y;y,z", xyz), std::invalid_argument);
    CHECK_THROWS_AS(parse_blocks("x;y;w", xyz), std::invalid_argument);

    const Problem p = parse_problem(example1());
    const Problem q = reordered(p, {1, 0});
    CHECK(q.variables.names() == std::vector< std::string >{"y", "x"});
    for (std::size_t i = 0; i < p.polys.size(); ++i)
        CHECK(q.polys[i].to_string(q.variables) == parse_polynomial(p.polys[i].to_string(p.variables), q.variables)
                                                       .to_string(q.variables));
    CHECK(q.formula->clauses[0].constraints[0].poly == q.polys[0]);
}

TEST_CASE("result documents round-trip and are deterministic")
{
    const Problem p = parse_problem(example1());
    const CADResult r = eccad(*p.formula, 2);
    REQUIRE(r.ok);
    const std::string text = result_document(r, p.variables).dump(2);
    const json doc = json::parse(text);
    CHECK(doc["cell_count"] == 53);
    CHECK(doc["cells"].size() == 53);
    CHECK(doc["status"] == "OK");
    CHECK(doc["induced_counts"] == json({13, 53}));
    CHECK(result_document(eccad(*p.formula, 2), p.variables).dump(2) == text);

    // Each irrational coordinate's interval must bracket a sign change of its
    // defining polynomial at the (rational) coordinates below it.
    std::size_t irrational = 0;
    for (const auto& cell : doc["cells"])
    {
        std::vector< Rational > below;
        for (const auto& coord : cell["sample"])
        {
            if (coord.contains("rational"))
            {
                below.push_back(parse_rational(coord["rational"].get< std::string >()));
                continue;
            }
            Polynomial d = parse_polynomial(coord["defpoly"].get< std::string >(), p.variables);
            for (std::size_t k = 0; k < below.size(); ++k)
                d = d.substitute(k, below[k]);
            const Rational lo = parse_rational(coord["interval"][0].get< std::string >());
            const Rational hi = parse_rational(coord["interval"][1].get< std::string >());
            CHECK(lo < hi);
            CHECK(hi - lo < Rational(1, 1000));
            const std::size_t v = below.size();
            CHECK(sign(d.substitute(v, lo).constant_value()) * sign(d.substitute(v, hi).constant_value()) < 0);
            ++irrational;
            break;
        }
    }
    CHECK(irrational > 0);

    const json rational = to_json(std::make_shared< RealAlgebraic >(Rational(-3, 2), 0), p.variables);
    CHECK(rational == json({{"rational", "-3/2"}}));
}

TEST_CASE("failures and warnings are reported in the document")
{
    const Problem p = load_problem(corpus + "/example6.prob");
    const CADResult r = eccad(*p.formula, p.nvars());
    REQUIRE(r.ok);
    const json doc = result_document(r, p.variables);
    CHECK(doc["lifting"].size() == 5);
    std::size_t rescued = 0;
    for (const auto& rec : doc["lifting"])
        rescued += rec["branch"] == "rescued";
    CHECK(rescued == 3);
}

TEST_CASE("plots of plane CADs")
{
    const Problem p = parse_problem(example1());
    const CADResult r = eccad(*p.formula, 2);
    const std::string svg = plot_svg(r, p.variables);
    CHECK(count(svg, "class=\"sample\"") == 53);
    CHECK(count(svg, "class=\"curve\"") == 2);
    CHECK(plot_svg(eccad(*p.formula, 2), p.variables) == svg);

    const std::string zoomed = plot_svg(r, p.variables, Viewport{0, 1, 0, 1});
    CHECK(count(zoomed, "class=\"sample\"") == 53);
    CHECK(zoomed != svg);
    CHECK_THROWS_AS(plot_svg(r, p.variables, Viewport{1, 0, 0, 1}), std::invalid_argument);

    const Problem q = load_problem(corpus + "/example4.prob");
    CHECK_THROWS_AS(plot_svg(eccad(*q.formula, q.nvars()), q.variables), std::invalid_argument);

    const VarOrder x({"x"});
    const std::vector< Polynomial > line{parse_polynomial("x^2 - 2", x)};
    CHECK_THROWS_AS(plot_svg(cad_full_result(line, 1), x), std::invalid_argument);
}

TEST_CASE("projection documents list one level per variable")
{
    const Problem p = parse_problem(example1());
    const CADResult r = cad_full(*p.formula, 2);
    const json doc = projection_document(r.projection, p.variables);
    REQUIRE(doc["levels"].size() == 2);
    CHECK(doc["levels"][0]["variable"] == "x");
    CHECK(doc["levels"][0]["polynomials"].size() == 3);
    CHECK(doc["levels"][1]["polynomials"].size() == 2);
    for (const auto& level : doc["levels"])
        for (const auto& q : level["polynomials"])
            CHECK(q.contains("provenance"));
}

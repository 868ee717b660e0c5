#include "cadkit/io.hpp"

#include "cadkit/parser.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cadkit
{

namespace
{
using nlohmann::json;

std::string require_string(const json& j, const std::string& what)
{
    if (!j.is_string())
        throw std::invalid_argument(what + " must be a string");
    return j.get< std::string >();
}

Polynomial parse_checked(const std::string& text, const VarOrder& vars, const std::string& name)
{
    try
    {
        return parse_polynomial(text, vars);
    }
    catch (const ParseError& e)
    {
        throw std::invalid_argument("polynomial " + name + ": " + e.what());
    }
}

Constraint parse_constraint(const std::string& text, const Problem& p)
{
    static const std::regex form(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(==|=|!=|<>|<=|>=|<|>)\s*0\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, form))
        throw std::invalid_argument("constraint \"" + text + "\" is not of the form <name> <relop> 0");
    const auto it = std::find(p.names.begin(), p.names.end(), m[1].str());
    if (it == p.names.end())
        throw std::invalid_argument("constraint \"" + text + "\" references an undefined polynomial");
    Constraint c;
    c.name = m[1].str();
    c.poly = p.polys[static_cast< std::size_t >(it - p.names.begin())];
    c.relop = *parse_relop(m[2].str());
    return c;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}
} // namespace

Problem parse_problem(const json& doc)
{
    if (!doc.is_object())
        throw std::invalid_argument("problem must be a JSON object");
    Problem p;

    if (!doc.contains("variables") || !doc["variables"].is_array() || doc["variables"].empty())
        throw std::invalid_argument("\"variables\" must be a non-empty array");
    std::vector< std::string > vars;
    for (const auto& v : doc["variables"])
        vars.push_back(require_string(v, "variable"));
    if (std::set< std::string >(vars.begin(), vars.end()).size() != vars.size())
        throw std::invalid_argument("duplicate variable");
    p.variables = VarOrder(vars);

    if (!doc.contains("polynomials"))
        throw std::invalid_argument("\"polynomials\" missing");
    auto add = [&](const std::string& name, const std::string& text) {
        if (std::find(p.names.begin(), p.names.end(), name) != p.names.end())
            throw std::invalid_argument("duplicate polynomial name " + name);
        p.names.push_back(name);
        p.polys.push_back(parse_checked(text, p.variables, name));
    };
    const json& polys = doc["polynomials"];
    if (polys.is_array())
    {
        for (const auto& entry : polys)
        {
            if (!entry.is_object() || !entry.contains("name") || !entry.contains("poly"))
                throw std::invalid_argument("polynomial entries need \"name\" and \"poly\"");
            add(require_string(entry["name"], "name"), require_string(entry["poly"], "poly"));
        }
    }
    else if (polys.is_object())
    {
        for (const auto& [name, text] : polys.items())
            add(name, require_string(text, "poly"));
    }
    else
    {
        throw std::invalid_argument("\"polynomials\" must be an array or object");
    }
    if (p.polys.empty())
        throw std::invalid_argument("no polynomials");
    for (std::size_t i = 0; i < p.polys.size(); ++i)
    {
        if (p.polys[i].is_zero())
            throw std::invalid_argument("polynomial " + p.names[i] + " is zero");
    }

    if (doc.contains("formula"))
    {
        if (!doc["formula"].is_array() || doc["formula"].empty())
            throw std::invalid_argument("\"formula\" must be a non-empty array of clauses");
        FormulaSequence phi;
        for (const auto& c : doc["formula"])
        {
            if (!c.is_object() || !c.contains("constraints") || !c["constraints"].is_array())
                throw std::invalid_argument("clauses need a \"constraints\" array");
            Clause clause;
            for (const auto& text : c["constraints"])
                clause.constraints.push_back(parse_constraint(require_string(text, "constraint"), p));
            if (c.contains("ec") && !c["ec"].is_null())
            {
                const std::string ec = require_string(c["ec"], "ec");
                for (std::size_t j = 0; j < clause.constraints.size() && !clause.ec; ++j)
                {
                    if (clause.constraints[j].name == ec && clause.constraints[j].relop == Relop::eq)
                        clause.ec = j;
                }
                if (!clause.ec)
                    throw std::invalid_argument("ec " + ec + " is not an equation of its clause");
            }
            clause.validate();
            phi.clauses.push_back(std::move(clause));
        }
        p.formula = std::move(phi);
    }
    if (doc.contains("task"))
        p.task = require_string(doc["task"], "task");
    if (doc.contains("options"))
    {
        if (!doc["options"].is_object())
            throw std::invalid_argument("\"options\" must be an object");
        p.options = doc["options"];
    }
    return p;
}

Problem load_problem(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return parse_problem(doc);
}

Problem reordered(const Problem& p, const Ordering& order)
{
    Problem out = p;
    out.variables = p.variables.permuted(order);
    for (auto& q : out.polys)
        q = reorder(q, order);
    if (out.formula)
    {
        for (auto& clause : out.formula->clauses)
            for (auto& c : clause.constraints)
                c.poly = reorder(c.poly, order);
    }
    return out;
}

Blocks parse_blocks(const std::string& text, const VarOrder& vars)
{
    Blocks out;
    std::set< std::size_t > seen;
    std::stringstream blocks(text);
    std::string block;
    while (std::getline(blocks, block, ';'))
    {
        std::vector< std::size_t > b;
        std::stringstream names(block);
        std::string name;
        while (std::getline(names, name, ','))
        {
            name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
            const auto i = vars.index_of(name);
            if (!i)
                throw std::invalid_argument("unknown variable in blocks: " + name);
            if (!seen.insert(*i).second)
                throw std::invalid_argument("variable in two blocks: " + name);
            b.push_back(*i);
        }
        if (b.empty())
            throw std::invalid_argument("empty block");
        out.push_back(std::move(b));
    }
    if (seen.size() != vars.size())
        throw std::invalid_argument("blocks must partition the variables");
    return out;
}

json to_json(const RealAlgebraicPtr& a, const VarOrder& vars)
{
    if (a->is_rational())
        return {{"rational", to_string(a->value())}};
    const Interval iv = a->interval();
    return {{"defpoly", a->defpoly().to_string(vars)}, {"interval", {to_string(iv.lo), to_string(iv.hi)}}};
}

json to_json(const Diagnostic& d, const VarOrder& vars)
{
    return {{"poly", d.poly.to_string(vars)}, {"cell", to_string(d.cell)}, {"reason", d.reason}};
}

json projection_document(const ProjectionSet& ps, const VarOrder& vars)
{
    json levels = json::array();
    for (std::size_t k = 0; k < ps.levels.size(); ++k)
    {
        json polys = json::array();
        for (const auto& p : ps.levels[k])
        {
            const auto it = ps.provenance.find(p);
            polys.push_back({{"poly", p.to_string(vars)},
                             {"provenance", it == ps.provenance.end() ? "input" : to_string(it->second)}});
        }
        levels.push_back({{"level", k + 1}, {"variable", vars.name(k)}, {"polynomials", polys}});
    }
    return {{"levels", levels}};
}

json result_document(const CADResult& r, const VarOrder& vars)
{
    json doc;
    doc["variables"] = vars.names();
    std::string order;
    for (std::size_t i = 0; i < vars.size(); ++i)
        order += (i ? " < " : "") + vars.name(i);
    doc["order"] = order;
    doc["algorithm"] = r.algorithm;
    doc["status"] = r.ok ? "OK" : "FAIL";
    json warnings = json::array();
    for (const auto& w : r.cad.warnings)
        warnings.push_back(to_json(w, vars));
    doc["warnings"] = warnings;
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back(to_json(f, vars));
    doc["failures"] = failures;
    if (!r.ok)
        return doc;

    json polys = json::array();
    for (std::size_t i = 0; i < r.polys.size(); ++i)
        polys.push_back({{"name", r.names[i]}, {"poly", r.polys[i].to_string(vars)}});
    doc["polynomials"] = polys;
    doc["induced_counts"] = r.induced_counts();
    json lifting = json::array();
    for (const auto& rec : r.lifting_records)
    {
        json excluded = json::array();
        for (const auto& q : rec.excluded)
            excluded.push_back(q.to_string(vars));
        const char* branch = rec.branch == LiftingRecord::Branch::point     ? "point"
                             : rec.branch == LiftingRecord::Branch::rescued ? "rescued"
                                                                            : "failed";
        lifting.push_back({{"cell", to_string(rec.cell)}, {"branch", branch}, {"excluded", excluded}});
    }
    doc["lifting"] = lifting;

    const auto& cells = r.cad.cells();
    const Rational width(1, 1 << 20);
    json out = json::array();
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        const Cell& c = cells[i];
        json sample = json::array();
        for (std::size_t k = 0; k < c.sample.size(); ++k)
        {
            if (!c.sample[k]->is_rational())
                refine_to_width(c.sample, k, width);
            sample.push_back(to_json(c.sample[k], vars));
        }
        json signs = json::object();
        for (std::size_t j = 0; j < r.polys.size() && i < r.signs.size(); ++j)
            signs[r.names[j]] = r.signs[i][j];
        json cell = {{"index", c.index}, {"dimension", c.dimension()}, {"sample", sample}, {"signs", signs}};
        if (i < r.truth.size() && !r.truth[i].empty())
        {
            cell["truth"] = r.truth[i];
            cell["disjunction"] = r.disjunction(i);
        }
        out.push_back(std::move(cell));
    }
    doc["cell_count"] = cells.size();
    doc["cells"] = out;
    return doc;
}

json verify_document(const VerifyReport& report)
{
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"cell", to_string(v.cell)}, {"what", v.what}});
    return {{"cells_checked", report.cells_checked},
            {"points_checked", report.points_checked},
            {"violations", violations}};
}

std::string plot_svg(const CADResult& r, const VarOrder& vars, const std::optional< Viewport >& view)
{
    if (r.cad.nvars != 2 || r.cad.levels.size() != 2)
        throw std::invalid_argument("plot needs a CAD of the plane");
    const auto& cells = r.cad.cells();
    std::vector< std::pair< double, double > > points;
    for (const auto& c : cells)
        points.emplace_back(approximate(c.sample, 0), approximate(c.sample, 1));

    Viewport v;
    if (view)
    {
        v = *view;
    }
    else
    {
        v.xmin = v.ymin = 1e300;
        v.xmax = v.ymax = -1e300;
        for (const auto& [x, y] : points)
        {
            v.xmin = std::min(v.xmin, x);
            v.xmax = std::max(v.xmax, x);
            v.ymin = std::min(v.ymin, y);
            v.ymax = std::max(v.ymax, y);
        }
        const double px = std::max(0.5, 0.1 * (v.xmax - v.xmin));
        const double py = std::max(0.5, 0.1 * (v.ymax - v.ymin));
        v.xmin -= px;
        v.xmax += px;
        v.ymin -= py;
        v.ymax += py;
    }
    if (!(v.xmin < v.xmax && v.ymin < v.ymax))
        throw std::invalid_argument("empty viewport");

    constexpr int size = 600;
    auto sx = [&](double x) { return (x - v.xmin) / (v.xmax - v.xmin) * size; };
    auto sy = [&](double y) { return size - (y - v.ymin) / (v.ymax - v.ymin) * size; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    svg << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
    svg << "<text x=\"4\" y=\"14\" font-size=\"12\" font-family=\"monospace\">" << r.algorithm << ": " << cells.size()
        << " cells, " << vars.name(0) << " in [" << fmt(v.xmin) << ", " << fmt(v.xmax) << "], " << vars.name(1)
        << " in [" << fmt(v.ymin) << ", " << fmt(v.ymax) << "]</text>\n";

    static const char* const palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};
    const std::vector< Polynomial >& curves = r.polys.empty() ? r.projection.levels.back() : r.polys;
    for (std::size_t i = 0; i < curves.size(); ++i)
    {
        const Polynomial& p = curves[i];
        std::string path;
        if (p.involves(1))
        {
            for (int col = 0; col < size; ++col)
            {
                const Rational x(v.xmin + (col + 0.5) * (v.xmax - v.xmin) / size);
                const std::vector< Rational > at{x};
                const SamplePoint s = SamplePoint::rational(at);
                const RootsAtPoint roots = isolate_roots_at_point(p, s);
                if (roots.nullified)
                    continue;
                for (const auto& root : roots.roots)
                {
                    const double y = approximate(s.extended(root), 1);
                    if (y >= v.ymin && y <= v.ymax)
                        path += "M" + fmt(sx(x.get_d())) + "," + fmt(sy(y)) + "h0.5";
                }
            }
        }
        else if (p.involves(0))
        {
            for (const auto& root : isolate_roots(p))
            {
                const double x = approximate(SamplePoint({root}), 0);
                if (x >= v.xmin && x <= v.xmax)
                    path += "M" + fmt(sx(x)) + ",0V" + std::to_string(size);
            }
        }
        svg << "<path class=\"curve\" fill=\"none\" stroke=\"" << palette[i % 6]
            << "\" stroke-width=\"1.5\" stroke-linecap=\"round\" d=\"" << path << "\"/>\n";
    }

    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        const bool truth = i < r.truth.size() && !r.truth[i].empty() && r.disjunction(i);
        const bool sector = !cells[i].is_section(1);
        svg << "<circle class=\"sample\" cx=\"" << fmt(sx(points[i].first)) << "\" cy=\"" << fmt(sy(points[i].second))
            << "\" r=\"3\" fill=\"" << (sector ? (truth ? "#d62728" : "#333333") : "white") << "\" stroke=\""
            << (truth ? "#d62728" : "#333333") << "\"><title>" << to_string(cells[i].index) << "</title></circle>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace cadkit

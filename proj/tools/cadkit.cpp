#include "cadkit/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace cadkit;

namespace
{

enum Exit
{
    ok = 0,
    input_error = 1,
    not_well_oriented = 2,
    violations_found = 3
};

struct Common
{
    std::string file;
    std::string order;
    std::string output;
    bool summary = false;
    bool dump_projection = false;
    bool all_failures = false;
};

struct Settings
{
    Common common;
    std::string algorithm;
    unsigned samples = 5;
    std::uint64_t seed = 1;
    std::string measure = "sotd";
    std::string choose = "order";
    std::string blocks;
    std::size_t limit = 1000;
    std::string viewport;
};

void emit(const std::string& text, const std::string& output)
{
    if (output.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out)
        throw std::invalid_argument("cannot write " + output);
    out << text;
}

Problem load(const Common& c)
{
    Problem p = load_problem(c.file);
    if (c.order.empty())
        return p;
    std::stringstream names(c.order);
    std::string name;
    Ordering order;
    while (std::getline(names, name, ','))
    {
        const auto i = p.variables.index_of(name);
        if (!i)
            throw std::invalid_argument("unknown variable in --order: " + name);
        order.push_back(*i);
    }
    std::vector< bool > seen(p.nvars());
    for (auto i : order)
        seen[i] = true;
    if (order.size() != p.nvars() || std::find(seen.begin(), seen.end(), false) != seen.end())
        throw std::invalid_argument("--order must list every variable once");
    return reordered(p, order);
}

/// The problem's formula, or one clause asserting every polynomial is nonzero.
FormulaSequence formula_of(const Problem& p)
{
    if (p.formula)
        return *p.formula;
    Clause c;
    for (std::size_t i = 0; i < p.polys.size(); ++i)
        c.constraints.push_back({p.polys[i], Relop::ne, p.names[i]});
    return {{c}};
}

CADResult compute(const Problem& p, const std::string& algorithm, bool all_failures)
{
    EngineOptions options;
    options.all_failures = all_failures;
    if (algorithm == "full")
    {
        if (p.formula)
            return cad_full(*p.formula, p.nvars(), options);
        CADResult r = cad_full_result(p.polys, p.nvars(), options);
        r.names = p.names;
        return r;
    }
    if (!p.formula)
        throw std::invalid_argument(algorithm + " needs a formula");
    if (algorithm == "ec")
        return eccad(*p.formula, p.nvars(), options);
    if (algorithm == "tticad")
        return tticad(*p.formula, p.nvars(), options);
    throw std::invalid_argument("unknown algorithm " + algorithm);
}

void report_failures(const CADResult& r, const VarOrder& vars)
{
    for (const auto& f : r.failures)
        std::cerr << "FAIL: " << f.poly.to_string(vars) << " on cell " << to_string(f.cell) << ": " << f.reason
                  << '\n';
}

int run_cad(const Settings& s, const std::string& algorithm)
{
    const Problem p = load(s.common);
    const CADResult r = compute(p, algorithm, s.common.all_failures);
    if (!r.ok)
        report_failures(r, p.variables);
    std::string text;
    if (s.common.dump_projection)
    {
        text = projection_document(r.projection, p.variables).dump(2) + "\n";
    }
    else if (s.common.summary)
    {
        if (r.ok)
        {
            text = "cells: " + std::to_string(r.cad.cell_count()) + "\ninduced:";
            for (auto n : r.induced_counts())
                text += " " + std::to_string(n);
            text += "\n";
        }
        else
        {
            text = "FAIL\n";
        }
    }
    else
    {
        text = result_document(r, p.variables).dump(2) + "\n";
    }
    emit(text, s.common.output);
    return r.ok ? ok : not_well_oriented;
}

std::string default_algorithm(const Settings& s, const Problem& p)
{
    if (!s.algorithm.empty())
        return s.algorithm;
    if (p.task == "full" || p.task == "ec" || p.task == "tticad")
        return p.task;
    return "full";
}

int run_verify(const Settings& s)
{
    const Problem p = load(s.common);
    const CADResult r = compute(p, default_algorithm(s, p), s.common.all_failures);
    if (!r.ok)
    {
        report_failures(r, p.variables);
        return not_well_oriented;
    }
    const VerifyReport report = verify_invariance(r, s.samples, s.seed);
    std::string text;
    if (s.common.summary)
        text = "cells: " + std::to_string(report.cells_checked) + "\nviolations: " +
               std::to_string(report.violations.size()) + "\n";
    else
        text = verify_document(report).dump(2) + "\n";
    emit(text, s.common.output);
    return report.violations.empty() ? ok : violations_found;
}

int run_plot(const Settings& s)
{
    const Problem p = load(s.common);
    const CADResult r = compute(p, default_algorithm(s, p), s.common.all_failures);
    if (!r.ok)
    {
        report_failures(r, p.variables);
        return not_well_oriented;
    }
    std::optional< Viewport > view;
    if (!s.viewport.empty())
    {
        Viewport v;
        char c1 = 0, c2 = 0, c3 = 0;
        std::istringstream in(s.viewport);
        if (!(in >> v.xmin >> c1 >> v.xmax >> c2 >> v.ymin >> c3 >> v.ymax) || c1 != ',' || c2 != ',' || c3 != ',')
            throw std::invalid_argument("--viewport expects xmin,xmax,ymin,ymax");
        view = v;
    }
    emit(plot_svg(r, p.variables, view), s.common.output);
    return ok;
}

std::string describe(const Formulation& f, const FormulaSequence& phi, const VarOrder& vars)
{
    std::string out;
    for (std::size_t i = 0; i < f.order.size(); ++i)
        out += (i ? "<" : "") + vars.name(f.order[i]);
    out += "  ec:";
    for (std::size_t i = 0; i < f.ec.size(); ++i)
        out += " " + (f.ec[i] ? phi.clauses[i].constraints[*f.ec[i]].name : std::string("-"));
    out += "  split:";
    for (const auto& g : f.split)
    {
        out += " {";
        for (std::size_t j = 0; j < g.size(); ++j)
            out += (j ? "," : "") + std::to_string(g[j] + 1);
        out += "}";
    }
    return out;
}

int run_heuristic(const Settings& s)
{
    const Problem p = load(s.common);
    const FormulaSequence phi = formula_of(p);
    const MeasureSpec spec = MeasureSpec::parse(s.measure);
    std::vector< Dimension > dims;
    if (s.choose == "order" || s.choose == "all")
        dims.push_back(Dimension::order);
    if (s.choose == "ec" || s.choose == "all")
        dims.push_back(Dimension::ec);
    if (s.choose == "split" || s.choose == "all")
        dims.push_back(Dimension::split);
    if (dims.empty())
        throw std::invalid_argument("--choose expects order, ec, split or all");
    const Blocks blocks = s.blocks.empty() ? Blocks{} : parse_blocks(s.blocks, p.variables);
    const Enumeration e = enumerate_formulations(phi, p.nvars(), dims, blocks, s.limit);
    const Ranking ranking = rank_formulations(e.candidates, phi, p.nvars(), spec);

    std::ostringstream out;
    out << "measure: " << s.measure << '\n';
    if (spec.kind == MeasureSpec::Kind::weighted)
        out << "weighted score: each measure divided by its maximum over the candidates\n";
    out << "candidates: " << e.candidates.size();
    if (e.truncated)
        out << " (truncated from " << e.total << ")";
    out << '\n';
    out << std::left << std::setw(5) << "#" << std::setw(8) << "sotd" << std::setw(8) << "ndrr" << std::setw(10)
        << "weighted"
        << "formulation\n";
    for (std::size_t i = 0; i < e.candidates.size(); ++i)
    {
        const ScoreRow& row = ranking.rows[i];
        std::ostringstream w;
        if (spec.kind == MeasureSpec::Kind::weighted)
            w << std::fixed << std::setprecision(4) << row.weighted;
        else
            w << '-';
        out << std::setw(5) << i + 1 << std::setw(8) << row.sotd << std::setw(8) << row.ndrr << std::setw(10)
            << w.str() << describe(e.candidates[i], phi, p.variables) << '\n';
    }
    out << "chosen: " << describe(e.candidates[ranking.best], phi, p.variables) << '\n';
    emit(out.str(), s.common.output);
    return ok;
}

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("file", c.file, "problem file")->required();
    sub->add_option("--order", c.order, "variables lowest first, comma separated");
    sub->add_option("-o,--output", c.output, "write to this file instead of standard output");
    sub->add_flag("--summary", c.summary, "print cell counts only");
    sub->add_flag("--all-failures", c.all_failures, "keep lifting after a failure and report every one");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact cylindrical algebraic decomposition"};
    app.require_subcommand(1);
    Settings s;

    std::vector< std::pair< std::string, CLI::App* > > cads;
    for (const char* name : {"full", "ec", "tticad"})
    {
        CLI::App* sub = app.add_subcommand(name, std::string("build a ") +
                                                     (std::string(name) == "full" ? "sign-invariant CAD"
                                                      : std::string(name) == "ec"
                                                          ? "CAD invariant for an equational constraint"
                                                          : "truth-table invariant CAD"));
        add_common(sub, s.common);
        sub->add_flag("--dump-projection", s.common.dump_projection, "print the projection set with provenance");
        cads.emplace_back(name, sub);
    }

    CLI::App* heuristic = app.add_subcommand("heuristic", "rank problem formulations");
    add_common(heuristic, s.common);
    heuristic->add_option("--measure", s.measure, "sotd, ndrr, sotd,ndrr or weighted:w1,w2");
    heuristic->add_option("--choose", s.choose, "order, ec, split or all")
        ->check(CLI::IsMember({"order", "ec", "split", "all"}));
    heuristic->add_option("--blocks", s.blocks, "variable blocks such as \"x;y,z\", lowest first");
    heuristic->add_option("--limit", s.limit, "maximum number of candidates");

    CLI::App* verify = app.add_subcommand("verify", "check a CAD by resampling its cells");
    add_common(verify, s.common);
    verify->add_option("--algorithm", s.algorithm, "full, ec or tticad")
        ->check(CLI::IsMember({"full", "ec", "tticad"}));
    verify->add_option("--samples", s.samples, "samples per cell");
    verify->add_option("--seed", s.seed, "sampling seed");

    CLI::App* plot = app.add_subcommand("plot", "draw a CAD of the plane as SVG");
    add_common(plot, s.common);
    plot->add_option("--algorithm", s.algorithm, "full, ec or tticad")->check(CLI::IsMember({"full", "ec", "tticad"}));
    plot->add_option("--viewport", s.viewport, "xmin,xmax,ymin,ymax");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try
    {
        for (const auto& [name, sub] : cads)
        {
            if (sub->parsed())
                return run_cad(s, name);
        }
        if (heuristic->parsed())
            return run_heuristic(s);
        if (verify->parsed())
            return run_verify(s);
        return run_plot(s);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    }
}

#include "cadkit/engine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace cadkit
{

std::optional< Relop > parse_relop(const std::string& text)
{
    static const std::map< std::string, Relop > table{
        {"=", Relop::eq},  {"==", Relop::eq}, {"!=", Relop::ne}, {"<>", Relop::ne}, {"<", Relop::lt},
        {"<=", Relop::le}, {">", Relop::gt},  {">=", Relop::ge}};
    auto it = table.find(text);
    if (it == table.end())
        return std::nullopt;
    return it->second;
}

std::string to_string(Relop r)
{
    switch (r)
    {
    case Relop::eq:
        return "=";
    case Relop::ne:
        return "!=";
    case Relop::lt:
        return "<";
    case Relop::le:
        return "<=";
    case Relop::gt:
        return ">";
    case Relop::ge:
        return ">=";
    }
    return "=";
}

bool holds(Relop r, int sign)
{
    switch (r)
    {
    case Relop::eq:
        return sign == 0;
    case Relop::ne:
        return sign != 0;
    case Relop::lt:
        return sign < 0;
    case Relop::le:
        return sign <= 0;
    case Relop::gt:
        return sign > 0;
    case Relop::ge:
        return sign >= 0;
    }
    return false;
}

void Clause::validate() const
{
    if (constraints.empty())
        throw std::invalid_argument("clause without constraints");
    for (const auto& c : constraints)
    {
        if (c.poly.is_zero())
            throw std::invalid_argument("constraint polynomial is zero");
    }
    if (ec)
    {
        if (*ec >= constraints.size())
            throw std::invalid_argument("equational constraint index out of range");
        if (constraints[*ec].relop != Relop::eq)
            throw std::invalid_argument("designated equational constraint is not an equation");
    }
}

std::vector< std::size_t > CADResult::induced_counts() const
{
    std::vector< std::size_t > out;
    for (const auto& level : cad.levels)
        out.push_back(level.size());
    return out;
}

bool CADResult::disjunction(std::size_t cell) const
{
    const auto& t = truth.at(cell);
    return std::any_of(t.begin(), t.end(), [](bool b) { return b; });
}

namespace
{
bool coordinate_constant(const Cell& c, std::size_t j, const ProjectionSet& ps)
{
    if (!c.is_section(j))
        return false;
    const SamplePoint prefix = c.sample.prefix(j + 1);
    for (const auto& p : ps.levels.at(j))
    {
        bool only_j = true;
        for (std::size_t i = 0; i < j; ++i)
            only_j = only_j && !p.involves(i);
        if (only_j && is_zero_at(p, prefix))
            return true;
    }
    for (std::size_t i = 0; i < j; ++i)
    {
        if (!coordinate_constant(c, i, ps))
            return false;
    }
    return true;
}

std::vector< Polynomial > below_main_variable(std::span< const Polynomial > polys, std::size_t v)
{
    std::vector< Polynomial > out;
    for (const auto& p : polys)
    {
        if (auto mv = p.main_variable(); mv && *mv < v)
            out.push_back(p);
    }
    return out;
}

/// Basis and equational part of one clause, restricted to the top variable.
struct ClauseSets
{
    std::vector< Polynomial > B;
    std::vector< Polynomial > F;
};

void require_top_variable(const Polynomial& f, std::size_t nvars)
{
    if (f.is_constant())
        throw std::invalid_argument("equational constraint is constant");
    if (*f.main_variable() + 1 != nvars)
        throw std::invalid_argument("equational constraint does not involve the highest variable");
}

/// Lower-dimensional CAD for the projection set, then the top-level lift
/// with per-cell lifting sets.
CADResult lift_with_sets(TaggedSet projection_top, const std::vector< ClauseSets >& sets, std::size_t nvars,
                         const EngineOptions& options)
{
    CADResult r;
    const std::size_t top = nvars - 1;
    CadOptions cad_options;
    cad_options.strict_top = true;
    cad_options.all_failures = options.all_failures;
    cad_options.threads = options.threads;
    CadOutcome lower = cad_from_projection(full_projection(projection_top, nvars), top, cad_options);
    r.cad = std::move(lower.cad);
    r.projection = std::move(lower.projection);
    r.failures = std::move(lower.failures);
    r.ok = lower.ok;

    TaggedSet top_polys;
    for (const auto& s : sets)
        for (const auto& b : s.B)
            insert_tagged(top_polys, b, Provenance::input);
    r.projection.levels[top] = keys(top_polys);
    for (const auto& [p, tag] : top_polys)
        r.projection.provenance.emplace(p, tag);
    if (!r.ok)
        return r;

    std::vector< Cell >& bases = r.cad.levels.back();
    std::vector< std::vector< Cell > > stacks(bases.size());
    std::vector< std::vector< Diagnostic > > notes(bases.size());
    std::vector< std::vector< Diagnostic > > fails(bases.size());
    std::vector< std::vector< LiftingRecord > > records(bases.size());
    parallel_for(bases.size(), options.threads, [&](std::size_t i) {
        Cell& c = bases[i];
        std::vector< Polynomial > L;
        for (const auto& s : sets)
        {
            LiftingSetResult ls = lifting_set(c, s.B, s.F, r.projection);
            if (ls.record)
                records[i].push_back(*ls.record);
            if (!ls.ok)
            {
                fails[i].push_back(*ls.failure);
                continue;
            }
            L.insert(L.end(), ls.polys.begin(), ls.polys.end());
        }
        if (!fails[i].empty())
            return;
        std::vector< Polynomial > used;
        for (const auto& p : simplify_set(L))
        {
            if (nullified_on_cell(p, c))
                notes[i].push_back({p, c.index, "nullified; omitted from the stack"});
            else
                used.push_back(p);
        }
        c.lifting = used;
        stacks[i] = generate_stack(c, used, i);
    });

    std::vector< Cell > level;
    for (std::size_t i = 0; i < bases.size(); ++i)
    {
        for (auto& rec : records[i])
            r.lifting_records.push_back(std::move(rec));
        for (auto& n : notes[i])
            r.cad.warnings.push_back(std::move(n));
        for (auto& f : fails[i])
            r.failures.push_back(std::move(f));
        for (auto& cell : stacks[i])
            level.push_back(std::move(cell));
    }
    if (!r.failures.empty())
    {
        r.ok = false;
        if (!options.all_failures)
            r.failures.resize(1);
        return r;
    }
    r.cad.levels.push_back(std::move(level));
    return r;
}

CADResult line_cad(std::span< const Polynomial > polys, std::size_t nvars)
{
    CADResult r;
    const Basis basis = squarefree_finest_basis(polys);
    r.cad = base_cad(basis.polys, nvars);
    r.projection.nvars = nvars;
    r.projection.levels = {basis.polys};
    for (const auto& p : basis.polys)
        r.projection.provenance.emplace(p, Provenance::input);
    return r;
}

std::vector< Polynomial > distinct_polys(const FormulaSequence& phi)
{
    std::vector< Polynomial > out;
    for (const auto& clause : phi.clauses)
    {
        for (const auto& c : clause.constraints)
        {
            if (std::find(out.begin(), out.end(), c.poly) == out.end())
                out.push_back(c.poly);
        }
    }
    return out;
}

void validate(const FormulaSequence& phi)
{
    if (phi.clauses.empty())
        throw std::invalid_argument("formula without clauses");
    for (const auto& c : phi.clauses)
        c.validate();
}

void set_default_names(CADResult& r)
{
    r.names.clear();
    for (std::size_t i = 0; i < r.polys.size(); ++i)
        r.names.push_back("p" + std::to_string(i + 1));
}

/// Contents and lower-level basis elements of every clause, plus the
/// top-level basis and its equational part per clause.
struct ClauseProjection
{
    TaggedSet lower;
    std::vector< ClauseSets > sets;
};

ClauseProjection clause_projection(std::span< const std::vector< Polynomial > > A,
                                   std::span< const std::vector< Polynomial > > E, std::size_t nvars)
{
    const std::size_t top = nvars - 1;
    ClauseProjection out;
    ECStructure s;
    for (std::size_t i = 0; i < A.size(); ++i)
    {
        const Basis B = squarefree_finest_basis(A[i]);
        for (const auto& c : B.contents)
            insert_tagged(out.lower, c, Provenance::content);
        for (const auto& b : below_main_variable(B.polys, top))
            insert_tagged(out.lower, b, Provenance::input);
        ClauseSets cs{with_main_variable(B.polys, top), {}};
        for (const auto& b : cs.B)
        {
            if (std::any_of(E[i].begin(), E[i].end(), [&](const Polynomial& e) { return divide(e, b).has_value(); }))
                cs.F.push_back(b);
        }
        Basis bb;
        bb.polys = cs.B;
        Basis ff;
        ff.polys = cs.F;
        s.A_list.push_back(std::move(bb));
        s.E_list.push_back(std::move(ff));
        out.sets.push_back(std::move(cs));
    }
    for (const auto& [p, tag] : tticad_P_tagged(s, top))
        out.lower.emplace(p, tag);
    return out;
}

CADResult lift_clauses(std::span< const std::vector< Polynomial > > A, std::span< const std::vector< Polynomial > > E,
                       std::size_t nvars, const EngineOptions& options)
{
    if (nvars == 1)
    {
        std::vector< Polynomial > all;
        for (const auto& e : E)
            all.insert(all.end(), e.begin(), e.end());
        return line_cad(all, nvars);
    }
    ClauseProjection cp = clause_projection(A, E, nvars);
    return lift_with_sets(std::move(cp.lower), cp.sets, nvars, options);
}

/// A_i and E_i per clause: E_i is the designated constraint or all of A_i.
void clause_sets(const FormulaSequence& phi, std::size_t nvars, std::vector< std::vector< Polynomial > >& A,
                 std::vector< std::vector< Polynomial > >& E)
{
    for (const auto& clause : phi.clauses)
    {
        std::vector< Polynomial > a;
        for (const auto& c : clause.constraints)
            a.push_back(c.poly);
        if (clause.ec)
        {
            const Polynomial& f = clause.constraints[*clause.ec].poly;
            require_top_variable(f, nvars);
            E.push_back({f});
        }
        else
        {
            E.push_back(a);
        }
        A.push_back(std::move(a));
    }
}
} // namespace

ProjectionSet ec_projection(std::span< const std::vector< Polynomial > > A,
                            std::span< const std::vector< Polynomial > > E, std::size_t nvars)
{
    if (nvars == 1)
    {
        std::vector< Polynomial > all;
        for (const auto& e : E)
            all.insert(all.end(), e.begin(), e.end());
        return line_cad(all, nvars).projection;
    }
    ClauseProjection cp = clause_projection(A, E, nvars);
    ProjectionSet ps = full_projection(cp.lower, nvars);
    TaggedSet top_polys;
    for (const auto& cs : cp.sets)
        for (const auto& b : cs.B)
            insert_tagged(top_polys, b, Provenance::input);
    ps.levels[nvars - 1] = keys(top_polys);
    for (const auto& [p, tag] : top_polys)
        ps.provenance.emplace(p, tag);
    return ps;
}

ProjectionSet formula_projection(const FormulaSequence& phi, std::size_t nvars)
{
    std::vector< std::vector< Polynomial > > A;
    std::vector< std::vector< Polynomial > > E;
    clause_sets(phi, nvars, A, E);
    return ec_projection(A, E, nvars);
}

bool nonzero_constant_on_cell(const Polynomial& q, const Cell& c, const ProjectionSet& projection)
{
    for (std::size_t j = 0; j < q.nvars(); ++j)
    {
        if (!q.involves(j))
            continue;
        if (j >= c.level() || !coordinate_constant(c, j, projection))
            return false;
    }
    return sign_at(q, c.sample) != 0;
}

LiftingSetResult lifting_set(const Cell& c, std::span< const Polynomial > A, std::span< const Polynomial > E,
                             const ProjectionSet& projection)
{
    LiftingSetResult out;
    std::optional< Polynomial > nullified;
    for (const auto& e : E)
    {
        if (nullified_on_cell(e, c))
        {
            nullified = e;
            break;
        }
    }
    if (!nullified)
    {
        out.polys.assign(E.begin(), E.end());
        return out;
    }
    LiftingRecord rec;
    rec.cell = c.index;
    if (c.dimension() == 0)
    {
        rec.branch = LiftingRecord::Branch::point;
        out.polys.assign(A.begin(), A.end());
        out.record = rec;
        return out;
    }
    Basis a;
    a.polys.assign(A.begin(), A.end());
    Basis e;
    e.polys.assign(E.begin(), E.end());
    rec.excluded = excl_P(a, e, c.level());
    const bool rescued = std::all_of(rec.excluded.begin(), rec.excluded.end(), [&](const Polynomial& q) {
        return nonzero_constant_on_cell(q, c, projection);
    });
    if (rescued)
    {
        rec.branch = LiftingRecord::Branch::rescued;
        out.polys.assign(A.begin(), A.end());
        out.record = rec;
        return out;
    }
    rec.branch = LiftingRecord::Branch::failed;
    out.ok = false;
    out.record = rec;
    out.failure = Diagnostic{*nullified, c.index, "equational constraint nullified over a cell of positive dimension"};
    return out;
}

CADResult cad_full_result(std::span< const Polynomial > polys, std::size_t nvars, const EngineOptions& options)
{
    CadOptions cad_options;
    cad_options.all_failures = options.all_failures;
    cad_options.threads = options.threads;
    CadOutcome out = cad_full(polys, nvars, cad_options);
    CADResult r;
    r.algorithm = "full";
    r.ok = out.ok;
    r.cad = std::move(out.cad);
    r.projection = std::move(out.projection);
    r.failures = std::move(out.failures);
    r.polys.assign(polys.begin(), polys.end());
    set_default_names(r);
    for (const auto& p : r.polys)
        r.relevant.push_back({p, std::nullopt});
    if (r.ok)
        evaluate_cells(r);
    return r;
}

CADResult eccad(const Polynomial& f, std::span< const Polynomial > G, std::size_t nvars, const EngineOptions& options)
{
    require_top_variable(f, nvars);
    std::vector< Polynomial > A(G.begin(), G.end());
    A.push_back(f);
    const std::vector< std::vector< Polynomial > > As{A};
    const std::vector< std::vector< Polynomial > > Es{{f}};
    CADResult r = lift_clauses(As, Es, nvars, options);
    r.algorithm = "ec";
    r.polys = {f};
    r.polys.insert(r.polys.end(), G.begin(), G.end());
    set_default_names(r);
    r.relevant.push_back({f, std::nullopt});
    for (const auto& g : G)
        r.relevant.push_back({g, f});
    if (r.ok)
        evaluate_cells(r);
    return r;
}

Polynomial implicit_ec(const FormulaSequence& phi)
{
    if (phi.clauses.empty())
        throw std::invalid_argument("no implicit EC exists");
    std::optional< Polynomial > product;
    for (const auto& clause : phi.clauses)
    {
        if (!clause.ec)
            throw std::invalid_argument("no implicit EC exists");
        const Polynomial& f = clause.constraints.at(*clause.ec).poly;
        product = product ? *product * f : f;
    }
    return *product;
}

CADResult cad_full(const FormulaSequence& phi, std::size_t nvars, const EngineOptions& options)
{
    validate(phi);
    CADResult r = cad_full_result(distinct_polys(phi), nvars, options);
    attach_formula(r, phi);
    return r;
}

CADResult eccad(const FormulaSequence& phi, std::size_t nvars, const EngineOptions& options)
{
    validate(phi);
    const Polynomial f = implicit_ec(phi);
    std::vector< Polynomial > G;
    for (const auto& p : distinct_polys(phi))
    {
        if (!same_up_to_constant(p, f))
            G.push_back(p);
    }
    CADResult r = eccad(f, G, nvars, options);
    const std::vector< Relevant > relevant = r.relevant;
    attach_formula(r, phi);
    r.relevant = {relevant.front()};
    for (const auto& p : r.polys)
    {
        if (!same_up_to_constant(p, f))
            r.relevant.push_back({p, f});
    }
    return r;
}

CADResult tticad(const FormulaSequence& phi, std::size_t nvars, const EngineOptions& options)
{
    validate(phi);
    std::vector< std::vector< Polynomial > > A;
    std::vector< std::vector< Polynomial > > E;
    clause_sets(phi, nvars, A, E);
    CADResult r = lift_clauses(A, E, nvars, options);
    r.algorithm = "tticad";
    attach_formula(r, phi);
    r.relevant.clear();
    for (const auto& clause : phi.clauses)
    {
        for (std::size_t j = 0; j < clause.constraints.size(); ++j)
        {
            std::optional< Polynomial > cond;
            if (clause.ec && *clause.ec != j)
                cond = clause.constraints[*clause.ec].poly;
            r.relevant.push_back({clause.constraints[j].poly, cond});
        }
    }
    return r;
}

bool evaluate_truth(const Cell& c, const Clause& clause)
{
    for (const auto& con : clause.constraints)
    {
        if (!holds(con.relop, sign_at(con.poly, c.sample)))
            return false;
    }
    return true;
}

void attach_formula(CADResult& r, const FormulaSequence& phi)
{
    r.formula = phi;
    r.polys.clear();
    r.names.clear();
    for (const auto& clause : phi.clauses)
    {
        for (const auto& c : clause.constraints)
        {
            if (std::find(r.polys.begin(), r.polys.end(), c.poly) != r.polys.end())
                continue;
            r.polys.push_back(c.poly);
            r.names.push_back(c.name.empty() ? "p" + std::to_string(r.polys.size()) : c.name);
        }
    }
    r.relevant.clear();
    for (const auto& p : r.polys)
        r.relevant.push_back({p, std::nullopt});
    if (r.ok)
        evaluate_cells(r);
}

void evaluate_cells(CADResult& r)
{
    const auto& cells = r.cad.cells();
    r.signs.assign(cells.size(), {});
    r.truth.assign(cells.size(), {});
    parallel_for(cells.size(), 0, [&](std::size_t i) {
        for (const auto& p : r.polys)
            r.signs[i].push_back(sign_at(p, cells[i].sample));
        for (const auto& clause : r.formula.clauses)
            r.truth[i].push_back(evaluate_truth(cells[i], clause));
    });
}

namespace
{
/// Sorted distinct real roots of the polynomials over an all-rational point.
std::optional< std::vector< RealAlgebraicPtr > > roots_over(std::span< const Polynomial > polys, const SamplePoint& q)
{
    std::vector< RealAlgebraicPtr > roots;
    for (const auto& p : polys)
    {
        const RootsAtPoint rp = isolate_roots_at_point(p, q);
        if (rp.nullified)
            return std::nullopt;
        for (const auto& root : rp.roots)
        {
            auto it = std::lower_bound(roots.begin(), roots.end(), root,
                                       [&](const auto& a, const auto& b) { return compare(a, b, q) < 0; });
            if (it != roots.end() && compare(*it, root, q) == 0)
                continue;
            roots.insert(it, root);
        }
    }
    return roots;
}

Rational random_between(std::mt19937_64& rng, const RealAlgebraicPtr& below, const RealAlgebraicPtr& above,
                        const SamplePoint& q)
{
    constexpr unsigned long scale = 1ul << 20;
    const Rational t(static_cast< long >(1 + rng() % (scale - 1)), static_cast< long >(scale));
    auto lower_bound_of = [&](const RealAlgebraicPtr& a) {
        return a->is_rational() ? a->value() : a->interval().hi;
    };
    auto upper_bound_of = [&](const RealAlgebraicPtr& a) {
        return a->is_rational() ? a->value() : a->interval().lo;
    };
    if (!below && !above)
        return Rational(8) * t - 4;
    if (!below)
        return upper_bound_of(above) - 4 * t;
    if (!above)
        return lower_bound_of(below) + 4 * t;
    for (;;)
    {
        const Rational lo = lower_bound_of(below);
        const Rational hi = upper_bound_of(above);
        if (lo < hi)
            return lo + t * (hi - lo);
        refine(q.extended(below), q.size());
        refine(q.extended(above), q.size());
    }
}
} // namespace

VerifyReport verify_invariance(const CADResult& r, unsigned samples_per_cell, std::uint64_t seed, unsigned threads)
{
    VerifyReport report;
    if (!r.ok || r.cad.levels.empty())
        return report;
    const std::size_t n = r.cad.levels.size();
    // stack sizes by base position, per level
    std::vector< std::map< std::size_t, std::size_t > > stack_size(n);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& c : r.cad.levels[k])
            ++stack_size[k][c.parent];

    const auto& cells = r.cad.cells();
    std::vector< std::vector< Violation > > found(cells.size());
    std::vector< std::size_t > points(cells.size(), 0);

    auto check_point = [&](std::size_t i, const SamplePoint& q, const char* where) {
        for (const auto& rel : r.relevant)
        {
            const auto pos = std::find(r.polys.begin(), r.polys.end(), rel.poly) - r.polys.begin();
            if (rel.condition && sign_at(*rel.condition, cells[i].sample) != 0)
                continue;
            const int stored = static_cast< std::size_t >(pos) < r.polys.size() ? r.signs[i][pos]
                                                                                 : sign_at(rel.poly, cells[i].sample);
            if (sign_at(rel.poly, q) != stored)
                found[i].push_back({cells[i].index, std::string("sign of ") + rel.poly.to_string() + " differs " + where});
        }
        for (std::size_t j = 0; j < r.formula.clauses.size(); ++j)
        {
            if (evaluate_truth(Cell{cells[i].index, q, 0, {}}, r.formula.clauses[j]) != r.truth[i][j])
                found[i].push_back({cells[i].index, "truth of clause " + std::to_string(j + 1) + " differs " + where});
        }
    };

    parallel_for(cells.size(), threads, [&](std::size_t i) {
        const Cell& cell = cells[i];
        check_point(i, cell.sample, "at the stored sample");
        if (cell.dimension() != n)
            return;
        std::mt19937_64 rng(seed * 1000003u + i);
        // ancestors from level 0 to n-1
        std::vector< std::size_t > chain(n);
        chain[n - 1] = i;
        for (std::size_t k = n - 1; k > 0; --k)
            chain[k - 1] = r.cad.levels[k][chain[k]].parent;
        for (unsigned s = 0; s < samples_per_cell; ++s)
        {
            SamplePoint q;
            bool good = true;
            for (std::size_t k = 0; k < n && good; ++k)
            {
                const Cell& here = r.cad.levels[k][chain[k]];
                const Cell& base = k == 0 ? r.cad.root : r.cad.levels[k - 1][here.parent];
                const auto roots = roots_over(base.lifting, q);
                const std::size_t expected = (stack_size[k].at(here.parent) - 1) / 2;
                if (!roots || roots->size() != expected)
                {
                    found[i].push_back({cell.index, "stack over a resampled point changes at level " +
                                                        std::to_string(k + 1)});
                    good = false;
                    break;
                }
                const std::size_t j = (here.index[k] - 1) / 2;
                const RealAlgebraicPtr below = j == 0 ? nullptr : (*roots)[j - 1];
                const RealAlgebraicPtr above = j == roots->size() ? nullptr : (*roots)[j];
                q = q.extended(std::make_shared< RealAlgebraic >(random_between(rng, below, above, q), k));
            }
            if (!good)
                break;
            ++points[i];
            check_point(i, q, "at a resampled point");
        }
    });

    report.cells_checked = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        report.points_checked += points[i];
        for (auto& v : found[i])
            report.violations.push_back(std::move(v));
    }
    return report;
}

} // namespace cadkit

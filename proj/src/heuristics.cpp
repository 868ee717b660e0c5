#include "cadkit/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cadkit
{

std::size_t sotd(std::span< const Polynomial > polys)
{
    std::size_t total = 0;
    for (const auto& p : polys)
    {
        for (const auto& [e, c] : p.terms())
            total += std::accumulate(e.begin(), e.end(), std::size_t{0});
    }
    return total;
}

std::size_t sotd(const ProjectionSet& ps)
{
    return sotd(ps.all());
}

std::size_t ndrr(const ProjectionSet& ps)
{
    if (ps.levels.empty())
        return 0;
    return static_cast< std::size_t >(ndrr(std::span< const Polynomial >(ps.levels.front())));
}

Polynomial reorder(const Polynomial& p, const Ordering& order)
{
    std::vector< std::size_t > new_index(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        new_index[order[i]] = i;
    return p.remap(new_index, order.size());
}

namespace
{
Blocks default_blocks(std::size_t nvars, const Blocks& blocks)
{
    if (!blocks.empty())
        return blocks;
    Blocks one(1);
    for (std::size_t i = 0; i < nvars; ++i)
        one[0].push_back(i);
    return one;
}

/// One McCallum projection step eliminating variable v, in the original indexing.
std::vector< Polynomial > eliminate(std::span< const Polynomial > polys, std::size_t nvars, std::size_t v)
{
    std::vector< Polynomial > out;
    std::vector< Polynomial > involved;
    for (const auto& p : polys)
        (p.involves(v) ? involved : out).push_back(p);
    Ordering order;
    for (std::size_t i = 0; i < nvars; ++i)
    {
        if (i != v)
            order.push_back(i);
    }
    order.push_back(v);
    for (auto& p : involved)
        p = reorder(p, order);
    const Basis basis = squarefree_finest_basis(involved);
    std::vector< Polynomial > projected = basis.contents;
    for (const auto& p : keys(mccallum_P_tagged(basis.polys, nvars - 1)))
        projected.push_back(p);
    for (const auto& p : projected)
        out.push_back(p.remap(order, nvars));
    std::vector< Polynomial > nonconstant;
    for (const auto& p : simplify_set(out))
    {
        if (!p.is_constant())
            nonconstant.push_back(p);
    }
    return nonconstant;
}
} // namespace

Ordering greedy_order(std::span< const Polynomial > polys, std::size_t nvars, const Blocks& blocks)
{
    const Blocks bs = default_blocks(nvars, blocks);
    std::vector< Polynomial > current;
    for (const auto& p : simplify_set(polys))
    {
        if (!p.is_constant())
            current.push_back(p);
    }
    Ordering top_down;
    for (auto block = bs.rbegin(); block != bs.rend(); ++block)
    {
        std::vector< std::size_t > remaining = *block;
        std::sort(remaining.begin(), remaining.end());
        while (!remaining.empty())
        {
            std::size_t best = 0;
            std::vector< Polynomial > best_set;
            std::optional< std::size_t > best_score;
            for (std::size_t i = 0; i < remaining.size(); ++i)
            {
                std::vector< Polynomial > next = eliminate(current, nvars, remaining[i]);
                const std::size_t score = sotd(next);
                if (!best_score || score <= *best_score)
                {
                    best = i;
                    best_score = score;
                    best_set = std::move(next);
                }
            }
            top_down.push_back(remaining[best]);
            remaining.erase(remaining.begin() + static_cast< std::ptrdiff_t >(best));
            current = std::move(best_set);
        }
    }
    return Ordering(top_down.rbegin(), top_down.rend());
}

std::vector< Ordering > block_orderings(std::size_t nvars, const Blocks& blocks)
{
    const Blocks bs = default_blocks(nvars, blocks);
    std::vector< Ordering > out{{}};
    for (auto block : bs)
    {
        std::sort(block.begin(), block.end());
        std::vector< Ordering > next;
        for (const auto& prefix : out)
        {
            auto perm = block;
            do
            {
                Ordering o = prefix;
                o.insert(o.end(), perm.begin(), perm.end());
                next.push_back(std::move(o));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        out = std::move(next);
    }
    return out;
}

bool respects_blocks(const Ordering& order, const Blocks& blocks)
{
    std::size_t pos = 0;
    for (const auto& block : blocks)
    {
        if (pos + block.size() > order.size())
            return false;
        std::vector< std::size_t > got(order.begin() + static_cast< std::ptrdiff_t >(pos),
                                       order.begin() + static_cast< std::ptrdiff_t >(pos + block.size()));
        std::vector< std::size_t > want = block;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want)
            return false;
        pos += block.size();
    }
    return pos == order.size();
}

Formulation given_formulation(const FormulaSequence& phi, std::size_t nvars)
{
    Formulation f;
    f.order.resize(nvars);
    std::iota(f.order.begin(), f.order.end(), std::size_t{0});
    for (std::size_t i = 0; i < phi.clauses.size(); ++i)
    {
        f.ec.push_back(phi.clauses[i].ec);
        f.split.push_back({i});
    }
    return f;
}

FormulaSequence apply(const FormulaSequence& phi, const Formulation& f)
{
    FormulaSequence out = phi;
    for (std::size_t i = 0; i < out.clauses.size(); ++i)
    {
        for (auto& c : out.clauses[i].constraints)
            c.poly = reorder(c.poly, f.order);
        if (i < f.ec.size())
            out.clauses[i].ec = f.ec[i];
    }
    return out;
}

ProjectionSet formulation_projection(const FormulaSequence& phi, std::size_t nvars, const Formulation& f)
{
    const FormulaSequence re = apply(phi, f);
    std::vector< std::vector< std::size_t > > groups = f.split;
    if (groups.empty())
    {
        for (std::size_t i = 0; i < re.clauses.size(); ++i)
            groups.push_back({i});
    }
    std::vector< std::vector< Polynomial > > A;
    std::vector< std::vector< Polynomial > > E;
    bool any_ec = false;
    for (const auto& group : groups)
    {
        std::vector< Polynomial > a;
        std::vector< Polynomial > e;
        bool all_ec = true;
        for (std::size_t i : group)
        {
            const Clause& clause = re.clauses.at(i);
            for (const auto& c : clause.constraints)
                a.push_back(c.poly);
            if (clause.ec && clause.constraints[*clause.ec].poly.involves(nvars - 1))
                e.push_back(clause.constraints[*clause.ec].poly);
            else
                all_ec = false;
        }
        any_ec = any_ec || all_ec;
        E.push_back(all_ec ? e : a);
        A.push_back(std::move(a));
    }
    if (!any_ec)
    {
        std::vector< Polynomial > all;
        for (const auto& a : A)
            all.insert(all.end(), a.begin(), a.end());
        return full_projection(std::span< const Polynomial >(all), nvars);
    }
    return ec_projection(A, E, nvars);
}

Enumeration enumerate_formulations(const FormulaSequence& phi, std::size_t nvars, std::span< const Dimension > dims,
                                   const Blocks& blocks, std::size_t limit)
{
    auto has = [&](Dimension d) { return std::find(dims.begin(), dims.end(), d) != dims.end(); };
    const Formulation given = given_formulation(phi, nvars);

    const std::vector< Ordering > orders = has(Dimension::order) ? block_orderings(nvars, blocks)
                                                                 : std::vector< Ordering >{given.order};
    std::vector< std::vector< std::optional< std::size_t > > > ec_options;
    for (const auto& clause : phi.clauses)
    {
        std::vector< std::optional< std::size_t > > options;
        if (has(Dimension::ec))
        {
            for (std::size_t j = 0; j < clause.constraints.size(); ++j)
            {
                if (clause.constraints[j].relop == Relop::eq)
                    options.push_back(j);
            }
        }
        if (options.empty())
            options.push_back(clause.ec);
        ec_options.push_back(std::move(options));
    }
    std::vector< std::vector< std::vector< std::size_t > > > splits;
    const std::size_t t = phi.clauses.size();
    if (has(Dimension::split) && t > 1)
    {
        // contiguous groupings; bit i set means a cut after clause i
        for (std::size_t mask = (std::size_t{1} << (t - 1)); mask-- > 0;)
        {
            std::vector< std::vector< std::size_t > > groups{{0}};
            for (std::size_t i = 1; i < t; ++i)
            {
                if (mask & (std::size_t{1} << (i - 1)))
                    groups.push_back({});
                groups.back().push_back(i);
            }
            splits.push_back(std::move(groups));
        }
    }
    else
    {
        splits.push_back(given.split);
    }

    Enumeration out;
    out.total = orders.size() * splits.size();
    for (const auto& o : ec_options)
        out.total *= o.size();

    std::vector< std::size_t > pick(ec_options.size(), 0);
    for (const auto& order : orders)
    {
        std::fill(pick.begin(), pick.end(), 0);
        for (;;)
        {
            for (const auto& split : splits)
            {
                if (out.candidates.size() == limit)
                {
                    out.truncated = true;
                    return out;
                }
                Formulation f;
                f.order = order;
                for (std::size_t i = 0; i < pick.size(); ++i)
                    f.ec.push_back(ec_options[i][pick[i]]);
                f.split = split;
                out.candidates.push_back(std::move(f));
            }
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == ec_options[i].size())
                pick[i++] = 0;
            if (i == pick.size())
                break;
        }
    }
    return out;
}

MeasureSpec MeasureSpec::parse(const std::string& text)
{
    MeasureSpec spec;
    auto measure = [](const std::string& name) {
        if (name == "sotd")
            return Measure::sotd;
        if (name == "ndrr")
            return Measure::ndrr;
        throw std::invalid_argument("unknown measure: " + name);
    };
    if (text.rfind("weighted:", 0) == 0)
    {
        spec.kind = Kind::weighted;
        spec.measures = {Measure::sotd, Measure::ndrr};
        std::stringstream in(text.substr(9));
        std::string item;
        while (std::getline(in, item, ','))
        {
            std::size_t used = 0;
            double w = 0;
            try
            {
                w = std::stod(item, &used);
            }
            catch (const std::exception&)
            {
                throw std::invalid_argument("bad weight: " + item);
            }
            if (used != item.size() || w < 0)
                throw std::invalid_argument("bad weight: " + item);
            spec.weights.push_back(w);
        }
        if (spec.weights.size() != 2 || spec.weights[0] + spec.weights[1] == 0)
            throw std::invalid_argument("weighted measure needs two non-negative weights, not both zero");
        return spec;
    }
    spec.measures.clear();
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        spec.measures.push_back(measure(item));
    if (spec.measures.empty())
        throw std::invalid_argument("no measure given");
    return spec;
}

Ranking rank_formulations(std::span< const Formulation > cands, const FormulaSequence& phi, std::size_t nvars,
                          const MeasureSpec& spec, unsigned threads)
{
    if (cands.empty())
        throw std::invalid_argument("no candidate formulations");
    Ranking out;
    out.rows.resize(cands.size());
    parallel_for(cands.size(), threads, [&](std::size_t i) {
        const ProjectionSet ps = formulation_projection(phi, nvars, cands[i]);
        out.rows[i].sotd = sotd(ps);
        out.rows[i].ndrr = ndrr(ps);
    });

    std::size_t max_sotd = 0;
    std::size_t max_ndrr = 0;
    for (const auto& row : out.rows)
    {
        max_sotd = std::max(max_sotd, row.sotd);
        max_ndrr = std::max(max_ndrr, row.ndrr);
    }
    const double ws = spec.weights.size() > 0 ? spec.weights[0] : 0;
    const double wn = spec.weights.size() > 1 ? spec.weights[1] : 0;
    for (auto& row : out.rows)
    {
        row.weighted = (max_sotd ? ws * static_cast< double >(row.sotd) / static_cast< double >(max_sotd) : 0) +
                       (max_ndrr ? wn * static_cast< double >(row.ndrr) / static_cast< double >(max_ndrr) : 0);
    }

    auto value = [&](const ScoreRow& row, Measure m) { return m == Measure::sotd ? row.sotd : row.ndrr; };
    auto better = [&](const ScoreRow& a, const ScoreRow& b) {
        if (spec.kind == MeasureSpec::Kind::weighted)
            return a.weighted < b.weighted;
        for (Measure m : spec.measures)
        {
            if (value(a, m) != value(b, m))
                return value(a, m) < value(b, m);
        }
        return false;
    };
    for (std::size_t i = 1; i < out.rows.size(); ++i)
    {
        if (better(out.rows[i], out.rows[out.best]))
            out.best = i;
    }
    return out;
}

} // namespace cadkit

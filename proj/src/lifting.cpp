#include "cadkit/cad.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace cadkit
{

std::string to_string(const CellIndex& index)
{
    std::string out = "(";
    for (std::size_t i = 0; i < index.size(); ++i)
    {
        if (i > 0)
            out += ",";
        out += std::to_string(index[i]);
    }
    return out + ")";
}

std::size_t Cell::dimension() const
{
    return static_cast< std::size_t >(std::count_if(index.begin(), index.end(), [](auto i) { return i % 2 == 1; }));
}

const Cell& CAD::base_of(std::size_t level, std::size_t pos) const
{
    if (level == 0)
        return root;
    return levels.at(level - 1).at(levels.at(level).at(pos).parent);
}

unsigned default_threads()
{
    if (const char* env = std::getenv("CADKIT_THREADS"))
    {
        const int n = std::atoi(env);
        if (n > 0)
            return static_cast< unsigned >(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function< void(std::size_t) >& f)
{
    if (threads == 0)
        threads = default_threads();
    threads = static_cast< unsigned >(std::min< std::size_t >(threads, n));
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic< std::size_t > next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                f(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mu);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    std::vector< std::thread > pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

bool nullified_on_cell(const Polynomial& p, const Cell& c)
{
    const std::size_t k = c.level();
    for (const auto& coef : p.coefficients(k))
    {
        if (!is_zero_at(coef, c.sample))
            return false;
    }
    return true;
}

std::vector< Cell > generate_stack(const Cell& c, std::span< const Polynomial > L, std::size_t parent_pos)
{
    const SamplePoint& s = c.sample;
    std::vector< RealAlgebraicPtr > roots;
    for (const auto& p : L)
    {
        const RootsAtPoint r = isolate_roots_at_point(p, s);
        if (r.nullified)
            throw std::logic_error("nullified in stack");
        for (const auto& root : r.roots)
        {
            auto it = std::lower_bound(roots.begin(), roots.end(), root, [&](const auto& a, const auto& b) {
                return compare(a, b, s) < 0;
            });
            if (it != roots.end() && compare(*it, root, s) == 0)
            {
                if (!(*it)->is_rational() && root->is_rational())
                    *it = root;
                continue;
            }
            roots.insert(it, root);
        }
    }

    const std::size_t k = c.level();
    std::vector< Cell > stack;
    stack.reserve(2 * roots.size() + 1);
    auto push = [&](RealAlgebraicPtr coord) {
        Cell cell;
        cell.index = c.index;
        cell.index.push_back(static_cast< std::uint32_t >(stack.size() + 1));
        cell.sample = s.extended(std::move(coord));
        cell.parent = parent_pos;
        stack.push_back(std::move(cell));
    };
    auto sector = [&](const RealAlgebraicPtr& below, const RealAlgebraicPtr& above) {
        push(std::make_shared< RealAlgebraic >(sector_sample(below, above, s), k));
    };
    for (std::size_t i = 0; i <= roots.size(); ++i)
    {
        sector(i == 0 ? nullptr : roots[i - 1], i == roots.size() ? nullptr : roots[i]);
        if (i < roots.size())
            push(roots[i]);
    }
    return stack;
}

CAD base_cad(std::span< const Polynomial > univ, std::size_t nvars)
{
    CAD cad;
    cad.nvars = nvars;
    std::vector< Polynomial > L;
    for (const auto& p : univ)
    {
        if (!p.is_constant())
            L.push_back(p);
    }
    cad.root.lifting = L;
    cad.levels.push_back(generate_stack(cad.root, L));
    return cad;
}

CadOutcome cad_from_projection(ProjectionSet projection, std::size_t dim, const CadOptions& options)
{
    CadOutcome out;
    out.cad.nvars = projection.nvars;
    const unsigned threads = options.threads == 0 ? default_threads() : options.threads;

    std::vector< Cell > root_level{out.cad.root};
    out.cad.levels.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k)
    {
        const std::vector< Polynomial >& L = projection.levels.at(k);
        std::vector< Cell >& bases = k == 0 ? root_level : out.cad.levels.back();

        std::vector< std::vector< Cell > > stacks(bases.size());
        std::vector< std::vector< Diagnostic > > notes(bases.size());
        std::vector< std::vector< Diagnostic > > fails(bases.size());
        parallel_for(bases.size(), threads, [&](std::size_t i) {
            Cell& base = bases[i];
            std::vector< Polynomial > used;
            for (const auto& p : L)
            {
                if (k == 0 || !nullified_on_cell(p, base))
                {
                    used.push_back(p);
                    continue;
                }
                const bool top = k + 1 == dim;
                if (base.dimension() == 0 || (top && !options.strict_top))
                {
                    notes[i].push_back({p, base.index, "nullified; omitted from the stack"});
                    continue;
                }
                fails[i].push_back({p, base.index, "nullified over a cell of positive dimension"});
            }
            if (!fails[i].empty() && !options.all_failures)
                return;
            base.lifting = used;
            stacks[i] = generate_stack(base, used, i);
        });
        if (k == 0)
            out.cad.root = root_level.front();

        for (std::size_t i = 0; i < bases.size(); ++i)
        {
            for (auto& n : notes[i])
                out.cad.warnings.push_back(std::move(n));
            for (auto& f : fails[i])
                out.failures.push_back(std::move(f));
        }
        if (!out.failures.empty())
        {
            out.ok = false;
            if (!options.all_failures)
            {
                out.failures.resize(1);
                break;
            }
        }
        std::vector< Cell > level;
        for (auto& st : stacks)
            for (auto& cell : st)
                level.push_back(std::move(cell));
        out.cad.levels.push_back(std::move(level));
    }
    out.projection = std::move(projection);
    return out;
}

CadOutcome cad_full(std::span< const Polynomial > polys, std::size_t nvars, const CadOptions& options, std::size_t dim)
{
    if (dim == 0)
        dim = nvars;
    return cad_from_projection(full_projection(polys, nvars), dim, options);
}

} // namespace cadkit

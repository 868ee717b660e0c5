#include "cadkit/projection.hpp"

#include <algorithm>
#include <optional>

namespace cadkit
{

std::string to_string(Provenance p)
{
    switch (p)
    {
    case Provenance::input:
        return "input";
    case Provenance::coefficient:
        return "coefficient";
    case Provenance::discriminant:
        return "discriminant";
    case Provenance::resultant:
        return "resultant";
    case Provenance::cross_resultant:
        return "cross-resultant";
    case Provenance::content:
        return "content";
    }
    return "input";
}

void insert_tagged(TaggedSet& set, const Polynomial& p, Provenance tag)
{
    if (p.is_constant())
        return;
    set.emplace(normalize(p), tag);
}

std::vector< Polynomial > keys(const TaggedSet& set)
{
    std::vector< Polynomial > out;
    out.reserve(set.size());
    for (const auto& [p, tag] : set)
        out.push_back(p);
    return out;
}

std::vector< Polynomial > ProjectionSet::all() const
{
    std::vector< Polynomial > out;
    for (const auto& level : levels)
        out.insert(out.end(), level.begin(), level.end());
    return out;
}

namespace
{
/// Conservative test that the polynomials have no common real zero: one is a
/// nonzero constant, or all are univariate in one variable with constant gcd.
bool no_common_zero(std::span< const Polynomial > polys)
{
    std::optional< std::size_t > var;
    std::optional< Polynomial > common;
    for (const auto& c : polys)
    {
        if (c.is_constant())
            return !c.is_zero();
    }
    for (const auto& c : polys)
    {
        const std::size_t mv = *c.main_variable();
        for (std::size_t j = 0; j < mv; ++j)
        {
            if (c.involves(j))
                return false;
        }
        if (var && *var != mv)
            return false;
        var = mv;
        common = common ? gcd(*common, c) : c;
    }
    return common && common->is_constant();
}
} // namespace

std::vector< Polynomial > necessary_coefficients(const Polynomial& p, std::size_t v)
{
    // a coefficient is needed only while the ones before it, together with
    // the next, may vanish at a common point
    std::vector< Polynomial > nonzero;
    for (const auto& c : p.coefficients(v))
    {
        if (!c.is_zero())
            nonzero.push_back(c);
    }
    std::vector< Polynomial > out;
    for (std::size_t i = 0; i < nonzero.size(); ++i)
    {
        out.push_back(nonzero[i]);
        if (nonzero[i].is_constant() || i + 1 == nonzero.size())
            break;
        std::vector< Polynomial > with_next = out;
        with_next.push_back(nonzero[i + 1]);
        if (no_common_zero(with_next))
            break;
    }
    return out;
}

std::vector< Polynomial > with_main_variable(std::span< const Polynomial > polys, std::size_t v)
{
    std::vector< Polynomial > out;
    for (const auto& p : polys)
    {
        if (auto mv = p.main_variable(); mv && *mv == v)
            out.push_back(p);
    }
    return out;
}

namespace
{
void add_coefficients_and_discriminant(TaggedSet& out, const Polynomial& b, std::size_t v)
{
    for (const auto& c : necessary_coefficients(b, v))
        insert_tagged(out, c, Provenance::coefficient);
    if (b.degree(v) >= 2)
        insert_tagged(out, discriminant(b, v), Provenance::discriminant);
}

bool member(std::span< const Polynomial > set, const Polynomial& p)
{
    return std::any_of(set.begin(), set.end(), [&](const Polynomial& q) { return same_up_to_constant(p, q); });
}
} // namespace

TaggedSet mccallum_P_tagged(std::span< const Polynomial > basis, std::size_t v)
{
    TaggedSet out;
    for (std::size_t i = 0; i < basis.size(); ++i)
    {
        add_coefficients_and_discriminant(out, basis[i], v);
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            insert_tagged(out, resultant(basis[i], basis[j], v), Provenance::resultant);
    }
    return out;
}

TaggedSet reduced_P_F_tagged(std::span< const Polynomial > F, std::span< const Polynomial > B, std::size_t v)
{
    TaggedSet out = mccallum_P_tagged(F, v);
    for (const auto& f : F)
    {
        for (const auto& g : B)
        {
            if (!member(F, g))
                insert_tagged(out, resultant(f, g, v), Provenance::resultant);
        }
    }
    return out;
}

TaggedSet tticad_P_tagged(const ECStructure& s, std::size_t v)
{
    TaggedSet out;
    const std::size_t t = s.A_list.size();
    std::vector< std::vector< Polynomial > > E(t);
    for (std::size_t i = 0; i < t; ++i)
    {
        E[i] = with_main_variable(s.E_list[i].polys, v);
        const auto A = with_main_variable(s.A_list[i].polys, v);
        for (auto& [p, tag] : reduced_P_F_tagged(E[i], A, v))
            out.emplace(p, tag);
    }
    for (std::size_t i = 0; i < t; ++i)
    {
        for (std::size_t j = i + 1; j < t; ++j)
        {
            for (const auto& f : E[i])
            {
                for (const auto& fh : E[j])
                {
                    if (!same_up_to_constant(f, fh))
                        insert_tagged(out, resultant(f, fh, v), Provenance::cross_resultant);
                }
            }
        }
    }
    return out;
}

std::vector< Polynomial > mccallum_P(const Basis& B, std::size_t v)
{
    return keys(mccallum_P_tagged(with_main_variable(B.polys, v), v));
}

std::vector< Polynomial > reduced_P_F(const Basis& F, const Basis& B, std::size_t v)
{
    return keys(reduced_P_F_tagged(with_main_variable(F.polys, v), with_main_variable(B.polys, v), v));
}

std::vector< Polynomial > tticad_P(const ECStructure& s, std::size_t v)
{
    return keys(tticad_P_tagged(s, v));
}

std::vector< Polynomial > excl_P(const Basis& A, const Basis& E, std::size_t v)
{
    const auto a = with_main_variable(A.polys, v);
    const auto e = with_main_variable(E.polys, v);
    std::vector< Polynomial > rest;
    for (const auto& p : a)
    {
        if (!member(e, p))
            rest.push_back(p);
    }
    const TaggedSet reduced = reduced_P_F_tagged(e, a, v);
    std::vector< Polynomial > out;
    for (const auto& [p, tag] : mccallum_P_tagged(rest, v))
    {
        if (!reduced.contains(p))
            out.push_back(p);
    }
    return out;
}

ProjectionSet full_projection(const TaggedSet& top, std::size_t nvars)
{
    ProjectionSet ps;
    ps.nvars = nvars;
    ps.levels.assign(nvars, {});
    std::vector< TaggedSet > pending(nvars);
    for (const auto& [p, tag] : top)
    {
        if (!p.is_constant())
            insert_tagged(pending[*p.main_variable()], p, tag);
    }
    for (std::size_t k = nvars; k-- > 0;)
    {
        const auto sources = keys(pending[k]);
        const Basis basis = squarefree_finest_basis(sources);
        for (const auto& c : basis.contents)
            insert_tagged(pending[*c.main_variable()], c, Provenance::content);
        ps.levels[k] = basis.polys;
        for (const auto& b : basis.polys)
        {
            Provenance tag = Provenance::input;
            for (const auto& [src, src_tag] : pending[k])
            {
                if (divide(src, b))
                {
                    tag = src_tag;
                    break;
                }
            }
            ps.provenance.emplace(b, tag);
        }
        if (k == 0)
            break;
        for (const auto& [p, tag] : mccallum_P_tagged(basis.polys, k))
            insert_tagged(pending[*p.main_variable()], p, tag);
    }
    return ps;
}

ProjectionSet full_projection(std::span< const Polynomial > top, std::size_t nvars)
{
    TaggedSet tagged;
    for (const auto& p : top)
        insert_tagged(tagged, p, Provenance::input);
    return full_projection(tagged, nvars);
}

} // namespace cadkit

#include "cadkit/polyalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cadkit
{
namespace
{
bool divides(const Exponents& small, const Exponents& big)
{
    for (std::size_t i = 0; i < small.size(); ++i)
    {
        if (small[i] > big[i])
            return false;
    }
    return true;
}

std::size_t highest_variable(const Polynomial& a, const Polynomial& b)
{
    auto va = a.main_variable();
    auto vb = b.main_variable();
    if (!va)
        return *vb;
    if (!vb)
        return *va;
    return std::max(*va, *vb);
}

Polynomial content_in(const Polynomial& p, std::size_t v)
{
    Polynomial g(p.nvars());
    for (const auto& c : p.coefficients(v))
    {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero())
            break;
    }
    return g;
}
} // namespace

std::optional< Polynomial > divide(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero())
        throw std::domain_error("division by zero polynomial");
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("polynomials range over different variable counts");
    if (b.is_constant())
        return a * (1 / b.constant_value());
    const auto& [lead_exp, lead_coef] = *b.terms().rbegin();
    Polynomial q(a.nvars());
    Polynomial r = a;
    Exponents t(a.nvars());
    while (!r.is_zero())
    {
        const auto& [re, rc] = *r.terms().rbegin();
        if (!divides(lead_exp, re))
            return std::nullopt;
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] = re[i] - lead_exp[i];
        Polynomial term = Polynomial::monomial(t, rc / lead_coef);
        r -= term * b;
        q += term;
    }
    return q;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b)
{
    auto q = divide(a, b);
    if (!q)
        throw std::domain_error("inexact polynomial division");
    return std::move(*q);
}

PseudoDivision pseudo_divide(const Polynomial& a, const Polynomial& b, std::size_t v)
{
    const int db = b.degree(v);
    if (db < 0)
        throw std::domain_error("pseudo-division by zero polynomial");
    PseudoDivision out{Polynomial(a.nvars()), a, 0};
    const Polynomial lc = b.leading_coefficient(v);
    const Polynomial rest = b - lc * Polynomial::variable(b.nvars(), v, static_cast< std::uint32_t >(db));
    int dr = out.remainder.degree(v);
    while (dr >= db && !out.remainder.is_zero())
    {
        const auto shift = static_cast< std::uint32_t >(dr - db);
        const Polynomial lr = out.remainder.leading_coefficient(v);
        const Polynomial xs = Polynomial::variable(a.nvars(), v, shift);
        // r <- lc * (r - lr v^dr) - lr * v^shift * rest
        Polynomial tail = out.remainder - lr * Polynomial::variable(a.nvars(), v, static_cast< std::uint32_t >(dr));
        out.remainder = lc * tail - lr * xs * rest;
        out.quotient = lc * out.quotient + lr * xs;
        ++out.multiplier_power;
        dr = out.remainder.degree(v);
    }
    return out;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t v)
{
    return pseudo_divide(a, b, v).remainder;
}

Polynomial normalize(const Polynomial& p)
{
    if (p.is_zero())
        return p;
    Integer den_lcm = 1;
    Integer num_gcd = 0;
    for (const auto& [e, c] : p.terms())
    {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (p.leading_rational() < 0)
        scale = -scale;
    return p * scale;
}

bool same_up_to_constant(const Polynomial& a, const Polynomial& b)
{
    return normalize(a) == normalize(b);
}

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero())
        return normalize(b);
    if (b.is_zero())
        return normalize(a);
    if (a.is_constant() || b.is_constant())
        return Polynomial(a.nvars(), Rational(1));
    const std::size_t v = highest_variable(a, b);
    if (!a.involves(v))
        return gcd(a, content_in(b, v));
    if (!b.involves(v))
        return gcd(content_in(a, v), b);

    const Polynomial ca = content_in(a, v);
    const Polynomial cb = content_in(b, v);
    Polynomial pa = normalize(divide_exact(a, ca));
    Polynomial pb = normalize(divide_exact(b, cb));
    const Polynomial c = gcd(ca, cb);
    if (pa.degree(v) < pb.degree(v))
        std::swap(pa, pb);
    while (!pb.is_zero())
    {
        Polynomial r = pseudo_remainder(pa, pb, v);
        pa = std::move(pb);
        if (r.is_zero())
            pb = Polynomial(a.nvars());
        else if (!r.involves(v))
            pb = Polynomial(a.nvars(), Rational(1));
        else
            pb = normalize(divide_exact(r, content_in(r, v)));
    }
    if (!pa.involves(v))
        return normalize(c);
    return normalize(c * pa);
}

ContentPrimitive content_primitive(const Polynomial& p, std::size_t v)
{
    if (p.is_zero())
        throw std::domain_error("zero polynomial");
    const Polynomial g = content_in(p, v);
    Polynomial prim = normalize(divide_exact(p, g));
    Polynomial content = divide_exact(p, prim);
    return {std::move(content), std::move(prim)};
}

Polynomial primitive_part(const Polynomial& p, std::size_t v)
{
    return content_primitive(p, v).primitive;
}

std::vector< std::pair< Polynomial, unsigned > > squarefree_factorization(const Polynomial& p)
{
    std::vector< std::pair< Polynomial, unsigned > > out;
    auto mv = p.main_variable();
    if (!mv)
        return out;
    const std::size_t v = *mv;
    const Polynomial dp = p.derivative(v);
    const Polynomial a0 = gcd(p, dp);
    Polynomial b = divide_exact(p, a0);
    Polynomial c = divide_exact(dp, a0);
    Polynomial d = c - b.derivative(v);
    unsigned i = 1;
    while (!b.is_constant())
    {
        Polynomial a = gcd(b, d);
        if (!a.is_constant())
            out.emplace_back(normalize(a), i);
        b = divide_exact(b, a);
        c = divide_exact(d, a);
        d = c - b.derivative(v);
        ++i;
    }
    return out;
}

bool Basis::contains(const Polynomial& p) const
{
    const Polynomial n = normalize(p);
    return std::find(polys.begin(), polys.end(), n) != polys.end();
}

Basis squarefree_finest_basis(std::span< const Polynomial > polys)
{
    Basis basis;
    std::vector< Polynomial > work;
    std::vector< Polynomial > contents;
    for (const auto& p : polys)
    {
        if (p.is_constant())
            continue;
        const std::size_t v = *p.main_variable();
        auto [content, prim] = content_primitive(p, v);
        if (!content.is_constant())
            contents.push_back(normalize(content));
        for (auto& [f, mult] : squarefree_factorization(prim))
            work.push_back(std::move(f));
    }

    // Pairwise gcd refinement until every pair is coprime.
    bool changed = true;
    while (changed)
    {
        changed = false;
        work = simplify_set(work);
        for (std::size_t i = 0; i < work.size() && !changed; ++i)
        {
            for (std::size_t j = i + 1; j < work.size() && !changed; ++j)
            {
                const Polynomial g = gcd(work[i], work[j]);
                if (g.is_constant())
                    continue;
                const Polynomial a = divide_exact(work[i], g);
                const Polynomial b = divide_exact(work[j], g);
                work.erase(work.begin() + static_cast< std::ptrdiff_t >(j));
                work.erase(work.begin() + static_cast< std::ptrdiff_t >(i));
                work.push_back(g);
                work.push_back(a);
                work.push_back(b);
                changed = true;
            }
        }
    }
    basis.polys = simplify_set(work);
    basis.contents = simplify_set(contents);
    return basis;
}

Polynomial determinant(std::vector< std::vector< Polynomial > > m, std::size_t nvars)
{
    const std::size_t n = m.size();
    if (n == 0)
        return Polynomial(nvars, Rational(1));
    int sgn = 1;
    Polynomial prev(nvars, Rational(1));
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (m[k][k].is_zero())
        {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero())
                ++r;
            if (r == n)
                return Polynomial(nvars);
            std::swap(m[k], m[r]);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
        {
            for (std::size_t j = k + 1; j < n; ++j)
            {
                Polynomial t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = divide_exact(t, prev);
            }
            m[i][k] = Polynomial(nvars);
        }
        prev = m[k][k];
    }
    Polynomial det = m[n - 1][n - 1];
    if (sgn < 0)
        det = -det;
    return det;
}

Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t v)
{
    const int m = p.degree(v);
    const int n = q.degree(v);
    if (m < 1 || n < 1)
        throw std::invalid_argument("not in main variable");
    const auto pc = p.coefficients(v);
    const auto qc = q.coefficients(v);
    const auto size = static_cast< std::size_t >(m + n);
    const std::size_t nv = p.nvars();
    std::vector< std::vector< Polynomial > > syl(size, std::vector< Polynomial >(size, Polynomial(nv)));
    for (std::size_t r = 0; r < static_cast< std::size_t >(n); ++r)
    {
        for (std::size_t j = 0; j < pc.size(); ++j)
            syl[r][r + j] = pc[j];
    }
    for (std::size_t r = 0; r < static_cast< std::size_t >(m); ++r)
    {
        for (std::size_t j = 0; j < qc.size(); ++j)
            syl[static_cast< std::size_t >(n) + r][r + j] = qc[j];
    }
    return determinant(std::move(syl), nv);
}

Polynomial discriminant(const Polynomial& p, std::size_t v)
{
    const int d = p.degree(v);
    if (d < 2)
        throw std::invalid_argument("degree too low");
    Polynomial r = resultant(p, p.derivative(v), v);
    Polynomial disc = divide_exact(r, p.leading_coefficient(v));
    if (((d * (d - 1)) / 2) % 2 != 0)
        disc = -disc;
    return disc;
}

std::vector< Polynomial > simplify_set(std::span< const Polynomial > polys)
{
    std::set< Polynomial > seen;
    for (const auto& p : polys)
    {
        if (p.is_constant())
            continue;
        seen.insert(normalize(p));
    }
    return {seen.begin(), seen.end()};
}

} // namespace cadkit

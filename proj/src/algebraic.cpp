#include "cadkit/algebraic.hpp"

#include "cadkit/polyalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cadkit
{

// Internal access to the mutable state of a RealAlgebraic.
class AlgebraicOps
{
public:
    static std::optional< int > cached(const RealAlgebraic& a, const Polynomial& g)
    {
        std::lock_guard lock(a.mu_);
        auto it = a.cache_.find(g);
        if (it == a.cache_.end())
            return std::nullopt;
        return it->second;
    }

    static void store(const RealAlgebraic& a, const Polynomial& g, int value)
    {
        std::lock_guard lock(a.mu_);
        auto [it, inserted] = a.cache_.try_emplace(g, value);
        if (!inserted && it->second == 2)
            it->second = value;
    }

    static void shrink(const RealAlgebraic& a, const Rational& lo, const Rational& hi)
    {
        std::lock_guard lock(a.mu_);
        if (a.exact_)
            return;
        if (lo > a.lo_)
            a.lo_ = lo;
        if (hi < a.hi_)
            a.hi_ = hi;
    }

    static void set_exact(const RealAlgebraic& a, const Rational& v)
    {
        std::lock_guard lock(a.mu_);
        a.exact_ = v;
        a.lo_ = v;
        a.hi_ = v;
    }
};

RealAlgebraic::RealAlgebraic(const Rational& value, std::size_t var)
    : var_(var), exact_(value), lo_(value), hi_(value)
{
}

RealAlgebraic::RealAlgebraic(Polynomial defpoly, std::size_t var, Rational lo, Rational hi, int sign_at_lo)
    : var_(var), defpoly_(std::move(defpoly)), sign_lo_(sign_at_lo), lo_(std::move(lo)), hi_(std::move(hi))
{
    if (!(lo_ < hi_))
        throw std::invalid_argument("isolating interval must be non-degenerate");
    if (sign_lo_ == 0)
        throw std::invalid_argument("isolating interval endpoint is a root");
}

bool RealAlgebraic::is_rational() const
{
    std::lock_guard lock(mu_);
    return exact_.has_value();
}

Rational RealAlgebraic::value() const
{
    std::lock_guard lock(mu_);
    if (!exact_)
        throw std::logic_error("real algebraic number is not rational");
    return *exact_;
}

Interval RealAlgebraic::interval() const
{
    std::lock_guard lock(mu_);
    return {lo_, hi_};
}

SamplePoint SamplePoint::rational(std::span< const Rational > values)
{
    std::vector< RealAlgebraicPtr > coords;
    for (std::size_t i = 0; i < values.size(); ++i)
        coords.push_back(std::make_shared< RealAlgebraic >(values[i], i));
    return SamplePoint(std::move(coords));
}

SamplePoint SamplePoint::prefix(std::size_t k) const
{
    if (k > coords_.size())
        throw std::out_of_range("prefix longer than sample point");
    return SamplePoint(std::vector< RealAlgebraicPtr >(coords_.begin(), coords_.begin() + static_cast< std::ptrdiff_t >(k)));
}

SamplePoint SamplePoint::extended(RealAlgebraicPtr c) const
{
    auto coords = coords_;
    while (coords.size() < c->variable())
        coords.push_back(nullptr);
    coords.push_back(std::move(c));
    return SamplePoint(std::move(coords));
}

bool SamplePoint::all_rational() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const auto& c) { return !c || c->is_rational(); });
}

std::vector< Interval > SamplePoint::box() const
{
    std::vector< Interval > out;
    out.reserve(coords_.size());
    for (const auto& c : coords_)
        out.push_back(c ? c->interval() : Interval::point(0));
    return out;
}

namespace
{
constexpr int kNonzero = 2;

const RealAlgebraic& coordinate(const SamplePoint& s, std::size_t k)
{
    if (k >= s.size() || !s[k])
        throw std::invalid_argument("polynomial involves a variable without a sample coordinate");
    return *s[k];
}

/// Substitutes every rational coordinate of s that g involves.
Polynomial substitute_rationals(const Polynomial& g, const SamplePoint& s)
{
    Polynomial h = g;
    for (std::size_t i = 0; i < s.size() && i < g.nvars(); ++i)
    {
        if (!h.involves(i))
            continue;
        const auto& c = coordinate(s, i);
        if (c.is_rational())
            h = h.substitute(i, c.value());
    }
    return h;
}

int sign_at_impl(const Polynomial& g, const SamplePoint& s);
bool zero_at_impl(const Polynomial& g, const SamplePoint& s);

/// Drops leading coefficients (in v) that vanish at the prefix.
Polynomial trim(const Polynomial& p, const SamplePoint& prefix, std::size_t v)
{
    if (p.is_zero())
        return p;
    const auto coeffs = p.coefficients(v);
    std::size_t i = 0;
    while (i < coeffs.size() && zero_at_impl(coeffs[i], prefix))
        ++i;
    if (i == 0)
        return p;
    if (i == coeffs.size())
        return Polynomial(p.nvars());
    return Polynomial::from_coefficients(p.nvars(), v, std::span(coeffs).subspan(i));
}

/// gcd in v of a(prefix, v) and b(prefix, v), up to a nonzero factor. The
/// result has a leading coefficient that does not vanish at the prefix.
Polynomial gcd_at(const Polynomial& a_in, const Polynomial& b_in, const SamplePoint& prefix, std::size_t v)
{
    Polynomial a = trim(a_in, prefix, v);
    Polynomial b = trim(b_in, prefix, v);
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.degree(v) < b.degree(v))
        std::swap(a, b);
    for (;;)
    {
        if (b.degree(v) == 0)
            return Polynomial(a.nvars(), Rational(1));
        Polynomial r = trim(pseudo_remainder(a, b, v), prefix, v);
        if (r.is_zero())
            return b;
        if (r.involves(v))
            r = primitive_part(r, v);
        else
            r = Polynomial(r.nvars(), Rational(1));
        a = std::move(b);
        b = std::move(r);
    }
}

bool zero_at_impl(const Polynomial& g, const SamplePoint& s)
{
    const Polynomial h = substitute_rationals(g, s);
    const auto mv = h.main_variable();
    if (!mv)
        return h.is_zero();
    const std::size_t k = *mv;
    const RealAlgebraic& c = coordinate(s, k);
    if (auto hit = AlgebraicOps::cached(c, h))
        return *hit == 0;
    if (c.is_rational())
        return zero_at_impl(h.substitute(k, c.value()), s);

    const SamplePoint prefix = s.prefix(k);
    const Polynomial common = gcd_at(c.defpoly(), h, prefix, k);
    bool zero = false;
    if (common.degree(k) >= 1)
    {
        const Interval iv = c.interval();
        if (c.is_rational())
            return zero_at_impl(h.substitute(k, c.value()), s);
        const int sl = sign_at_impl(common.substitute(k, iv.lo), prefix);
        const int sh = sign_at_impl(common.substitute(k, iv.hi), prefix);
        zero = sl != sh;
    }
    AlgebraicOps::store(c, h, zero ? 0 : kNonzero);
    return zero;
}

void refine_coordinate(const RealAlgebraic& c, const SamplePoint& prefix)
{
    if (c.is_rational())
        return;
    const Interval iv = c.interval();
    const Rational mid = (iv.lo + iv.hi) / 2;
    const int sm = sign_at_impl(c.defpoly().substitute(c.variable(), mid), prefix);
    if (sm == 0)
        AlgebraicOps::set_exact(c, mid);
    else if (sm == c.sign_at_lo())
        AlgebraicOps::shrink(c, mid, iv.hi);
    else
        AlgebraicOps::shrink(c, iv.lo, mid);
}

int sign_at_impl(const Polynomial& g, const SamplePoint& s)
{
    const Polynomial h = substitute_rationals(g, s);
    const auto mv = h.main_variable();
    if (!mv)
        return h.is_zero() ? 0 : sign(h.constant_value());
    const std::size_t k = *mv;
    const RealAlgebraic& c = coordinate(s, k);
    if (auto hit = AlgebraicOps::cached(c, h); hit && *hit != kNonzero)
        return *hit;
    if (zero_at_impl(h, s))
        return 0;
    for (;;)
    {
        std::vector< Interval > box = s.prefix(k + 1).box();
        const Interval iv = evaluate(h, box);
        if (iv.lo > 0 || iv.hi < 0)
        {
            const int result = iv.lo > 0 ? 1 : -1;
            AlgebraicOps::store(c, h, result);
            return result;
        }
        for (std::size_t i = 0; i <= k; ++i)
        {
            if (i < s.size() && s[i])
                refine_coordinate(*s[i], s.prefix(i));
        }
    }
}

/// Sturm sequence of h in v over Q(prefix), with exact sign tracking.
class SturmSequence
{
public:
    SturmSequence(const Polynomial& h, SamplePoint prefix, std::size_t v) : prefix_(std::move(prefix)), v_(v)
    {
        polys_.push_back(h);
        Polynomial d = h.derivative(v);
        if (d.is_zero())
            return;
        polys_.push_back(std::move(d));
        while (polys_.back().degree(v_) > 0)
        {
            const auto pd = pseudo_divide(polys_[polys_.size() - 2], polys_.back(), v_);
            Polynomial r = trim(pd.remainder, prefix_, v_);
            if (r.is_zero())
                break;
            const int lsign = sign_at_impl(polys_.back().leading_coefficient(v_), prefix_);
            const int factor = (pd.multiplier_power % 2 == 1) ? lsign : 1;
            r *= Rational(-factor);
            if (r.involves(v_))
            {
                auto cp = content_primitive(r, v_);
                const int cs = sign_at_impl(cp.content, prefix_);
                r = cp.primitive * Rational(cs);
            }
            else
            {
                r = Polynomial(r.nvars(), Rational(sign_at_impl(r, prefix_)));
            }
            polys_.push_back(std::move(r));
        }
        for (const auto& p : polys_)
            lead_signs_.push_back(sign_at_impl(p.leading_coefficient(v_), prefix_));
    }

    int variations(const Rational& t) const
    {
        int last = 0;
        int count = 0;
        for (const auto& p : polys_)
        {
            const int s = sign_at_impl(p.substitute(v_, t), prefix_);
            if (s == 0)
                continue;
            if (last != 0 && s != last)
                ++count;
            last = s;
        }
        return count;
    }

    int variations_at_infinity(bool positive) const
    {
        int last = 0;
        int count = 0;
        for (std::size_t i = 0; i < polys_.size(); ++i)
        {
            int s = lead_signs_.empty() ? 0 : lead_signs_[i];
            if (!positive && polys_[i].degree(v_) % 2 == 1)
                s = -s;
            if (s == 0)
                continue;
            if (last != 0 && s != last)
                ++count;
            last = s;
        }
        return count;
    }

    int total_roots() const { return variations_at_infinity(false) - variations_at_infinity(true); }

private:
    std::vector< Polynomial > polys_;
    std::vector< int > lead_signs_;
    SamplePoint prefix_;
    std::size_t v_;
};

class Isolator
{
public:
    Isolator(const Polynomial& h, const SamplePoint& prefix, std::size_t v)
        : h_(h), prefix_(prefix), v_(v), sturm_(h, prefix, v)
    {
    }

    std::vector< RealAlgebraicPtr > run()
    {
        const int total = sturm_.total_roots();
        if (total == 0)
            return {};
        Rational bound = 1;
        for (;;)
        {
            if (value_sign(bound) != 0 && value_sign(-bound) != 0 && count(-bound, bound) == total)
                break;
            bound *= 2;
        }
        split(-bound, bound, total);
        return std::move(out_);
    }

private:
    int value_sign(const Rational& t) { return sign_at_impl(h_.substitute(v_, t), prefix_); }

    int variations(const Rational& t)
    {
        auto it = var_cache_.find(t);
        if (it != var_cache_.end())
            return it->second;
        const int v = sturm_.variations(t);
        var_cache_.emplace(t, v);
        return v;
    }

    int count(const Rational& lo, const Rational& hi) { return variations(lo) - variations(hi); }

    void split(const Rational& lo, const Rational& hi, int n)
    {
        if (n == 0)
            return;
        if (n == 1)
        {
            out_.push_back(std::make_shared< RealAlgebraic >(h_, v_, lo, hi, value_sign(lo)));
            return;
        }
        const Rational mid = (lo + hi) / 2;
        if (value_sign(mid) != 0)
        {
            const int left = count(lo, mid);
            split(lo, mid, left);
            split(mid, hi, n - left);
            return;
        }
        Rational delta = (hi - lo) / 4;
        for (;;)
        {
            const Rational a = mid - delta;
            const Rational b = mid + delta;
            if (value_sign(a) != 0 && value_sign(b) != 0 && count(a, b) == 1)
            {
                const int left = count(lo, a);
                split(lo, a, left);
                out_.push_back(std::make_shared< RealAlgebraic >(mid, v_));
                split(b, hi, n - 1 - left);
                return;
            }
            delta /= 2;
        }
    }

    Polynomial h_;
    SamplePoint prefix_;
    std::size_t v_;
    SturmSequence sturm_;
    std::map< Rational, int > var_cache_;
    std::vector< RealAlgebraicPtr > out_;
};

Rational floor_of(const Rational& q)
{
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

Rational ceil_of(const Rational& q)
{
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(c);
}

/// Replaces an isolated root of an integer univariate polynomial by its exact
/// value when it is rational. Any rational root u/w has w | lc, so it is a
/// multiple of 1/lc and at most one such multiple lies in a narrow interval.
RealAlgebraicPtr detect_rational(const RealAlgebraicPtr& a)
{
    if (a->is_rational())
        return a;
    const Polynomial& p = a->defpoly();
    const std::size_t v = a->variable();
    const Integer lc = abs(normalize(p).leading_rational().get_num());
    const Rational width(1, lc);
    const SamplePoint empty;
    while (!a->is_rational() && a->interval().width() >= width)
        refine_coordinate(*a, empty);
    if (a->is_rational())
        return a;
    const Interval iv = a->interval();
    const Integer u = floor_of(iv.lo * Rational(lc)).get_num() + 1;
    Rational candidate(u, lc);
    candidate.canonicalize();
    if (candidate < iv.hi && p.substitute(v, candidate).is_zero())
        return std::make_shared< RealAlgebraic >(candidate, v);
    return a;
}

/// Simplest rational in the range with the given open/closed ends; L <= R.
Rational simplest_between(const Rational& lo, bool open_lo, const Rational& hi, bool open_hi)
{
    if (lo == hi)
    {
        if (open_lo || open_hi)
            throw std::logic_error("empty sample range");
        return lo;
    }
    const Rational mid = (lo + hi) / 2;
    for (Integer den = 1;; den *= 2)
    {
        // candidates k/den within the range, pick the one closest to mid
        Rational first = ceil_of(lo * den);
        if (open_lo && first == lo * den)
            first += 1;
        Rational last = floor_of(hi * den);
        if (open_hi && last == hi * den)
            last -= 1;
        if (first > last)
            continue;
        Rational target = floor_of(mid * den + Rational(1, 2));
        if (target < first)
            target = first;
        if (target > last)
            target = last;
        return target / den;
    }
}
} // namespace

int sign_at(const Polynomial& g, const SamplePoint& s)
{
    return sign_at_impl(g, s);
}

bool is_zero_at(const Polynomial& g, const SamplePoint& s)
{
    return zero_at_impl(g, s);
}

int sign_at(const Polynomial& g, const RealAlgebraicPtr& a)
{
    return sign_at_impl(g, SamplePoint().extended(a));
}

void refine(const SamplePoint& s, std::size_t k)
{
    refine_coordinate(coordinate(s, k), s.prefix(k));
}

void refine_to_width(const SamplePoint& s, std::size_t k, const Rational& width)
{
    const RealAlgebraic& c = coordinate(s, k);
    const SamplePoint prefix = s.prefix(k);
    while (!c.is_rational() && c.interval().width() >= width)
        refine_coordinate(c, prefix);
}

int compare(const RealAlgebraicPtr& a, const RealAlgebraicPtr& b, const SamplePoint& prefix)
{
    if (a->variable() != b->variable())
        throw std::invalid_argument("comparing coordinates of different variables");
    const std::size_t v = a->variable();
    bool equality_checked = false;
    for (;;)
    {
        const bool ra = a->is_rational();
        const bool rb = b->is_rational();
        if (ra && rb)
        {
            const int c = cmp(a->value(), b->value());
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        if (ra || rb)
        {
            const auto& q_num = ra ? a : b;
            const auto& alg = ra ? b : a;
            const Rational q = q_num->value();
            const Interval iv = alg->interval();
            int rel; // sign of (q - alg)
            if (alg->is_rational())
                continue;
            if (q <= iv.lo)
                rel = -1;
            else if (q >= iv.hi)
                rel = 1;
            else if (zero_at_impl(alg->defpoly().substitute(v, q), prefix))
                rel = 0;
            else
            {
                refine_coordinate(*alg, prefix);
                continue;
            }
            return ra ? rel : -rel;
        }
        const Interval ia = a->interval();
        const Interval ib = b->interval();
        if (ia.hi <= ib.lo)
            return -1;
        if (ib.hi <= ia.lo)
            return 1;
        if (!equality_checked)
        {
            equality_checked = true;
            const Polynomial common = gcd_at(a->defpoly(), b->defpoly(), prefix, v);
            if (common.degree(v) >= 1)
            {
                const Rational lo = std::max(ia.lo, ib.lo);
                const Rational hi = std::min(ia.hi, ib.hi);
                const int sl = sign_at_impl(common.substitute(v, lo), prefix);
                const int sh = sign_at_impl(common.substitute(v, hi), prefix);
                if (sl != sh)
                    return 0;
            }
        }
        refine_coordinate(*a, prefix);
        refine_coordinate(*b, prefix);
    }
}

int compare(const RealAlgebraicPtr& a, const RealAlgebraicPtr& b)
{
    return compare(a, b, SamplePoint());
}

std::vector< Polynomial > sturm_chain(const Polynomial& p)
{
    const auto mv = p.main_variable();
    if (!mv)
        throw std::invalid_argument("sturm chain of a constant polynomial");
    const std::size_t v = *mv;
    for (std::size_t i = 0; i < v; ++i)
    {
        if (p.involves(i))
            throw std::invalid_argument("sturm chain needs a univariate polynomial");
    }
    std::vector< Polynomial > chain{p, p.derivative(v)};
    while (chain.back().degree(v) > 0)
    {
        const auto& b = chain.back();
        const auto pd = pseudo_divide(chain[chain.size() - 2], b, v);
        if (pd.remainder.is_zero())
            break;
        Rational scale = 1;
        const Rational lc = b.leading_coefficient(v).constant_value();
        for (unsigned i = 0; i < pd.multiplier_power; ++i)
            scale *= lc;
        chain.push_back(pd.remainder * (Rational(-1) / scale));
    }
    return chain;
}

int count_real_roots(const Polynomial& p)
{
    if (p.is_zero())
        throw std::invalid_argument("identically zero");
    if (p.is_constant())
        return 0;
    const auto chain = sturm_chain(p);
    const std::size_t v = *p.main_variable();
    auto variations = [&](bool positive) {
        int last = 0;
        int count = 0;
        for (const auto& q : chain)
        {
            int s = sign(q.leading_coefficient(v).constant_value());
            if (!positive && q.degree(v) % 2 == 1)
                s = -s;
            if (last != 0 && s != last)
                ++count;
            last = s;
        }
        return count;
    };
    return variations(false) - variations(true);
}

std::vector< RealAlgebraicPtr > isolate_roots(const Polynomial& p)
{
    if (p.is_zero())
        throw std::invalid_argument("identically zero");
    const auto mv = p.main_variable();
    if (!mv)
        return {};
    const std::size_t v = *mv;
    for (std::size_t i = 0; i < v; ++i)
    {
        if (p.involves(i))
            throw std::invalid_argument("isolate_roots needs a univariate polynomial");
    }
    const Polynomial sqf = normalize(divide_exact(p, gcd(p, p.derivative(v))));
    auto roots = Isolator(sqf, SamplePoint(), v).run();
    for (auto& r : roots)
        r = detect_rational(r);
    return roots;
}

RootsAtPoint isolate_roots_at_point(const Polynomial& p, const SamplePoint& s)
{
    const std::size_t k = s.size();
    if (k >= p.nvars())
        throw std::invalid_argument("sample point covers every variable");
    if (auto mv = p.main_variable(); mv && *mv > k)
        throw std::invalid_argument("polynomial involves variables above the lifting variable");
    RootsAtPoint out;
    Polynomial h = substitute_rationals(p, s);
    const auto coeffs = h.coefficients(k);
    if (std::all_of(coeffs.begin(), coeffs.end(), [&](const Polynomial& c) { return zero_at_impl(c, s); }))
    {
        out.nullified = true;
        return out;
    }
    h = trim(h, s, k);
    if (h.degree(k) <= 0)
        return out;

    bool univariate = true;
    for (std::size_t i = 0; i < k; ++i)
        univariate = univariate && !h.involves(i);
    if (univariate)
    {
        out.roots = isolate_roots(h);
        return out;
    }

    const Polynomial common = gcd_at(h, h.derivative(k), s, k);
    if (common.degree(k) >= 1)
        h = trim(pseudo_divide(h, common, k).quotient, s, k);
    h = primitive_part(h, k);
    out.roots = Isolator(h, s, k).run();
    return out;
}

int ndrr(std::span< const Polynomial > polys)
{
    const Basis basis = squarefree_finest_basis(polys);
    int total = 0;
    for (const auto& b : basis.polys)
        total += count_real_roots(b);
    return total;
}

Rational sector_sample(const RealAlgebraicPtr& below, const RealAlgebraicPtr& above, const SamplePoint& prefix)
{
    if (!below && !above)
        return 0;
    if (!below)
    {
        if (above->is_rational())
            return ceil_of(above->value()) - 1;
        return floor_of(above->interval().lo);
    }
    if (!above)
    {
        if (below->is_rational())
            return floor_of(below->value()) + 1;
        return ceil_of(below->interval().hi);
    }
    for (;;)
    {
        const bool rb = below->is_rational();
        const bool ra = above->is_rational();
        const Rational lo = rb ? below->value() : below->interval().hi;
        const Rational hi = ra ? above->value() : above->interval().lo;
        if (lo < hi || (lo == hi && !rb && !ra))
            return simplest_between(lo, rb, hi, ra);
        refine_coordinate(*below, prefix);
        refine_coordinate(*above, prefix);
    }
}

double approximate(const SamplePoint& s, std::size_t k)
{
    refine_to_width(s, k, Rational(1, Integer("1000000000000")));
    const Interval iv = s[k]->interval();
    return Rational((iv.lo + iv.hi) / 2).get_d();
}

} // namespace cadkit

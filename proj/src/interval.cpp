#include "cadkit/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace cadkit
{

Interval operator+(const Interval& a, const Interval& b)
{
    return {a.lo + b.lo, a.hi + b.hi};
}

Interval operator*(const Interval& a, const Interval& b)
{
    const Rational p1 = a.lo * b.lo;
    const Rational p2 = a.lo * b.hi;
    const Rational p3 = a.hi * b.lo;
    const Rational p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

Interval operator*(const Rational& c, const Interval& a)
{
    if (c >= 0)
        return {c * a.lo, c * a.hi};
    return {c * a.hi, c * a.lo};
}

Interval pow(const Interval& a, unsigned e)
{
    if (e == 0)
        return Interval::point(1);
    auto rpow = [](const Rational& q, unsigned k) {
        Rational r;
        mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), k);
        mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), k);
        return r;
    };
    const Rational l = rpow(a.lo, e);
    const Rational h = rpow(a.hi, e);
    if (e % 2 == 1)
        return {l, h};
    if (a.lo >= 0)
        return {l, h};
    if (a.hi <= 0)
        return {h, l};
    return {Rational(0), std::max(l, h)};
}

Interval evaluate(const Polynomial& p, std::span< const Interval > box)
{
    Interval sum = Interval::point(0);
    for (const auto& [e, c] : p.terms())
    {
        Interval t = Interval::point(c);
        for (std::size_t i = 0; i < e.size(); ++i)
        {
            if (e[i] == 0)
                continue;
            if (i >= box.size())
                throw std::invalid_argument("interval box too short for polynomial");
            t = t * pow(box[i], e[i]);
        }
        sum = sum + t;
    }
    return sum;
}

} // namespace cadkit

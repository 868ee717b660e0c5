#ifndef CADKIT_INTERVAL_HPP
#define CADKIT_INTERVAL_HPP

#include "cadkit/polynomial.hpp"

#include <span>

namespace cadkit
{

/// Closed interval with exact rational endpoints.
struct Interval
{
    Rational lo;
    Rational hi;

    static Interval point(const Rational& q) { return {q, q}; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    Rational width() const { return hi - lo; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& c, const Interval& a);
Interval pow(const Interval& a, unsigned e);

/// Encloses p(box) by naive interval arithmetic over its terms.
Interval evaluate(const Polynomial& p, std::span< const Interval > box);

} // namespace cadkit

#endif // CADKIT_INTERVAL_HPP

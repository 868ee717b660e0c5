#ifndef CADKIT_POLYALG_HPP
#define CADKIT_POLYALG_HPP

#include "cadkit/polynomial.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cadkit
{

/// Exact quotient a / b, or empty when b does not divide a.
std::optional< Polynomial > divide(const Polynomial& a, const Polynomial& b);
/// Exact quotient; throws std::domain_error when the division leaves a remainder.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

struct PseudoDivision
{
    Polynomial quotient;
    Polynomial remainder;
    unsigned multiplier_power = 0; ///< lc_v(b)^power * a = quotient * b + remainder
};

PseudoDivision pseudo_divide(const Polynomial& a, const Polynomial& b, std::size_t v);
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t v);

/// Scales p to integer coefficients with trivial integer content and a
/// positive leading coefficient. The canonical representative of p up to a
/// nonzero rational multiple.
Polynomial normalize(const Polynomial& p);
bool same_up_to_constant(const Polynomial& a, const Polynomial& b);

/// Greatest common divisor, normalized. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

struct ContentPrimitive
{
    Polynomial content;
    Polynomial primitive;
};

/// content * primitive == p, content free of v, primitive normalized.
ContentPrimitive content_primitive(const Polynomial& p, std::size_t v);
Polynomial primitive_part(const Polynomial& p, std::size_t v);

/// Squarefree factors of a polynomial primitive in its main variable, with
/// multiplicities (Yun's algorithm). Constant factors are dropped.
std::vector< std::pair< Polynomial, unsigned > > squarefree_factorization(const Polynomial& p);

/// Pairwise coprime, squarefree polynomials, each primitive in its own main
/// variable, together with the nonconstant contents that were stripped.
struct Basis
{
    std::vector< Polynomial > polys;
    std::vector< Polynomial > contents;

    bool contains(const Polynomial& p) const;
};

Basis squarefree_finest_basis(std::span< const Polynomial > polys);

/// Determinant of the Sylvester matrix of p and q with respect to v.
Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t v);
/// (-1)^(d(d-1)/2) * resultant(p, dp/dv) / lc_v(p) with d = deg_v(p) >= 2.
Polynomial discriminant(const Polynomial& p, std::size_t v);

/// Determinant of a square matrix of polynomials by fraction-free elimination.
Polynomial determinant(std::vector< std::vector< Polynomial > > m, std::size_t nvars);

/// Removes constants, zeros and duplicates up to constant multiples; returns
/// normalized polynomials in canonical order.
std::vector< Polynomial > simplify_set(std::span< const Polynomial > polys);

} // namespace cadkit

#endif // CADKIT_POLYALG_HPP

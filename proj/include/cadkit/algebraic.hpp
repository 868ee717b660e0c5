#ifndef CADKIT_ALGEBRAIC_HPP
#define CADKIT_ALGEBRAIC_HPP

#include "cadkit/interval.hpp"
#include "cadkit/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace cadkit
{

class SamplePoint;

/// A real algebraic number used as one coordinate x_k of a sample point.
///
/// Either an exact rational, or a defining polynomial together with an open
/// isolating interval (lo, hi). The defining polynomial has main variable x_k
/// and may involve lower variables; it is then read at the prefix
/// (x_0, ..., x_{k-1}) of the sample point the number belongs to. At that
/// prefix it is squarefree, its leading coefficient does not vanish, it has
/// exactly one root in (lo, hi) and is nonzero at lo and hi. A number whose
/// defining polynomial involves only x_k is an ordinary real algebraic number.
///
/// Refinement shrinks the interval in place under a lock; every interval the
/// number has ever reported stays a valid enclosure.
class RealAlgebraic
{
public:
    RealAlgebraic(const Rational& value, std::size_t var);
    RealAlgebraic(Polynomial defpoly, std::size_t var, Rational lo, Rational hi, int sign_at_lo);

    bool is_rational() const;
    /// Exact value; only valid when is_rational().
    Rational value() const;
    std::size_t variable() const { return var_; }
    const Polynomial& defpoly() const { return defpoly_; }
    /// Current enclosure; degenerate for rationals.
    Interval interval() const;
    int sign_at_lo() const { return sign_lo_; }

private:
    friend class AlgebraicOps;

    std::size_t var_;
    Polynomial defpoly_;
    int sign_lo_ = 0;

    mutable std::mutex mu_;
    mutable std::optional< Rational > exact_;
    mutable Rational lo_;
    mutable Rational hi_;
    /// Memoized results at this number's own prefix: sign, or 2 for "nonzero".
    mutable std::map< Polynomial, int > cache_;
};

using RealAlgebraicPtr = std::shared_ptr< const RealAlgebraic >;

/// Ordered coordinates (x_0, ..., x_{k-1}); coordinate i was created over the
/// prefix of length i, so prefixes are shared between a cell and its stack.
class SamplePoint
{
public:
    SamplePoint() = default;
    explicit SamplePoint(std::vector< RealAlgebraicPtr > coords) : coords_(std::move(coords)) {}
    static SamplePoint rational(std::span< const Rational > values);

    std::size_t size() const { return coords_.size(); }
    const RealAlgebraicPtr& operator[](std::size_t i) const { return coords_.at(i); }
    const std::vector< RealAlgebraicPtr >& coords() const { return coords_; }
    SamplePoint prefix(std::size_t k) const;
    SamplePoint extended(RealAlgebraicPtr c) const;
    bool all_rational() const;
    std::vector< Interval > box() const;

private:
    std::vector< RealAlgebraicPtr > coords_;
};

/// Result of isolating roots of a polynomial over a sample point.
struct RootsAtPoint
{
    bool nullified = false;
    std::vector< RealAlgebraicPtr > roots;
};

/// Exact sign of g at the point s (g may only involve variables below s.size()).
int sign_at(const Polynomial& g, const SamplePoint& s);
bool is_zero_at(const Polynomial& g, const SamplePoint& s);
/// Sign of a univariate g at a single real algebraic number.
int sign_at(const Polynomial& g, const RealAlgebraicPtr& a);

/// Exact comparison of two coordinates that live over the same prefix s
/// (both are values of variable s.size()). Returns -1, 0 or +1.
int compare(const RealAlgebraicPtr& a, const RealAlgebraicPtr& b, const SamplePoint& prefix);
/// Comparison of two ordinary (univariate) real algebraic numbers.
int compare(const RealAlgebraicPtr& a, const RealAlgebraicPtr& b);

/// Halves the isolating interval of coordinate k of s (no-op for rationals).
void refine(const SamplePoint& s, std::size_t k);
/// Refines until the interval of coordinate k is narrower than `width`.
void refine_to_width(const SamplePoint& s, std::size_t k, const Rational& width);

/// Standard Sturm sequence p, p', -rem(p, p'), ... for a univariate p.
std::vector< Polynomial > sturm_chain(const Polynomial& p);
/// Distinct real roots of a univariate nonzero p on the whole line.
int count_real_roots(const Polynomial& p);

/// Distinct real roots of a univariate p, sorted, rational roots exact.
std::vector< RealAlgebraicPtr > isolate_roots(const Polynomial& p);

/// Real roots in x_k (k = s.size()) of p(s, x_k), or nullified when every
/// coefficient of p in x_k vanishes at s.
RootsAtPoint isolate_roots_at_point(const Polynomial& p, const SamplePoint& s);

/// Number of distinct real roots of a set of univariate polynomials.
int ndrr(std::span< const Polynomial > polys);

/// A rational strictly between a and b (a < b), preferring integers, then
/// dyadic rationals with the smallest denominator, closest to the midpoint.
/// Either bound may be absent (unbounded side).
Rational sector_sample(const RealAlgebraicPtr& below, const RealAlgebraicPtr& above, const SamplePoint& prefix);

/// Double approximation within about 1e-12 (for display only).
double approximate(const SamplePoint& s, std::size_t k);

} // namespace cadkit

#endif // CADKIT_ALGEBRAIC_HPP

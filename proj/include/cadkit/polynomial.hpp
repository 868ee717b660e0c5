#ifndef CADKIT_POLYNOMIAL_HPP
#define CADKIT_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cadkit
{
using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);
int sign(const Rational& q);

/// Variables listed in ascending order: index 0 is the lowest (projected last),
/// index size()-1 the highest (projected first).
class VarOrder
{
public:
    VarOrder() = default;
    explicit VarOrder(std::vector< std::string > names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector< std::string >& names() const { return names_; }
    std::optional< std::size_t > index_of(const std::string& name) const;

    /// Order whose i-th variable is this order's variable perm[i].
    VarOrder permuted(std::span< const std::size_t > perm) const;

    bool operator==(const VarOrder&) const = default;

private:
    std::vector< std::string > names_;
};

using Exponents = std::vector< std::uint32_t >;

/// Lexicographic comparison with the highest variable most significant.
struct ExponentsLess
{
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a canonical ordered map with no zero coefficients, so two
/// polynomials are equal iff their term maps are equal. Every polynomial knows
/// how many variables it ranges over; arithmetic requires matching counts.
class Polynomial
{
public:
    using TermMap = std::map< Exponents, Rational, ExponentsLess >;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
    Polynomial(std::size_t nvars, const Rational& c);

    static Polynomial variable(std::size_t nvars, std::size_t var, std::uint32_t power = 1);
    static Polynomial monomial(Exponents exps, const Rational& c);
    /// Builds sum coeffs[i] * v^(d-i), coefficients listed leading first.
    static Polynomial from_coefficients(std::size_t nvars, std::size_t v, std::span< const Polynomial > coeffs);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;

    /// Degree in variable v; -1 for the zero polynomial.
    int degree(std::size_t v) const;
    int total_degree() const;
    bool involves(std::size_t v) const { return degree(v) > 0; }
    /// Greatest variable present; empty for constants.
    std::optional< std::size_t > main_variable() const;
    /// Coefficient of the lexicographically greatest term.
    const Rational& leading_rational() const;

    Polynomial coefficient(std::size_t v, std::uint32_t k) const;
    Polynomial leading_coefficient(std::size_t v) const;
    /// Coefficients of v^d, v^(d-1), ..., v^0 (leading first), as polynomials free of v.
    std::vector< Polynomial > coefficients(std::size_t v) const;

    Polynomial derivative(std::size_t v) const;
    Polynomial substitute(std::size_t v, const Rational& value) const;
    Rational evaluate(std::span< const Rational > point) const;
    /// Variable i of this polynomial becomes variable new_index[i].
    Polynomial remap(std::span< const std::size_t > new_index, std::size_t new_nvars) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    /// Total order used for canonical containers (not a mathematical order).
    std::strong_ordering operator<=>(const Polynomial& o) const;

    std::string to_string(const VarOrder& order) const;
    std::string to_string() const;

private:
    void add_term(const Exponents& e, const Rational& c);

    std::size_t nvars_ = 0;
    TermMap terms_;
};

} // namespace cadkit

#endif // CADKIT_POLYNOMIAL_HPP

#ifndef CADKIT_PROJECTION_HPP
#define CADKIT_PROJECTION_HPP

#include "cadkit/polyalg.hpp"
#include "cadkit/polynomial.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace cadkit
{

enum class Provenance
{
    input,
    coefficient,
    discriminant,
    resultant,
    cross_resultant,
    content
};

std::string to_string(Provenance p);

/// Normalized polynomials with the tag of the operation that first produced
/// them. Keys are canonical, so duplicates up to constants collapse.
using TaggedSet = std::map< Polynomial, Provenance >;

/// Adds normalize(p) under `tag` unless p is constant or already present.
void insert_tagged(TaggedSet& set, const Polynomial& p, Provenance tag);
std::vector< Polynomial > keys(const TaggedSet& set);

/// Projection polynomials grouped by main variable: levels[k] holds the basis
/// of polynomials whose main variable is x_k (0-based).
struct ProjectionSet
{
    std::size_t nvars = 0;
    std::vector< std::vector< Polynomial > > levels;
    std::map< Polynomial, Provenance > provenance;

    std::vector< Polynomial > all() const;
};

/// Clause-wise sets for the truth-table operator: E_list[i] is a subset of A_list[i].
struct ECStructure
{
    std::vector< Basis > A_list;
    std::vector< Basis > E_list;
};

/// Coefficients of p in v, leading first, stopping after the first one that
/// is a nonzero constant. Zero coefficients are skipped.
std::vector< Polynomial > necessary_coefficients(const Polynomial& p, std::size_t v);

TaggedSet mccallum_P_tagged(std::span< const Polynomial > basis, std::size_t v);
TaggedSet reduced_P_F_tagged(std::span< const Polynomial > F, std::span< const Polynomial > B, std::size_t v);
TaggedSet tticad_P_tagged(const ECStructure& s, std::size_t v);

std::vector< Polynomial > mccallum_P(const Basis& B, std::size_t v);
std::vector< Polynomial > reduced_P_F(const Basis& F, const Basis& B, std::size_t v);
std::vector< Polynomial > tticad_P(const ECStructure& s, std::size_t v);
/// McCallum projection of A minus E, less everything the reduced operator keeps.
std::vector< Polynomial > excl_P(const Basis& A, const Basis& E, std::size_t v);

/// Repeated McCallum projection. Each level is replaced by its finest
/// squarefree basis; stripped contents move to their own main-variable level.
ProjectionSet full_projection(const TaggedSet& top, std::size_t nvars);
ProjectionSet full_projection(std::span< const Polynomial > top, std::size_t nvars);

/// Basis elements of B whose main variable is exactly v.
std::vector< Polynomial > with_main_variable(std::span< const Polynomial > polys, std::size_t v);

} // namespace cadkit

#endif // CADKIT_PROJECTION_HPP

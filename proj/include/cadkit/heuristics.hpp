#ifndef CADKIT_HEURISTICS_HPP
#define CADKIT_HEURISTICS_HPP

#include "cadkit/engine.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cadkit
{

/// Sum over polynomials and their monomials of the monomial's total degree.
std::size_t sotd(std::span< const Polynomial > polys);
std::size_t sotd(const ProjectionSet& ps);
/// Distinct real roots of the level-1 projection polynomials.
std::size_t ndrr(const ProjectionSet& ps);

/// Variable positions in ascending order, e.g. {1, 0} puts x_1 lowest.
using Ordering = std::vector< std::size_t >;
/// Ordered partition of the variables; the first block holds the lowest ones.
using Blocks = std::vector< std::vector< std::size_t > >;

/// Polynomial rewritten so that variable order[i] becomes x_i.
Polynomial reorder(const Polynomial& p, const Ordering& order);

/// Picks the highest remaining variable as the one whose one-step McCallum
/// projection has least sotd, then repeats on the projected set. Ties go to
/// the variable later in the input order, so a full tie keeps the input order.
Ordering greedy_order(std::span< const Polynomial > polys, std::size_t nvars, const Blocks& blocks = {});
/// Every ordering compatible with the blocks, in lexicographic order.
std::vector< Ordering > block_orderings(std::size_t nvars, const Blocks& blocks);
bool respects_blocks(const Ordering& order, const Blocks& blocks);

/// A problem formulation: variable order, designated equation per clause and
/// grouping of clauses into sub-formulae (contiguous groups).
struct Formulation
{
    Ordering order;
    std::vector< std::optional< std::size_t > > ec;
    std::vector< std::vector< std::size_t > > split;
};

/// The formulation the problem states as given.
Formulation given_formulation(const FormulaSequence& phi, std::size_t nvars);
/// Clauses rewritten in the formulation's order with its EC designations.
FormulaSequence apply(const FormulaSequence& phi, const Formulation& f);
/// Projection set of a formulation under the operator it calls for: full
/// McCallum when no group has an equational constraint, the reduced operator
/// otherwise. A group has an equational part only when every member clause
/// designates one that involves the highest variable.
ProjectionSet formulation_projection(const FormulaSequence& phi, std::size_t nvars, const Formulation& f);

enum class Dimension
{
    order,
    ec,
    split
};

struct Enumeration
{
    std::vector< Formulation > candidates;
    std::size_t total = 0; ///< before truncation
    bool truncated = false;
};

Enumeration enumerate_formulations(const FormulaSequence& phi, std::size_t nvars, std::span< const Dimension > dims,
                                   const Blocks& blocks = {}, std::size_t limit = 1000);

enum class Measure
{
    sotd,
    ndrr
};

struct MeasureSpec
{
    enum class Kind
    {
        lexicographic,
        weighted
    };
    Kind kind = Kind::lexicographic;
    std::vector< Measure > measures{Measure::sotd};
    /// Weights for sotd and ndrr when kind is weighted.
    std::vector< double > weights;

    /// "sotd", "ndrr", "sotd,ndrr" or "weighted:w1,w2"; throws std::invalid_argument.
    static MeasureSpec parse(const std::string& text);
};

struct ScoreRow
{
    std::size_t sotd = 0;
    std::size_t ndrr = 0;
    /// Weighted score (each measure divided by its maximum over the candidates).
    double weighted = 0;
};

struct Ranking
{
    std::size_t best = 0;
    std::vector< ScoreRow > rows;
};

/// Scores every candidate and returns the minimizer; ties keep the earlier candidate.
Ranking rank_formulations(std::span< const Formulation > cands, const FormulaSequence& phi, std::size_t nvars,
                          const MeasureSpec& spec, unsigned threads = 0);

} // namespace cadkit

#endif // CADKIT_HEURISTICS_HPP

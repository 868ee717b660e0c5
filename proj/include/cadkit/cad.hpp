#ifndef CADKIT_CAD_HPP
#define CADKIT_CAD_HPP

#include "cadkit/algebraic.hpp"
#include "cadkit/projection.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cadkit
{

using CellIndex = std::vector< std::uint32_t >;

std::string to_string(const CellIndex& index);

/// A polynomial tied to a cell: a nullification warning or a failure.
struct Diagnostic
{
    Polynomial poly;
    CellIndex cell;
    std::string reason;
};

/// A cylindrical cell. Odd index entries are sectors, even ones sections.
struct Cell
{
    CellIndex index;
    SamplePoint sample;
    /// Position of the base cell in the level below.
    std::size_t parent = 0;
    /// Polynomials whose roots delineate the stack built over this cell.
    std::vector< Polynomial > lifting;

    std::size_t level() const { return index.size(); }
    std::size_t dimension() const;
    bool is_section(std::size_t k) const { return index.at(k) % 2 == 0; }
};

/// All levels of a CAD: levels[k] are the cells of R^(k+1), in index order.
struct CAD
{
    std::size_t nvars = 0;
    Cell root;
    std::vector< std::vector< Cell > > levels;
    std::vector< Diagnostic > warnings;

    /// Cells of the highest level built.
    const std::vector< Cell >& cells() const { return levels.back(); }
    std::size_t cell_count() const { return levels.empty() ? 1 : levels.back().size(); }
    const Cell& base_of(std::size_t level, std::size_t pos) const;
};


struct CadOptions
{
    /// FAIL on nullification over a positive-dimensional cell at the top level
    /// too (order invariance is required there). Lower levels always FAIL.
    bool strict_top = false;
    /// Keep lifting after a failure to collect every offending pair.
    bool all_failures = false;
    unsigned threads = 0; ///< 0 = default_threads()
};

struct CadOutcome
{
    bool ok = true;
    CAD cad;
    ProjectionSet projection;
    std::vector< Diagnostic > failures;
};

/// Worker count from CADKIT_THREADS, else the hardware concurrency.
unsigned default_threads();

/// True when every coefficient of p in x_k (k = c.level()) vanishes at c's sample.
bool nullified_on_cell(const Polynomial& p, const Cell& c);

/// Sections and sectors over c for the real roots of L in x_k, k = c.level().
/// Throws std::logic_error("nullified in stack") if some p in L is nullified.
std::vector< Cell > generate_stack(const Cell& c, std::span< const Polynomial > L, std::size_t parent_pos = 0);

/// CAD of R for univariate polynomials (nvars may exceed 1 if only x_0 occurs).
CAD base_cad(std::span< const Polynomial > univ, std::size_t nvars = 1);

/// Lifts through levels 0..dim-1 of a projection set.
CadOutcome cad_from_projection(ProjectionSet projection, std::size_t dim, const CadOptions& options = {});

/// Sign-invariant CAD of R^dim for polys (all main variables below dim);
/// dim defaults to nvars.
CadOutcome cad_full(std::span< const Polynomial > polys, std::size_t nvars, const CadOptions& options = {},
                    std::size_t dim = 0);

/// Runs f(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function< void(std::size_t) >& f);

} // namespace cadkit

#endif // CADKIT_CAD_HPP

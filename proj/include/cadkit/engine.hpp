#ifndef CADKIT_ENGINE_HPP
#define CADKIT_ENGINE_HPP

#include "cadkit/cad.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cadkit
{

enum class Relop
{
    eq,
    ne,
    lt,
    le,
    gt,
    ge
};

std::optional< Relop > parse_relop(const std::string& text);
std::string to_string(Relop r);
bool holds(Relop r, int sign);

struct Constraint
{
    Polynomial poly;
    Relop relop = Relop::eq;
    std::string name;
};

/// A conjunction of constraints with an optional designated equational constraint.
struct Clause
{
    std::vector< Constraint > constraints;
    std::optional< std::size_t > ec;

    /// Throws std::invalid_argument when the invariants do not hold.
    void validate() const;
};

/// Clauses, read disjunctively when they come from one split formula.
struct FormulaSequence
{
    std::vector< Clause > clauses;
};

/// How the lifting set over one base cell was chosen when an equational
/// constraint was nullified there.
struct LiftingRecord
{
    enum class Branch
    {
        point,   ///< zero-dimensional cell: lift with the whole basis
        rescued, ///< positive dimension, every excluded polynomial is a nonzero constant
        failed
    };
    CellIndex cell;
    Branch branch = Branch::point;
    std::vector< Polynomial > excluded;
};

/// A polynomial whose sign the result guarantees to be invariant, possibly
/// only on cells where `condition` vanishes.
struct Relevant
{
    Polynomial poly;
    std::optional< Polynomial > condition;
};

struct CADResult
{
    bool ok = true;
    std::string algorithm;
    CAD cad;
    ProjectionSet projection;
    std::vector< Diagnostic > failures;
    std::vector< LiftingRecord > lifting_records;

    /// Polynomials with reported signs, and their display names.
    std::vector< Polynomial > polys;
    std::vector< std::string > names;
    FormulaSequence formula;
    std::vector< Relevant > relevant;

    /// Per top-level cell: sign of each reported polynomial, truth of each clause.
    std::vector< std::vector< int > > signs;
    std::vector< std::vector< bool > > truth;

    /// Number of cells of the induced CAD of R^k, k = 1..n.
    std::vector< std::size_t > induced_counts() const;
    /// Disjunction of the clause truth values of a cell.
    bool disjunction(std::size_t cell) const;
};

struct EngineOptions
{
    unsigned threads = 0; ///< 0 = default_threads()
    bool all_failures = false;
};

struct LiftingSetResult
{
    bool ok = true;
    std::vector< Polynomial > polys;
    std::optional< LiftingRecord > record;
    std::optional< Diagnostic > failure;
};

/// Polynomials for lifting over c: E unless some element of E is nullified
/// there, in which case A (if c is a point or the excluded projection
/// polynomials are nonzero constants on c), or FAIL.
LiftingSetResult lifting_set(const Cell& c, std::span< const Polynomial > A, std::span< const Polynomial > E,
                             const ProjectionSet& projection);

/// True when every variable q involves is constant on c and q does not vanish there.
/// A coordinate counts as constant on c when c is a section there and either a
/// projection polynomial in that variable alone vanishes at the sample or all
/// lower coordinates are constant.
bool nonzero_constant_on_cell(const Polynomial& q, const Cell& c, const ProjectionSet& projection);

/// Sign-invariant CAD for the given polynomials.
CADResult cad_full_result(std::span< const Polynomial > polys, std::size_t nvars, const EngineOptions& options = {});
/// CAD sign-invariant for f and, on cells where f = 0, for G.
CADResult eccad(const Polynomial& f, std::span< const Polynomial > G, std::size_t nvars,
                const EngineOptions& options = {});

/// Product of the designated equational constraints of every clause.
/// Throws std::invalid_argument("no implicit EC exists") otherwise.
Polynomial implicit_ec(const FormulaSequence& phi);

/// Formula-level entry points: they also record signs and clause truth values.
CADResult cad_full(const FormulaSequence& phi, std::size_t nvars, const EngineOptions& options = {});
CADResult eccad(const FormulaSequence& phi, std::size_t nvars, const EngineOptions& options = {});
CADResult tticad(const FormulaSequence& phi, std::size_t nvars, const EngineOptions& options = {});

/// Full projection set for clauses with polynomial sets A_i and equational
/// parts E_i (E_i = A_i for clauses without an equational constraint); the
/// top level holds the clause bases.
ProjectionSet ec_projection(std::span< const std::vector< Polynomial > > A,
                            std::span< const std::vector< Polynomial > > E, std::size_t nvars);
/// ec_projection for the clauses of a formula, as tticad uses it.
ProjectionSet formula_projection(const FormulaSequence& phi, std::size_t nvars);

bool evaluate_truth(const Cell& c, const Clause& clause);
/// Fills polys, names, signs and truth from the formula.
void attach_formula(CADResult& r, const FormulaSequence& phi);
/// Recomputes signs and truth of every top-level cell at its stored sample.
void evaluate_cells(CADResult& r);

struct Violation
{
    CellIndex cell;
    std::string what;
};

struct VerifyReport
{
    std::size_t cells_checked = 0;
    std::size_t points_checked = 0;
    std::vector< Violation > violations;
};

/// Resamples every full-dimensional cell at rational points and checks that
/// relevant signs and clause truth values match the stored ones. Every cell's
/// stored data is also checked against its own sample.
VerifyReport verify_invariance(const CADResult& r, unsigned samples_per_cell, std::uint64_t seed = 1,
                               unsigned threads = 0);

} // namespace cadkit

#endif // CADKIT_ENGINE_HPP

#ifndef CADKIT_IO_HPP
#define CADKIT_IO_HPP

#include "cadkit/heuristics.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cadkit
{

/// Problem file contents.
///
/// {"variables": ["x", "y"],
///  "polynomials": [{"name": "f", "poly": "x^2 + y^2 - 4"}, ...],
///  "formula": [{"constraints": ["f = 0", "g < 0"], "ec": "f"}, ...],
///  "task": "ec",
///  "options": {"seed": 1, "samples": 5, "measure": "sotd", "blocks": "x;y"}}
///
/// Variables are listed lowest first. The formula is a list of clauses read
/// disjunctively; it may be omitted for tasks that only need polynomials.
struct Problem
{
    VarOrder variables;
    std::vector< std::string > names;
    std::vector< Polynomial > polys;
    std::optional< FormulaSequence > formula;
    std::string task;
    nlohmann::json options = nlohmann::json::object();

    std::size_t nvars() const { return variables.size(); }
};

/// Throws std::invalid_argument on malformed input.
Problem parse_problem(const nlohmann::json& doc);
Problem load_problem(const std::string& path);

/// The same problem with variables rearranged, order[i] becoming the i-th lowest.
Problem reordered(const Problem& p, const Ordering& order);
/// Blocks such as "x;y,z" (lowest block first) as variable positions.
Blocks parse_blocks(const std::string& text, const VarOrder& vars);

nlohmann::json to_json(const RealAlgebraicPtr& a, const VarOrder& vars);
nlohmann::json to_json(const Diagnostic& d, const VarOrder& vars);
nlohmann::json projection_document(const ProjectionSet& ps, const VarOrder& vars);
nlohmann::json result_document(const CADResult& r, const VarOrder& vars);
nlohmann::json verify_document(const VerifyReport& report);

struct Viewport
{
    double xmin = -1;
    double xmax = 1;
    double ymin = -1;
    double ymax = 1;
};

/// Curves of the result's polynomials and one marker per cell sample.
/// Throws std::invalid_argument unless the CAD is of R^2.
std::string plot_svg(const CADResult& r, const VarOrder& vars, const std::optional< Viewport >& view = std::nullopt);

} // namespace cadkit

#endif // CADKIT_IO_HPP

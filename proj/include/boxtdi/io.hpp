#pragma once

/**
 * Text and JSON formats for matrices, polyhedra, graphs and clutters.
 *
 * Text formats are whitespace separated, '#' starts a comment, and numbers
 * are written "p" or "p/q".
 *
 *   matrix     rows cols, then the entries row by row
 *   H-file     a matrix followed by its right-hand side
 *   V-file     "V n", then "vertices k", "rays k", "lineality k" blocks
 *   graph      vertex count, then one "u v" pair per edge
 *   clutter    ground set size on the first line, then one member per line
 *
 * JSON mirrors carry "schema": 1 and a "kind" field.
 */

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "boxtdi/instances.hpp"
#include "boxtdi/polyhedra.hpp"

namespace boxtdi {

class ParseError : public std::runtime_error {
public:
    /// line and column are 1-based; 0 means the position is unknown.
    ParseError(const std::string& what, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

std::string rational_string(const Rational& q);

// Parsing.  Each function accepts the text format or its JSON mirror.
RatMatrix parse_matrix(const std::string& text);
HPolyhedron parse_h_polyhedron(const std::string& text);
VPolyhedron parse_v_polyhedron(const std::string& text);
Graph parse_graph(const std::string& text);
Clutter parse_clutter(const std::string& text);

/// An H-file or a V-file (converted to inequalities).
HPolyhedron parse_polyhedron(const std::string& text);

bool looks_like_json(const std::string& text);
bool looks_like_v_file(const std::string& text);

// Writing.
std::string format_matrix(const RatMatrix& m);
std::string format_h_polyhedron(const HPolyhedron& p);
std::string format_v_polyhedron(const VPolyhedron& v);
std::string format_graph(const Graph& g);
std::string format_clutter(const Clutter& c);

nlohmann::json matrix_json(const RatMatrix& m);
nlohmann::json vector_json(const RatVector& v);
nlohmann::json h_polyhedron_json(const HPolyhedron& p);
nlohmann::json v_polyhedron_json(const VPolyhedron& v);
nlohmann::json graph_json(const Graph& g);
nlohmann::json clutter_json(const Clutter& c);

}  // namespace boxtdi

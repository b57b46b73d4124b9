#pragma once

/**
 * Clutters, graphs and the polyhedra built from them: covering polyhedra,
 * stable set polytopes, circuit cones and cones of conservative functions.
 * Everything here is exhaustive and meant for small inputs.
 */

#include <string>
#include <utility>
#include <vector>

#include "boxtdi/polyhedra.hpp"

namespace boxtdi {

// ---------------------------------------------------------------------------
// Clutters
// ---------------------------------------------------------------------------

struct Clutter {
    Index ground = 0;
    std::vector<IndexSet> members;  ///< sorted sets, sorted lexicographically
};

/// Normalizes members and rejects out-of-range elements or nested members.
Clutter make_clutter(Index ground, std::vector<IndexSet> members);

/// Rows are member incidence vectors.
RatMatrix incidence_matrix(const Clutter& c);

/// {x : A x >= 1, x >= 0} written as -A x <= -1, -x <= 0.
HPolyhedron covering_polyhedron(const Clutter& c);

/// Triangles of K4 on its 6 edges.
Clutter q6();
/// Triangles and perfect matchings of K4, each with an extra element 6.
Clutter q7();

/// Members avoiding e; e leaves the ground set and later elements shift down.
Clutter delete_element(const Clutter& c, Index e);
/// Members with e removed, keeping the inclusionwise minimal ones.
Clutter contract_element(const Clutter& c, Index e);

/// Is @p target isomorphic to a minor of @p c?  Ground sets up to 8 elements.
bool has_minor(const Clutter& c, const Clutter& target);

/// The symmetric difference of any three members contains a member.
bool is_binary(const Clutter& c);

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

using Edge = std::pair<Index, Index>;

struct Graph {
    Index vertices = 0;
    std::vector<Edge> edges;  ///< (u, v) with u < v
};

/// Normalizes edge orientation; rejects loops, repeated edges, bad vertices.
Graph make_graph(Index vertices, std::vector<Edge> edges);

Graph complete_graph(Index n);
std::vector<IndexSet> neighbours(const Graph& g);
bool is_connected(const Graph& g);

/// Drops vertex v; later vertices shift down by one.
Graph remove_vertex(const Graph& g, Index v);
Graph remove_edge(const Graph& g, Index edge);

/// All maximal cliques, each sorted, in lexicographic order.
std::vector<IndexSet> maximal_cliques(const Graph& g);

/**
 * Clique inequalities x(K) <= 1 followed by x >= 0.  Describes the stable set
 * polytope only for perfect graphs; that is left to the caller.
 */
HPolyhedron stable_set_polytope(const Graph& g);
HPolyhedron stable_set_polytope(const Graph& g, const std::vector<IndexSet>& cliques);

/**
 * Replaces v by new vertices x ~ X, y ~ Y and z ~ {x, y}, appended in that
 * order after removing v.  Requires X u Y = N(v) and no edge between X \ Y
 * and Y \ X.
 */
Graph unfold_vertex(const Graph& g, Index v, const IndexSet& x, const IndexSet& y);

/// Circuits as sets of edge indices, ordered by (size, set).
std::vector<IndexSet> circuits(const Graph& g);
/// Bonds (inclusionwise minimal nonempty cuts), ordered by (size, set).
std::vector<IndexSet> bonds(const Graph& g);

struct CircuitCone {
    VPolyhedron generators;  ///< circuit incidence vectors as rays
    HPolyhedron inequalities;  ///< x >= 0 and x_e <= x(D \ e) for bonds D
};

CircuitCone circuit_cone(const Graph& g);

/// {x : x(C) >= 0 for every circuit C}, one row per circuit then nothing else.
HPolyhedron conservative_cone(const Graph& g);

/// No K4 minor, decided by series and parallel reductions.
bool is_series_parallel(const Graph& g);

// ---------------------------------------------------------------------------
// Named instances
// ---------------------------------------------------------------------------

/// Vertices a, b, c, d, e, v are 0..5.
Graph s3();
/// s3 with v unfolded using X = {b, c, e}, Y = {b, c, d}; x, y, z are 5, 6, 7.
Graph s3_unfolded();
/// The variant with X = {c, e}.
Graph s3_unfolded_variant();

/// conv(0, 11000, 10100, 10010, 11111)
HPolyhedron p5();
/// conv((2,-1), (-2,-1), (0,1))
HPolyhedron wide_triangle();
/// conv((1,1), (-1,1), (0,-1)), the polar of wide_triangle
HPolyhedron narrow_triangle();
/// conv(000, 110, 101, 011) with its 4 x 3 description
HPolyhedron idp_simplex();

HPolyhedron from_vertices(const std::vector<RatVector>& vertices);

struct NamedInstance {
    std::string name;
    std::string description;
};

/// Names accepted by named_polyhedron.
std::vector<NamedInstance> named_instances();

/// Throws std::invalid_argument for an unknown name.
HPolyhedron named_polyhedron(const std::string& name);

}  // namespace boxtdi

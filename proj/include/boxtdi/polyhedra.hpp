#pragma once

/**
 * Exact polyhedra in inequality form {x : Ax <= b} and generator form
 * conv(vertices) + cone(rays) + span(lineality), with conversion by the
 * double description method and face enumeration by tight sets.
 */

#include <optional>
#include <vector>

#include "boxtdi/exactalg.hpp"

namespace boxtdi {

struct HPolyhedron {
    RatMatrix a;
    RatVector b;

    HPolyhedron() = default;
    HPolyhedron(RatMatrix a_, RatVector b_);

    Index ambient_dim() const { return a.cols(); }
    Index num_rows() const { return a.rows(); }
    bool is_cone() const;  ///< b = 0
};

struct VPolyhedron {
    Index ambient = 0;
    std::vector<RatVector> vertices;
    std::vector<RatVector> rays;
    std::vector<RatVector> lineality;

    bool empty() const { return vertices.empty(); }
    bool bounded() const { return rays.empty() && lineality.empty(); }
};

/// A nonempty face, identified by its maximal set of tight rows.
struct Face {
    IndexSet tight_rows;
    Index dim = 0;
    RatMatrix fdm;        ///< lexicographically first row basis of the tight rows
    RatVector fdm_rhs;
    IndexSet fdm_rows;    ///< which rows of A make up fdm
    std::vector<RatVector> vertices;  ///< generators of P lying in the face
    std::vector<RatVector> rays;
};

/// Unit vector / bound helpers.  An absent bound means infinite.
using Bound = std::optional<Integer>;

bool lex_less(const RatVector& x, const RatVector& y);

// ---------------------------------------------------------------------------
// Representation conversion
// ---------------------------------------------------------------------------

/**
 * Vertices, extreme rays and a lineality basis of P.  Output is canonical:
 * the lineality basis is in reduced echelon form, vertices and rays are
 * reduced modulo lineality, rays are primitive integer vectors, and each list
 * is sorted lexicographically.  An empty polyhedron yields empty lists.
 */
VPolyhedron h_to_v(const HPolyhedron& p);

/**
 * An inequality description of conv(vertices) + cone(rays) + span(lineality).
 * Equalities are emitted as pairs of opposite rows.  An empty generator set
 * yields the infeasible system 0 x <= -1.
 */
HPolyhedron v_to_h(const VPolyhedron& q);

/// Sorts and deduplicates generators; minimality via a round trip.
VPolyhedron canonicalize(const VPolyhedron& q);

bool contains(const HPolyhedron& p, const RatVector& x);
bool is_empty(const HPolyhedron& p);
bool is_bounded(const HPolyhedron& p);

/// Point-set equality via mutual containment of generators.
bool same_point_set(const HPolyhedron& p, const HPolyhedron& q);

// ---------------------------------------------------------------------------
// Faces
// ---------------------------------------------------------------------------

/**
 * All nonempty faces ordered by (dim, tight set).  Throws
 * std::invalid_argument on an empty polyhedron.
 */
std::vector<Face> enumerate_faces(const HPolyhedron& p);
std::vector<Face> enumerate_faces(const HPolyhedron& p, const VPolyhedron& generators);

/// The faces of least dimension (vertices, for pointed P).
std::vector<Face> minimal_faces(const HPolyhedron& p);

/// Face with the given tight rows closed up to its maximal tight set.
std::optional<Face> face_containing(const HPolyhedron& p, const IndexSet& rows);

std::pair<RatMatrix, RatVector> face_defining_matrix(const HPolyhedron& p, const Face& f);

/// Columns spanning lin(F) = {x : A_F x = 0}.
RatMatrix lin_space_basis(const HPolyhedron& p, const Face& f);

/// Average of the face's vertices plus the sum of its rays.
RatVector relative_interior_point(const Face& f);

HPolyhedron tangent_cone(const HPolyhedron& p, const Face& f);
VPolyhedron normal_cone(const HPolyhedron& p, const Face& f);

/// C* = {x : z^T x <= 0 for all z in C} for a cone C = {x : Ax <= 0}.
HPolyhedron polar(const HPolyhedron& c);

// ---------------------------------------------------------------------------
// Transformations
// ---------------------------------------------------------------------------

HPolyhedron dilate(const HPolyhedron& p, const Rational& k);
HPolyhedron translate(const HPolyhedron& p, const RatVector& t);
HPolyhedron dominant(const HPolyhedron& p);

/// Appends the finite bounds l <= x <= u as rows.
HPolyhedron box_intersect(const HPolyhedron& p, const std::vector<Bound>& l,
                          const std::vector<Bound>& u);

// ---------------------------------------------------------------------------
// Integrality
// ---------------------------------------------------------------------------

/// Every minimal face contains an integer point.
bool is_integer(const HPolyhedron& p);

/// Least d > 0 such that kP is integer exactly when d divides k.
Integer minimal_integer_dilation(const HPolyhedron& p);

}  // namespace boxtdi

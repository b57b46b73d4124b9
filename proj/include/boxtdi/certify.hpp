#pragma once

/**
 * Decision procedures for box-integrality and box-TDIness of polyhedra.
 *
 * is_box_tdi is exact: a polyhedron is box-TDI exactly when every face has an
 * equimodular face-defining matrix.  is_box_integer is a brute force over
 * integer coordinate fixings; it is exact for polytopes and window-limited
 * (one-sided) for unbounded polyhedra.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "boxtdi/matprops.hpp"
#include "boxtdi/polyhedra.hpp"

namespace boxtdi {

/// Positive evidence for one face: D^-1 fdm is totally unimodular.
struct FaceCertificate {
    Face face;
    IndexSet basis;       ///< columns of fdm forming D
    RatMatrix normalized; ///< D^-1 fdm
};

struct BoxTDIRefutation {
    Face face;
    MaximalMinor first;
    MaximalMinor second;  ///< |second.det| != |first.det|
};

struct BoxTDICertificate {
    bool verdict = false;
    std::vector<FaceCertificate> faces;       ///< filled when verdict is true
    std::optional<BoxTDIRefutation> refutation;
    /// Set in cross-check mode: the lin(F) criterion agreed on every face.
    std::optional<bool> cross_check_agrees;
};

/**
 * Box-TDI (equivalently principally box-integer) test.  Faces are visited in
 * the order of enumerate_faces and the first one without an equimodular
 * face-defining matrix is reported.
 */
BoxTDICertificate is_box_tdi(const HPolyhedron& p, bool cross_check = false);

inline BoxTDICertificate is_principally_box_integer(const HPolyhedron& p)
{
    return is_box_tdi(p);
}

/// A noninteger vertex of kP intersected with an integer box.
struct FractionalVertexWitness {
    Integer k = 1;
    std::vector<Bound> l;
    std::vector<Bound> u;
    RatVector vertex;
};

struct BoxIntegerVerdict {
    bool box_integer = false;
    bool exact = true;  ///< false when a positive answer is window-limited
    std::optional<FractionalVertexWitness> witness;
};

/**
 * Is P intersected with every integer box an integer polyhedron?  For every
 * face F, column basis B of its face-defining matrix and integer values p of
 * the remaining coordinates, the unique point of aff(F) with those
 * coordinates is checked whenever it lies in P.  Unbounded polyhedra scan
 * coordinates within @p radius of the vertices' bounding box.
 */
BoxIntegerVerdict is_box_integer(const HPolyhedron& p, long radius = 4);

/// Confirms that w.vertex is a noninteger vertex of box_intersect(kP, l, u).
bool validate_witness(const HPolyhedron& p, const FractionalVertexWitness& w);

bool is_fully_box_integer(const HPolyhedron& p);

// ---------------------------------------------------------------------------
// Cones
// ---------------------------------------------------------------------------

struct ConeVerdict {
    bool box_integer = false;
    /// On failure: generators spanning the offending face (as rows) and
    /// two of their maximal minors with different absolute values.
    std::optional<RatMatrix> face_generators;
    std::optional<std::pair<MaximalMinor, MaximalMinor>> refutation;
};

/// Generator-side test for a cone {x : Ax <= 0}.
ConeVerdict cone_box_integer(const HPolyhedron& c);

struct PolarityReport {
    ConeVerdict cone;
    ConeVerdict polar;
    bool agree = false;
};

PolarityReport cone_polarity_check(const HPolyhedron& c);

struct BoxPropertyVerdict {
    bool holds = false;
    bool exact = false;  ///< only a counterexample is exact
    std::optional<RatVector> counterexample;
    std::size_t points_checked = 0;
};

/**
 * Cook's box property on sampled points c of C: some integer point of C lies
 * in [floor(c), ceil(c)].  Points are nonnegative combinations of the
 * generators with coefficients z/q, q in {2,3,4}, z <= radius q.
 */
BoxPropertyVerdict cone_box_property(const HPolyhedron& c, std::size_t samples = 64,
                                     long radius = 4, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Dilations and witnesses
// ---------------------------------------------------------------------------

struct DilationProfile {
    Integer d;
    std::vector<std::pair<Integer, bool>> checks;  ///< (k, kP box-integer)
    int situation = 0;          ///< 1, 2 or 3
    std::optional<long> q;      ///< for situation 3: kP box-integer iff k <= q d
    bool q_lower_bound = false; ///< all checked multiples were box-integer
    bool monotone = true;       ///< never box-integer again after a failure
    bool box_tdi = false;
};

DilationProfile dilation_profile(const HPolyhedron& p, long kmax = 4, long radius = 4);

/**
 * Turns a box-TDI refutation into a fractional vertex of kP cut by a box,
 * searching k = d, 2d, ..., bound d.  Throws std::runtime_error if no
 * validated witness is found within the bound.
 */
FractionalVertexWitness extract_fractional_witness(const HPolyhedron& p,
                                                   const BoxTDIRefutation& refutation,
                                                   long bound = 64);

/// {(y, z) : A(y - z) <= b, y, z >= 0}
HPolyhedron pm_lift(const HPolyhedron& p);

}  // namespace boxtdi

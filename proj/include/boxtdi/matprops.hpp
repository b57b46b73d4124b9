#pragma once

/**
 * Recognizers for unimodular, equimodular, totally unimodular and totally
 * equimodular matrices.
 *
 * A full row rank r x n matrix is equimodular when its nonzero r x r
 * determinants share one absolute value.  Six equivalent tests are provided
 * (see EquimodularRoute); whatever route is used, a negative answer carries
 * two maximal minors with different absolute values.
 */

#include <optional>
#include <string>
#include <utility>

#include "boxtdi/exactalg.hpp"

namespace boxtdi {

enum class EquimodularRoute {
    Determinants = 1,        ///< all nonzero maximal minors have equal |det|
    Lattices = 2,            ///< lattice(D) = lattice(A) for every nonsingular D
    IntegralInverse = 3,     ///< D^-1 A is integer for every nonsingular D
    SignedInverse = 4,       ///< D^-1 A has entries in {0, 1, -1} for every D
    UnimodularInverse = 5,   ///< D^-1 A is totally unimodular for every D
    FirstBasisInverse = 6,   ///< D^-1 A is totally unimodular for the first D
};

std::string to_string(EquimodularRoute route);

struct EquimodularVerdict {
    bool is_equimodular = false;
    std::optional<Rational> common_abs_det;
    /// Two nonzero maximal minors with different absolute values.
    std::optional<std::pair<MaximalMinor, MaximalMinor>> refutation;
    EquimodularRoute route = EquimodularRoute::FirstBasisInverse;
};

struct SquareSubmatrix {
    IndexSet rows;
    IndexSet cols;
    Rational det;
};

struct TUVerdict {
    bool is_tu = false;
    std::optional<SquareSubmatrix> violation;
};

struct TotalEquimodularVerdict {
    bool holds = false;
    std::optional<IndexSet> offending_rows;
    std::optional<EquimodularVerdict> refutation;
};

/// Integer full row rank matrix whose nonzero maximal minors are all +-1.
bool is_unimodular(const RatMatrix& a);

/**
 * Equimodularity of a full row rank matrix.  A matrix with no rows counts as
 * equimodular with common determinant 1.  Throws std::invalid_argument on
 * rank-deficient input.
 */
EquimodularVerdict is_equimodular(const RatMatrix& a,
                                  EquimodularRoute route = EquimodularRoute::FirstBasisInverse);

/**
 * Rank-deficient variant: every set of rank(A) linearly independent rows must
 * form an equimodular matrix.  The refutation refers to the first failing
 * row set, returned through @p rows.
 */
EquimodularVerdict is_equimodular_by_rows(const RatMatrix& a, IndexSet* rows = nullptr);

/// Lexicographically least first nonzero minor paired with the first one of
/// a different absolute value; empty when the matrix is equimodular.
std::optional<std::pair<MaximalMinor, MaximalMinor>> equimodular_refutation(const RatMatrix& a);

/**
 * Exhaustive test of all square subdeterminants, smallest size first.  The
 * reported violation is the lexicographically least (size, rows, cols).
 * Cost is exponential in the matrix size.
 */
TUVerdict is_totally_unimodular(const RatMatrix& a);

/// Every linearly independent set of rows is equimodular.  Exponential.
TotalEquimodularVerdict is_totally_equimodular(const RatMatrix& a);

}  // namespace boxtdi

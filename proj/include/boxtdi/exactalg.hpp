#pragma once

/**
 * Exact rational linear algebra on Eigen dense types.
 *
 * Every scalar is a GMP-backed rational kept in canonical form (reduced
 * fraction, positive denominator).  Determinants and ranks are computed
 * fraction-free (Bareiss) on an integer lift of the input; lattice questions
 * go through a canonical column-style Hermite normal form.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace boxtdi {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;
using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

/// Sorted list of row or column indices.
using IndexSet = std::vector<Index>;

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

template <typename Derived>
bool is_integral(const Eigen::MatrixBase<Derived>& m)
{
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!is_integral(Rational(m(i, j))))
                return false;
    return true;
}

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Least common multiple of all denominators (1 for an empty matrix).
template <typename Derived>
Integer denominator_lcm(const Eigen::MatrixBase<Derived>& m)
{
    Integer l = 1;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            l = lcm(l, Integer(denominator(Rational(m(i, j)))));
    return l;
}

/// Parses "p" or "p/q"; throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& token);

/// Scales v by a positive rational so that it is integral with coprime entries.
RatVector primitive(const RatVector& v);

IntMatrix to_integer(const RatMatrix& m);  // throws if any entry is fractional
RatMatrix to_rational(const IntMatrix& m);

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

/**
 * Fraction-free Gaussian elimination (Bareiss) on an integer-like matrix.
 *
 * Reduces @p m in place to row echelon form and returns the rank.  When
 * @p sign is given it receives the parity of the row swaps performed.  The
 * last nonzero pivot of a square nonsingular input is its determinant (up to
 * that sign).
 */
template <typename Scalar>
Index bareiss_eliminate(Matrix<Scalar>& m, int* sign = nullptr)
{
    const Index rows = m.rows();
    const Index cols = m.cols();
    Scalar prev = 1;
    int s = 1;
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index p = r;
        while (p < rows && m(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r) {
            m.row(p).swap(m.row(r));
            s = -s;
        }
        for (Index i = r + 1; i < rows; ++i) {
            for (Index j = c + 1; j < cols; ++j)
                m(i, j) = Scalar((m(i, j) * m(r, c) - m(i, c) * m(r, j)) / prev);
            m(i, c) = 0;
        }
        prev = m(r, c);
        ++r;
    }
    if (sign)
        *sign = s;
    return r;
}

Rational determinant(const RatMatrix& m);
Index rank(const RatMatrix& m);

inline bool has_full_row_rank(const RatMatrix& m) { return rank(m) == m.rows(); }

/// Reduced row echelon form; @p pivots receives the pivot column of each nonzero row.
RatMatrix rref(const RatMatrix& m, IndexSet* pivots = nullptr);

/// Columns spanning {x : m x = 0}; zero columns when m is injective.
RatMatrix kernel_basis(const RatMatrix& m);

std::optional<RatMatrix> inverse(const RatMatrix& m);

struct AffineSolution {
    RatVector particular;
    RatMatrix kernel;  ///< columns span the solution space of the homogeneous system
};

/// Solves A x = b exactly; empty when the system is inconsistent.
std::optional<AffineSolution> solve(const RatMatrix& a, const RatVector& b);

/// Indices of the lexicographically first maximal set of independent rows.
IndexSet row_basis(const RatMatrix& m);

RatMatrix select_rows(const RatMatrix& m, const IndexSet& rows);
RatMatrix select_columns(const RatMatrix& m, const IndexSet& cols);
RatVector select_entries(const RatVector& v, const IndexSet& idx);

/// Advances @p c to the next k-subset of {0..n-1} in lexicographic order.
bool next_combination(IndexSet& c, Index n);

/// First k-subset {0..k-1}.
IndexSet first_combination(Index k);

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

/**
 * Column-style Hermite normal form of an integer matrix A (r x n).
 *
 * A U = H where U is unimodular and H is lower echelon: column c < rank has
 * a positive pivot in row pivot_rows[c], zeros above it, and every entry to
 * the left of the pivot in that row lies in [0, pivot).  Columns from rank
 * onwards are zero.  lattice(A) = lattice(H), and H is unique for it.
 */
struct HermiteForm {
    RatMatrix h;
    RatMatrix u;
    IndexSet pivot_rows;

    Index rank() const { return static_cast<Index>(pivot_rows.size()); }
    /// The nonzero columns of h.
    RatMatrix basis() const { return h.leftCols(rank()); }
};

/// Requires integer entries; throws std::invalid_argument otherwise.
HermiteForm hnf(const RatMatrix& a);

/// Is b an integer combination of the columns of A?
bool lattice_member(const RatMatrix& a, const RatVector& b);

/// Do the columns of A and B generate the same lattice?
bool lattice_equal(const RatMatrix& a, const RatMatrix& b);

/**
 * Smallest positive integer k such that k b lies in lattice(A), assuming b
 * lies in the column span of A.  Throws std::invalid_argument otherwise.
 */
Integer lattice_denominator(const RatMatrix& a, const RatVector& b);

// ---------------------------------------------------------------------------
// Maximal minors
// ---------------------------------------------------------------------------

struct MaximalMinor {
    IndexSet columns;
    Rational det;
};

/**
 * Visits every r-subset of columns of a full row rank r x n matrix together
 * with its determinant, in lexicographic order.  The visitor returns false to
 * stop early.  Rank-deficient input is rejected.
 */
void for_each_maximal_minor(const RatMatrix& a,
                            const std::function<bool(const MaximalMinor&)>& visit);

std::vector<MaximalMinor> maximal_minors(const RatMatrix& a);

/// Lexicographically first set of r independent columns, if any.
std::optional<IndexSet> first_column_basis(const RatMatrix& a);

}  // namespace boxtdi

#include "boxtdi/matprops.hpp"

#include <cstdint>

namespace boxtdi {

namespace {

using SmallMatrix = Matrix<std::int64_t>;

std::int64_t small_det(const SmallMatrix& m, const IndexSet& rows, const IndexSet& cols)
{
    const Index k = static_cast<Index>(rows.size());
    SmallMatrix sub(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            sub(i, j) = m(rows[i], cols[j]);
    int sign = 1;
    if (bareiss_eliminate(sub, &sign) < k)
        return 0;
    return sign * sub(k - 1, k - 1);
}

bool signed_unit(const Rational& q)
{
    return q == 0 || q == 1 || q == -1;
}

void require_full_row_rank(const RatMatrix& a)
{
    if (!has_full_row_rank(a))
        throw std::invalid_argument("equimodularity needs a full row rank matrix");
}

std::vector<MaximalMinor> nonsingular_bases(const RatMatrix& a)
{
    std::vector<MaximalMinor> out;
    for_each_maximal_minor(a, [&](const MaximalMinor& m) {
        if (m.det != 0)
            out.push_back(m);
        return true;
    });
    return out;
}

RatMatrix normalized(const RatMatrix& a, const IndexSet& basis)
{
    return *inverse(select_columns(a, basis)) * a;
}

bool route_holds(const RatMatrix& a, EquimodularRoute route)
{
    if (route == EquimodularRoute::FirstBasisInverse) {
        auto basis = first_column_basis(a);
        return is_totally_unimodular(normalized(a, *basis)).is_tu;
    }
    const auto bases = nonsingular_bases(a);
    for (const auto& d : bases) {
        switch (route) {
        case EquimodularRoute::Determinants:
            if (abs(d.det) != abs(bases.front().det))
                return false;
            break;
        case EquimodularRoute::Lattices:
            if (!lattice_equal(select_columns(a, d.columns), a))
                return false;
            break;
        case EquimodularRoute::IntegralInverse:
            if (!is_integral(normalized(a, d.columns)))
                return false;
            break;
        case EquimodularRoute::SignedInverse: {
            RatMatrix n = normalized(a, d.columns);
            for (Index i = 0; i < n.rows(); ++i)
                for (Index j = 0; j < n.cols(); ++j)
                    if (!signed_unit(n(i, j)))
                        return false;
            break;
        }
        case EquimodularRoute::UnimodularInverse:
            if (!is_totally_unimodular(normalized(a, d.columns)).is_tu)
                return false;
            break;
        case EquimodularRoute::FirstBasisInverse:
            break;
        }
    }
    return true;
}

}  // namespace

std::string to_string(EquimodularRoute route)
{
    switch (route) {
    case EquimodularRoute::Determinants: return "determinants";
    case EquimodularRoute::Lattices: return "lattices";
    case EquimodularRoute::IntegralInverse: return "integral-inverse";
    case EquimodularRoute::SignedInverse: return "signed-inverse";
    case EquimodularRoute::UnimodularInverse: return "unimodular-inverse";
    case EquimodularRoute::FirstBasisInverse: return "first-basis-inverse";
    }
    return "unknown";
}

bool is_unimodular(const RatMatrix& a)
{
    if (!is_integral(a))
        throw std::invalid_argument("unimodularity needs an integer matrix");
    require_full_row_rank(a);
    bool ok = true;
    for_each_maximal_minor(a, [&](const MaximalMinor& m) {
        ok = m.det == 0 || abs(m.det) == 1;
        return ok;
    });
    return ok;
}

std::optional<std::pair<MaximalMinor, MaximalMinor>> equimodular_refutation(const RatMatrix& a)
{
    std::optional<MaximalMinor> first;
    std::optional<std::pair<MaximalMinor, MaximalMinor>> out;
    for_each_maximal_minor(a, [&](const MaximalMinor& m) {
        if (m.det == 0)
            return true;
        if (!first) {
            first = m;
            return true;
        }
        if (abs(m.det) != abs(first->det)) {
            out = std::make_pair(*first, m);
            return false;
        }
        return true;
    });
    return out;
}

EquimodularVerdict is_equimodular(const RatMatrix& a, EquimodularRoute route)
{
    require_full_row_rank(a);
    EquimodularVerdict v;
    v.route = route;
    if (a.rows() == 0) {
        v.is_equimodular = true;
        v.common_abs_det = Rational(1);
        return v;
    }
    v.is_equimodular = route_holds(a, route);
    if (v.is_equimodular) {
        v.common_abs_det = abs(determinant(select_columns(a, *first_column_basis(a))));
    } else {
        v.refutation = equimodular_refutation(a);
        if (!v.refutation)
            throw std::logic_error("equimodularity routes disagree on a matrix");
    }
    return v;
}

EquimodularVerdict is_equimodular_by_rows(const RatMatrix& a, IndexSet* rows)
{
    const Index r = rank(a);
    IndexSet subset = first_combination(r);
    EquimodularVerdict last;
    last.is_equimodular = true;
    do {
        RatMatrix sub = select_rows(a, subset);
        if (rank(sub) < r)
            continue;
        EquimodularVerdict v = is_equimodular(sub);
        if (!v.is_equimodular) {
            if (rows)
                *rows = subset;
            return v;
        }
        last = v;
    } while (next_combination(subset, a.rows()));
    return last;
}

TUVerdict is_totally_unimodular(const RatMatrix& a)
{
    TUVerdict v;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (!signed_unit(a(i, j))) {
                v.violation = SquareSubmatrix{{i}, {j}, a(i, j)};
                return v;
            }
    SmallMatrix m(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            m(i, j) = static_cast<std::int64_t>(numerator(a(i, j)).convert_to<long long>());
    const Index limit = std::min(a.rows(), a.cols());
    for (Index k = 2; k <= limit; ++k) {
        IndexSet rows = first_combination(k);
        do {
            IndexSet cols = first_combination(k);
            do {
                std::int64_t d = small_det(m, rows, cols);
                if (d > 1 || d < -1) {
                    v.violation = SquareSubmatrix{rows, cols, Rational(d)};
                    return v;
                }
            } while (next_combination(cols, a.cols()));
        } while (next_combination(rows, a.rows()));
    }
    v.is_tu = true;
    return v;
}

TotalEquimodularVerdict is_totally_equimodular(const RatMatrix& a)
{
    TotalEquimodularVerdict out;
    for (Index k = 1; k <= a.rows(); ++k) {
        IndexSet rows = first_combination(k);
        do {
            RatMatrix sub = select_rows(a, rows);
            if (rank(sub) < k)
                continue;
            EquimodularVerdict v = is_equimodular(sub);
            if (!v.is_equimodular) {
                out.offending_rows = rows;
                out.refutation = v;
                return out;
            }
        } while (next_combination(rows, a.rows()));
    }
    out.holds = true;
    return out;
}

}  // namespace boxtdi

#include "boxtdi/exactalg.hpp"

#include <algorithm>
#include <cctype>

namespace boxtdi {

namespace {

// Floor division for arbitrary-precision integers (b != 0).
Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0)))
        q -= 1;
    return q;
}

// Multiplies each row by the lcm of its denominators.  Returns the product of
// the multipliers so that det(m) = det(lift) / product.
IntMatrix integer_row_lift(const RatMatrix& m, Integer* product = nullptr)
{
    IntMatrix out(m.rows(), m.cols());
    Integer prod = 1;
    for (Index i = 0; i < m.rows(); ++i) {
        Integer l = denominator_lcm(m.row(i));
        prod *= l;
        for (Index j = 0; j < m.cols(); ++j) {
            Rational scaled = m(i, j) * l;
            out(i, j) = numerator(scaled);
        }
    }
    if (product)
        *product = prod;
    return out;
}

// s a + t b = g = gcd(a, b) >= 0
void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t)
{
    Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
    while (r != 0) {
        Integer q = floor_div(old_r, r);
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
        tmp = old_t - q * cur_t;
        old_t = cur_t;
        cur_t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    s = old_s;
    t = old_t;
}

struct IntHermite {
    IntMatrix h;
    IntMatrix u;
    IndexSet pivot_rows;
};

IntHermite integer_hnf(IntMatrix a)
{
    const Index rows = a.rows();
    const Index cols = a.cols();
    IntMatrix u = IntMatrix::Identity(cols, cols);
    IndexSet pivots;
    Index col = 0;
    for (Index i = 0; i < rows && col < cols; ++i) {
        for (Index j = col + 1; j < cols; ++j) {
            if (a(i, j) == 0)
                continue;
            Integer g, s, t;
            extended_gcd(a(i, col), a(i, j), g, s, t);
            const Integer p = a(i, col) / g;
            const Integer q = a(i, j) / g;
            // [c_col c_j] <- [c_col c_j] [[s, -q], [t, p]], determinant 1
            for (IntMatrix* m : {&a, &u}) {
                for (Index k = 0; k < m->rows(); ++k) {
                    Integer x = (*m)(k, col);
                    Integer y = (*m)(k, j);
                    (*m)(k, col) = s * x + t * y;
                    (*m)(k, j) = p * y - q * x;
                }
            }
        }
        if (a(i, col) == 0)
            continue;
        if (a(i, col) < 0) {
            a.col(col) = -a.col(col);
            u.col(col) = -u.col(col);
        }
        for (Index k = 0; k < col; ++k) {
            Integer f = floor_div(a(i, k), a(i, col));
            if (f == 0)
                continue;
            a.col(k) -= f * a.col(col);
            u.col(k) -= f * u.col(col);
        }
        pivots.push_back(i);
        ++col;
    }
    return {std::move(a), std::move(u), std::move(pivots)};
}

// Solves H y = b for the echelon part of a Hermite form; y is rational and
// unique when it exists.  Returns empty if b is outside the column span.
std::optional<RatVector> hermite_solve(const IntMatrix& h, const IndexSet& pivots, const RatVector& b)
{
    const Index rk = static_cast<Index>(pivots.size());
    RatVector residual = b;
    RatVector y(rk);
    Index c = 0;
    for (Index i = 0; i < h.rows(); ++i) {
        if (c < rk && pivots[c] == i) {
            y(c) = residual(i) / Rational(h(i, c));
            for (Index k = i; k < h.rows(); ++k)
                residual(k) -= y(c) * Rational(h(k, c));
            ++c;
        } else if (residual(i) != 0) {
            return std::nullopt;
        }
    }
    return y;
}

}  // namespace

Integer floor_of(const Rational& q)
{
    return floor_div(numerator(q), denominator(q));
}

Integer ceil_of(const Rational& q)
{
    return -floor_div(-numerator(q), denominator(q));
}

Rational parse_rational(const std::string& token)
{
    auto valid_int = [](const std::string& s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+'))
            ++i;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                return false;
        return true;
    };
    const auto slash = token.find('/');
    std::string num = token.substr(0, slash);
    if (!num.empty() && num[0] == '+')
        num.erase(0, 1);
    if (!valid_int(num, true))
        throw std::invalid_argument("not a rational number: '" + token + "'");
    if (slash == std::string::npos)
        return Rational(Integer(num));
    const std::string den = token.substr(slash + 1);
    if (!valid_int(den, false))
        throw std::invalid_argument("not a rational number: '" + token + "'");
    Integer d(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + token + "'");
    return Rational(Integer(num), d);
}

RatVector primitive(const RatVector& v)
{
    Integer l = denominator_lcm(v);
    Integer g = 0;
    for (Index i = 0; i < v.size(); ++i)
        g = gcd(g, Integer(numerator(Rational(v(i) * l))));
    if (g == 0)
        return v;
    RatVector out(v.size());
    for (Index i = 0; i < v.size(); ++i)
        out(i) = v(i) * l / g;
    return out;
}

IntMatrix to_integer(const RatMatrix& m)
{
    IntMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) {
            if (!is_integral(m(i, j)))
                throw std::invalid_argument("matrix has a fractional entry " + m(i, j).str());
            out(i, j) = numerator(m(i, j));
        }
    return out;
}

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            out(i, j) = Rational(m(i, j));
    return out;
}

Rational determinant(const RatMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    const Index n = m.rows();
    if (n == 0)
        return 1;
    Integer scale;
    IntMatrix lift = integer_row_lift(m, &scale);
    int sign = 1;
    if (bareiss_eliminate(lift, &sign) < n)
        return 0;
    return Rational(Integer(sign * lift(n - 1, n - 1)), scale);
}

Index rank(const RatMatrix& m)
{
    IntMatrix lift = integer_row_lift(m);
    return bareiss_eliminate(lift);
}

RatMatrix rref(const RatMatrix& m, IndexSet* pivots)
{
    RatMatrix r = m;
    IndexSet piv;
    Index row = 0;
    for (Index c = 0; c < r.cols() && row < r.rows(); ++c) {
        Index p = row;
        while (p < r.rows() && r(p, c) == 0)
            ++p;
        if (p == r.rows())
            continue;
        if (p != row)
            r.row(p).swap(r.row(row));
        const Rational inv = 1 / r(row, c);
        for (Index j = c; j < r.cols(); ++j)
            r(row, j) *= inv;
        for (Index i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, c) == 0)
                continue;
            const Rational f = r(i, c);
            for (Index j = c; j < r.cols(); ++j)
                r(i, j) -= f * r(row, j);
        }
        piv.push_back(c);
        ++row;
    }
    if (pivots)
        *pivots = std::move(piv);
    return r;
}

RatMatrix kernel_basis(const RatMatrix& m)
{
    IndexSet pivots;
    RatMatrix r = rref(m, &pivots);
    const Index n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (Index p : pivots)
        is_pivot[p] = true;
    RatMatrix k(n, n - static_cast<Index>(pivots.size()));
    Index col = 0;
    for (Index f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        RatVector v = RatVector::Zero(n);
        v(f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v(pivots[i]) = -r(static_cast<Index>(i), f);
        k.col(col++) = v;
    }
    return k;
}

std::optional<RatMatrix> inverse(const RatMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse of a non-square matrix");
    const Index n = m.rows();
    RatMatrix aug(n, 2 * n);
    aug << m, RatMatrix::Identity(n, n);
    IndexSet pivots;
    RatMatrix r = rref(aug, &pivots);
    if (static_cast<Index>(pivots.size()) < n || (n > 0 && pivots[n - 1] != n - 1))
        return std::nullopt;
    return RatMatrix(r.rightCols(n));
}

std::optional<AffineSolution> solve(const RatMatrix& a, const RatVector& b)
{
    if (a.rows() != b.size())
        throw std::invalid_argument("solve: row count and right-hand side length differ");
    const Index n = a.cols();
    RatMatrix aug(a.rows(), n + 1);
    aug << a, b;
    IndexSet pivots;
    RatMatrix r = rref(aug, &pivots);
    if (!pivots.empty() && pivots.back() == n)
        return std::nullopt;
    AffineSolution sol;
    sol.particular = RatVector::Zero(n);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        sol.particular(pivots[i]) = r(static_cast<Index>(i), n);
    sol.kernel = kernel_basis(a);
    return sol;
}

IndexSet row_basis(const RatMatrix& m)
{
    IndexSet basis;
    RatMatrix acc(0, m.cols());
    Index current = 0;
    for (Index i = 0; i < m.rows(); ++i) {
        RatMatrix trial(acc.rows() + 1, m.cols());
        trial << acc, m.row(i);
        Index rk = rank(trial);
        if (rk > current) {
            acc = std::move(trial);
            current = rk;
            basis.push_back(i);
            if (current == m.cols())
                break;
        }
    }
    return basis;
}

RatMatrix select_rows(const RatMatrix& m, const IndexSet& rows)
{
    RatMatrix out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.row(static_cast<Index>(i)) = m.row(rows[i]);
    return out;
}

RatMatrix select_columns(const RatMatrix& m, const IndexSet& cols)
{
    RatMatrix out(m.rows(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        out.col(static_cast<Index>(j)) = m.col(cols[j]);
    return out;
}

RatVector select_entries(const RatVector& v, const IndexSet& idx)
{
    RatVector out(static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out(static_cast<Index>(i)) = v(idx[i]);
    return out;
}

bool next_combination(IndexSet& c, Index n)
{
    const Index k = static_cast<Index>(c.size());
    for (Index i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (Index j = i + 1; j < k; ++j)
                c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

IndexSet first_combination(Index k)
{
    IndexSet c(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i)
        c[i] = i;
    return c;
}

HermiteForm hnf(const RatMatrix& a)
{
    IntHermite ih = integer_hnf(to_integer(a));
    return {to_rational(ih.h), to_rational(ih.u), std::move(ih.pivot_rows)};
}

bool lattice_member(const RatMatrix& a, const RatVector& b)
{
    if (a.rows() != b.size())
        throw std::invalid_argument("lattice_member: dimension mismatch");
    const Integer l = denominator_lcm(a);
    RatVector scaled_b = b * Rational(l);
    if (!is_integral(scaled_b))
        return false;
    RatMatrix scaled_a = a * Rational(l);
    IntHermite ih = integer_hnf(to_integer(scaled_a));
    auto y = hermite_solve(ih.h, ih.pivot_rows, scaled_b);
    return y && is_integral(*y);
}

bool lattice_equal(const RatMatrix& a, const RatMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("lattice_equal: row counts differ");
    const Integer l = lcm(denominator_lcm(a), denominator_lcm(b));
    IntHermite ha = integer_hnf(to_integer(RatMatrix(a * Rational(l))));
    IntHermite hb = integer_hnf(to_integer(RatMatrix(b * Rational(l))));
    if (ha.pivot_rows != hb.pivot_rows)
        return false;
    const Index rk = static_cast<Index>(ha.pivot_rows.size());
    return ha.h.leftCols(rk) == hb.h.leftCols(rk);
}

Integer lattice_denominator(const RatMatrix& a, const RatVector& b)
{
    if (a.rows() != b.size())
        throw std::invalid_argument("lattice_denominator: dimension mismatch");
    const Integer l = denominator_lcm(a);
    RatMatrix scaled_a = a * Rational(l);
    RatVector scaled_b = b * Rational(l);
    IntHermite ih = integer_hnf(to_integer(scaled_a));
    auto y = hermite_solve(ih.h, ih.pivot_rows, scaled_b);
    if (!y)
        throw std::invalid_argument("lattice_denominator: vector outside the column span");
    return denominator_lcm(*y);
}

void for_each_maximal_minor(const RatMatrix& a,
                            const std::function<bool(const MaximalMinor&)>& visit)
{
    const Index r = a.rows();
    const Index n = a.cols();
    if (rank(a) != r)
        throw std::invalid_argument("maximal minors need a full row rank matrix");
    IndexSet cols = first_combination(r);
    do {
        MaximalMinor minor{cols, determinant(select_columns(a, cols))};
        if (!visit(minor))
            return;
    } while (next_combination(cols, n));
}

std::vector<MaximalMinor> maximal_minors(const RatMatrix& a)
{
    std::vector<MaximalMinor> out;
    for_each_maximal_minor(a, [&](const MaximalMinor& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

std::optional<IndexSet> first_column_basis(const RatMatrix& a)
{
    const Index r = a.rows();
    if (r == 0)
        return IndexSet{};
    if (r > a.cols())
        return std::nullopt;
    IndexSet cols = first_combination(r);
    do {
        if (determinant(select_columns(a, cols)) != 0)
            return cols;
    } while (next_combination(cols, a.cols()));
    return std::nullopt;
}

}  // namespace boxtdi

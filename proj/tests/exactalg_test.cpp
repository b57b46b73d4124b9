#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "boxtdi/exactalg.hpp"

using namespace boxtdi;

namespace {

RatMatrix mat(Index r, Index c, std::initializer_list<long> xs)
{
    RatMatrix m(r, c);
    auto it = xs.begin();
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j)
            m(i, j) = *it++;
    return m;
}

RatVector vec(std::initializer_list<Rational> xs)
{
    RatVector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (const auto& x : xs)
        v(i++) = x;
    return v;
}

// Laplace expansion along the first row.
Rational cofactor_det(const RatMatrix& m)
{
    const Index n = m.rows();
    if (n == 0)
        return 1;
    Rational total = 0;
    for (Index j = 0; j < n; ++j) {
        if (m(0, j) == 0)
            continue;
        RatMatrix minor(n - 1, n - 1);
        for (Index i = 1; i < n; ++i)
            for (Index k = 0, c = 0; k < n; ++k)
                if (k != j)
                    minor(i - 1, c++) = m(i, k);
        Rational term = m(0, j) * cofactor_det(minor);
        total += (j % 2 == 0) ? term : Rational(-term);
    }
    return total;
}

// Plain Gaussian elimination over the rationals.
Index naive_rank(RatMatrix m)
{
    Index r = 0;
    for (Index c = 0; c < m.cols() && r < m.rows(); ++c) {
        Index p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        m.row(p).swap(m.row(r));
        for (Index i = r + 1; i < m.rows(); ++i) {
            Rational f = m(i, c) / m(r, c);
            m.row(i) -= f * m.row(r);
        }
        ++r;
    }
    return r;
}

RatMatrix random_matrix(std::mt19937_64& rng, Index r, Index c, long lo, long hi, long max_den = 1)
{
    std::uniform_int_distribution<long> num(lo, hi), den(1, max_den);
    RatMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j)
            m(i, j) = Rational(num(rng), den(rng));
    return m;
}

const RatMatrix q6_m = mat(3, 6, {1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1});
const RatMatrix a_q6 = mat(4, 6, {1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 1, 1, 1});

}  // namespace

TEST_CASE("parse_rational accepts p and p/q only", "[exactalg]")
{
    REQUIRE(parse_rational("3") == 3);
    REQUIRE(parse_rational("-6/4") == Rational(-3, 2));
    REQUIRE(parse_rational("+1/2") == Rational(1, 2));
    REQUIRE_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rationals stay canonical", "[exactalg]")
{
    Rational q = Rational(-6, 4) + Rational(1, 2);
    REQUIRE(numerator(q) == -1);
    REQUIRE(denominator(q) == 1);
    Rational z = Rational(3, 7) - Rational(3, 7);
    REQUIRE(numerator(z) == 0);
    REQUIRE(denominator(z) == 1);
}

TEST_CASE("floor and ceil of rationals", "[exactalg]")
{
    REQUIRE(floor_of(Rational(-1, 2)) == -1);
    REQUIRE(ceil_of(Rational(-1, 2)) == 0);
    REQUIRE(floor_of(Rational(7, 3)) == 2);
    REQUIRE(ceil_of(Rational(7, 3)) == 3);
    REQUIRE(floor_of(Rational(4)) == 4);
}

TEST_CASE("determinant examples", "[exactalg]")
{
    REQUIRE(determinant(RatMatrix::Identity(3, 3)) == 1);
    REQUIRE(determinant(mat(3, 3, {1, 1, 0, 1, 0, 1, 0, 1, 1})) == -2);
    RatMatrix singular = RatMatrix::Identity(3, 3);
    singular.row(2) = RatVector::Ones(3).transpose() - singular.row(0) - singular.row(1);
    singular(2, 2) = 0;
    REQUIRE(determinant(singular) == 0);
    REQUIRE_THROWS_AS(determinant(RatMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("determinant matches cofactor expansion on all 3x3 {-1,0,1} matrices", "[exactalg]")
{
    RatMatrix m(3, 3);
    for (int code = 0; code < 19683; ++code) {
        int c = code;
        for (Index i = 0; i < 3; ++i)
            for (Index j = 0; j < 3; ++j) {
                m(i, j) = c % 3 - 1;
                c /= 3;
            }
        REQUIRE(determinant(m) == cofactor_det(m));
    }
}

TEST_CASE("determinant is alternating and multiplicative", "[exactalg]")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        RatMatrix a = random_matrix(rng, 4, 4, -5, 5, 4);
        RatMatrix b = random_matrix(rng, 4, 4, -5, 5, 4);
        RatMatrix swapped = a;
        swapped.row(0).swap(swapped.row(2));
        REQUIRE(determinant(swapped) == -determinant(a));
        REQUIRE(determinant(RatMatrix(a * b)) == determinant(a) * determinant(b));
        REQUIRE(determinant(a) == cofactor_det(a));
    }
}

TEST_CASE("rank examples", "[exactalg]")
{
    REQUIRE(rank(RatMatrix::Zero(3, 4)) == 0);
    REQUIRE(rank(a_q6) == 4);
    REQUIRE(rank(q6_m) == 3);
    REQUIRE(naive_rank(a_q6) == 4);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        RatMatrix m = random_matrix(rng, 4, 5, -2, 2, 3);
        m.row(3) = m.row(0) * Rational(1, 2) - m.row(1);
        REQUIRE(rank(m) == naive_rank(m));
    }
}

TEST_CASE("solve returns a particular solution and a kernel basis", "[exactalg]")
{
    SECTION("identity")
    {
        RatVector b = vec({Rational(1, 2), 3, -4});
        auto s = solve(RatMatrix::Identity(3, 3), b);
        REQUIRE(s);
        REQUIRE(s->particular == b);
        REQUIRE(s->kernel.cols() == 0);
    }
    SECTION("the 3 x 6 matrix of the triangle clutter with right-hand side 1")
    {
        RatVector ones = RatVector::Ones(3);
        auto s = solve(q6_m, ones);
        REQUIRE(s);
        REQUIRE(q6_m * s->particular == ones);
        REQUIRE(s->kernel.cols() == 3);
        REQUIRE((q6_m * s->kernel).isZero());
        // Known members of the solution set lie in particular + span(kernel).
        for (IndexSet support : {IndexSet{0, 5}, IndexSet{1, 4}, IndexSet{2, 3}, IndexSet{3, 4, 5}}) {
            RatVector x = RatVector::Zero(6);
            for (Index i : support)
                x(i) = 1;
            REQUIRE(q6_m * x == ones);
            RatMatrix aug(6, 4);
            aug << s->kernel, RatVector(x - s->particular);
            REQUIRE(rank(aug) == 3);
        }
    }
    SECTION("inconsistent")
    {
        REQUIRE_FALSE(solve(mat(2, 1, {1, 1}), vec({0, 1})));
    }
    SECTION("random systems")
    {
        std::mt19937_64 rng(3);
        for (int t = 0; t < 100; ++t) {
            RatMatrix a = random_matrix(rng, 3, 5, -3, 3, 2);
            RatVector x = random_matrix(rng, 5, 1, -3, 3, 2);
            auto s = solve(a, RatVector(a * x));
            REQUIRE(s);
            REQUIRE(a * s->particular == a * x);
            REQUIRE((a * s->kernel).isZero());
            REQUIRE(s->kernel.cols() == 5 - rank(a));
        }
    }
}

TEST_CASE("inverse and kernel", "[exactalg]")
{
    RatMatrix a = mat(2, 2, {2, 1, 1, 1});
    auto inv = inverse(a);
    REQUIRE(inv);
    REQUIRE(RatMatrix(a * *inv) == RatMatrix::Identity(2, 2));
    REQUIRE_FALSE(inverse(mat(2, 2, {1, 2, 2, 4})));
    REQUIRE(kernel_basis(RatMatrix::Identity(3, 3)).cols() == 0);
}

TEST_CASE("row_basis picks the lexicographically first independent rows", "[exactalg]")
{
    RatMatrix m = mat(4, 3, {1, 0, 0, 2, 0, 0, 0, 1, 0, 1, 1, 0});
    REQUIRE(row_basis(m) == IndexSet{0, 2});
    REQUIRE(row_basis(RatMatrix::Zero(2, 2)).empty());
}

TEST_CASE("combinations are lexicographic", "[exactalg]")
{
    IndexSet c = first_combination(2);
    std::vector<IndexSet> all{c};
    while (next_combination(c, 4))
        all.push_back(c);
    REQUIRE(all == std::vector<IndexSet>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("hnf examples", "[exactalg]")
{
    HermiteForm id = hnf(RatMatrix::Identity(3, 3));
    REQUIRE(id.h == RatMatrix::Identity(3, 3));
    REQUIRE(id.u == RatMatrix::Identity(3, 3));

    HermiteForm g = hnf(mat(1, 2, {2, 1}));
    REQUIRE(g.basis() == mat(1, 1, {1}));
    REQUIRE(g.h(0, 1) == 0);

    // Diagonal product equals the gcd of all maximal minors.
    HermiteForm h = hnf(a_q6);
    REQUIRE(h.rank() == 4);
    Rational product = 1;
    for (Index c = 0; c < 4; ++c)
        product *= h.h(h.pivot_rows[c], c);
    Integer g_minors = 0;
    IndexSet cols = first_combination(4);
    do {
        RatMatrix sub(4, 4);
        for (Index j = 0; j < 4; ++j)
            sub.col(j) = a_q6.col(cols[j]);
        g_minors = gcd(g_minors, Integer(numerator(cofactor_det(sub))));
    } while (next_combination(cols, 6));
    REQUIRE(product == Rational(g_minors));

    REQUIRE_THROWS_AS(hnf(mat(1, 1, {1}) / Rational(2)), std::invalid_argument);
}

TEST_CASE("hnf invariants on random integer matrices", "[exactalg]")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const Index r = 1 + static_cast<Index>(rng() % 3);
        const Index n = 1 + static_cast<Index>(rng() % 5);
        RatMatrix a = random_matrix(rng, r, n, -6, 6);
        HermiteForm h = hnf(a);
        REQUIRE(RatMatrix(a * h.u) == h.h);
        REQUIRE(abs(determinant(h.u)) == 1);
        REQUIRE(is_integral(h.u));
        REQUIRE(h.h.rightCols(n - h.rank()).isZero());
        for (Index c = 0; c < h.rank(); ++c) {
            const Index p = h.pivot_rows[c];
            REQUIRE(h.h(p, c) > 0);
            for (Index i = 0; i < p; ++i)
                REQUIRE(h.h(i, c) == 0);
            for (Index k = 0; k < c; ++k) {
                REQUIRE(h.h(p, k) >= 0);
                REQUIRE(h.h(p, k) < h.h(p, c));
            }
        }
        HermiteForm again = hnf(h.h);
        REQUIRE(again.h == h.h);
    }
}

TEST_CASE("lattice membership examples", "[exactalg]")
{
    REQUIRE(lattice_member(RatMatrix::Identity(2, 2), vec({3, -1})));
    REQUIRE_FALSE(lattice_member(RatMatrix::Identity(1, 1), vec({Rational(1, 2)})));
    REQUIRE_FALSE(lattice_member(mat(2, 2, {2, 0, 0, 2}), vec({1, 1})));
    REQUIRE(lattice_member(mat(1, 1, {1}) / Rational(3), vec({Rational(2, 3)})));
    REQUIRE_FALSE(lattice_member(mat(1, 1, {1}) / Rational(3), vec({Rational(1, 2)})));
}

TEST_CASE("lattice membership agrees with bounded enumeration", "[exactalg]")
{
    // Columns of M^T; coefficients in [-10, 10] cover every small target here
    // because M^T has full column rank with small entries.
    const RatMatrix mt = q6_m.transpose();
    std::set<std::vector<long>> reachable;
    for (long a = -10; a <= 10; ++a)
        for (long b = -10; b <= 10; ++b)
            for (long c = -10; c <= 10; ++c) {
                std::vector<long> v(6);
                for (Index i = 0; i < 6; ++i)
                    v[i] = numerator(Rational(mt(i, 0) * a + mt(i, 1) * b + mt(i, 2) * c)).convert_to<long>();
                reachable.insert(v);
            }
    std::mt19937_64 rng(2);
    int hits = 0;
    for (int t = 0; t < 400; ++t) {
        // Half the targets are combinations with small coefficients.
        std::vector<long> v(6);
        if (t % 2 == 0) {
            long a = static_cast<long>(rng() % 5) - 2, b = static_cast<long>(rng() % 5) - 2,
                 c = static_cast<long>(rng() % 5) - 2;
            for (Index i = 0; i < 6; ++i)
                v[i] = numerator(Rational(mt(i, 0) * a + mt(i, 1) * b + mt(i, 2) * c)).convert_to<long>();
        } else {
            for (auto& x : v)
                x = static_cast<long>(rng() % 3) - 1;
        }
        RatVector b(6);
        for (Index i = 0; i < 6; ++i)
            b(i) = v[i];
        const bool expected = reachable.count(v) > 0;
        hits += expected;
        REQUIRE(lattice_member(mt, b) == expected);
    }
    REQUIRE(hits >= 200);
}

TEST_CASE("lattice_equal agrees with mutual membership", "[exactalg]")
{
    REQUIRE(lattice_equal(a_q6, a_q6));
    RatMatrix sheared = a_q6;
    sheared.col(2) += 3 * sheared.col(0);
    sheared.col(4) -= sheared.col(5);
    REQUIRE(lattice_equal(a_q6, sheared));
    RatMatrix perm = a_q6;
    perm.col(0).swap(perm.col(5));
    perm.col(1).swap(perm.col(3));
    REQUIRE(lattice_equal(a_q6, perm));
    REQUIRE_FALSE(lattice_equal(RatMatrix::Identity(2, 2), mat(2, 2, {1, 0, 0, 2})));

    auto mutual = [](const RatMatrix& a, const RatMatrix& b) {
        for (Index j = 0; j < b.cols(); ++j)
            if (!lattice_member(a, b.col(j)))
                return false;
        for (Index j = 0; j < a.cols(); ++j)
            if (!lattice_member(b, a.col(j)))
                return false;
        return true;
    };
    std::mt19937_64 rng(9);
    int equal = 0;
    for (int t = 0; t < 500; ++t) {
        const Index r = 1 + static_cast<Index>(rng() % 3);
        RatMatrix a = random_matrix(rng, r, 1 + static_cast<Index>(rng() % 4), -3, 3);
        RatMatrix b;
        if (t % 2 == 0) {
            // Same lattice: append an integer combination.
            RatMatrix u = random_matrix(rng, a.cols(), 1, -2, 2);
            b.resize(r, a.cols() + 1);
            b << a, RatMatrix(a * u);
        } else {
            b = random_matrix(rng, r, 1 + static_cast<Index>(rng() % 4), -3, 3);
        }
        const bool expected = mutual(a, b);
        equal += expected;
        REQUIRE(lattice_equal(a, b) == expected);
    }
    REQUIRE(equal >= 250);
}

TEST_CASE("lattice_denominator", "[exactalg]")
{
    REQUIRE(lattice_denominator(RatMatrix::Identity(2, 2), vec({Rational(1, 2), Rational(1, 3)})) == 6);
    REQUIRE(lattice_denominator(mat(1, 2, {2, 4}), vec({3})) == 2);
    REQUIRE_THROWS_AS(lattice_denominator(mat(2, 1, {1, 1}), vec({0, 1})), std::invalid_argument);
}

TEST_CASE("maximal minors", "[exactalg]")
{
    auto id = maximal_minors(RatMatrix::Identity(2, 2));
    REQUIRE(id.size() == 1);
    REQUIRE(id[0].columns == IndexSet{0, 1});
    REQUIRE(id[0].det == 1);

    auto ms = maximal_minors(q6_m);
    REQUIRE(ms.size() == 20);
    REQUIRE(ms.front().columns == IndexSet{0, 1, 2});
    REQUIRE(abs(ms.front().det) == 2);
    REQUIRE(ms.back().columns == IndexSet{3, 4, 5});
    REQUIRE(abs(ms.back().det) == 1);

    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        RatMatrix a = random_matrix(rng, 2, 4, -4, 4);
        if (rank(a) < 2)
            continue;
        auto minors = maximal_minors(a);
        REQUIRE(minors.size() == 6);
        for (const auto& m : minors) {
            const Index i = m.columns[0], j = m.columns[1];
            REQUIRE(m.det == a(0, i) * a(1, j) - a(0, j) * a(1, i));
        }
    }
    REQUIRE_THROWS_AS(maximal_minors(mat(2, 2, {1, 1, 1, 1})), std::invalid_argument);
}

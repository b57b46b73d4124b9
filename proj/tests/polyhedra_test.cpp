#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "boxtdi/polyhedra.hpp"

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

using Point = std::vector<Rational>;

Point point(const RatVector& v) { return Point(v.data(), v.data() + v.size()); }

Rational laplace(const RatMatrix& m)
{
    const Index n = m.rows();
    if (n == 0)
        return 1;
    Rational total = 0;
    for (Index j = 0; j < n; ++j) {
        RatMatrix minor(n - 1, n - 1);
        for (Index i = 1; i < n; ++i)
            for (Index k = 0, c = 0; k < n; ++k)
                if (k != j)
                    minor(i - 1, c++) = m(i, k);
        total += (j % 2 ? -1 : 1) * m(0, j) * laplace(minor);
    }
    return total;
}

// Vertices of a polytope: feasible solutions of every nonsingular n x n row
// subsystem, solved by Cramer's rule.
std::set<Point> oracle_vertices(const HPolyhedron& p)
{
    const Index n = p.ambient_dim(), m = p.num_rows();
    std::set<Point> out;
    std::vector<bool> pick(static_cast<std::size_t>(m), false);
    std::fill(pick.begin(), pick.begin() + n, true);
    do {
        IndexSet rows;
        for (Index i = 0; i < m; ++i)
            if (pick[static_cast<std::size_t>(i)])
                rows.push_back(i);
        RatMatrix a = select_rows(p.a, rows);
        Rational d = laplace(a);
        if (d == 0)
            continue;
        RatVector x(n);
        for (Index j = 0; j < n; ++j) {
            RatMatrix aj = a;
            for (Index i = 0; i < n; ++i)
                aj(i, j) = p.b(rows[i]);
            x(j) = laplace(aj) / d;
        }
        bool feasible = true;
        for (Index i = 0; i < m && feasible; ++i)
            feasible = p.a.row(i).dot(x) <= p.b(i);
        if (feasible)
            out.insert(point(x));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

std::set<Point> as_set(const std::vector<RatVector>& vs)
{
    std::set<Point> out;
    for (const auto& v : vs)
        out.insert(point(v));
    return out;
}

Index affine_dim(const std::vector<RatVector>& vs)
{
    if (vs.empty())
        return -1;
    RatMatrix d(vs.front().size(), static_cast<Index>(vs.size()) - 1);
    for (std::size_t i = 1; i < vs.size(); ++i)
        d.col(static_cast<Index>(i) - 1) = vs[i] - vs.front();
    return d.cols() == 0 ? 0 : rank(d);
}

// Bounded random polytope: a box plus random cuts, entries in [-2, 2].
HPolyhedron random_polytope(std::mt19937_64& rng, Index n, Index cuts)
{
    std::uniform_int_distribution<long> coef(-2, 2), rhs(0, 3);
    RatMatrix a(2 * n + cuts, n);
    RatVector b(2 * n + cuts);
    a.topRows(n) = RatMatrix::Identity(n, n);
    a.middleRows(n, n) = -RatMatrix::Identity(n, n);
    for (Index i = 0; i < 2 * n; ++i)
        b(i) = 2;
    for (Index i = 2 * n; i < a.rows(); ++i) {
        for (Index j = 0; j < n; ++j)
            a(i, j) = coef(rng);
        b(i) = rhs(rng);
    }
    return HPolyhedron(a, b);
}

HPolyhedron unit_square()
{
    return HPolyhedron(mat(4, 2, {1, 0, 0, 1, -1, 0, 0, -1}), vec({1, 1, 0, 0}));
}

}  // namespace

TEST_CASE("H-polyhedron validates shapes", "[polyhedra]")
{
    REQUIRE_THROWS_AS(HPolyhedron(RatMatrix(2, 2), RatVector(3)), std::invalid_argument);
    REQUIRE(HPolyhedron(mat(1, 2, {1, 1}), vec({0})).is_cone());
    REQUIRE_FALSE(unit_square().is_cone());
}

TEST_CASE("vertices of the unit square", "[polyhedra]")
{
    VPolyhedron v = h_to_v(unit_square());
    REQUIRE(v.bounded());
    REQUIRE(as_set(v.vertices) ==
            std::set<Point>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    REQUIRE(std::is_sorted(v.vertices.begin(), v.vertices.end(), lex_less));
}

TEST_CASE("unbounded polyhedra have rays and lineality", "[polyhedra]")
{
    // Nonnegative quadrant.
    VPolyhedron q = h_to_v(HPolyhedron(mat(2, 2, {-1, 0, 0, -1}), vec({0, 0})));
    REQUIRE(as_set(q.vertices) == std::set<Point>{{0, 0}});
    REQUIRE(as_set(q.rays) == std::set<Point>{{0, 1}, {1, 0}});
    REQUIRE(q.lineality.empty());

    // Half plane x >= 1.
    VPolyhedron h = h_to_v(HPolyhedron(mat(1, 2, {-1, 0}), vec({-1})));
    REQUIRE(h.lineality.size() == 1);
    REQUIRE(h.lineality[0](0) == 0);
    REQUIRE(h.rays.size() == 1);
    REQUIRE(h.rays[0] == vec({1, 0}));
    REQUIRE(h.vertices.size() == 1);
    REQUIRE(h.vertices[0](0) == 1);
    REQUIRE_FALSE(is_bounded(HPolyhedron(mat(1, 2, {-1, 0}), vec({-1}))));
}

TEST_CASE("empty polyhedra", "[polyhedra]")
{
    HPolyhedron p(mat(2, 1, {1, -1}), vec({0, -1}));
    REQUIRE(is_empty(p));
    REQUIRE(h_to_v(p).empty());
    REQUIRE_THROWS_AS(enumerate_faces(p), std::invalid_argument);
    HPolyhedron back = v_to_h(h_to_v(p));
    REQUIRE(is_empty(back));
}

TEST_CASE("vertex enumeration agrees with the Cramer oracle", "[polyhedra]")
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 120; ++t) {
        const Index n = 2 + t % 2;
        HPolyhedron p = random_polytope(rng, n, 1 + t % 3);
        VPolyhedron v = h_to_v(p);
        INFO("A =\n" << p.a << "\nb = " << p.b.transpose());
        REQUIRE(v.bounded());
        REQUIRE(as_set(v.vertices) == oracle_vertices(p));
        REQUIRE(v.vertices.size() == as_set(v.vertices).size());
    }
}

TEST_CASE("faces agree with tight-set enumeration", "[polyhedra]")
{
    std::mt19937_64 rng(37);
    for (int t = 0; t < 60; ++t) {
        const Index n = 2 + t % 2;
        HPolyhedron p = random_polytope(rng, n, 1 + t % 3);
        const Index m = p.num_rows();
        std::set<Point> verts = oracle_vertices(p);
        std::vector<RatVector> vlist;
        for (const auto& x : verts) {
            RatVector v(n);
            for (Index j = 0; j < n; ++j)
                v(j) = x[static_cast<std::size_t>(j)];
            vlist.push_back(v);
        }
        // Every nonempty face is the set of vertices tight on some row subset.
        std::set<std::vector<std::size_t>> expected;
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<std::size_t> face;
            for (std::size_t k = 0; k < vlist.size(); ++k) {
                bool tight = true;
                for (Index i = 0; i < m && tight; ++i)
                    if (mask >> i & 1)
                        tight = p.a.row(i).dot(vlist[k]) == p.b(i);
                if (tight)
                    face.push_back(k);
            }
            if (!face.empty())
                expected.insert(face);
        }

        std::vector<Face> faces = enumerate_faces(p);
        std::set<std::vector<std::size_t>> got;
        for (const auto& f : faces) {
            std::vector<std::size_t> face;
            for (const auto& v : f.vertices)
                face.push_back(static_cast<std::size_t>(
                    std::distance(verts.begin(), verts.find(point(v)))));
            std::sort(face.begin(), face.end());
            got.insert(face);

            REQUIRE(f.rays.empty());
            REQUIRE(f.dim == affine_dim(f.vertices));
            REQUIRE(f.fdm.rows() == n - f.dim);
            REQUIRE(rank(f.fdm) == f.fdm.rows());
            for (Index i = 0; i < m; ++i) {
                bool all_tight = true;
                for (const auto& v : f.vertices)
                    all_tight = all_tight && p.a.row(i).dot(v) == p.b(i);
                const bool listed = std::binary_search(f.tight_rows.begin(), f.tight_rows.end(), i);
                REQUIRE(listed == all_tight);
            }
            for (const auto& v : f.vertices)
                REQUIRE(f.fdm * v == f.fdm_rhs);
        }
        REQUIRE(got == expected);
        REQUIRE(got.size() == faces.size());
        for (std::size_t i = 1; i < faces.size(); ++i)
            REQUIRE((faces[i - 1].dim < faces[i].dim ||
                     (faces[i - 1].dim == faces[i].dim && faces[i - 1].tight_rows < faces[i].tight_rows)));
    }
}

TEST_CASE("face data of the unit square", "[polyhedra]")
{
    HPolyhedron sq = unit_square();
    std::vector<Face> faces = enumerate_faces(sq);
    REQUIRE(faces.size() == 9);
    REQUIRE(minimal_faces(sq).size() == 4);
    REQUIRE(faces.back().dim == 2);
    REQUIRE(faces.back().tight_rows.empty());

    auto edge = face_containing(sq, {0});
    REQUIRE(edge);
    REQUIRE(edge->dim == 1);
    REQUIRE(edge->tight_rows == IndexSet{0});
    auto [m, d] = face_defining_matrix(sq, *edge);
    REQUIRE(m == mat(1, 2, {1, 0}));
    REQUIRE(d == vec({1}));
    RatMatrix lin = lin_space_basis(sq, *edge);
    REQUIRE(lin.cols() == 1);
    REQUIRE(lin(0, 0) == 0);

    RatVector x = relative_interior_point(*edge);
    REQUIRE(x == vec({1, Rational(1, 2)}));
    REQUIRE_FALSE(face_containing(sq, {0, 2}));
}

TEST_CASE("relative interior points are strict on non-tight rows", "[polyhedra]")
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        HPolyhedron p = random_polytope(rng, 3, 2);
        for (const auto& f : enumerate_faces(p)) {
            RatVector x = relative_interior_point(f);
            for (Index i = 0; i < p.num_rows(); ++i) {
                const bool tight = std::binary_search(f.tight_rows.begin(), f.tight_rows.end(), i);
                if (tight)
                    REQUIRE(p.a.row(i).dot(x) == p.b(i));
                else
                    REQUIRE(p.a.row(i).dot(x) < p.b(i));
            }
        }
    }
}

TEST_CASE("V to H round trip preserves the point set", "[polyhedra]")
{
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<long> c(-4, 4);
    for (int t = 0; t < 60; ++t) {
        const Index n = 2 + t % 2;
        HPolyhedron p = random_polytope(rng, n, 2);
        HPolyhedron back = v_to_h(h_to_v(p));
        REQUIRE(same_point_set(p, back));
        REQUIRE(as_set(h_to_v(back).vertices) == as_set(h_to_v(p).vertices));
        for (int s = 0; s < 20; ++s) {
            RatVector x(n);
            for (Index j = 0; j < n; ++j)
                x(j) = Rational(c(rng), 2);
            REQUIRE(contains(p, x) == contains(back, x));
        }
    }

    // Unbounded: a cone with lineality plus a translate.
    VPolyhedron v;
    v.ambient = 3;
    v.vertices = {vec({1, 0, 0})};
    v.rays = {vec({1, 1, 0})};
    v.lineality = {vec({0, 0, 1})};
    HPolyhedron h = v_to_h(v);
    VPolyhedron again = canonicalize(h_to_v(h));
    REQUIRE(again.lineality.size() == 1);
    REQUIRE(again.rays.size() == 1);
    REQUIRE(again.vertices.size() == 1);
    REQUIRE(contains(h, vec({3, 2, -7})));
    REQUIRE_FALSE(contains(h, vec({0, 0, 0})));
}

TEST_CASE("polar of a cone", "[polyhedra]")
{
    HPolyhedron quadrant(mat(2, 2, {-1, 0, 0, -1}), vec({0, 0}));
    HPolyhedron pq = polar(quadrant);
    REQUIRE(contains(pq, vec({-1, -3})));
    REQUIRE_FALSE(contains(pq, vec({1, 0})));
    REQUIRE(same_point_set(polar(pq), quadrant));
    REQUIRE_THROWS_AS(polar(unit_square()), std::invalid_argument);

    std::mt19937_64 rng(47);
    std::uniform_int_distribution<long> c(-3, 3);
    for (int t = 0; t < 30; ++t) {
        RatMatrix a(3, 3);
        for (Index i = 0; i < 3; ++i)
            for (Index j = 0; j < 3; ++j)
                a(i, j) = c(rng);
        HPolyhedron cone(a, RatVector::Zero(3));
        HPolyhedron pc = polar(cone);
        REQUIRE(same_point_set(polar(pc), cone));
        // Every generator of the polar pairs nonpositively with every point.
        VPolyhedron g = h_to_v(pc);
        VPolyhedron gc = h_to_v(cone);
        for (const auto& y : g.rays)
            for (const auto& x : gc.rays)
                REQUIRE(y.dot(x) <= 0);
    }
}

TEST_CASE("dilation and translation move the vertices", "[polyhedra]")
{
    std::mt19937_64 rng(53);
    for (int t = 0; t < 30; ++t) {
        HPolyhedron p = random_polytope(rng, 2, 2);
        VPolyhedron v = h_to_v(p);
        const Rational k(3, 2);
        RatVector s = vec({1, Rational(-1, 3)});
        std::set<Point> scaled, moved;
        for (const auto& x : v.vertices) {
            scaled.insert(point(RatVector(k * x)));
            moved.insert(point(RatVector(x + s)));
        }
        REQUIRE(as_set(h_to_v(dilate(p, k)).vertices) == scaled);
        REQUIRE(as_set(h_to_v(translate(p, s)).vertices) == moved);
    }
    REQUIRE_THROWS_AS(dilate(unit_square(), 0), std::invalid_argument);
}

TEST_CASE("tangent and normal cones at a vertex", "[polyhedra]")
{
    HPolyhedron sq = unit_square();
    Face corner = *face_containing(sq, {0, 1});
    REQUIRE(corner.dim == 0);
    HPolyhedron tc = tangent_cone(sq, corner);
    REQUIRE(contains(tc, vec({-5, -7})));
    REQUIRE_FALSE(contains(tc, vec({2, 0})));
    VPolyhedron nc = normal_cone(sq, corner);
    REQUIRE(as_set(nc.rays) == std::set<Point>{{0, 1}, {1, 0}});
}

TEST_CASE("dominant adds the nonnegative orthant", "[polyhedra]")
{
    HPolyhedron d = dominant(unit_square());
    REQUIRE(contains(d, vec({5, 9})));
    REQUIRE_FALSE(contains(d, vec({-1, 3})));
    VPolyhedron v = h_to_v(d);
    REQUIRE(as_set(v.vertices) == std::set<Point>{{0, 0}});
}

TEST_CASE("box intersection", "[polyhedra]")
{
    std::mt19937_64 rng(59);
    for (int t = 0; t < 30; ++t) {
        HPolyhedron p = random_polytope(rng, 2, 2);
        std::vector<Bound> l{Integer(-1), std::nullopt}, u{Integer(1), Integer(t % 3)};
        HPolyhedron q = box_intersect(p, l, u);
        for (long x = -6; x <= 6; ++x)
            for (long y = -6; y <= 6; ++y) {
                RatVector z = vec({Rational(x, 2), Rational(y, 2)});
                const bool in_box = z(0) >= -1 && z(0) <= 1 && z(1) <= t % 3;
                REQUIRE(contains(q, z) == (contains(p, z) && in_box));
            }
    }
    std::vector<Bound> l{Integer(2)}, u{Integer(1)};
    REQUIRE_THROWS_AS(box_intersect(HPolyhedron(mat(1, 1, {1}), vec({5})), l, u),
                      std::invalid_argument);
}

TEST_CASE("integrality and minimal integer dilation", "[polyhedra]")
{
    REQUIRE(is_integer(unit_square()));
    REQUIRE(minimal_integer_dilation(unit_square()) == 1);

    // conv(0, (1/2, 0), (0, 1/3)).
    HPolyhedron tri(mat(3, 2, {-1, 0, 0, -1, 2, 3}), vec({0, 0, 1}));
    REQUIRE_FALSE(is_integer(tri));
    REQUIRE(minimal_integer_dilation(tri) == 6);
    REQUIRE(is_integer(dilate(tri, 6)));

    std::mt19937_64 rng(61);
    for (int t = 0; t < 60; ++t) {
        HPolyhedron p = random_polytope(rng, 2 + t % 2, 2);
        Integer l = 1;
        for (const auto& x : oracle_vertices(p))
            for (const auto& c : x)
                l = lcm(l, Integer(denominator(c)));
        REQUIRE(is_integer(p) == (l == 1));
        REQUIRE(minimal_integer_dilation(p) == l);
    }

    // A line: integer iff the affine hull holds an integer point.
    HPolyhedron line(mat(2, 2, {1, 2, -1, -2}), vec({1, -1}));
    REQUIRE(is_integer(line));
    HPolyhedron shifted(mat(2, 2, {2, 4, -2, -4}), vec({1, -1}));
    REQUIRE_FALSE(is_integer(shifted));
    REQUIRE(minimal_integer_dilation(shifted) == 2);
}

#include "boxtdi/polyhedra.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <boost/dynamic_bitset.hpp>

namespace boxtdi {

namespace {

using Bits = boost::dynamic_bitset<>;

IntVector primitive_int(IntVector v)
{
    Integer g = 0;
    for (Index i = 0; i < v.size(); ++i)
        g = gcd(g, v(i));
    if (g > 1)
        for (Index i = 0; i < v.size(); ++i)
            v(i) /= g;
    return v;
}

Integer dot(const IntMatrix& g, Index row, const IntVector& v)
{
    Integer s = 0;
    for (Index j = 0; j < v.size(); ++j)
        if (g(row, j) != 0 && v(j) != 0)
            s += g(row, j) * v(j);
    return s;
}

struct Ray {
    IntVector v;
    Bits tight;
};

struct ConeGenerators {
    std::vector<IntVector> rays;
    std::vector<IntVector> lineality;
};

// Double description for {y : g y <= 0}.
ConeGenerators double_description(const IntMatrix& g, const std::vector<Index>& order)
{
    const Index m = g.rows();
    const Index d = g.cols();
    std::vector<IntVector> lin;
    for (Index j = 0; j < d; ++j) {
        IntVector e = IntVector::Zero(d);
        e(j) = 1;
        lin.push_back(e);
    }
    std::vector<Ray> rays;
    Bits processed(m);

    for (Index k : order) {
        std::size_t pivot = lin.size();
        Integer sp;
        for (std::size_t i = 0; i < lin.size(); ++i) {
            Integer s = dot(g, k, lin[i]);
            if (s != 0) {
                pivot = i;
                sp = s;
                break;
            }
        }
        if (pivot < lin.size()) {
            const IntVector l = lin[pivot];
            const int sgn = sp > 0 ? 1 : -1;
            const Integer asp = abs(sp);
            std::vector<IntVector> next_lin;
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (i == pivot)
                    continue;
                Integer s = dot(g, k, lin[i]);
                if (s == 0)
                    next_lin.push_back(lin[i]);
                else
                    next_lin.push_back(primitive_int(IntVector(lin[i] * sp - l * s)));
            }
            for (auto& r : rays) {
                Integer s = dot(g, k, r.v);
                if (s != 0)
                    r.v = primitive_int(IntVector(r.v * asp - l * (s * sgn)));
                r.tight.set(k);
            }
            Ray fresh{IntVector(l * (-sgn)), processed};
            rays.push_back(std::move(fresh));
            lin = std::move(next_lin);
        } else {
            std::vector<Integer> s(rays.size());
            std::vector<std::size_t> pos, neg;
            for (std::size_t i = 0; i < rays.size(); ++i) {
                s[i] = dot(g, k, rays[i].v);
                if (s[i] > 0)
                    pos.push_back(i);
                else if (s[i] < 0)
                    neg.push_back(i);
            }
            std::vector<Ray> next;
            for (std::size_t i = 0; i < rays.size(); ++i) {
                if (s[i] > 0)
                    continue;
                Ray r = rays[i];
                if (s[i] == 0)
                    r.tight.set(k);
                next.push_back(std::move(r));
            }
            for (std::size_t p : pos) {
                for (std::size_t q : neg) {
                    Bits common = rays[p].tight & rays[q].tight;
                    bool adjacent = true;
                    for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                        if (o == p || o == q)
                            continue;
                        if (common.is_subset_of(rays[o].tight))
                            adjacent = false;
                    }
                    if (!adjacent)
                        continue;
                    IntVector v = rays[q].v * s[p] - rays[p].v * s[q];
                    common.set(k);
                    next.push_back(Ray{primitive_int(std::move(v)), std::move(common)});
                }
            }
            rays = std::move(next);
        }
        processed.set(k);
    }
    ConeGenerators out;
    for (auto& r : rays)
        out.rays.push_back(std::move(r.v));
    out.lineality = std::move(lin);
    return out;
}

IntMatrix integer_rows(const RatMatrix& m)
{
    IntMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i) {
        Integer l = denominator_lcm(m.row(i));
        for (Index j = 0; j < m.cols(); ++j)
            out(i, j) = numerator(Rational(m(i, j) * l));
    }
    return out;
}

RatVector rational_of(const IntVector& v, Index n, const Integer& scale = 1)
{
    RatVector out(n);
    for (Index j = 0; j < n; ++j)
        out(j) = Rational(v(j), scale);
    return out;
}

void sort_unique(std::vector<RatVector>& vs)
{
    std::sort(vs.begin(), vs.end(), lex_less);
    vs.erase(std::unique(vs.begin(), vs.end(),
                         [](const RatVector& x, const RatVector& y) { return x == y; }),
             vs.end());
}

RatVector primitive_nonzero(const RatVector& v)
{
    return primitive(v);
}

// Lineality basis in reduced echelon form and a reducer modulo its span.
struct LinealityReducer {
    RatMatrix basis;  // rows
    IndexSet pivots;

    explicit LinealityReducer(const std::vector<RatVector>& lin, Index n)
    {
        RatMatrix m(static_cast<Index>(lin.size()), n);
        for (std::size_t i = 0; i < lin.size(); ++i)
            m.row(static_cast<Index>(i)) = lin[i].transpose();
        RatMatrix r = rref(m, &pivots);
        basis = r.topRows(static_cast<Index>(pivots.size()));
    }

    RatVector reduce(RatVector v) const
    {
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            const Rational c = v(pivots[i]);
            if (c != 0)
                v -= c * basis.row(static_cast<Index>(i)).transpose();
        }
        return v;
    }
};

VPolyhedron finish(Index n, std::vector<RatVector> vertices, std::vector<RatVector> rays,
                   const std::vector<RatVector>& lineality)
{
    VPolyhedron out;
    out.ambient = n;
    LinealityReducer red(lineality, n);
    for (Index i = 0; i < red.basis.rows(); ++i)
        out.lineality.push_back(primitive(RatVector(red.basis.row(i).transpose())));
    for (auto& v : vertices)
        out.vertices.push_back(red.reduce(v));
    for (auto& r : rays) {
        RatVector x = red.reduce(r);
        if (!x.isZero())
            out.rays.push_back(primitive_nonzero(x));
    }
    sort_unique(out.vertices);
    sort_unique(out.rays);
    return out;
}

struct GeneratorTightness {
    std::vector<Bits> vertex;
    std::vector<Bits> ray;
};

GeneratorTightness tightness(const HPolyhedron& p, const VPolyhedron& v)
{
    const Index m = p.num_rows();
    GeneratorTightness t;
    for (const auto& x : v.vertices) {
        Bits b(m);
        RatVector ax = p.a * x;
        for (Index i = 0; i < m; ++i)
            if (ax(i) == p.b(i))
                b.set(i);
        t.vertex.push_back(std::move(b));
    }
    for (const auto& r : v.rays) {
        Bits b(m);
        RatVector ar = p.a * r;
        for (Index i = 0; i < m; ++i)
            if (ar(i) == 0)
                b.set(i);
        t.ray.push_back(std::move(b));
    }
    return t;
}

IndexSet to_index_set(const Bits& b)
{
    IndexSet out;
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i))
        out.push_back(static_cast<Index>(i));
    return out;
}

// Maximal tight set of the face cut out by the rows in s, if nonempty.
std::optional<Bits> closure(const Bits& s, const GeneratorTightness& t, Index m)
{
    Bits acc(m);
    acc.set();
    bool any_vertex = false;
    for (const auto& b : t.vertex)
        if (s.is_subset_of(b)) {
            acc &= b;
            any_vertex = true;
        }
    if (!any_vertex)
        return std::nullopt;
    for (const auto& b : t.ray)
        if (s.is_subset_of(b))
            acc &= b;
    return acc;
}

Face make_face(const HPolyhedron& p, const VPolyhedron& v, const GeneratorTightness& t,
               const Bits& tight)
{
    Face f;
    f.tight_rows = to_index_set(tight);
    RatMatrix at = select_rows(p.a, f.tight_rows);
    IndexSet basis = row_basis(at);
    for (Index i : basis)
        f.fdm_rows.push_back(f.tight_rows[i]);
    f.fdm = select_rows(p.a, f.fdm_rows);
    f.fdm_rhs = select_entries(p.b, f.fdm_rows);
    f.dim = p.ambient_dim() - static_cast<Index>(f.fdm_rows.size());
    for (std::size_t i = 0; i < v.vertices.size(); ++i)
        if (tight.is_subset_of(t.vertex[i]))
            f.vertices.push_back(v.vertices[i]);
    for (std::size_t i = 0; i < v.rays.size(); ++i)
        if (tight.is_subset_of(t.ray[i]))
            f.rays.push_back(v.rays[i]);
    return f;
}

}  // namespace

HPolyhedron::HPolyhedron(RatMatrix a_, RatVector b_) : a(std::move(a_)), b(std::move(b_))
{
    if (a.rows() != b.size())
        throw std::invalid_argument("constraint matrix and right-hand side lengths differ");
}

bool HPolyhedron::is_cone() const
{
    return b.isZero();
}

bool lex_less(const RatVector& x, const RatVector& y)
{
    const Index n = std::min(x.size(), y.size());
    for (Index i = 0; i < n; ++i) {
        if (x(i) < y(i))
            return true;
        if (y(i) < x(i))
            return false;
    }
    return x.size() < y.size();
}

VPolyhedron h_to_v(const HPolyhedron& p)
{
    const Index n = p.ambient_dim();
    const Index m = p.num_rows();
    // Homogenization: (x, t) with A x - b t <= 0 and -t <= 0.
    RatMatrix hom(m + 1, n + 1);
    hom.topLeftCorner(m, n) = p.a;
    hom.topRightCorner(m, 1) = -p.b;
    hom.bottomRows(1).setZero();
    hom(m, n) = -1;
    std::vector<Index> order{m};
    for (Index i = 0; i < m; ++i)
        order.push_back(i);
    ConeGenerators cone = double_description(integer_rows(hom), order);

    std::vector<RatVector> vertices, rays, lineality;
    for (const auto& r : cone.rays) {
        if (r(n) > 0)
            vertices.push_back(rational_of(r, n, r(n)));
        else
            rays.push_back(rational_of(r, n));
    }
    if (vertices.empty()) {
        VPolyhedron empty;
        empty.ambient = n;
        return empty;
    }
    for (const auto& l : cone.lineality)
        lineality.push_back(rational_of(l, n));
    return finish(n, std::move(vertices), std::move(rays), lineality);
}

HPolyhedron v_to_h(const VPolyhedron& q)
{
    const Index n = q.ambient;
    if (q.vertices.empty()) {
        RatMatrix a = RatMatrix::Zero(1, n);
        RatVector b(1);
        b(0) = -1;
        return HPolyhedron(a, b);
    }
    // Valid inequalities (a, beta): a v <= beta, a r <= 0, a l = 0.
    const Index rows = static_cast<Index>(q.vertices.size() + q.rays.size() + 2 * q.lineality.size());
    RatMatrix dual(rows, n + 1);
    Index i = 0;
    for (const auto& v : q.vertices) {
        dual.row(i).head(n) = v.transpose();
        dual(i++, n) = -1;
    }
    for (const auto& r : q.rays) {
        dual.row(i).head(n) = r.transpose();
        dual(i++, n) = 0;
    }
    for (const auto& l : q.lineality) {
        dual.row(i).head(n) = l.transpose();
        dual(i++, n) = 0;
        dual.row(i).head(n) = -l.transpose();
        dual(i++, n) = 0;
    }
    std::vector<Index> order(static_cast<std::size_t>(rows));
    for (Index k = 0; k < rows; ++k)
        order[k] = k;
    ConeGenerators cone = double_description(integer_rows(dual), order);

    std::vector<RatVector> out_rows;
    std::vector<Rational> out_rhs;
    auto emit = [&](const IntVector& g) {
        out_rows.push_back(rational_of(g, n));
        out_rhs.push_back(Rational(g(n)));
    };
    for (const auto& l : cone.lineality) {
        emit(l);
        emit(IntVector(-l));
    }
    for (const auto& r : cone.rays) {
        bool trivial = true;
        for (Index j = 0; j < n; ++j)
            if (r(j) != 0)
                trivial = false;
        if (!trivial)
            emit(r);
    }
    RatMatrix a(static_cast<Index>(out_rows.size()), n);
    RatVector b(static_cast<Index>(out_rows.size()));
    for (std::size_t k = 0; k < out_rows.size(); ++k) {
        a.row(static_cast<Index>(k)) = out_rows[k].transpose();
        b(static_cast<Index>(k)) = out_rhs[k];
    }
    return HPolyhedron(a, b);
}

VPolyhedron canonicalize(const VPolyhedron& q)
{
    if (q.vertices.empty()) {
        VPolyhedron e;
        e.ambient = q.ambient;
        return e;
    }
    return h_to_v(v_to_h(q));
}

bool contains(const HPolyhedron& p, const RatVector& x)
{
    RatVector ax = p.a * x;
    for (Index i = 0; i < ax.size(); ++i)
        if (ax(i) > p.b(i))
            return false;
    return true;
}

bool is_empty(const HPolyhedron& p)
{
    return h_to_v(p).empty();
}

bool is_bounded(const HPolyhedron& p)
{
    VPolyhedron v = h_to_v(p);
    return v.empty() || v.bounded();
}

bool same_point_set(const HPolyhedron& p, const HPolyhedron& q)
{
    auto inside = [](const VPolyhedron& g, const HPolyhedron& h) {
        for (const auto& v : g.vertices)
            if (!contains(h, v))
                return false;
        const RatVector zero = RatVector::Zero(h.ambient_dim());
        auto direction_ok = [&](const RatVector& r) {
            RatVector ar = h.a * r;
            for (Index i = 0; i < ar.size(); ++i)
                if (ar(i) > 0)
                    return false;
            return true;
        };
        for (const auto& r : g.rays)
            if (!direction_ok(r))
                return false;
        for (const auto& l : g.lineality)
            if (!direction_ok(l) || !direction_ok(RatVector(-l)))
                return false;
        return true;
    };
    VPolyhedron gp = h_to_v(p);
    VPolyhedron gq = h_to_v(q);
    return inside(gp, q) && inside(gq, p);
}

std::vector<Face> enumerate_faces(const HPolyhedron& p)
{
    return enumerate_faces(p, h_to_v(p));
}

std::vector<Face> enumerate_faces(const HPolyhedron& p, const VPolyhedron& v)
{
    if (v.empty())
        throw std::invalid_argument("faces of an empty polyhedron");
    const Index m = p.num_rows();
    const GeneratorTightness t = tightness(p, v);

    std::set<Bits> seen;
    std::vector<Bits> queue;
    auto top = closure(Bits(m), t, m);
    seen.insert(*top);
    queue.push_back(*top);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Bits cur = queue[head];
        for (Index i = 0; i < m; ++i) {
            if (cur.test(i))
                continue;
            Bits s = cur;
            s.set(i);
            auto c = closure(s, t, m);
            if (c && seen.insert(*c).second)
                queue.push_back(*c);
        }
    }
    std::vector<Face> faces;
    for (const auto& b : queue)
        faces.push_back(make_face(p, v, t, b));
    std::sort(faces.begin(), faces.end(), [](const Face& x, const Face& y) {
        if (x.dim != y.dim)
            return x.dim < y.dim;
        return x.tight_rows < y.tight_rows;
    });
    return faces;
}

std::vector<Face> minimal_faces(const HPolyhedron& p)
{
    std::vector<Face> faces = enumerate_faces(p);
    const Index least = faces.front().dim;
    faces.erase(std::remove_if(faces.begin(), faces.end(),
                               [&](const Face& f) { return f.dim != least; }),
                faces.end());
    return faces;
}

std::optional<Face> face_containing(const HPolyhedron& p, const IndexSet& rows)
{
    VPolyhedron v = h_to_v(p);
    if (v.empty())
        return std::nullopt;
    const Index m = p.num_rows();
    const GeneratorTightness t = tightness(p, v);
    Bits s(m);
    for (Index i : rows)
        s.set(i);
    auto c = closure(s, t, m);
    if (!c)
        return std::nullopt;
    return make_face(p, v, t, *c);
}

std::pair<RatMatrix, RatVector> face_defining_matrix(const HPolyhedron&, const Face& f)
{
    return {f.fdm, f.fdm_rhs};
}

RatMatrix lin_space_basis(const HPolyhedron& p, const Face& f)
{
    return kernel_basis(select_rows(p.a, f.tight_rows));
}

RatVector relative_interior_point(const Face& f)
{
    RatVector x = RatVector::Zero(f.vertices.front().size());
    for (const auto& v : f.vertices)
        x += v;
    x /= Rational(static_cast<long>(f.vertices.size()));
    for (const auto& r : f.rays)
        x += r;
    return x;
}

HPolyhedron tangent_cone(const HPolyhedron& p, const Face& f)
{
    return HPolyhedron(select_rows(p.a, f.tight_rows), select_entries(p.b, f.tight_rows));
}

VPolyhedron normal_cone(const HPolyhedron& p, const Face& f)
{
    VPolyhedron v;
    v.ambient = p.ambient_dim();
    v.vertices.push_back(RatVector::Zero(v.ambient));
    for (Index i : f.tight_rows) {
        RatVector r = p.a.row(i).transpose();
        if (!r.isZero())
            v.rays.push_back(r);
    }
    return canonicalize(v);
}

HPolyhedron polar(const HPolyhedron& c)
{
    if (!c.is_cone())
        throw std::invalid_argument("polar needs a cone {x : Ax <= 0}");
    VPolyhedron v;
    v.ambient = c.ambient_dim();
    v.vertices.push_back(RatVector::Zero(v.ambient));
    for (Index i = 0; i < c.num_rows(); ++i) {
        RatVector r = c.a.row(i).transpose();
        if (!r.isZero())
            v.rays.push_back(r);
    }
    return v_to_h(v);
}

HPolyhedron dilate(const HPolyhedron& p, const Rational& k)
{
    if (k <= 0)
        throw std::invalid_argument("dilation factor must be positive");
    return HPolyhedron(p.a, p.b * k);
}

HPolyhedron translate(const HPolyhedron& p, const RatVector& t)
{
    if (t.size() != p.ambient_dim())
        throw std::invalid_argument("translation vector has the wrong length");
    return HPolyhedron(p.a, RatVector(p.b + p.a * t));
}

HPolyhedron dominant(const HPolyhedron& p)
{
    VPolyhedron v = h_to_v(p);
    if (v.empty())
        return p;
    for (Index i = 0; i < p.ambient_dim(); ++i) {
        RatVector e = RatVector::Zero(p.ambient_dim());
        e(i) = 1;
        v.rays.push_back(e);
    }
    return v_to_h(v);
}

HPolyhedron box_intersect(const HPolyhedron& p, const std::vector<Bound>& l,
                          const std::vector<Bound>& u)
{
    const Index n = p.ambient_dim();
    if (static_cast<Index>(l.size()) != n || static_cast<Index>(u.size()) != n)
        throw std::invalid_argument("box bounds have the wrong length");
    std::vector<std::pair<RatVector, Rational>> extra;
    for (Index i = 0; i < n; ++i) {
        if (l[i] && u[i] && *l[i] > *u[i])
            throw std::invalid_argument("crossed box bounds in coordinate " + std::to_string(i));
        if (u[i]) {
            RatVector r = RatVector::Zero(n);
            r(i) = 1;
            extra.emplace_back(r, Rational(*u[i]));
        }
        if (l[i]) {
            RatVector r = RatVector::Zero(n);
            r(i) = -1;
            extra.emplace_back(r, Rational(-*l[i]));
        }
    }
    const Index m = p.num_rows();
    RatMatrix a(m + static_cast<Index>(extra.size()), n);
    RatVector b(a.rows());
    a.topRows(m) = p.a;
    b.head(m) = p.b;
    for (std::size_t k = 0; k < extra.size(); ++k) {
        a.row(m + static_cast<Index>(k)) = extra[k].first.transpose();
        b(m + static_cast<Index>(k)) = extra[k].second;
    }
    return HPolyhedron(a, b);
}

bool is_integer(const HPolyhedron& p)
{
    for (const auto& f : minimal_faces(p))
        if (!lattice_member(f.fdm, f.fdm_rhs))
            return false;
    return true;
}

Integer minimal_integer_dilation(const HPolyhedron& p)
{
    Integer d = 1;
    for (const auto& f : minimal_faces(p))
        d = lcm(d, lattice_denominator(f.fdm, f.fdm_rhs));
    return d;
}

}  // namespace boxtdi

#include "boxtdi/instances.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

namespace boxtdi {

namespace {

IndexSet sorted(IndexSet s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool subset_of(const IndexSet& a, const IndexSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<IndexSet> minimal_sets(std::vector<IndexSet> sets)
{
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<IndexSet> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < sets.size() && minimal; ++j)
            if (i != j && subset_of(sets[j], sets[i]))
                minimal = false;
        if (minimal)
            out.push_back(sets[i]);
    }
    return out;
}

// Element e leaves the ground set; larger elements shift down.
IndexSet drop_element(const IndexSet& s, Index e)
{
    IndexSet out;
    for (Index x : s)
        if (x != e)
            out.push_back(x > e ? x - 1 : x);
    return out;
}

std::vector<IndexSet> canonical_form(const Clutter& c)
{
    std::vector<Index> perm(static_cast<std::size_t>(c.ground));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<IndexSet> best;
    bool first = true;
    do {
        std::vector<IndexSet> mapped;
        for (const auto& m : c.members) {
            IndexSet s;
            for (Index x : m)
                s.push_back(perm[x]);
            mapped.push_back(sorted(std::move(s)));
        }
        std::sort(mapped.begin(), mapped.end());
        if (first || mapped < best) {
            best = std::move(mapped);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

RatVector incidence(const IndexSet& s, Index n)
{
    RatVector v = RatVector::Zero(n);
    for (Index i : s)
        v(i) = 1;
    return v;
}

HPolyhedron rows_to_polyhedron(const std::vector<RatVector>& rows, const std::vector<Rational>& rhs,
                               Index n)
{
    RatMatrix a(static_cast<Index>(rows.size()), n);
    RatVector b(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        a.row(static_cast<Index>(i)) = rows[i].transpose();
        b(static_cast<Index>(i)) = rhs[i];
    }
    return HPolyhedron(a, b);
}

Index edge_index(const Graph& g, Index u, Index v)
{
    if (u > v)
        std::swap(u, v);
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (g.edges[i] == Edge{u, v})
            return static_cast<Index>(i);
    return -1;
}

bool connected_subset(const Graph& g, std::uint64_t mask)
{
    if (mask == 0)
        return false;
    std::uint64_t seen = mask & (~mask + 1);
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [u, v] : g.edges) {
            const std::uint64_t bu = std::uint64_t{1} << u, bv = std::uint64_t{1} << v;
            if (!(mask & bu) || !(mask & bv))
                continue;
            if ((seen & bu) && !(seen & bv)) {
                seen |= bv;
                grew = true;
            } else if ((seen & bv) && !(seen & bu)) {
                seen |= bu;
                grew = true;
            }
        }
    }
    return seen == mask;
}

void require_small(const Graph& g, Index max_vertices)
{
    if (g.vertices > max_vertices)
        throw std::invalid_argument("graph too large for exhaustive enumeration");
}

void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r, std::uint64_t p,
                   std::uint64_t x, std::vector<IndexSet>& out)
{
    if (p == 0 && x == 0) {
        IndexSet clique;
        for (Index i = 0; i < 64; ++i)
            if (r & (std::uint64_t{1} << i))
                clique.push_back(i);
        out.push_back(std::move(clique));
        return;
    }
    // Pivot: the vertex of p | x with the most neighbours in p.
    Index pivot = -1;
    int best = -1;
    for (Index u = 0; u < static_cast<Index>(adj.size()); ++u) {
        if (!((p | x) & (std::uint64_t{1} << u)))
            continue;
        int c = __builtin_popcountll(p & adj[u]);
        if (c > best) {
            best = c;
            pivot = u;
        }
    }
    std::uint64_t candidates = p & ~adj[pivot];
    for (Index v = 0; v < static_cast<Index>(adj.size()); ++v) {
        const std::uint64_t bv = std::uint64_t{1} << v;
        if (!(candidates & bv))
            continue;
        bron_kerbosch(adj, r | bv, p & adj[v], x & adj[v], out);
        p &= ~bv;
        x |= bv;
    }
}

Graph from_edges(Index n, std::initializer_list<Edge> edges)
{
    return make_graph(n, std::vector<Edge>(edges));
}

}  // namespace

// ---------------------------------------------------------------------------
// Clutters
// ---------------------------------------------------------------------------

Clutter make_clutter(Index ground, std::vector<IndexSet> members)
{
    if (ground < 0)
        throw std::invalid_argument("negative ground set size");
    for (auto& m : members) {
        m = sorted(std::move(m));
        for (Index x : m)
            if (x < 0 || x >= ground)
                throw std::invalid_argument("clutter element " + std::to_string(x)
                                            + " outside the ground set");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j)
            if (i != j && subset_of(members[i], members[j]))
                throw std::invalid_argument("clutter member " + std::to_string(j)
                                            + " contains member " + std::to_string(i));
    return Clutter{ground, std::move(members)};
}

RatMatrix incidence_matrix(const Clutter& c)
{
    RatMatrix a = RatMatrix::Zero(static_cast<Index>(c.members.size()), c.ground);
    for (std::size_t i = 0; i < c.members.size(); ++i)
        for (Index x : c.members[i])
            a(static_cast<Index>(i), x) = 1;
    return a;
}

HPolyhedron covering_polyhedron(const Clutter& c)
{
    const Index n = c.ground;
    std::vector<RatVector> rows;
    std::vector<Rational> rhs;
    for (const auto& m : c.members) {
        rows.push_back(-incidence(m, n));
        rhs.emplace_back(-1);
    }
    for (Index i = 0; i < n; ++i) {
        RatVector r = RatVector::Zero(n);
        r(i) = -1;
        rows.push_back(r);
        rhs.emplace_back(0);
    }
    return rows_to_polyhedron(rows, rhs, n);
}

Clutter q6()
{
    // Edges of K4 in order 01, 02, 03, 12, 13, 23.
    return make_clutter(6, {{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}});
}

Clutter q7()
{
    return make_clutter(7, {{0, 1, 3, 6}, {0, 2, 4, 6}, {1, 2, 5, 6}, {3, 4, 5, 6},
                            {0, 5, 6}, {1, 4, 6}, {2, 3, 6}});
}

Clutter delete_element(const Clutter& c, Index e)
{
    if (e < 0 || e >= c.ground)
        throw std::invalid_argument("element " + std::to_string(e) + " outside the ground set");
    std::vector<IndexSet> members;
    for (const auto& m : c.members)
        if (!std::binary_search(m.begin(), m.end(), e))
            members.push_back(drop_element(m, e));
    return make_clutter(c.ground - 1, std::move(members));
}

Clutter contract_element(const Clutter& c, Index e)
{
    if (e < 0 || e >= c.ground)
        throw std::invalid_argument("element " + std::to_string(e) + " outside the ground set");
    std::vector<IndexSet> members;
    for (const auto& m : c.members)
        members.push_back(drop_element(m, e));
    return make_clutter(c.ground - 1, minimal_sets(std::move(members)));
}

bool has_minor(const Clutter& c, const Clutter& target)
{
    if (c.ground > 8)
        throw std::invalid_argument("has_minor supports ground sets of at most 8 elements");
    if (target.ground > c.ground)
        return false;
    std::set<std::vector<IndexSet>> level{canonical_form(c)};
    for (Index g = c.ground; g > target.ground; --g) {
        std::set<std::vector<IndexSet>> next;
        for (const auto& members : level) {
            const Clutter cur{g, members};
            for (Index e = 0; e < g; ++e) {
                next.insert(canonical_form(delete_element(cur, e)));
                next.insert(canonical_form(contract_element(cur, e)));
            }
        }
        level = std::move(next);
    }
    return level.count(canonical_form(target)) > 0;
}

bool is_binary(const Clutter& c)
{
    auto symdiff = [](const IndexSet& a, const IndexSet& b) {
        IndexSet out;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                      std::back_inserter(out));
        return out;
    };
    const std::size_t k = c.members.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j)
            for (std::size_t l = j; l < k; ++l) {
                IndexSet s = symdiff(symdiff(c.members[i], c.members[j]), c.members[l]);
                bool found = false;
                for (const auto& m : c.members)
                    if (subset_of(m, s)) {
                        found = true;
                        break;
                    }
                if (!found)
                    return false;
            }
    return true;
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

Graph make_graph(Index vertices, std::vector<Edge> edges)
{
    if (vertices < 0 || vertices > 64)
        throw std::invalid_argument("graphs are limited to 64 vertices");
    std::set<Edge> seen;
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertices || v >= vertices)
            throw std::invalid_argument("edge endpoint outside the vertex range");
        if (u == v)
            throw std::invalid_argument("loop at vertex " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw std::invalid_argument("repeated edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    return Graph{vertices, std::move(edges)};
}

Graph complete_graph(Index n)
{
    std::vector<Edge> edges;
    for (Index u = 0; u < n; ++u)
        for (Index v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return make_graph(n, std::move(edges));
}

std::vector<IndexSet> neighbours(const Graph& g)
{
    std::vector<IndexSet> nb(static_cast<std::size_t>(g.vertices));
    for (const auto& [u, v] : g.edges) {
        nb[u].push_back(v);
        nb[v].push_back(u);
    }
    for (auto& s : nb)
        std::sort(s.begin(), s.end());
    return nb;
}

bool is_connected(const Graph& g)
{
    if (g.vertices <= 1)
        return true;
    std::uint64_t all = g.vertices == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.vertices) - 1;
    return connected_subset(g, all);
}

Graph remove_vertex(const Graph& g, Index v)
{
    if (v < 0 || v >= g.vertices)
        throw std::invalid_argument("vertex outside the graph");
    std::vector<Edge> edges;
    for (auto [a, b] : g.edges) {
        if (a == v || b == v)
            continue;
        edges.emplace_back(a > v ? a - 1 : a, b > v ? b - 1 : b);
    }
    return make_graph(g.vertices - 1, std::move(edges));
}

Graph remove_edge(const Graph& g, Index edge)
{
    Graph out = g;
    out.edges.erase(out.edges.begin() + edge);
    return out;
}

std::vector<IndexSet> maximal_cliques(const Graph& g)
{
    const Index n = g.vertices;
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : g.edges) {
        adj[u] |= std::uint64_t{1} << v;
        adj[v] |= std::uint64_t{1} << u;
    }
    std::vector<IndexSet> out;
    if (n == 0)
        return out;
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    bron_kerbosch(adj, 0, all, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

HPolyhedron stable_set_polytope(const Graph& g)
{
    return stable_set_polytope(g, maximal_cliques(g));
}

HPolyhedron stable_set_polytope(const Graph& g, const std::vector<IndexSet>& cliques)
{
    const Index n = g.vertices;
    std::vector<RatVector> rows;
    std::vector<Rational> rhs;
    for (const auto& k : cliques) {
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::size_t j = i + 1; j < k.size(); ++j)
                if (edge_index(g, k[i], k[j]) < 0)
                    throw std::invalid_argument("clique list contains a non-adjacent pair");
        rows.push_back(incidence(k, n));
        rhs.emplace_back(1);
    }
    for (Index i = 0; i < n; ++i) {
        RatVector r = RatVector::Zero(n);
        r(i) = -1;
        rows.push_back(r);
        rhs.emplace_back(0);
    }
    return rows_to_polyhedron(rows, rhs, n);
}

Graph unfold_vertex(const Graph& g, Index v, const IndexSet& x_in, const IndexSet& y_in)
{
    const auto nb = neighbours(g);
    if (v < 0 || v >= g.vertices)
        throw std::invalid_argument("vertex outside the graph");
    const IndexSet x = sorted(x_in), y = sorted(y_in);
    IndexSet uni;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(uni));
    if (uni != nb[v])
        throw std::invalid_argument("X and Y must cover exactly the neighbourhood of the vertex");
    IndexSet only_x, only_y;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(only_x));
    std::set_difference(y.begin(), y.end(), x.begin(), x.end(), std::back_inserter(only_y));
    for (Index a : only_x)
        for (Index b : only_y)
            if (edge_index(g, a, b) >= 0)
                throw std::invalid_argument("edge " + std::to_string(std::min(a, b)) + "-"
                                            + std::to_string(std::max(a, b))
                                            + " joins X \\ Y and Y \\ X");
    Graph h = remove_vertex(g, v);
    auto shift = [v](Index u) { return u > v ? u - 1 : u; };
    const Index nx = h.vertices, ny = nx + 1, nz = nx + 2;
    std::vector<Edge> edges = h.edges;
    for (Index a : x)
        edges.emplace_back(shift(a), nx);
    for (Index b : y)
        edges.emplace_back(shift(b), ny);
    edges.emplace_back(nx, nz);
    edges.emplace_back(ny, nz);
    return make_graph(h.vertices + 3, std::move(edges));
}

std::vector<IndexSet> circuits(const Graph& g)
{
    const Index m = static_cast<Index>(g.edges.size());
    if (m > 24)
        throw std::invalid_argument("too many edges for circuit enumeration");
    std::vector<IndexSet> out;
    for (Index k = 3; k <= std::min<Index>(m, g.vertices); ++k) {
        IndexSet s = first_combination(k);
        do {
            std::vector<int> degree(static_cast<std::size_t>(g.vertices), 0);
            std::uint64_t touched = 0;
            for (Index e : s) {
                ++degree[g.edges[e].first];
                ++degree[g.edges[e].second];
                touched |= std::uint64_t{1} << g.edges[e].first;
                touched |= std::uint64_t{1} << g.edges[e].second;
            }
            bool cycle = std::all_of(degree.begin(), degree.end(), [](int d) { return d == 0 || d == 2; });
            if (!cycle)
                continue;
            Graph sub{g.vertices, {}};
            for (Index e : s)
                sub.edges.push_back(g.edges[e]);
            if (connected_subset(sub, touched))
                out.push_back(s);
        } while (next_combination(s, m));
    }
    return out;
}

std::vector<IndexSet> bonds(const Graph& g)
{
    require_small(g, 20);
    if (!is_connected(g))
        throw std::invalid_argument("bonds are computed for connected graphs only");
    const Index n = g.vertices;
    std::set<IndexSet> found;
    if (n >= 2) {
        const std::uint64_t all = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)); ++rest) {
            const std::uint64_t side = 1 | (rest << 1);
            if (side == all)
                continue;
            if (!connected_subset(g, side) || !connected_subset(g, all & ~side))
                continue;
            IndexSet cut;
            for (std::size_t e = 0; e < g.edges.size(); ++e) {
                const bool a = side >> g.edges[e].first & 1;
                const bool b = side >> g.edges[e].second & 1;
                if (a != b)
                    cut.push_back(static_cast<Index>(e));
            }
            found.insert(cut);
        }
    }
    std::vector<IndexSet> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

CircuitCone circuit_cone(const Graph& g)
{
    const Index m = static_cast<Index>(g.edges.size());
    CircuitCone out;
    out.generators.ambient = m;
    out.generators.vertices.push_back(RatVector::Zero(m));
    for (const auto& c : circuits(g))
        out.generators.rays.push_back(incidence(c, m));

    std::vector<RatVector> rows;
    std::vector<Rational> rhs;
    for (const auto& d : bonds(g))
        for (Index e : d) {
            RatVector r = RatVector::Zero(m);
            for (Index f : d)
                r(f) = f == e ? 1 : -1;
            rows.push_back(r);
            rhs.emplace_back(0);
        }
    for (Index i = 0; i < m; ++i) {
        RatVector r = RatVector::Zero(m);
        r(i) = -1;
        rows.push_back(r);
        rhs.emplace_back(0);
    }
    out.inequalities = rows_to_polyhedron(rows, rhs, m);
    return out;
}

HPolyhedron conservative_cone(const Graph& g)
{
    const Index m = static_cast<Index>(g.edges.size());
    std::vector<RatVector> rows;
    std::vector<Rational> rhs;
    for (const auto& c : circuits(g)) {
        rows.push_back(-incidence(c, m));
        rhs.emplace_back(0);
    }
    return rows_to_polyhedron(rows, rhs, m);
}

bool is_series_parallel(const Graph& g)
{
    std::vector<Edge> edges = g.edges;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Edge> next;
        std::set<Edge> seen;
        for (auto [u, v] : edges) {
            if (u == v) {
                changed = true;
                continue;
            }
            if (u > v)
                std::swap(u, v);
            if (!seen.insert({u, v}).second) {
                changed = true;
                continue;
            }
            next.emplace_back(u, v);
        }
        edges = std::move(next);

        std::map<Index, std::vector<std::size_t>> incident;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            incident[edges[i].first].push_back(i);
            incident[edges[i].second].push_back(i);
        }
        for (const auto& [w, ids] : incident) {
            if (ids.size() == 1) {
                edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(ids[0]));
                changed = true;
                break;
            }
            if (ids.size() == 2) {
                auto other = [w](const Edge& e) { return e.first == w ? e.second : e.first; };
                const Index a = other(edges[ids[0]]);
                const Index b = other(edges[ids[1]]);
                edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(ids[1]));
                edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(ids[0]));
                edges.emplace_back(a, b);
                changed = true;
                break;
            }
        }
    }
    return edges.empty();
}

// ---------------------------------------------------------------------------
// Named instances
// ---------------------------------------------------------------------------

Graph s3()
{
    // a b c d e v
    return from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {1, 5}, {2, 5}, {2, 4}, {3, 5}, {4, 5}});
}

Graph s3_unfolded()
{
    return unfold_vertex(s3(), 5, {1, 2, 4}, {1, 2, 3});
}

Graph s3_unfolded_variant()
{
    return unfold_vertex(s3(), 5, {2, 4}, {1, 2, 3});
}

HPolyhedron from_vertices(const std::vector<RatVector>& vertices)
{
    if (vertices.empty())
        throw std::invalid_argument("from_vertices needs at least one point");
    VPolyhedron v;
    v.ambient = vertices.front().size();
    v.vertices = vertices;
    return v_to_h(v);
}

namespace {

RatVector vec(std::initializer_list<long> xs)
{
    RatVector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (long x : xs)
        v(i++) = x;
    return v;
}

}  // namespace

HPolyhedron p5()
{
    return from_vertices({vec({0, 0, 0, 0, 0}), vec({1, 1, 0, 0, 0}), vec({1, 0, 1, 0, 0}),
                          vec({1, 0, 0, 1, 0}), vec({1, 1, 1, 1, 1})});
}

HPolyhedron wide_triangle()
{
    return from_vertices({vec({2, -1}), vec({-2, -1}), vec({0, 1})});
}

HPolyhedron narrow_triangle()
{
    return from_vertices({vec({1, 1}), vec({-1, 1}), vec({0, -1})});
}

HPolyhedron idp_simplex()
{
    RatMatrix a(4, 3);
    a << 1, -1, -1, -1, 1, -1, -1, -1, 1, 1, 1, 1;
    RatVector b(4);
    b << 0, 0, 0, 2;
    return HPolyhedron(a, b);
}

std::vector<NamedInstance> named_instances()
{
    return {
        {"q6", "covering polyhedron of the triangles of K4"},
        {"q7", "covering polyhedron of Q7"},
        {"p5", "conv(0, 11000, 10100, 10010, 11111)"},
        {"s3", "stable set polytope of S3"},
        {"s3-unfolded", "stable set polytope of S3 with v unfolded, X = {b,c,e}, Y = {b,c,d}"},
        {"s3-unfolded-variant", "as s3-unfolded with X = {c,e}"},
        {"s3-unfolded-minus-z", "stable set polytope of the unfolded graph without z"},
        {"k4-cons-cone", "cone of conservative functions of K4"},
        {"k4-circuit-cone", "circuit cone of K4 (Seymour inequalities)"},
        {"idp-simplex", "conv(000, 110, 101, 011)"},
        {"wide-triangle", "conv((2,-1), (-2,-1), (0,1))"},
        {"narrow-triangle", "conv((1,1), (-1,1), (0,-1))"},
    };
}

HPolyhedron named_polyhedron(const std::string& name)
{
    if (name == "q6")
        return covering_polyhedron(q6());
    if (name == "q7")
        return covering_polyhedron(q7());
    if (name == "p5")
        return p5();
    if (name == "s3")
        return stable_set_polytope(s3());
    if (name == "s3-unfolded")
        return stable_set_polytope(s3_unfolded());
    if (name == "s3-unfolded-variant")
        return stable_set_polytope(s3_unfolded_variant());
    if (name == "s3-unfolded-minus-z")
        return stable_set_polytope(remove_vertex(s3_unfolded(), 7));
    if (name == "k4-cons-cone")
        return conservative_cone(complete_graph(4));
    if (name == "k4-circuit-cone")
        return circuit_cone(complete_graph(4)).inequalities;
    if (name == "idp-simplex")
        return idp_simplex();
    if (name == "wide-triangle")
        return wide_triangle();
    if (name == "narrow-triangle")
        return narrow_triangle();
    throw std::invalid_argument("unknown instance '" + name + "'");
}

}  // namespace boxtdi

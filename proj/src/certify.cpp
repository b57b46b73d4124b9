#include "boxtdi/certify.hpp"

#include <algorithm>
#include <random>

namespace boxtdi {

namespace {

IndexSet complement(const IndexSet& s, Index n)
{
    IndexSet out;
    std::size_t k = 0;
    for (Index i = 0; i < n; ++i) {
        if (k < s.size() && s[k] == i)
            ++k;
        else
            out.push_back(i);
    }
    return out;
}

// Advances an odometer over the integer ranges [lo_i, hi_i]; false when done.
bool next_point(std::vector<Integer>& p, const std::vector<Integer>& lo, const std::vector<Integer>& hi)
{
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] < hi[i]) {
            ++p[i];
            return true;
        }
        p[i] = lo[i];
    }
    return false;
}

Integer round_of(const Rational& q)
{
    return floor_of(q + Rational(1, 2));
}

FaceCertificate face_certificate(const Face& f)
{
    FaceCertificate c{f, {}, RatMatrix(0, f.fdm.cols())};
    if (f.fdm.rows() == 0)
        return c;
    c.basis = *first_column_basis(f.fdm);
    c.normalized = *inverse(select_columns(f.fdm, c.basis)) * f.fdm;
    return c;
}

RatMatrix generator_rows(const std::vector<RatVector>& gens, Index n)
{
    RatMatrix m(static_cast<Index>(gens.size()), n);
    for (std::size_t i = 0; i < gens.size(); ++i)
        m.row(static_cast<Index>(i)) = gens[i].transpose();
    return m;
}

}  // namespace

BoxTDICertificate is_box_tdi(const HPolyhedron& p, bool cross_check)
{
    BoxTDICertificate cert;
    bool agrees = true;
    for (const Face& f : enumerate_faces(p)) {
        EquimodularVerdict v = is_equimodular(f.fdm);
        if (cross_check) {
            RatMatrix lin_rows = lin_space_basis(p, f).transpose();
            if (is_equimodular(lin_rows).is_equimodular != v.is_equimodular)
                agrees = false;
        }
        if (!v.is_equimodular) {
            cert.verdict = false;
            cert.faces.clear();
            cert.refutation = BoxTDIRefutation{f, v.refutation->first, v.refutation->second};
            break;
        }
        cert.faces.push_back(face_certificate(f));
    }
    if (!cert.refutation)
        cert.verdict = true;
    if (cross_check)
        cert.cross_check_agrees = agrees;
    return cert;
}

BoxIntegerVerdict is_box_integer(const HPolyhedron& p, long radius)
{
    const VPolyhedron gens = h_to_v(p);
    if (gens.empty())
        throw std::invalid_argument("box-integrality of an empty polyhedron");
    const Index n = p.ambient_dim();
    const bool bounded = gens.bounded();

    std::vector<Integer> lo(n), hi(n);
    for (Index i = 0; i < n; ++i) {
        Rational mn = gens.vertices.front()(i), mx = mn;
        for (const auto& v : gens.vertices) {
            mn = std::min(mn, Rational(v(i)));
            mx = std::max(mx, Rational(v(i)));
        }
        if (bounded) {
            lo[i] = ceil_of(mn);
            hi[i] = floor_of(mx);
        } else {
            lo[i] = floor_of(mn) - radius;
            hi[i] = ceil_of(mx) + radius;
        }
    }

    BoxIntegerVerdict out;
    for (const Face& f : enumerate_faces(p, gens)) {
        const Index r = f.fdm.rows();
        if (r == 0)
            continue;
        if (is_integral(f.fdm) && is_integral(f.fdm_rhs) && is_unimodular(f.fdm)) {
            // D^-1 (d - M_I p) is integral for every integer p.
            continue;
        }
        IndexSet basis = first_combination(r);
        do {
            RatMatrix d = select_columns(f.fdm, basis);
            auto dinv = inverse(d);
            if (!dinv)
                continue;
            const IndexSet fixed = complement(basis, n);
            const RatMatrix mi = select_columns(f.fdm, fixed);
            std::vector<Integer> flo, fhi, point;
            bool nonempty = true;
            for (Index i : fixed) {
                flo.push_back(lo[i]);
                fhi.push_back(hi[i]);
                if (lo[i] > hi[i])
                    nonempty = false;
            }
            if (!nonempty)
                continue;
            point = flo;
            do {
                RatVector pv(static_cast<Index>(fixed.size()));
                for (std::size_t i = 0; i < fixed.size(); ++i)
                    pv(static_cast<Index>(i)) = Rational(point[i]);
                RatVector xb = *dinv * (f.fdm_rhs - mi * pv);
                if (is_integral(xb))
                    continue;
                RatVector x(n);
                for (std::size_t i = 0; i < basis.size(); ++i)
                    x(basis[i]) = xb(static_cast<Index>(i));
                for (std::size_t i = 0; i < fixed.size(); ++i)
                    x(fixed[i]) = pv(static_cast<Index>(i));
                if (!contains(p, x))
                    continue;
                FractionalVertexWitness w;
                w.k = 1;
                w.l.assign(n, std::nullopt);
                w.u.assign(n, std::nullopt);
                for (std::size_t i = 0; i < fixed.size(); ++i) {
                    w.l[fixed[i]] = point[i];
                    w.u[fixed[i]] = point[i];
                }
                w.vertex = x;
                out.box_integer = false;
                out.exact = true;
                out.witness = std::move(w);
                return out;
            } while (next_point(point, flo, fhi));
        } while (next_combination(basis, n));
    }
    out.box_integer = true;
    out.exact = bounded;
    return out;
}

bool validate_witness(const HPolyhedron& p, const FractionalVertexWitness& w)
{
    if (is_integral(w.vertex))
        return false;
    const HPolyhedron kp = dilate(p, Rational(w.k));
    if (!is_integer(kp))
        return false;
    const VPolyhedron cut = h_to_v(box_intersect(kp, w.l, w.u));
    if (!cut.lineality.empty())
        return false;
    return std::find(cut.vertices.begin(), cut.vertices.end(), w.vertex) != cut.vertices.end();
}

bool is_fully_box_integer(const HPolyhedron& p)
{
    return is_box_tdi(p).verdict && is_integer(p);
}

ConeVerdict cone_box_integer(const HPolyhedron& c)
{
    if (!c.is_cone())
        throw std::invalid_argument("cone_box_integer needs a cone {x : Ax <= 0}");
    const VPolyhedron gens = h_to_v(c);
    const Index n = c.ambient_dim();
    ConeVerdict out;
    for (const Face& g : enumerate_faces(c, gens)) {
        std::vector<RatVector> members = g.rays;
        members.insert(members.end(), gens.lineality.begin(), gens.lineality.end());
        RatMatrix all = generator_rows(members, n);
        RatMatrix s = select_rows(all, row_basis(all));
        EquimodularVerdict v = is_equimodular(s);
        if (!v.is_equimodular) {
            out.box_integer = false;
            out.face_generators = s;
            out.refutation = v.refutation;
            return out;
        }
    }
    out.box_integer = true;
    return out;
}

PolarityReport cone_polarity_check(const HPolyhedron& c)
{
    PolarityReport r;
    r.cone = cone_box_integer(c);
    r.polar = cone_box_integer(polar(c));
    r.agree = r.cone.box_integer == r.polar.box_integer;
    return r;
}

BoxPropertyVerdict cone_box_property(const HPolyhedron& c, std::size_t samples, long radius,
                                     std::uint64_t seed)
{
    if (!c.is_cone())
        throw std::invalid_argument("cone_box_property needs a cone {x : Ax <= 0}");
    const VPolyhedron v = h_to_v(c);
    const Index n = c.ambient_dim();
    std::vector<RatVector> gens = v.rays;
    for (const auto& l : v.lineality) {
        gens.push_back(l);
        gens.push_back(-l);
    }

    BoxPropertyVerdict out;
    auto check = [&](const RatVector& point) {
        ++out.points_checked;
        std::vector<Integer> lo(n), hi(n);
        for (Index i = 0; i < n; ++i) {
            lo[i] = floor_of(point(i));
            hi[i] = ceil_of(point(i));
        }
        std::vector<Integer> x = lo;
        do {
            RatVector xv(n);
            for (Index i = 0; i < n; ++i)
                xv(i) = Rational(x[i]);
            if (contains(c, xv))
                return true;
        } while (next_point(x, lo, hi));
        out.counterexample = point;
        return false;
    };

    // Short fractions of single generators first, then random combinations.
    for (const auto& g : gens)
        for (long q = 2; q <= 4; ++q)
            for (long z = 1; z < q * radius; ++z)
                if (!check(RatVector(g * Rational(z, q))))
                    return {false, true, out.counterexample, out.points_checked};
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples && !gens.empty(); ++s) {
        const long q = 2 + static_cast<long>(rng() % 3);
        RatVector point = RatVector::Zero(n);
        for (const auto& g : gens) {
            if (rng() % 2 == 0)
                continue;
            const long z = static_cast<long>(rng() % static_cast<std::uint64_t>(q * radius + 1));
            point += g * Rational(z, q);
        }
        if (!check(point))
            return {false, true, out.counterexample, out.points_checked};
    }
    out.holds = true;
    return out;
}

DilationProfile dilation_profile(const HPolyhedron& p, long kmax, long radius)
{
    DilationProfile prof;
    prof.d = minimal_integer_dilation(p);
    prof.box_tdi = is_box_tdi(p).verdict;
    bool failed = false;
    long leading = 0;
    for (long j = 1; j <= kmax; ++j) {
        const Integer k = prof.d * j;
        const bool ok = is_box_integer(dilate(p, Rational(k)), radius).box_integer;
        prof.checks.emplace_back(k, ok);
        if (ok && failed)
            prof.monotone = false;
        if (!ok)
            failed = true;
        if (ok && !failed)
            leading = j;
    }
    if (prof.box_tdi) {
        prof.situation = 1;
    } else if (leading == 0) {
        prof.situation = 2;
    } else {
        prof.situation = 3;
        prof.q = leading;
        prof.q_lower_bound = leading == kmax;
    }
    return prof;
}

FractionalVertexWitness extract_fractional_witness(const HPolyhedron& p,
                                                   const BoxTDIRefutation& refutation,
                                                   long bound)
{
    const Face& f = refutation.face;
    const RatMatrix& m = f.fdm;
    const Index n = m.cols();
    const Index r = m.rows();

    // A basis B and a column j outside it with D^-1 M^j noninteger.
    std::optional<IndexSet> basis;
    IndexSet cols = first_combination(r);
    do {
        auto dinv = inverse(select_columns(m, cols));
        if (!dinv)
            continue;
        if (!is_integral(RatMatrix(*dinv * m))) {
            basis = cols;
            break;
        }
    } while (next_combination(cols, n));
    if (!basis)
        throw std::invalid_argument("refutation face has an equimodular face-defining matrix");

    const IndexSet free_cols = complement(*basis, n);
    const RatMatrix dinv = *inverse(select_columns(m, *basis));
    const RatMatrix mn = select_columns(m, free_cols);
    const RatVector x0 = relative_interior_point(f);
    const Integer d = minimal_integer_dilation(p);
    const Index nf = static_cast<Index>(free_cols.size());

    for (long j = 1; j <= bound; ++j) {
        const Integer k = d * j;
        const HPolyhedron kp = dilate(p, Rational(k));
        std::vector<Integer> lo(nf), hi(nf), offset(nf);
        for (Index i = 0; i < nf; ++i) {
            lo[i] = -1;
            hi[i] = 1;
        }
        offset = lo;
        do {
            RatVector wn(nf);
            for (Index i = 0; i < nf; ++i)
                wn(i) = Rational(round_of(Rational(k) * x0(free_cols[i])) + offset[i]);
            RatVector wb = dinv * (f.fdm_rhs * Rational(k) - mn * wn);
            if (is_integral(wb))
                continue;
            RatVector w(n);
            for (Index i = 0; i < r; ++i)
                w((*basis)[i]) = wb(i);
            for (Index i = 0; i < nf; ++i)
                w(free_cols[i]) = wn(i);
            if (!contains(kp, w))
                continue;
            FractionalVertexWitness out;
            out.k = k;
            out.l.assign(n, std::nullopt);
            out.u.assign(n, std::nullopt);
            for (Index i = 0; i < nf; ++i) {
                out.l[free_cols[i]] = numerator(wn(i));
                out.u[free_cols[i]] = numerator(wn(i));
            }
            out.vertex = w;
            if (!validate_witness(p, out))
                throw std::logic_error("fractional vertex witness failed validation");
            return out;
        } while (next_point(offset, lo, hi));
    }
    throw std::runtime_error("no fractional vertex found for k up to " + std::to_string(bound)
                             + " times the minimal integer dilation");
}

HPolyhedron pm_lift(const HPolyhedron& p)
{
    const Index n = p.ambient_dim();
    const Index m = p.num_rows();
    RatMatrix a = RatMatrix::Zero(m + 2 * n, 2 * n);
    RatVector b = RatVector::Zero(m + 2 * n);
    a.topLeftCorner(m, n) = p.a;
    a.topRightCorner(m, n) = -p.a;
    b.head(m) = p.b;
    for (Index i = 0; i < 2 * n; ++i)
        a(m + i, i) = -1;
    return HPolyhedron(a, b);
}

}  // namespace boxtdi

#include "boxtdi/report.hpp"

#include "boxtdi/io.hpp"

namespace boxtdi {

using nlohmann::json;

namespace {

json rows_json(const RatMatrix& m)
{
    return matrix_json(m)["entries"];
}

json pair_json(const MaximalMinor& a, const MaximalMinor& b)
{
    return json::array({minor_json(a), minor_json(b)});
}

}  // namespace

json minor_json(const MaximalMinor& m)
{
    return {{"columns", m.columns}, {"det", rational_string(m.det)}};
}

json face_json(const Face& f)
{
    return {{"tight_rows", f.tight_rows},
            {"dim", f.dim},
            {"fdm_rows", f.fdm_rows},
            {"fdm", rows_json(f.fdm)},
            {"fdm_rhs", vector_json(f.fdm_rhs)}};
}

json bounds_json(const std::vector<Bound>& b)
{
    json j = json::array();
    for (const auto& x : b) {
        if (x)
            j.push_back(x->str());
        else
            j.push_back(nullptr);
    }
    return j;
}

json certificate_json(const EquimodularVerdict& v)
{
    json j{{"equimodular", v.is_equimodular}, {"route", to_string(v.route)}};
    if (v.common_abs_det)
        j["common_abs_det"] = rational_string(*v.common_abs_det);
    if (v.refutation)
        j["refutation"] = pair_json(v.refutation->first, v.refutation->second);
    return j;
}

json certificate_json(const TUVerdict& v)
{
    json j{{"totally_unimodular", v.is_tu}};
    if (v.violation)
        j["violation"] = {{"rows", v.violation->rows},
                          {"cols", v.violation->cols},
                          {"det", rational_string(v.violation->det)}};
    return j;
}

json certificate_json(const TotalEquimodularVerdict& v)
{
    json j{{"totally_equimodular", v.holds}};
    if (v.offending_rows)
        j["offending_rows"] = *v.offending_rows;
    if (v.refutation)
        j["refutation"] = certificate_json(*v.refutation);
    return j;
}

json certificate_json(const BoxTDICertificate& c)
{
    json j{{"box_tdi", c.verdict}};
    if (c.verdict) {
        json faces = json::array();
        for (const auto& f : c.faces)
            faces.push_back({{"tight_rows", f.face.tight_rows},
                             {"dim", f.face.dim},
                             {"basis", f.basis},
                             {"normalized_fdm", rows_json(f.normalized)}});
        j["faces"] = faces;
    }
    if (c.refutation) {
        const auto& r = *c.refutation;
        j["refutation"] = {{"face", face_json(r.face)},
                           {"minors", pair_json(r.first, r.second)},
                           {"abs_dets", {rational_string(abs(r.first.det)),
                                         rational_string(abs(r.second.det))}}};
    }
    if (c.cross_check_agrees)
        j["cross_check_agrees"] = *c.cross_check_agrees;
    return j;
}

json certificate_json(const FractionalVertexWitness& w)
{
    return {{"k", w.k.str()}, {"l", bounds_json(w.l)}, {"u", bounds_json(w.u)},
            {"vertex", vector_json(w.vertex)}};
}

json certificate_json(const BoxIntegerVerdict& v)
{
    json j{{"box_integer", v.box_integer}, {"exact", v.exact}};
    if (v.witness)
        j["witness"] = certificate_json(*v.witness);
    return j;
}

json certificate_json(const ConeVerdict& v)
{
    json j{{"box_integer", v.box_integer}};
    if (v.face_generators)
        j["face_generators"] = rows_json(*v.face_generators);
    if (v.refutation)
        j["refutation"] = pair_json(v.refutation->first, v.refutation->second);
    return j;
}

json certificate_json(const PolarityReport& r)
{
    return {{"cone", certificate_json(r.cone)}, {"polar", certificate_json(r.polar)},
            {"agree", r.agree}};
}

json certificate_json(const BoxPropertyVerdict& v)
{
    json j{{"box_property", v.holds}, {"exact", v.exact}, {"points_checked", v.points_checked}};
    if (v.counterexample)
        j["counterexample"] = vector_json(*v.counterexample);
    return j;
}

json certificate_json(const DilationProfile& p)
{
    json checks = json::array();
    for (const auto& [k, ok] : p.checks)
        checks.push_back({{"k", k.str()}, {"box_integer", ok}});
    json j{{"d", p.d.str()},
           {"situation", p.situation},
           {"checks", checks},
           {"monotone", p.monotone},
           {"box_tdi", p.box_tdi}};
    if (p.q) {
        j["q"] = *p.q;
        j["q_is_lower_bound"] = p.q_lower_bound;
    }
    return j;
}

}  // namespace boxtdi

#pragma once

/// JSON forms of verdicts and certificates.  Numbers are "p/q" strings.

#include <json.hpp>

#include "boxtdi/certify.hpp"
#include "boxtdi/matprops.hpp"

namespace boxtdi {

nlohmann::json minor_json(const MaximalMinor& m);
nlohmann::json face_json(const Face& f);
nlohmann::json bounds_json(const std::vector<Bound>& b);

nlohmann::json certificate_json(const EquimodularVerdict& v);
nlohmann::json certificate_json(const TUVerdict& v);
nlohmann::json certificate_json(const TotalEquimodularVerdict& v);
nlohmann::json certificate_json(const BoxTDICertificate& c);
nlohmann::json certificate_json(const FractionalVertexWitness& w);
nlohmann::json certificate_json(const BoxIntegerVerdict& v);
nlohmann::json certificate_json(const ConeVerdict& v);
nlohmann::json certificate_json(const PolarityReport& r);
nlohmann::json certificate_json(const BoxPropertyVerdict& v);
nlohmann::json certificate_json(const DilationProfile& p);

}  // namespace boxtdi

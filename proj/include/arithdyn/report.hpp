#pragma once

#include "arithdyn/abc_lab.hpp"
#include "arithdyn/galois_tower.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/places_qt.hpp"
#include "arithdyn/zsigmondy.hpp"

#include <json.hpp>

#include <string>

namespace arithdyn {

using Json = nlohmann::ordered_json;

/// Version of the report layout in docs/report.schema.json.
inline constexpr const char* kSchemaVersion = "1";

// Big integers are decimal strings, rationals "p/q" (or "p"), infinity "inf".
Json to_json(const Int& n);
Json to_json(const Rat& q);
Json to_json(const ExtRational& z);
Json to_json(const FactoredValue& f);
Json to_json(const HeightValue& h);
Json to_json(const HeightBound& b);
Json to_json(const CanonicalHeightEstimate& e);
Json to_json(const PointClassification& c);
Json to_json(const RamificationReport& r);
Json to_json(const BadReduction& b);
Json to_json(const Termination& t);
Json to_json(const Orbit& o);
Json to_json(const OrbitRecord& r);
Json to_json(const ZsigmondyReport& r);
Json to_json(const FFZsigmondyReport& r);
Json to_json(const PropOldReport& r);
Json to_json(const AbcTriple& t);
Json to_json(const RothScanReport& r);
Json to_json(const MasonReport& m);
Json to_json(const DiscRecursion& d);
Json to_json(const TowerReport& r);

/// {"schema_version", "command", "config", "result"}.
Json envelope(const std::string& command, Json config, Json result);

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

}  // namespace arithdyn

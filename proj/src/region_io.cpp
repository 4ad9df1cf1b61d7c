#include "sphaera/region_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace sphaera {

namespace {

using nlohmann::json;

Vec3 unit_vector(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw RegionFormatError(where + ": expected [x, y, z]");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number()) throw RegionFormatError(where + ": non-numeric coordinate");
        v[i] = j[i].get<double>();
    }
    if (!(std::abs(v.norm() - 1.0) <= 1e-9)) throw RegionFormatError(where + ": not a unit vector within 1e-9");
    return v;
}

std::vector<Vec3> unit_list(const json& j, const std::string& key) {
    if (!j.is_array()) throw RegionFormatError(key + ": expected an array");
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(unit_vector(j[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

} // namespace

LoadedRegion parse_region(const std::string& text, int smooth_samples) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw RegionFormatError(std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) throw RegionFormatError("top level must be an object");
    const int keys = static_cast<int>(doc.contains("vertices")) + static_cast<int>(doc.contains("cap")) +
                     static_cast<int>(doc.contains("boundary_samples"));
    if (keys != 1) throw RegionFormatError("expected exactly one of \"vertices\", \"cap\", \"boundary_samples\"");
    try {
        if (doc.contains("vertices")) return GeodesicPolygon(unit_list(doc["vertices"], "vertices"));
        if (doc.contains("boundary_samples")) {
            return SmoothBoundary::from_samples(unit_list(doc["boundary_samples"], "boundary_samples"), smooth_samples);
        }
        const json& c = doc["cap"];
        if (!c.is_object() || !c.contains("center") || !c.contains("radius") || !c["radius"].is_number()) {
            throw RegionFormatError("cap: expected {\"center\": [x, y, z], \"radius\": r}");
        }
        const double r = c["radius"].get<double>();
        if (!(r > 0.0 && r < kHalfPi)) throw RegionFormatError("cap: radius outside (0, pi/2)");
        return CapSpec{unit_vector(c["center"], "cap.center"), r};
    } catch (const GeometryError& e) {
        throw RegionFormatError(std::string("invalid region: ") + e.what());
    }
}

LoadedRegion load_region(const std::string& path, int smooth_samples) {
    std::ifstream in(path);
    if (!in) throw RegionFormatError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return parse_region(s.str(), smooth_samples);
}

std::string region_to_json(const GeodesicPolygon& p) {
    json v = json::array();
    for (const auto& x : p.vertices()) v.push_back(vec(x));
    return json{{"vertices", v}}.dump();
}

std::string region_to_json(const CapSpec& c) {
    return json{{"cap", {{"center", vec(c.center)}, {"radius", c.radius}}}}.dump();
}

} // namespace sphaera

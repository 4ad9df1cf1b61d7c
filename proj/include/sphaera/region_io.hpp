#pragma once

// JSON region files: exactly one of "vertices", "cap" or "boundary_samples".

#include <stdexcept>
#include <string>
#include <variant>

#include "sphaera/floating.hpp"

namespace sphaera {

/// Malformed or out-of-contract region file.
class RegionFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using LoadedRegion = std::variant<GeodesicPolygon, CapSpec, SmoothBoundary>;

/// Vectors must be unit within 1e-9. Geometry errors raised while building
/// the region are reported as RegionFormatError too.
LoadedRegion parse_region(const std::string& json_text, int smooth_samples = 1024);
LoadedRegion load_region(const std::string& path, int smooth_samples = 1024);

std::string region_to_json(const GeodesicPolygon& p);
std::string region_to_json(const CapSpec& c);

} // namespace sphaera

#include <doctest.h>

#include <iomanip>
#include <sstream>

#include "sphaera/region_io.hpp"
#include "support.hpp"

using namespace sphaera;

TEST_CASE("region files parse into the three region kinds") {
    const auto p = parse_region(R"({"vertices": [[1,0,0],[0,1,0],[0,0,1]]})");
    REQUIRE(std::holds_alternative<GeodesicPolygon>(p));
    CHECK(area(std::get<GeodesicPolygon>(p)) == doctest::Approx(kPi / 2));

    const auto c = parse_region(R"({"cap": {"center": [0,0,1], "radius": 0.5}})");
    REQUIRE(std::holds_alternative<CapSpec>(c));
    CHECK(std::get<CapSpec>(c).radius == 0.5);

    std::string samples = R"({"boundary_samples": [)";
    for (int i = 0; i < 200; ++i) {
        const Vec3 x = support::polar_around(Vec3::UnitZ(), 2.0 * kPi * i / 200, 0.4);
        samples += (i ? "," : "") + std::string("[") + std::to_string(x.x()) + "," + std::to_string(x.y()) + "," +
                   std::to_string(x.z()) + "]";
    }
    samples += "]}";
    // std::to_string keeps six decimals, which is not unit within 1e-9.
    CHECK_THROWS_AS(parse_region(samples), RegionFormatError);
}

TEST_CASE("smooth boundary samples round trip") {
    std::ostringstream s;
    s << std::setprecision(17) << R"({"boundary_samples": [)";
    for (int i = 0; i < 200; ++i) {
        const Vec3 x = support::polar_around(Vec3::UnitZ(), 2.0 * kPi * i / 200, 0.4);
        s << (i ? "," : "") << '[' << x.x() << ',' << x.y() << ',' << x.z() << ']';
    }
    s << "]}";
    const auto k = parse_region(s.str(), 512);
    REQUIRE(std::holds_alternative<SmoothBoundary>(k));
    CHECK(area(std::get<SmoothBoundary>(k)) == doctest::Approx(2.0 * kPi * (1.0 - std::cos(0.4))).epsilon(1e-6));
}

TEST_CASE("malformed region files are rejected") {
    CHECK_THROWS_AS(parse_region("{"), RegionFormatError);
    CHECK_THROWS_AS(parse_region("[]"), RegionFormatError);
    CHECK_THROWS_AS(parse_region("{}"), RegionFormatError);
    CHECK_THROWS_AS(parse_region(R"({"vertices": [[1,0,0],[0,1,0],[0,0,1]], "cap": {"center": [0,0,1], "radius": 0.5}})"),
                    RegionFormatError);
    CHECK_THROWS_AS(parse_region(R"({"vertices": [[1,0,0],[0,1,0],[0,0,1.001]]})"), RegionFormatError);
    CHECK_THROWS_AS(parse_region(R"({"vertices": [[1,0,0],[0,1,0]]})"), RegionFormatError);
    CHECK_THROWS_AS(parse_region(R"({"vertices": [[1,0,0],[0,"a",0],[0,0,1]]})"), RegionFormatError);
    CHECK_THROWS_AS(parse_region(R"({"cap": {"center": [0,0,1], "radius": 1.6}})"), RegionFormatError);
    CHECK_THROWS_AS(parse_region(R"({"cap": {"center": [0,0,1]}})"), RegionFormatError);
    CHECK_THROWS_AS(load_region("/nonexistent/region.json"), RegionFormatError);
}

TEST_CASE("regions serialize back to parseable JSON") {
    std::mt19937_64 g(1);
    const GeodesicPolygon p = support::random_convex_polygon(g, support::random_unit(g), 0.5, 9);
    const auto q = parse_region(region_to_json(p));
    REQUIRE(std::holds_alternative<GeodesicPolygon>(q));
    CHECK(area(std::get<GeodesicPolygon>(q)) == doctest::Approx(area(p)).epsilon(1e-14));
    const CapSpec cap{unit(Vec3(1, 2, 2)), 0.3};
    const auto c = parse_region(region_to_json(cap));
    CHECK((std::get<CapSpec>(c).center - cap.center).norm() <= 1e-15);
}

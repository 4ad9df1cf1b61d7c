#include <doctest.h>

#include "sphaera/extremal.hpp"
#include "support.hpp"

using namespace sphaera;

namespace {

// Regular N-gon area as N congruent triangles (center, v_i, v_i+1).
double regular_fan_area(double r, int n) {
    const double side = std::acos(std::cos(r) * std::cos(r) + std::sin(r) * std::sin(r) * std::cos(2.0 * kPi / n));
    return n * support::lhuilier(r, r, side);
}

} // namespace

TEST_CASE("sas_constant limits and values") {
    for (int n = 3; n <= 8; ++n) {
        CHECK(sas_constant(kHalfPi - 1e-9, n) == doctest::Approx(2.0 * kPi).epsilon(1e-7));
        const double r = 1e-3, cap = 2.0 * kPi * (1.0 - std::cos(r));
        const double euclid = n / (2.0 * kPi) * std::sin(2.0 * kPi / n);
        CHECK(sas_constant(r, n) / cap == doctest::Approx(euclid).epsilon(1e-5));
        for (double rr : {kPi / 6, kPi / 4, kPi / 3}) {
            CHECK(sas_constant(rr, n) == doctest::Approx(regular_fan_area(rr, n)).epsilon(1e-12));
        }
    }
    CHECK(sas_constant(kPi / 3, 3) == doctest::Approx(2.000839).epsilon(1e-6));
    CHECK_THROWS_AS(sas_constant(0.0, 4), DomainError);
    CHECK_THROWS_AS(sas_constant(kHalfPi, 4), DomainError);
    CHECK_THROWS_AS(sas_constant(0.5, 2), DomainError);
}

TEST_CASE("sas_constant is increasing in r and N") {
    for (int n = 3; n <= 8; ++n) {
        for (double r = 0.05; r < 1.5; r += 0.05) {
            CHECK(sas_constant(r + 0.05, n) > sas_constant(r, n));
            CHECK(sas_constant(r, n + 1) > sas_constant(r, n));
        }
    }
}

TEST_CASE("cap_regular_polygon") {
    std::mt19937_64 g(3);
    for (double r : {kPi / 6, kPi / 4, kPi / 3}) {
        for (int n = 3; n <= 8; ++n) {
            const Vec3 c = support::random_unit(g);
            const GeodesicPolygon p = cap_regular_polygon(r, n, c);
            REQUIRE(p.size() == static_cast<std::size_t>(n));
            CHECK(std::abs(area(p) - sas_constant(r, n)) <= 1e-10);
            for (const auto& v : p.vertices()) CHECK(std::abs(sph_dist(v, c) - r) <= 1e-12);
            // Rotation by 2 pi / N about c maps the vertex set to itself.
            const Eigen::AngleAxisd rot(2.0 * kPi / n, c);
            for (const auto& v : p.vertices()) {
                double best = 10.0;
                for (const auto& w : p.vertices()) best = std::min(best, (rot * v - w).norm());
                CHECK(best <= 1e-12);
            }
        }
    }
}

TEST_CASE("inscribed polygon in a cap is regular") {
    const Vec3 c = unit(Vec3(-0.2, 0.5, 0.8));
    for (double r : {kPi / 6, kPi / 3}) {
        for (int n = 3; n <= 8; ++n) {
            InscribeOptions opt;
            opt.seed = 17;
            opt.center = c;
            const InscribedSolution s = max_inscribed_polygon(CapSpec{c, r}, n, opt);
            CHECK(std::abs(s.area - sas_constant(r, n)) <= 1e-8);
            CHECK(std::abs(s.area - area(s.polygon)) <= 1e-12);
            CHECK(s.contains_center.value_or(false));
            for (const auto& v : s.polygon.vertices()) CHECK(std::abs(sph_dist(v, c) - r) <= 1e-9);
            const auto& t = s.boundary_params;
            for (int i = 0; i < n; ++i) {
                const double next = i + 1 < n ? t[i + 1] : t[0] + 2.0 * kPi;
                CHECK(std::abs(next - t[i] - 2.0 * kPi / n) <= 1e-5);
            }
        }
    }
}

TEST_CASE("polygon with at most N vertices is its own maximizer") {
    std::mt19937_64 g(5);
    const GeodesicPolygon p = support::random_convex_polygon(g, support::random_unit(g), 0.6, 6);
    for (int n = static_cast<int>(p.size()); n <= static_cast<int>(p.size()) + 2; ++n) {
        const InscribedSolution s = max_inscribed_polygon(p, n);
        CHECK(std::abs(s.area - area(p)) <= 1e-12);
    }
}

TEST_CASE("inscribed polygon vertices lie on the boundary") {
    std::mt19937_64 g(8);
    const GeodesicPolygon p = support::random_convex_polygon(g, support::random_unit(g), 0.7, 20);
    const InscribedSolution s = max_inscribed_polygon(p, 5);
    CHECK(std::abs(s.area - area(s.polygon)) <= 1e-12);
    for (const auto& v : s.polygon.vertices()) {
        double d = 10.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            d = std::min(d, point_segment_distance(v, p.vertex(i), p.vertex((i + 1) % p.size())));
        }
        CHECK(d <= 1e-9);
    }
}

TEST_CASE("spherical Sas inequality on c-symmetric disks") {
    std::mt19937_64 g(21);
    for (int trial = 0; trial < 6; ++trial) {
        const Vec3 c = support::random_unit(g);
        const GeodesicPolygon k = support::random_c_symmetric_polygon(g, c, 12, 24);
        const double r = equal_area_cap_radius(area(k));
        double previous = 0.0;
        for (int n = 3; n <= 7; ++n) {
            InscribeOptions opt;
            opt.seed = static_cast<std::uint64_t>(trial);
            opt.center = c;
            const InscribedSolution s = max_inscribed_polygon(k, n, opt);
            CHECK(s.area >= sas_constant(r, n) - 1e-4);
            CHECK(s.area <= area(k) + 1e-12);
            CHECK(s.area >= previous - 1e-10);
            CHECK(s.contains_center.value_or(false));
            previous = s.area;
        }
    }
}

TEST_CASE("symmetrization does not increase A_N") {
    std::mt19937_64 g(34);
    for (int trial = 0; trial < 4; ++trial) {
        const Vec3 c = support::random_unit(g);
        const GeodesicPolygon k = support::random_c_symmetric_polygon(g, c);
        const GeodesicPolygon s = symmetrize_step(k, Frame::at(c, 0.3 * trial), {});
        for (int n : {3, 5}) {
            CHECK(max_inscribed_polygon(s, n).area <= max_inscribed_polygon(k, n).area + 1e-4);
        }
    }
}

TEST_CASE("results do not depend on the thread count") {
    std::mt19937_64 g(13);
    const GeodesicPolygon k = support::random_c_symmetric_polygon(g, support::random_unit(g), 10, 14);
    InscribeOptions a, b;
    a.threads = 1;
    b.threads = 4;
    a.seed = b.seed = 99;
    const auto sa = max_inscribed_polygon(k, 6, a), sb = max_inscribed_polygon(k, 6, b);
    CHECK(sa.area == sb.area);
    CHECK(sa.boundary_params == sb.boundary_params);
}

TEST_CASE("inscribing rejects non-convex input") {
    const GeodesicPolygon dart({unit(Vec3(0.3, 0, 1)), unit(Vec3(0, 0.3, 1)), unit(Vec3(-0.3, 0, 1)),
                                unit(Vec3(0, 0.05, 1))},
                               GeodesicPolygon::Check::ring);
    CHECK_THROWS_AS(max_inscribed_polygon(dart, 3), PreconditionError);
}

TEST_CASE("extremal driver") {
    std::mt19937_64 g(44);
    const Vec3 c = support::random_unit(g);
    const GeodesicPolygon k = support::random_c_symmetric_polygon(g, c);
    const DriverResult a = extremal_driver(k, c, area_functional(), Direction::max);
    for (double v : a.values) CHECK(std::abs(v - a.values.front()) <= 1e-4 * a.values.front());
    const DriverResult p = extremal_driver(k, c, perimeter_functional(), Direction::min);
    CHECK(p.verdict);
    CHECK(p.values.back() >= p.cap_value - 1e-3);
    CHECK(p.values.front() >= p.cap_value - 1e-3);
    const DriverResult d = extremal_driver(k, c, diameter_functional(), Direction::min);
    CHECK(d.verdict);
    CHECK(d.values.back() >= d.cap_value - 1e-3);
    std::mt19937_64 h(45);
    const GeodesicPolygon lopsided = support::random_convex_polygon(h, c, 0.5, 9);
    CHECK_THROWS_AS(extremal_driver(lopsided, c, area_functional(), Direction::max), PreconditionError);
}

#include <doctest.h>

#include "sphaera/convex_region.hpp"
#include "support.hpp"

using namespace sphaera;

namespace {

const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();

GeodesicPolygon octant() { return GeodesicPolygon({e1, e2, e3}); }

// Smallest enclosing cap by exhaustion over caps spanned by pairs and triples.
CapSpec minimax_oracle(const std::vector<Vec3>& pts) {
    CapSpec best{pts.front(), 10.0};
    auto consider = [&](const Vec3& c) {
        double m = 0.0;
        for (const auto& p : pts) m = std::max(m, std::acos(std::clamp(c.dot(p), -1.0, 1.0)));
        if (m < best.radius) best = {c, m};
    };
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            consider((pts[i] + pts[j]).normalized());
            for (std::size_t k = j + 1; k < n; ++k) {
                // Equidistant center solves <c, pi - pj> = <c, pi - pk> = 0.
                Eigen::Matrix3d m;
                m.row(0) = (pts[i] - pts[j]).transpose();
                m.row(1) = (pts[i] - pts[k]).transpose();
                m.row(2) = Vec3::Zero().transpose();
                Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullV);
                Vec3 c = svd.matrixV().col(2);
                if (c.dot(pts[i]) < 0.0) c = -c;
                consider(c);
            }
        }
    return best;
}

} // namespace

TEST_CASE("polygon construction") {
    CHECK_NOTHROW(octant());
    CHECK_THROWS_AS(GeodesicPolygon({e1, e2}), DegeneracyError);
    CHECK_THROWS_AS(GeodesicPolygon({e1, e2, e2, e3}), DegeneracyError);
    CHECK_THROWS_AS(GeodesicPolygon({e1, e2, Vec3(-e1), Vec3(-e2)}), InfeasibleError);
    const Vec3 m = unit(e1 + e2 + e3);
    // A dart: convex rejects, ring accepts.
    std::vector<Vec3> dart;
    for (int k = 0; k < 4; ++k) {
        dart.push_back(support::polar_around(m, kHalfPi * k, 0.5));
        if (k == 0) dart.push_back(support::polar_around(m, kPi / 4, 0.1));
    }
    CHECK_THROWS_AS(GeodesicPolygon{dart}, DomainError);
    const GeodesicPolygon ring(dart, GeodesicPolygon::Check::ring);
    CHECK_FALSE(ring.is_convex());
}

TEST_CASE("clockwise input is reoriented") {
    const GeodesicPolygon p({e1, e3, e2});
    CHECK(orient(p.vertex(0), p.vertex(1), p.vertex(2)) > 0.0);
}

TEST_CASE("convex hull") {
    std::mt19937_64 g(11);
    const GeodesicPolygon t = convex_hull_s({e1, e2, e3});
    CHECK(t.size() == 3);
    const Vec3 c = unit(Vec3(1, 1, 1));
    const auto [t1, t2] = tangent_basis(c);
    std::vector<Vec3> sq;
    for (int k = 0; k < 4; ++k) sq.push_back(support::polar_around(c, kPi / 2 * k, 0.3));
    sq.push_back(c);
    CHECK(convex_hull_s(sq).size() == 4);
    CHECK_THROWS_AS(convex_hull_s({e1, Vec3(-e1), e2, Vec3(-e2), e3, Vec3(-e3)}), InfeasibleError);
    CHECK_THROWS_AS(convex_hull_s({e1, unit(e1 + e2), e2}), DegeneracyError);
    for (int trial = 0; trial < 50; ++trial) {
        const GeodesicPolygon h = support::random_convex_polygon(g, support::random_unit(g), 0.8, 30);
        const GeodesicPolygon hh = convex_hull_s(h.vertices());
        REQUIRE(hh.size() == h.size());
        std::size_t s = 0;
        while (s < h.size() && (hh.vertex(s) - h.vertex(0)).norm() > 1e-15) ++s;
        REQUIRE(s < h.size());
        for (std::size_t i = 0; i < h.size(); ++i) CHECK((hh.vertex(s + i) - h.vertex(i)).norm() <= 1e-15);
    }
}

TEST_CASE("area") {
    CHECK(area(octant()) == doctest::Approx(kPi / 2).epsilon(1e-14));
    // Flat limit against Heron.
    const Vec3 c = unit(Vec3(0.3, -0.2, 1.0));
    const double s = 1e-3;
    const Vec3 a = support::polar_around(c, 0.0, s / std::sqrt(3.0));
    const Vec3 b = support::polar_around(c, 2 * kPi / 3, s / std::sqrt(3.0));
    const Vec3 d = support::polar_around(c, 4 * kPi / 3, s / std::sqrt(3.0));
    const double flat = support::heron((a - b).norm(), (b - d).norm(), (d - a).norm());
    CHECK(std::abs(area(GeodesicPolygon({a, b, d})) / flat - 1.0) < 1e-5);
    const GeodesicPolygon cap = polygonize_cap({c, kPi / 3}, 256);
    CHECK(std::abs(area(cap) - kPi) < 1e-3);
    // Girard against the fan of signed triangles.
    std::mt19937_64 g(12);
    for (int i = 0; i < 100; ++i) {
        const auto p = support::random_convex_polygon(g, support::random_unit(g), 1.0, 20);
        CHECK(area(p) == doctest::Approx(fan_area(p)).epsilon(1e-11));
    }
}

TEST_CASE("perimeter and diameter") {
    CHECK(perimeter(octant()) == doctest::Approx(1.5 * kPi).epsilon(1e-14));
    CHECK(diameter(octant()) == doctest::Approx(kHalfPi).epsilon(1e-14));
    const Vec3 c = unit(Vec3(1, 2, 3));
    for (double r : {0.3, 0.9, 1.3}) {
        CHECK(std::abs(perimeter(polygonize_cap({c, r}, 512)) - 2 * kPi * std::sin(r)) < 1e-4);
        CHECK(std::abs(diameter(polygonize_cap({c, r}, 64)) - 2 * r) < 1e-6);
    }
    std::mt19937_64 g(13);
    for (int i = 0; i < 50; ++i) {
        std::vector<Vec3> pts;
        const Vec3 cc = support::random_unit(g);
        for (int j = 0; j < 25; ++j) pts.push_back(support::random_in_cap(g, cc, 0.7));
        double d = 0.0;
        for (const auto& x : pts)
            for (const auto& y : pts) d = std::max(d, sph_dist(x, y));
        CHECK(diameter(convex_hull_s(pts)) == doctest::Approx(d).epsilon(1e-14));
    }
}

TEST_CASE("rotation invariance") {
    std::mt19937_64 g(14);
    const auto p = support::random_convex_polygon(g, Vec3::UnitZ(), 0.8, 15);
    const double a = area(p), l = perimeter(p), d = diameter(p);
    for (int i = 0; i < 1000; ++i) {
        const auto q = support::rotated(p, support::random_rotation(g));
        CHECK(std::abs(area(q) - a) <= 1e-12);
        CHECK(std::abs(perimeter(q) - l) <= 1e-12);
        CHECK(std::abs(diameter(q) - d) <= 1e-12);
    }
}

TEST_CASE("hull area is monotone") {
    std::mt19937_64 g(15);
    for (int i = 0; i < 100; ++i) {
        const Vec3 c = support::random_unit(g);
        std::vector<Vec3> x, y;
        for (int j = 0; j < 10; ++j) x.push_back(support::random_in_cap(g, c, 0.8));
        for (int j = 0; j < 10; ++j) y.push_back(support::random_in_cap(g, c, 0.8));
        std::vector<Vec3> xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        CHECK(area(convex_hull_s(xy)) >= std::max(area(convex_hull_s(x)), area(convex_hull_s(y))) - 1e-14);
    }
}

TEST_CASE("circumdisk") {
    const Vec3 c = unit(Vec3(-1, 2, 0.5));
    for (int n : {3, 4, 7, 64}) {
        const CapSpec d = circumdisk(polygonize_cap({c, 0.7}, n));
        CHECK((d.center - c).norm() < 1e-8);
        CHECK(std::abs(d.radius - 0.7) < 1e-8);
    }
    // Obtuse triangle: spanned by the longest edge.
    const Vec3 a = support::polar_around(c, 0.0, 0.5), b = support::polar_around(c, kPi, 0.5);
    const Vec3 t = support::polar_around(c, kHalfPi, 0.1);
    const GeodesicPolygon tri({a, b, t});
    const CapSpec d = circumdisk(tri);
    const CapSpec o = minimax_oracle(tri.vertices());
    CHECK(std::abs(d.radius - o.radius) < 1e-8);
    CHECK(sph_dist(d.center, o.center) < 1e-6);
    CHECK(std::abs(d.radius - 0.5) < 1e-12);

    std::mt19937_64 g(16);
    for (int i = 0; i < 50; ++i) {
        const auto p = support::random_convex_polygon(g, support::random_unit(g), 0.9, 12);
        const CapSpec cd = circumdisk(p);
        const CapSpec oc = minimax_oracle(p.vertices());
        CHECK(std::abs(cd.radius - oc.radius) < 1e-8);
        CHECK(cd.radius >= 0.5 * diameter(p) - 1e-12);
        int on = 0;
        for (const auto& v : p.vertices()) on += std::abs(sph_dist(cd.center, v) - cd.radius) < 1e-9;
        CHECK(on >= 2);
        // An interior point changes nothing.
        auto v = p.vertices();
        v.push_back(unit(p.vertex(0) + p.vertex(1) + p.vertex(2)));
        const CapSpec c2 = circumdisk(v);
        CHECK(std::abs(c2.radius - cd.radius) < 1e-12);
    }
}

TEST_CASE("angular slices") {
    const Frame f = Frame::standard();
    const GeodesicPolygon sq = polygonize_cap({f.c(), 0.5}, 4);
    CHECK_FALSE(slice_angular_interval(sq, f, 0.6).has_value());
    const auto iv = slice_angular_interval(sq, f, 0.0);
    REQUIRE(iv.has_value());
    CHECK(std::abs(iv->lo + iv->hi) < 1e-14);

    std::mt19937_64 g(17);
    for (int i = 0; i < 100; ++i) {
        const auto p = support::random_convex_polygon(g, f.c(), 0.8, 12);
        const auto [lo, hi] = theta_range(p, f);
        for (int j = 1; j < 20; ++j) {
            const double th = lo + (hi - lo) * j / 20.0;
            const auto s = slice_angular_interval(p, f, th);
            REQUIRE(s.has_value());
            for (double phi : {s->lo, s->hi}) {
                const Vec3 x = from_polar(f, {th, phi});
                double res = 1.0;
                for (std::size_t k = 0; k < p.size(); ++k) {
                    const Vec3& a = p.vertex(k);
                    const Vec3& b = p.vertex(k + 1);
                    const Vec3 n = unit(a.cross(b));
                    if (a.cross(x).dot(n) >= -1e-12 && x.cross(b).dot(n) >= -1e-12) res = std::min(res, std::abs(n.dot(x)));
                }
                CHECK(res <= 1e-10);
            }
        }
        CHECK_FALSE(slice_angular_interval(p, f, hi + 1e-6).has_value());
    }
}

TEST_CASE("connectedness") {
    const Frame f = Frame::standard();
    std::mt19937_64 g(18);
    for (int i = 0; i < 20; ++i) {
        const auto p = support::random_convex_polygon(g, f.c(), 0.5, 12);
        const auto [lo, hi] = theta_range(p, f);
        if (lo <= 0.0 && hi >= 0.0) CHECK(connectedness_check(p, f));
    }
    // Two lowest vertices at the same distance from L.
    const Vec3 a = from_polar(f, {0.3, -0.4}), b = from_polar(f, {0.3, 0.4});
    const Vec3 t = from_polar(f, {0.7, 0.0});
    CHECK_FALSE(connectedness_check(GeodesicPolygon({a, b, t}), f));
    // Once the triangle reaches L the slices are arcs again.
    const Vec3 a2 = from_polar(f, {-0.05, -0.4});
    CHECK(connectedness_check(GeodesicPolygon({a2, b, t}), f));
    for (int i = 0; i < 10; ++i) {
        const Vec3 c = from_polar(f, {0.5 * (std::uniform_real_distribution<double>(-0.5, 0.5)(g)), 0.3 * i - 1.2});
        CHECK(connectedness_check(polygonize_cap({c, 0.3}, 64), f));
    }
}

TEST_CASE("angular monotonicity") {
    const Frame f = Frame::standard();
    std::mt19937_64 g(19);
    for (int i = 0; i < 50; ++i) {
        const auto p = support::random_c_symmetric_polygon(g, f.c());
        const Frame h = Frame::at(f.c(), 0.37 * i);
        CHECK(angular_monotonicity_check(p, h));
    }
    CHECK(angular_monotonicity_check(polygonize_cap({f.c(), 0.4}, 128), f));
    const GeodesicPolygon away = polygonize_cap({from_polar(f, {0.6, 0.0}), 0.2}, 16);
    CHECK_FALSE(angular_monotonicity_check(away, f));
    // A triangle leaning to one side fails.
    const GeodesicPolygon lean({from_polar(f, {-0.2, -0.5}), from_polar(f, {-0.2, 0.5}), from_polar(f, {0.8, 0.45})});
    CHECK_FALSE(angular_monotonicity_check(lean, f));
}

TEST_CASE("spherical ellipse") {
    const Vec3 f1 = support::polar_around(e3, 0.0, 0.4), f2 = support::polar_around(e3, kPi, 0.4);
    const double d12 = sph_dist(f1, f2);
    const SphericalEllipse thin(f1, f2, d12 + 1e-3);
    CHECK(ellipse_is_convex(thin));
    for (int j = 0; j <= 10; ++j) CHECK(ellipse_contains(thin, unit(f1 + (f2 - f1) * j / 10.0)));

    const SphericalEllipse half(f1, f2, kPi);
    CHECK_FALSE(ellipse_is_convex(half));
    for (int j = 0; j < 36; ++j) {
        const Vec3 w = half.boundary_point(2 * kPi * j / 36);
        CHECK(std::abs(sph_dist(w, f1) + sph_dist(w, f2) - kPi) < 1e-10);
        CHECK(std::abs(w.dot(half.midpoint())) < 1e-10);
    }

    const SphericalEllipse e(f1, f2, 3 * kPi / 4);
    std::mt19937_64 g(20);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 a = e.boundary_point(2 * kPi * u(g)), b = e.boundary_point(2 * kPi * u(g));
        const double s = u(g);
        const double l = sph_dist(a, b);
        if (l < 1e-9) continue;
        const Vec3 x = std::cos(s * l) * a + std::sin(s * l) * tangent_toward(a, b);
        CHECK(ellipse_contains(e, x, 1e-10));
    }
    CHECK_THROWS_AS(SphericalEllipse(f1, f1, 1.0), DegeneracyError);
}

TEST_CASE("Hausdorff distance") {
    const Vec3 c = unit(Vec3(1, 1, 0));
    const GeodesicPolygon p = polygonize_cap({c, 0.5}, 12);
    CHECK(hausdorff_distance(p, p) == 0.0);
    const double h = hausdorff_distance(CapSpec{c, 0.4}, CapSpec{c, 0.45});
    CHECK(std::abs(h - 0.05) < 1e-9);
    std::mt19937_64 g(21);
    for (int i = 0; i < 10; ++i) {
        const auto a = support::random_convex_polygon(g, c, 0.5, 10);
        const auto b = support::random_convex_polygon(g, c, 0.5, 10);
        CHECK(hausdorff_distance(a, b) == hausdorff_distance(b, a));
        CHECK(hausdorff_distance(a, CapSpec{c, 0.3}) == hausdorff_distance(CapSpec{c, 0.3}, a));
    }
}

TEST_CASE("clipping preserves area") {
    std::mt19937_64 g(22);
    for (int i = 0; i < 50; ++i) {
        const Vec3 c = support::random_unit(g);
        const auto p = support::random_convex_polygon(g, c, 0.7, 12);
        const Vec3 n = unit(support::random_in_cap(g, c, 0.2).cross(support::random_unit(g)));
        const auto a = clip(p, n), b = clip(p, Vec3(-n));
        const double s = (a ? area(*a) : 0.0) + (b ? area(*b) : 0.0);
        CHECK(std::abs(s - area(p)) < 1e-12);
    }
}

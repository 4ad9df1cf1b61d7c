#pragma once

// Seeded generators and independent oracles shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <array>
#include <functional>
#include <random>
#include <vector>

#include "sphaera/convex_region.hpp"

namespace support {

using sphaera::GeodesicPolygon;
using sphaera::kPi;
using sphaera::Vec3;

inline Vec3 random_unit(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    for (;;) {
        Vec3 v(n(g), n(g), n(g));
        if (v.norm() > 1e-6) return v.normalized();
    }
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    Eigen::Quaterniond q(n(g), n(g), n(g), n(g));
    q.normalize();
    return q.toRotationMatrix();
}

/// Point at distance d from c in tangent direction a.
inline Vec3 polar_around(const Vec3& c, double a, double d) {
    const auto [t1, t2] = sphaera::tangent_basis(c);
    return std::cos(d) * c + std::sin(d) * (std::cos(a) * t1 + std::sin(a) * t2);
}

/// Uniform (by area) point of cap(c, r).
inline Vec3 random_in_cap(std::mt19937_64& g, const Vec3& c, double r) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double z = 1.0 - u(g) * (1.0 - std::cos(r));
    return polar_around(c, 2.0 * kPi * u(g), std::acos(z));
}

inline GeodesicPolygon random_convex_polygon(std::mt19937_64& g, const Vec3& c, double r, int points) {
    for (;;) {
        std::vector<Vec3> p;
        for (int i = 0; i < points; ++i) p.push_back(random_in_cap(g, c, r));
        try {
            return sphaera::convex_hull_s(p);
        } catch (const sphaera::GeometryError&) {
        }
    }
}

/// Convex polygon symmetric about c with kmin..kmax vertices.
inline GeodesicPolygon random_c_symmetric_polygon(std::mt19937_64& g, const Vec3& c, int kmin = 6, int kmax = 12,
                                                  double rlo = 0.3, double rhi = 0.9) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> pairs(kmin / 2, kmax / 2);
    for (;;) {
        const int m = pairs(g);
        std::vector<Vec3> p;
        for (int i = 0; i < m; ++i) {
            const double a = kPi * u(g);
            const double d = rlo + (rhi - rlo) * u(g);
            p.push_back(polar_around(c, a, d));
            p.push_back(polar_around(c, a + kPi, d));
        }
        try {
            auto hull = sphaera::convex_hull_s(p);
            if (static_cast<int>(hull.size()) >= kmin && static_cast<int>(hull.size()) <= kmax) return hull;
        } catch (const sphaera::GeometryError&) {
        }
    }
}

inline GeodesicPolygon rotated(const GeodesicPolygon& p, const Eigen::Matrix3d& r) {
    std::vector<Vec3> v;
    for (const auto& x : p.vertices()) v.push_back(r * x);
    return GeodesicPolygon(std::move(v), GeodesicPolygon::Check::ring);
}

/// Golden-section minimum of f on [a, b].
inline double golden_min(const std::function<double(double)>& f, double a, double b, int iters = 200) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return f(0.5 * (a + b));
}

/// Euclidean triangle area by Heron.
inline double heron(double a, double b, double c) {
    const double s = 0.5 * (a + b + c);
    return std::sqrt(std::max(0.0, s * (s - a) * (s - b) * (s - c)));
}

/// Spherical triangle area from its side lengths (L'Huilier).
inline double lhuilier(double a, double b, double c) {
    const double s = 0.5 * (a + b + c);
    const double t = std::tan(0.5 * s) * std::tan(0.5 * (s - a)) * std::tan(0.5 * (s - b)) * std::tan(0.5 * (s - c));
    return 4.0 * std::atan(std::sqrt(std::max(0.0, t)));
}

/// Radial curve r0 (1 + sum a_j cos(j t + p_j)) around c. Even harmonics only
/// keep the curve c-symmetric.
inline std::function<Vec3(double)> radial_curve(std::mt19937_64& g, const Vec3& c, double r0,
                                                const std::vector<int>& harmonics, double amp) {
    std::uniform_real_distribution<double> u(-amp, amp), ph(0.0, 2.0 * kPi);
    std::vector<std::array<double, 3>> terms;
    for (int j : harmonics) terms.push_back({double(j), u(g), ph(g)});
    return [c, r0, terms](double t) {
        double s = 1.0;
        for (const auto& [j, a, p] : terms) s += a * std::cos(j * t + p);
        return polar_around(c, t, r0 * s);
    };
}

} // namespace support

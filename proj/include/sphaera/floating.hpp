#pragma once

// Smooth convex curves on S^2, their geodesic curvature and the floating area.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include "sphaera/convex_region.hpp"

namespace sphaera {

/// Closed curve resampled at equal arclength steps, counterclockwise seen
/// from outside. Keeps the defining curve so points between samples are
/// exact.
class SmoothBoundary {
public:
    /// `curve` is 2 pi-periodic and traces the boundary once. Either
    /// orientation is accepted.
    static SmoothBoundary from_curve(std::function<Vec3(double)> curve, int samples = 1024);

    /// Raw cyclic samples, interpolated by a periodic cubic spline in ambient
    /// coordinates (chord-length knots) and projected back to the sphere.
    static SmoothBoundary from_samples(const std::vector<Vec3>& points, int samples = 1024);

    static SmoothBoundary from_cap(const CapSpec& cap, int samples = 1024);

    const std::vector<Vec3>& samples() const { return samples_; }
    const std::vector<double>& curvature() const { return kappa_; }
    double total_length() const { return length_; }
    double spacing() const { return length_ / static_cast<double>(samples_.size()); }

    /// Boundary point at arclength s (taken modulo total_length()).
    Vec3 point_at(double s) const;

    /// Normalized sample mean; inside the region for convex curves.
    Vec3 interior_point() const;

private:
    SmoothBoundary() = default;
    double param_of(double s) const;

    std::function<Vec3(double)> curve_;
    std::vector<double> fine_t_, fine_s_; // arclength table of the curve
    std::vector<Vec3> fine_p_;
    std::vector<Vec3> samples_;
    std::vector<double> kappa_;
    double length_ = 0.0;
    bool reversed_ = false;
};

/// <p'', p x p'> / |p'|^3 at sample i, with 5-point central differences on
/// the cyclic grid and one Richardson step. ResolutionError below 16 samples.
double geodesic_curvature(const std::vector<Vec3>& samples, double spacing, std::size_t i);
double geodesic_curvature(const SmoothBoundary& curve, std::size_t i);

/// Integral of max(kappa_g, 0)^(1/3) ds by the periodic trapezoid rule.
double floating_area(const SmoothBoundary& k);
/// Zero: the curvature vanishes almost everywhere on a polygon.
double floating_area(const GeodesicPolygon& p);
/// 2 pi sin r (cot r)^(1/3).
double floating_area(const CapSpec& cap);

/// Gauss-Bonnet: 2 pi minus the total geodesic curvature.
double area(const SmoothBoundary& k);

/// Polygon through the samples.
GeodesicPolygon to_polygon(const SmoothBoundary& k);

/// Boundary of {q : |q|_E <= 1} for the gnomonic ellipse with semi-axes a
/// along the direction psi and b across it, in the chart at c.
SmoothBoundary gnomonic_ellipse(const Vec3& c, double a, double b, double psi = 0.0, int samples = 1024);

struct AsymptoticRow {
    int n = 0;
    double dist = 0, dist_n2 = 0, omega_cubed_over_12 = 0, ratio = 0;
    bool flagged = false; ///< optimizer failure or degenerate (polygonal) input
};

using FloatingInput = std::variant<CapSpec, SmoothBoundary, GeodesicPolygon>;

/// dist = area - A_N, exact for caps and from max_inscribed_polygon
/// otherwise; ratio = dist N^2 / (Omega^3 / 12). N values must increase and
/// start at 8 or more.
std::vector<AsymptoticRow> asymptotic_law_check(const FloatingInput& k, const std::vector<int>& ns,
                                                int restarts = 8, std::uint64_t seed = 0);

void write_asymptotic_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows);

struct FloatingVerdict {
    double omega = 0, omega_cap = 0, area = 0, cap_radius = 0;
    double gap = 0; ///< omega_cap - omega
    bool pass = false;
};

/// Compares Omega(K) with Omega of the equal-area cap. PreconditionError
/// ("c_symmetry") when some sample's reflection through `center` is farther
/// than sym_tol from the curve.
FloatingVerdict floating_isoperimetric_check(const SmoothBoundary& k, const Vec3& center, double tol = 1e-3,
                                             double sym_tol = 1e-6);

/// Distance from p to the curve, refined between samples.
double distance_to_curve(const SmoothBoundary& k, const Vec3& p);

} // namespace sphaera

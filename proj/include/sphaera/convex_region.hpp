#pragma once

// Spherically convex regions on S^2: geodesic polygons, caps and ellipses.

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "sphaera/sphere_core.hpp"

namespace sphaera {

/// Closed cap of spherical radius `radius` around `center`.
struct CapSpec {
    Vec3 center;
    double radius = 0.0;

    double area() const;
    double perimeter() const;
    Vec3 boundary_point(double t) const;
};

/// Cyclically ordered vertices, counterclockwise seen from outside the sphere.
class GeodesicPolygon {
public:
    enum class Check {
        convex, ///< reject non-convex input
        ring    ///< any simple ring in an open hemisphere; convexity is only reported
    };

    /// Clockwise input is reversed. Throws InfeasibleError if no open
    /// hemisphere holds the vertices, DegeneracyError for fewer than three
    /// vertices, repeated or antipodal pairs, or zero area, and DomainError
    /// for a non-convex ring in convex mode.
    explicit GeodesicPolygon(std::vector<Vec3> vertices, Check check = Check::convex);

    std::size_t size() const { return v_.size(); }
    const std::vector<Vec3>& vertices() const { return v_; }
    const Vec3& vertex(std::size_t i) const { return v_[i % v_.size()]; }
    const std::vector<double>& edge_lengths() const { return len_; }

    /// A unit vector u with <u, v> > 0 for every vertex.
    const Vec3& hemisphere_center() const { return hc_; }

    /// Planar convexity of the gnomonic image at hemisphere_center().
    bool is_convex() const { return convex_; }

    /// Closed-region membership with slack `tol` on the edge half-spaces.
    bool contains(const Vec3& p, double tol = 1e-12) const;

private:
    std::vector<Vec3> v_;
    std::vector<double> len_;
    std::vector<Vec3> normals_; // unit v_i x v_{i+1}, pointing into the region
    Vec3 hc_;
    bool convex_ = false;
};

using Region = std::variant<GeodesicPolygon, CapSpec>;

/// Hemisphere center found by a perceptron seeded with the vertex mean.
std::optional<Vec3> find_hemisphere_center(const std::vector<Vec3>& points);

GeodesicPolygon convex_hull_s(const std::vector<Vec3>& points);

/// Signed area of the triangle (a, b, c), positive when counterclockwise.
double signed_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Girard excess: angle sum minus (k - 2) pi.
double area(const GeodesicPolygon& p);
/// Sum of signed triangle areas of the fan from the hemisphere center.
double fan_area(const GeodesicPolygon& p);
double perimeter(const GeodesicPolygon& p);
double diameter(const GeodesicPolygon& p);
/// Interior angle at vertex i, in (0, 2 pi).
double interior_angle(const GeodesicPolygon& p, std::size_t i);

/// Smallest enclosing cap (Welzl on the sphere).
CapSpec circumdisk(const GeodesicPolygon& p);
CapSpec circumdisk(const std::vector<Vec3>& points);

/// Caps through one, two or three boundary points.
CapSpec cap_from(const Vec3& a, const Vec3& b);
CapSpec cap_from(const Vec3& a, const Vec3& b, const Vec3& c);

/// Regular N-gon inscribed in cap(center, r); first vertex along the first
/// canonical tangent direction at center.
GeodesicPolygon polygonize_cap(const CapSpec& cap, int n);

/// Point of the short arc from a to b on the great circle <x, n> = 0, given
/// sa = <a, n> and sb = <b, n> of opposite signs.
Vec3 arc_crossing(const Vec3& a, const Vec3& b, double sa, double sb);

/// The part of p in the closed hemisphere <x, n> >= 0, if it has area.
std::optional<GeodesicPolygon> clip(const GeodesicPolygon& p, const Vec3& n);

struct PhiInterval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

/// Edges of p in the polar coordinates of f, prepared once for many levels.
class Slicer {
public:
    Slicer(const GeodesicPolygon& p, const Frame& f);

    /// Range [theta_min, theta_max] of the signed distance to L over p.
    std::pair<double, double> theta_range() const;
    /// Sorted phi values where C_theta meets the boundary, duplicates merged.
    std::vector<double> crossings(double theta) const;
    std::optional<PhiInterval> interval(double theta) const;

private:
    struct EdgeData {
        double ax, ay, az; // start point in frame coordinates
        double ux, uy, uz; // unit tangent in frame coordinates
        double len, r, tau, zlo, zhi;
    };
    std::vector<EdgeData> e_;
    double zmin_ = 1.0, zmax_ = -1.0;
};

std::pair<double, double> theta_range(const GeodesicPolygon& p, const Frame& f);

/// C_theta intersected with p, hulled to one interval.
std::optional<PhiInterval> slice_angular_interval(const GeodesicPolygon& p, const Frame& f, double theta);

/// All boundary crossings of C_theta, as sorted phi values with duplicates
/// merged.
std::vector<double> slice_crossings(const GeodesicPolygon& p, const Frame& f, double theta);

/// True iff every slice is a single arc. Exact when p meets L; otherwise a
/// scan over `levels` levels plus levels clustered at the theta extremes.
bool connectedness_check(const GeodesicPolygon& p, const Frame& f, int levels = 2048);

/// Support-angle intervals at the ends q1, q2 of p cap L. The angle of a
/// direction at q1 is measured from L toward q2, and at q2 from L toward q1,
/// both positive on the eP side.
struct SupportAngles {
    Vec3 q1, q2;
    double u1 = 0.0, l1 = 0.0; ///< cone at q1 spans [-l1, u1]
    double u2 = 0.0, l2 = 0.0; ///< cone at q2 spans [-l2, u2]

    /// Width of the feasible range for the upward angle beta at q1 of a
    /// symmetric pair of supporting lines. Nonnegative iff such a pair exists.
    double slack() const;
};

std::optional<SupportAngles> support_angles(const GeodesicPolygon& p, const Frame& f);
bool angular_monotonicity_check(const GeodesicPolygon& p, const Frame& f, double tol = 1e-9);

/// {x : d(f1, x) + d(x, f2) <= D}.
struct SphericalEllipse {
    Vec3 f1, f2;
    double D = 0.0;

    SphericalEllipse(const Vec3& f1, const Vec3& f2, double D);
    Vec3 midpoint() const;
    /// Boundary point on the geodesic ray from midpoint() in direction psi.
    Vec3 boundary_point(double psi) const;
};

bool ellipse_contains(const SphericalEllipse& e, const Vec3& x, double tol = 1e-12);
bool ellipse_is_convex(const SphericalEllipse& e);

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);
double point_region_distance(const Vec3& p, const Region& r);
bool region_contains(const Region& r, const Vec3& p);
/// Boundary samples with spacing at most 2 pi / resolution, plus vertices.
std::vector<Vec3> boundary_samples(const Region& r, int resolution = 4096);

double hausdorff_distance(const Region& a, const Region& b, int resolution = 4096);

} // namespace sphaera

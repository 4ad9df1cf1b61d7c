#pragma once

// Exact primitives on S^2 and S^3: distances, symmetrization frames, polar
// coordinates along an axis, rotations about the frame poles, gnomonic charts
// and Lexell circles.

#include <numbers>

#include <Eigen/Dense>

#include "sphaera/errors.hpp"

namespace sphaera {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// A point of S^2 or S^3 stored as a unit vector of the ambient space.
class UnitVector {
public:
    /// Accepts 3- or 4-vectors whose norm is 1 within 1e-12.
    explicit UnitVector(Eigen::VectorXd coords);

    /// Normalizes any non-zero 3- or 4-vector.
    static UnitVector normalized(const Eigen::VectorXd& v);

    int dim() const { return static_cast<int>(coords_.size()); }
    const Eigen::VectorXd& coords() const { return coords_; }
    Vec3 as_vec3() const;
    Vec4 as_vec4() const;

private:
    Eigen::VectorXd coords_;
};

/// arccos of the clamped inner product. Throws std::invalid_argument on a
/// dimension mismatch.
double sph_dist(const UnitVector& x, const UnitVector& y);

/// Spherical distance on S^2 for vectors already known to be unit. Uses the
/// atan2(|x*y|, <x,y>) form, which equals the clamped arccos but keeps full
/// precision for nearly coincident and nearly antipodal pairs.
double sph_dist(const Vec3& x, const Vec3& y);

/// Unit vector or DegeneracyError when the input has (near) zero length.
Vec3 unit(const Vec3& v);

/// Unit tangent at `a` pointing along the minor great-circle arc toward `b`.
Vec3 tangent_toward(const Vec3& a, const Vec3& b);

/// det[a b c]; positive when (a, b, c) turns counterclockwise seen from outside.
inline double orient(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

/// Unsigned area of the spherical triangle (a, b, c), valid up to area 2*pi.
double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Signed distance polar coordinates with respect to a Frame.
struct PolarCoord {
    double theta = 0.0; ///< signed distance from L, positive on the eP side
    double phi = 0.0;   ///< signed distance of the foot point on L from H
};

/// Symmetrization datum on S^2: hemisphere center c, direction eL of the axis
/// L at c and the pole direction eP = c x eL. H is the half great circle
/// through c in direction eP.
class Frame {
public:
    /// Builds a right-handed frame. eL is orthogonalized against c.
    Frame(const Vec3& c, const Vec3& eL);

    /// c = e1, eL = e2, eP = e3.
    static Frame standard();

    /// Frame centered at c whose axis L leaves c in the tangent direction
    /// cos(psi) t1 + sin(psi) t2, with (t1, t2) the canonical tangent basis
    /// returned by tangent_basis(c).
    static Frame at(const Vec3& c, double psi);

    const Vec3& c() const { return c_; }
    const Vec3& eL() const { return eL_; }
    const Vec3& eP() const { return eP_; }

    /// Coordinates (<p,c>, <p,eL>, <p,eP>).
    Vec3 local(const Vec3& p) const { return {p.dot(c_), p.dot(eL_), p.dot(eP_)}; }
    Vec3 ambient(const Vec3& q) const { return q.x() * c_ + q.y() * eL_ + q.z() * eP_; }

private:
    Vec3 c_, eL_, eP_;
};

/// Deterministic orthonormal tangent basis (t1, t2) at c with t1 x t2 = c.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& c);

/// DomainError outside the open hemisphere of f.c() or at a pole.
PolarCoord to_polar(const Frame& f, const Vec3& p);

/// (cos t cos p) c + (cos t sin p) eL + (sin t) eP. No range check.
Vec3 from_polar(const Frame& f, PolarCoord q);

/// Point of the distance curve C_theta with longitude phi. Both angles must
/// lie in (-pi/2, pi/2).
Vec3 distance_curve_point(const Frame& f, double theta, double phi);

/// Rotation about the frame poles (the eP axis) by dphi. Preserves theta.
Vec3 rotate_about_poles(const Frame& f, const Vec3& p, double dphi);

/// A circle on S^2 given by its spherical center and radius.
struct SmallCircle {
    Vec3 center;
    double radius = 0.0;

    /// Point at angle t around the center (arbitrary but fixed origin).
    Vec3 point(double t) const;
};

/// Locus of apexes w for which the triangle (x, y, w) has the same area as
/// (x, y, z): the circle through -x, -y and z.
SmallCircle lexell_area_locus(const Vec3& x, const Vec3& y, const Vec3& z);

/// Central projection from the origin onto the tangent plane at f.c(), in
/// (eL, eP) coordinates: (tan phi, tan theta / cos phi).
Vec2 gnomonic_project(const Frame& f, const Vec3& p);
Vec3 gnomonic_unproject(const Frame& f, const Vec2& q);

/// Orthonormal frame of S^3 at c. In the tangent model e1, e2 span the mirror
/// H and e3 is the direction of the axis L.
class FrameS3 {
public:
    FrameS3(const Vec4& c, const Vec4& e1, const Vec4& e2, const Vec4& e3);
    static FrameS3 standard();

    const Vec4& c() const { return c_; }
    const Vec4& e1() const { return e1_; }
    const Vec4& e2() const { return e2_; }
    const Vec4& e3() const { return e3_; }

private:
    Vec4 c_, e1_, e2_, e3_;
};

Vec3 gnomonic_project(const FrameS3& f, const Vec4& p);
Vec4 gnomonic_unproject(const FrameS3& f, const Vec3& q);

/// Gnomonic image of the distance curve C_theta in the tangent plane with
/// coordinates (y, z): the line z = 0 for theta = 0, otherwise one branch of
/// 1 = z^2 / tan^2(theta) - y^2.
struct DistanceHyperbola {
    bool is_line = true;
    double tan_theta = 0.0;
    int branch = 0; ///< sign of z on the branch; 0 for the line

    /// z^2/tan^2(theta) - y^2 - 1, or z for the line.
    double residual(double y, double z) const;
    /// Point of the branch with abscissa y.
    Vec2 point(double y) const;
};

DistanceHyperbola distance_curve_hyperbola(double theta);

} // namespace sphaera

#include "sphaera/sphere_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sphaera {

namespace {

constexpr double kUnitTol = 1e-12;

void require_open_angle(double a, const char* what) {
    if (!(std::abs(a) < kHalfPi)) {
        throw DomainError(std::string(what) + " must lie in (-pi/2, pi/2)");
    }
}

} // namespace

UnitVector::UnitVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {
    if (coords_.size() != 3 && coords_.size() != 4) {
        throw std::invalid_argument("UnitVector: dimension must be 3 or 4");
    }
    if (std::abs(coords_.norm() - 1.0) > kUnitTol) {
        throw DomainError("UnitVector: norm differs from 1 by more than 1e-12");
    }
}

UnitVector UnitVector::normalized(const Eigen::VectorXd& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw DegeneracyError("UnitVector: zero or non-finite vector");
    return UnitVector(v / n);
}

Vec3 UnitVector::as_vec3() const {
    if (dim() != 3) throw std::invalid_argument("UnitVector: not a point of S^2");
    return Vec3(coords_[0], coords_[1], coords_[2]);
}

Vec4 UnitVector::as_vec4() const {
    if (dim() != 4) throw std::invalid_argument("UnitVector: not a point of S^3");
    return Vec4(coords_[0], coords_[1], coords_[2], coords_[3]);
}

double sph_dist(const UnitVector& x, const UnitVector& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("sph_dist: dimension mismatch");
    return std::acos(std::clamp(x.coords().dot(y.coords()), -1.0, 1.0));
}

double sph_dist(const Vec3& x, const Vec3& y) { return std::atan2(x.cross(y).norm(), x.dot(y)); }

Vec3 unit(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 1e-300)) throw DegeneracyError("unit: zero-length vector");
    return v / n;
}

Vec3 tangent_toward(const Vec3& a, const Vec3& b) { return unit(b - b.dot(a) * a); }

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double det = std::abs(orient(a, b, c));
    const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    return 2.0 * std::atan2(det, den);
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3& c) {
    // Seed with the coordinate axis least aligned with c.
    Vec3 seed = Vec3::UnitX();
    if (std::abs(c.x()) > std::abs(c.y()) || std::abs(c.x()) > std::abs(c.z())) {
        seed = std::abs(c.y()) <= std::abs(c.z()) ? Vec3::UnitY() : Vec3::UnitZ();
    }
    const Vec3 t1 = unit(seed - seed.dot(c) * c);
    return {t1, c.cross(t1)};
}

Frame::Frame(const Vec3& c, const Vec3& eL) {
    c_ = unit(c);
    const Vec3 l = eL - eL.dot(c_) * c_;
    if (l.norm() < 1e-9 * std::max(1.0, eL.norm())) throw DegeneracyError("Frame: eL parallel to c");
    eL_ = l.normalized();
    eP_ = c_.cross(eL_).normalized();
}

Frame Frame::standard() { return Frame(Vec3::UnitX(), Vec3::UnitY()); }

Frame Frame::at(const Vec3& c, double psi) {
    const Vec3 cc = unit(c);
    const auto [t1, t2] = tangent_basis(cc);
    return Frame(cc, std::cos(psi) * t1 + std::sin(psi) * t2);
}

PolarCoord to_polar(const Frame& f, const Vec3& p) {
    const Vec3 q = f.local(p);
    if (!(q.x() > 0.0)) throw DomainError("to_polar: point outside the open hemisphere");
    const double rho = std::hypot(q.x(), q.y());
    if (!(rho > 0.0)) throw DomainError("to_polar: point is a pole");
    return {std::atan2(q.z(), rho), std::atan2(q.y(), q.x())};
}

Vec3 from_polar(const Frame& f, PolarCoord q) {
    const double ct = std::cos(q.theta);
    return f.ambient(Vec3(ct * std::cos(q.phi), ct * std::sin(q.phi), std::sin(q.theta)));
}

Vec3 distance_curve_point(const Frame& f, double theta, double phi) {
    require_open_angle(theta, "theta");
    require_open_angle(phi, "phi");
    return from_polar(f, {theta, phi});
}

Vec3 rotate_about_poles(const Frame& f, const Vec3& p, double dphi) {
    const Vec3 q = f.local(p);
    const double cs = std::cos(dphi), sn = std::sin(dphi);
    const double x = cs * q.x() - sn * q.y();
    const double y = sn * q.x() + cs * q.y();
    // Renormalize in the (c, eL) plane only so that the eP coordinate, and
    // with it theta, is carried over bit for bit.
    const double rho_in = std::hypot(q.x(), q.y());
    const double rho_out = std::hypot(x, y);
    const double s = rho_out > 0.0 ? rho_in / rho_out : 1.0;
    return f.ambient(Vec3(s * x, s * y, q.z()));
}

Vec3 SmallCircle::point(double t) const {
    const auto [t1, t2] = tangent_basis(center);
    return std::cos(radius) * center + std::sin(radius) * (std::cos(t) * t1 + std::sin(t) * t2);
}

SmallCircle lexell_area_locus(const Vec3& x, const Vec3& y, const Vec3& z) {
    if (x.cross(y).norm() < 1e-12) throw DegeneracyError("lexell_area_locus: x and y coincide or are antipodal");
    if (std::abs(orient(x, y, z)) < 1e-12) throw DegeneracyError("lexell_area_locus: z lies on the great circle of x, y");
    // Plane through -x, -y, z; its unit normal is the spherical center.
    const Vec3 a = -x, b = -y;
    Vec3 n = (b - a).cross(z - a);
    const double nn = n.norm();
    if (nn < 1e-14) throw DegeneracyError("lexell_area_locus: points do not span a plane");
    n /= nn;
    double d = n.dot(a);
    if (d < 0.0) {
        n = -n;
        d = -d;
    }
    return {n, std::acos(std::clamp(d, -1.0, 1.0))};
}

Vec2 gnomonic_project(const Frame& f, const Vec3& p) {
    const Vec3 q = f.local(p);
    if (!(q.x() > 1e-15)) throw DomainError("gnomonic_project: point not in the open hemisphere");
    return {q.y() / q.x(), q.z() / q.x()};
}

Vec3 gnomonic_unproject(const Frame& f, const Vec2& q) { return f.ambient(Vec3(1.0, q.x(), q.y()).normalized()); }

FrameS3::FrameS3(const Vec4& c, const Vec4& e1, const Vec4& e2, const Vec4& e3) : c_(c), e1_(e1), e2_(e2), e3_(e3) {
    Eigen::Matrix4d m;
    m << c, e1, e2, e3;
    if ((m.transpose() * m - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
        throw DomainError("FrameS3: axes are not orthonormal");
    }
}

FrameS3 FrameS3::standard() { return FrameS3(Vec4::UnitX(), Vec4::UnitY(), Vec4::UnitZ(), Vec4::UnitW()); }

Vec3 gnomonic_project(const FrameS3& f, const Vec4& p) {
    const double x = p.dot(f.c());
    if (!(x > 1e-15)) throw DomainError("gnomonic_project: point not in the open hemisphere");
    return Vec3(p.dot(f.e1()), p.dot(f.e2()), p.dot(f.e3())) / x;
}

Vec4 gnomonic_unproject(const FrameS3& f, const Vec3& q) {
    const Vec4 p = f.c() + q.x() * f.e1() + q.y() * f.e2() + q.z() * f.e3();
    return p.normalized();
}

double DistanceHyperbola::residual(double y, double z) const {
    if (is_line) return z;
    return z * z / (tan_theta * tan_theta) - y * y - 1.0;
}

Vec2 DistanceHyperbola::point(double y) const {
    if (is_line) return {y, 0.0};
    return {y, branch * std::abs(tan_theta) * std::sqrt(1.0 + y * y)};
}

DistanceHyperbola distance_curve_hyperbola(double theta) {
    require_open_angle(theta, "theta");
    if (theta == 0.0) return {};
    return {false, std::tan(theta), theta > 0.0 ? 1 : -1};
}

} // namespace sphaera

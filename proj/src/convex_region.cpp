#include "sphaera/convex_region.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace sphaera {

namespace {

struct Edge {
    Vec3 a, u; // start point and unit tangent toward the end point
    double len;
};

Edge edge_of(const Vec3& a, const Vec3& b) { return {a, tangent_toward(a, b), sph_dist(a, b)}; }

Vec3 edge_point(const Edge& e, double t) { return std::cos(t) * e.a + std::sin(t) * e.u; }

// Chart coordinates at hemisphere center h.
struct Chart {
    Vec3 h, t1, t2;
    explicit Chart(const Vec3& center) : h(center) { std::tie(t1, t2) = tangent_basis(center); }
    Vec2 operator()(const Vec3& p) const {
        const double x = p.dot(h);
        return {p.dot(t1) / x, p.dot(t2) / x};
    }
};

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool chart_convex(const std::vector<Vec3>& v, const Vec3& h) {
    const Chart chart(h);
    const std::size_t k = v.size();
    std::vector<Vec2> q(k);
    for (std::size_t i = 0; i < k; ++i) q[i] = chart(v[i]);
    double turning = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const Vec2 e0 = q[i] - q[(i + k - 1) % k];
        const Vec2 e1 = q[(i + 1) % k] - q[i];
        const double n0 = e0.norm(), n1 = e1.norm();
        if (n0 == 0.0 || n1 == 0.0) return false;
        const double s = cross2(e0, e1) / (n0 * n1);
        // Direction noise of a short edge grows like eps / length.
        const double noise = 4e-16 * std::max(1.0, q[i].norm()) / std::min(n0, n1);
        if (s < -1e-9 - noise) return false;
        turning += std::atan2(cross2(e0, e1), e0.dot(e1));
    }
    return std::abs(turning - 2.0 * kPi) < 1e-6;
}

bool in_cap(const CapSpec& c, const Vec3& p, double tol) { return sph_dist(c.center, p) <= c.radius + tol; }

} // namespace

double signed_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    return 2.0 * std::atan2(orient(a, b, c), 1.0 + a.dot(b) + b.dot(c) + c.dot(a));
}

double CapSpec::area() const { return 2.0 * kPi * (1.0 - std::cos(radius)); }

double CapSpec::perimeter() const { return 2.0 * kPi * std::sin(radius); }

Vec3 CapSpec::boundary_point(double t) const { return SmallCircle{center, radius}.point(t); }

std::optional<Vec3> find_hemisphere_center(const std::vector<Vec3>& points) {
    if (points.empty()) return std::nullopt;
    Vec3 u = Vec3::Zero();
    for (const auto& p : points) u += p;
    u = u.norm() > 1e-12 ? Vec3(u.normalized()) : points.front();
    for (int it = 0; it < 100000; ++it) {
        std::size_t worst = 0;
        double m = u.dot(points[0]);
        for (std::size_t i = 1; i < points.size(); ++i) {
            const double d = u.dot(points[i]);
            if (d < m) {
                m = d;
                worst = i;
            }
        }
        if (m > 1e-12) return u;
        const Vec3 w = u + points[worst];
        if (w.norm() < 1e-15) return std::nullopt;
        u = w.normalized();
    }
    return std::nullopt;
}

GeodesicPolygon::GeodesicPolygon(std::vector<Vec3> vertices, Check check) : v_(std::move(vertices)) {
    if (v_.size() < 3) throw DegeneracyError("GeodesicPolygon: fewer than 3 vertices");
    for (auto& p : v_) p = unit(p);
    const std::size_t k = v_.size();
    for (std::size_t i = 0; i < k; ++i) {
        if ((v_[i] - v_[(i + 1) % k]).norm() < 1e-14) throw DegeneracyError("GeodesicPolygon: repeated vertex");
        if ((v_[i] + v_[(i + 1) % k]).norm() < 1e-14) throw DegeneracyError("GeodesicPolygon: antipodal vertices");
    }
    const auto h = find_hemisphere_center(v_);
    if (!h) throw InfeasibleError("GeodesicPolygon: vertices not in an open hemisphere");
    hc_ = *h;
    double a = 0.0;
    for (std::size_t i = 0; i < k; ++i) a += signed_triangle_area(hc_, v_[i], v_[(i + 1) % k]);
    if (a < 0.0) {
        std::reverse(v_.begin(), v_.end());
        a = -a;
    }
    if (!(a > 1e-15)) throw DegeneracyError("GeodesicPolygon: zero area");
    // A better-conditioned chart: the circumcenter.
    const CapSpec cd = circumdisk(v_);
    if (cd.radius < kHalfPi - 1e-9) hc_ = cd.center;
    len_.resize(k);
    normals_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        len_[i] = sph_dist(v_[i], v_[(i + 1) % k]);
        normals_[i] = unit(v_[i].cross(v_[(i + 1) % k]));
    }
    convex_ = chart_convex(v_, hc_);
    if (check == Check::convex && !convex_) throw DomainError("GeodesicPolygon: not convex");
}

bool GeodesicPolygon::contains(const Vec3& p, double tol) const {
    if (!(p.dot(hc_) > 0.0)) return false;
    const std::size_t k = v_.size();
    if (convex_) {
        for (const auto& n : normals_) {
            if (n.dot(p) < -tol) return false;
        }
        return true;
    }
    const Chart chart(hc_);
    const Vec2 q = chart(p);
    bool inside = false;
    for (std::size_t i = 0, j = k - 1; i < k; j = i++) {
        const Vec2 a = chart(v_[i]), b = chart(v_[j]);
        if ((a.y() > q.y()) != (b.y() > q.y())) {
            const double x = a.x() + (q.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (q.x() < x) inside = !inside;
        }
    }
    return inside;
}

GeodesicPolygon convex_hull_s(const std::vector<Vec3>& points) {
    if (points.size() < 3) throw DegeneracyError("convex_hull_s: fewer than 3 points");
    std::vector<Vec3> pts;
    pts.reserve(points.size());
    for (const auto& p : points) pts.push_back(unit(p));
    const auto h = find_hemisphere_center(pts);
    if (!h) throw InfeasibleError("convex_hull_s: no open hemisphere contains the points");
    const Chart chart(*h);
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Vec2> q(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) q[i] = chart(pts[i]);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return q[a].x() < q[b].x() || (q[a].x() == q[b].x() && q[a].y() < q[b].y());
    });
    // Andrew's monotone chain; collinear points are dropped.
    std::vector<std::size_t> hull(2 * idx.size());
    std::size_t m = 0;
    auto turn = [&](std::size_t o, std::size_t a, std::size_t b) { return cross2(q[a] - q[o], q[b] - q[o]); };
    for (std::size_t i : idx) {
        while (m >= 2 && turn(hull[m - 2], hull[m - 1], i) <= 0.0) --m;
        hull[m++] = i;
    }
    for (std::size_t t = idx.size() - 1, lower = m + 1; t-- > 0;) {
        const std::size_t i = idx[t];
        while (m >= lower && turn(hull[m - 2], hull[m - 1], i) <= 0.0) --m;
        hull[m++] = i;
    }
    if (m < 4) throw DegeneracyError("convex_hull_s: points are collinear");
    std::vector<Vec3> out;
    for (std::size_t i = 0; i + 1 < m; ++i) out.push_back(pts[hull[i]]);
    return GeodesicPolygon(std::move(out));
}

double interior_angle(const GeodesicPolygon& p, std::size_t i) {
    const std::size_t k = p.size();
    const Vec3& v = p.vertex(i);
    const Vec3 n_next = unit(v.cross(p.vertex(i + 1)));
    const Vec3 n_prev = unit(p.vertex(i + k - 1).cross(v));
    const Vec3 b = n_next.cross(v);  // toward next
    const Vec3 a = -n_prev.cross(v); // toward previous
    double ang = std::atan2(v.dot(b.cross(a)), b.dot(a));
    if (ang < 0.0) ang += 2.0 * kPi;
    return ang;
}

double area(const GeodesicPolygon& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += interior_angle(p, i) - kPi;
    return s + 2.0 * kPi;
}

double fan_area(const GeodesicPolygon& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += signed_triangle_area(p.hemisphere_center(), p.vertex(i), p.vertex(i + 1));
    }
    return s;
}

double perimeter(const GeodesicPolygon& p) {
    const auto& l = p.edge_lengths();
    return std::accumulate(l.begin(), l.end(), 0.0);
}

double diameter(const GeodesicPolygon& p) {
    const auto& v = p.vertices();
    double best = 1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            const double d = v[i].dot(v[j]);
            if (d < best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    }
    return sph_dist(v[bi], v[bj]);
}

CapSpec cap_from(const Vec3& a, const Vec3& b) { return {unit(a + b), 0.5 * sph_dist(a, b)}; }

CapSpec cap_from(const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 n = (b - a).cross(c - a);
    if (n.norm() < 1e-300) return cap_from(a, b);
    n.normalize();
    if (n.dot(a) < 0.0) n = -n;
    const double r = std::max({sph_dist(n, a), sph_dist(n, b), sph_dist(n, c)});
    return {n, r};
}

CapSpec circumdisk(const std::vector<Vec3>& points) {
    if (points.empty()) throw DegeneracyError("circumdisk: no points");
    std::vector<Vec3> p = points;
    std::mt19937_64 rng(0x5eed);
    std::shuffle(p.begin(), p.end(), rng);
    constexpr double tol = 1e-13;
    CapSpec d{p[0], 0.0};
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (in_cap(d, p[i], tol)) continue;
        d = {p[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (in_cap(d, p[j], tol)) continue;
            d = cap_from(p[i], p[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (in_cap(d, p[k], tol)) continue;
                d = cap_from(p[i], p[j], p[k]);
            }
        }
    }
    double worst = 0.0;
    for (const auto& q : p) worst = std::max(worst, sph_dist(d.center, q));
    if (worst > d.radius + 1e-9) throw ConvergenceError("circumdisk: enclosing cap misses a point");
    d.radius = std::max(d.radius, worst);
    return d;
}

CapSpec circumdisk(const GeodesicPolygon& p) { return circumdisk(p.vertices()); }

GeodesicPolygon polygonize_cap(const CapSpec& cap, int n) {
    if (n < 3) throw DegeneracyError("polygonize_cap: fewer than 3 vertices");
    const auto [t1, t2] = tangent_basis(cap.center);
    std::vector<Vec3> v(n);
    for (int j = 0; j < n; ++j) {
        const double a = 2.0 * kPi * j / n;
        v[j] = std::cos(cap.radius) * cap.center + std::sin(cap.radius) * (std::cos(a) * t1 + std::sin(a) * t2);
    }
    return GeodesicPolygon(std::move(v));
}

Vec3 arc_crossing(const Vec3& a, const Vec3& b, double sa, double sb) {
    return unit((sa > sb ? 1.0 : -1.0) * (sa * b - sb * a));
}

std::optional<GeodesicPolygon> clip(const GeodesicPolygon& p, const Vec3& n) {
    std::vector<Vec3> out;
    const std::size_t k = p.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Vec3& a = p.vertex(i);
        const Vec3& b = p.vertex(i + 1);
        const double sa = a.dot(n), sb = b.dot(n);
        if (sa >= 0.0) out.push_back(a);
        if ((sa >= 0.0) != (sb >= 0.0)) out.push_back(arc_crossing(a, b, sa, sb));
    }
    std::vector<Vec3> v;
    for (const auto& q : out) {
        if (v.empty() || (q - v.back()).norm() > 1e-14) v.push_back(q);
    }
    while (v.size() > 1 && (v.front() - v.back()).norm() <= 1e-14) v.pop_back();
    if (v.size() < 3) return std::nullopt;
    try {
        return GeodesicPolygon(std::move(v), GeodesicPolygon::Check::ring);
    } catch (const DegeneracyError&) {
        return std::nullopt;
    }
}

Slicer::Slicer(const GeodesicPolygon& p, const Frame& f) {
    e_.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Edge e = edge_of(p.vertex(i), p.vertex(i + 1));
        const Vec3 a = f.local(e.a), u = f.local(e.u);
        EdgeData d{a.x(), a.y(), a.z(), u.x(), u.y(), u.z(), e.len, std::hypot(a.z(), u.z()), std::atan2(u.z(), a.z()), 0.0, 0.0};
        const double zb = std::cos(e.len) * a.z() + std::sin(e.len) * u.z();
        d.zlo = std::min(a.z(), zb);
        d.zhi = std::max(a.z(), zb);
        if (d.tau >= 0.0 && d.tau <= e.len) d.zhi = d.r;
        const double tau2 = d.tau < 0.0 ? d.tau + kPi : d.tau - kPi;
        if (tau2 >= 0.0 && tau2 <= e.len) d.zlo = -d.r;
        zmin_ = std::min(zmin_, d.zlo);
        zmax_ = std::max(zmax_, d.zhi);
        e_.push_back(d);
    }
}

std::pair<double, double> Slicer::theta_range() const {
    return {std::asin(std::clamp(zmin_, -1.0, 1.0)), std::asin(std::clamp(zmax_, -1.0, 1.0))};
}

std::vector<double> Slicer::crossings(double theta) const {
    const double s = std::sin(theta);
    constexpr double ztol = 1e-15, ttol = 1e-13;
    std::vector<double> phis;
    for (const auto& e : e_) {
        if (s < e.zlo - ztol || s > e.zhi + ztol || e.r == 0.0) continue;
        const double d = std::acos(std::clamp(s / e.r, -1.0, 1.0));
        for (double t : {e.tau - d, e.tau + d}) {
            t = std::remainder(t, 2.0 * kPi);
            if (t < -ttol || t > e.len + ttol) continue;
            t = std::clamp(t, 0.0, e.len);
            const double ct = std::cos(t), st = std::sin(t);
            phis.push_back(std::atan2(ct * e.ay + st * e.uy, ct * e.ax + st * e.ux));
        }
    }
    std::sort(phis.begin(), phis.end());
    std::vector<double> out;
    for (double x : phis) {
        if (out.empty() || x - out.back() > 1e-12) out.push_back(x);
    }
    return out;
}

std::optional<PhiInterval> Slicer::interval(double theta) const {
    const auto x = crossings(theta);
    if (x.empty()) return std::nullopt;
    return PhiInterval{x.front(), x.back()};
}

std::pair<double, double> theta_range(const GeodesicPolygon& p, const Frame& f) { return Slicer(p, f).theta_range(); }

std::vector<double> slice_crossings(const GeodesicPolygon& p, const Frame& f, double theta) {
    return Slicer(p, f).crossings(theta);
}

std::optional<PhiInterval> slice_angular_interval(const GeodesicPolygon& p, const Frame& f, double theta) {
    if (!(std::abs(theta) < kHalfPi)) throw DomainError("slice_angular_interval: theta out of range");
    return Slicer(p, f).interval(theta);
}

namespace {

int slice_components(const GeodesicPolygon& p, const Slicer& sl, const Frame& f, double theta) {
    const auto x = sl.crossings(theta);
    int comps = 0;
    bool prev_inside = false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == 0 || !prev_inside) ++comps;
        if (j + 1 < x.size()) prev_inside = p.contains(from_polar(f, {theta, 0.5 * (x[j] + x[j + 1])}));
    }
    return comps;
}

} // namespace

bool connectedness_check(const GeodesicPolygon& p, const Frame& f, int levels) {
    const Slicer sl(p, f);
    const auto [lo, hi] = sl.theta_range();
    if (lo <= 0.0 && hi >= 0.0 && p.is_convex()) return true;
    std::vector<double> thetas;
    for (int j = 0; j <= levels; ++j) thetas.push_back(lo + (hi - lo) * j / levels);
    for (int m = 3; m <= 12; ++m) {
        const double d = (hi - lo) * std::pow(10.0, -m);
        thetas.push_back(lo + d);
        thetas.push_back(hi - d);
    }
    for (double t : thetas) {
        if (slice_components(p, sl, f, t) > 1) return false;
    }
    return true;
}

double SupportAngles::slack() const { return std::min(kPi - l1, kPi - u2) - std::max(u1, l2); }

std::optional<SupportAngles> support_angles(const GeodesicPolygon& p, const Frame& f) {
    const auto iv = slice_angular_interval(p, f, 0.0);
    if (!iv || iv->length() < 1e-12) return std::nullopt;
    SupportAngles s;
    s.q1 = from_polar(f, {0.0, iv->lo});
    s.q2 = from_polar(f, {0.0, iv->hi});
    auto cone = [&](const Vec3& q, const Vec3& ref, double& u, double& l) {
        u = 0.0;
        l = 0.0;
        for (const auto& v : p.vertices()) {
            if (sph_dist(q, v) < 1e-9) continue;
            const Vec3 d = v - v.dot(q) * q;
            const double a = std::atan2(d.dot(f.eP()), d.dot(ref));
            u = std::max(u, a);
            l = std::max(l, -a);
        }
    };
    const Vec3 tl1 = -std::sin(iv->lo) * f.c() + std::cos(iv->lo) * f.eL();
    const Vec3 tl2 = -std::sin(iv->hi) * f.c() + std::cos(iv->hi) * f.eL();
    cone(s.q1, tl1, s.u1, s.l1);
    cone(s.q2, -tl2, s.u2, s.l2);
    return s;
}

bool angular_monotonicity_check(const GeodesicPolygon& p, const Frame& f, double tol) {
    const auto s = support_angles(p, f);
    return s && s->slack() >= -tol;
}

SphericalEllipse::SphericalEllipse(const Vec3& a, const Vec3& b, double d) : f1(unit(a)), f2(unit(b)), D(d) {
    if (f1.cross(f2).norm() < 1e-12) throw DegeneracyError("SphericalEllipse: foci coincide or are antipodal");
    if (!(D > 0.0 && D < 2.0 * kPi)) throw DomainError("SphericalEllipse: D outside (0, 2 pi)");
}

Vec3 SphericalEllipse::midpoint() const { return unit(f1 + f2); }

Vec3 SphericalEllipse::boundary_point(double psi) const {
    const Vec3 m = midpoint();
    const Vec3 t1 = tangent_toward(m, f2);
    const Vec3 t2 = m.cross(t1);
    const Vec3 dir = std::cos(psi) * t1 + std::sin(psi) * t2;
    auto g = [&](double t) {
        const Vec3 q = std::cos(t) * m + std::sin(t) * dir;
        return sph_dist(q, f1) + sph_dist(q, f2) - D;
    };
    double lo = 0.0, hi = kPi;
    if (g(lo) >= 0.0) return m;
    if (g(hi) <= 0.0) throw DomainError("SphericalEllipse: boundary not reached");
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    return std::cos(t) * m + std::sin(t) * dir;
}

bool ellipse_contains(const SphericalEllipse& e, const Vec3& x, double tol) {
    return sph_dist(e.f1, x) + sph_dist(x, e.f2) <= e.D + tol;
}

bool ellipse_is_convex(const SphericalEllipse& e) { return e.D < kPi; }

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 n = unit(a.cross(b));
    const double h = p.dot(n);
    const Vec3 foot = p - h * n;
    if (foot.norm() > 1e-15 && a.cross(foot).dot(n) >= 0.0 && foot.cross(b).dot(n) >= 0.0) {
        return std::atan2(std::abs(h), foot.norm());
    }
    return std::min(sph_dist(p, a), sph_dist(p, b));
}

bool region_contains(const Region& r, const Vec3& p) {
    if (const auto* poly = std::get_if<GeodesicPolygon>(&r)) return poly->contains(p);
    const auto& cap = std::get<CapSpec>(r);
    return sph_dist(cap.center, p) <= cap.radius;
}

double point_region_distance(const Vec3& p, const Region& r) {
    if (const auto* poly = std::get_if<GeodesicPolygon>(&r)) {
        if (poly->contains(p)) return 0.0;
        double best = kPi;
        for (std::size_t i = 0; i < poly->size(); ++i) {
            best = std::min(best, point_segment_distance(p, poly->vertex(i), poly->vertex(i + 1)));
        }
        return best;
    }
    const auto& cap = std::get<CapSpec>(r);
    return std::max(0.0, sph_dist(cap.center, p) - cap.radius);
}

std::vector<Vec3> boundary_samples(const Region& r, int resolution) {
    std::vector<Vec3> out;
    if (const auto* poly = std::get_if<GeodesicPolygon>(&r)) {
        for (std::size_t i = 0; i < poly->size(); ++i) {
            const Edge e = edge_of(poly->vertex(i), poly->vertex(i + 1));
            const int n = std::max(1, static_cast<int>(std::ceil(e.len * resolution / (2.0 * kPi))));
            for (int j = 0; j < n; ++j) out.push_back(edge_point(e, e.len * j / n));
        }
        return out;
    }
    const auto& cap = std::get<CapSpec>(r);
    for (int j = 0; j < resolution; ++j) out.push_back(cap.boundary_point(2.0 * kPi * j / resolution));
    return out;
}

double hausdorff_distance(const Region& a, const Region& b, int resolution) {
    double h = 0.0;
    for (const auto& p : boundary_samples(a, resolution)) h = std::max(h, point_region_distance(p, b));
    for (const auto& p : boundary_samples(b, resolution)) h = std::max(h, point_region_distance(p, a));
    return h;
}

} // namespace sphaera

#include "sphaera/floating.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>

#include <Eigen/Sparse>

#include "sphaera/extremal.hpp"
#include "sphaera/steiner.hpp"

namespace sphaera {

namespace {

constexpr int kFineFactor = 64;
// Finite-difference curvature error is about 1e-10; the cube root would
// turn it into a visible floor.
constexpr double kCurvatureNoise = 1e-8;

// Periodic cubic spline through cyclic points with chord-length knots.
class PeriodicSpline {
public:
    explicit PeriodicSpline(const std::vector<Vec3>& p) : p_(p) {
        const std::size_t m = p.size();
        if (m < 4) throw ResolutionError("SmoothBoundary: fewer than 4 raw samples");
        u_.assign(m + 1, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const double h = (p[(j + 1) % m] - p[j]).norm();
            if (!(h > 0.0)) throw DegeneracyError("SmoothBoundary: repeated raw sample");
            u_[j + 1] = u_[j] + h;
        }
        Eigen::SparseMatrix<double> a(static_cast<int>(m), static_cast<int>(m));
        std::vector<Eigen::Triplet<double>> t;
        Eigen::MatrixXd rhs(m, 3);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t jp = (j + 1) % m, jm = (j + m - 1) % m;
            const double h0 = step(jm), h1 = step(j);
            t.emplace_back(j, jm, h0);
            t.emplace_back(j, j, 2.0 * (h0 + h1));
            t.emplace_back(j, jp, h1);
            rhs.row(j) = 6.0 * ((p[jp] - p[j]) / h1 - (p[j] - p[jm]) / h0).transpose();
        }
        a.setFromTriplets(t.begin(), t.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(a);
        if (lu.info() != Eigen::Success) throw NumericError("SmoothBoundary: spline system is singular");
        m_ = lu.solve(rhs);
    }

    double period() const { return u_.back(); }

    Vec3 operator()(double u) const {
        const std::size_t m = p_.size();
        u -= std::floor(u / period()) * period();
        std::size_t j = std::upper_bound(u_.begin(), u_.end(), u) - u_.begin();
        j = std::clamp<std::size_t>(j, 1, m) - 1;
        const std::size_t jp = (j + 1) % m;
        const double h = step(j), a = (u_[j + 1] - u) / h, b = (u - u_[j]) / h;
        const Vec3 mj = m_.row(j).transpose(), mp = m_.row(jp).transpose();
        return a * p_[j] + b * p_[jp] + ((a * a * a - a) * mj + (b * b * b - b) * mp) * (h * h / 6.0);
    }

private:
    double step(std::size_t j) const { return u_[j + 1] - u_[j]; }

    std::vector<Vec3> p_;
    std::vector<double> u_;
    Eigen::MatrixXd m_;
};

std::size_t cyclic(std::size_t n, std::size_t i, long k) {
    const long ln = static_cast<long>(n);
    return static_cast<std::size_t>(((static_cast<long>(i) + k) % ln + ln) % ln);
}

Vec3 stencil_d1(const std::vector<Vec3>& p, std::size_t i, std::size_t m, double h) {
    const auto at = [&](long k) -> const Vec3& { return p[cyclic(p.size(), i, k * static_cast<long>(m))]; };
    return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
}

Vec3 stencil_d2(const std::vector<Vec3>& p, std::size_t i, std::size_t m, double h) {
    const auto at = [&](long k) -> const Vec3& { return p[cyclic(p.size(), i, k * static_cast<long>(m))]; };
    return (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) / (12.0 * h * h);
}

} // namespace

SmoothBoundary SmoothBoundary::from_curve(std::function<Vec3(double)> curve, int samples) {
    if (samples < 16) throw ResolutionError("SmoothBoundary: fewer than 16 samples");
    SmoothBoundary b;
    b.curve_ = std::move(curve);
    const std::size_t m = static_cast<std::size_t>(kFineFactor) * samples;
    b.fine_t_.resize(m + 1);
    b.fine_s_.resize(m + 1);
    b.fine_p_.resize(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
        b.fine_t_[k] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
        b.fine_p_[k] = k == m ? b.fine_p_[0] : unit(b.curve_(b.fine_t_[k]));
        b.fine_s_[k] = k == 0 ? 0.0 : b.fine_s_[k - 1] + sph_dist(b.fine_p_[k - 1], b.fine_p_[k]);
    }
    b.length_ = b.fine_s_[m];
    if (!(b.length_ > 0.0)) throw DegeneracyError("SmoothBoundary: curve has zero length");
    b.samples_.resize(samples);
    for (int i = 0; i < samples; ++i) b.samples_[i] = b.point_at(b.length_ * i / samples);
    b.kappa_.resize(samples);
    double total = 0.0;
    for (int i = 0; i < samples; ++i) total += b.kappa_[i] = geodesic_curvature(b.samples_, b.spacing(), i);
    if (total < 0.0) {
        b.reversed_ = true;
        for (int i = 0; i < samples; ++i) b.samples_[i] = b.point_at(b.length_ * i / samples);
        for (int i = 0; i < samples; ++i) b.kappa_[i] = geodesic_curvature(b.samples_, b.spacing(), i);
    }
    return b;
}

SmoothBoundary SmoothBoundary::from_samples(const std::vector<Vec3>& points, int samples) {
    auto spline = std::make_shared<PeriodicSpline>(points);
    return from_curve([spline](double t) { return unit((*spline)(t / (2.0 * kPi) * spline->period())); }, samples);
}

SmoothBoundary SmoothBoundary::from_cap(const CapSpec& cap, int samples) {
    return from_curve([cap](double t) { return cap.boundary_point(t); }, samples);
}

double SmoothBoundary::param_of(double s) const {
    s -= std::floor(s / length_) * length_;
    std::size_t k = std::upper_bound(fine_s_.begin(), fine_s_.end(), s) - fine_s_.begin();
    k = std::clamp<std::size_t>(k, 1, fine_s_.size() - 1) - 1;
    // Regula falsi (Illinois) on the distance from the fine node k.
    double a = fine_t_[k], b = fine_t_[k + 1];
    double fa = fine_s_[k] - s, fb = fine_s_[k + 1] - s;
    if (fa == 0.0) return a;
    int side = 0;
    for (int it = 0; it < 40 && fb != fa; ++it) {
        const double t = b - fb * (b - a) / (fb - fa);
        const double ft = fine_s_[k] + sph_dist(fine_p_[k], unit(curve_(t))) - s;
        if (std::abs(ft) <= 1e-16 * (1.0 + s) || t == a || t == b) return t;
        if ((ft > 0.0) == (fb > 0.0)) {
            b = t;
            fb = ft;
            if (side == -1) fa *= 0.5;
            side = -1;
        } else {
            a = t;
            fa = ft;
            if (side == 1) fb *= 0.5;
            side = 1;
        }
    }
    return 0.5 * (a + b);
}

Vec3 SmoothBoundary::point_at(double s) const { return unit(curve_(param_of(reversed_ ? length_ - s : s))); }

Vec3 SmoothBoundary::interior_point() const {
    Vec3 m = Vec3::Zero();
    for (const auto& p : samples_) m += p;
    return unit(m);
}

double geodesic_curvature(const std::vector<Vec3>& p, double h, std::size_t i) {
    if (p.size() < 16) throw ResolutionError("geodesic_curvature: fewer than 16 samples");
    const Vec3 d1 = (16.0 * stencil_d1(p, i, 1, h) - stencil_d1(p, i, 2, 2.0 * h)) / 15.0;
    const Vec3 d2 = (16.0 * stencil_d2(p, i, 1, h) - stencil_d2(p, i, 2, 2.0 * h)) / 15.0;
    const double s = d1.norm();
    return d2.dot(p[i].cross(d1)) / (s * s * s);
}

double geodesic_curvature(const SmoothBoundary& curve, std::size_t i) {
    return geodesic_curvature(curve.samples(), curve.spacing(), i);
}

double floating_area(const SmoothBoundary& k) {
    double s = 0.0;
    for (double kappa : k.curvature()) s += kappa > kCurvatureNoise ? std::cbrt(kappa) : 0.0;
    return s * k.spacing();
}

double floating_area(const GeodesicPolygon&) { return 0.0; }

double floating_area(const CapSpec& cap) {
    if (cap.radius >= kHalfPi) return 0.0;
    return 2.0 * kPi * std::sin(cap.radius) * std::cbrt(1.0 / std::tan(cap.radius));
}

double area(const SmoothBoundary& k) {
    double s = 0.0;
    for (double kappa : k.curvature()) s += kappa;
    return 2.0 * kPi - s * k.spacing();
}

GeodesicPolygon to_polygon(const SmoothBoundary& k) { return GeodesicPolygon(k.samples()); }

SmoothBoundary gnomonic_ellipse(const Vec3& c, double a, double b, double psi, int samples) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("gnomonic_ellipse: semi-axes must be positive");
    const Frame f = Frame::at(c, psi);
    return SmoothBoundary::from_curve(
        [f, a, b](double t) { return gnomonic_unproject(f, Vec2(a * std::cos(t), b * std::sin(t))); }, samples);
}

std::vector<AsymptoticRow> asymptotic_law_check(const FloatingInput& k, const std::vector<int>& ns, int restarts,
                                                std::uint64_t seed) {
    if (ns.empty() || ns.front() < 8) throw DomainError("asymptotic_law_check: N values must start at 8 or more");
    for (std::size_t i = 1; i < ns.size(); ++i) {
        if (ns[i] <= ns[i - 1]) throw DomainError("asymptotic_law_check: N values must increase");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double omega = 0.0;
    std::function<double(int)> dist;
    bool degenerate = false;
    if (const auto* cap = std::get_if<CapSpec>(&k)) {
        omega = floating_area(*cap);
        dist = [cap](int n) { return cap->area() - sas_constant(cap->radius, n); };
    } else if (const auto* curve = std::get_if<SmoothBoundary>(&k)) {
        omega = floating_area(*curve);
        const double a = area(*curve);
        dist = [curve, a, restarts, seed](int n) {
            InscribeOptions opt;
            opt.restarts = restarts;
            opt.seed = seed;
            return a - max_inscribed_polygon(*curve, n, opt).area;
        };
    } else {
        const auto& p = std::get<GeodesicPolygon>(k);
        degenerate = true;
        const double a = area(p);
        dist = [&p, a, restarts, seed](int n) {
            InscribeOptions opt;
            opt.restarts = restarts;
            opt.seed = seed;
            return a - max_inscribed_polygon(p, n, opt).area;
        };
    }
    const double scale = omega * omega * omega / 12.0;
    std::vector<AsymptoticRow> rows;
    for (int n : ns) {
        AsymptoticRow row;
        row.n = n;
        row.flagged = degenerate;
        try {
            row.dist = dist(n);
            row.dist_n2 = row.dist * n * n;
            row.omega_cubed_over_12 = scale;
            row.ratio = scale > 0.0 ? row.dist_n2 / scale : nan;
        } catch (const GeometryError&) {
            row.flagged = true;
            row.dist = row.dist_n2 = row.ratio = nan;
            row.omega_cubed_over_12 = scale;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_asymptotic_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows) {
    out << "N,dist,distN2,omega_cubed_over_12,ratio\n" << std::setprecision(17);
    for (const auto& r : rows) {
        out << r.n << ',' << r.dist << ',' << r.dist_n2 << ',' << r.omega_cubed_over_12 << ',' << r.ratio << '\n';
    }
}

double distance_to_curve(const SmoothBoundary& k, const Vec3& p) {
    const auto& s = k.samples();
    std::size_t j = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i].dot(p) > s[j].dot(p)) j = i;
    }
    const double h = k.spacing(), s0 = h * static_cast<double>(j);
    const auto d = [&](double t) { return sph_dist(p, k.point_at(t)); };
    // Golden section on [s0 - h, s0 + h], where the nearest point lies.
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = s0 - h, b = s0 + h;
    double x1 = b - g * (b - a), x2 = a + g * (b - a), f1 = d(x1), f2 = d(x2);
    for (int it = 0; it < 60 && b - a > 1e-15; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = d(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = d(x2);
        }
    }
    return std::min({f1, f2, d(s0)});
}

FloatingVerdict floating_isoperimetric_check(const SmoothBoundary& k, const Vec3& center, double tol,
                                             double sym_tol) {
    const Vec3 c = unit(center);
    for (const auto& q : k.samples()) {
        const Vec3 r = 2.0 * q.dot(c) * c - q;
        if (distance_to_curve(k, r) > sym_tol) throw PreconditionError("c_symmetry");
    }
    FloatingVerdict v;
    v.omega = floating_area(k);
    v.area = area(k);
    v.cap_radius = equal_area_cap_radius(v.area);
    v.omega_cap = floating_area(CapSpec{c, v.cap_radius});
    v.gap = v.omega_cap - v.omega;
    v.pass = v.omega <= v.omega_cap + tol;
    return v;
}

} // namespace sphaera

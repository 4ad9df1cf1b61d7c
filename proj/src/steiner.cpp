#include "sphaera/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sphaera {

namespace {

void require_in_hemisphere(const GeodesicPolygon& p, const Frame& f) {
    for (const auto& v : p.vertices()) {
        if (!(v.dot(f.c()) > 0.0)) throw DomainError("steiner: region leaves the open hemisphere of the frame center");
    }
}

// Side direction at w along the boundary, skipping vertices that coincide
// with w. step = +1 walks forward from index i, -1 backward.
Vec3 boundary_direction(const GeodesicPolygon& p, const Vec3& w, std::size_t i, int step) {
    const std::size_t k = p.size();
    for (std::size_t n = 0; n < k; ++n) {
        const Vec3& v = p.vertex((i + k + step * static_cast<long>(n)) % k);
        if ((v - w).norm() > 1e-14) return tangent_toward(w, v);
    }
    throw DegeneracyError("cut_angle_sum: polygon collapsed to the cut point");
}

} // namespace

SlabRegion::SlabRegion(Frame f, std::vector<double> th, std::vector<std::optional<PhiInterval>> iv)
    : frame(std::move(f)), thetas(std::move(th)), intervals(std::move(iv)) {
    if (thetas.size() != intervals.size()) throw std::invalid_argument("SlabRegion: level count mismatch");
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (!(std::abs(thetas[i]) < kHalfPi)) throw DomainError("SlabRegion: level outside (-pi/2, pi/2)");
        if (i > 0 && !(thetas[i] > thetas[i - 1])) throw DomainError("SlabRegion: levels not strictly increasing");
    }
}

std::vector<double> theta_grid(double lo, double hi, int levels) {
    if (levels < 3) throw DomainError("theta_grid: need at least 3 levels");
    if (!(hi > lo)) throw DegeneracyError("theta_grid: empty theta range");
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    std::vector<double> t(levels);
    for (int j = 0; j < levels; ++j) t[j] = mid - half * std::cos(kPi * j / (levels - 1));
    t.front() = lo;
    t.back() = hi;
    std::vector<double> out;
    for (double x : t) {
        if (out.empty() || x > out.back()) out.push_back(x);
    }
    return out;
}

std::vector<double> theta_grid(const std::vector<double>& breakpoints, int levels) {
    std::vector<double> b;
    for (double x : breakpoints) {
        if (b.empty() || x - b.back() > 1e-12) b.push_back(x);
    }
    if (b.size() < 2) throw DegeneracyError("theta_grid: empty theta range");
    const double total = b.back() - b.front();
    std::vector<double> out{b.front()};
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        int n = static_cast<int>(std::lround(levels * (b[i + 1] - b[i]) / total));
        n = std::max(2, n + (n % 2));
        const double mid = 0.5 * (b[i] + b[i + 1]), half = 0.5 * (b[i + 1] - b[i]);
        for (int j = 1; j < n; ++j) {
            const double x = mid - half * std::cos(kPi * j / n);
            if (x > out.back()) out.push_back(x);
        }
        if (b[i + 1] > out.back()) out.push_back(b[i + 1]);
    }
    return out;
}

SlabRegion slab_of(const GeodesicPolygon& p, const Frame& f, int levels) {
    require_in_hemisphere(p, f);
    const Slicer sl(p, f);
    const auto [lo, hi] = sl.theta_range();
    std::vector<double> br{lo, hi};
    for (const auto& v : p.vertices()) br.push_back(std::clamp(std::asin(std::clamp(v.dot(f.eP()), -1.0, 1.0)), lo, hi));
    std::sort(br.begin(), br.end());
    auto th = theta_grid(br, levels);
    std::vector<std::optional<PhiInterval>> iv(th.size());
    for (std::size_t j = 0; j < th.size(); ++j) {
        iv[j] = sl.interval(th[j]);
        if (!iv[j] && (j == 0 || j + 1 == th.size())) {
            // Rounding in asin can push an extreme level just past the tip.
            const double nudge = (j == 0 ? 1.0 : -1.0) * 1e-13 * std::max(1.0, hi - lo);
            iv[j] = sl.interval(th[j] + nudge);
        }
    }
    return SlabRegion(f, std::move(th), std::move(iv));
}

SlabRegion steiner_symmetral(const SlabRegion& r) {
    std::vector<std::optional<PhiInterval>> iv(r.intervals.size());
    for (std::size_t j = 0; j < iv.size(); ++j) {
        if (!r.intervals[j]) continue;
        const double h = 0.5 * r.intervals[j]->length();
        iv[j] = PhiInterval{-h, h};
    }
    return SlabRegion(r.frame, r.thetas, std::move(iv));
}

SlabRegion steiner_symmetral(const GeodesicPolygon& p, const Frame& f, int levels) {
    require_in_hemisphere(p, f);
    if (!connectedness_check(p, f)) throw PreconditionError("connectedness");
    return steiner_symmetral(slab_of(p, f, levels));
}

double area_slab(const SlabRegion& r) {
    const auto& x = r.thetas;
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = r.intervals[j] ? r.intervals[j]->length() * std::cos(x[j]) : 0.0;
    const std::size_t N = n - 1; // number of subintervals
    if (N == 1) return 0.5 * (x[1] - x[0]) * (y[0] + y[1]);
    double s = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= N; i += 2) {
        const double h0 = x[i + 1] - x[i], h1 = x[i + 2] - x[i + 1];
        s += (h0 + h1) / 6.0 *
             ((2.0 - h1 / h0) * y[i] + (h0 + h1) * (h0 + h1) / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
    }
    if (N % 2 == 1) {
        // Last subinterval from the quadratic through the final three nodes.
        const double h0 = x[N - 1] - x[N - 2], h1 = x[N] - x[N - 1];
        const double alpha = (2.0 * h1 * h1 + 3.0 * h1 * h0) / (6.0 * (h0 + h1));
        const double beta = (h1 * h1 + 3.0 * h1 * h0) / (6.0 * h0);
        const double eta = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
        s += alpha * y[N] + beta * y[N - 1] - eta * y[N - 2];
    }
    return s;
}

GeodesicPolygon symmetral_to_polygon(const SlabRegion& r, int target_vertices) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < r.thetas.size(); ++j) {
        if (r.intervals[j]) idx.push_back(j);
    }
    if (idx.size() < 3) throw DegeneracyError("symmetral_to_polygon: fewer than 3 non-empty levels");
    const std::size_t per_side = std::max<std::size_t>(3, static_cast<std::size_t>(target_vertices) / 2);
    std::vector<std::size_t> sel;
    if (idx.size() <= per_side) {
        sel = idx;
    } else {
        for (std::size_t k = 0; k < per_side; ++k) {
            const std::size_t pos = (k * (idx.size() - 1) + (per_side - 1) / 2) / (per_side - 1);
            if (sel.empty() || idx[pos] != sel.back()) sel.push_back(idx[pos]);
        }
    }
    std::vector<Vec3> pts;
    for (std::size_t j : sel) pts.push_back(from_polar(r.frame, {r.thetas[j], r.intervals[j]->hi}));
    for (auto it = sel.rbegin(); it != sel.rend(); ++it) pts.push_back(from_polar(r.frame, {r.thetas[*it], r.intervals[*it]->lo}));
    std::vector<Vec3> v;
    for (const auto& q : pts) {
        if (v.empty() || (q - v.back()).norm() > 1e-12) v.push_back(q);
    }
    while (v.size() > 1 && (v.front() - v.back()).norm() <= 1e-12) v.pop_back();
    return GeodesicPolygon(std::move(v), GeodesicPolygon::Check::ring);
}

double cut_angle_sum(const GeodesicPolygon& p, const Vec3& n) {
    const std::size_t k = p.size();
    std::vector<double> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = p.vertex(i).dot(n);
    struct Cut {
        Vec3 w, side;
    };
    std::vector<Cut> cuts;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = (i + 1) % k;
        const bool pi = s[i] >= 0.0, pj = s[j] >= 0.0;
        if (pi == pj) continue;
        const Vec3 w = arc_crossing(p.vertex(i), p.vertex(j), s[i], s[j]);
        // Leaving the kept side walks back to vertex i, entering walks on to j.
        cuts.push_back({w, pi ? boundary_direction(p, w, i, -1) : boundary_direction(p, w, j, +1)});
    }
    if (cuts.size() != 2) throw NumericError("cut_angle_sum: cut does not split the polygon into two parts");
    double sum = 0.0;
    for (int m = 0; m < 2; ++m) {
        const Vec3 along = tangent_toward(cuts[m].w, cuts[1 - m].w);
        sum += std::atan2(along.cross(cuts[m].side).norm(), along.dot(cuts[m].side));
    }
    return sum;
}

ApplicableAxis find_applicable_axis(const GeodesicPolygon& p, const Vec3& c_in, const Vec3& h_dir) {
    const Vec3 c = unit(c_in);
    const Vec3 h = unit(h_dir - h_dir.dot(c) * c);
    const Vec3 nH = unit(c.cross(h));
    double sp = kPi, sq = -kPi;
    const std::size_t k = p.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Vec3& a = p.vertex(i);
        const Vec3& b = p.vertex(i + 1);
        const double sa = a.dot(nH), sb = b.dot(nH);
        if ((sa >= 0.0) == (sb >= 0.0)) continue;
        const Vec3 x = arc_crossing(a, b, sa, sb);
        const double s = std::atan2(x.dot(h), x.dot(c));
        sp = std::min(sp, s);
        sq = std::max(sq, s);
    }
    if (!(sq > sp)) throw NumericError("find_applicable_axis: H does not cross the region");
    auto z_at = [&](double t) -> Vec3 { return std::cos(t) * c + std::sin(t) * h; };
    auto tan_at = [&](double t) -> Vec3 { return -std::sin(t) * c + std::cos(t) * h; };
    auto g = [&](double t) { return cut_angle_sum(p, tan_at(t)) - kPi; };
    // The root is side-independent: the far piece has angle sum 2 pi - (a1 + a2).
    const double pad = 1e-7 * (sq - sp);
    double lo = sp + pad, hi = sq - pad;
    double glo = g(lo), ghi = g(hi);
    if ((glo > 0.0) == (ghi > 0.0)) {
        constexpr int scan = 64;
        double prev_t = lo, prev_g = glo;
        bool found = false;
        for (int j = 1; j <= scan && !found; ++j) {
            const double t = lo + (hi - lo) * j / scan;
            const double v = g(t);
            if ((v > 0.0) != (prev_g > 0.0)) {
                lo = prev_t;
                hi = t;
                glo = prev_g;
                ghi = v;
                found = true;
            }
            prev_t = t;
            prev_g = v;
        }
        if (!found) {
            std::ostringstream msg;
            msg << "find_applicable_axis: no sign change on [" << sp + pad << ", " << sq - pad << "], g = (" << glo
                << ", " << ghi << ")";
            throw NumericError(msg.str());
        }
    }
    const bool rising = ghi > 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((g(mid) > 0.0) == rising ? hi : lo) = mid;
    }
    const double t = 0.5 * (lo + hi);
    ApplicableAxis out{Frame(z_at(t), nH), g(t) + kPi, 0.0, 0.0};
    const double ga = g(lo) + kPi, gb = g(hi) + kPi;
    out.angle_sum_lo = std::min(ga, gb);
    out.angle_sum_hi = std::max(ga, gb);
    if (!angular_monotonicity_check(p, out.frame, 1e-8)) {
        throw NumericError("find_applicable_axis: frame at the root fails angular monotonicity");
    }
    return out;
}

MonotonicityReport verify_monotonicity(const GeodesicPolygon& p, const Frame& f, int levels) {
    require_in_hemisphere(p, f);
    if (!connectedness_check(p, f)) throw PreconditionError("connectedness");
    if (!angular_monotonicity_check(p, f)) throw PreconditionError("angular_monotonicity");
    const SlabRegion r = steiner_symmetral(slab_of(p, f, levels));
    const GeodesicPolygon q = symmetral_to_polygon(r, 2 * levels);
    MonotonicityReport rep;
    rep.area_before = area(p);
    rep.area_after = area_slab(r);
    rep.perim_before = perimeter(p);
    rep.perim_after = perimeter(q);
    rep.diam_before = diameter(p);
    rep.diam_after = diameter(q);
    rep.convex_after = q.is_convex();
    rep.angularly_monotone_input = true;
    return rep;
}

double schedule_angle(int k, int directions) {
    if (directions > 0) return kPi * (k % directions) / directions;
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    const double x = k * golden;
    return kPi * (x - std::floor(x));
}

GeodesicPolygon symmetrize_step(const GeodesicPolygon& p, const Frame& f, const ConvergenceOptions& opt) {
    return symmetral_to_polygon(steiner_symmetral(p, f, opt.levels), opt.polygon_vertices);
}

void require_c_symmetric(const GeodesicPolygon& p, const Vec3& c, double tol) {
    for (const auto& v : p.vertices()) {
        const Vec3 r = 2.0 * v.dot(c) * c - v;
        double best = kPi;
        for (const auto& w : p.vertices()) best = std::min(best, (r - w).norm());
        if (best > tol) throw PreconditionError("c_symmetry");
    }
}

Trajectory converge_to_cap(const GeodesicPolygon& p, double eps, int max_iters, Strategy strategy,
                           const ConvergenceOptions& opt) {
    if (!(eps > 0.0)) throw DomainError("converge_to_cap: eps must be positive");
    const double area0 = area(p);
    const double r_eq = equal_area_cap_radius(area0);
    Vec3 center = opt.center ? unit(*opt.center) : circumdisk(p).center;
    if (strategy == Strategy::symmetric) {
        require_c_symmetric(p, center);
    } else if (!(diameter(p) < kHalfPi)) {
        throw PreconditionError("diameter_below_half_pi");
    }
    Trajectory out;
    GeodesicPolygon q = p;
    for (int k = 0;; ++k) {
        const CapSpec cd = circumdisk(q);
        if (strategy == Strategy::recentered) center = cd.center;
        out.cap = CapSpec{center, r_eq};
        TrajectoryRow row;
        row.iteration = k;
        row.area = area(q);
        row.perimeter = perimeter(q);
        row.diameter = diameter(q);
        row.circumradius = cd.radius;
        row.hausdorff_to_cap = hausdorff_distance(q, out.cap, opt.hausdorff_resolution);
        out.rows.push_back(row);
        if (row.hausdorff_to_cap <= eps) {
            out.converged = true;
            break;
        }
        if (k >= max_iters) break;
        const double psi = schedule_angle(k, opt.directions);
        Frame f = Frame::at(center, psi);
        if (strategy == Strategy::recentered) {
            const auto [t1, t2] = tangent_basis(center);
            f = find_applicable_axis(q, center, std::cos(psi) * t1 + std::sin(psi) * t2).frame;
        }
        q = symmetrize_step(q, f, opt);
    }
    return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
    out << "iteration,area,perimeter,diameter,circumradius,hausdorff_to_cap\n";
    out << std::setprecision(17);
    for (const auto& r : t.rows) {
        out << r.iteration << ',' << r.area << ',' << r.perimeter << ',' << r.diameter << ',' << r.circumradius << ','
            << r.hausdorff_to_cap << '\n';
    }
}

double equal_area_cap_radius(double a) {
    if (!(a > 0.0 && a < 4.0 * kPi)) throw DomainError("equal_area_cap_radius: area outside (0, 4 pi)");
    return std::acos(1.0 - a / (2.0 * kPi));
}

double symmetrized_z_endpoints(double z1, double z2) {
    return (z2 - z1) / (std::sqrt(1.0 + z2 * z2) * std::sqrt(1.0 + z1 * z1) + 1.0 + z1 * z2);
}

double symmetrized_z_endpoints_tan(double z1, double z2) { return std::tan(0.5 * (std::atan(z2) - std::atan(z1))); }

} // namespace sphaera

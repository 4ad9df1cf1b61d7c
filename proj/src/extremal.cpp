#include "sphaera/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

namespace sphaera {

namespace {

// Closed boundary parametrized on [0, period), counterclockwise.
struct Boundary {
    double period = 0.0;
    std::function<Vec3(double)> at;
    Vec3 origin;      // fan apex for the signed area
    bool smooth = false;
};

Boundary polygon_boundary(const GeodesicPolygon& p) {
    const std::size_t k = p.size();
    std::vector<double> start(k + 1, 0.0);
    std::vector<Vec3> dir(k);
    for (std::size_t i = 0; i < k; ++i) {
        start[i + 1] = start[i] + p.edge_lengths()[i];
        dir[i] = tangent_toward(p.vertex(i), p.vertex(i + 1));
    }
    Boundary b;
    b.period = start[k];
    b.origin = p.hemisphere_center();
    b.at = [p, start, dir](double s) {
        s -= std::floor(s / start.back()) * start.back();
        std::size_t i = std::upper_bound(start.begin(), start.end(), s) - start.begin();
        i = std::clamp<std::size_t>(i, 1, p.size()) - 1;
        const double d = s - start[i];
        return Vec3(std::cos(d) * p.vertex(i) + std::sin(d) * dir[i]);
    };
    return b;
}

Boundary make_boundary(const InscribeTarget& k) {
    if (const auto* p = std::get_if<GeodesicPolygon>(&k)) return polygon_boundary(*p);
    Boundary b;
    b.smooth = true;
    if (const auto* cap = std::get_if<CapSpec>(&k)) {
        if (!(cap->radius > 0.0 && cap->radius < kHalfPi)) throw DomainError("max_inscribed_polygon: cap radius");
        b.period = 2.0 * kPi;
        b.origin = cap->center;
        b.at = [cap = *cap](double t) { return cap.boundary_point(t); };
    } else {
        const auto& c = std::get<SmoothBoundary>(k);
        b.period = c.total_length();
        b.origin = c.interior_point();
        b.at = [c](double s) { return c.point_at(s); };
    }
    return b;
}

class Ascent {
public:
    Ascent(const Boundary& b, std::vector<double> t) : b_(b), t_(std::move(t)), v_(t_.size()) {
        for (std::size_t i = 0; i < t_.size(); ++i) v_[i] = b_.at(t_[i]);
    }

    double area() const {
        double s = 0.0;
        for (std::size_t i = 0; i < v_.size(); ++i) s += tri(v_[i], v_[(i + 1) % v_.size()]);
        return s;
    }

    // Golden-section sweeps until two consecutive sweeps gain less than tol.
    void coordinate_ascent(double tol = 1e-10, int max_sweeps = 5000) {
        int quiet = 0;
        for (int sweep = 0; sweep < max_sweeps && quiet < 2; ++sweep) {
            double gain = 0.0;
            for (std::size_t i = 0; i < t_.size(); ++i) gain += improve(i);
            quiet = gain < tol ? quiet + 1 : 0;
        }
    }

    // Newton steps on the finite-difference Hessian, which is cyclic
    // tridiagonal because each parameter only meets its two neighbours.
    void newton_polish(int max_iters = 30) {
        const std::size_t n = t_.size();
        if (n < 3) return;
        const double d = 1e-3 * b_.period / static_cast<double>(n);
        for (int it = 0; it < max_iters; ++it) {
            Eigen::VectorXd g(n);
            Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                const double f0 = local(i, t_[i]), fp = local(i, t_[i] + d), fm = local(i, t_[i] - d);
                g(i) = (fp - fm) / (2.0 * d);
                h(i, i) = (fp - 2.0 * f0 + fm) / (d * d);
                const std::size_t j = (i + 1) % n;
                const double tj = t_[j] + (j == 0 ? b_.period : 0.0);
                const auto e = [&](double si, double sj) { return tri(b_.at(t_[i] + si), b_.at(tj + sj)); };
                const double m = (e(d, d) - e(d, -d) - e(-d, d) + e(-d, -d)) / (4.0 * d * d);
                h(i, j) += m;
                h(j, i) += m;
            }
            const Eigen::VectorXd step = h.partialPivLu().solve(-g);
            if (!step.allFinite() || step.cwiseAbs().maxCoeff() < 1e-14 * b_.period) return;
            const double a0 = area();
            bool accepted = false;
            for (double lambda = 1.0; lambda > 1e-3 && !accepted; lambda *= 0.5) {
                std::vector<double> t = t_;
                for (std::size_t i = 0; i < n; ++i) t[i] += lambda * step(i);
                if (!ordered(t)) continue;
                Ascent trial(b_, t);
                if (trial.area() > a0) {
                    *this = trial;
                    accepted = true;
                }
            }
            if (!accepted) return;
        }
    }

    const std::vector<double>& params() const { return t_; }
    const std::vector<Vec3>& vertices() const { return v_; }

private:
    double tri(const Vec3& a, const Vec3& c) const { return signed_triangle_area(b_.origin, a, c); }

    Vec3 prev(std::size_t i) const { return v_[(i + v_.size() - 1) % v_.size()]; }
    Vec3 next(std::size_t i) const { return v_[(i + 1) % v_.size()]; }

    double local(std::size_t i, double s) const {
        const Vec3 x = b_.at(s);
        return tri(prev(i), x) + tri(x, next(i));
    }

    bool ordered(const std::vector<double>& t) const {
        for (std::size_t i = 0; i + 1 < t.size(); ++i) {
            if (!(t[i] < t[i + 1])) return false;
        }
        return t.back() < t.front() + b_.period;
    }

    double improve(std::size_t i) {
        const std::size_t n = t_.size();
        const double lo = i == 0 ? t_[n - 1] - b_.period : t_[i - 1];
        const double hi = i + 1 == n ? t_[0] + b_.period : t_[i + 1];
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = lo, c = hi;
        double x1 = c - g * (c - a), x2 = a + g * (c - a);
        double f1 = local(i, x1), f2 = local(i, x2);
        while (c - a > 1e-13 * b_.period) {
            if (f1 > f2) {
                c = x2;
                x2 = x1;
                f2 = f1;
                x1 = c - g * (c - a);
                f1 = local(i, x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (c - a);
                f2 = local(i, x2);
            }
        }
        const double f0 = local(i, t_[i]);
        const double x = f1 > f2 ? x1 : x2, fx = std::max(f1, f2);
        if (!(fx > f0) || !(x > lo && x < hi)) return 0.0;
        t_[i] = x;
        v_[i] = b_.at(x);
        return fx - f0;
    }

    Boundary b_;
    std::vector<double> t_;
    std::vector<Vec3> v_;
};

// Rotate so the smallest parameter modulo the period comes first.
std::vector<double> normalized(std::vector<double> t, double period) {
    for (double& x : t) x -= std::floor(x / period) * period;
    std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
    return t;
}

} // namespace

double sas_constant(double r, int n) {
    if (!(r > 0.0 && r < kHalfPi)) throw DomainError("sas_constant: r outside (0, pi/2)");
    if (n < 3) throw DomainError("sas_constant: N < 3");
    const double a = kPi / n;
    return 2.0 * n * std::atan(std::cos(a) / (std::sin(a) * std::cos(r))) - (n - 2) * kPi;
}

GeodesicPolygon cap_regular_polygon(double r, int n, const Vec3& center) {
    if (!(r > 0.0 && r < kHalfPi)) throw DomainError("cap_regular_polygon: r outside (0, pi/2)");
    if (n < 3) throw DomainError("cap_regular_polygon: N < 3");
    return polygonize_cap({unit(center), r}, n);
}

int worker_threads() {
    if (const char* e = std::getenv("SPHAERA_THREADS")) {
        const int n = std::atoi(e);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

InscribedSolution max_inscribed_polygon(const InscribeTarget& k, int n, const InscribeOptions& opt) {
    if (n < 3) throw DomainError("max_inscribed_polygon: N < 3");
    if (opt.restarts < 1) throw DomainError("max_inscribed_polygon: restarts < 1");
    if (const auto* p = std::get_if<GeodesicPolygon>(&k)) {
        if (!p->is_convex()) throw PreconditionError("convexity");
        if (p->size() <= static_cast<std::size_t>(n)) {
            InscribedSolution s{*p, area(*p), {}, 0, std::nullopt};
            double acc = 0.0;
            for (std::size_t i = 0; i < p->size(); ++i) {
                s.boundary_params.push_back(acc);
                acc += p->edge_lengths()[i];
            }
            if (opt.center) s.contains_center = p->contains(*opt.center, 1e-12);
            return s;
        }
    }
    const Boundary b = make_boundary(k);
    struct Result {
        double area = -1.0;
        std::vector<double> params;
    };
    std::vector<Result> results(opt.restarts);
    std::atomic<int> next{0};
    const auto work = [&] {
        for (int r; (r = next++) < opt.restarts;) {
            std::vector<double> t(n);
            if (r == 0) {
                for (int i = 0; i < n; ++i) t[i] = b.period * i / n;
            } else {
                std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                                  static_cast<std::uint32_t>(r)};
                std::mt19937_64 g(seq);
                std::uniform_real_distribution<double> u(0.0, b.period);
                for (double& x : t) x = u(g);
                std::sort(t.begin(), t.end());
                if (std::adjacent_find(t.begin(), t.end()) != t.end()) continue;
            }
            Ascent a(b, t);
            if (b.smooth) {
                // Sweeps mix slowly along the chain; Newton takes over once near.
                a.coordinate_ascent(1e-7);
                a.newton_polish();
            }
            a.coordinate_ascent();
            results[r] = {a.area(), normalized(a.params(), b.period)};
        }
    };
    const int threads = std::min(opt.threads > 0 ? opt.threads : worker_threads(), opt.restarts);
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    const Result* best = nullptr;
    for (const auto& r : results) {
        if (r.params.empty()) continue;
        if (!best || r.area > best->area + 1e-12 ||
            (std::abs(r.area - best->area) <= 1e-12 && r.params < best->params)) {
            best = &r;
        }
    }
    if (!best) throw NumericError("max_inscribed_polygon: every restart failed");
    std::vector<Vec3> v;
    for (double t : best->params) v.push_back(b.at(t));
    GeodesicPolygon poly(v);
    InscribedSolution s{poly, area(poly), best->params, opt.restarts, std::nullopt};
    if (opt.center) s.contains_center = poly.contains(*opt.center, 1e-12);
    return s;
}

Functional area_functional() {
    return {"area", [](const GeodesicPolygon& p) { return area(p); }, [](const CapSpec& c) { return c.area(); }};
}

Functional perimeter_functional() {
    return {"perimeter", [](const GeodesicPolygon& p) { return perimeter(p); },
            [](const CapSpec& c) { return c.perimeter(); }};
}

Functional diameter_functional() {
    return {"diameter", [](const GeodesicPolygon& p) { return diameter(p); },
            [](const CapSpec& c) { return 2.0 * c.radius; }};
}

DriverResult extremal_driver(const GeodesicPolygon& k, const Vec3& center, const Functional& f, Direction d,
                             double eps, int max_iters, double tol, const ConvergenceOptions& opt) {
    const Vec3 c = unit(center);
    require_c_symmetric(k, c);
    DriverResult out;
    out.cap = CapSpec{c, equal_area_cap_radius(area(k))};
    out.cap_value = f.on_cap(out.cap);
    GeodesicPolygon q = k;
    for (int i = 0;; ++i) {
        try {
            out.values.push_back(f.on_polygon(q));
        } catch (const std::exception& e) {
            throw GeometryError("extremal_driver: functional '" + f.name + "' failed at iteration " +
                                std::to_string(i) + ": " + e.what());
        }
        if (hausdorff_distance(q, out.cap, opt.hausdorff_resolution) <= eps) {
            out.converged = true;
            break;
        }
        if (i >= max_iters) break;
        q = symmetrize_step(q, Frame::at(c, schedule_angle(i, opt.directions)), opt);
    }
    const double f0 = out.values.front();
    out.verdict = d == Direction::max ? f0 <= out.cap_value + tol : f0 >= out.cap_value - tol;
    return out;
}

} // namespace sphaera

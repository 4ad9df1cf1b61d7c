// The thirteen acceptance criteria, shared by `sphaera --cmd suite` and the
// acceptance test binary. Thresholds are pinned here.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "sphaera/centroid_winternitz.hpp"
#include "sphaera/cli.hpp"
#include "sphaera/extremal.hpp"
#include "sphaera/highdim.hpp"
#include "sphaera/steiner.hpp"

namespace sphaera {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

Vec3 random_unit(Rng& g) {
    std::normal_distribution<double> n;
    for (;;) {
        const Vec3 v(n(g), n(g), n(g));
        if (v.norm() > 1e-6) return v.normalized();
    }
}

Vec3 polar_around(const Vec3& c, double a, double d) {
    const auto [t1, t2] = tangent_basis(c);
    return std::cos(d) * c + std::sin(d) * (std::cos(a) * t1 + std::sin(a) * t2);
}

GeodesicPolygon c_symmetric_polygon(Rng& g, const Vec3& c, int kmin, int kmax) {
    for (;;) {
        const int m = std::uniform_int_distribution<int>(kmin / 2, kmax / 2)(g);
        std::vector<Vec3> p;
        for (int i = 0; i < m; ++i) {
            const double a = uniform(g, 0.0, kPi), d = uniform(g, 0.3, 0.9);
            p.push_back(polar_around(c, a, d));
            p.push_back(polar_around(c, a + kPi, d));
        }
        try {
            auto hull = convex_hull_s(p);
            if (static_cast<int>(hull.size()) >= kmin && static_cast<int>(hull.size()) <= kmax) return hull;
        } catch (const GeometryError&) {
        }
    }
}

GeodesicPolygon convex_polygon(Rng& g, const Vec3& c, double r, int points) {
    for (;;) {
        std::vector<Vec3> p;
        for (int i = 0; i < points; ++i) {
            const double z = 1.0 - uniform(g, 0.0, 1.0) * (1.0 - std::cos(r));
            p.push_back(polar_around(c, uniform(g, 0.0, 2.0 * kPi), std::acos(z)));
        }
        try {
            return convex_hull_s(p);
        } catch (const GeometryError&) {
        }
    }
}

bool strictly_convex(const SmoothBoundary& k) {
    for (double x : k.curvature()) {
        if (!(x > 1e-3)) return false;
    }
    return true;
}

// Radial curve r0 (1 + sum a_j cos(j t + p_j)) around c, for the listed
// harmonics; regenerated until strictly convex.
SmoothBoundary radial_oval(Rng& g, const Vec3& c, const std::vector<int>& harmonics, double amp, int samples) {
    for (;;) {
        const double r0 = uniform(g, 0.3, 0.8);
        std::vector<std::pair<int, std::pair<double, double>>> terms;
        for (int j : harmonics) terms.push_back({j, {uniform(g, -amp, amp), uniform(g, 0.0, 2.0 * kPi)}});
        auto k = SmoothBoundary::from_curve(
            [c, r0, terms](double t) {
                double s = 1.0;
                for (const auto& [j, ap] : terms) s += ap.first * std::cos(j * t + ap.second);
                return polar_around(c, t, r0 * s);
            },
            samples);
        if (strictly_convex(k)) return k;
    }
}

SmoothBoundary symmetric_oval(Rng& g, int i, Vec3& c) {
    c = random_unit(g);
    if (i % 2 == 0) return gnomonic_ellipse(c, uniform(g, 0.3, 0.8), uniform(g, 0.2, 0.6), uniform(g, 0.0, kPi), 1024);
    return radial_oval(g, c, {2, 4}, 0.05, 1024);
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

struct Criterion {
    int id;
    std::string check;
    double limit;
    std::function<std::pair<bool, std::string>()> body;
};

// Corpus of criteria 2 to 4.
struct SymmetralCase {
    double area_err = 0, perim_gain = 0, diam_gain = 0;
    bool convex = false;
};

std::vector<SymmetralCase> symmetral_corpus() {
    Rng g(2024);
    std::vector<SymmetralCase> out;
    for (int i = 0; i < 50; ++i) {
        const Vec3 c = random_unit(g);
        const GeodesicPolygon p = c_symmetric_polygon(g, c, 6, 12);
        const Frame f = Frame::at(c, uniform(g, 0.0, kPi));
        const SlabRegion s = steiner_symmetral(p, f, 2048);
        const GeodesicPolygon q = symmetral_to_polygon(s);
        out.push_back({std::abs(area_slab(s) - area(p)) / area(p), perimeter(q) - perimeter(p),
                       diameter(q) - diameter(p), q.is_convex()});
    }
    return out;
}

std::vector<Criterion> criteria() {
    std::vector<Criterion> c;
    c.push_back({1, "highdim.gaussian_sign_F", 1.0, [] {
                     const double f = gaussian_sign_F(LunePair::example(), 1.0, 0.0);
                     const double rel = std::abs(f + 139.0) / 139.0;
                     return std::pair{rel <= 1e-4, "F(1,0)=" + fmt(f) + " expected=-139 rel_err=" + fmt(rel) +
                                                       " tol=1e-4"};
                 }});
    c.push_back({2, "steiner.area_slab", 30.0, [] {
                     double worst = 0.0;
                     for (const auto& s : symmetral_corpus()) worst = std::max(worst, s.area_err);
                     return std::pair{worst <= 1e-4, "max_rel_area_err=" + fmt(worst) + " tol=1e-4 n=50"};
                 }});
    c.push_back({3, "steiner.verify_monotonicity", 30.0, [] {
                     double p = -1e300, d = -1e300;
                     for (const auto& s : symmetral_corpus()) {
                         p = std::max(p, s.perim_gain);
                         d = std::max(d, s.diam_gain);
                     }
                     return std::pair{p <= 1e-4 && d <= 1e-4,
                                      "max_perim_gain=" + fmt(p) + " max_diam_gain=" + fmt(d) + " tol=1e-4 n=50"};
                 }});
    c.push_back({4, "steiner.symmetral_to_polygon.is_convex", 30.0, [] {
                     int bad = 0;
                     for (const auto& s : symmetral_corpus()) bad += s.convex ? 0 : 1;
                     return std::pair{bad == 0, "non_convex=" + std::to_string(bad) + " n=50"};
                 }});
    c.push_back({5, "steiner.converge_to_cap", 120.0, [] {
                     Rng g(55);
                     double worst_h = 0.0, worst_drift = 0.0;
                     int failed = 0, most = 0;
                     for (int i = 0; i < 10; ++i) {
                         const Vec3 ctr = random_unit(g);
                         const GeodesicPolygon p = c_symmetric_polygon(g, ctr, 6, 12);
                         ConvergenceOptions opt;
                         opt.center = ctr;
                         const Trajectory t = converge_to_cap(p, 0.01, 200, Strategy::symmetric, opt);
                         failed += t.converged ? 0 : 1;
                         most = std::max(most, t.rows.back().iteration);
                         worst_h = std::max(worst_h, t.rows.back().hausdorff_to_cap);
                         for (const auto& r : t.rows) worst_drift = std::max(worst_drift, std::abs(r.area - area(p)) / area(p));
                     }
                     return std::pair{failed == 0 && worst_drift <= 1e-3,
                                      "not_converged=" + std::to_string(failed) + " max_final_hausdorff=" +
                                          fmt(worst_h) + " max_iterations=" + std::to_string(most) +
                                          " max_rel_area_drift=" + fmt(worst_drift) + " tol=1e-3"};
                 }});
    c.push_back({6, "extremal.max_inscribed_polygon(cap)", 60.0, [] {
                     double gap = 0.0, irregular = 0.0;
                     const Vec3 ctr = unit(Vec3(0.3, -0.2, 0.9));
                     for (double r : {kPi / 6, kPi / 4, kPi / 3}) {
                         for (int n = 3; n <= 8; ++n) {
                             InscribeOptions opt;
                             opt.seed = 6;
                             const InscribedSolution s = max_inscribed_polygon(CapSpec{ctr, r}, n, opt);
                             gap = std::max(gap, std::abs(s.area - sas_constant(r, n)));
                             const auto& t = s.boundary_params;
                             for (int i = 0; i < n; ++i) {
                                 const double next = i + 1 < n ? t[i + 1] : t[0] + 2.0 * kPi;
                                 irregular = std::max(irregular, std::abs(next - t[i] - 2.0 * kPi / n));
                             }
                         }
                     }
                     return std::pair{gap <= 1e-6 && irregular <= 1e-5,
                                      "max_area_gap=" + fmt(gap) + " tol=1e-6 max_spacing_dev=" + fmt(irregular) +
                                          " tol=1e-5"};
                 }});
    c.push_back({7, "extremal.max_inscribed_polygon(sas)", 120.0, [] {
                     Rng g(77);
                     double worst = 1e300;
                     int outside = 0;
                     for (int i = 0; i < 20; ++i) {
                         const int n = 3 + i % 6;
                         InscribeOptions opt;
                         opt.seed = static_cast<std::uint64_t>(i);
                         double a = 0.0, an = 0.0;
                         if (i % 2 == 0) {
                             const Vec3 ctr = random_unit(g);
                             const SmoothBoundary k = gnomonic_ellipse(ctr, uniform(g, 0.3, 0.8), uniform(g, 0.2, 0.6),
                                                                       uniform(g, 0.0, kPi), 512);
                             opt.center = ctr;
                             const auto s = max_inscribed_polygon(k, n, opt);
                             a = area(k);
                             an = s.area;
                             outside += s.contains_center.value_or(false) ? 0 : 1;
                         } else {
                             const Vec3 ctr = random_unit(g);
                             const GeodesicPolygon k = c_symmetric_polygon(g, ctr, 12, 24);
                             opt.center = ctr;
                             const auto s = max_inscribed_polygon(k, n, opt);
                             a = area(k);
                             an = s.area;
                             outside += s.contains_center.value_or(false) ? 0 : 1;
                         }
                         worst = std::min(worst, an - sas_constant(equal_area_cap_radius(a), n));
                     }
                     return std::pair{worst >= -1e-4 && outside == 0, "min(A_N - C(r,N))=" + fmt(worst) +
                                                                          " tol=-1e-4 center_outside=" +
                                                                          std::to_string(outside) + " n=20"};
                 }});
    c.push_back({8, "floating.asymptotic_law_check(cap)", 10.0, [] {
                     const auto rows = asymptotic_law_check(CapSpec{Vec3::UnitZ(), kPi / 3}, {256});
                     const double dev = std::abs(rows[0].ratio - 1.0);
                     return std::pair{dev <= 1e-3, "ratio=" + fmt(rows[0].ratio) + " |ratio-1|=" + fmt(dev) +
                                                       " tol=1e-3 N=256"};
                 }});
    c.push_back({9, "floating.floating_isoperimetric_check", 60.0, [] {
                     Rng g(99);
                     int fails = 0;
                     double min_gap = 1e300;
                     for (int i = 0; i < 10; ++i) {
                         Vec3 ctr;
                         const SmoothBoundary k = symmetric_oval(g, i, ctr);
                         const FloatingVerdict v = floating_isoperimetric_check(k, ctr);
                         fails += v.pass ? 0 : 1;
                         min_gap = std::min(min_gap, v.gap);
                     }
                     return std::pair{fails == 0, "fails=" + std::to_string(fails) + " min(Omega_cap - Omega)=" +
                                                      fmt(min_gap) + " tol=-1e-3 n=10"};
                 }});
    c.push_back({10, "centroid_winternitz.moment", 10.0, [] {
                     Rng g(1010);
                     double through = 0.0, additivity = 0.0;
                     for (int i = 0; i < 20; ++i) {
                         const GeodesicPolygon p = convex_polygon(g, random_unit(g), uniform(g, 0.2, 1.0), 12);
                         const Vec3 ctr = spherical_centroid(p);
                         const auto [t1, t2] = tangent_basis(ctr);
                         for (int j = 0; j < 16; ++j) {
                             const double a = kPi * j / 16;
                             through = std::max(through, std::abs(moment(p, unit(ctr.cross(std::cos(a) * t1 + std::sin(a) * t2)))));
                         }
                         const Vec3 cut = unit(ctr.cross(random_unit(g)) + 0.1 * ctr);
                         const auto a1 = clip(p, cut), a2 = clip(p, -cut);
                         if (!a1 || !a2) continue;
                         for (int j = 0; j < 4; ++j) {
                             const Vec3 n = random_unit(g);
                             additivity = std::max(additivity, std::abs(moment(p, n) - moment(*a1, n) - moment(*a2, n)));
                         }
                     }
                     return std::pair{through <= 1e-10 && additivity <= 1e-10,
                                      "max|M through centroid|=" + fmt(through) + " max_additivity_err=" +
                                          fmt(additivity) + " tol=1e-10"};
                 }});
    c.push_back({11, "centroid_winternitz.winternitz_comparator", 120.0, [] {
                     Rng g(1111);
                     double margin = 1e300, residual = 0.0;
                     for (int i = 0; i < 20; ++i) {
                         const SmoothBoundary k = radial_oval(g, random_unit(g), {1, 2, 3}, 0.06, 512);
                         const WinternitzResult r = winternitz_comparator(k, uniform(g, 0.0, kPi));
                         margin = std::min(margin, r.ratio_t - r.ratio_k);
                         residual = std::max({residual, r.residual1, r.residual2});
                     }
                     return std::pair{margin >= -1e-6 && residual <= 1e-8,
                                      "min(ratio_T - ratio_K)=" + fmt(margin) + " tol=-1e-6 max_residual=" +
                                          fmt(residual) + " tol=1e-8 n=20"};
                 }});
    c.push_back({12, "highdim.mc_volume_check", 120.0, [] {
                     const McVolume m = mc_volume_check(LunePair::example(), 0.01, 10000000, 0);
                     const double z = std::abs(m.before - m.after) / m.stderr_diff;
                     return std::pair{z <= 3.0, "before=" + fmt(m.before) + " after=" + fmt(m.after) +
                                                    " stderr=" + fmt(m.stderr_diff) + " |diff|/stderr=" + fmt(z) +
                                                    " tol=3"};
                 }});
    c.push_back({13, "extremal.sas_constant", 1.0, [] {
                     double worst = 0.0;
                     const double r = 1e-3, cap = 4.0 * kPi * std::pow(std::sin(0.5 * r), 2);
                     for (int n = 3; n <= 8; ++n) {
                         const double e = n / (2.0 * kPi) * std::sin(2.0 * kPi / n);
                         worst = std::max(worst, std::abs(sas_constant(r, n) / cap - e) / e);
                     }
                     return std::pair{worst <= 1e-4, "max_rel_err=" + fmt(worst) + " tol=1e-4 r=1e-3"};
                 }});
    return c;
}

} // namespace

std::vector<SuiteRow> run_suite(std::ostream& log, int only) {
    std::vector<SuiteRow> rows;
    for (const auto& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        SuiteRow row{c.id, c.check, "", 0.0, c.limit, false};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto [ok, detail] = c.body();
            row.pass = ok;
            row.detail = detail;
        } catch (const std::exception& e) {
            row.detail = std::string("error: ") + e.what();
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (row.seconds > row.limit_seconds) {
            row.pass = false;
            row.detail += " runtime_exceeded";
        }
        log << (row.pass ? "PASS " : "FAIL ") << std::setw(2) << row.id << ' ' << row.check << ": " << row.detail
            << " (" << std::fixed << std::setprecision(2) << row.seconds << "s, limit " << row.limit_seconds
            << "s)" << std::defaultfloat << std::endl;
        rows.push_back(row);
    }
    return rows;
}

void write_suite_csv(std::ostream& out, const std::vector<SuiteRow>& rows) {
    out << "id,check,result,detail\n";
    for (const auto& r : rows) {
        out << r.id << ',' << r.check << ',' << (r.pass ? "PASS" : "FAIL") << ",\"" << r.detail << "\"\n";
    }
}

} // namespace sphaera

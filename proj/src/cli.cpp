#include "sphaera/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sphaera/centroid_winternitz.hpp"
#include "sphaera/extremal.hpp"
#include "sphaera/highdim.hpp"
#include "sphaera/region_io.hpp"
#include "sphaera/steiner.hpp"

namespace sphaera {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Violations {
    json list = json::array();
    void add(const std::string& check, double value, double threshold) {
        list.push_back({{"check", check}, {"value", value}, {"threshold", threshold}});
    }
    bool empty() const { return list.empty(); }
};

GeodesicPolygon as_polygon(const LoadedRegion& r) {
    if (const auto* p = std::get_if<GeodesicPolygon>(&r)) return *p;
    if (const auto* k = std::get_if<SmoothBoundary>(&r)) return to_polygon(*k);
    return polygonize_cap(std::get<CapSpec>(r), 512);
}

double region_area(const LoadedRegion& r) {
    return std::visit([](const auto& k) {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, CapSpec>) {
            return k.area();
        } else {
            return area(k);
        }
    }, r);
}

Vec3 reflect(const Vec3& x, const Vec3& c) { return 2.0 * x.dot(c) * c - x; }

// Symmetry center of a sampled curve: for a c-symmetric curve the mean of
// equally spaced samples points along c.
Vec3 sample_center(const SmoothBoundary& k) {
    Vec3 s = Vec3::Zero();
    for (const auto& x : k.samples()) s += x;
    return unit(s);
}

bool smooth_symmetric(const SmoothBoundary& k, const Vec3& c, double tol) {
    const auto& s = k.samples();
    for (std::size_t i = 0; i < s.size(); i += std::max<std::size_t>(1, s.size() / 64)) {
        if (distance_to_curve(k, reflect(s[i], c)) > tol) return false;
    }
    return true;
}

// Symmetry center if the region is c-symmetric, else nullopt.
std::optional<Vec3> symmetry_center(const LoadedRegion& r) {
    if (const auto* c = std::get_if<CapSpec>(&r)) return c->center;
    if (const auto* p = std::get_if<GeodesicPolygon>(&r)) {
        const Vec3 c = circumdisk(*p).center;
        try {
            require_c_symmetric(*p, c);
            return c;
        } catch (const PreconditionError&) {
            return std::nullopt;
        }
    }
    const auto& k = std::get<SmoothBoundary>(r);
    const Vec3 c = sample_center(k);
    if (smooth_symmetric(k, c, 1e-6)) return c;
    return std::nullopt;
}

int cmd_symmetrize(const RunConfig& cfg, const LoadedRegion& r, std::ostream& out, Violations& v) {
    const GeodesicPolygon p = as_polygon(r);
    const Frame f = Frame::at(circumdisk(p).center, cfg.psi);
    const MonotonicityReport m = verify_monotonicity(p, f, cfg.levels);
    out << "quantity,before,after,delta\n";
    out << "area," << m.area_before << ',' << m.area_after << ',' << m.area_after - m.area_before << '\n';
    out << "perimeter," << m.perim_before << ',' << m.perim_after << ',' << m.perim_after - m.perim_before << '\n';
    out << "diameter," << m.diam_before << ',' << m.diam_after << ',' << m.diam_after - m.diam_before << '\n';
    out << "convex," << (p.is_convex() ? 1 : 0) << ',' << (m.convex_after ? 1 : 0) << ','
        << (m.convex_after ? 0 : 1) << '\n';
    const double rel = std::abs(m.area_after - m.area_before) / m.area_before;
    if (rel > 1e-4) v.add("steiner.area_slab", rel, 1e-4);
    if (m.perim_after > m.perim_before + 1e-4) v.add("steiner.perimeter", m.perim_after - m.perim_before, 1e-4);
    if (m.diam_after > m.diam_before + 1e-4) v.add("steiner.diameter", m.diam_after - m.diam_before, 1e-4);
    if (!m.convex_after) v.add("steiner.is_convex", 0, 1);
    return 0;
}

int cmd_converge(const RunConfig& cfg, const LoadedRegion& r, std::ostream& out, std::ostream& log, Violations& v) {
    const GeodesicPolygon p = as_polygon(r);
    ConvergenceOptions opt;
    opt.levels = std::min(cfg.levels, opt.levels);
    Strategy s = Strategy::recentered;
    if (const auto c = symmetry_center(GeodesicPolygon(p))) {
        s = Strategy::symmetric;
        opt.center = *c;
    }
    log << "strategy: " << (s == Strategy::symmetric ? "symmetric" : "recentered") << '\n';
    const Trajectory t = converge_to_cap(p, cfg.eps, cfg.iterations, s, opt);
    write_trajectory_csv(out, t);
    double drift = 0.0;
    for (const auto& row : t.rows) drift = std::max(drift, std::abs(row.area - area(p)) / area(p));
    if (!t.converged) v.add("steiner.converge_to_cap", t.rows.back().hausdorff_to_cap, cfg.eps);
    if (drift > 1e-3) v.add("steiner.area_drift", drift, 1e-3);
    return 0;
}

int cmd_sas(const RunConfig& cfg, const LoadedRegion& r, std::ostream& out, Violations& v) {
    const auto center = symmetry_center(r);
    const double rad = equal_area_cap_radius(region_area(r));
    out << "N,r_equal_area,A_N,C(r,N),gap\n";
    for (int n = 3; n <= cfg.n_max; ++n) {
        InscribeOptions opt;
        opt.restarts = cfg.restarts;
        opt.seed = cfg.seed;
        opt.center = center;
        const InscribedSolution s = std::visit([&](const auto& k) { return max_inscribed_polygon(k, n, opt); }, r);
        const double c = sas_constant(rad, n), gap = s.area - c;
        out << n << ',' << rad << ',' << s.area << ',' << c << ',' << gap << '\n';
        if (center && gap < -1e-4) v.add("extremal.sas_inequality(N=" + std::to_string(n) + ")", gap, -1e-4);
        if (center && !s.contains_center.value_or(true)) v.add("extremal.contains_center(N=" + std::to_string(n) + ")", 0, 1);
    }
    return 0;
}

int cmd_floating(const RunConfig& cfg, const LoadedRegion& r, std::ostream& out, std::ostream& log, Violations& v) {
    FloatingInput in = std::visit([](const auto& k) { return FloatingInput(k); }, r);
    std::vector<int> ns;
    for (int n = 8; n <= std::max(8, cfg.n_max); n *= 2) ns.push_back(n);
    if (ns.size() < 4) ns = {8, 16, 32, 64};
    const auto rows = asymptotic_law_check(in, ns, cfg.restarts, cfg.seed);
    write_asymptotic_csv(out, rows);
    if (const auto* k = std::get_if<SmoothBoundary>(&r)) {
        const Vec3 c = sample_center(*k);
        try {
            const FloatingVerdict fv = floating_isoperimetric_check(*k, c);
            log << "Omega=" << fv.omega << " Omega_cap=" << fv.omega_cap << " gap=" << fv.gap << '\n';
            if (!fv.pass) v.add("floating.floating_isoperimetric_check", fv.gap, -1e-3);
        } catch (const PreconditionError&) {
            log << "input is not c-symmetric; isoperimetric check skipped\n";
        }
    } else if (const auto* c = std::get_if<CapSpec>(&r)) {
        log << "Omega=" << floating_area(*c) << '\n';
    } else {
        log << "Omega=0 (polygon)\n";
    }
    return 0;
}

int cmd_winternitz(const LoadedRegion& r, std::ostream& out, Violations& v) {
    const auto rows = winternitz_sweep(as_polygon(r), 64);
    write_sweep_csv(out, rows);
    double worst = 1e300;
    for (const auto& row : rows) worst = std::min(worst, row.margin());
    if (worst < -1e-6) v.add("centroid_winternitz.winternitz_comparator", worst, -1e-6);
    return 0;
}

int cmd_highdim(const RunConfig& cfg, std::ostream& out, std::ostream& log, Violations& v) {
    const LunePair lp(cfg.x0, cfg.a_plus, cfg.b_plus, cfg.a_minus, cfg.b_minus);
    out << "u,v,z_minus,z_plus,z_s,F\n";
    const int g = cfg.grid;
    const double half = 0.05 * cfg.x0;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double u = cfg.x0 + (g == 1 ? 0.0 : half * (2.0 * i / (g - 1) - 1.0));
            const double w = g == 1 ? 0.0 : half * (2.0 * j / (g - 1) - 1.0);
            try {
                out << u << ',' << w << ',' << zstar(lp, Side::minus, u, w) << ',' << zstar(lp, Side::plus, u, w)
                    << ',' << symmetral_height(lp, u, w) << ',' << gaussian_sign_F(lp, u, w) << '\n';
            } catch (const GeometryError&) {
                out << u << ',' << w << ",nan,nan,nan,nan\n";
            }
        }
    }
    const double f = gaussian_sign_F(lp, cfg.x0, 0.0);
    log << "F(x0,0): finite_difference=" << f << " printed_polynomial=" << gaussian_sign_F_printed(lp)
        << " closed_form=" << gaussian_sign_F_closed(lp) << '\n';
    if (!(f < 0.0)) v.add("highdim.gaussian_sign_F", f, 0.0);
    const McVolume m = mc_volume_check(lp, cfg.rotation, static_cast<std::uint64_t>(cfg.samples) * 10000, cfg.seed);
    const double z = std::abs(m.before - m.after) / m.stderr_diff;
    log << "MC volume: before=" << m.before << " after=" << m.after << " stderr=" << m.stderr_diff << '\n';
    if (z > 3.0) v.add("highdim.mc_volume_check", z, 3.0);
    return 0;
}

void body(const RunConfig& cfg, std::ostream& out, std::ostream& log, Violations& v) {
    out << std::setprecision(17);
    if (cfg.command == Command::highdim) {
        cmd_highdim(cfg, out, log, v);
        return;
    }
    if (cfg.command == Command::suite) {
        const auto rows = run_suite(log);
        write_suite_csv(out, rows);
        for (const auto& r : rows) {
            if (!r.pass) v.list.push_back({{"check", r.check}, {"id", r.id}, {"detail", r.detail}});
        }
        return;
    }
    if (cfg.input.empty()) throw UsageError("--in is required for this command");
    const LoadedRegion r = load_region(cfg.input, cfg.samples);
    switch (cfg.command) {
    case Command::symmetrize: cmd_symmetrize(cfg, r, out, v); break;
    case Command::converge: cmd_converge(cfg, r, out, log, v); break;
    case Command::sas: cmd_sas(cfg, r, out, v); break;
    case Command::floating: cmd_floating(cfg, r, out, log, v); break;
    case Command::winternitz: cmd_winternitz(r, out, v); break;
    default: break;
    }
}

const char* command_name(Command c) {
    switch (c) {
    case Command::symmetrize: return "symmetrize";
    case Command::converge: return "converge";
    case Command::sas: return "sas";
    case Command::floating: return "floating";
    case Command::winternitz: return "winternitz";
    case Command::highdim: return "highdim";
    case Command::suite: return "suite";
    }
    return "";
}

} // namespace

std::optional<Command> parse_command(const std::string& name) {
    for (Command c : {Command::symmetrize, Command::converge, Command::sas, Command::floating, Command::winternitz,
                      Command::highdim, Command::suite}) {
        if (name == command_name(c)) return c;
    }
    return std::nullopt;
}

void validate(const RunConfig& c) {
    if (c.levels <= 0 || c.samples <= 0 || c.restarts <= 0 || c.n_max < 3 || c.iterations <= 0 || c.grid <= 0) {
        throw std::invalid_argument("counts must be positive (and --n-max at least 3)");
    }
    if (!(c.eps > 0.0)) throw std::invalid_argument("--eps must be positive");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Violations v;
    std::ostringstream buffer;
    try {
        validate(config);
        body(config, buffer, err, v);
    } catch (const RegionFormatError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "usage: " << e.what() << '\n';
        return 1;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    if (config.output.empty()) {
        out << buffer.str();
    } else {
        std::ofstream f(config.output, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << config.output << '\n';
            return 1;
        }
        f << buffer.str();
    }
    if (!v.empty()) {
        err << json{{"command", command_name(config.command)}, {"violations", v.list}}.dump() << '\n';
        return 2;
    }
    return 0;
}

} // namespace sphaera

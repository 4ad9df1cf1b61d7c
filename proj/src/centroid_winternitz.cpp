#include "sphaera/centroid_winternitz.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sphaera {

namespace {

std::vector<Vec3> ccw(std::vector<Vec3> ring) {
    if (ring_area(ring) < 0.0) std::reverse(ring.begin(), ring.end());
    return ring;
}

double ring_moment(const std::vector<Vec3>& ring, const Vec3& n) { return moment_vector(ccw(ring)).dot(n); }

// Frame at the centroid whose pole direction is the cut normal, so theta is
// the signed distance from the cut circle.
Frame cut_frame(const HalvingCut& cut) { return Frame(cut.centroid, cut.normal.cross(cut.centroid)); }

// Largest lambda such that the arc from q in direction u stays in the convex
// polygon k for [0, lambda], capped at len. q lies in k.
double exit_length(const GeodesicPolygon& k, const Vec3& q, const Vec3& u, double len) {
    double best = len;
    for (std::size_t j = 0; j < k.size(); ++j) {
        const Vec3 n = unit(k.vertex(j).cross(k.vertex(j + 1)));
        const double a = q.dot(n), b = u.dot(n);
        if (std::abs(a) <= 1e-12) {
            if (b < -1e-12) return 0.0;
            continue;
        }
        if (a < 0.0) continue;
        double l = std::atan2(a, -b);
        if (l <= 0.0) l += kPi;
        best = std::min(best, l);
    }
    return best;
}

std::string bracket(const char* what, double lo, double hi, double flo, double fhi) {
    std::ostringstream s;
    s << std::setprecision(17) << "winternitz_comparator: no bracket for " << what << " on [" << lo << ", " << hi
      << "], values " << flo << ", " << fhi;
    return s.str();
}

} // namespace

Vec3 moment_vector(const std::vector<Vec3>& ring) {
    Vec3 s = Vec3::Zero();
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Vec3& a = ring[i];
        const Vec3& b = ring[(i + 1) % ring.size()];
        const Vec3 c = a.cross(b);
        const double l = std::atan2(c.norm(), a.dot(b));
        if (l > 0.0) s += l * c.normalized();
    }
    return 0.5 * s;
}

Vec3 moment_vector(const GeodesicPolygon& p) {
    Vec3 s = Vec3::Zero();
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += p.edge_lengths()[i] * unit(p.vertex(i).cross(p.vertex(i + 1)));
    }
    return 0.5 * s;
}

double ring_area(const std::vector<Vec3>& ring) {
    Vec3 m = Vec3::Zero();
    for (const auto& v : ring) m += v;
    const Vec3 o = unit(m);
    double s = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) s += signed_triangle_area(o, ring[i], ring[(i + 1) % ring.size()]);
    return s;
}

Vec3 spherical_centroid(const GeodesicPolygon& p) {
    const Vec3 m = moment_vector(p);
    if (!(m.norm() > 1e-300)) throw DegeneracyError("spherical_centroid: zero resultant");
    return m.normalized();
}

double moment(const GeodesicPolygon& p, const Vec3& n) { return moment_vector(p).dot(n); }

HalvingCut halving_cut(const GeodesicPolygon& p, double direction) {
    const Vec3 g = spherical_centroid(p);
    const auto [t1, t2] = tangent_basis(g);
    const Vec3 n = unit(g.cross(std::cos(direction) * t1 + std::sin(direction) * t2));
    auto k1 = clip(p, n), k2 = clip(p, -n);
    if (!k1 || !k2) throw DegeneracyError("halving_cut: the cut misses the polygon");
    HalvingCut c{n, g, direction, *k1, *k2, 0.0};
    c.ratio = area(c.k2) / area(c.k1);
    return c;
}

GeodesicPolygon round_vertices(const GeodesicPolygon& p, double r, int per_arc) {
    if (!(r > 0.0) || per_arc < 2) throw DomainError("round_vertices: radius and per_arc");
    const std::size_t k = p.size();
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < k; ++i) {
        const Vec3& v = p.vertex(i);
        const Vec3& prev = p.vertex(i + k - 1);
        const Vec3& next = p.vertex(i + 1);
        const double alpha = interior_angle(p, i);
        const double tangent = std::atan(std::tan(r) / std::tan(0.5 * alpha));
        if (!(tangent < 0.5 * p.edge_lengths()[i] && tangent < 0.5 * p.edge_lengths()[(i + k - 1) % k])) {
            throw DegeneracyError("round_vertices: radius too large for the edges");
        }
        const double d = std::asin(std::sin(r) / std::sin(0.5 * alpha));
        const Vec3 w = unit(tangent_toward(v, prev) + tangent_toward(v, next));
        const Vec3 o = std::cos(d) * v + std::sin(d) * w;
        const Vec3 n_prev = unit(prev.cross(v)), n_next = unit(v.cross(next));
        const Vec3 f_prev = unit(o - o.dot(n_prev) * n_prev), f_next = unit(o - o.dot(n_next) * n_next);
        const Vec3 e1 = unit(f_prev - f_prev.dot(o) * o), e2 = o.cross(e1);
        double end = std::atan2(f_next.dot(e2), f_next.dot(e1));
        if (end < 0.0) end += 2.0 * kPi;
        for (int j = 0; j < per_arc; ++j) {
            const double a = end * j / (per_arc - 1);
            out.push_back(std::cos(r) * o + std::sin(r) * (std::cos(a) * e1 + std::sin(a) * e2));
        }
    }
    return GeodesicPolygon(out);
}

WinternitzResult winternitz_comparator(const GeodesicPolygon& k, const HalvingCut& cut) {
    const Vec3& n = cut.normal;
    const Frame f = cut_frame(cut);
    const Slicer slicer(k, f);
    const auto chord = slicer.interval(0.0);
    if (!chord) throw DegeneracyError("winternitz_comparator: the cut misses the region");
    WinternitzResult res;
    res.q1 = from_polar(f, {0.0, chord->lo});
    res.q2 = from_polar(f, {0.0, chord->hi});
    const Vec3 &q1 = res.q1, &q2 = res.q2;
    const Vec3 m = unit(q1 + q2), t = unit(q2 - q1);
    const double mk1 = moment(cut.k1, n), mk2 = moment(cut.k2, n);

    const auto apex = [&](double beta, double s) {
        return Vec3(std::cos(s) * m + std::sin(s) * (std::cos(beta) * t + std::sin(beta) * n));
    };
    // Point of Gamma on the half circle of angle beta.
    const auto gamma = [&](double beta) {
        const auto h = [&](double s) { return ring_moment({q1, q2, apex(beta, s)}, n) - mk1; };
        double lo = 1e-9, hi = kPi - 1e-9, hlo = h(lo), hhi = h(hi);
        if (!(hlo < 0.0 && hhi > 0.0)) throw NumericError(bracket("the apex distance (p-range)", lo, hi, hlo, hhi));
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) < 0.0 ? lo : hi) = mid;
        }
        return apex(beta, 0.5 * (lo + hi));
    };
    const auto exit_point = [&](const Vec3& q, const Vec3& p) {
        const Vec3 u = tangent_toward(q, p);
        const double l = exit_length(cut.k1, q, u, sph_dist(q, p));
        return Vec3(std::cos(l) * q + std::sin(l) * u);
    };
    const auto theta_gap = [&](double beta) {
        const Vec3 p = gamma(beta);
        return std::asin(std::clamp(exit_point(q1, p).dot(n), -1.0, 1.0)) -
               std::asin(std::clamp(exit_point(q2, p).dot(n), -1.0, 1.0));
    };

    // Scan the half circles for a sign change of theta(x1) - theta(x2).
    constexpr int kScan = 32;
    const double eps = 1e-6;
    double blo = eps, glo = theta_gap(blo), bhi = blo, ghi = glo;
    bool found = glo == 0.0;
    for (int j = 1; j <= kScan && !found; ++j) {
        bhi = eps + (kPi - 2.0 * eps) * j / kScan;
        ghi = theta_gap(bhi);
        if (ghi == 0.0 || (glo < 0.0) != (ghi < 0.0)) {
            found = true;
        } else {
            blo = bhi;
            glo = ghi;
        }
    }
    if (!found) throw NumericError(bracket("equal contact levels (p-range)", eps, kPi - eps, glo, ghi));
    if (glo == 0.0) bhi = blo;
    for (int it = 0; it < 200 && bhi - blo > 1e-14 && ghi != 0.0; ++it) {
        const double mid = 0.5 * (blo + bhi), gm = theta_gap(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
            blo = mid;
            glo = gm;
        } else {
            bhi = mid;
            ghi = gm;
        }
    }
    const Vec3 p = gamma(ghi == 0.0 ? bhi : 0.5 * (blo + bhi));
    res.apex = p;

    // Second part: the rays continue from q_i away from p.
    const Vec3 v1 = -tangent_toward(q1, p), v2 = -tangent_toward(q2, p);
    const double theta_max = -slicer.theta_range().first;
    const auto quad = [&](double tp, Vec3& z1, Vec3& z2) {
        const auto y = slicer.interval(-tp);
        if (!y) throw NumericError("winternitz_comparator: empty slice below the cut");
        const Vec3 g = unit(from_polar(f, {-tp, y->lo}).cross(from_polar(f, {-tp, y->hi})));
        const auto hit = [&](const Vec3& q, const Vec3& v) {
            double l = std::atan2(-q.dot(g), v.dot(g));
            if (l < 0.0) l += kPi;
            return Vec3(std::cos(l) * q + std::sin(l) * v);
        };
        z1 = hit(q1, v1);
        z2 = hit(q2, v2);
        return std::vector<Vec3>{q1, q2, z2, z1};
    };
    const auto h2 = [&](double tp) {
        Vec3 z1, z2;
        return std::abs(ring_moment(quad(tp, z1, z2), n)) - std::abs(mk2);
    };
    double lo = 1e-9 * theta_max, hi = theta_max * (1.0 - 1e-9);
    const double hlo = h2(lo), hhi = h2(hi);
    if (!(hlo < 0.0 && hhi >= 0.0)) throw NumericError(bracket("theta' (theta'-range)", lo, hi, hlo, hhi));
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h2(mid) < 0.0 ? lo : hi) = mid;
    }
    res.theta_prime = 0.5 * (lo + hi);
    const auto t2 = ccw(quad(res.theta_prime, res.z1, res.z2));
    const auto t1 = ccw({q1, q2, p});

    res.area_k1 = area(cut.k1);
    res.area_k2 = area(cut.k2);
    res.area_t1 = ring_area(t1);
    res.area_t2 = ring_area(t2);
    res.ratio_k = res.area_k2 / res.area_k1;
    res.ratio_t = res.area_t2 / res.area_t1;
    res.residual1 = std::abs(moment_vector(t1).dot(n) - mk1);
    res.residual2 = std::abs(moment_vector(t2).dot(n) - mk2);
    return res;
}

WinternitzResult winternitz_comparator(const SmoothBoundary& k, double direction) {
    const GeodesicPolygon p = to_polygon(k);
    return winternitz_comparator(p, halving_cut(p, direction));
}

std::vector<SweepRow> winternitz_sweep(const GeodesicPolygon& k, int directions) {
    if (directions < 1) throw DomainError("winternitz_sweep: directions < 1");
    std::vector<SweepRow> rows;
    for (int j = 0; j < directions; ++j) {
        const double a = kPi * j / directions;
        const WinternitzResult r = winternitz_comparator(k, halving_cut(k, a));
        rows.push_back({a, r.ratio_k, r.ratio_t});
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "direction,ratio_K,ratio_T,margin\n" << std::setprecision(17);
    for (const auto& r : rows) out << r.direction << ',' << r.ratio_k << ',' << r.ratio_t << ',' << r.margin() << '\n';
}

} // namespace sphaera

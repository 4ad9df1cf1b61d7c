#include "sphaera/highdim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "sphaera/extremal.hpp"

namespace sphaera {

namespace {

template <typename T>
T zstar_t(T a, T b, T x0, T u, T v) {
    const T w = a * u + b * v;
    const T den = w * w - 1;
    if (std::abs(den) <= T(1e-12)) throw SingularityError("zstar: |A u + B v| = 1");
    const T rad = a * a * x0 * x0 + 1 - w * w;
    if (rad < 0) throw DomainError("zstar: negative radicand");
    return (a * x0 - w * std::sqrt(rad)) / den;
}

template <typename T>
T height_t(const LunePair& lp, T u, T v) {
    const T zp = zstar_t<T>(lp.a_plus, lp.b_plus, lp.x0, u, v);
    const T zm = zstar_t<T>(lp.a_minus, lp.b_minus, lp.x0, u, v);
    return (zp - zm) / (std::sqrt(zp * zp + 1) * std::sqrt(zm * zm + 1) + 1 + zp * zm);
}

using LVec = Eigen::Matrix<long double, 3, 1>;

LVec surface_t(const LunePair& lp, long double u, long double v) {
    const long double z = height_t<long double>(lp, u, v), s = std::sqrt(z * z + 1);
    return {s * u, s * v, z};
}

struct Partials {
    LVec ru, rv, ruu, rvv, ruv;
};

Partials central(const LunePair& lp, long double u, long double v, long double h) {
    const auto r = [&](long double du, long double dv) { return surface_t(lp, u + du, v + dv); };
    const LVec c = r(0, 0), up = r(h, 0), um = r(-h, 0), vp = r(0, h), vm = r(0, -h);
    Partials p;
    p.ru = (up - um) / (2 * h);
    p.rv = (vp - vm) / (2 * h);
    p.ruu = (up - 2 * c + um) / (h * h);
    p.rvv = (vp - 2 * c + vm) / (h * h);
    p.ruv = (r(h, h) - r(h, -h) - r(-h, h) + r(-h, -h)) / (4 * h * h);
    return p;
}

// Half-width of the admissible range of w = A u + B v around A x0, divided
// by |(A, B)|: the largest disk radius on which zstar stays defined.
double safe_radius(double a, double b, double x0) {
    const double w0 = std::abs(a * x0), wmax = std::sqrt(a * a * x0 * x0 + 1.0);
    const double margin = w0 > 1.0 ? std::min(w0 - 1.0, wmax - w0) : 1.0 - w0;
    const double g = std::hypot(a, b);
    return g > 0.0 ? margin / g : std::numeric_limits<double>::infinity();
}

} // namespace

LunePair::LunePair(double x0_, double ap, double bp, double am, double bm)
    : x0(x0_), a_plus(ap), b_plus(bp), a_minus(am), b_minus(bm) {
    if (!(x0 > 0.0)) throw DomainError("LunePair: x0 must be positive");
    if (!(a_plus <= a_minus)) throw DomainError("LunePair: requires A+ <= A-");
}

LunePair LunePair::example() { return LunePair(1.0, 2.0, 3.0, 3.0, 1.0); }

double zstar(const LunePair& lp, Side s, double u, double v) {
    return s == Side::plus ? zstar_t(lp.a_plus, lp.b_plus, lp.x0, u, v)
                           : zstar_t(lp.a_minus, lp.b_minus, lp.x0, u, v);
}

double symmetral_height(const LunePair& lp, double u, double v) { return height_t<double>(lp, u, v); }

Vec3 symmetral_surface(const LunePair& lp, double u, double v) {
    const double z = symmetral_height(lp, u, v), s = std::sqrt(z * z + 1.0);
    return {s * u, s * v, z};
}

double gaussian_sign_F(const LunePair& lp, double u, double v, double h) {
    const long double lh = h;
    const Partials a = central(lp, u, v, lh), b = central(lp, u, v, 2 * lh);
    const auto rich = [](const LVec& x, const LVec& y) -> LVec { return (4 * x - y) / 3; };
    const LVec ru = rich(a.ru, b.ru), rv = rich(a.rv, b.rv);
    const LVec n = ru.cross(rv);
    const long double e = n.dot(rich(a.ruu, b.ruu)), g = n.dot(rich(a.rvv, b.rvv)), f = n.dot(rich(a.ruv, b.ruv));
    return static_cast<double>(e * g - f * f);
}

double gaussian_sign_F_printed(const LunePair& lp) {
    const double am = lp.a_minus, ap = lp.a_plus, bm = lp.b_minus, bp = lp.b_plus;
    const double cubic = 3 * am * am * am + 3 * am * am * ap - 3 * am * ap * ap - 3 * am * bm * bm -
                         2 * am * bm * bp + am * bp * bp - 3 * ap * ap * ap - ap * bm * bm + 2 * ap * bm * bp +
                         3 * ap * bp * bp;
    return lp.x0 * lp.x0 / 64.0 * (bp + bm) * (3 * am * bm - am * bp + ap * bm - 3 * ap * bp) * cubic;
}

double gaussian_sign_F_closed(const LunePair& lp) {
    const double s = lp.a_plus + lp.a_minus, d = lp.a_minus * lp.b_plus - lp.a_plus * lp.b_minus;
    return -lp.x0 * lp.x0 * s * s * d * d / 16.0;
}

Vec3 project_along_L(const Vec3& p) { return Vec3(p.x(), p.y(), 0.0) / std::sqrt(1.0 + p.z() * p.z()); }

ProjectionMidpoint projection_midpoint(const Vec3& q1, const Vec3& q2) {
    // Rotation about H0 by alpha acts on (1, X, Y, Z) in the (c, e_z) plane.
    const double alpha = -0.5 * (std::atan(q1.z()) + std::atan(q2.z()));
    const auto rot_h0 = [alpha](const Vec3& q) {
        const double w = std::cos(alpha) - q.z() * std::sin(alpha);
        if (!(w > 0.0)) throw DomainError("projection_midpoint: point leaves the chart");
        return Vec3(q.x() / w, q.y() / w, (std::sin(alpha) + q.z() * std::cos(alpha)) / w);
    };
    Vec3 a = rot_h0(q1), b = rot_h0(q2);
    // Rotation about L making the chord symmetric to the xz-plane.
    const double a1 = std::atan2(a.y(), a.x());
    double a2 = std::atan2(b.y(), b.x());
    if (a2 - a1 > kPi) a2 -= 2.0 * kPi;
    if (a1 - a2 > kPi) a2 += 2.0 * kPi;
    const double beta = -0.5 * (a1 + a2);
    const Eigen::Matrix3d rz = Eigen::AngleAxisd(beta, Vec3::UnitZ()).toRotationMatrix();
    a = rz * a;
    b = rz * b;

    ProjectionMidpoint m;
    m.zbar = a.z();
    m.phi = std::abs(0.5 * (a1 - a2));
    const double s = std::sqrt(1.0 + m.zbar * m.zbar);
    m.r1 = std::hypot(a.x(), a.y()) / s;
    m.r2 = std::hypot(b.x(), b.y()) / s;
    const double h = m.r1 + m.r2 > 0.0 ? 2.0 * m.r1 * m.r2 / (m.r1 + m.r2) : 0.0;
    const double rho = m.r1 + m.r2 > 0.0 ? (m.r2 - m.r1) / (m.r1 + m.r2) : 0.0;
    const double zm = m.zbar * rho;
    m.m_tilde = Vec3(h * std::cos(m.phi), 0.0, 0.0);
    m.m_star = Vec3(h * s * std::cos(m.phi), 0.0, zm);
    m.m_prime = Vec3(h * std::sqrt(1.0 + zm * zm) * std::cos(m.phi), 0.0, zm);
    const double dy = a.y() - b.y();
    const Vec3 chord = dy != 0.0 ? Vec3(a + (a.y() / dy) * (b - a)) : Vec3(0.5 * (a + b));
    m.m_star_projected = project_along_L(chord);
    return m;
}

bool projection_convexity_test(const std::array<Vec3, 3>& tri, int samples) {
    int ci = -1;
    for (int i = 0; i < 3; ++i) {
        if (tri[i].norm() <= 1e-12) ci = i;
    }
    if (ci < 0) throw PreconditionError("vertex_c");
    const Vec3& q1 = tri[(ci + 1) % 3];
    const Vec3& q2 = tri[(ci + 2) % 3];
    if ((q1 - q2).norm() <= 1e-14) return true;
    if (projection_midpoint(q1, q2).margin() < -1e-12) return false;
    // The projected triangle is the star of c over the projected far side.
    std::vector<Vec2> ring{Vec2::Zero()};
    for (int j = 0; j <= samples; ++j) {
        const double t = static_cast<double>(j) / samples;
        const Vec3 p = project_along_L((1.0 - t) * q1 + t * q2);
        ring.emplace_back(p.x(), p.y());
    }
    double scale = 0.0;
    for (const auto& p : ring) scale = std::max(scale, p.norm());
    int sign = 0;
    const std::size_t k = ring.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Vec2 e0 = ring[(i + 1) % k] - ring[i], e1 = ring[(i + 2) % k] - ring[(i + 1) % k];
        const double c = e0.x() * e1.y() - e0.y() * e1.x();
        if (std::abs(c) <= 1e-13 * scale * scale) continue;
        const int sc = c > 0.0 ? 1 : -1;
        if (sign == 0) sign = sc;
        if (sc != sign) return false;
    }
    return true;
}

McVolume mc_volume_check(const LunePair& lp, double rotation, std::uint64_t samples, std::uint64_t seed,
                         double radius, int threads) {
    if (samples < 2) throw DomainError("mc_volume_check: need at least 2 samples");
    McVolume out;
    out.radius = radius > 0.0 ? radius
                              : std::min({0.2 * lp.x0, 0.9 * safe_radius(lp.a_plus, lp.b_plus, lp.x0),
                                          0.9 * safe_radius(lp.a_minus, lp.b_minus, lp.x0)});
    const double rr = out.radius;
    const auto bounds = [&](double u, double v) {
        return std::pair{std::atan(zstar(lp, Side::minus, u, v)) - rotation,
                         std::atan(zstar(lp, Side::plus, u, v)) + rotation};
    };
    // Box height from a grid over the disk, with a margin.
    double top = 0.0;
    constexpr int kGrid = 64;
    for (int i = 0; i <= kGrid; ++i) {
        for (int j = 0; j <= kGrid; ++j) {
            const double du = rr * (2.0 * i / kGrid - 1.0), dv = rr * (2.0 * j / kGrid - 1.0);
            if (du * du + dv * dv > rr * rr) continue;
            const auto [lo, hi] = bounds(lp.x0 + du, dv);
            top = std::max({top, std::abs(lo), std::abs(hi)});
        }
    }
    top = std::min(1.05 * top + 1e-3, kHalfPi);
    const double box = kPi * rr * rr * 2.0 * top;

    // Fixed chunks with their own streams keep the result independent of the
    // thread count.
    constexpr int kChunks = 64;
    struct Acc {
        double s[2] = {0, 0}, q[2] = {0, 0};
        std::uint64_t n = 0;
    };
    std::vector<Acc> acc(kChunks);
    const auto run_chunk = [&](int c) {
        const std::uint64_t n = samples / kChunks + (static_cast<std::uint64_t>(c) < samples % kChunks ? 1 : 0);
        Acc& a = acc[c];
        a.n = n;
        for (int which = 0; which < 2; ++which) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(which)};
            std::mt19937_64 g(seq);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (std::uint64_t i = 0; i < n; ++i) {
                const double rad = rr * std::sqrt(unif(g)), ang = 2.0 * kPi * unif(g);
                const double phi = top * (2.0 * unif(g) - 1.0);
                const double u = lp.x0 + rad * std::cos(ang), v = rad * std::sin(ang);
                const auto [lo, hi] = bounds(u, v);
                const bool in = which == 0 ? (lo <= phi && phi <= hi) : (std::abs(phi) <= 0.5 * (hi - lo));
                if (!in) continue;
                const double rho2 = 1.0 + u * u + v * v;
                const double x = box / (rho2 * rho2);
                a.s[which] += x;
                a.q[which] += x * x;
            }
        }
    };
    const int nt = std::max(1, std::min(threads > 0 ? threads : worker_threads(), kChunks));
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (int c = t; c < kChunks; c += nt) run_chunk(c);
        });
    }
    for (auto& th : pool) th.join();

    double s[2] = {0, 0}, q[2] = {0, 0};
    for (const auto& a : acc) {
        for (int w = 0; w < 2; ++w) {
            s[w] += a.s[w];
            q[w] += a.q[w];
        }
    }
    const double n = static_cast<double>(samples);
    double var = 0.0;
    for (int w = 0; w < 2; ++w) {
        const double mean = s[w] / n;
        var += std::max(q[w] / n - mean * mean, 0.0) / (n - 1.0);
    }
    out.before = s[0] / n;
    out.after = s[1] / n;
    out.stderr_diff = std::sqrt(var);
    return out;
}

} // namespace sphaera

#pragma once

// Local analysis of the symmetral in S^3, in the gnomonic model at c with L
// the z-axis and H the plane z = 0. A point (u, v, t) of the distance-curve
// coordinates is (sqrt(t^2 + 1) u, sqrt(t^2 + 1) v, t) in the model.

#include <array>
#include <cstdint>

#include "sphaera/sphere_core.hpp"

namespace sphaera {

/// The planes z = A(x - x0) + B y through p0 = (x0, 0, 0). The lune lies
/// between H- (below) and H+ (above).
struct LunePair {
    double x0 = 1.0;
    double a_plus = 0, b_plus = 0, a_minus = 0, b_minus = 0;

    /// DomainError unless x0 > 0 and a_plus <= a_minus.
    LunePair(double x0, double a_plus, double b_plus, double a_minus, double b_minus);

    /// The example configuration: A- = 3, A+ = 2, B- = 1, B+ = 3, x0 = 1.
    static LunePair example();
};

enum class Side { plus, minus };

/// Height t at which the distance curve through (u, v) meets the plane of
/// the given side. SingularityError when |Au + Bv| = 1 within 1e-12,
/// DomainError for a negative radicand.
double zstar(const LunePair& lp, Side s, double u, double v);

/// tan of half the angular length between the two heights.
double symmetral_height(const LunePair& lp, double u, double v);

/// (sqrt(z_s^2 + 1) u, sqrt(z_s^2 + 1) v, z_s).
Vec3 symmetral_surface(const LunePair& lp, double u, double v);

/// <n, r_uu> <n, r_vv> - <n, r_uv>^2 with n = r_u x r_v, from central
/// differences of step h and one Richardson step, in extended precision.
double gaussian_sign_F(const LunePair& lp, double u, double v, double h = 1e-5);

/// The Maple polynomial for F(x0, 0) as printed with the example.
double gaussian_sign_F_printed(const LunePair& lp);

/// -x0^2 (A+ + A-)^2 (A- B+ - A+ B-)^2 / 16: F(x0, 0) from a second-order
/// expansion of the two planes.
double gaussian_sign_F_closed(const LunePair& lp);

/// Collapses a model point along its distance curve onto H:
/// (X, Y, Z) -> (X, Y, 0) / sqrt(1 + Z^2).
Vec3 project_along_L(const Vec3& p);

/// The midpoint comparison for the chord [q1, q2], after rotating about H0
/// so that both ends have the same angular distance from H and about L so
/// that they are symmetric to the xz-plane.
struct ProjectionMidpoint {
    double r1 = 0, r2 = 0, phi = 0, zbar = 0;
    Vec3 m_star, m_tilde, m_prime;
    Vec3 m_star_projected; ///< project_along_L of the chord point, evaluated directly
    double margin() const { return m_star.x() - m_prime.x(); }
};

ProjectionMidpoint projection_midpoint(const Vec3& q1, const Vec3& q2);

/// True iff the projection of the triangle is convex. One vertex must be the
/// model origin c (PreconditionError "vertex_c"). Checks the midpoint margin
/// and the turning of the projected far side at `samples` points.
bool projection_convexity_test(const std::array<Vec3, 3>& triangle, int samples = 64);

struct McVolume {
    double before = 0, after = 0;
    double stderr_diff = 0; ///< standard error of before - after
    double radius = 0;      ///< radius of the (u, v) disk around (x0, 0)
};

/// S^3 volumes of {phi- <= phi <= phi+} and {|phi| <= (phi+ - phi-)/2} over a
/// disk around (x0, 0), where phi = arctan t and each plane is rotated about
/// H0 by `rotation` away from p0. Volume element du dv dphi / (1 + u^2 +
/// v^2)^2. radius <= 0 picks the largest safe disk, capped at 0.2 x0.
/// Deterministic for a given seed, whatever the thread count.
McVolume mc_volume_check(const LunePair& lp, double rotation, std::uint64_t samples, std::uint64_t seed,
                         double radius = 0.0, int threads = 0);

} // namespace sphaera

#pragma once

// Steiner symmetrization on S^2 and the convergence-to-cap driver.

#include <iosfwd>
#include <optional>
#include <vector>

#include "sphaera/convex_region.hpp"

namespace sphaera {

/// A region given by one phi-interval (or nothing) per theta level.
struct SlabRegion {
    Frame frame;
    std::vector<double> thetas;                      ///< strictly increasing, inside (-pi/2, pi/2)
    std::vector<std::optional<PhiInterval>> intervals; ///< one per level

    SlabRegion(Frame f, std::vector<double> thetas, std::vector<std::optional<PhiInterval>> intervals);
};

/// `levels` Chebyshev-Lobatto nodes on [lo, hi], both ends included.
std::vector<double> theta_grid(double lo, double hi, int levels);

/// Piecewise Chebyshev-Lobatto grid over sorted breakpoints, with an even
/// number of subintervals per piece and about `levels` nodes overall.
std::vector<double> theta_grid(const std::vector<double>& breakpoints, int levels);

/// The unsymmetrized slices of p. Breakpoints are the theta extremes and the
/// vertex levels, so the slice length is smooth on every piece.
SlabRegion slab_of(const GeodesicPolygon& p, const Frame& f, int levels = 2048);

/// sigma_{L,H}(p) sampled on `levels` levels. DomainError if p leaves the
/// open hemisphere of f.c(); PreconditionError ("connectedness") if some
/// slice is not a single arc.
SlabRegion steiner_symmetral(const GeodesicPolygon& p, const Frame& f, int levels = 2048);

/// Level-wise symmetral of slab data; exactly idempotent.
SlabRegion steiner_symmetral(const SlabRegion& r);

/// Integral of Lambda(theta) cos(theta) by composite Simpson on the
/// (possibly non-uniform) level grid.
double area_slab(const SlabRegion& r);

/// Ring through the slice endpoints, right side upward then left side
/// downward. Uses at most `target_vertices` vertices. Convexity is reported
/// by the polygon, not imposed.
GeodesicPolygon symmetral_to_polygon(const SlabRegion& r, int target_vertices = 4096);

/// alpha_1 + alpha_2: the angles at the two cut points of {x in p : <x, n> >= 0},
/// cut by the great circle with normal n.
double cut_angle_sum(const GeodesicPolygon& p, const Vec3& n);

struct ApplicableAxis {
    Frame frame;          ///< c = z, L orthogonal to H at z
    double angle_sum = 0; ///< alpha_1 + alpha_2 at z
    /// One-sided limits of the sum at z. For a polygon the sum jumps where the
    /// cut crosses a vertex; z is then a root in the sense lo <= pi <= hi.
    double angle_sum_lo = 0, angle_sum_hi = 0;
};

/// Point z on p cap H where alpha_1 + alpha_2 = pi, for H the great circle
/// through c with tangent h_dir. NumericError if no sign change brackets z
/// or the frame fails the angular monotonicity check.
ApplicableAxis find_applicable_axis(const GeodesicPolygon& p, const Vec3& c, const Vec3& h_dir);

struct MonotonicityReport {
    double area_before = 0, area_after = 0;
    double perim_before = 0, perim_after = 0;
    double diam_before = 0, diam_after = 0;
    bool convex_after = false;
    bool angularly_monotone_input = false;
};

/// PreconditionError naming "connectedness" or "angular_monotonicity".
MonotonicityReport verify_monotonicity(const GeodesicPolygon& p, const Frame& f, int levels = 2048);

enum class Strategy { symmetric, recentered };

struct ConvergenceOptions {
    int levels = 1024;
    int polygon_vertices = 2048;
    int directions = 0; ///< cycle through this many axes; 0 rotates by golden-ratio multiples of pi
    int hausdorff_resolution = 2048;
    std::optional<Vec3> center; ///< symmetry center; defaults to the circumcenter
};

struct TrajectoryRow {
    int iteration = 0;
    double area = 0, perimeter = 0, diameter = 0, circumradius = 0, hausdorff_to_cap = 0;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    bool converged = false;
    CapSpec cap; ///< equal-area comparison cap of the last row
};

/// Direction psi of the axis L used at step k. A finite cycle of axes only
/// forces the symmetry group it generates, so 0 selects an irrational rotation.
double schedule_angle(int k, int directions);

/// One symmetrization followed by reconstruction.
GeodesicPolygon symmetrize_step(const GeodesicPolygon& p, const Frame& f, const ConvergenceOptions& opt);

/// Symmetrize until the Hausdorff distance to the equal-area cap is at most
/// eps. Running out of iterations is reported, not thrown.
Trajectory converge_to_cap(const GeodesicPolygon& p, double eps, int max_iters, Strategy strategy,
                           const ConvergenceOptions& opt = {});

/// Throws PreconditionError ("c_symmetry") unless p is symmetric about c.
void require_c_symmetric(const GeodesicPolygon& p, const Vec3& c, double tol = 1e-8);

void write_trajectory_csv(std::ostream& out, const Trajectory& t);

/// r = arccos(1 - A / 2 pi).
double equal_area_cap_radius(double area);

/// z_s = (z2 - z1) / (sqrt(1 + z2^2) sqrt(1 + z1^2) + 1 + z1 z2).
double symmetrized_z_endpoints(double z1, double z2);
/// tan((arctan z2 - arctan z1) / 2).
double symmetrized_z_endpoints_tan(double z1, double z2);

} // namespace sphaera

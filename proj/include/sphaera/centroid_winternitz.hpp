#pragma once

// Spherical centroids, moments about great circles, halving cuts through the
// centroid and the comparator triangle of the spherical Winternitz bound.

#include <iosfwd>
#include <vector>

#include "sphaera/floating.hpp"

namespace sphaera {

/// Integral of p over the polygon: half the sum of edge length times the
/// inward pole of the edge. Works for any counterclockwise ring.
Vec3 moment_vector(const std::vector<Vec3>& ring);
Vec3 moment_vector(const GeodesicPolygon& p);

/// Area of a counterclockwise ring by the fan from its normalized vertex sum.
double ring_area(const std::vector<Vec3>& ring);

/// Normalized moment_vector. DegeneracyError if it vanishes.
Vec3 spherical_centroid(const GeodesicPolygon& p);

/// Integral of sin(theta_H) over p, with H the great circle of unit normal n.
double moment(const GeodesicPolygon& p, const Vec3& n);

struct HalvingCut {
    Vec3 normal;            ///< K1 lies on the side <x, normal> >= 0
    Vec3 centroid;
    double direction = 0;   ///< tangent angle at the centroid in tangent_basis
    GeodesicPolygon k1, k2;
    double ratio = 0;       ///< area(K2) / area(K1)
};

/// Splits p by the great circle through its centroid with tangent
/// cos(direction) t1 + sin(direction) t2.
HalvingCut halving_cut(const GeodesicPolygon& p, double direction);

/// Replaces every vertex by an arc of the inscribed circle of radius r
/// tangent to both edges, sampled with `per_arc` points.
GeodesicPolygon round_vertices(const GeodesicPolygon& p, double r = 1e-3, int per_arc = 16);

struct WinternitzResult {
    Vec3 apex, z1, z2;       ///< T = triangle(apex, z1, z2)
    Vec3 q1, q2;             ///< ends of K cap L
    double area_k1 = 0, area_k2 = 0, area_t1 = 0, area_t2 = 0;
    double ratio_k = 0, ratio_t = 0;
    double residual1 = 0, residual2 = 0; ///< moment mismatch of T1 and T2
    double theta_prime = 0;
};

/// Builds T from the cut: the apex p on S1 with M_L(T(p)) = M_L(K1) whose
/// sides leave K1 at equal distance from L, then the level theta' at which
/// the quadrangle under L matches M_L(K2). K should be strictly convex (see
/// round_vertices); NumericError with the bracket if a search fails.
WinternitzResult winternitz_comparator(const GeodesicPolygon& k, const HalvingCut& cut);
WinternitzResult winternitz_comparator(const SmoothBoundary& k, double direction);

struct SweepRow {
    double direction = 0, ratio_k = 0, ratio_t = 0;
    double margin() const { return ratio_t - ratio_k; }
};

/// halving_cut and the comparator at `directions` equally spaced angles in
/// [0, pi).
std::vector<SweepRow> winternitz_sweep(const GeodesicPolygon& k, int directions = 64);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

} // namespace sphaera

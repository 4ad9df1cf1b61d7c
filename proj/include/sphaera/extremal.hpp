#pragma once

// Maximal inscribed polygons, the constant C(r, N) and a driver that follows
// a functional along a symmetrization sequence.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sphaera/floating.hpp"
#include "sphaera/steiner.hpp"

namespace sphaera {

/// 2N arctan(cos(pi/N) / (sin(pi/N) cos r)) - (N - 2) pi: area of the regular
/// N-gon inscribed in a cap of radius r.
double sas_constant(double r, int n);

/// Regular N-gon inscribed in cap(center, r).
GeodesicPolygon cap_regular_polygon(double r, int n, const Vec3& center);

using InscribeTarget = std::variant<GeodesicPolygon, CapSpec, SmoothBoundary>;

struct InscribeOptions {
    int restarts = 8; ///< the first restart starts from equally spaced parameters
    std::uint64_t seed = 0;
    int threads = 0; ///< 0: SPHAERA_THREADS or the hardware count
    std::optional<Vec3> center; ///< if set, containment of the center is checked
};

struct InscribedSolution {
    GeodesicPolygon polygon;
    double area = 0;
    std::vector<double> boundary_params; ///< arclength (polygons, curves) or angle (caps)
    int restarts_used = 0;
    std::optional<bool> contains_center;
};

/// Locally maximal inscribed N-gon: cyclic coordinate ascent with a
/// golden-section search per vertex, then Newton steps on the cyclic
/// tridiagonal Hessian. Best over the restarts; ties go to the
/// lexicographically smaller parameter list. A polygon with at most N
/// vertices is returned as is. PreconditionError ("convexity") for a
/// non-convex polygon.
InscribedSolution max_inscribed_polygon(const InscribeTarget& k, int n, const InscribeOptions& opt = {});

/// Worker count: SPHAERA_THREADS if set and positive, else the hardware count.
int worker_threads();

struct Functional {
    std::string name;
    std::function<double(const GeodesicPolygon&)> on_polygon;
    std::function<double(const CapSpec&)> on_cap;
};

Functional area_functional();
Functional perimeter_functional();
Functional diameter_functional();

/// max: symmetrization increases F and the cap is the maximizer; min: the
/// reverse.
enum class Direction { min, max };

struct DriverResult {
    std::vector<double> values; ///< F along the sequence, starting at K
    double cap_value = 0;       ///< F(D_c(K))
    CapSpec cap;
    bool converged = false;
    bool verdict = false; ///< F(K) on the predicted side of F(D_c(K)) within tol
};

/// Symmetrizes K about axes through `center` on the converge_to_cap schedule
/// and records F. A failing evaluation is rethrown with its iteration index.
DriverResult extremal_driver(const GeodesicPolygon& k, const Vec3& center, const Functional& f, Direction d,
                             double eps = 0.02, int max_iters = 200, double tol = 1e-3,
                             const ConvergenceOptions& opt = {});

} // namespace sphaera

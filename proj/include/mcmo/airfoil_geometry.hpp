#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace mcmo {

/// Kármán-Trefftz design parameters. mu is the circle center in the
/// zeta-plane, beta the trailing-edge angle in degrees, alpha the angle of
/// attack in degrees (consumed by the aerodynamic evaluator, not by the
/// geometry).
struct KTParams {
    double mu_x;
    double mu_y;
    double beta_deg;
    double alpha_deg;

    /// Enforces the optimization ranges:
    /// mu_x in [-0.4, -0.05], mu_y in [0, 0.4], beta in [1, 30], alpha in [0, 30].
    void validate() const;
};

/// Chord-normalized closed airfoil contour. Points run from the trailing
/// edge over the upper surface to the leading edge and back along the lower
/// surface; the first and last points coincide.
struct AirfoilGeometry {
    std::vector<std::array<double, 2>> points;

    int point_count() const { return static_cast<int>(points.size()); }
};

/// Conformal map of the circle through (1, 0) centered on (mu_x, mu_y):
///   z = n * ((zeta+1)^n + (zeta-1)^n) / ((zeta+1)^n - (zeta-1)^n),
///   n = 2 - beta/180.
/// The result is rescaled/translated so the chord spans [0, 1]. Accepts
/// beta down to 0 (Joukowski cusp) for analysis use; optimization-range
/// validation is the caller's concern. Throws on map singularities and
/// degenerate circles.
AirfoilGeometry kt_transform(double mu_x, double mu_y, double beta_deg, int n_points);

inline AirfoilGeometry kt_transform(const KTParams& p, int n_points) {
    return kt_transform(p.mu_x, p.mu_y, p.beta_deg, n_points);
}

/// Interior trailing-edge angle in degrees, estimated from the contour ends
/// with Richardson extrapolation of the two nearest secants per surface.
double trailing_edge_angle(const AirfoilGeometry& geometry);

/// True when no two non-adjacent contour segments intersect.
bool is_simple_polygon(const AirfoilGeometry& geometry);

/// Coordinate file: one "x y" pair per line. The reader tolerates an
/// optional leading name line.
void write_coordinate_file(const std::string& path, const AirfoilGeometry& geometry);
void write_coordinates(std::ostream& out, const AirfoilGeometry& geometry);
AirfoilGeometry read_coordinate_file(const std::string& path);

}  // namespace mcmo

#include "mcmo/airfoil_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mcmo {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_range(double v, double lo, double hi, const char* name) {
    if (!(v >= lo && v <= hi)) {
        std::ostringstream msg;
        msg << name << " = " << v << " outside [" << lo << ", " << hi << "]";
        throw std::invalid_argument(msg.str());
    }
}

// Principal complex power via polar form; 0^n is 0 for n > 0.
std::complex<double> cpow(std::complex<double> z, double n) {
    const double r = std::abs(z);
    if (r == 0.0) return {0.0, 0.0};
    return std::polar(std::pow(r, n), n * std::arg(z));
}

}  // namespace

void KTParams::validate() const {
    check_range(mu_x, -0.4, -0.05, "mu_x");
    check_range(mu_y, 0.0, 0.4, "mu_y");
    check_range(beta_deg, 1.0, 30.0, "beta");
    check_range(alpha_deg, 0.0, 30.0, "alpha");
}

AirfoilGeometry kt_transform(double mu_x, double mu_y, double beta_deg, int n_points) {
    if (n_points < 40) throw std::invalid_argument("kt_transform: need at least 40 points");
    if (!(beta_deg >= 0.0 && beta_deg < 180.0)) {
        throw std::invalid_argument("kt_transform: beta must lie in [0, 180) degrees");
    }
    const double n = 2.0 - beta_deg / 180.0;
    const std::complex<double> center(mu_x, mu_y);
    const double radius = std::hypot(1.0 - mu_x, mu_y);
    if (!(radius > 0.0)) throw std::invalid_argument("kt_transform: degenerate circle");
    // The second critical point zeta = -1 must lie strictly inside the circle
    // or the image curve is not a simple airfoil contour.
    if (std::abs(center - std::complex<double>(-1.0, 0.0)) >= radius) {
        throw std::invalid_argument("kt_transform: circle does not enclose zeta = -1");
    }

    const double phi_te = std::atan2(-mu_y, 1.0 - mu_x);
    const int arcs = n_points - 1;  // last point repeats the trailing edge
    std::vector<std::array<double, 2>> pts(n_points);
    for (int j = 0; j < arcs; ++j) {
        const double phi = phi_te + 2.0 * kPi * static_cast<double>(j) / arcs;
        const std::complex<double> zeta = center + std::polar(radius, phi);
        const std::complex<double> up = cpow(zeta + 1.0, n);
        const std::complex<double> dn = cpow(zeta - 1.0, n);
        const std::complex<double> denom = up - dn;
        if (std::abs(denom) < 1e-12) {
            throw std::runtime_error("kt_transform: map singularity on the circle");
        }
        const std::complex<double> z = n * (up + dn) / denom;
        pts[j] = {z.real(), z.imag()};
    }
    pts[n_points - 1] = pts[0];

    // Rescale and shift so the chord spans [0, 1] on the x-axis.
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
            throw std::runtime_error("kt_transform: non-finite coordinates");
        }
        x_min = std::min(x_min, p[0]);
        x_max = std::max(x_max, p[0]);
    }
    const double chord = x_max - x_min;
    if (!(chord > 0.0)) throw std::runtime_error("kt_transform: degenerate chord");
    for (auto& p : pts) {
        p[0] = (p[0] - x_min) / chord;
        p[1] = p[1] / chord;
    }

    return AirfoilGeometry{std::move(pts)};
}

double trailing_edge_angle(const AirfoilGeometry& geometry) {
    const auto& pts = geometry.points;
    const int count = geometry.point_count();
    if (count < 7) throw std::invalid_argument("trailing_edge_angle: too few points");

    const auto secant_angle = [&](int steps) {
        const double ux = pts[steps][0] - pts[0][0];
        const double uy = pts[steps][1] - pts[0][1];
        const double lx = pts[count - 1 - steps][0] - pts[count - 1][0];
        const double ly = pts[count - 1 - steps][1] - pts[count - 1][1];
        const double nu = std::hypot(ux, uy), nl = std::hypot(lx, ly);
        if (nu == 0.0 || nl == 0.0) {
            throw std::invalid_argument("trailing_edge_angle: degenerate trailing edge");
        }
        const double cosv = std::clamp((ux * lx + uy * ly) / (nu * nl), -1.0, 1.0);
        return std::acos(cosv);
    };
    // The secant direction error is first order in the arc step; extrapolate
    // the one- and two-step estimates to zero step.
    const double a1 = secant_angle(1);
    const double a2 = secant_angle(2);
    return (2.0 * a1 - a2) * 180.0 / kPi;
}

bool is_simple_polygon(const AirfoilGeometry& geometry) {
    const auto& pts = geometry.points;
    const int n_seg = geometry.point_count() - 1;
    if (n_seg < 3) return false;

    const auto orient = [](const std::array<double, 2>& a, const std::array<double, 2>& b,
                           const std::array<double, 2>& c) {
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    };
    const auto segments_cross = [&](int i, int j) {
        const auto &a = pts[i], &b = pts[i + 1], &c = pts[j], &d = pts[j + 1];
        const double o1 = orient(a, b, c), o2 = orient(a, b, d);
        const double o3 = orient(c, d, a), o4 = orient(c, d, b);
        return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
    };

    for (int i = 0; i < n_seg; ++i) {
        for (int j = i + 2; j < n_seg; ++j) {
            if (i == 0 && j == n_seg - 1) continue;  // shared closing vertex
            if (segments_cross(i, j)) return false;
        }
    }
    return true;
}

void write_coordinates(std::ostream& out, const AirfoilGeometry& geometry) {
    out.precision(9);
    out << std::fixed;
    for (const auto& p : geometry.points) out << p[0] << ' ' << p[1] << '\n';
}

void write_coordinate_file(const std::string& path, const AirfoilGeometry& geometry) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_coordinate_file: cannot open " + path);
    write_coordinates(out, geometry);
    if (!out) throw std::runtime_error("write_coordinate_file: write failed for " + path);
}

AirfoilGeometry read_coordinate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_coordinate_file: cannot open " + path);
    AirfoilGeometry geo;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        double x, y;
        if (ls >> x >> y) {
            geo.points.push_back({x, y});
        } else if (first && !line.empty()) {
            // optional name line
        } else if (!line.empty()) {
            throw std::runtime_error("read_coordinate_file: malformed line in " + path);
        }
        first = false;
    }
    if (geo.point_count() < 3) {
        throw std::runtime_error("read_coordinate_file: too few points in " + path);
    }
    return geo;
}

}  // namespace mcmo

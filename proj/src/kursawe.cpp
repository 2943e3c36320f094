#include "mcmo/kursawe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "mcmo/pareto.hpp"
#include "mcmo/rng.hpp"

namespace mcmo {

std::array<double, 2> kursawe_g(std::span<const double> x) {
    if (x.size() != 3) throw std::invalid_argument("kursawe_g: expects three decision variables");
    double g1 = 0.0;
    for (int i = 0; i < 2; ++i) {
        g1 += -10.0 * std::exp(-0.2 * std::sqrt(x[i] * x[i] + x[i + 1] * x[i + 1]));
    }
    double g2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        g2 += std::pow(std::abs(x[i]), 0.8) + 5.0 * std::sin(x[i] * x[i] * x[i]);
    }
    return {g1, g2};
}

std::array<double, 2> kursawe_modified(std::span<const double> x, double theta) {
    const auto [g1, g2] = kursawe_g(x);
    const double c = std::cos(theta), s = std::sin(theta);
    return {g1 * c - g2 * s, g1 * s + g2 * c};
}

KursaweProblem::KursaweProblem()
    : decision_(BoxSpace::linear({-5.0, -5.0, -5.0}, {5.0, 5.0, 5.0})),
      condition_(BoxSpace::linear({0.0}, {theta_max})) {}

std::optional<std::vector<double>> KursaweProblem::evaluate_impl(std::span<const double> x,
                                                                 std::span<const double> c) {
    const auto f = kursawe_modified(x, c[0]);
    return std::vector<double>{f[0], f[1]};
}

namespace {

// Van der Corput radical inverse for the Halton low-discrepancy points.
double radical_inverse(unsigned base, unsigned long long index) {
    double inv_base = 1.0 / base;
    double factor = inv_base;
    double result = 0.0;
    while (index > 0) {
        result += static_cast<double>(index % base) * factor;
        index /= base;
        factor *= inv_base;
    }
    return result;
}

// Strict non-dominated filter of a bi-objective cloud, O(n log n).
std::vector<std::array<double, 2>> nondominated_2d(std::vector<std::array<double, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    std::vector<std::array<double, 2>> front;
    double best_f2 = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
        if (p[1] < best_f2) {
            front.push_back(p);
            best_f2 = p[1];
        }
    }
    return front;
}

}  // namespace

KursaweOracle::KursaweOracle(long sample_budget, std::uint64_t seed) : seed_(seed) {
    if (sample_budget < 1000) {
        throw std::invalid_argument("KursaweOracle: sample budget unreasonably small");
    }
    cloud_.reserve(sample_budget);
    Rng rng(seed);
    double x[3];

    // Mixed sampling: a regular lattice (odd side, so symmetric anchors such
    // as the domain center are hit exactly), a Halton set, and uniform
    // pseudo-random fill.
    long side = 3;
    while ((side + 2) * (side + 2) * (side + 2) <= sample_budget / 5) side += 2;
    const long n_lattice = side * side * side;
    for (long a = 0; a < side; ++a) {
        x[0] = -5.0 + 10.0 * static_cast<double>(a) / (side - 1);
        for (long b = 0; b < side; ++b) {
            x[1] = -5.0 + 10.0 * static_cast<double>(b) / (side - 1);
            for (long c = 0; c < side; ++c) {
                x[2] = -5.0 + 10.0 * static_cast<double>(c) / (side - 1);
                cloud_.push_back(kursawe_g(x));
            }
        }
    }

    static constexpr unsigned bases[3] = {2, 3, 5};
    const long n_halton = (sample_budget - n_lattice) * 2 / 5;
    for (long k = 0; k < n_halton; ++k) {
        const auto idx = static_cast<unsigned long long>(k) + 1;
        for (int d = 0; d < 3; ++d) x[d] = -5.0 + 10.0 * radical_inverse(bases[d], idx);
        cloud_.push_back(kursawe_g(x));
    }

    while (static_cast<long>(cloud_.size()) < sample_budget) {
        for (double& v : x) v = rng.uniform(-5.0, 5.0);
        cloud_.push_back(kursawe_g(x));
    }
}

std::vector<std::array<double, 2>> KursaweOracle::front(double theta) const {
    const double c = std::cos(theta), s = std::sin(theta);
    std::vector<std::array<double, 2>> rotated(cloud_.size());
    for (std::size_t i = 0; i < cloud_.size(); ++i) {
        const auto& g = cloud_[i];
        rotated[i] = {g[0] * c - g[1] * s, g[0] * s + g[1] * c};
    }
    return nondominated_2d(std::move(rotated));
}

double KursaweOracle::front_hv(double theta, std::array<double, 2> reference) const {
    const auto f = front(theta);
    return hypervolume_2d(f, reference);
}

std::vector<std::array<double, 2>> KursaweOracle::front_cached(
    double theta, const std::string& cache_dir) const {
    namespace fs = std::filesystem;
    char name[128];
    std::snprintf(name, sizeof(name), "kursawe_front_b%ld_s%llu_t%.12g.csv", sample_budget(),
                  static_cast<unsigned long long>(seed_), theta);
    const fs::path path = fs::path(cache_dir) / name;
    if (fs::exists(path)) {
        std::ifstream in(path);
        std::vector<std::array<double, 2>> pts;
        double a, b;
        char comma;
        while (in >> a >> comma >> b) pts.push_back({a, b});
        if (!pts.empty()) return pts;
    }
    auto pts = front(theta);
    fs::create_directories(cache_dir);
    std::ofstream out(path);
    out.precision(17);
    for (const auto& p : pts) out << p[0] << ',' << p[1] << '\n';
    return pts;
}

std::vector<std::array<double, 2>> real_front_oracle(double theta, long sample_budget,
                                                     std::uint64_t seed) {
    return KursaweOracle(sample_budget, seed).front(theta);
}

}  // namespace mcmo

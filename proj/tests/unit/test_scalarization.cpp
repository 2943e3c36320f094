#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "mcmo/scalarization.hpp"

using namespace mcmo;

namespace {

DecompositionGrid unit_grid(int cells) {
    return DecompositionGrid(BoxSpace::linear({0.0}, {1.0}), cells);
}

}  // namespace

TEST_SUITE("scalarization") {

TEST_CASE("chebyshev examples") {
    CHECK(chebyshev(std::vector{2.0, -1.0}, WeightVector({0.3, 0.7}),
                    std::vector{-1.0, -2.0}) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(chebyshev(std::vector{4.0, -2.0}, WeightVector({0.5, 0.5}),
                    std::vector{4.0, -2.0}) == 0.0);
    CHECK(chebyshev(std::vector{5.0, 99.0}, WeightVector({1.0, 0.0}),
                    std::vector{1.0, 0.0}) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(chebyshev(std::vector{std::numeric_limits<double>::infinity(), 0.0},
                              WeightVector({0.5, 0.5}), std::vector{0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("reward negates the scalarized value") {
    CHECK(reward(std::vector{2.0, -1.0}, WeightVector({0.3, 0.7}), std::vector{-1.0, -2.0}) ==
          doctest::Approx(-0.9).epsilon(1e-15));
    CHECK(reward(std::vector{3.0, 3.0}, WeightVector({0.2, 0.8}), std::vector{3.0, 3.0}) == 0.0);
    CHECK(reward(std::vector{1.0, 2.0}, WeightVector({0.5, 0.5}), std::vector{0.0, 0.0}) ==
          doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("weight vector validation") {
    CHECK_NOTHROW(WeightVector({1.0, 0.0}));
    CHECK_NOTHROW(WeightVector({0.25, 0.75}));
    CHECK_THROWS_AS(WeightVector({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector({1.0}), std::invalid_argument);
}

TEST_CASE("two-objective sampling is (u, 1-u)") {
    Rng expected(99), actual(99);
    for (int k = 0; k < 100; ++k) {
        const double u = expected.uniform();
        const WeightVector w = sample_weight(2, actual);
        CHECK(w[0] == u);
        CHECK(w[1] == 1.0 - u);
    }
}

TEST_CASE("three-objective samples sit on the simplex with uniform marginals") {
    Rng rng(2024);
    const int draws = 100000;
    double mean[3] = {0, 0, 0};
    for (int k = 0; k < draws; ++k) {
        const WeightVector w = sample_weight(3, rng);
        double sum = 0.0;
        for (int i = 0; i < 3; ++i) {
            CHECK(w[i] >= 0.0);
            sum += w[i];
            mean[i] += w[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (double& m : mean) m /= draws;
    // standard error of the marginal mean is ~0.0007; allow 5 sigma
    for (int i = 0; i < 3; ++i) CHECK(mean[i] == doctest::Approx(1.0 / 3.0).epsilon(0.012));
}

TEST_CASE("utopia update examples") {
    UtopiaTracker tracker(unit_grid(1), {0.01, 0.01});
    const std::vector<double> c{0.5};

    SUBCASE("first observation replaces the sentinel") {
        const auto changed = tracker.update(c, std::vector{3.0, 4.0});
        CHECK(changed == std::vector<bool>{true, true});
        CHECK(tracker.utopia(0)[0] == doctest::Approx(2.99).epsilon(1e-15));
        CHECK(tracker.utopia(0)[1] == doctest::Approx(3.99).epsilon(1e-15));
        CHECK(tracker.visited(0));
    }

    SUBCASE("only improving components move") {
        tracker.update(c, std::vector{0.01, 0.01});  // utopia becomes (0, 0)
        CHECK(tracker.utopia(0)[0] == 0.0);
        CHECK(tracker.utopia(0)[1] == 0.0);
        const auto changed = tracker.update(c, std::vector{-0.5, 0.2});
        CHECK(changed == std::vector<bool>{true, false});
        CHECK(tracker.utopia(0)[0] == doctest::Approx(-0.51).epsilon(1e-15));
        CHECK(tracker.utopia(0)[1] == 0.0);
    }

    SUBCASE("boundary non-improvement: f equal to utopia plus tau") {
        tracker.update(c, std::vector{0.01, 0.01});
        const auto changed = tracker.update(c, std::vector{0.01, 0.01});
        CHECK(changed == std::vector<bool>{false, false});
    }
}

TEST_CASE("utopia is per-component non-increasing") {
    UtopiaTracker tracker(unit_grid(8), {0.05, 0.05});
    Rng rng(5);
    std::vector<std::vector<double>> last(8);
    for (int k = 0; k < 4000; ++k) {
        const std::vector<double> c{rng.uniform()};
        const std::vector<double> f{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
        tracker.update(c, f);
        const int cell = tracker.grid().cell_index(c);
        const auto u = tracker.utopia(cell);
        if (!last[cell].empty()) {
            CHECK(u[0] <= last[cell][0]);
            CHECK(u[1] <= last[cell][1]);
        }
        CHECK(u[0] <= f[0] - 0.05);
        CHECK(u[1] <= f[1] - 0.05);
        last[cell].assign(u.begin(), u.end());
    }
}

TEST_CASE("utopia rejects out-of-space conditions") {
    UtopiaTracker tracker(unit_grid(4), {0.01, 0.01});
    CHECK_THROWS_AS(tracker.update(std::vector{1.5}, std::vector{0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("state fallback before and after the first observation") {
    UtopiaTracker tracker(unit_grid(4), {0.01, 0.01});
    CHECK(tracker.state_utopia(std::vector{0.1}) == std::vector<double>{0.0, 0.0});
    tracker.update(std::vector{0.9}, std::vector{1.0, 2.0});
    // unvisited cell falls back to the component-wise best over visited cells
    CHECK(tracker.state_utopia(std::vector{0.1}) == std::vector<double>{0.99, 1.99});
    // the visited cell reports its own value
    CHECK(tracker.state_utopia(std::vector{0.9}) == std::vector<double>{0.99, 1.99});
}

TEST_CASE("data reproduction") {
    EvaluationRecord record;
    record.episode = 17;
    record.condition_raw = {0.25};
    record.decision_raw = {1.0, -2.0};
    record.objectives = {2.0, -1.0};

    const std::vector<double> c_norm{-0.5};
    const std::vector<double> action{0.2, -0.4};
    const std::vector<double> utopia{-1.0, -2.0};

    SUBCASE("produces exactly the requested count") {
        Rng rng(11);
        const SampleBatch batch = reproduce_data(record, c_norm, action, utopia, 100, rng);
        CHECK(batch.size() == 100);
        CHECK(batch.state_dim == 5);
        CHECK(batch.action_dim == 2);
    }

    SUBCASE("every sample shares condition, action, utopia; rewards recompute bit-for-bit") {
        Rng rng(12);
        const SampleBatch batch = reproduce_data(record, c_norm, action, utopia, 64, rng);
        for (int k = 0; k < batch.size(); ++k) {
            const auto s = batch.state(k);
            CHECK(s[0] == c_norm[0]);
            const WeightVector w({s[1], s[2]});
            CHECK(s[3] == utopia[0]);
            CHECK(s[4] == utopia[1]);
            CHECK(batch.action(k)[0] == action[0]);
            CHECK(batch.action(k)[1] == action[1]);
            CHECK(batch.episodes[k] == 17);
            // bit-identical reproduction from the embedded fields
            CHECK(batch.rewards[k] == reward(record.objectives, w, utopia));
        }
    }

    SUBCASE("single-objective reduction under w = (1, 0)") {
        CHECK(reward(record.objectives, WeightVector({1.0, 0.0}), utopia) ==
              -std::abs(record.objectives[0] - utopia[0]));
    }

    SUBCASE("failed records are rejected") {
        EvaluationRecord failed = record;
        failed.failed = true;
        Rng rng(13);
        CHECK_THROWS_AS(reproduce_data(failed, c_norm, action, utopia, 10, rng),
                        std::invalid_argument);
        CHECK_THROWS_AS(reproduce_data(record, c_norm, action, utopia, 0, rng),
                        std::invalid_argument);
    }
}

TEST_CASE("chebyshev minimizers are weakly Pareto optimal on finite sets") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(199));
        const int m = 2 + static_cast<int>(rng.uniform_index(2));
        std::vector<std::vector<double>> points(n, std::vector<double>(m));
        std::vector<double> f_star(m);
        for (auto& p : points) {
            for (double& v : p) v = rng.uniform(-5.0, 5.0);
        }
        for (int i = 0; i < m; ++i) {
            double lo = points[0][i];
            for (const auto& p : points) lo = std::min(lo, p[i]);
            f_star[i] = lo - 0.01;
        }
        std::vector<double> wv(m);
        double sum = 0.0;
        for (double& v : wv) {
            v = rng.uniform(0.05, 1.0);  // strictly positive
            sum += v;
        }
        for (double& v : wv) v /= sum;
        double fix = 0.0;
        for (int i = 0; i + 1 < m; ++i) fix += wv[i];
        wv[m - 1] = 1.0 - fix;
        const WeightVector w(wv);

        int best = 0;
        double best_val = chebyshev(points[0], w, f_star);
        for (int i = 1; i < n; ++i) {
            const double v = chebyshev(points[i], w, f_star);
            if (v < best_val) {
                best_val = v;
                best = i;
            }
        }
        // no other point strictly improves every objective of the minimizer
        for (int i = 0; i < n; ++i) {
            if (i == best) continue;
            bool all_strictly_better = true;
            for (int k = 0; k < m; ++k) {
                if (!(points[i][k] < points[best][k])) {
                    all_strictly_better = false;
                    break;
                }
            }
            CHECK_FALSE(all_strictly_better);
        }
    }
}

}  // TEST_SUITE

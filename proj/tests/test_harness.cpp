#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "ewald1d/harness.hpp"
#include "ewald1d/reference.hpp"
#include "ewald1d/summation.hpp"

using namespace ewald1d;

TEST_CASE("waterbag") {
    const DomainConfig cfg = DomainConfig::scaled(16);
    WaterbagSpec spec;
    spec.count = 32;
    spec.placement = Placement::uniform;
    spec.seed = 9;
    const SystemState a = make_waterbag(spec, cfg, BoundaryMode::periodic);
    const SystemState b = make_waterbag(spec, cfg, BoundaryMode::periodic);
    CHECK(a.x == b.x);
    CHECK(a.v == b.v);
    CHECK(std::is_sorted(a.x.begin(), a.x.end()));
    for (double v : a.v) CHECK(std::abs(v) <= spec.v0);
    CHECK(std::abs(a.com_velocity()) < 1e-15);

    const SystemState m = make_waterbag(spec, cfg, BoundaryMode::symmetric);
    CHECK(std::abs(m.com_position()) <= 1e-15);
    CHECK(std::abs(m.com_velocity()) <= 1e-15);
    for (std::size_t r = 0; r < m.size(); ++r) {
        CHECK(m.x[r] == -m.x[m.size() - 1 - r]);
        CHECK(m.v[r] == -m.v[m.size() - 1 - r]);
    }

    WaterbagSpec lattice;
    lattice.count = 32;
    const SystemState l = make_waterbag(lattice, cfg, BoundaryMode::periodic);
    for (std::size_t r = 0; r < l.size(); ++r) CHECK(l.x[r] == doctest::Approx(-15.5 + r));

    WaterbagSpec bad = spec;
    bad.v0 = -1.0;
    CHECK_THROWS_AS(make_waterbag(bad, cfg, BoundaryMode::periodic), std::invalid_argument);
    bad = spec;
    bad.count = 30;
    CHECK_THROWS_AS(make_waterbag(bad, cfg, BoundaryMode::periodic), std::invalid_argument);
}

TEST_CASE("unit uniform mapping") {
    CHECK(unit_uniform(0) == 0.0);
    CHECK(unit_uniform(~0ULL) < 1.0);
    CHECK(unit_uniform(1ULL << 63) == 0.5);
}

TEST_CASE("histogram, variance, pearson") {
    const DomainConfig cfg{};
    const std::vector<double> x{-1.0, -0.5, 0.0, 0.99, 1.0};
    const auto h = density_histogram(x, 4, cfg);
    REQUIRE(h.size() == 4);
    CHECK(std::accumulate(h.begin(), h.end(), 0) == 5);
    CHECK(h[0] == 2); // -1 and the wrapped +1
    CHECK(variance(std::vector<int>{2, 2, 2}) == 0.0);
    CHECK(variance(std::vector<int>{0, 2}) == 1.0);
    const std::vector<int> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1};
    CHECK(pearson(a, b) == doctest::Approx(1.0));
    CHECK(pearson(a, c) == doctest::Approx(-1.0));
    CHECK(pearson(a, std::vector<int>{1, 1, 1, 1}) == 0.0);
}

TEST_CASE("cluster proxy") {
    const DomainConfig cfg = DomainConfig::scaled(4);
    std::vector<double> lattice;
    for (int r = 0; r < 8; ++r) lattice.push_back(-3.5 + r);
    CHECK(cluster_proxy(lattice, 0.5, cfg) == 8);
    const std::vector<double> same(8, 0.3);
    CHECK(cluster_proxy(same, 0.1, cfg) == 1);
    // A cluster straddling the boundary counts once.
    const std::vector<double> wrap{-3.99, 3.99, 0.0, 0.05};
    CHECK(cluster_proxy(wrap, 0.1, cfg) == 2);

    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        const DomainConfig c = DomainConfig::scaled(1 + static_cast<int>(rng() % 30));
        std::vector<double> x(static_cast<std::size_t>(c.particle_count()));
        for (double& xi : x) xi = -c.half_length + c.period() * unit_uniform(rng());
        const double thr = 0.2 + unit_uniform(rng());
        CHECK(cluster_proxy(x, thr, c) == reference::brute_force_cluster_count(x, thr, c));
    }
}

TEST_CASE("run_experiment") {
    const DomainConfig cfg = DomainConfig::scaled(16);
    WaterbagSpec spec;
    spec.count = 32;
    const std::vector<double> none;
    CHECK(run_experiment(BoundaryMode::periodic, spec, cfg, none).empty());

    const std::vector<double> times{0.0, 1.0, 2.5, 2.5, 6.0};
    const auto frames = run_experiment(BoundaryMode::periodic, spec, cfg, times);
    REQUIRE(frames.size() == times.size());
    const double e0 = *frames.front().energy;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        CHECK(frames[i].time == times[i]);
        CHECK(std::accumulate(frames[i].histogram.begin(), frames[i].histogram.end(), 0) == 32);
        CHECK(frames[i].histogram.size() == 4);
        for (double x : frames[i].x) {
            CHECK(x >= -cfg.half_length);
            CHECK(x < cfg.half_length);
        }
        CHECK(std::abs(*frames[i].energy - e0) <= 1e-10 * std::abs(e0));
    }

    const std::vector<double> backwards{1.0, 0.5};
    CHECK_THROWS_AS(run_experiment(BoundaryMode::periodic, spec, cfg, backwards), std::invalid_argument);

    const DomainConfig damped = DomainConfig::scaled(16, 0.5);
    const auto f2 = run_experiment(BoundaryMode::symmetric, spec, damped, times);
    for (const auto& f : f2) {
        CHECK_FALSE(f.energy.has_value());
        CHECK(std::abs(f.xc_cover) <= 1e-12);
        CHECK(std::abs(f.vc) <= 1e-12);
    }
}

TEST_CASE("early periodic and symmetric histograms agree") {
    const double gamma = 1.0 / std::numbers::sqrt2;
    const DomainConfig cfg = DomainConfig::scaled(64, gamma);
    WaterbagSpec spec;
    spec.count = 128;
    spec.placement = Placement::uniform;
    const SystemState ic = make_waterbag(spec, cfg, BoundaryMode::symmetric);
    const std::vector<double> times{3.0};
    const auto p = run_from_state(ic, BoundaryMode::periodic, cfg, times);
    const auto s = run_from_state(ic, BoundaryMode::symmetric, cfg, times);
    CHECK(pearson(p[0].histogram, s[0].histogram) > 0.99);
}

TEST_CASE("centre-of-mass trace") {
    const DomainConfig cfg = DomainConfig::scaled(2); // L/N = 1
    // One particle runs through +L, everything else sits still.
    SystemState s;
    s.x = {-1.5, -0.5, 0.5, 1.9};
    s.v = {0.0, 0.0, 0.0, 0.0};
    s.labels = {0, 1, 2, 3};
    DiagnosticsFrame a, b;
    a.time = 0.0;
    a.xc_cover = 0.1;
    a.xc_wrapped = 0.1;
    b.time = 1.0;
    b.xc_cover = 0.15; // particle moved 0.2 to the right, crossed +2
    b.xc_wrapped = 0.15 - 1.0;
    const std::vector<DiagnosticsFrame> frames{a, b};
    const ComTrace tr = center_of_mass_trace(frames, cfg);
    REQUIRE(tr.jumps.size() == 1);
    CHECK(tr.jumps[0].magnitude == doctest::Approx(-1.0));

    DiagnosticsFrame c = b;
    c.time = 2.0;
    c.xc_cover = 0.2;
    c.xc_wrapped = 0.2 - 1.0;
    const std::vector<DiagnosticsFrame> smooth{b, c};
    CHECK(center_of_mass_trace(smooth, cfg).jumps.empty());
}

#include <doctest.h>

#include <random>
#include <vector>

#include "ewald1d/harness.hpp"
#include "ewald1d/kernels.hpp"

using namespace ewald1d;

TEST_CASE("grid points") {
    CHECK(GridSpec{-1.0, 1.0, 3}.points() == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(GridSpec{0.5, 2.0, 1}.points() == std::vector<double>{0.5});
}

TEST_CASE("OpenMP kernels reproduce the serial ones bit for bit") {
    const DomainConfig cfg = DomainConfig::scaled(10);
    std::mt19937_64 rng(9);
    std::vector<double> src(20);
    for (double& s : src) s = -cfg.half_length + cfg.period() * unit_uniform(rng());
    const auto grid = GridSpec{-cfg.half_length, cfg.half_length, 301}.points();
    std::vector<double> a(grid.size()), b(grid.size());

    kernels::serial::pairwise_field(grid, src, cfg, a);
    kernels::omp::pairwise_field(grid, src, cfg, b);
    CHECK(a == b);
    kernels::serial::pairwise_potential(grid, src, cfg, a);
    kernels::omp::pairwise_potential(grid, src, cfg, b);
    CHECK(a == b);
    kernels::serial::series_field(grid, src, FourierTruncation{123}, cfg, a);
    kernels::omp::series_field(grid, src, FourierTruncation{123}, cfg, b);
    CHECK(a == b);
    kernels::serial::series_potential(grid, src, FourierTruncation{123}, cfg, a);
    kernels::omp::series_potential(grid, src, FourierTruncation{123}, cfg, b);
    CHECK(a == b);
    CHECK(kernels::serial::pair_potential_energy(src, cfg) == kernels::omp::pair_potential_energy(src, cfg));
}

TEST_CASE("field table columns") {
    const DomainConfig cfg{};
    const std::vector<double> src{0.0};
    const auto grid = GridSpec{-0.5, 0.5, 3}.points();
    const auto t = kernels::serial::field_table(grid, src, FourierTruncation{4000}, cfg);
    REQUIRE(t.size() == 3);
    CHECK(t[1].field == 0.0);
    CHECK(t[0].field == doctest::Approx(-t[2].field));
    CHECK(t[2].field == doctest::Approx(single_particle_field(0.5, 0.0, cfg)));
    CHECK(t[2].series_field == doctest::Approx(t[2].field).epsilon(1e-3));
    CHECK(t[2].primitive_field == doctest::Approx(primitive_cell_field(0.5, 0.0, cfg)));

    const std::vector<double> none;
    const auto empty = kernels::omp::field_table(grid, none, FourierTruncation{10}, cfg);
    for (const auto& row : empty) {
        CHECK(row.field == 0.0);
        CHECK(row.series_field == 0.0);
        CHECK(row.potential == 0.0);
    }
}

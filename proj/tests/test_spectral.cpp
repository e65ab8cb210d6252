#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ewald1d/domain.hpp"
#include "ewald1d/harness.hpp"
#include "ewald1d/spectral.hpp"

using namespace ewald1d;

TEST_CASE("fourier coefficients") {
    const DomainConfig cfg = DomainConfig::scaled(4);
    const std::vector<double> origin{0.0};
    for (int n : {1, 2, 7, -3}) {
        const auto c = fourier_coefficient(origin, n, cfg);
        CHECK(c.real() == doctest::Approx(cfg.coupling / (2 * cfg.half_length)));
        CHECK(std::abs(c.imag()) < 1e-15);
    }
    std::vector<double> lattice;
    for (int r = 0; r < 8; ++r) lattice.push_back(-cfg.half_length + (r + 0.5) * cfg.period() / 8);
    for (int n = 1; n < 20; ++n) {
        const auto c = fourier_coefficient(lattice, n, cfg);
        if (n % 8 != 0) CHECK(std::abs(c) < 1e-13);
        else CHECK(std::abs(c) > 0.1);
    }
    CHECK_THROWS_AS(fourier_coefficient(origin, 0, cfg), std::invalid_argument);
}

TEST_CASE("series potential converges to the zero-mean closed form") {
    const DomainConfig cfg{};
    const std::vector<double> src{0.2};
    // Offset -gL/6 is the cell mean of phi_1.
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double x = -1.0 + 2.0 * k / 1000;
        const double closed = single_particle_potential(x, 0.2, cfg) - cfg.coupling * cfg.half_length / 6.0;
        worst = std::max(worst, std::abs(series_potential(x, src, FourierTruncation{100000}, cfg) - closed));
    }
    CHECK(worst <= 1e-4 * cfg.coupling * cfg.half_length);
    // At the source: -(gL/pi^2) sum 1/n^2 -> -gL/6.
    CHECK(series_potential(0.2, src, FourierTruncation{100000}, cfg) == doctest::Approx(-1.0 / 6.0).epsilon(1e-5));
    CHECK(series_potential(0.2 + 0.37, src, FourierTruncation{500}, cfg) ==
          doctest::Approx(series_potential(0.2 - 0.37, src, FourierTruncation{500}, cfg)).epsilon(1e-12));
}

TEST_CASE("series field") {
    const DomainConfig cfg{};
    const std::vector<double> src{0.0};
    CHECK(std::abs(series_field(0.5, src, FourierTruncation{10000}, cfg) - single_particle_field(0.5, 0.0, cfg)) <
          1e-3 * cfg.coupling);
    for (int m : {1, 10, 1000}) CHECK(series_field(0.0, src, FourierTruncation{m}, cfg) == 0.0);
    CHECK(series_field(-0.3, src, FourierTruncation{777}, cfg) ==
          doctest::Approx(-series_field(0.3, src, FourierTruncation{777}, cfg)).epsilon(1e-12));
}

TEST_CASE("primitive cell series field") {
    const DomainConfig cfg{};
    std::mt19937_64 rng(1);
    std::vector<double> src(5);
    for (double& s : src) s = 2.0 * unit_uniform(rng()) - 1.0;
    CHECK(std::abs(primitive_cell_series_field(1.0, src, FourierTruncation{200}, cfg)) < 1e-12);
    CHECK(std::abs(primitive_cell_series_field(-1.0, src, FourierTruncation{200}, cfg)) < 1e-12);
    CHECK(std::abs(primitive_cell_series_field_complex(0.3, src, FourierTruncation{200}, cfg).imag()) < 1e-12);

    // Single source vs the closed control, away from the jump.
    const std::vector<double> one{0.1};
    for (double x : {-0.7, -0.2, 0.5, 0.8}) {
        CHECK(primitive_cell_series_field(x, one, FourierTruncation{20000}, cfg) ==
              doctest::Approx(primitive_cell_field(x, 0.1, cfg)).epsilon(1e-3));
    }
    const std::vector<double> pair{-0.4, 0.4};
    CHECK(primitive_cell_series_field(-0.25, pair, FourierTruncation{300}, cfg) ==
          doctest::Approx(-primitive_cell_series_field(0.25, pair, FourierTruncation{300}, cfg)).epsilon(1e-10));
}

TEST_CASE("screened sums") {
    const DomainConfig cfg = DomainConfig::scaled(1);
    const double L = cfg.half_length;
    const ScreenedSum s = screened_sum_direct(0.3, 0.0, ScreeningParameter{5.0 / L, 10}, cfg);
    CHECK(s.tail_bound < 1e-21);

    for (double kl : {2.0, 0.3, 1e-2}) {
        const double kappa = kl / L;
        const int r = replicas_for_tolerance(kappa, 1e-17, cfg);
        CHECK(std::exp(-2.0 * kappa * L * r) <= 1e-17);
        for (double y : {0.0, 0.45, -0.9}) {
            const double direct = screened_sum_direct(y, 0.0, ScreeningParameter{kappa, r}, cfg).value;
            CHECK(direct == doctest::Approx(screened_sum_closed(y, 0.0, kappa, cfg)).epsilon(1e-12));
        }
    }
    // Both bracketing choices at a replica boundary.
    CHECK(screened_sum_closed_from_lower<double>(0.0, 0.3, L, 1.0) ==
          doctest::Approx(screened_sum_closed_from_lower<double>(2.0 * L, 0.3, L, 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(screened_sum_closed(0.1, 0.0, 0.0, cfg), std::invalid_argument);
}

TEST_CASE("screened potential limit and its quadratic approach") {
    const DomainConfig cfg = DomainConfig::scaled(1);
    const double L = cfg.half_length;
    // Zero separation: replica form -gL/2, limit -gL/6.
    CHECK(replica_form_potential(0.0, 0.0, cfg) == doctest::Approx(-0.5 * L));
    CHECK(screened_potential_limit(0.0, 0.0, cfg) == doctest::Approx(-L / 6.0));
    const double d2 = screened_limit_deviation(0.3, 0.0, 1e-2 / L, cfg);
    const double d3 = screened_limit_deviation(0.3, 0.0, 1e-3 / L, cfg);
    const double d4 = screened_limit_deviation(0.3, 0.0, 1e-4 / L, cfg);
    CHECK(std::abs(d2) < 1e-4);
    CHECK(d2 / d3 == doctest::Approx(100.0).epsilon(1e-3));
    CHECK(d3 / d4 == doctest::Approx(100.0).epsilon(1e-3));
    // Double evaluation agrees at moderate kappa.
    CHECK(screened_potential_closed(0.3, 0.0, 0.5, cfg) - screened_potential_limit(0.3, 0.0, cfg) ==
          doctest::Approx(screened_limit_deviation(0.3, 0.0, 0.5, cfg)).epsilon(1e-9));
}

TEST_CASE("screened kernel coefficient") {
    const DomainConfig cfg{};
    const double k = std::numbers::pi;
    CHECK(screened_kernel_coefficient(0.0 + 1e-300, 1, cfg) == doctest::Approx(-2.0 / (k * k)));
    CHECK(screened_kernel_coefficient(k, 1, cfg) == 0.0);
}

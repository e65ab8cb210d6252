#include "ewald1d/spectral.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ewald1d/summation.hpp"

namespace ewald1d {

namespace {

void require_truncation(FourierTruncation trunc) {
    if (trunc.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
}

void require_kappa(double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
}

} // namespace

std::complex<double> fourier_coefficient(std::span<const double> positions, int n, const DomainConfig& cfg) {
    if (n == 0) throw std::invalid_argument("the n = 0 harmonic carries no field");
    const double L = cfg.half_length;
    CompensatedSum<> re;
    CompensatedSum<> im;
    for (double xj : positions) {
        // Reduce the phase through the wrapped position so large n stays accurate.
        const double phase = -std::numbers::pi * n * wrap_displacement(xj, L) / L;
        re += std::cos(phase);
        im += std::sin(phase);
    }
    const double scale = cfg.coupling / (2.0 * L);
    return {scale * re.value(), scale * im.value()};
}

double series_potential(double x, std::span<const double> positions, FourierTruncation trunc,
                        const DomainConfig& cfg) {
    require_truncation(trunc);
    const double L = cfg.half_length;
    CompensatedSum<> total;
    for (double xj : positions) {
        const double theta = std::numbers::pi * wrap_displacement(x - xj, L) / L;
        CompensatedSum<> sum;
        for (int n = trunc.n_max; n >= 1; --n) {
            const double dn = n;
            sum += std::cos(dn * theta) / (dn * dn);
        }
        total += sum.value();
    }
    return -cfg.coupling * L / (std::numbers::pi * std::numbers::pi) * total.value();
}

double series_field(double x, std::span<const double> positions, FourierTruncation trunc,
                    const DomainConfig& cfg) {
    require_truncation(trunc);
    const double L = cfg.half_length;
    CompensatedSum<> total;
    for (double xj : positions) {
        const double theta = std::numbers::pi * wrap_displacement(x - xj, L) / L;
        CompensatedSum<> sum;
        for (int n = trunc.n_max; n >= 1; --n) {
            const double dn = n;
            sum += std::sin(dn * theta) / dn;
        }
        total += sum.value();
    }
    return -cfg.coupling / std::numbers::pi * total.value();
}

std::complex<double> primitive_cell_series_field_complex(double x, std::span<const double> positions,
                                                         FourierTruncation trunc, const DomainConfig& cfg) {
    require_truncation(trunc);
    const double L = cfg.half_length;
    const std::complex<double> i{0.0, 1.0};
    CompensatedSum<> re;
    CompensatedSum<> im;
    for (int k = trunc.n_max; k >= 1; --k) {
        for (int n : {k, -k}) {
            const std::complex<double> cn = fourier_coefficient(positions, n, cfg);
            const double parity = (n % 2 == 0) ? 1.0 : -1.0;
            const double phase = std::numbers::pi * n * x / L;
            const std::complex<double> wave{std::cos(phase) - parity, std::sin(phase)};
            const std::complex<double> term = i * cn * (L / (std::numbers::pi * n)) * wave;
            re += term.real();
            im += term.imag();
        }
    }
    return {re.value(), im.value()};
}

double primitive_cell_series_field(double x, std::span<const double> positions, FourierTruncation trunc,
                                   const DomainConfig& cfg) {
    return primitive_cell_series_field_complex(x, positions, trunc, cfg).real();
}

double screening_background(double kappa, const DomainConfig& cfg) {
    require_kappa(kappa);
    return cfg.coupling / (2.0 * cfg.half_length * kappa * kappa);
}

ScreenedSum screened_sum_direct(double x, double x1, ScreeningParameter scr, const DomainConfig& cfg) {
    require_kappa(scr.kappa);
    if (scr.r_max < 1) throw std::invalid_argument("r_max must be >= 1");
    const double L = cfg.half_length;
    const double y = x - x1;
    CompensatedSum<> sum;
    // Outermost replicas first so the small terms are accumulated before the large ones.
    for (int r = scr.r_max; r >= 1; --r) {
        for (int s : {r, -r}) {
            const double d = std::abs(y - 2.0 * s * L);
            sum += d * std::exp(-scr.kappa * d);
        }
    }
    const double d0 = std::abs(y);
    sum += d0 * std::exp(-scr.kappa * d0);
    return ScreenedSum{0.5 * cfg.coupling * sum.value(), std::exp(-2.0 * scr.kappa * L * scr.r_max)};
}

double screened_potential_direct(double x, double x1, ScreeningParameter scr, const DomainConfig& cfg,
                                 double tolerance) {
    const ScreenedSum s = screened_sum_direct(x, x1, scr, cfg);
    if (!s.tail_ok(tolerance)) {
        std::cerr << "warning: screened replica sum truncated at r_max=" << scr.r_max
                  << " has tail bound " << s.tail_bound << " > " << tolerance << '\n';
    }
    return s.value - screening_background(scr.kappa, cfg);
}

int replicas_for_tolerance(double kappa, double tolerance, const DomainConfig& cfg) {
    require_kappa(kappa);
    if (!(tolerance > 0.0 && tolerance < 1.0)) throw std::invalid_argument("tolerance must lie in (0, 1)");
    const double r = -std::log(tolerance) / (2.0 * kappa * cfg.half_length);
    return std::max(1, static_cast<int>(std::ceil(r)));
}

double lower_replica_offset(double x, double x1, const DomainConfig& cfg) {
    const double period = cfg.period();
    const double y = x - x1;
    double a = y - period * std::floor(y / period);
    if (a >= period) a -= period;
    if (a < 0.0) a += period;
    return a;
}

double screened_sum_closed(double x, double x1, double kappa, const DomainConfig& cfg) {
    require_kappa(kappa);
    return screened_sum_closed_from_lower<double>(lower_replica_offset(x, x1, cfg), kappa, cfg.half_length,
                                                  cfg.coupling);
}

double screened_potential_closed(double x, double x1, double kappa, const DomainConfig& cfg) {
    require_kappa(kappa);
    return screened_potential_closed<double>(lower_replica_offset(x, x1, cfg), kappa, cfg.half_length,
                                             cfg.coupling);
}

double replica_form_potential(double x, double x1, const DomainConfig& cfg) {
    const double L = cfg.half_length;
    const double lower = lower_replica_offset(x, x1, cfg);
    const double upper = lower - 2.0 * L;
    return -cfg.coupling / (8.0 * L) * (upper * upper + lower * lower);
}

double screened_potential_limit(double x, double x1, const DomainConfig& cfg) {
    return replica_form_potential(x, x1, cfg) + cfg.coupling * cfg.half_length / 3.0;
}

double screened_limit_deviation(double x, double x1, double kappa, const DomainConfig& cfg) {
    require_kappa(kappa);
    using Wide = boost::multiprecision::cpp_bin_float_50;
    const Wide L = cfg.half_length;
    const Wide g = cfg.coupling;
    const Wide lower = lower_replica_offset(x, x1, cfg);
    const Wide upper = lower - 2 * L;
    const Wide closed = screened_potential_closed<Wide>(lower, Wide(kappa), L, g);
    const Wide limit = -g / (8 * L) * (upper * upper + lower * lower) + g * L / 3;
    return static_cast<double>(closed - limit);
}

double screened_kernel_coefficient(double kappa, int n, const DomainConfig& cfg) {
    const double k = std::numbers::pi * n / cfg.half_length;
    const double k2 = kappa * kappa;
    const double q2 = k * k;
    return 2.0 * (k2 - q2) / ((k2 + q2) * (k2 + q2));
}

} // namespace ewald1d

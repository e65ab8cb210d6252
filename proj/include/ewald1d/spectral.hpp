#ifndef EWALD1D_SPECTRAL_HPP
#define EWALD1D_SPECTRAL_HPP

// Independent routes to the periodic potential and field: truncated Fourier
// series, exponentially screened replica sums (direct and geometric closed
// form) and the primitive-cell series field.  These exist to check the closed
// forms in domain.hpp, not to be fast.

#include <cmath>
#include <complex>
#include <span>

#include "ewald1d/domain.hpp"

namespace ewald1d {

struct FourierTruncation {
    int n_max = 1; // highest retained harmonic, >= 1
};

struct ScreeningParameter {
    double kappa = 1.0; // > 0
    int r_max = 1;      // replicas summed: |r| <= r_max
};

// 4 pi G c_n for sheets of mass m at the given cell positions, i.e.
//   (g / 2L) sum_j exp(-i pi n x_j / L).
// This is c_n in units where m = g / (4 pi G).  Throws for n == 0: the mean
// density carries no field.
std::complex<double> fourier_coefficient(std::span<const double> positions, int n, const DomainConfig& cfg);

// -(g L / pi^2) sum_j sum_{n=1}^{n_max} cos(pi n (x - x_j) / L) / n^2.
// Converges to sum_j phi_1(x, x_j) - g L / 6 per source (zero cell mean).
double series_potential(double x, std::span<const double> positions, FourierTruncation trunc,
                        const DomainConfig& cfg);

// -(g / pi) sum_j sum_{n=1}^{n_max} sin(pi n (x - x_j) / L) / n.
// Converges to the closed-form total field away from the sources.
double series_field(double x, std::span<const double> positions, FourierTruncation trunc,
                    const DomainConfig& cfg);

// Primitive-cell field as a Fourier sum over n = +-1..+-n_max.  The imaginary
// part cancels between n and -n; the complex value is returned so callers can
// check that.
std::complex<double> primitive_cell_series_field_complex(double x, std::span<const double> positions,
                                                         FourierTruncation trunc, const DomainConfig& cfg);
double primitive_cell_series_field(double x, std::span<const double> positions, FourierTruncation trunc,
                                   const DomainConfig& cfg);

// Potential of the uniform background with the same screening, 4 pi G rho_0 /
// kappa^2 with rho_0 = m / 2L, i.e. g / (2 L kappa^2).
double screening_background(double kappa, const DomainConfig& cfg);

struct ScreenedSum {
    double value = 0.0;      // screened potential including the background
    double tail_bound = 0.0; // exp(-2 kappa L r_max)
    bool tail_ok(double tolerance) const { return tail_bound <= tolerance; }
};

// (g/2) sum_{|r| <= r_max} |y - 2rL| exp(-kappa |y - 2rL|), y = x - x1.
ScreenedSum screened_sum_direct(double x, double x1, ScreeningParameter scr, const DomainConfig& cfg);

// Direct sum with the background removed.  Logs a warning to stderr when the
// replica tail bound exceeds `tolerance`.
double screened_potential_direct(double x, double x1, ScreeningParameter scr, const DomainConfig& cfg,
                                 double tolerance = 1e-12);

// Smallest r_max whose tail bound exp(-2 kappa L r_max) is <= tolerance.
int replicas_for_tolerance(double kappa, double tolerance, const DomainConfig& cfg);

// Geometric-series form of screened_sum_direct with r_max -> infinity:
//   (g/2) (-d/dkappa) [exp(-kappa Y_<) + exp(kappa Y_>)] / (1 - exp(-2 kappa L))
// with Y_> = Y_< - 2L.  The bracket equals cosh(kappa c) / sinh(kappa L) with
// c = L - Y_<, and that form is differentiated here.  `y_lower` must lie in
// [0, 2L]; both ends give the same value at a replica boundary.  Real may be a
// multiprecision type.
template <typename Real>
Real screened_sum_closed_from_lower(Real y_lower, Real kappa, Real half_length, Real coupling) {
    using std::cosh;
    using std::sinh;
    const Real c = half_length - y_lower;
    const Real sk = sinh(kappa * half_length);
    const Real ck = cosh(kappa * half_length);
    const Real num = half_length * cosh(kappa * c) * ck - c * sinh(kappa * c) * sk;
    return coupling / 2 * num / (sk * sk);
}

// Pick Y_< = y - 2 r_< L in [0, 2L).
double lower_replica_offset(double x, double x1, const DomainConfig& cfg);

// Closed-form screened potential with the background removed.
template <typename Real>
Real screened_potential_closed(Real y_lower, Real kappa, Real half_length, Real coupling) {
    const Real raw = screened_sum_closed_from_lower<Real>(y_lower, kappa, half_length, coupling);
    return raw - coupling / (2 * half_length * kappa * kappa);
}

// Double-precision wrappers; throw std::invalid_argument if kappa <= 0.  The
// background subtraction cancels O(1 / (kappa L)^2) digits, so use the
// template with a wider Real for kappa L well below 1e-3.
double screened_sum_closed(double x, double x1, double kappa, const DomainConfig& cfg);
double screened_potential_closed(double x, double x1, double kappa, const DomainConfig& cfg);

// The replica form of phi_1, -(g / 8L) (Y_>^2 + Y_<^2).  Equals
// single_particle_potential - g L / 2.
double replica_form_potential(double x, double x1, const DomainConfig& cfg);

// kappa -> 0 limit of screened_potential_closed: replica_form_potential + g L / 3,
// i.e. phi_1 - g L / 6, the zero-mean potential.
double screened_potential_limit(double x, double x1, const DomainConfig& cfg);

// screened_potential_closed(kappa) - screened_potential_limit, evaluated with
// 50 significant digits so that small kappa L does not drown in cancellation.
double screened_limit_deviation(double x, double x1, double kappa, const DomainConfig& cfg);

// Fourier kernel of |u| exp(-kappa |u|) at wavenumber pi n / L:
//   2 (kappa^2 - k^2) / (kappa^2 + k^2)^2.
double screened_kernel_coefficient(double kappa, int n, const DomainConfig& cfg);

} // namespace ewald1d

#endif // EWALD1D_SPECTRAL_HPP

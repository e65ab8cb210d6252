#ifndef EWALD1D_KERNELS_HPP
#define EWALD1D_KERNELS_HPP

// Grid and particle-set evaluations.  Every kernel has a serial version, kept
// as the reference, and an OpenMP version with the same signature.  The OpenMP
// versions produce bit-identical results: each output element is computed by
// exactly one thread with the same arithmetic, and reductions go through
// fixed-size blocks summed in block order.

#include <span>
#include <vector>

#include "ewald1d/domain.hpp"
#include "ewald1d/spectral.hpp"

namespace ewald1d {

struct GridSpec {
    double lo = -1.0;
    double hi = 1.0;
    int count = 1;

    // count points from lo to hi inclusive (just lo when count == 1).
    std::vector<double> points() const;
};

// One row of the tabulated field: closed forms, series and the negative control.
struct FieldSample {
    double x = 0.0;
    double potential = 0.0;        // sum_j phi_1(x, x_j)
    double field = 0.0;            // sum_j E_1(x, x_j)
    double series_potential = 0.0; // truncated Fourier potential
    double series_field = 0.0;     // truncated Fourier field
    double primitive_field = 0.0;  // sum_j E_1p(x, x_j)
};

namespace kernels {

namespace serial {

void pairwise_field(std::span<const double> grid, std::span<const double> sources, const DomainConfig& cfg,
                    std::span<double> out);
void pairwise_potential(std::span<const double> grid, std::span<const double> sources, const DomainConfig& cfg,
                        std::span<double> out);
void series_field(std::span<const double> grid, std::span<const double> sources, FourierTruncation trunc,
                  const DomainConfig& cfg, std::span<double> out);
void series_potential(std::span<const double> grid, std::span<const double> sources, FourierTruncation trunc,
                      const DomainConfig& cfg, std::span<double> out);
std::vector<FieldSample> field_table(std::span<const double> grid, std::span<const double> sources,
                                     FourierTruncation trunc, const DomainConfig& cfg);
// sum_{i<j} phi_1(x_i - x_j), O(n^2).
double pair_potential_energy(std::span<const double> positions, const DomainConfig& cfg);

} // namespace serial

namespace omp {

void pairwise_field(std::span<const double> grid, std::span<const double> sources, const DomainConfig& cfg,
                    std::span<double> out);
void pairwise_potential(std::span<const double> grid, std::span<const double> sources, const DomainConfig& cfg,
                        std::span<double> out);
void series_field(std::span<const double> grid, std::span<const double> sources, FourierTruncation trunc,
                  const DomainConfig& cfg, std::span<double> out);
void series_potential(std::span<const double> grid, std::span<const double> sources, FourierTruncation trunc,
                      const DomainConfig& cfg, std::span<double> out);
std::vector<FieldSample> field_table(std::span<const double> grid, std::span<const double> sources,
                                     FourierTruncation trunc, const DomainConfig& cfg);
double pair_potential_energy(std::span<const double> positions, const DomainConfig& cfg);

} // namespace omp

} // namespace kernels

} // namespace ewald1d

#endif // EWALD1D_KERNELS_HPP

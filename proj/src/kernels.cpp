#include "ewald1d/kernels.hpp"

#include <stdexcept>

#include "ewald1d/summation.hpp"

namespace ewald1d {

std::vector<double> GridSpec::points() const {
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    std::vector<double> pts(static_cast<std::size_t>(count));
    if (count == 1) {
        pts[0] = lo;
        return pts;
    }
    const double step = (hi - lo) / (count - 1);
    for (int k = 0; k < count; ++k) pts[static_cast<std::size_t>(k)] = lo + step * k;
    pts.back() = hi;
    return pts;
}

namespace kernels {

namespace {

void require_sizes(std::span<const double> grid, std::span<double> out) {
    if (grid.size() != out.size()) throw std::invalid_argument("output size does not match grid size");
}

double field_at(double x, std::span<const double> sources, const DomainConfig& cfg) {
    CompensatedSum<> sum;
    for (double s : sources) sum += single_particle_field(x, s, cfg);
    return sum.value();
}

double potential_at(double x, std::span<const double> sources, const DomainConfig& cfg) {
    CompensatedSum<> sum;
    for (double s : sources) sum += single_particle_potential(x, s, cfg);
    return sum.value();
}

double primitive_at(double x, std::span<const double> sources, const DomainConfig& cfg) {
    CompensatedSum<> sum;
    for (double s : sources) sum += primitive_cell_field(x, s, cfg);
    return sum.value();
}

FieldSample sample_at(double x, std::span<const double> sources, FourierTruncation trunc,
                      const DomainConfig& cfg) {
    FieldSample row;
    row.x = x;
    row.potential = potential_at(x, sources, cfg);
    row.field = field_at(x, sources, cfg);
    row.series_potential = ewald1d::series_potential(x, sources, trunc, cfg);
    row.series_field = ewald1d::series_field(x, sources, trunc, cfg);
    row.primitive_field = primitive_at(x, sources, cfg);
    return row;
}

double pair_row(std::size_t i, std::span<const double> positions, const DomainConfig& cfg) {
    CompensatedSum<> sum;
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
        sum += single_particle_potential(positions[i], positions[j], cfg);
    }
    return sum.value();
}

double sum_rows(std::span<const double> rows) {
    CompensatedSum<> sum;
    for (double r : rows) sum += r;
    return sum.value();
}

} // namespace

namespace serial {

void pairwise_field(std::span<const double> grid, std::span<const double> sources, const DomainConfig& cfg,
                    std::span<double> out) {
    require_sizes(grid, out);
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] = field_at(grid[k], sources, cfg);
}

void pairwise_potential(std::span<const double> grid, std::span<const double> sources, const DomainConfig& cfg,
                        std::span<double> out) {
    require_sizes(grid, out);
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] = potential_at(grid[k], sources, cfg);
}

void series_field(std::span<const double> grid, std::span<const double> sources, FourierTruncation trunc,
                  const DomainConfig& cfg, std::span<double> out) {
    require_sizes(grid, out);
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] = ewald1d::series_field(grid[k], sources, trunc, cfg);
}

void series_potential(std::span<const double> grid, std::span<const double> sources, FourierTruncation trunc,
                      const DomainConfig& cfg, std::span<double> out) {
    require_sizes(grid, out);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out[k] = ewald1d::series_potential(grid[k], sources, trunc, cfg);
    }
}

std::vector<FieldSample> field_table(std::span<const double> grid, std::span<const double> sources,
                                     FourierTruncation trunc, const DomainConfig& cfg) {
    std::vector<FieldSample> rows(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) rows[k] = sample_at(grid[k], sources, trunc, cfg);
    return rows;
}

double pair_potential_energy(std::span<const double> positions, const DomainConfig& cfg) {
    std::vector<double> rows(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) rows[i] = pair_row(i, positions, cfg);
    return sum_rows(rows);
}

} // namespace serial

namespace omp {

void pairwise_field(std::span<const double> grid, std::span<const double> sources, const DomainConfig& cfg,
                    std::span<double> out) {
    require_sizes(grid, out);
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = field_at(grid[k], sources, cfg);
}

void pairwise_potential(std::span<const double> grid, std::span<const double> sources, const DomainConfig& cfg,
                        std::span<double> out) {
    require_sizes(grid, out);
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = potential_at(grid[k], sources, cfg);
}

void series_field(std::span<const double> grid, std::span<const double> sources, FourierTruncation trunc,
                  const DomainConfig& cfg, std::span<double> out) {
    require_sizes(grid, out);
    if (trunc.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = ewald1d::series_field(grid[k], sources, trunc, cfg);
}

void series_potential(std::span<const double> grid, std::span<const double> sources, FourierTruncation trunc,
                      const DomainConfig& cfg, std::span<double> out) {
    require_sizes(grid, out);
    if (trunc.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = ewald1d::series_potential(grid[k], sources, trunc, cfg);
}

std::vector<FieldSample> field_table(std::span<const double> grid, std::span<const double> sources,
                                     FourierTruncation trunc, const DomainConfig& cfg) {
    if (trunc.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    std::vector<FieldSample> rows(grid.size());
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t k = 0; k < n; ++k) rows[k] = sample_at(grid[k], sources, trunc, cfg);
    return rows;
}

double pair_potential_energy(std::span<const double> positions, const DomainConfig& cfg) {
    std::vector<double> rows(positions.size());
    const auto n = static_cast<std::ptrdiff_t>(positions.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = pair_row(static_cast<std::size_t>(i), positions, cfg);
    return sum_rows(rows);
}

} // namespace omp

} // namespace kernels

} // namespace ewald1d

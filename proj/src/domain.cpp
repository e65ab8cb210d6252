#include "ewald1d/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ewald1d/summation.hpp"

namespace ewald1d {

namespace {

double heaviside(double s) {
    if (s > 0.0) return 1.0;
    if (s < 0.0) return 0.0;
    return 0.5;
}

double mean(std::span<const double> values) {
    if (values.empty()) return 0.0;
    CompensatedSum<> sum;
    for (double value : values) sum += value;
    return sum.value() / static_cast<double>(values.size());
}

} // namespace

void DomainConfig::validate() const {
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw std::invalid_argument("half_length must be positive and finite");
    }
    if (n_pairs < 1) throw std::invalid_argument("n_pairs must be >= 1");
    if (!(coupling > 0.0) || !std::isfinite(coupling)) {
        throw std::invalid_argument("coupling must be positive and finite");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be non-negative and finite");
    }
    if (!gravitational) throw std::invalid_argument("only the gravitational interaction is supported");
}

DomainConfig DomainConfig::scaled(int n_pairs, double gamma) {
    DomainConfig cfg;
    cfg.n_pairs = n_pairs;
    cfg.half_length = static_cast<double>(n_pairs);
    cfg.coupling = 1.0;
    cfg.gamma = gamma;
    return cfg;
}

double wrap_displacement(double dx, double half_length) {
    const double period = 2.0 * half_length;
    double r = dx - period * std::floor((dx + half_length) / period);
    // floor() can land one period off when dx + L rounds onto a multiple of 2L.
    if (r >= half_length) r -= period;
    if (r < -half_length) r += period;
    return r;
}

TorusCoordinate wrap_to_cell(double x, const DomainConfig& cfg) {
    return TorusCoordinate{wrap_displacement(x, cfg.half_length)};
}

double SystemState::com_position() const { return mean(x); }
double SystemState::com_velocity() const { return mean(v); }

void SystemState::validate(const DomainConfig& cfg) const {
    if (x.size() != v.size() || x.size() != labels.size()) {
        throw std::invalid_argument("state arrays have mismatched sizes");
    }
    if (x.empty()) throw std::invalid_argument("state has no particles");
    for (std::size_t r = 0; r + 1 < x.size(); ++r) {
        if (!(x[r] <= x[r + 1])) {
            throw std::invalid_argument("positions are not in rank order at slot " + std::to_string(r));
        }
    }
    if (x.back() - x.front() > cfg.period()) {
        throw std::invalid_argument("positions span more than one period");
    }
    for (std::size_t r = 0; r < x.size(); ++r) {
        if (!std::isfinite(x[r]) || !std::isfinite(v[r])) {
            throw std::invalid_argument("non-finite position or velocity at slot " + std::to_string(r));
        }
    }
}

SystemState make_state(std::span<const double> x, std::span<const double> v, double time) {
    if (x.size() != v.size()) throw std::invalid_argument("position and velocity counts differ");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    SystemState state;
    state.time = time;
    state.x.reserve(x.size());
    state.v.reserve(x.size());
    state.labels.reserve(x.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        state.x.push_back(x[order[r]]);
        state.v.push_back(v[order[r]]);
        state.labels.push_back(static_cast<std::int32_t>(r));
    }
    return state;
}

double single_particle_potential(double x, double x1, const DomainConfig& cfg) {
    const double L = cfg.half_length;
    const double d = wrap_displacement(x - x1, L);
    return 0.5 * cfg.coupling * (std::abs(d) - d * d / (2.0 * L));
}

double single_particle_field(double x, double x1, const DomainConfig& cfg) {
    const double L = cfg.half_length;
    const double d = wrap_displacement(x - x1, L);
    return 0.5 * cfg.coupling * (d / L + heaviside(-d) - heaviside(d));
}

double primitive_cell_field(double x, double x1, const DomainConfig& cfg) {
    return 0.5 * cfg.coupling * (x / cfg.half_length + heaviside(x1 - x) - heaviside(x - x1));
}

double total_field(double x, std::span<const double> positions, const DomainConfig& cfg) {
    if (positions.empty()) return 0.0;
    const double n = static_cast<double>(positions.size());
    const double xc = mean(positions);
    double balance = 0.0; // N_R - N_L with coincident sheets counted as zero
    for (double xj : positions) {
        if (xj > x) {
            balance += 1.0;
        } else if (xj < x) {
            balance -= 1.0;
        }
    }
    return cfg.coupling * (n / (2.0 * cfg.half_length) * (x - xc) + 0.5 * balance);
}

std::vector<double> fields_on_particles(const SystemState& state, const DomainConfig& cfg) {
    const std::size_t n = state.size();
    std::vector<double> field(n);
    if (n == 0) return field;
    const double xc = state.com_position();
    const double a = cfg.coupling * static_cast<double>(n) / (2.0 * cfg.half_length);
    // Runs of coincident sheets share the average rank term.
    std::size_t r = 0;
    while (r < n) {
        std::size_t end = r + 1;
        while (end < n && state.x[end] == state.x[r]) ++end;
        const double left = static_cast<double>(r);
        const double right = static_cast<double>(n - end);
        for (std::size_t k = r; k < end; ++k) {
            field[k] = a * (state.x[k] - xc) + 0.5 * cfg.coupling * (right - left);
        }
        r = end;
    }
    return field;
}

double pair_potential_energy(std::span<const double> positions, const DomainConfig& cfg) {
    const std::size_t n = positions.size();
    if (n < 2) return 0.0;
    std::vector<double> y(positions.begin(), positions.end());
    std::sort(y.begin(), y.end());
    const double c = mean(y);
    CompensatedSum<> abs_sum;
    CompensatedSum<> sq_sum;
    CompensatedSum<> lin_sum;
    for (std::size_t j = 0; j < n; ++j) {
        const double yj = y[j] - c;
        abs_sum += yj * (2.0 * static_cast<double>(j) - static_cast<double>(n) + 1.0);
        sq_sum += yj * yj;
        lin_sum += yj;
    }
    const double s = lin_sum.value();
    const double pair_sq = static_cast<double>(n) * sq_sum.value() - s * s;
    return 0.5 * cfg.coupling * (abs_sum.value() - pair_sq / (2.0 * cfg.half_length));
}

double total_energy(const SystemState& state, const DomainConfig& cfg) {
    CompensatedSum<> kinetic;
    for (double v : state.v) kinetic += 0.5 * v * v;
    return kinetic.value() + pair_potential_energy(state.x, cfg);
}

} // namespace ewald1d

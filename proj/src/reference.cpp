#include "ewald1d/reference.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ewald1d::reference {

std::vector<double> cell_fields(std::span<const double> x, const DomainConfig& cfg) {
    const std::size_t n = x.size();
    std::vector<double> cell(n);
    double xc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cell[i] = wrap_to_cell(x[i], cfg).x;
        xc += cell[i];
    }
    xc /= static_cast<double>(n);
    const double a = cfg.coupling * static_cast<double>(n) / (2.0 * cfg.half_length);
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) {
        int right = 0;
        int left = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (cell[j] > cell[i]) ++right;
            if (cell[j] < cell[i]) ++left;
        }
        e[i] = a * (cell[i] - xc) + 0.5 * cfg.coupling * (right - left);
    }
    return e;
}

Rk4Integrator::Rk4Integrator(ParticleSet initial, const DomainConfig& cfg, double dt)
    : set_(std::move(initial)), cfg_(cfg), dt_(dt) {
    if (!(dt_ > 0.0)) throw std::invalid_argument("dt must be positive");
    if (set_.x.size() != set_.v.size()) throw std::invalid_argument("size mismatch");
}

void Rk4Integrator::step(double h) {
    const std::size_t n = set_.x.size();
    const double g = cfg_.gamma;
    auto accel = [&](std::span<const double> x, std::span<const double> v) {
        std::vector<double> a = cell_fields(x, cfg_);
        for (std::size_t i = 0; i < n; ++i) a[i] -= g * v[i];
        return a;
    };

    const std::vector<double>& x0 = set_.x;
    const std::vector<double>& v0 = set_.v;
    std::vector<double> k1x = v0;
    std::vector<double> k1v = accel(x0, v0);

    std::vector<double> x1(n), v1(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = x0[i] + 0.5 * h * k1x[i];
        v1[i] = v0[i] + 0.5 * h * k1v[i];
    }
    std::vector<double> k2x = v1;
    std::vector<double> k2v = accel(x1, v1);

    std::vector<double> x2(n), v2(n);
    for (std::size_t i = 0; i < n; ++i) {
        x2[i] = x0[i] + 0.5 * h * k2x[i];
        v2[i] = v0[i] + 0.5 * h * k2v[i];
    }
    std::vector<double> k3x = v2;
    std::vector<double> k3v = accel(x2, v2);

    std::vector<double> x3(n), v3(n);
    for (std::size_t i = 0; i < n; ++i) {
        x3[i] = x0[i] + h * k3x[i];
        v3[i] = v0[i] + h * k3v[i];
    }
    std::vector<double> k4x = v3;
    std::vector<double> k4v = accel(x3, v3);

    for (std::size_t i = 0; i < n; ++i) {
        set_.x[i] = wrap_to_cell(x0[i] + h / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]), cfg_).x;
        set_.v[i] = v0[i] + h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
    }
    set_.time += h;
}

void Rk4Integrator::advance_to(double t_target) {
    // Step count fixed from the span so the final step lands on t_target.
    const double span = t_target - set_.time;
    if (span < 0.0) throw std::invalid_argument("cannot integrate backwards");
    const auto steps = static_cast<long>(std::llround(std::ceil(span / dt_ - 1e-9)));
    if (steps == 0) return;
    const double h = span / static_cast<double>(steps);
    const double t0 = set_.time;
    for (long s = 0; s < steps; ++s) step(h);
    set_.time = t0 + span;
}

int brute_force_cluster_count(std::span<const double> x, double threshold, const DomainConfig& cfg) {
    const std::size_t n = x.size();
    if (n == 0) return 0;
    // Union-find over pairs closer than threshold on the circle.  Two such
    // points have every point of the short arc between them within threshold
    // too, so components coincide with runs of short cyclic gaps.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::abs(wrap_displacement(x[i] - x[j], cfg.half_length));
            if (d < threshold) parent[find(i)] = find(j);
        }
    }
    int components = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (find(i) == i) ++components;
    }
    return components;
}

double pairwise_energy(std::span<const double> x, std::span<const double> v, const DomainConfig& cfg) {
    double kinetic = 0.0;
    for (double vi : v) kinetic += 0.5 * vi * vi;
    double potential = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) potential += single_particle_potential(x[i], x[j], cfg);
    }
    return kinetic + potential;
}

} // namespace ewald1d::reference

#ifndef EWALD1D_REFERENCE_HPP
#define EWALD1D_REFERENCE_HPP

// Slow, direct implementations used as oracles for the event engine and the
// diagnostics.  Nothing here shares code paths with engine.cpp.

#include <cstdint>
#include <span>
#include <vector>

#include "ewald1d/domain.hpp"

namespace ewald1d::reference {

// Particles carried by identity (no rank bookkeeping); positions are wrapped
// into the cell after every step.
struct ParticleSet {
    double time = 0.0;
    std::vector<double> x;
    std::vector<double> v;
};

// Field on particle i from the closed form with cell coordinates: wrap every
// position, take the cell centre of mass and count sheets on each side.
std::vector<double> cell_fields(std::span<const double> x, const DomainConfig& cfg);

// Fixed-step classical RK4 for dx/dt = v, dv/dt = E(x) - gamma v.
class Rk4Integrator {
public:
    Rk4Integrator(ParticleSet initial, const DomainConfig& cfg, double dt);

    void advance_to(double t_target);
    const ParticleSet& particles() const { return set_; }

private:
    void step(double h);

    ParticleSet set_;
    DomainConfig cfg_;
    double dt_;
};

// Cyclic clusters by repeated merging of pairs closer than `threshold` on the
// circle.  O(n^2).
int brute_force_cluster_count(std::span<const double> x, double threshold, const DomainConfig& cfg);

// sum_{i<j} phi_1(x_i - x_j) by direct double loop.
double pairwise_energy(std::span<const double> x, std::span<const double> v, const DomainConfig& cfg);

} // namespace ewald1d::reference

#endif // EWALD1D_REFERENCE_HPP

#ifndef EWALD1D_DOMAIN_HPP
#define EWALD1D_DOMAIN_HPP

// Periodic sheet gravity on the 1-torus [-L, L).
//
// Units: the coupling g stands for 4*pi*m*G, so equal masses are folded into
// it and m never appears on its own. With L = N and g = 1 the mean gap is 1 and
// the gap stiffness A = g*N/L is 1 (time in units of the inverse Jeans
// frequency).

#include <cstdint>
#include <span>
#include <vector>

namespace ewald1d {

struct DomainConfig {
    double half_length = 1.0;  // L; the period is 2L
    int n_pairs = 1;           // N; the particle count is 2N
    double coupling = 1.0;     // g = 4 pi m G
    double gamma = 0.0;        // friction
    bool gravitational = true; // reserved; other interactions are not supported

    int particle_count() const { return 2 * n_pairs; }
    double period() const { return 2.0 * half_length; }
    // A = g N / L, the coefficient of z in the gap equation.
    double stiffness() const { return coupling * n_pairs / half_length; }
    // z* = L / N, where the gap equation has its fixed point.
    double equilibrium_gap() const { return half_length / n_pairs; }

    // Throws std::invalid_argument on any violated invariant.
    void validate() const;

    // L = N, g = 1 (so A = 1).
    static DomainConfig scaled(int n_pairs, double gamma = 0.0);
};

// A point of the primitive cell, always in [-L, L).
struct TorusCoordinate {
    double x = 0.0;
    friend bool operator==(const TorusCoordinate&, const TorusCoordinate&) = default;
};

TorusCoordinate wrap_to_cell(double x, const DomainConfig& cfg);

// Same as wrap_to_cell(x).x for a displacement.
double wrap_displacement(double dx, double half_length);

// Positions live on the covering line, sorted, with x.back() - x.front() <= 2L.
// Slot r holds the r-th particle in rank order; labels follow physical
// particles through crossings.
struct SystemState {
    double time = 0.0;
    std::vector<double> x;
    std::vector<double> v;
    std::vector<std::int32_t> labels;

    std::size_t size() const { return x.size(); }
    double com_position() const;
    double com_velocity() const;

    // Ordering and span checks; throws std::invalid_argument.
    void validate(const DomainConfig& cfg) const;
};

// Builds a state from unsorted cell positions: sorts by position, assigns
// labels 0..n-1 in the sorted order.
SystemState make_state(std::span<const double> x, std::span<const double> v, double time = 0.0);

// phi_1: potential of one sheet at x1 together with its neutralising
// background, zero at the source.  (g/2) * (|d| - d^2 / 2L), d wrapped.
double single_particle_potential(double x, double x1, const DomainConfig& cfg);

// E_1 = -d(phi_1)/dx with Theta(0) = 1/2.  Vanishes at the source and at the
// antipode.
double single_particle_field(double x, double x1, const DomainConfig& cfg);

// Field of one sheet plus the background of the primitive cell only, ignoring
// the replicas.  This is NOT a field on the torus: it is not translation
// invariant and a sheet feels its own field.  Kept as a negative control.
double primitive_cell_field(double x, double x1, const DomainConfig& cfg);

// Total field from a set of sheets, in closed form:
//   E(x) = g [ (n / 2L) (x - x_c) + (N_R(x) - N_L(x)) / 2 ]
// where n = positions.size(), x_c is the mean of the given coordinates and
// coincident sheets count half on each side.  The coordinates are used as
// given (no wrapping).  The result equals the periodic pairwise sum whenever
// every |x - x_j| < 2L, e.g. for cell coordinates or a cover window of length
// at most 2L containing x.
double total_field(double x, std::span<const double> positions, const DomainConfig& cfg);

// Field on every particle of a cover-window state, O(n) using ranks.
std::vector<double> fields_on_particles(const SystemState& state, const DomainConfig& cfg);

// Pair potential energy sum_{i<j} phi_1(x_i - x_j) for positions inside one
// window of length <= 2L.  O(n log n).
double pair_potential_energy(std::span<const double> positions, const DomainConfig& cfg);

// Kinetic plus pair potential energy (per unit mass).
double total_energy(const SystemState& state, const DomainConfig& cfg);

} // namespace ewald1d

#endif // EWALD1D_DOMAIN_HPP

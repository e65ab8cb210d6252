#ifndef EWALD1D_PROPAGATOR_HPP
#define EWALD1D_PROPAGATOR_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "ewald1d/domain.hpp"

namespace ewald1d {

// Characteristic data shared by every gap: the roots of
// lambda^2 + gamma lambda - A = 0 and the fixed point z* = L / N.
struct GapDynamics {
    double lambda_plus = 0.0;  // > 0
    double lambda_minus = 0.0; // < 0
    double z_star = 0.0;

    explicit GapDynamics(const DomainConfig& cfg);
    GapDynamics() = default;
};

// Closed-form solution of the gap equation dw/dt + gamma w = g ((N/L) z - 1)
// between crossings:
//   z(t) = z* + alpha exp(lambda+ (t - t_ref)) + beta exp(lambda- (t - t_ref)).
struct GapPropagator {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double z_star = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double t_ref = 0.0;

    double gap(double t) const;
    double rate(double t) const;
    double acceleration(double t) const;
};

// Matches z(t_ref) = z0, dz/dt(t_ref) = w0.  Throws std::invalid_argument when
// the stiffness A is not positive.
GapPropagator build_propagator(double z0, double w0, double t_ref, const GapDynamics& dyn);
GapPropagator build_propagator(double z0, double w0, double t_ref, const DomainConfig& cfg);

// Earliest time t >= t_now at which the gap closes, located to within `tol`.
//
// A gap that is already at (or numerically just below) zero counts as a
// crossing at t_now only while it is still closing (dz/dt < 0); an opening
// gap at zero is a crossing that has just been processed.  The returned time
// is on the far side of the root: z(t) <= 0 up to rounding.  Returns nullopt
// when z never returns to zero.
std::optional<double> next_crossing_time(const GapPropagator& p, double t_now, double tol);

// Thrown when a root cannot be bracketed; carries the offending propagator.
class CrossingSolverError : public std::runtime_error {
public:
    CrossingSolverError(const std::string& what, const GapPropagator& p) : std::runtime_error(what), propagator(p) {}
    GapPropagator propagator;
};

} // namespace ewald1d

#endif // EWALD1D_PROPAGATOR_HPP

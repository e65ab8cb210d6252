#ifndef EWALD1D_VALIDATION_HPP
#define EWALD1D_VALIDATION_HPP

// Measurements that compare independent routes to the same quantity, and the
// fast/full check suites built from them.  Reports serialise to JSON.

#include <cstdint>
#include <string>
#include <vector>

#include "ewald1d/domain.hpp"

namespace ewald1d {

// ---- measurements --------------------------------------------------------

struct SeriesFieldError {
    double max_field_error = 0.0;     // |series_field - closed field|, excluded points skipped
    double max_potential_error = 0.0; // |series_potential - (phi_1 - gL/6)|, all points
    double max_envelope_ratio = 0.0;  // field error / g / (pi (n_max+1) |sin(pi d / 2L)|)
    int points_used = 0;
};

// One source at `source`, grid of `points` cell points -L + k 2L/points.
// Field errors skip points within `exclusion` of the source (on the circle).
SeriesFieldError measure_series_field_error(double source, int points, int n_max, double exclusion,
                                            const DomainConfig& cfg);

struct TorusConsistency {
    double max_field_change = 0.0; // over all trials, rewrites and particles
    double min_control_jump = 0.0; // smallest E_1p jump seen by any trial
    int trials = 0;
};

// Random cell states with 2 <= 2N <= max_particles.  Every trial rewrites the
// rightmost particle by -2L, the leftmost by +2L, and then walks the window
// by moving particles one at a time by +2L; after each rewrite the closed
// total field at every particle is compared with the original.  The
// primitive-cell field, summed over the same coordinates, must jump.
TorusConsistency measure_torus_consistency(int trials, int max_particles, std::uint64_t seed);

struct OracleComparison {
    double max_position_error = 0.0; // on the circle, matched by label
    double max_velocity_error = 0.0;
    std::uint64_t crossings = 0;
};

OracleComparison compare_with_rk4(const SystemState& initial, const DomainConfig& cfg, double t_end, double dt,
                                  double root_tolerance = 1e-12);

struct ConservationAudit {
    double max_energy_drift = 0.0; // relative to |E(0)|
    double max_sum_z = 0.0;        // |sum z - 2L|
    double max_sum_w = 0.0;        // |sum w|
    double velocity_scale = 0.0;   // v0 of the initial state
    std::uint64_t events = 0;
    double final_time = 0.0;
};

// Runs until `events` crossings have happened, checking after every one.
ConservationAudit audit_conservation(const SystemState& initial, const DomainConfig& cfg, std::uint64_t events,
                                     double velocity_scale, double root_tolerance = 1e-12);

struct ComLawAudit {
    double max_relative_error = 0.0; // |mean v - v_c(0) e^{-gamma t}| / |v_c(0) e^{-gamma t}|
    std::uint64_t events = 0;
};

// Mean of the rebuilt particle velocities at every event time vs the law.
ComLawAudit audit_com_velocity(const SystemState& initial, const DomainConfig& cfg, double t_end,
                               double root_tolerance = 1e-12);

// ---- reports -------------------------------------------------------------

enum class Tier { fast, full };

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;

    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct ValidationReport {
    std::string tier;
    std::vector<CheckResult> checks;

    bool passed() const;
    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport run_validation(Tier tier);

std::string report_to_json(const ValidationReport& r);
// Throws std::invalid_argument on schema mismatch.
ValidationReport report_from_json(const std::string& text);

} // namespace ewald1d

#endif // EWALD1D_VALIDATION_HPP

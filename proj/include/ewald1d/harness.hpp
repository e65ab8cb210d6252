#ifndef EWALD1D_HARNESS_HPP
#define EWALD1D_HARNESS_HPP

// Initial conditions, periodic vs mirror-symmetric runs, and the diagnostics
// taken from them (density histograms, centre-of-mass trace, cluster counts).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ewald1d/domain.hpp"
#include "ewald1d/engine.hpp"

namespace ewald1d {

enum class Placement { lattice, uniform };
enum class BoundaryMode { periodic, symmetric };

const char* to_string(Placement p);
const char* to_string(BoundaryMode m);
// Throw std::invalid_argument on unknown names.
Placement parse_placement(const std::string& s);
BoundaryMode parse_boundary_mode(const std::string& s);

struct WaterbagSpec {
    int count = 2; // 2N
    double v0 = 0.5;
    Placement placement = Placement::lattice;
    std::uint64_t seed = 1;
    bool zero_mean_velocity = true;

    friend bool operator==(const WaterbagSpec&, const WaterbagSpec&) = default;
};

// mt19937_64 output mapped to [0, 1) by its top 53 bits.
double unit_uniform(std::uint64_t raw);

// Lattice: x_r = -L + (r + 1/2) 2L/2N.  Uniform: x = -L + 2L u.
// Velocities are uniform in [-v0, v0].  In symmetric mode only N draws are
// made, for x > 0, and each is mirrored to (-x, -v).  Mean subtraction is
// followed by a rescale if it pushed any |v| above v0.
SystemState make_waterbag(const WaterbagSpec& spec, const DomainConfig& cfg, BoundaryMode mode);

struct ExperimentOptions {
    int histogram_bins = 0;         // 0 -> max(1, 2N / 8)
    double cluster_threshold = 0.0; // 0 -> L / (4N)
    double root_tolerance = 1e-12;
    bool keep_particles = true;     // copy (x, v, label) into each frame
};

struct DiagnosticsFrame {
    double time = 0.0;
    std::uint64_t event_count = 0;
    std::vector<int> histogram;        // counts over [-L, L)
    std::vector<double> x;             // wrapped, rank order of the cover window
    std::vector<double> v;
    std::vector<std::int32_t> labels;
    double xc_wrapped = 0.0;
    double xc_cover = 0.0;
    double vc = 0.0;
    std::optional<double> energy;      // gamma = 0 only
    int clusters = 0;
};

// Raised by run_experiment; the message carries time and event count.
class ExperimentError : public std::runtime_error {
public:
    ExperimentError(const std::string& what, double time, std::uint64_t events)
        : std::runtime_error(what), time(time), event_count(events) {}
    double time;
    std::uint64_t event_count;
};

DiagnosticsFrame make_frame(const Engine& engine, const ExperimentOptions& options);

using FrameSink = std::function<void(const DiagnosticsFrame&)>;

// Frames at every schedule time (must be nondecreasing and >= 0).  The sink,
// if given, sees each frame as soon as it is taken.
std::vector<DiagnosticsFrame> run_experiment(BoundaryMode mode, const WaterbagSpec& spec, const DomainConfig& cfg,
                                             std::span<const double> schedule, const ExperimentOptions& options = {},
                                             const FrameSink& sink = {});

// Same, from a given initial state.
std::vector<DiagnosticsFrame> run_from_state(const SystemState& initial, BoundaryMode mode, const DomainConfig& cfg,
                                             std::span<const double> schedule, const ExperimentOptions& options = {},
                                             const FrameSink& sink = {});

std::vector<int> density_histogram(std::span<const double> x, int bins, const DomainConfig& cfg);
double variance(std::span<const int> counts);
// Pearson correlation; 0 when either input is constant.
double pearson(std::span<const int> a, std::span<const int> b);

// Maximal cyclic runs of neighbours closer than threshold on the circle.
// Equals the number of cyclic gaps >= threshold, or 1 if there are none.
int cluster_proxy(std::span<const double> x, double threshold, const DomainConfig& cfg);

struct ComJump {
    std::size_t frame = 0; // jump between frame-1 and frame
    double time = 0.0;
    double magnitude = 0.0; // change of wrapped x_c not explained by the cover x_c
};

struct ComTrace {
    std::vector<double> time;
    std::vector<double> wrapped;
    std::vector<double> cover;
    std::vector<ComJump> jumps;
};

// Jumps are flagged where |delta wrapped - delta cover| > L / (2N), half of
// the step L / N left by one boundary traversal.
ComTrace center_of_mass_trace(std::span<const DiagnosticsFrame> frames, const DomainConfig& cfg);

} // namespace ewald1d

#endif // EWALD1D_HARNESS_HPP

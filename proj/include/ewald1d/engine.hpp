#ifndef EWALD1D_ENGINE_HPP
#define EWALD1D_ENGINE_HPP

// Exact event-driven evolution of 2N equal sheets on the torus.
//
// The engine tracks rank slots.  Between crossings every cyclic gap
// z_j = x_{j+1} - x_j (z_{2N} = 2L + x_1 - x_{2N}) follows its own closed
// form, and the centre of mass follows dv_c/dt = -gamma v_c.  When a gap
// closes the two particles exchange slots: w_j flips sign and its neighbours
// pick up w_j.  Particle positions and velocities are rebuilt from the gaps
// and the centre of mass on demand.
//
// The sums of z and w are not protected by the gap equations: their common
// mode grows like exp(lambda+ t), so rounding injected at each crossing would
// be amplified.  Once per 1/lambda+ of elapsed time the gaps are shifted
// uniformly back onto sum z = 2L, sum w = 0 and every gap is rebuilt.
//
// Positions stay on the covering line; wrapping into [-L, L) is left to
// output code.  The closed-form field is unchanged when any particle is moved
// by a period (its rank and the centre of mass shift together), so the
// dynamics never needs to know about the cell boundary.

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "ewald1d/domain.hpp"
#include "ewald1d/propagator.hpp"

namespace ewald1d {

// Cyclic gaps and their rates; z has 2N entries summing to 2L, w sums to 0.
struct GapView {
    std::vector<double> z;
    std::vector<double> w;

    std::size_t size() const { return z.size(); }
};

GapView gaps_from_state(const SystemState& state, const DomainConfig& cfg);

// Inversion: slot values from successive differences and their mean.
//   v_1 = v_c - (1/2N) sum_{k=1}^{2N-1} (2N - k) w_k,  v_{r+1} = v_r + w_r.
// Throws std::invalid_argument if |sum w| > closure_tolerance.
std::vector<double> velocities_from_gaps(std::span<const double> w, double v_c, double closure_tolerance);

// Same inversion for positions; the closing gap z_{2N} is not used.
std::vector<double> positions_from_gaps(std::span<const double> z, double x_c);

// Label exchange at a closing gap j (0-based, cyclic).  Positions are
// permuted rather than moved, so the same rule applies to z and w:
//   q_{j-1} += q_j,  q_{j+1} += q_j,  q_j = -q_j.
// Throws std::logic_error if |z_j| > gap_tolerance.
void apply_crossing(GapView& gaps, std::vector<std::int32_t>& labels, int j, double gap_tolerance);

struct CenterOfMassTrack {
    double x_c0 = 0.0;
    double v_c0 = 0.0;
    double gamma = 0.0;
    double t0 = 0.0;

    double position(double t) const;
    double velocity(double t) const;
};

struct CrossingEvent {
    double time = 0.0;
    int gap = 0;
    std::uint64_t version = 0;

    // Min-heap order: earliest first, ties by ascending gap index.
    friend bool operator>(const CrossingEvent& a, const CrossingEvent& b) {
        if (a.time != b.time) return a.time > b.time;
        return a.gap > b.gap;
    }
};

struct EventRecord {
    std::uint64_t index = 0; // 1-based count of processed crossings
    double time = 0.0;
    int gap = 0;
    std::int32_t left_label = 0;  // label in slot j after the exchange
    std::int32_t right_label = 0; // label in slot j + 1 after the exchange
};

struct EngineOptions {
    double root_tolerance = 1e-12;
    // Mirror pairing x <-> -x, v <-> -v is restored after every crossing and
    // mirror crossings are processed together.  The initial state must be
    // mirror symmetric.
    bool mirror_symmetric = false;
};

class Engine {
public:
    using Observer = std::function<void(const Engine&, const EventRecord&)>;

    Engine(const SystemState& initial, const DomainConfig& cfg, EngineOptions options = {});

    double time() const { return time_; }
    std::uint64_t event_count() const { return events_; }
    int particle_count() const { return n_; }
    const DomainConfig& config() const { return cfg_; }
    const EngineOptions& options() const { return options_; }
    const CenterOfMassTrack& com_track() const { return com_; }

    // Processes every crossing earlier than t_target in time order, then
    // moves the clock to t_target.  The observer runs after each crossing
    // with the engine clock at the crossing time.
    void advance_to(double t_target, const Observer& observer = {});

    // Handles exactly one crossing if one is due before t_limit; returns it.
    std::optional<EventRecord> step(double t_limit);

    SystemState state() const;
    GapView gaps() const;
    std::pair<double, double> center_of_mass() const;
    const GapPropagator& propagator(int gap) const { return props_[static_cast<std::size_t>(gap)]; }
    const std::vector<std::int32_t>& labels() const { return labels_; }

    // (sum z - 2L, sum w) at the current time.
    std::pair<double, double> constraint_residuals() const;

    int mirror_of(int gap) const { return (2 * n_ - gap - 2) % n_; }

private:
    std::optional<CrossingEvent> pop_next(double t_limit);
    void reschedule(int gap);
    void compact_queue();
    double gap_tolerance(double w) const;
    void project_constraints();

    DomainConfig cfg_;
    GapDynamics dyn_;
    EngineOptions options_;
    int n_ = 0;
    double time_ = 0.0;
    std::uint64_t events_ = 0;
    CenterOfMassTrack com_;
    std::vector<GapPropagator> props_;
    std::vector<std::uint64_t> version_;
    std::vector<double> scheduled_;
    std::vector<std::int32_t> labels_;
    std::priority_queue<CrossingEvent, std::vector<CrossingEvent>, std::greater<>> queue_;
    double last_projection_ = 0.0;

    // Scratch for one batch of crossings.
    GapView scratch_;
    std::vector<int> touched_;
    std::vector<char> is_touched_;
};

} // namespace ewald1d

#endif // EWALD1D_ENGINE_HPP

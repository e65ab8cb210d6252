#include "ewald1d/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ewald1d/summation.hpp"

namespace ewald1d {

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

// x_1 = mean - (1/n) sum_{k<n-1} (n-1-k) d_k, then cumulative sums.
std::vector<double> invert_differences(std::span<const double> d, double mean) {
    const std::size_t n = d.size();
    std::vector<double> out(n);
    if (n == 0) return out;
    CompensatedSum<> weighted;
    for (std::size_t k = 0; k + 1 < n; ++k) weighted += static_cast<double>(n - 1 - k) * d[k];
    out[0] = mean - weighted.value() / static_cast<double>(n);
    for (std::size_t r = 0; r + 1 < n; ++r) out[r + 1] = out[r] + d[r];
    return out;
}

} // namespace

GapView gaps_from_state(const SystemState& state, const DomainConfig& cfg) {
    const std::size_t n = state.size();
    GapView g;
    g.z.resize(n);
    g.w.resize(n);
    for (std::size_t r = 0; r + 1 < n; ++r) {
        g.z[r] = state.x[r + 1] - state.x[r];
        g.w[r] = state.v[r + 1] - state.v[r];
    }
    g.z[n - 1] = cfg.period() + state.x.front() - state.x.back();
    g.w[n - 1] = state.v.front() - state.v.back();
    return g;
}

std::vector<double> velocities_from_gaps(std::span<const double> w, double v_c, double closure_tolerance) {
    CompensatedSum<> total;
    for (double wk : w) total += wk;
    if (std::abs(total.value()) > closure_tolerance) {
        std::ostringstream msg;
        msg << "gap velocities do not close: sum w = " << total.value();
        throw std::invalid_argument(msg.str());
    }
    return invert_differences(w, v_c);
}

std::vector<double> positions_from_gaps(std::span<const double> z, double x_c) {
    return invert_differences(z, x_c);
}

void apply_crossing(GapView& gaps, std::vector<std::int32_t>& labels, int j, double gap_tolerance) {
    const int n = static_cast<int>(gaps.size());
    if (j < 0 || j >= n) throw std::out_of_range("gap index out of range");
    const auto jj = static_cast<std::size_t>(j);
    const auto jm = static_cast<std::size_t>((j + n - 1) % n);
    const auto jp = static_cast<std::size_t>((j + 1) % n);
    const double zj = gaps.z[jj];
    const double wj = gaps.w[jj];
    if (std::abs(zj) > gap_tolerance) {
        std::ostringstream msg;
        msg << "crossing requested on open gap " << j << " (z = " << zj << ")";
        throw std::logic_error(msg.str());
    }
    gaps.z[jm] += zj;
    gaps.z[jp] += zj;
    gaps.z[jj] = -zj;
    gaps.w[jm] += wj;
    gaps.w[jp] += wj;
    gaps.w[jj] = -wj;
    if (gaps.z[jj] < 0.0) {
        // The root was located a hair early; give the remainder back to the
        // left neighbour so the sum is untouched.
        gaps.z[jm] += gaps.z[jj];
        gaps.z[jj] = 0.0;
    }
    gaps.z[jm] = std::max(gaps.z[jm], 0.0);
    gaps.z[jp] = std::max(gaps.z[jp], 0.0);
    std::swap(labels[jj], labels[jp]);
}

double CenterOfMassTrack::position(double t) const {
    const double tau = t - t0;
    if (gamma == 0.0) return x_c0 + v_c0 * tau;
    return x_c0 - v_c0 * std::expm1(-gamma * tau) / gamma;
}

double CenterOfMassTrack::velocity(double t) const {
    return v_c0 * std::exp(-gamma * (t - t0));
}

Engine::Engine(const SystemState& initial, const DomainConfig& cfg, EngineOptions options)
    : cfg_(cfg), options_(options) {
    cfg_.validate();
    initial.validate(cfg_);
    if (static_cast<int>(initial.size()) != cfg_.particle_count()) {
        throw std::invalid_argument("state size does not match 2N");
    }
    if (!(options_.root_tolerance > 0.0)) throw std::invalid_argument("root tolerance must be positive");
    dyn_ = GapDynamics(cfg_);
    n_ = cfg_.particle_count();
    time_ = initial.time;
    labels_ = initial.labels;

    GapView g = gaps_from_state(initial, cfg_);
    com_ = CenterOfMassTrack{initial.com_position(), initial.com_velocity(), cfg_.gamma, initial.time};

    if (options_.mirror_symmetric) {
        const double scale = cfg_.half_length * 1e-9;
        for (std::size_t r = 0; r < initial.size(); ++r) {
            const std::size_t m = initial.size() - 1 - r;
            if (std::abs(initial.x[r] + initial.x[m]) > scale ||
                std::abs(initial.v[r] + initial.v[m]) > 1e-9 * (1.0 + std::abs(initial.v[r]))) {
                throw std::invalid_argument("mirror-symmetric run needs a mirror-symmetric initial state");
            }
        }
        for (int k = 0; k < n_; ++k) {
            const int m = mirror_of(k);
            if (k < m) {
                const auto a = static_cast<std::size_t>(k);
                const auto b = static_cast<std::size_t>(m);
                g.z[a] = g.z[b] = 0.5 * (g.z[a] + g.z[b]);
                g.w[a] = g.w[b] = 0.5 * (g.w[a] + g.w[b]);
            }
        }
        com_.x_c0 = 0.0;
        com_.v_c0 = 0.0;
    }

    props_.resize(static_cast<std::size_t>(n_));
    version_.assign(static_cast<std::size_t>(n_), 0);
    scheduled_.assign(static_cast<std::size_t>(n_), kNever);
    scratch_.z.assign(static_cast<std::size_t>(n_), 0.0);
    scratch_.w.assign(static_cast<std::size_t>(n_), 0.0);
    is_touched_.assign(static_cast<std::size_t>(n_), 0);
    for (int k = 0; k < n_; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        props_[kk] = build_propagator(g.z[kk], g.w[kk], time_, dyn_);
        reschedule(k);
    }
    last_projection_ = time_;
}

void Engine::project_constraints() {
    const GapView g = gaps();
    CompensatedSum<> sz;
    CompensatedSum<> sw;
    for (std::size_t k = 0; k < g.size(); ++k) {
        sz += g.z[k];
        sw += g.w[k];
    }
    const double dz = (sz.value() - cfg_.period()) / n_;
    const double dw = sw.value() / n_;
    for (int k = 0; k < n_; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        props_[kk] = build_propagator(g.z[kk] - dz, g.w[kk] - dw, time_, dyn_);
    }
    for (int k = 0; k < n_; ++k) reschedule(k);
    last_projection_ = time_;
}

double Engine::gap_tolerance(double w) const {
    return 1e-9 * dyn_.z_star + 4.0 * std::abs(w) * options_.root_tolerance;
}

void Engine::reschedule(int gap) {
    const auto g = static_cast<std::size_t>(gap);
    ++version_[g];
    std::optional<double> t;
    try {
        t = next_crossing_time(props_[g], time_, options_.root_tolerance);
    } catch (const CrossingSolverError& e) {
        std::ostringstream msg;
        msg << e.what() << " (gap " << gap << ", t = " << time_ << ", alpha = " << e.propagator.alpha
            << ", beta = " << e.propagator.beta << ", t_ref = " << e.propagator.t_ref << ")";
        throw CrossingSolverError(msg.str(), e.propagator);
    }
    if (t) {
        scheduled_[g] = std::max(*t, time_);
        queue_.push(CrossingEvent{scheduled_[g], gap, version_[g]});
    } else {
        scheduled_[g] = kNever;
    }
    if (queue_.size() > static_cast<std::size_t>(4 * n_ + 64)) compact_queue();
}

void Engine::compact_queue() {
    std::vector<CrossingEvent> live;
    live.reserve(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        if (scheduled_[kk] != kNever) live.push_back(CrossingEvent{scheduled_[kk], k, version_[kk]});
    }
    queue_ = decltype(queue_)(std::greater<>{}, std::move(live));
}

std::optional<CrossingEvent> Engine::pop_next(double t_limit) {
    while (!queue_.empty()) {
        const CrossingEvent top = queue_.top();
        if (top.version != version_[static_cast<std::size_t>(top.gap)]) {
            queue_.pop();
            continue;
        }
        if (!(top.time < t_limit)) return std::nullopt;
        queue_.pop();
        return top;
    }
    return std::nullopt;
}

std::optional<EventRecord> Engine::step(double t_limit) {
    const std::optional<CrossingEvent> ev = pop_next(t_limit);
    if (!ev) return std::nullopt;
    time_ = ev->time;

    touched_.clear();
    auto touch = [&](int g) {
        const auto gg = static_cast<std::size_t>(g);
        if (is_touched_[gg]) return;
        is_touched_[gg] = 1;
        touched_.push_back(g);
        scratch_.z[gg] = props_[gg].gap(time_);
        scratch_.w[gg] = props_[gg].rate(time_);
    };

    int crossings[2] = {ev->gap, ev->gap};
    int count = 1;
    if (options_.mirror_symmetric) {
        const int m = mirror_of(ev->gap);
        if (m != ev->gap) {
            crossings[0] = std::min(ev->gap, m);
            crossings[1] = std::max(ev->gap, m);
            count = 2;
        }
    }
    for (int c = 0; c < count; ++c) {
        const int j = crossings[c];
        touch((j + n_ - 1) % n_);
        touch(j);
        touch((j + 1) % n_);
        apply_crossing(scratch_, labels_, j, gap_tolerance(scratch_.w[static_cast<std::size_t>(j)]));
    }
    if (options_.mirror_symmetric) {
        for (int g : touched_) {
            const int m = mirror_of(g);
            if (g < m) {
                const auto a = static_cast<std::size_t>(g);
                const auto b = static_cast<std::size_t>(m);
                scratch_.z[a] = scratch_.z[b] = 0.5 * (scratch_.z[a] + scratch_.z[b]);
                scratch_.w[a] = scratch_.w[b] = 0.5 * (scratch_.w[a] + scratch_.w[b]);
            }
        }
    }
    // Rebuild in ascending gap order so the queue contents do not depend on
    // the order the batch touched them.
    std::sort(touched_.begin(), touched_.end());
    for (int g : touched_) {
        const auto gg = static_cast<std::size_t>(g);
        props_[gg] = build_propagator(scratch_.z[gg], scratch_.w[gg], time_, dyn_);
        is_touched_[gg] = 0;
    }
    for (int g : touched_) reschedule(g);
    if ((time_ - last_projection_) * dyn_.lambda_plus >= 1.0) project_constraints();

    events_ += static_cast<std::uint64_t>(count);
    const auto left = static_cast<std::size_t>(ev->gap);
    const auto right = static_cast<std::size_t>((ev->gap + 1) % n_);
    return EventRecord{events_, time_, ev->gap, labels_[left], labels_[right]};
}

void Engine::advance_to(double t_target, const Observer& observer) {
    if (t_target < time_) throw std::invalid_argument("cannot advance backwards in time");
    while (const std::optional<EventRecord> rec = step(t_target)) {
        if (observer) observer(*this, *rec);
    }
    time_ = t_target;
}

GapView Engine::gaps() const {
    GapView g;
    g.z.resize(static_cast<std::size_t>(n_));
    g.w.resize(static_cast<std::size_t>(n_));
    for (std::size_t k = 0; k < props_.size(); ++k) {
        g.z[k] = props_[k].gap(time_);
        g.w[k] = props_[k].rate(time_);
    }
    return g;
}

std::pair<double, double> Engine::center_of_mass() const {
    return {com_.position(time_), com_.velocity(time_)};
}

std::pair<double, double> Engine::constraint_residuals() const {
    const GapView g = gaps();
    CompensatedSum<> sz;
    CompensatedSum<> sw;
    for (std::size_t k = 0; k < g.size(); ++k) {
        sz += g.z[k];
        sw += g.w[k];
    }
    return {sz.value() - cfg_.period(), sw.value()};
}

SystemState Engine::state() const {
    const GapView g = gaps();
    double scale = 0.0;
    for (double wk : g.w) scale += std::abs(wk);
    SystemState s;
    s.time = time_;
    s.x = positions_from_gaps(g.z, com_.position(time_));
    s.v = velocities_from_gaps(g.w, com_.velocity(time_), 1e-9 * scale + 1e-300);
    s.labels = labels_;
    return s;
}

} // namespace ewald1d

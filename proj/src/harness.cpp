#include "ewald1d/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ewald1d/summation.hpp"

namespace ewald1d {

const char* to_string(Placement p) {
    return p == Placement::lattice ? "lattice" : "uniform";
}

const char* to_string(BoundaryMode m) {
    return m == BoundaryMode::periodic ? "periodic" : "symmetric";
}

Placement parse_placement(const std::string& s) {
    if (s == "lattice") return Placement::lattice;
    if (s == "uniform") return Placement::uniform;
    throw std::invalid_argument("unknown placement '" + s + "' (expected lattice or uniform)");
}

BoundaryMode parse_boundary_mode(const std::string& s) {
    if (s == "periodic") return BoundaryMode::periodic;
    if (s == "symmetric") return BoundaryMode::symmetric;
    throw std::invalid_argument("unknown mode '" + s + "' (expected periodic or symmetric)");
}

double unit_uniform(std::uint64_t raw) {
    return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

SystemState make_waterbag(const WaterbagSpec& spec, const DomainConfig& cfg, BoundaryMode mode) {
    cfg.validate();
    if (spec.count < 2 || spec.count % 2 != 0) throw std::invalid_argument("waterbag count must be even and >= 2");
    if (spec.count != cfg.particle_count()) throw std::invalid_argument("waterbag count does not match 2N");
    if (!(spec.v0 >= 0.0) || !std::isfinite(spec.v0)) throw std::invalid_argument("v0 must be finite and >= 0");

    const double L = cfg.half_length;
    const auto n = static_cast<std::size_t>(spec.count);
    std::mt19937_64 rng(spec.seed);
    auto draw_velocity = [&] { return spec.v0 * (2.0 * unit_uniform(rng()) - 1.0); };

    std::vector<double> x(n);
    std::vector<double> v(n);
    if (mode == BoundaryMode::symmetric) {
        const std::size_t half = n / 2;
        for (std::size_t r = 0; r < half; ++r) {
            // Positions first, then velocities, so placement does not change
            // the velocity stream.
            x[r] = spec.placement == Placement::lattice ? (static_cast<double>(r) + 0.5) * L / static_cast<double>(half)
                                                        : L * unit_uniform(rng());
        }
        for (std::size_t r = 0; r < half; ++r) v[r] = draw_velocity();
        for (std::size_t r = 0; r < half; ++r) {
            x[half + r] = -x[r];
            v[half + r] = -v[r];
        }
    } else {
        for (std::size_t r = 0; r < n; ++r) {
            x[r] = spec.placement == Placement::lattice
                       ? -L + (static_cast<double>(r) + 0.5) * 2.0 * L / static_cast<double>(n)
                       : -L + 2.0 * L * unit_uniform(rng());
        }
        for (std::size_t r = 0; r < n; ++r) v[r] = draw_velocity();
        if (spec.zero_mean_velocity) {
            CompensatedSum<> s;
            for (double vi : v) s += vi;
            const double mean = s.value() / static_cast<double>(n);
            double peak = 0.0;
            for (double& vi : v) {
                vi -= mean;
                peak = std::max(peak, std::abs(vi));
            }
            if (peak > spec.v0) {
                const double scale = spec.v0 / peak;
                for (double& vi : v) vi *= scale;
            }
        }
    }
    return make_state(x, v, 0.0);
}

std::vector<int> density_histogram(std::span<const double> x, int bins, const DomainConfig& cfg) {
    if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    std::vector<int> h(static_cast<std::size_t>(bins), 0);
    const double L = cfg.half_length;
    for (double xi : x) {
        const double w = wrap_to_cell(xi, cfg).x;
        auto b = static_cast<long>(std::floor((w + L) / (2.0 * L) * bins));
        b = std::clamp(b, 0L, static_cast<long>(bins - 1));
        ++h[static_cast<std::size_t>(b)];
    }
    return h;
}

double variance(std::span<const int> counts) {
    if (counts.empty()) return 0.0;
    double mean = 0.0;
    for (int c : counts) mean += c;
    mean /= static_cast<double>(counts.size());
    double s = 0.0;
    for (int c : counts) s += (c - mean) * (c - mean);
    return s / static_cast<double>(counts.size());
}

double pearson(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw std::invalid_argument("pearson: length mismatch");
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

int cluster_proxy(std::span<const double> x, double threshold, const DomainConfig& cfg) {
    if (!(threshold > 0.0)) throw std::invalid_argument("cluster threshold must be positive");
    if (x.empty()) return 0;
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = wrap_to_cell(x[i], cfg).x;
    std::sort(w.begin(), w.end());
    int wide = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i + 1] - w[i] >= threshold) ++wide;
    }
    if (w.size() > 1 && cfg.period() + w.front() - w.back() >= threshold) ++wide;
    if (w.size() == 1) return 1;
    return std::max(wide, 1);
}

namespace {

int resolved_bins(const ExperimentOptions& o, const DomainConfig& cfg) {
    return o.histogram_bins > 0 ? o.histogram_bins : std::max(1, cfg.particle_count() / 8);
}

double resolved_threshold(const ExperimentOptions& o, const DomainConfig& cfg) {
    return o.cluster_threshold > 0.0 ? o.cluster_threshold : cfg.half_length / (4.0 * cfg.n_pairs);
}

} // namespace

DiagnosticsFrame make_frame(const Engine& engine, const ExperimentOptions& options) {
    const DomainConfig& cfg = engine.config();
    const SystemState s = engine.state();
    DiagnosticsFrame f;
    f.time = engine.time();
    f.event_count = engine.event_count();
    std::vector<double> wrapped(s.size());
    CompensatedSum<> xc;
    for (std::size_t i = 0; i < s.size(); ++i) {
        wrapped[i] = wrap_to_cell(s.x[i], cfg).x;
        xc += wrapped[i];
    }
    f.xc_wrapped = xc.value() / static_cast<double>(s.size());
    const auto [xcc, vc] = engine.center_of_mass();
    f.xc_cover = xcc;
    f.vc = vc;
    f.histogram = density_histogram(wrapped, resolved_bins(options, cfg), cfg);
    f.clusters = cluster_proxy(wrapped, resolved_threshold(options, cfg), cfg);
    if (cfg.gamma == 0.0) f.energy = total_energy(s, cfg);
    if (options.keep_particles) {
        f.x = std::move(wrapped);
        f.v = s.v;
        f.labels = s.labels;
    }
    return f;
}

std::vector<DiagnosticsFrame> run_from_state(const SystemState& initial, BoundaryMode mode, const DomainConfig& cfg,
                                             std::span<const double> schedule, const ExperimentOptions& options,
                                             const FrameSink& sink) {
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] >= initial.time) || (i > 0 && schedule[i] < schedule[i - 1])) {
            throw std::invalid_argument("output schedule must be nondecreasing and start at or after t0");
        }
    }
    std::vector<DiagnosticsFrame> frames;
    if (schedule.empty()) return frames;
    EngineOptions eo;
    eo.root_tolerance = options.root_tolerance;
    eo.mirror_symmetric = mode == BoundaryMode::symmetric;
    Engine engine(initial, cfg, eo);
    frames.reserve(schedule.size());
    for (double t : schedule) {
        try {
            engine.advance_to(t);
            frames.push_back(make_frame(engine, options));
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg.precision(17);
            msg << e.what() << " [t = " << engine.time() << ", events = " << engine.event_count() << "]";
            throw ExperimentError(msg.str(), engine.time(), engine.event_count());
        }
        if (sink) sink(frames.back());
    }
    return frames;
}

std::vector<DiagnosticsFrame> run_experiment(BoundaryMode mode, const WaterbagSpec& spec, const DomainConfig& cfg,
                                             std::span<const double> schedule, const ExperimentOptions& options,
                                             const FrameSink& sink) {
    return run_from_state(make_waterbag(spec, cfg, mode), mode, cfg, schedule, options, sink);
}

ComTrace center_of_mass_trace(std::span<const DiagnosticsFrame> frames, const DomainConfig& cfg) {
    ComTrace tr;
    const double flag = cfg.half_length / (2.0 * cfg.n_pairs);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        tr.time.push_back(frames[i].time);
        tr.wrapped.push_back(frames[i].xc_wrapped);
        tr.cover.push_back(frames[i].xc_cover);
        if (i == 0) continue;
        const double jump = (frames[i].xc_wrapped - frames[i - 1].xc_wrapped) -
                            (frames[i].xc_cover - frames[i - 1].xc_cover);
        if (std::abs(jump) > flag) tr.jumps.push_back(ComJump{i, frames[i].time, jump});
    }
    return tr;
}

} // namespace ewald1d

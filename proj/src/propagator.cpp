#include "ewald1d/propagator.hpp"

#include <cmath>
#include <limits>

namespace ewald1d {

namespace {

constexpr int kMaxSolverIterations = 200;

double mode(double amplitude, double rate, double tau) {
    // 0 * exp(overflow) would be NaN.
    return amplitude == 0.0 ? 0.0 : amplitude * std::exp(rate * tau);
}

struct LocalGap {
    const GapPropagator& p;
    double f(double tau) const {
        return p.z_star + mode(p.alpha, p.lambda_plus, tau) + mode(p.beta, p.lambda_minus, tau);
    }
    double df(double tau) const {
        return mode(p.alpha * p.lambda_plus, p.lambda_plus, tau) + mode(p.beta * p.lambda_minus, p.lambda_minus, tau);
    }
};

// Safeguarded Newton-bisection on [lo, hi] with f(lo) > 0 >= f(hi).  Returns a
// point on the f <= 0 side within tol of the root.
double refine_root(const LocalGap& gap, double lo, double hi, double tol) {
    double x = 0.5 * (lo + hi);
    double dx_old = hi - lo;
    double dx = dx_old;
    for (int it = 0; it < kMaxSolverIterations; ++it) {
        const double fx = gap.f(x);
        if (fx > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        if (fx == 0.0 || hi - lo <= tol) break;

        const double d = gap.df(x);
        const double newton = (d != 0.0) ? x - fx / d : std::numeric_limits<double>::quiet_NaN();
        const bool newton_ok = std::isfinite(newton) && newton > lo && newton < hi && std::abs(2.0 * fx) < std::abs(dx_old * d);
        dx_old = dx;
        if (newton_ok) {
            dx = newton - x;
            x = newton;
        } else {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        }
        if (x <= lo || x >= hi) {
            // Bracket exhausted at double resolution.
            break;
        }
    }
    return hi;
}

} // namespace

GapDynamics::GapDynamics(const DomainConfig& cfg) {
    const double a = cfg.stiffness();
    if (!(a > 0.0)) throw std::invalid_argument("gap stiffness A = gN/L must be positive");
    const double disc = std::sqrt(cfg.gamma * cfg.gamma + 4.0 * a);
    lambda_plus = 0.5 * (disc - cfg.gamma);
    // lambda+ lambda- = -A avoids cancellation when gamma is large.
    lambda_minus = -a / lambda_plus;
    z_star = cfg.equilibrium_gap();
}

double GapPropagator::gap(double t) const {
    return LocalGap{*this}.f(t - t_ref);
}

double GapPropagator::rate(double t) const {
    return LocalGap{*this}.df(t - t_ref);
}

double GapPropagator::acceleration(double t) const {
    const double tau = t - t_ref;
    return mode(alpha * lambda_plus * lambda_plus, lambda_plus, tau) +
           mode(beta * lambda_minus * lambda_minus, lambda_minus, tau);
}

GapPropagator build_propagator(double z0, double w0, double t_ref, const GapDynamics& dyn) {
    if (!(dyn.lambda_plus > 0.0) || !(dyn.lambda_minus < 0.0)) {
        throw std::invalid_argument("gap dynamics need a positive stiffness");
    }
    GapPropagator p;
    p.lambda_plus = dyn.lambda_plus;
    p.lambda_minus = dyn.lambda_minus;
    p.z_star = dyn.z_star;
    p.t_ref = t_ref;
    const double split = dyn.lambda_plus - dyn.lambda_minus;
    const double dz = z0 - dyn.z_star;
    p.alpha = (w0 - dyn.lambda_minus * dz) / split;
    p.beta = (dz * dyn.lambda_plus - w0) / split;
    return p;
}

GapPropagator build_propagator(double z0, double w0, double t_ref, const DomainConfig& cfg) {
    return build_propagator(z0, w0, t_ref, GapDynamics(cfg));
}

std::optional<double> next_crossing_time(const GapPropagator& p, double t_now, double tol) {
    const LocalGap gap{p};
    const double tau0 = t_now - p.t_ref;
    const double f0 = gap.f(tau0);
    const double d0 = gap.df(tau0);

    if (f0 <= 0.0 && d0 < 0.0) return t_now;

    // z has at most one extremum, where exp((l+ - l-) tau) = -beta l- / (alpha l+).
    double tau_ext = std::numeric_limits<double>::quiet_NaN();
    if (p.alpha != 0.0 && p.beta != 0.0) {
        const double arg = -p.beta * p.lambda_minus / (p.alpha * p.lambda_plus);
        if (arg > 0.0) tau_ext = std::log(arg) / (p.lambda_plus - p.lambda_minus);
    }
    const bool extremum_ahead = std::isfinite(tau_ext) && tau_ext > tau0;

    double start = tau0;
    if (extremum_ahead) {
        const double f_ext = gap.f(tau_ext);
        if (f0 <= 0.0) {
            // Opening from contact: a grazing turn-around that never reopens
            // the gap is a crossing now.
            if (f_ext <= 0.0) return t_now;
        } else if (f_ext < 0.0) {
            return p.t_ref + refine_root(gap, tau0, tau_ext, tol);
        }
        start = tau_ext;
    } else if (f0 <= 0.0) {
        // At contact with no turning point ahead: either opening for good, or
        // sitting exactly on a maximum and about to close.
        if (p.alpha >= 0.0) return std::nullopt;
        return t_now;
    }

    // Monotone beyond `start` with f(start) > 0: a root exists only if the
    // growing mode pulls the gap down.
    if (!(p.alpha < 0.0)) return std::nullopt;

    const double b_tail = std::max(0.0, mode(p.beta, p.lambda_minus, start));
    double hi = std::log((p.z_star + b_tail) / -p.alpha) / p.lambda_plus;
    if (!(hi > start)) hi = start;
    double step = 1.0 / p.lambda_plus;
    int expansions = 0;
    while (!(gap.f(hi) <= 0.0)) {
        hi += step;
        step *= 2.0;
        if (++expansions > 200 || !std::isfinite(hi)) {
            throw CrossingSolverError("failed to bracket gap crossing", p);
        }
    }
    return p.t_ref + refine_root(gap, start, hi, tol);
}

} // namespace ewald1d

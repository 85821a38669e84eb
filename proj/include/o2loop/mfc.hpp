#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <span>
#include <string>

#include "o2loop/errors.hpp"
#include "o2loop/params.hpp"

namespace o2loop {

/// Tuning of the ultra-local model dy = F + alpha*u and its iP loop.
struct ControllerConfig {
    double alpha = 0.0;     ///< input gain, output-units s^-1 A^-1; nonzero
    double kp = 0.0;        ///< proportional gain, s^-1; > 0
    double tau = 0.0;       ///< estimation window length, s; >= 2*ts
    double ts = 0.0;        ///< sample period, s
    double u_min = 0.0;     ///< control saturation, A
    double u_max = 0.0;
    double u_warmup = 0.0;  ///< held until the window first spans tau
    bool strict = false;    ///< propagate estimator errors instead of degrading

    void validate() const {
        detail::require(std::isfinite(alpha) && alpha != 0.0, "alpha must be nonzero");
        detail::require(std::isfinite(kp) && kp > 0.0, "kp must be > 0");
        detail::require(std::isfinite(ts) && ts > 0.0, "ts must be > 0");
        detail::require(std::isfinite(tau) && tau >= 2.0 * ts, "tau must be >= 2*ts");
        detail::require(u_min < u_max, "u_min must be < u_max");
        detail::require(std::isfinite(u_warmup), "u_warmup must be finite");
    }

    /// Samples needed to span tau: ceil(tau/ts)+1.
    std::size_t window_capacity() const {
        return static_cast<std::size_t>(std::ceil(tau / ts - 1e-9)) + 1;
    }
};

/// Windowed integral estimate of F over samples spanning [t-tau, t] on a
/// uniform grid of spacing ts:
///
///   F_est = -(6/tau^3) * integral_0^tau [ (tau - 2s)*y + alpha*s*(tau - s)*u ] ds
///
/// by the composite trapezoidal rule. The kernel uses the actual window span
/// N*ts, which keeps constant inputs annihilated exactly in floating point
/// (the linear kernel is integrated exactly and cancels pairwise).
inline double estimate_f(std::span<const double> y, std::span<const double> u,
                         double ts, double alpha, double tau) {
    const std::size_t n_samples = y.size();
    if (n_samples < 3 || u.size() != n_samples)
        throw window_error("estimate_f: need at least 3 aligned (y, u) samples");
    const std::size_t n = n_samples - 1;
    const double span = static_cast<double>(n) * ts;
    if (std::abs(span - tau) > 0.5 * ts)
        throw window_error("estimate_f: window spans " + std::to_string(span) +
                           " s, expected " + std::to_string(tau) + " s");

    double quad = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double sigma = static_cast<double>(i) * ts;
        const double kernel_y = static_cast<double>(static_cast<long long>(n) -
                                                    2esampleLL * 0) * ts;  // placeholder
        (void)kernel_y;
        const double ky = (static_cast<double>(n) - 2.0 * static_cast<double>(i)) * ts;
        const double ku = sigma * (span - sigma);
        const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
        quad += weight * (ky * y[i] + alpha * ku * u[i]);
    }
    quad *= ts;
    return -6.0 / (span * span * span) * quad;
}

/// The iP law u = -(F_est - yref_dot + kp*e)/alpha, saturated to
/// [u_min, u_max]. Returns (applied, raw) so saturation stays observable.
struct ControlAction {
    double u = 0.0;      ///< applied (saturated) control, A
    double u_raw = 0.0;  ///< pre-saturation value, A
};

inline ControlAction ip_control(double f_est, double yref_dot, double e,
                                const ControllerConfig& cfg) {
    ControlAction a;
    a.u_raw = -(f_est - yref_dot + cfg.kp * e) / cfg.alpha;
    a.u = std::clamp(a.u_raw, cfg.u_min, cfg.u_max);
    return a;
}

/// Sliding (y, u) window plus the latest estimate and applied control.
/// One instance per loop; samples are pushed at a fixed period ts.
class ControllerState {
public:
    explicit ControllerState(const ControllerConfig& cfg) : cfg_(cfg) {
        cfg.validate();
    }

    struct Output {
        double u = 0.0;
        double u_raw = 0.0;
        double f_est = 0.0;      ///< 0 during warm-up (no estimate yet)
        bool warmed_up = false;  ///< window spanned tau at this step
    };

    /// One controller tick: records (y, previously applied u), estimates F
    /// once the window spans tau, and applies the iP law. During warm-up the
    /// configured constant u_warmup is held. The recorded u is always the
    /// saturated, actually applied value.
    Output step(double y, double y_ref, double yref_dot) {
        push(y, applied_u_);
        Output out;
        if (window_y_.size() == cfg_.window_capacity()) {
            double f = 0.0;
            try {
                f = estimate_over_window();
            } catch (const window_error&) {
                if (cfg_.strict) throw;
                out.u = out.u_raw = cfg_.u_warmup;
                applied_u_ = out.u;
                return out;
            }
            const ControlAction a =
                ip_control(f, yref_dot, y - y_ref, cfg_);
            out.u = a.u;
            out.u_raw = a.u_raw;
            out.f_est = f;
            out.warmed_up = true;
        } else {
            out.u = out.u_raw = cfg_.u_warmup;
        }
        f_est_ = out.f_est;
        applied_u_ = out.u;
        return out;
    }

    double latest_f_est() const { return f_est_; }
    double latest_u() const { return applied_u_; }
    std::size_t window_size() const { return window_y_.size(); }
    const ControllerConfig& config() const { return cfg_; }

private:
    void push(double y, double u) {
        window_y_.push_back(y);
        window_u_.push_back(u);
        if (window_y_.size() > cfg_.window_capacity()) {
            window_y_.pop_front();
            window_u_.pop_front();
        }
    }

    double estimate_over_window() {
        scratch_y_.assign(window_y_.begin(), window_y_.end());
        scratch_u_.assign(window_u_.begin(), window_u_.end());
        const double span = static_cast<double>(scratch_y_.size() - 1) * cfg_.ts;
        return estimate_f(scratch_y_, scratch_u_, cfg_.ts, cfg_.alpha, span);
    }

    ControllerConfig cfg_;
    std::deque<double> window_y_;
    std::deque<double> window_u_;
    std::vector<double> scratch_y_;
    std::vector<double> scratch_u_;
    double f_est_ = 0.0;
    double applied_u_ = 0.0;
};

}  // namespace o2loop

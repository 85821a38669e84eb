#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "o2loop/errors.hpp"
#include "o2loop/params.hpp"

namespace o2loop {

/// The four air-feed states. The controller never sees this struct; the plant
/// only emulates the process.
struct PlantState {
    double p_o2 = 0.0;  ///< x1, oxygen partial pressure, Pa
    double p_n2 = 0.0;  ///< x2, nitrogen partial pressure, Pa
    double w_cp = 0.0;  ///< x3, compressor angular speed, rad/s
    double p_sm = 0.0;  ///< x4, supply-manifold pressure, Pa

    std::array<double, 4> as_array() const { return {p_o2, p_n2, w_cp, p_sm}; }
    static PlantState from_array(const std::array<double, 4>& a) {
        return {a[0], a[1], a[2], a[3]};
    }

    /// Type-level invariants; checked where states enter the simulation.
    void validate(const DerivedConstants& c) const {
        detail::require(std::isfinite(p_o2) && p_o2 >= 0.0, "plant state: p_o2 must be >= 0");
        detail::require(std::isfinite(p_n2) && p_n2 >= 0.0, "plant state: p_n2 must be >= 0");
        detail::require(std::isfinite(w_cp) && w_cp >= 0.0, "plant state: w_cp must be >= 0");
        detail::require(std::isfinite(p_sm) && p_sm > 0.0, "plant state: p_sm must be > 0");
        detail::require(p_o2 + p_n2 + c.c2 >= c.c11,
                        "plant state: cathode pressure below atmospheric");
    }
};

using StateDerivative = std::array<double, 4>;

/// Relative tolerance (of c11) under which a slightly negative outlet
/// radicand is clamped to zero instead of rejected.
inline constexpr double kRadicandTolerance = 1e-6;

#ifdef O2LOOP_PLANT_COUNT_SQRT
namespace testing {
inline std::uint64_t sqrt_eval_count = 0;
}
#endif

/// Right-hand side of the 4-state air-feed model. `u` is the motor current
/// (A), `xi` the stack current (A, measured disturbance). The shared outlet
/// square root is evaluated once per call. Throws domain_error when the
/// radicand is more than kRadicandTolerance*c11 below zero or p_sm <= 0,
/// signalling integrator step rejection.
inline StateDerivative plant_dynamics(const PlantState& x, double u, double xi,
                                      const DerivedConstants& c) {
    const double x1 = x.p_o2, x2 = x.p_n2, x3 = x.w_cp, x4 = x.p_sm;
    if (!(x4 > 0.0))
        throw domain_error("plant_dynamics: supply-manifold pressure <= 0");

    const double radicand = x1 + x2 + c.c2 - c.c11;
    if (radicand < -kRadicandTolerance * c.c11)
        throw domain_error("plant_dynamics: cathode pressure below atmospheric (radicand " +
                           std::to_string(radicand) + " Pa)");
#ifdef O2LOOP_PLANT_COUNT_SQRT
    ++testing::sqrt_eval_count;
#endif
    const double outlet_root = std::sqrt(radicand > 0.0 ? radicand : 0.0);

    const double inflow_dp = x4 - x1 - x2 - c.c2;
    const double mix = c.c4 * x1 + c.c5 * x2 + c.c6;
    const double outlet = c.c3 / mix * c.c17 * outlet_root;
    const double pressure_ratio_term = std::pow(x4 / c.c11, c.c12) - 1.0;

    return {
        c.c1 * inflow_dp - c.c7 * xi - outlet * x1,
        c.c8 * inflow_dp - outlet * x2,
        -c.c9 * x3 - c.c10 * pressure_ratio_term + c.c13 * u,
        c.c14 * (1.0 + c.c15 * pressure_ratio_term) * (c.c21 * x3 - c.c16 * inflow_dp),
    };
}

/// The no-flow fixed point: x4 = x1 + x2 + c2 = c11, x3 = 0. `o2_share` sets
/// how the dry pressure c11 - c2 splits between O2 and N2. Constructed so the
/// sums are exact in floating point (all four derivatives are exactly zero).
inline PlantState no_flow_equilibrium(const DerivedConstants& c, double o2_share = 0.25) {
    const double dry = c.c11 - c.c2;
    PlantState x;
    x.p_o2 = o2_share * dry;
    x.p_n2 = dry - x.p_o2;
    x.w_cp = 0.0;
    x.p_sm = c.c11;
    return x;
}

/// Pressure measurements: y1 cathode total, y2 supply manifold.
struct Measurement {
    double y1 = 0.0;  ///< x1 + x2 + c2 (+ noise), Pa
    double y2 = 0.0;  ///< x4 (+ noise), Pa
};

/// Additive measurement-noise configuration. Defaults are noise-free so
/// regression runs are deterministic.
struct NoiseConfig {
    double sigma_y1 = 0.0;  ///< std dev of w1, Pa
    double sigma_y2 = 0.0;  ///< std dev of w2, Pa
    std::uint64_t seed = 0;

    void validate() const {
        detail::require(std::isfinite(sigma_y1) && sigma_y1 >= 0.0, "sigma_y1 must be >= 0");
        detail::require(std::isfinite(sigma_y2) && sigma_y2 >= 0.0, "sigma_y2 must be >= 0");
    }
};

/// Seedable Gaussian stream with a bit-exact output contract: each normal()
/// consumes exactly two mt19937_64 outputs, mapped to (0,1] by
/// (x >> 11) * 2^-53 and combined by Box-Muller. mt19937_64 is specified
/// bit-exactly by the standard, so traces reproduce across platforms up to
/// libm's sqrt/log/cos.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double normal() {
        const double u1 = canonical();
        const double u2 = canonical();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    double canonical() {
        // in (0, 1]: log() above never sees zero
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }
    std::mt19937_64 engine_;
};

/// Measurement model: y1 = x1 + x2 + c2 + w1, y2 = x4 + w2. w1 and w2 are
/// always drawn, in that order, so the stream position does not depend on the
/// configured magnitudes.
inline Measurement measure(const PlantState& x, const DerivedConstants& c,
                           const NoiseConfig& noise, GaussianStream& rng) {
    const double w1 = rng.normal();
    const double w2 = rng.normal();
    Measurement m;
    m.y1 = x.p_o2 + x.p_n2 + c.c2 + noise.sigma_y1 * w1;
    m.y2 = x.p_sm + noise.sigma_y2 * w2;
    return m;
}

}  // namespace o2loop

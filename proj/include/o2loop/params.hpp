#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "o2loop/errors.hpp"

namespace o2loop {

/// Raw fuel-cell / compressor parameters. Everything is SI: temperatures in
/// kelvin, pressures in Pa, volumes in m^3, molar masses in kg/mol. The
/// cathode outlet constant k_ca_out feeds a square-root orifice and therefore
/// carries kg s^-1 Pa^-1/2; the inlet constant k_ca_in is linear, kg s^-1 Pa^-1.
struct PhysicalParams {
    double R = 0.0;         ///< universal gas constant, J mol^-1 K^-1
    double T_fc = 0.0;      ///< stack temperature, K
    double T_atm = 0.0;     ///< atmospheric temperature, K
    double p_atm = 0.0;     ///< atmospheric pressure, Pa
    double p_sat = 0.0;     ///< cathode water-vapor saturation pressure, Pa
    double V_ca = 0.0;      ///< cathode volume, m^3
    double V_sm = 0.0;      ///< supply-manifold volume, m^3
    double M_O2 = 0.0;      ///< molar mass of O2, kg mol^-1
    double M_N2 = 0.0;      ///< molar mass of N2, kg mol^-1
    double M_v = 0.0;       ///< molar mass of water vapor, kg mol^-1
    double M_a = 0.0;       ///< molar mass of air, kg mol^-1
    double x_O2 = 0.0;      ///< oxygen mass fraction of dry air
    double w_atm = 0.0;     ///< atmospheric humidity ratio
    double k_ca_in = 0.0;   ///< cathode inlet flow constant, kg s^-1 Pa^-1
    double k_ca_out = 0.0;  ///< cathode outlet orifice constant, kg s^-1 Pa^-1/2
    double F_faraday = 0.0; ///< Faraday constant, C mol^-1
    int n_cells = 0;        ///< cells in the stack
    double f_motor = 0.0;   ///< motor friction, N m s
    double J_cp = 0.0;      ///< compressor/motor inertia, kg m^2
    double k_t = 0.0;       ///< motor torque constant, N m A^-1
    double eta_cm = 0.0;    ///< motor mechanical efficiency
    double eta_cp = 0.0;    ///< compressor efficiency
    double eta_vc = 0.0;    ///< volumetric efficiency
    double V_cpr_tr = 0.0;  ///< displaced volume per revolution, m^3
    double rho_a = 0.0;     ///< air density, kg m^-3
    double C_p = 0.0;       ///< specific heat of air, J kg^-1 K^-1
    double gamma = 0.0;     ///< heat-capacity ratio

    /// Throws config_error naming the first violated invariant.
    void validate() const;
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw config_error(msg);
}

inline bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace detail

inline void PhysicalParams::validate() const {
    using detail::positive;
    using detail::require;
    struct Field { const char* name; double v; };
    const Field fields[] = {
        {"R", R}, {"T_fc", T_fc}, {"T_atm", T_atm}, {"p_atm", p_atm},
        {"p_sat", p_sat}, {"V_ca", V_ca}, {"V_sm", V_sm}, {"M_O2", M_O2},
        {"M_N2", M_N2}, {"M_v", M_v}, {"M_a", M_a}, {"x_O2", x_O2},
        {"w_atm", w_atm}, {"k_ca_in", k_ca_in}, {"k_ca_out", k_ca_out},
        {"F_faraday", F_faraday}, {"f_motor", f_motor}, {"J_cp", J_cp},
        {"k_t", k_t}, {"eta_cm", eta_cm}, {"eta_cp", eta_cp},
        {"eta_vc", eta_vc}, {"V_cpr_tr", V_cpr_tr}, {"rho_a", rho_a},
        {"C_p", C_p}, {"gamma", gamma},
    };
    for (const auto& f : fields)
        require(positive(f.v), std::string("parameter ") + f.name + " must be finite and > 0");
    require(eta_cm <= 1.0, "eta_cm must be in (0, 1]");
    require(eta_cp <= 1.0, "eta_cp must be in (0, 1]");
    require(eta_vc <= 1.0, "eta_vc must be in (0, 1]");
    require(gamma > 1.0, "gamma must be > 1");
    require(x_O2 < 1.0, "x_O2 must be in (0, 1)");
    require(n_cells >= 1, "n_cells must be >= 1");
}

/// The twenty-one plant constants, in the model's conventional c1..c21 naming.
/// c2 and c11 are exact pass-throughs of p_sat and p_atm.
struct DerivedConstants {
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0, c7 = 0;
    double c8 = 0, c9 = 0, c10 = 0, c11 = 0, c12 = 0, c13 = 0, c14 = 0;
    double c15 = 0, c16 = 0, c17 = 0, c18 = 0, c19 = 0, c20 = 0, c21 = 0;

    std::array<double, 21> as_array() const {
        return {c1, c2,  c3,  c4,  c5,  c6,  c7,  c8,  c9,  c10, c11,
                c12, c13, c14, c15, c16, c17, c18, c19, c20, c21};
    }
};

/// Derives c1..c21 from the raw parameters. Pure; rejects any non-finite or
/// non-positive result, naming the offending constant.
inline DerivedConstants derive_constants(const PhysicalParams& p) {
    p.validate();
    const double two_pi = 2.0 * std::numbers::pi;
    DerivedConstants c;
    c.c1 = p.R * p.T_fc * p.k_ca_in * p.x_O2 / (p.V_ca * p.M_O2 * (1.0 + p.w_atm));
    c.c2 = p.p_sat;
    c.c3 = p.R * p.T_fc / p.V_ca;
    c.c4 = p.M_O2;
    c.c5 = p.M_N2;
    c.c6 = p.M_v * p.p_sat;
    c.c7 = p.R * p.T_fc * p.k_ca_in / (p.V_ca * 4.0 * p.F_faraday);
    c.c8 = p.R * p.T_fc * p.k_ca_in * (1.0 - p.x_O2) / (p.V_ca * p.M_N2 * (1.0 + p.w_atm));
    c.c9 = p.f_motor / p.J_cp;
    c.c10 = p.eta_vc * p.V_cpr_tr * p.rho_a * p.C_p * p.T_atm / (two_pi * p.J_cp * p.eta_cp);
    c.c11 = p.p_atm;
    c.c12 = (p.gamma - 1.0) / p.gamma;
    c.c13 = p.eta_cm * p.k_t / p.J_cp;
    c.c14 = p.R * p.T_atm / (p.M_a * p.V_sm);
    c.c15 = 1.0 / p.eta_cp;
    c.c16 = p.k_ca_in;
    c.c17 = p.k_ca_out;
    c.c18 = p.eta_cm * p.k_t;
    c.c19 = p.k_ca_in * p.x_O2 / (1.0 + p.w_atm);
    c.c20 = p.n_cells * p.M_O2 / (4.0 * p.F_faraday);
    c.c21 = p.eta_vc * p.V_cpr_tr * p.rho_a / two_pi;

    static constexpr const char* kNames[] = {
        "c1",  "c2",  "c3",  "c4",  "c5",  "c6",  "c7",  "c8",  "c9",  "c10", "c11",
        "c12", "c13", "c14", "c15", "c16", "c17", "c18", "c19", "c20", "c21"};
    const auto values = c.as_array();
    for (std::size_t i = 0; i < values.size(); ++i)
        detail::require(detail::positive(values[i]),
                        std::string("derived constant ") + kNames[i] +
                            " is not finite and positive");
    return c;
}

/// Multiplicative deltas (signed fractions) for the nine parameters of the
/// robustness study. An all-zero set is the identity.
struct UncertaintySet {
    double f_motor = 0.0;
    double k_t = 0.0;
    double eta_cp = 0.0;
    double eta_cm = 0.0;
    double k_ca_out = 0.0;
    double T_atm = 0.0;
    double V_ca = 0.0;
    double V_sm = 0.0;
    double T_fc = 0.0;

    void validate() const {
        const double ds[] = {f_motor, k_t, eta_cp, eta_cm, k_ca_out,
                             T_atm,   V_ca, V_sm,  T_fc};
        for (double d : ds)
            detail::require(std::isfinite(d) && d > -1.0 && d < 1.0,
                            "uncertainty delta must be in (-1, 1)");
    }
};

/// Scales each listed parameter by (1 + delta); everything else unchanged.
/// Rejects results that violate the PhysicalParams invariants (in particular,
/// efficiencies leaving (0, 1]).
inline PhysicalParams apply_uncertainties(const PhysicalParams& p, const UncertaintySet& u) {
    p.validate();
    u.validate();
    PhysicalParams q = p;
    q.f_motor = p.f_motor * (1.0 + u.f_motor);
    q.k_t = p.k_t * (1.0 + u.k_t);
    q.eta_cp = p.eta_cp * (1.0 + u.eta_cp);
    q.eta_cm = p.eta_cm * (1.0 + u.eta_cm);
    q.k_ca_out = p.k_ca_out * (1.0 + u.k_ca_out);
    q.T_atm = p.T_atm * (1.0 + u.T_atm);
    q.V_ca = p.V_ca * (1.0 + u.V_ca);
    q.V_sm = p.V_sm * (1.0 + u.V_sm);
    q.T_fc = p.T_fc * (1.0 + u.T_fc);
    q.validate();
    return q;
}

}  // namespace o2loop

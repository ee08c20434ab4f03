#pragma once

#include <complex>

#include "abclink/errors.hpp"

namespace abclink::circuit {

inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

/// Resistor in parallel with a capacitor (skin interface model).
/// c_f == 0 means the capacitor is absent.
struct RcParallel {
    double r_ohm = 0.0;
    double c_f = 0.0;

    std::complex<double> impedance(double omega) const;
};

/// Resistor in series with a capacitor (foot contact model).
/// c_f == 0 means the capacitor is absent (direct ohmic contact).
struct RcSeries {
    double r_ohm = 0.0;
    double c_f = 0.0;

    std::complex<double> impedance(double omega) const;
};

/// Foot-to-surface coupling geometry. distance == 0 is ohmic contact.
struct FootGeometry {
    double area_m2 = 4e-4;
    double distance_m = 0.0;
    double contact_resistance_ohm = 10e3;
};

/// All elements of the body-to-surface coupling network plus the carrier.
///
/// Component default values are implementer-assumed placeholders (the source
/// measurements name the components but not their values); everything here is
/// exposed through the scenario config.
struct ChannelParams {
    double c_g_tx_f = 2e-12;    // transmitter ground-plane return capacitance
    double c_csg_f = 50e-12;    // conductive surface to earth ground
    double c_l_f = 10e-12;      // receiver probe load capacitance
    double r_l_ohm = 1e6;       // receiver probe load resistance
    RcParallel z_skin{100e3, 1e-9};
    double z_body_ohm = 1e3;
    RcSeries z_foot{10e3, 0.0};
    double f_carrier_hz = 500e3;

    void check_valid() const;  // throws ConfigError
};

/// Capacitive divider gain C_G_TX / (C_G_TX + C_CSG + C_L).
/// Ignores all series impedances and the load resistance.
double simplified_gain(const ChannelParams& p);  // throws DegenerateDividerError

/// Exact complex transfer V_out/V_in of the two-node network at frequency f:
/// source couples through c_g_tx into the body node, the series
/// skin+body+foot impedance reaches the conductive-surface node, which is
/// shunted by c_csg and by the probe load (r_l parallel c_l).
std::complex<double> full_transfer(const ChannelParams& p, double f_hz);
// throws SingularNetworkError

/// Parallel-plate coupling between raised foot and surface; requires distance > 0.
double foot_capacitance(const FootGeometry& g);

/// distance == 0: ohmic contact_resistance. distance > 0: purely capacitive
/// (contact resistance is an open circuit once the foot lifts).
std::complex<double> foot_impedance(const FootGeometry& g, double f_hz);

/// Channel with the foot element replaced according to a raised-foot distance.
ChannelParams with_foot_distance(ChannelParams p, const FootGeometry& g, double distance_m);

}  // namespace abclink::circuit

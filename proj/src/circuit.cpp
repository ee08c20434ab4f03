#include "abclink/circuit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace abclink::circuit {

namespace {
constexpr std::complex<double> kJ{0.0, 1.0};

double omega_of(double f_hz) { return 2.0 * std::numbers::pi * f_hz; }
}  // namespace

std::complex<double> RcParallel::impedance(double omega) const {
    if (c_f <= 0.0) return {r_ohm, 0.0};
    if (r_ohm <= 0.0) return 1.0 / (kJ * omega * c_f);
    const std::complex<double> y = 1.0 / r_ohm + kJ * omega * c_f;
    return 1.0 / y;
}

std::complex<double> RcSeries::impedance(double omega) const {
    std::complex<double> z{r_ohm, 0.0};
    if (c_f > 0.0) z += 1.0 / (kJ * omega * c_f);
    return z;
}

void ChannelParams::check_valid() const {
    if (c_g_tx_f < 0 || c_csg_f < 0 || c_l_f < 0)
        throw ConfigError("channel: capacitances must be >= 0");
    if (!(r_l_ohm > 0)) throw ConfigError("channel: r_l must be > 0");
    if (!(f_carrier_hz > 0)) throw ConfigError("channel: f_carrier must be > 0");
    if (z_skin.r_ohm < 0 || z_skin.c_f < 0 || z_body_ohm < 0 || z_foot.r_ohm < 0 ||
        z_foot.c_f < 0)
        throw ConfigError("channel: impedance components must be >= 0");
}

double simplified_gain(const ChannelParams& p) {
    const double denom = p.c_g_tx_f + p.c_csg_f + p.c_l_f;
    if (denom <= 0.0)
        throw DegenerateDividerError("simplified_gain: all divider capacitances are zero");
    return p.c_g_tx_f / denom;
}

std::complex<double> full_transfer(const ChannelParams& p, double f_hz) {
    if (!(f_hz > 0.0)) throw SingularNetworkError("full_transfer: frequency must be > 0");
    const double omega = omega_of(f_hz);

    const std::complex<double> y_g = kJ * omega * p.c_g_tx_f;
    const std::complex<double> z_series =
        p.z_skin.impedance(omega) + std::complex<double>{p.z_body_ohm, 0.0} +
        p.z_foot.impedance(omega);
    std::complex<double> y_load = kJ * omega * (p.c_csg_f + p.c_l_f);
    if (std::isfinite(p.r_l_ohm)) y_load += 1.0 / p.r_l_ohm;

    std::complex<double> gain;
    if (z_series == std::complex<double>{0.0, 0.0}) {
        // body node and surface node coincide
        const std::complex<double> denom = y_g + y_load;
        if (std::abs(denom) == 0.0)
            throw SingularNetworkError("full_transfer: network has no admittance to ground");
        gain = y_g / denom;
    } else {
        // two-node admittance solve:
        //   [y_g + y_s   -y_s      ] [v_body]   [y_g * v_in]
        //   [-y_s         y_s + y_l] [v_out ] = [0         ]
        const std::complex<double> y_s = 1.0 / z_series;
        const std::complex<double> det = (y_g + y_s) * (y_s + y_load) - y_s * y_s;
        if (!(std::abs(det) > 0.0) || !std::isfinite(std::abs(det)))
            throw SingularNetworkError("full_transfer: nodal matrix is singular");
        gain = y_g * y_s / det;
    }
    if (!std::isfinite(gain.real()) || !std::isfinite(gain.imag()))
        throw SingularNetworkError("full_transfer: non-finite solution");
    return gain;
}

double foot_capacitance(const FootGeometry& g) {
    if (!(g.area_m2 > 0)) throw ConfigError("foot: area must be > 0");
    if (!(g.distance_m > 0))
        throw ConfigError("foot_capacitance: requires distance > 0 (contact is ohmic)");
    return kVacuumPermittivity * g.area_m2 / g.distance_m;
}

std::complex<double> foot_impedance(const FootGeometry& g, double f_hz) {
    if (!(f_hz > 0)) throw ConfigError("foot_impedance: frequency must be > 0");
    if (g.distance_m == 0.0) return {g.contact_resistance_ohm, 0.0};
    const double c = foot_capacitance(g);
    return 1.0 / (kJ * omega_of(f_hz) * c);
}

ChannelParams with_foot_distance(ChannelParams p, const FootGeometry& g, double distance_m) {
    if (distance_m < 0) throw ConfigError("foot distance must be >= 0");
    if (distance_m == 0.0) {
        p.z_foot = RcSeries{g.contact_resistance_ohm, 0.0};
    } else {
        FootGeometry raised = g;
        raised.distance_m = distance_m;
        p.z_foot = RcSeries{0.0, foot_capacitance(raised)};
    }
    return p;
}

}  // namespace abclink::circuit

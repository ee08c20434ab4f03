#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "abclink/errors.hpp"
#include "abclink/rxchain.hpp"
#include "abclink/txchain.hpp"

namespace abclink::metrics {

/// Pearson product-moment correlation.
/// Computed as sign(Sxy) * sqrt(Sxy^2 / (Sxx*Syy)) so elementwise-identical
/// sequences give exactly 1.0 (and negated ones exactly -1.0).
double pearson(std::span<const double> x, std::span<const double> y);
// throws ZeroVarianceError on constant input, Error on length < 2 / mismatch

/// Sliding-window Pearson series. A window longer than the signal collapses
/// to a single global value. Degenerate (constant) windows yield 1.0 when the
/// windows are elementwise equal and NaN otherwise.
std::vector<double> windowed_correlation(std::span<const double> x,
                                         std::span<const double> y, double window_s,
                                         double hop_s, double sample_rate_hz);

/// Decoded frames paired with the reference sequence by payload index.
/// Lost frames are masked out of the paired vectors and reported separately.
struct Alignment {
    std::vector<double> reference;   // paired, dequantized
    std::vector<double> decoded;     // paired, dequantized
    std::vector<std::uint8_t> lost_mask;  // one flag per reference index
    long losses = 0;
};

Alignment align(const rx::DecodeReport& report, std::span<const std::int32_t> reference,
                double volts_per_lsb);
// throws AlignmentError when decoded indices fall outside the reference

/// Payload bit error rate. Decoded frames contribute their actual bit errors;
/// lost frames count half their payload bits (erasure = random guess).
double bit_error_rate(const rx::DecodeReport& report,
                      std::span<const std::int32_t> reference);

/// Measured device powers. Stored in milliwatts: the headline ratio and
/// per-cycle energies then come out exact in double arithmetic.
struct PowerModel {
    double ble_tx_mw = 29.5;
    double abc_tx_mw = 0.5;
    double node_avg_mw = 28.5;

    void check_valid() const;
};

struct EnergyReport {
    double power_ratio = 0.0;          // ble / abc instantaneous
    double abc_energy_per_cycle_mj = 0.0;
    double ble_energy_per_cycle_mj = 0.0;
    double abc_duty = 0.0;             // fraction of the cycle transmitting
    double ble_duty = 0.0;
};

EnergyReport energy_report(const PowerModel& model, const tx::TdmSchedule& schedule);

/// Per-run link metrics, one CSV row per run.
struct LinkReport {
    std::string scenario;
    std::string sweep_axis = "none";
    double axis_value = 0.0;
    std::uint64_t seed = 0;

    double correlation = 0.0;
    double windowed_min = 0.0;
    double windowed_mean = 0.0;
    double ber = 0.0;
    double frame_loss_rate = 0.0;
    long frames_sent = 0;
    long frames_decoded = 0;
    long frame_errors = 0;
    long corrections = 0;
    long recovered_by_redundancy = 0;
    double mean_on_envelope_v = 0.0;
    double snr_db = 0.0;

    double abc_power_mw = 0.0;
    double ble_power_mw = 0.0;
    double power_ratio = 0.0;
    double abc_energy_per_cycle_mj = 0.0;

    std::string params_json;  // full parameter snapshot for provenance
};

std::vector<std::string> link_report_header();
std::vector<std::string> link_report_row(const LinkReport& r);

/// Mean ON-bit envelope per sweep distance, ordered from closest (highest
/// position index) to furthest; zero-envelope runs (nothing decoded) are
/// excluded from each mean.
struct AmplitudePoint {
    double distance_m = 0.0;
    double mean_envelope_v = 0.0;
};

std::vector<AmplitudePoint> amplitude_vs_distance(std::span<const LinkReport> reports);

}  // namespace abclink::metrics

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vlcphy/error.hpp"
#include "vlcphy/fec.hpp"
#include "vlcphy/framing.hpp"
#include "vlcphy/modes.hpp"
#include "vlcphy/waveform.hpp"

namespace vlc {

struct SyncResult {
    std::size_t frame_start = 0;
    int topology = 0;
    double correlation_peak = 0.0;
};

struct DetectorConfig {
    double threshold = 0.9;  // fraction of the ideal correlation peak
    // VPPM pulse widths (percent) searched with one matched filter each.
    std::vector<int> vppm_widths{10, 20, 30, 40, 50, 60, 70, 80, 90};
};

// Per-offset chip statistic used by the detector and timing recovery:
// the sum over one chip for OOK, the VPPM matched filter (bit-1 minus bit-0
// pulse for the given width) otherwise. Entry i describes the chip that
// starts at sample i.
std::vector<double> chip_statistic(std::span<const double> samples, int oversample, Modulation modulation,
                                   int vppm_width_percent = 50);

// Normalized SHR correlation of the chip statistic at each offset, for one
// topology. Exposed for testing; detect_frame() uses a pruned search.
double shr_correlation(std::span<const double> stat, int oversample, std::size_t offset, int topology);

// Slides the FLP||TDP correlator (one template per topology, DC removed)
// over the stream and returns the first offset whose score reaches the
// threshold, refined to the best-scoring offset within the next TDP
// period. VPPM streams are scanned once per candidate pulse width. Throws
// Error{NoFrame} when nothing crosses the threshold.
SyncResult detect_frame(const Waveform& wave, Modulation modulation, const DetectorConfig& config = {},
                        std::size_t search_from = 0);

// argmax over p in [0, N) of sum_k x[kN + p]^2 after removing the mean,
// over whole periods only; ties go to the smallest p.
std::size_t max_energy_phase(std::span<const double> samples, int oversample);

// Non-data-aided ML timing: matched filter (chip_statistic) followed by
// max_energy_phase. Needs at least 64 optical clocks, else FramingError.
std::size_t recover_timing(std::span<const double> samples, int oversample, Modulation modulation = Modulation::Ook,
                           int vppm_width_percent = 50);
inline std::size_t recover_timing(const Waveform& wave, Modulation modulation = Modulation::Ook,
                                  int vppm_width_percent = 50) {
    return recover_timing(wave.samples, wave.oversample, modulation, vppm_width_percent);
}

// VPPM pulse width from `widths` whose SHR waveform, fitted with a gain
// and offset, best matches the samples within half a chip of approx_start.
int estimate_vppm_width(std::span<const double> samples, int oversample, std::size_t approx_start, int topology,
                        std::span<const int> widths);

enum class RxStage { Sync, Header, Payload, Done };
std::string_view to_string(RxStage stage);

struct RxReport {
    std::optional<ErrorKind> error;
    RxStage stage = RxStage::Sync;  // stage reached (failing stage on error)
    std::string message;

    std::optional<SyncResult> sync;
    std::size_t frame_start = 0;  // after timing refinement
    std::size_t timing_phase = 0;  // frame_start mod oversample
    int vppm_width_estimate = 0;  // percent, VPPM only
    std::optional<Phr> phr;
    std::optional<OperatingMode> mode;
    std::optional<Mhr> mhr;
    std::vector<std::uint8_t> payload;
    bool payload_best_effort = false;  // set when RS blocks failed
    FecReport phr_fec;
    FecReport psdu_fec;
    BitSequence psdu_chips;  // hard decisions, compensation removed
    std::size_t frame_end = 0;  // first sample after the frame

    bool ok() const noexcept { return !error.has_value(); }
};

struct RxConfig {
    DetectorConfig detector;
    std::size_t subframe_length = 256;
};

// detect -> timing -> PHR (base coding) -> mode -> PSDU -> MHR. Staged
// failures are reported in RxReport::error rather than thrown.
RxReport receive_frame(const Waveform& wave, PhyType phy, const RxConfig& config = {},
                       std::size_t search_from = 0);

// Line-oriented key=value rendering.
std::string to_key_value(const RxReport& report);

}  // namespace vlc

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vlcphy/bits.hpp"
#include "vlcphy/dimming.hpp"
#include "vlcphy/error.hpp"
#include "vlcphy/framing.hpp"
#include "vlcphy/modes.hpp"
#include "vlcphy/waveform.hpp"

namespace vlc {

struct OokLevels {
    double off = 0.0;
    double on = 1.0;
    double midpoint() const noexcept { return 0.5 * (off + on); }
};

// ON/OFF levels whose average over a balanced chip stream is the target,
// with the widest swing that fits in [0, 1]. Throws ConfigError for 0% and
// 100%, where no swing remains.
OokLevels ook_levels(int target_percent);

// One chip per `oversample` samples. Under level redefinition the levels
// come from ook_levels(); compensation-symbol dimming modulates at 0/1 and
// expects insert_compensation() upstream.
Waveform ook_modulate(const BitSequence& chips, const OperatingMode& mode, const DimmingConfig& dimming,
                      int oversample = kDefaultOversample);

struct CompensationRun {
    std::size_t position = 0;  // index in the compensated stream
    std::size_t length = 0;
    friend bool operator==(const CompensationRun&, const CompensationRun&) = default;
};

struct CompensationMap {
    std::vector<CompensationRun> runs;
    int brightness = 0;
    std::size_t data_chips = 0;
    std::size_t total_chips = 0;

    std::size_t compensation_chips() const noexcept { return total_chips - data_chips; }
    double fraction() const noexcept {
        return total_chips ? static_cast<double>(compensation_chips()) / static_cast<double>(total_chips) : 0.0;
    }
};

// Fraction f of compensation symbols so that 0.5 (1 - f) + b f = target.
// Throws ConfigError when the target is not reachable with brightness b.
double compensation_fraction(int target_percent, int brightness);

// Placement rule shared by transmitter and receiver: data is cut into
// sub-frames of subframe_length chips; after sub-frame j the cumulative
// compensation count is round(D_j * f / (1 - f)), D_j being the data chips
// sent so far.
CompensationMap compensation_layout(std::size_t data_chips, const DimmingConfig& dimming);

struct Compensated {
    BitSequence chips;
    CompensationMap map;
};

// Throws ConfigError unless dimming.ook_method is CompensationSymbols.
Compensated insert_compensation(const BitSequence& chips, const DimmingConfig& dimming);

template <typename T>
std::vector<T> strip_compensation(std::span<const T> stream, const CompensationMap& map) {
    if (stream.size() != map.total_chips)
        throw Error(ErrorKind::FramingError, "compensated stream is " + std::to_string(stream.size()) +
                                                 " chips, map expects " + std::to_string(map.total_chips));
    std::vector<T> out;
    out.reserve(map.data_chips);
    std::size_t pos = 0;
    for (const auto& run : map.runs) {
        out.insert(out.end(), stream.begin() + static_cast<std::ptrdiff_t>(pos),
                   stream.begin() + static_cast<std::ptrdiff_t>(run.position));
        pos = run.position + run.length;
    }
    out.insert(out.end(), stream.begin() + static_cast<std::ptrdiff_t>(pos), stream.end());
    return out;
}

BitSequence strip_compensation(const BitSequence& stream, const CompensationMap& map);

struct VppmPulses {
    std::vector<double> bit0;  // one slot of samples
    std::vector<double> bit1;
};

// Area-sampled slot shapes for a pulse of width_percent of the slot.
VppmPulses vppm_pulses(int oversample, int width_percent);
// bit1 - bit0 pulse shape: the matched filter for the binary decision. At
// 50% with an even oversample this is the half-slot difference.
std::vector<double> vppm_matched_filter(int oversample, int width_percent = 50);

// Bit 0: ON pulse of width d*T at the slot start; bit 1: at the slot end.
// d = target/100 must lie on the 10% grid (10..90). A pulse edge that falls
// inside a sample is area-sampled, so the mean is d for any even oversample.
Waveform vppm_modulate(const BitSequence& bits, double optical_clock_hz, const DimmingConfig& dimming,
                       int oversample = kDefaultOversample);

// Mean of each chip's samples starting at `phase`.
std::vector<double> ook_chip_means(std::span<const double> samples, int oversample, std::size_t phase,
                                   std::size_t count);
// Matched-filter output per slot (positive means bit 1). The default width
// gives second-half minus first-half energy.
std::vector<double> vppm_slot_metrics(std::span<const double> samples, int oversample, std::size_t phase,
                                      std::size_t count, int width_percent = 50);

// Chip = 1 when its mean exceeds the threshold (default 0.5, the midpoint
// of unit swing; the receiver passes levels learned from the SHR).
BitSequence ook_demodulate(const Waveform& wave, std::size_t phase, std::optional<double> threshold = {});
// Bit 0 when first-half energy >= second-half energy.
BitSequence vppm_demodulate(const Waveform& wave, std::size_t phase);

// In-band: alternating symbols at the optical clock with mean = target.
// Out-of-band: constant DC at the target level.
Waveform generate_idle(const OperatingMode& mode, const DimmingConfig& dimming, IdleKind kind,
                       std::size_t duration_clocks, int oversample = kDefaultOversample);

// Optical-symbol stream of a frame as sent (compensation symbols included).
BitSequence frame_line_chips(const Frame& frame, const DimmingConfig& dimming);
// Under compensation dimming the SHR and PHR use the redefined levels of
// the target and only the PSDU carries compensation symbols.
Waveform modulate_frame(const Frame& frame, const DimmingConfig& dimming, int oversample = kDefaultOversample);

}  // namespace vlc

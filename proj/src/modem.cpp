#include "vlcphy/modem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vlc {

double Waveform::mean() const noexcept {
    if (samples.empty()) return 0.0;
    return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

namespace {

void require_oversample(int oversample) {
    if (oversample < 2) throw Error(ErrorKind::ConfigError, "oversample must be >= 2");
}

std::size_t slot_count(std::size_t samples, int oversample, std::size_t phase) {
    if (samples < phase + static_cast<std::size_t>(oversample))
        throw Error(ErrorKind::FramingError, "waveform shorter than one chip");
    return (samples - phase) / static_cast<std::size_t>(oversample);
}

}  // namespace

OokLevels ook_levels(int target_percent) {
    if (target_percent <= 0 || target_percent >= 100)
        throw Error(ErrorKind::ConfigError, "level redefinition needs a target strictly between 0 and 100%");
    const double t = target_percent / 100.0;
    return t <= 0.5 ? OokLevels{0.0, 2.0 * t} : OokLevels{2.0 * t - 1.0, 1.0};
}

Waveform ook_modulate(const BitSequence& chips, const OperatingMode& mode, const DimmingConfig& dimming,
                      int oversample) {
    require_oversample(oversample);
    const OokLevels levels = dimming.ook_method == OokDimming::LevelRedefinition && dimming.target_percent != 50
                                 ? ook_levels(dimming.target_percent)
                                 : OokLevels{};
    Waveform w;
    w.oversample = oversample;
    w.sample_rate = static_cast<double>(mode.optical_clock_hz) * oversample;
    w.samples.reserve(chips.size() * static_cast<std::size_t>(oversample));
    for (auto c : chips) w.samples.insert(w.samples.end(), static_cast<std::size_t>(oversample), c ? levels.on : levels.off);
    return w;
}

double compensation_fraction(int target_percent, int brightness) {
    if (target_percent < 0 || target_percent > 100)
        throw Error(ErrorKind::ConfigError, "dimming target must be 0..100%");
    if (brightness != 0 && brightness != 1) throw Error(ErrorKind::ConfigError, "compensation brightness must be 0 or 1");
    const double t = target_percent / 100.0;
    const double f = (0.5 - t) / (0.5 - brightness);
    if (f < 0.0 || f >= 1.0)
        throw Error(ErrorKind::ConfigError, "target " + std::to_string(target_percent) +
                                                "% unreachable with compensation brightness " +
                                                std::to_string(brightness));
    return f;
}

CompensationMap compensation_layout(std::size_t data_chips, const DimmingConfig& dimming) {
    if (dimming.subframe_length < 1) throw Error(ErrorKind::ConfigError, "subframe_length must be >= 1");
    const double f = compensation_fraction(dimming.target_percent, dimming.compensation_brightness);
    const double ratio = f / (1.0 - f);
    CompensationMap map;
    map.brightness = dimming.compensation_brightness;
    map.data_chips = data_chips;
    std::size_t sent = 0, inserted = 0;
    while (sent < data_chips) {
        sent = std::min(data_chips, sent + dimming.subframe_length);
        const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(sent) * ratio));
        if (target > inserted) {
            map.runs.push_back({sent + inserted, target - inserted});
            inserted = target;
        }
    }
    map.total_chips = data_chips + inserted;
    return map;
}

Compensated insert_compensation(const BitSequence& chips, const DimmingConfig& dimming) {
    if (dimming.ook_method != OokDimming::CompensationSymbols)
        throw Error(ErrorKind::ConfigError, "insert_compensation requires compensation-symbol dimming");
    Compensated out;
    out.map = compensation_layout(chips.size(), dimming);
    out.chips.reserve(out.map.total_chips);
    std::size_t pos = 0;
    for (const auto& run : out.map.runs) {
        while (out.chips.size() < run.position) out.chips.push_back(chips[pos++]);
        for (std::size_t i = 0; i < run.length; ++i) out.chips.push_back(static_cast<Bit>(out.map.brightness));
    }
    while (pos < chips.size()) out.chips.push_back(chips[pos++]);
    return out;
}

BitSequence strip_compensation(const BitSequence& stream, const CompensationMap& map) {
    const auto kept = strip_compensation<Bit>(stream.view(), map);
    BitSequence out;
    out.reserve(kept.size());
    for (auto b : kept) out.push_back(b);
    return out;
}

VppmPulses vppm_pulses(int oversample, int width_percent) {
    require_oversample(oversample);
    if (width_percent < 0 || width_percent > 100) throw Error(ErrorKind::ConfigError, "VPPM width must be 0..100%");
    const double width = static_cast<double>(width_percent * oversample) / 100.0;
    const auto n = static_cast<std::size_t>(oversample);
    VppmPulses p;
    p.bit0.resize(n);
    p.bit1.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double jd = static_cast<double>(j);
        p.bit0[j] = std::clamp(width - jd, 0.0, 1.0);
        p.bit1[j] = std::clamp(jd + 1.0 - (static_cast<double>(n) - width), 0.0, 1.0);
    }
    return p;
}

std::vector<double> vppm_matched_filter(int oversample, int width_percent) {
    const auto p = vppm_pulses(oversample, width_percent);
    std::vector<double> h(p.bit0.size());
    for (std::size_t j = 0; j < h.size(); ++j) h[j] = p.bit1[j] - p.bit0[j];
    return h;
}

Waveform vppm_modulate(const BitSequence& bits, double optical_clock_hz, const DimmingConfig& dimming,
                       int oversample) {
    require_oversample(oversample);
    if (oversample % 2 != 0) throw Error(ErrorKind::ConfigError, "VPPM needs an even oversample");
    const int target = dimming.target_percent;
    if (target < 10 || target > 90 || target % 10 != 0)
        throw Error(ErrorKind::ConfigError, "VPPM dimming must be 10..90% in 10% steps");
    const auto pulses = vppm_pulses(oversample, target);
    Waveform w;
    w.oversample = oversample;
    w.sample_rate = optical_clock_hz * oversample;
    w.samples.reserve(bits.size() * pulses.bit0.size());
    for (auto b : bits) {
        const auto& s = b ? pulses.bit1 : pulses.bit0;
        w.samples.insert(w.samples.end(), s.begin(), s.end());
    }
    return w;
}

std::vector<double> ook_chip_means(std::span<const double> samples, int oversample, std::size_t phase,
                                   std::size_t count) {
    const auto n = static_cast<std::size_t>(oversample);
    if (phase + count * n > samples.size()) throw Error(ErrorKind::FramingError, "not enough samples for chips");
    std::vector<double> out(count);
    for (std::size_t c = 0; c < count; ++c) {
        const auto* p = samples.data() + phase + c * n;
        out[c] = std::accumulate(p, p + n, 0.0) / static_cast<double>(n);
    }
    return out;
}

std::vector<double> vppm_slot_metrics(std::span<const double> samples, int oversample, std::size_t phase,
                                      std::size_t count, int width_percent) {
    const auto n = static_cast<std::size_t>(oversample);
    if (phase + count * n > samples.size()) throw Error(ErrorKind::FramingError, "not enough samples for slots");
    const auto h = vppm_matched_filter(oversample, width_percent);
    std::vector<double> out(count);
    for (std::size_t c = 0; c < count; ++c) {
        const auto* p = samples.data() + phase + c * n;
        out[c] = std::inner_product(h.begin(), h.end(), p, 0.0);
    }
    return out;
}

BitSequence ook_demodulate(const Waveform& wave, std::size_t phase, std::optional<double> threshold) {
    const std::size_t count = slot_count(wave.size(), wave.oversample, phase);
    const double thr = threshold.value_or(0.5);
    BitSequence out;
    out.reserve(count);
    for (double m : ook_chip_means(wave.samples, wave.oversample, phase, count)) out.push_back(m > thr);
    return out;
}

BitSequence vppm_demodulate(const Waveform& wave, std::size_t phase) {
    const std::size_t count = slot_count(wave.size(), wave.oversample, phase);
    BitSequence out;
    out.reserve(count);
    for (double m : vppm_slot_metrics(wave.samples, wave.oversample, phase, count)) out.push_back(m > 0.0);
    return out;
}

Waveform generate_idle(const OperatingMode& mode, const DimmingConfig& dimming, IdleKind kind,
                       std::size_t duration_clocks, int oversample) {
    require_oversample(oversample);
    if (kind == IdleKind::OutOfBand) {
        Waveform w;
        w.oversample = oversample;
        w.sample_rate = static_cast<double>(mode.optical_clock_hz) * oversample;
        w.samples.assign(duration_clocks * static_cast<std::size_t>(oversample), dimming.level());
        return w;
    }
    BitSequence pattern;
    pattern.reserve(duration_clocks);
    for (std::size_t i = 0; i < duration_clocks; ++i) pattern.push_back(i % 2);
    if (mode.modulation == Modulation::Vppm)
        return vppm_modulate(pattern, static_cast<double>(mode.optical_clock_hz), dimming, oversample);
    DimmingConfig levels = dimming;
    levels.ook_method = OokDimming::LevelRedefinition;
    return ook_modulate(pattern, mode, levels, oversample);
}

BitSequence frame_line_chips(const Frame& frame, const DimmingConfig& dimming) {
    BitSequence chips = frame.shr;
    chips.append(frame.phr_coded);
    if (frame.mode.modulation == Modulation::Ook && dimming.uses_compensation())
        chips.append(insert_compensation(frame.psdu_coded, dimming).chips);
    else
        chips.append(frame.psdu_coded);
    return chips;
}

Waveform modulate_frame(const Frame& frame, const DimmingConfig& dimming, int oversample) {
    if (frame.mode.modulation == Modulation::Vppm)
        return vppm_modulate(frame_line_chips(frame, dimming), static_cast<double>(frame.mode.optical_clock_hz),
                             dimming, oversample);
    if (!dimming.uses_compensation()) return ook_modulate(frame_line_chips(frame, dimming), frame.mode, dimming, oversample);
    // SHR and PHR at redefined levels, PSDU at full swing with compensation
    DimmingConfig header = dimming;
    header.ook_method = OokDimming::LevelRedefinition;
    BitSequence head = frame.shr;
    head.append(frame.phr_coded);
    auto w = ook_modulate(head, frame.mode, header, oversample);
    w.append(ook_modulate(insert_compensation(frame.psdu_coded, dimming).chips, frame.mode, dimming, oversample));
    return w;
}

}  // namespace vlc

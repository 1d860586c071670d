#pragma once

#include <cstdint>
#include <optional>

#include "vlcphy/waveform.hpp"

namespace vlc {

enum class GainMode { Direct, Lambertian };

struct ChannelConfig {
    GainMode gain_mode = GainMode::Direct;
    double gain = 1.0;  // direct gain, or scale applied to the geometric gain
    double distance_m = 1.0;
    double semi_angle_deg = 15.0;
    double receiver_area_m2 = 1e-4;
    double off_axis_deg = 0.0;
    std::optional<double> led_cutoff_hz;
    double ambient_dc = 0.0;
    double noise_sigma = 0.0;
    std::optional<int> adc_bits;
    double adc_full_scale = 1.0;
    std::uint64_t rng_seed = 1;

    // Throws ConfigError on out-of-range fields.
    void validate() const;
};

// Photometric link figures of a luminaire.
struct LinkBudget {
    double luminous_intensity_cd = 0.0;
    double distance_m = 1.0;
    double illuminance_lux() const noexcept { return luminous_intensity_cd / (distance_m * distance_m); }
};

// m = -ln 2 / ln cos(semi_angle). Throws ConfigError outside (0, 90).
double lambertian_order(double semi_angle_deg);

// E = I cos^m(theta) / d^2
double illuminance_at(double intensity_cd, double distance_m, double off_axis_deg, double m);

// Line-of-sight DC gain (m + 1) A cos^m(phi) cos(phi) / (2 pi d^2) times
// cfg.gain, with receiver and emitter facing each other.
double lambertian_gain(const ChannelConfig& cfg);

// Scalar electrical gain the channel applies.
double effective_gain(const ChannelConfig& cfg);

// y = quantize(g * lowpass(x) + ambient_dc + n). The one-pole filter is
// y[i] = y[i-1] + a (x[i] - y[i-1]), a = 1 - exp(-2 pi fc / fs), starting
// from rest at x[0]. Deterministic for a given rng_seed.
Waveform apply_channel(const Waveform& wave, const ChannelConfig& cfg);

// 20 log10(g * swing / sigma), swing = max - min of the clean waveform.
// +infinity when sigma is zero.
double snr_for(const ChannelConfig& cfg, const Waveform& clean);

}  // namespace vlc

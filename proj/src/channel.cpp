#include "vlcphy/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "vlcphy/error.hpp"

namespace vlc {
namespace {

long double radians(long double deg) { return deg * std::numbers::pi_v<long double> / 180.0L; }

}  // namespace

void ChannelConfig::validate() const {
    if (!(distance_m > 0.0)) throw Error(ErrorKind::ConfigError, "distance must be > 0");
    if (!(semi_angle_deg > 0.0 && semi_angle_deg < 90.0))
        throw Error(ErrorKind::ConfigError, "semi-angle must be in (0, 90) degrees");
    if (noise_sigma < 0.0) throw Error(ErrorKind::ConfigError, "noise_sigma must be >= 0");
    if (led_cutoff_hz && !(*led_cutoff_hz > 0.0)) throw Error(ErrorKind::ConfigError, "LED cutoff must be > 0");
    if (adc_bits && (*adc_bits < 1 || *adc_bits > 24)) throw Error(ErrorKind::ConfigError, "adc_bits must be 1..24");
    if (!(adc_full_scale > 0.0)) throw Error(ErrorKind::ConfigError, "adc_full_scale must be > 0");
}

double lambertian_order(double semi_angle_deg) {
    if (!(semi_angle_deg > 0.0 && semi_angle_deg < 90.0))
        throw Error(ErrorKind::ConfigError, "semi-angle must be in (0, 90) degrees");
    return static_cast<double>(-std::log(2.0L) / std::log(std::cos(radians(semi_angle_deg))));
}

double illuminance_at(double intensity_cd, double distance_m, double off_axis_deg, double m) {
    if (!(distance_m > 0.0)) throw Error(ErrorKind::ConfigError, "distance must be > 0");
    const double c = static_cast<double>(std::cos(radians(off_axis_deg)));
    return intensity_cd * std::pow(c, m) / (distance_m * distance_m);
}

double lambertian_gain(const ChannelConfig& cfg) {
    const double m = lambertian_order(cfg.semi_angle_deg);
    const double c = static_cast<double>(std::cos(radians(cfg.off_axis_deg)));
    if (c <= 0.0) return 0.0;
    return cfg.gain * (m + 1.0) * cfg.receiver_area_m2 * std::pow(c, m) * c /
           (2.0 * std::numbers::pi * cfg.distance_m * cfg.distance_m);
}

double effective_gain(const ChannelConfig& cfg) {
    return cfg.gain_mode == GainMode::Direct ? cfg.gain : lambertian_gain(cfg);
}

Waveform apply_channel(const Waveform& wave, const ChannelConfig& cfg) {
    cfg.validate();
    const double g = effective_gain(cfg);
    Waveform out = wave;
    auto& y = out.samples;

    if (cfg.led_cutoff_hz && !y.empty()) {
        const double a = 1.0 - std::exp(-2.0 * std::numbers::pi * *cfg.led_cutoff_hz / wave.sample_rate);
        double state = y.front();
        for (auto& v : y) {
            state += a * (v - state);
            v = state;
        }
    }

    std::mt19937_64 rng(cfg.rng_seed);
    std::normal_distribution<double> noise(0.0, cfg.noise_sigma > 0.0 ? cfg.noise_sigma : 1.0);
    for (auto& v : y) {
        v = g * v + cfg.ambient_dc;
        if (cfg.noise_sigma > 0.0) v += noise(rng);
    }

    if (cfg.adc_bits) {
        const double levels = std::ldexp(1.0, *cfg.adc_bits) - 1.0;
        const double step = cfg.adc_full_scale / levels;
        for (auto& v : y) v = std::clamp(std::round(v / step), 0.0, levels) * step;
    }
    return out;
}

double snr_for(const ChannelConfig& cfg, const Waveform& clean) {
    if (cfg.noise_sigma == 0.0) return std::numeric_limits<double>::infinity();
    double swing = 0.0;
    if (!clean.samples.empty()) {
        auto [lo, hi] = std::minmax_element(clean.samples.begin(), clean.samples.end());
        swing = *hi - *lo;
    }
    return 20.0 * std::log10(effective_gain(cfg) * swing / cfg.noise_sigma);
}

}  // namespace vlc

#pragma once

#include <cstddef>
#include <vector>

namespace vlc {

// Normalized intensity samples (0 = dark, 1 = full ON) at
// sample_rate = optical clock * oversample.
struct Waveform {
    std::vector<double> samples;
    double sample_rate = 0.0;
    int oversample = 8;

    double optical_clock_hz() const noexcept { return sample_rate / oversample; }
    std::size_t size() const noexcept { return samples.size(); }
    void append(const Waveform& other) { samples.insert(samples.end(), other.samples.begin(), other.samples.end()); }
    double mean() const noexcept;
};

inline constexpr int kDefaultOversample = 8;

}  // namespace vlc

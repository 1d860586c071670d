#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vlcphy/channel.hpp"
#include "vlcphy/framing.hpp"
#include "vlcphy/modes.hpp"
#include "vlcphy/waveform.hpp"

namespace vlc {

// Sidecar metadata stored next to a waveform file as <file>.json.
struct WaveformInfo {
    double sample_rate = 0.0;
    int oversample = kDefaultOversample;
    PhyType phy = PhyType::PhyI;
    int mode_index = 0;
    int dimming = 50;
};

// Samples as little-endian float32, metadata in <path>.json.
void write_waveform(const std::filesystem::path& path, const Waveform& wave, const WaveformInfo& info);
Waveform read_waveform(const std::filesystem::path& path, WaveformInfo* info = nullptr);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& data);

// Channel configuration from JSON text; unknown keys are rejected.
ChannelConfig parse_channel_config(const std::string& json_text);
ChannelConfig load_channel_config(const std::filesystem::path& path);
std::string channel_config_json(const ChannelConfig& cfg);

// SHR / PHR / PSDU sections as hex, 64 chips per line.
std::string frame_hex_dump(const Frame& frame);

}  // namespace vlc

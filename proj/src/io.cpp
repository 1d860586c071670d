#include "vlcphy/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "vlcphy/error.hpp"

namespace vlc {
namespace {

using nlohmann::json;

std::filesystem::path sidecar(const std::filesystem::path& path) {
    auto p = path;
    p += ".json";
    return p;
}

void dump_section(std::ostringstream& os, const char* name, const BitSequence& bits) {
    os << name << " (" << bits.size() << " chips)\n";
    static constexpr char hex[] = "0123456789abcdef";
    for (std::size_t line = 0; line < bits.size(); line += 64) {
        const std::size_t end = std::min(bits.size(), line + 64);
        os << "  ";
        for (std::size_t i = line; i < end; i += 4) {
            unsigned nibble = 0;
            const std::size_t w = std::min<std::size_t>(4, end - i);
            for (std::size_t j = 0; j < w; ++j) nibble = (nibble << 1) | bits[i + j];
            nibble <<= 4 - w;
            os << hex[nibble];
        }
        os << '\n';
    }
}

}  // namespace

void write_waveform(const std::filesystem::path& path, const Waveform& wave, const WaveformInfo& info) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    std::vector<char> buffer(wave.size() * 4);
    for (std::size_t i = 0; i < wave.size(); ++i) {
        auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(wave.samples[i]));
        for (int b = 0; b < 4; ++b) buffer[i * 4 + static_cast<std::size_t>(b)] = static_cast<char>((bits >> (8 * b)) & 0xFF);
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (!out) throw Error(ErrorKind::IoError, "short write to " + path.string());

    json meta = {{"sample_rate", wave.sample_rate},
                 {"oversample", wave.oversample},
                 {"phy", std::string(to_string(info.phy))},
                 {"mode_index", info.mode_index},
                 {"dimming", info.dimming}};
    std::ofstream side(sidecar(path));
    if (!side) throw Error(ErrorKind::IoError, "cannot write " + sidecar(path).string());
    side << meta.dump(2) << '\n';
}

Waveform read_waveform(const std::filesystem::path& path, WaveformInfo* info) {
    const auto raw = read_file(path);
    if (raw.size() % 4 != 0) throw Error(ErrorKind::IoError, path.string() + " is not a float32 sample file");
    std::ifstream side(sidecar(path));
    if (!side) throw Error(ErrorKind::IoError, "missing sidecar " + sidecar(path).string());
    json meta;
    try {
        meta = json::parse(side);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::IoError, "bad sidecar: " + std::string(e.what()));
    }
    Waveform wave;
    WaveformInfo local;
    try {
        local.sample_rate = meta.at("sample_rate").get<double>();
        local.oversample = meta.at("oversample").get<int>();
        const auto phy = parse_phy(meta.at("phy").get<std::string>());
        if (!phy) throw Error(ErrorKind::IoError, "bad phy in sidecar");
        local.phy = *phy;
        local.mode_index = meta.value("mode_index", 0);
        local.dimming = meta.value("dimming", 50);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::IoError, "bad sidecar: " + std::string(e.what()));
    }
    wave.sample_rate = local.sample_rate;
    wave.oversample = local.oversample;
    wave.samples.resize(raw.size() / 4);
    for (std::size_t i = 0; i < wave.samples.size(); ++i) {
        std::uint32_t bits = 0;
        for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(raw[i * 4 + static_cast<std::size_t>(b)]) << (8 * b);
        wave.samples[i] = std::bit_cast<float>(bits);
    }
    if (info) *info = local;
    return wave;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(ErrorKind::IoError, "short write to " + path.string());
}

ChannelConfig parse_channel_config(const std::string& json_text) {
    ChannelConfig cfg;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, "channel config: " + std::string(e.what()));
    }
    if (!j.is_object()) throw Error(ErrorKind::ConfigError, "channel config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "gain_mode") {
                const auto mode = value.get<std::string>();
                if (mode == "direct") cfg.gain_mode = GainMode::Direct;
                else if (mode == "lambertian") cfg.gain_mode = GainMode::Lambertian;
                else throw Error(ErrorKind::ConfigError, "gain_mode must be direct or lambertian");
            } else if (key == "gain") cfg.gain = value.get<double>();
            else if (key == "distance_m") cfg.distance_m = value.get<double>();
            else if (key == "semi_angle_deg") cfg.semi_angle_deg = value.get<double>();
            else if (key == "receiver_area_m2") cfg.receiver_area_m2 = value.get<double>();
            else if (key == "off_axis_deg") cfg.off_axis_deg = value.get<double>();
            else if (key == "led_cutoff_hz") {
                if (!value.is_null()) cfg.led_cutoff_hz = value.get<double>();
            } else if (key == "ambient_dc") cfg.ambient_dc = value.get<double>();
            else if (key == "noise_sigma") cfg.noise_sigma = value.get<double>();
            else if (key == "adc_bits") {
                if (!value.is_null()) cfg.adc_bits = value.get<int>();
            } else if (key == "adc_full_scale") cfg.adc_full_scale = value.get<double>();
            else if (key == "rng_seed") cfg.rng_seed = value.get<std::uint64_t>();
            else throw Error(ErrorKind::ConfigError, "unknown channel field '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, "channel config: " + std::string(e.what()));
    }
    cfg.validate();
    return cfg;
}

ChannelConfig load_channel_config(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return parse_channel_config(std::string(bytes.begin(), bytes.end()));
}

std::string channel_config_json(const ChannelConfig& cfg) {
    json j = {{"gain_mode", cfg.gain_mode == GainMode::Direct ? "direct" : "lambertian"},
              {"gain", cfg.gain},
              {"distance_m", cfg.distance_m},
              {"semi_angle_deg", cfg.semi_angle_deg},
              {"receiver_area_m2", cfg.receiver_area_m2},
              {"off_axis_deg", cfg.off_axis_deg},
              {"ambient_dc", cfg.ambient_dc},
              {"noise_sigma", cfg.noise_sigma},
              {"adc_full_scale", cfg.adc_full_scale},
              {"rng_seed", cfg.rng_seed}};
    j["led_cutoff_hz"] = cfg.led_cutoff_hz ? json(*cfg.led_cutoff_hz) : json(nullptr);
    j["adc_bits"] = cfg.adc_bits ? json(*cfg.adc_bits) : json(nullptr);
    return j.dump(2);
}

std::string frame_hex_dump(const Frame& frame) {
    std::ostringstream os;
    os << "mode " << to_string(frame.mode.phy) << '/' << frame.mode.index << " topology " << frame.topology
       << " psdu_length " << frame.phr.psdu_length << '\n';
    dump_section(os, "SHR", frame.shr);
    dump_section(os, "PHR", frame.phr_coded);
    dump_section(os, "PSDU", frame.psdu_coded);
    return os.str();
}

}  // namespace vlc

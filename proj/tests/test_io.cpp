#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "helpers.hpp"
#include "vlcphy/framing.hpp"
#include "vlcphy/io.hpp"
#include "vlcphy/modem.hpp"

using namespace vlc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("vlcphy_io_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("waveform file roundtrip") {
    TempDir dir;
    Waveform w;
    w.oversample = 4;
    w.sample_rate = 15e6;
    w.samples = {0.0, 0.25, 0.5, 1.0, 0.125};
    const WaveformInfo info{15e6, 4, PhyType::PhyII, 7, 30};
    const auto file = dir.path / "w.f32";
    write_waveform(file, w, info);
    CHECK(fs::file_size(file) == 5 * 4);
    CHECK(fs::exists(dir.path / "w.f32.json"));
    WaveformInfo back;
    const auto r = read_waveform(file, &back);
    CHECK(r.samples == w.samples);  // all exactly representable in float32
    CHECK(r.oversample == 4);
    CHECK(r.sample_rate == 15e6);
    CHECK(back.phy == PhyType::PhyII);
    CHECK(back.mode_index == 7);
    CHECK(back.dimming == 30);

    // little-endian float32 on disk
    std::ifstream raw(file, std::ios::binary);
    unsigned char b[8];
    raw.read(reinterpret_cast<char*>(b), 8);
    CHECK(b[4] == 0x00);
    CHECK(b[5] == 0x00);
    CHECK(b[6] == 0x80);
    CHECK(b[7] == 0x3E);

    CHECK(error_kind([&] { read_waveform(dir.path / "missing.f32"); }) == ErrorKind::IoError);
    write_file(dir.path / "odd.f32", {1, 2, 3});
    CHECK(error_kind([&] { read_waveform(dir.path / "odd.f32"); }) == ErrorKind::IoError);
}

TEST_CASE("file helpers") {
    TempDir dir;
    const std::vector<std::uint8_t> data{0, 1, 2, 255};
    write_file(dir.path / "d.bin", data);
    CHECK(read_file(dir.path / "d.bin") == data);
    CHECK(error_kind([&] { read_file(dir.path / "nope"); }) == ErrorKind::IoError);
}

TEST_CASE("channel config JSON") {
    const auto cfg = parse_channel_config(R"({"gain": 0.5, "ambient_dc": 0.1, "noise_sigma": 0.05,
        "led_cutoff_hz": 1e6, "adc_bits": 10, "rng_seed": 42})");
    CHECK(cfg.gain == 0.5);
    CHECK(cfg.ambient_dc == 0.1);
    CHECK(cfg.noise_sigma == 0.05);
    CHECK(cfg.led_cutoff_hz == 1e6);
    CHECK(cfg.adc_bits == 10);
    CHECK(cfg.rng_seed == 42);

    const auto back = parse_channel_config(channel_config_json(cfg));
    CHECK(back.gain == cfg.gain);
    CHECK(back.led_cutoff_hz == cfg.led_cutoff_hz);
    CHECK(back.adc_bits == cfg.adc_bits);
    CHECK(back.rng_seed == cfg.rng_seed);
    CHECK_FALSE(parse_channel_config(channel_config_json(ChannelConfig{})).adc_bits);

    const auto geo = parse_channel_config(R"({"gain_mode": "lambertian", "semi_angle_deg": 30, "distance_m": 2})");
    CHECK(geo.gain_mode == GainMode::Lambertian);
    CHECK(geo.distance_m == 2.0);

    CHECK(error_kind([] { parse_channel_config(R"({"gian": 1})"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { parse_channel_config(R"({"noise_sigma": -1})"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { parse_channel_config(R"({"gain_mode": "magic"})"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { parse_channel_config("[1, 2]"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { parse_channel_config("{"); }) == ErrorKind::ConfigError);
    CHECK(error_kind([] { parse_channel_config(R"({"gain": "high"})"); }) == ErrorKind::ConfigError);
}

TEST_CASE("frame hex dump") {
    const auto f = assemble_frame(std::vector<std::uint8_t>{0xAB}, lookup_mode(PhyType::PhyI, 4), DimmingConfig{}, Mhr{});
    const auto dump = frame_hex_dump(f);
    CHECK(dump.find("SHR (124 chips)") != std::string::npos);
    CHECK(dump.find("PHR (") != std::string::npos);
    CHECK(dump.find("PSDU (64 chips)") != std::string::npos);
    // FLP "0101..." packs to 5 per nibble
    CHECK(dump.find("5555555555555555") != std::string::npos);
}

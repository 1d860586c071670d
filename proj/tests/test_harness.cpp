#include <doctest.h>

#include <cmath>
#include <string>

#include "helpers.hpp"
#include "oracles.hpp"
#include "vlcphy/framing.hpp"
#include "vlcphy/harness.hpp"

using namespace vlc;

namespace {

const OperatingMode& uncoded() { return lookup_mode(PhyType::PhyI, 4); }
const OperatingMode& strongest() { return lookup_mode(PhyType::PhyI, 0); }

std::vector<std::uint8_t> text(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("Wilson interval") {
    const auto empty = wilson_interval(0, 0);
    CHECK(empty.lo == 0.0);
    CHECK(empty.hi == 1.0);
    const double z2 = kWilsonZ95 * kWilsonZ95;
    const auto zero = wilson_interval(0, 10);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi == doctest::Approx(z2 / (10.0 + z2)));
    const auto half = wilson_interval(50, 100);
    CHECK(half.lo + half.hi == doctest::Approx(1.0));
    CHECK(half.contains(0.5));
    CHECK(half.lo == doctest::Approx(0.4038).epsilon(1e-3));
    const auto all = wilson_interval(10, 10);
    CHECK(all.hi == doctest::Approx(1.0));
}

TEST_CASE("SHA-256 and payload helpers") {
    CHECK(sha256_hex(text("abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex({}) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(random_payload(100, 5) == random_payload(100, 5));
    CHECK(random_payload(100, 5) != random_payload(100, 6));
    CHECK(random_payload(0, 1).empty());
    CHECK(noise_sigma_for_snr(20.0 * std::log10(2.0), 1.0) == doctest::Approx(0.5));
    CHECK(noise_sigma_for_snr(20.0 * std::log10(2.0), 1.0, 0.5) == doctest::Approx(0.25));
}

TEST_CASE("run_loopback: empty payload and every mode at identity") {
    for (const auto& m : list_modes()) {
        const auto r = run_loopback(m, {}, ChannelConfig{}, DimmingConfig{}, 3);
        CHECK(r.pass);
        CHECK(r.report.payload.empty());
        CHECK(r.delay_samples % kDefaultOversample == 3);
    }
}

TEST_CASE("sweep validation") {
    SweepSpec spec;
    spec.mode = uncoded();
    CHECK(error_kind([&] { ber_sweep(spec); }) == ErrorKind::ConfigError);
    spec.noise_sigmas = {0.1};
    spec.frames_per_point = 0;
    CHECK(error_kind([&] { ber_sweep(spec); }) == ErrorKind::ConfigError);
    spec.frames_per_point = 1;
    spec.noise_sigmas = {-1.0};
    CHECK(error_kind([&] { ber_sweep(spec); }) == ErrorKind::ConfigError);
}

TEST_CASE("sweep: sigma 0 point is error free, results are deterministic") {
    SweepSpec spec;
    spec.mode = lookup_mode(PhyType::PhyI, 3);
    spec.noise_sigmas = {0.0, 0.45};
    spec.frames_per_point = 20;
    spec.payload_length = 32;
    spec.seed = 11;
    const auto a = ber_sweep(spec);
    REQUIRE(a.points.size() == 2);
    CHECK(a.points[0].ber == 0.0);
    CHECK(a.points[0].fer == 0.0);
    CHECK(a.points[0].cer == 0.0);
    CHECK(std::isinf(a.points[0].snr_db));
    CHECK(a.points[0].effective_throughput_bps == doctest::Approx(data_rate(spec.mode).to_double()));
    CHECK(a.points[1].snr_db == doctest::Approx(20.0 * std::log10(1.0 / 0.45)));
    const auto b = ber_sweep(spec);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a.points[i].bit_errors == b.points[i].bit_errors);
        CHECK(a.points[i].frame_errors == b.points[i].frame_errors);
        CHECK(a.points[i].chip_errors == b.points[i].chip_errors);
        CHECK(a.points[i].corrected_symbols == b.points[i].corrected_symbols);
    }
    for (const auto& p : a.points) {
        CHECK(p.ber >= 0.0);
        CHECK(p.ber <= 1.0);
        CHECK(p.ber_ci.contains(p.ber));
        CHECK(p.fer_ci.contains(p.fer));
        // a frame with a bit error is a frame error
        CHECK(p.fer * static_cast<double>(p.frames) >= (p.bit_errors > 0 ? 1.0 : 0.0));
    }
}

TEST_CASE("uncoded chip error rate agrees with the Q-function in at least 90 of 100 seeded sweeps") {
    // chip decisions average `oversample` samples, so sigma_eff = sigma / sqrt(N)
    const double sigma = 0.6;
    const double p = oracle::q_function(0.5 / (sigma / std::sqrt(static_cast<double>(kDefaultOversample))));
    int inside = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        SweepSpec spec;
        spec.mode = uncoded();
        spec.noise_sigmas = {sigma};
        spec.frames_per_point = 10;
        spec.payload_length = 64;
        spec.seed = seed * 7919;
        const auto r = ber_sweep(spec);
        inside += r.points[0].cer_ci.contains(p);
    }
    CHECK(inside >= 90);
}

TEST_CASE("FER is non-increasing in SNR") {
    SweepSpec spec;
    spec.mode = uncoded();
    for (double snr : {3.0, 4.0, 5.0, 6.0}) spec.noise_sigmas.push_back(noise_sigma_for_snr(snr, 1.0));
    spec.frames_per_point = 1000;
    spec.payload_length = 16;
    const auto r = ber_sweep(spec);
    for (std::size_t i = 1; i < r.points.size(); ++i) CHECK(r.points[i].fer <= r.points[i - 1].fer_ci.hi);
    CHECK(r.points.front().fer > r.points.back().fer);
}

TEST_CASE("coding gain ordering: the strongest code passes where uncoded fails") {
    ChannelConfig ch;
    ch.noise_sigma = noise_sigma_for_snr(4.5, 1.0);
    int uncoded_failures = 0, coded_failures = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto payload = random_payload(64, seed);
        uncoded_failures += !run_loopback(uncoded(), payload, ch, DimmingConfig{}, seed).pass;
        coded_failures += !run_loopback(strongest(), payload, ch, DimmingConfig{}, seed).pass;
    }
    CHECK(uncoded_failures > 0);
    CHECK(coded_failures == 0);
}

TEST_CASE("throughput of the 100 kb/s uncoded mode") {
    const auto& m = uncoded();
    CHECK(data_rate(m).to_double() == 100000.0);
    const std::size_t frame = frame_overhead(m, 4096).total_bits;
    const auto r = throughput_check(m, 30 * frame);
    CHECK(r.frames_sent == 30);
    CHECK(r.frames_delivered == 30);
    CHECK(r.frame_clocks == frame);
    CHECK(r.measured_bps >= 0.95 * 100000.0);
    CHECK(r.measured_bps <= 100000.0);
    const auto none = throughput_check(m, 0);
    CHECK(none.measured_bps == 0.0);
    CHECK(none.frames_delivered == 0);
}

TEST_CASE("throughput halves with compensation fraction 0.5") {
    const auto& m = uncoded();
    const std::size_t frame = frame_overhead(m, 4096).total_bits;
    const auto plain = throughput_check(m, 40 * frame);
    ThroughputOptions opt;
    opt.dimming = compensation_dimming(25);
    const auto dimmed = throughput_check(m, 40 * frame, opt);
    CHECK(dimmed.compensation_fraction == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(plain.frames_delivered == 40);
    CHECK(dimmed.frames_delivered == 20);
    CHECK(std::abs(dimmed.measured_bps / plain.measured_bps - 0.5) <= 0.02 * 0.5);
}

TEST_CASE("throughput with idle gaps and a noisy channel") {
    const auto& m = lookup_mode(PhyType::PhyI, 3);
    ThroughputOptions opt;
    opt.payload_octets = 256;
    opt.idle_gap_clocks = 100;
    ChannelConfig ch;
    ch.noise_sigma = 0.2;
    opt.channel = ch;
    const std::size_t frame = frame_overhead(m, 256).total_bits + 100;
    const auto r = throughput_check(m, 10 * frame, opt);
    CHECK(r.frames_delivered == 10);
    CHECK(r.frame_clocks == frame);
    CHECK(r.measured_bps == doctest::Approx(10 * 256 * 8 / (10.0 * static_cast<double>(frame) / m.optical_clock_hz)));
}

TEST_CASE("transfer_file reproduces the data byte for byte") {
    const auto data = random_payload(5000, 77);
    ChannelConfig ch;
    ch.noise_sigma = 0.3;
    for (const auto& m : list_modes(PhyType::PhyI)) {
        const auto r = transfer_file(data, m, ch, DimmingConfig{}, 1, 1024);
        CAPTURE(m.index);
        CHECK(r.frames == 5);
        CHECK(r.ok());
        CHECK(r.received == data);
        CHECK(r.sent_digest == sha256_hex(data));
    }
    const auto empty = transfer_file({}, strongest(), ChannelConfig{}, DimmingConfig{}, 1);
    CHECK(empty.ok());
    CHECK(empty.frames == 1);
    CHECK(error_kind([&] { transfer_file(data, strongest(), ChannelConfig{}, DimmingConfig{}, 1, 0); }) ==
          ErrorKind::ConfigError);
}

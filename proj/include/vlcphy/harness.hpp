#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vlcphy/channel.hpp"
#include "vlcphy/dimming.hpp"
#include "vlcphy/modes.hpp"
#include "vlcphy/receiver.hpp"

namespace vlc {

struct LoopbackResult {
    RxReport report;
    bool pass = false;
    std::size_t delay_samples = 0;  // integer delay injected before the frame
};

// Frame -> modulate -> channel -> receive. The frame sits between
// out-of-band idle stretches, the leading one lengthened by
// (seed mod oversample) samples. `seed` overrides channel.rng_seed.
LoopbackResult run_loopback(const OperatingMode& mode, std::span<const std::uint8_t> payload,
                            const ChannelConfig& channel, const DimmingConfig& dimming, std::uint64_t seed,
                            int oversample = kDefaultOversample);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    bool contains(double p) const noexcept { return lo <= p && p <= hi; }
};

inline constexpr double kWilsonZ95 = 1.959964;

// Wilson score interval for k successes in n trials; [0, 1] when n = 0.
Interval wilson_interval(std::size_t k, std::size_t n, double z = kWilsonZ95);

struct SweepSpec {
    OperatingMode mode;
    std::vector<double> noise_sigmas;  // one sweep point each
    std::size_t frames_per_point = 100;
    std::size_t payload_length = 64;
    DimmingConfig dimming;
    ChannelConfig channel;  // noise_sigma and rng_seed are set per frame
    std::uint64_t seed = 1;
    int oversample = kDefaultOversample;

    // Throws ConfigError on an empty point list or zero frames.
    void validate() const;
};

// Noise sigma that puts the electrical SNR at snr_db for the given swing.
double noise_sigma_for_snr(double snr_db, double swing, double gain = 1.0);

struct SweepPoint {
    double noise_sigma = 0.0;
    double snr_db = 0.0;
    std::size_t frames = 0;
    std::size_t frame_errors = 0;
    std::size_t bits = 0;
    std::size_t bit_errors = 0;  // after FEC; a lost frame counts half its bits
    std::size_t chips = 0;
    std::size_t chip_errors = 0;  // before FEC, known timing and levels
    std::size_t corrected_symbols = 0;
    double ber = 0.0;
    double fer = 0.0;
    double cer = 0.0;
    Interval ber_ci;
    Interval fer_ci;
    Interval cer_ci;
    double effective_throughput_bps = 0.0;  // nominal rate x (1 - fer)
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double effective_throughput_bps = 0.0;  // best point
};

// Points run independently with seed ^ point index; frame f of a point uses
// a seed derived from that and f. Deterministic for a given spec.
SweepResult ber_sweep(const SweepSpec& spec);

struct ThroughputOptions {
    std::size_t payload_octets = 4096;
    DimmingConfig dimming;
    std::size_t idle_gap_clocks = 0;
    std::optional<ChannelConfig> channel;
    int oversample = kDefaultOversample;
    std::uint64_t seed = 1;
};

struct ThroughputResult {
    double measured_bps = 0.0;
    double nominal_bps = 0.0;
    std::size_t frames_sent = 0;
    std::size_t frames_delivered = 0;
    std::size_t frame_clocks = 0;  // optical clocks per frame, gap included
    double compensation_fraction = 0.0;
};

// Back-to-back frames through the receiver for duration_clocks optical
// clocks. Delivered payload bits over the simulated time; a frame cut by
// the end of the window costs time but delivers nothing.
ThroughputResult throughput_check(const OperatingMode& mode, std::size_t duration_clocks,
                                  const ThroughputOptions& options = {});

struct TransferResult {
    std::vector<std::uint8_t> received;
    std::size_t frames = 0;
    std::size_t frames_failed = 0;
    std::string sent_digest;
    std::string received_digest;
    bool ok() const { return frames_failed == 0 && sent_digest == received_digest; }
};

// Lowercase hex SHA-256.
std::string sha256_hex(std::span<const std::uint8_t> data);

// Splits `data` into frames of at most chunk_octets payload each and sends
// them one by one through run_loopback.
TransferResult transfer_file(std::span<const std::uint8_t> data, const OperatingMode& mode,
                             const ChannelConfig& channel, const DimmingConfig& dimming, std::uint64_t seed,
                             std::size_t chunk_octets = 1024, int oversample = kDefaultOversample);

// Deterministic payload bytes for tests and sweeps.
std::vector<std::uint8_t> random_payload(std::size_t length, std::uint64_t seed);

}  // namespace vlc

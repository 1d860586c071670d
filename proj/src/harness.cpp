#include "vlcphy/harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "vlcphy/framing.hpp"
#include "vlcphy/modem.hpp"

namespace vlc {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::size_t lead_clocks = 32;
constexpr std::size_t tail_clocks = 16;

struct Transmission {
    Frame frame;
    Waveform clean;
    std::size_t frame_offset = 0;  // first frame sample in `clean`
};

Transmission transmit(const OperatingMode& mode, std::span<const std::uint8_t> payload,
                      const DimmingConfig& dimming, std::uint64_t seed, int oversample) {
    Transmission tx;
    const Mhr mhr{0x0001, static_cast<std::uint8_t>(seed & 0xFF)};
    tx.frame = assemble_frame(payload, mode, dimming, mhr);
    const Waveform body = modulate_frame(tx.frame, dimming, oversample);
    const double level = dimming.level();
    const std::size_t delay = static_cast<std::size_t>(seed % static_cast<std::uint64_t>(oversample));
    tx.clean.oversample = oversample;
    tx.clean.sample_rate = body.sample_rate;
    tx.frame_offset = lead_clocks * static_cast<std::size_t>(oversample) + delay;
    tx.clean.samples.assign(tx.frame_offset, level);
    tx.clean.append(body);
    tx.clean.samples.insert(tx.clean.samples.end(), tail_clocks * static_cast<std::size_t>(oversample), level);
    return tx;
}

// Swing between the ON and OFF levels of the clean waveform.
double swing_of(const OperatingMode& mode, const DimmingConfig& dimming) {
    if (mode.modulation == Modulation::Ook && dimming.ook_method == OokDimming::LevelRedefinition &&
        dimming.target_percent != 50) {
        const auto l = ook_levels(dimming.target_percent);
        return l.on - l.off;
    }
    return 1.0;
}

// Hard chip decisions at the known frame position and levels.
std::size_t genie_chip_errors(const Waveform& rx, const Transmission& tx, const DimmingConfig& dimming,
                              const ChannelConfig& channel, std::size_t& chips) {
    const BitSequence sent = frame_line_chips(tx.frame, dimming);
    chips = sent.size();
    std::size_t errors = 0;
    if (tx.frame.mode.modulation == Modulation::Vppm) {
        const auto m = vppm_slot_metrics(rx.samples, rx.oversample, tx.frame_offset, sent.size(), dimming.target_percent);
        for (std::size_t i = 0; i < m.size(); ++i) errors += (m[i] > 0.0) != (sent[i] != 0);
        return errors;
    }
    const OokLevels levels = dimming.target_percent != 50 ? ook_levels(dimming.target_percent) : OokLevels{};
    const double g = effective_gain(channel);
    const double header_threshold = g * levels.midpoint() + channel.ambient_dc;
    const double psdu_threshold = dimming.uses_compensation() ? g * 0.5 + channel.ambient_dc : header_threshold;
    const std::size_t psdu_offset = tx.frame.layout.psdu_offset();
    const auto m = ook_chip_means(rx.samples, rx.oversample, tx.frame_offset, sent.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        errors += (m[i] > (i < psdu_offset ? header_threshold : psdu_threshold)) != (sent[i] != 0);
    return errors;
}

std::size_t payload_bit_errors(std::span<const std::uint8_t> sent, std::span<const std::uint8_t> got) {
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) {
        if (i < got.size())
            errors += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(sent[i] ^ got[i])));
        else
            errors += 4;
    }
    return errors;
}

}  // namespace

std::vector<std::uint8_t> random_payload(std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<std::uint8_t> out(length);
    for (auto& b : out) b = static_cast<std::uint8_t>(byte(rng));
    return out;
}

LoopbackResult run_loopback(const OperatingMode& mode, std::span<const std::uint8_t> payload,
                            const ChannelConfig& channel, const DimmingConfig& dimming, std::uint64_t seed,
                            int oversample) {
    const Transmission tx = transmit(mode, payload, dimming, seed, oversample);
    ChannelConfig cfg = channel;
    cfg.rng_seed = seed;
    const Waveform rx = apply_channel(tx.clean, cfg);
    LoopbackResult result;
    result.delay_samples = tx.frame_offset;
    result.report = receive_frame(rx, mode.phy, RxConfig{{}, dimming.subframe_length});
    result.pass = result.report.ok() && std::ranges::equal(result.report.payload, payload);
    return result;
}

Interval wilson_interval(std::size_t k, std::size_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double nd = static_cast<double>(n);
    const double p = static_cast<double>(k) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double centre = (p + z2 / (2.0 * nd)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

void SweepSpec::validate() const {
    if (noise_sigmas.empty()) throw Error(ErrorKind::ConfigError, "sweep needs at least one point");
    if (frames_per_point == 0) throw Error(ErrorKind::ConfigError, "frames_per_point must be >= 1");
    for (double s : noise_sigmas)
        if (!(s >= 0.0)) throw Error(ErrorKind::ConfigError, "noise sigma must be >= 0");
    if (payload_length > kMaxPayloadOctets) throw Error(ErrorKind::ConfigError, "payload too long for one frame");
}

double noise_sigma_for_snr(double snr_db, double swing, double gain) {
    return gain * swing / std::pow(10.0, snr_db / 20.0);
}

SweepResult ber_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    const double nominal = data_rate(spec.mode).to_double();
    const double swing = swing_of(spec.mode, spec.dimming);
    for (std::size_t idx = 0; idx < spec.noise_sigmas.size(); ++idx) {
        SweepPoint pt;
        pt.noise_sigma = spec.noise_sigmas[idx];
        ChannelConfig cfg = spec.channel;
        cfg.noise_sigma = pt.noise_sigma;
        pt.snr_db = pt.noise_sigma > 0.0 ? 20.0 * std::log10(effective_gain(cfg) * swing / pt.noise_sigma)
                                         : std::numeric_limits<double>::infinity();
        const std::uint64_t point_seed = spec.seed ^ static_cast<std::uint64_t>(idx);
        for (std::size_t f = 0; f < spec.frames_per_point; ++f) {
            const std::uint64_t frame_seed = splitmix64(point_seed * 0x100000001B3ULL + f);
            const auto payload = random_payload(spec.payload_length, frame_seed);
            const Transmission tx = transmit(spec.mode, payload, spec.dimming, frame_seed, spec.oversample);
            cfg.rng_seed = frame_seed;
            const Waveform rx = apply_channel(tx.clean, cfg);
            const RxReport report = receive_frame(rx, spec.mode.phy, RxConfig{{}, spec.dimming.subframe_length});

            std::size_t chips = 0;
            pt.chip_errors += genie_chip_errors(rx, tx, spec.dimming, cfg, chips);
            pt.chips += chips;
            pt.frames += 1;
            pt.bits += payload.size() * 8;
            const bool delivered = report.ok() && std::ranges::equal(report.payload, payload);
            if (!delivered) pt.frame_errors += 1;
            if (report.stage == RxStage::Payload || report.stage == RxStage::Done) {
                pt.bit_errors += payload_bit_errors(payload, report.payload);
                pt.corrected_symbols += static_cast<std::size_t>(report.psdu_fec.corrected_symbols());
            } else {
                pt.bit_errors += payload.size() * 4;
            }
        }
        pt.ber = pt.bits ? static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits) : 0.0;
        pt.fer = static_cast<double>(pt.frame_errors) / static_cast<double>(pt.frames);
        pt.cer = pt.chips ? static_cast<double>(pt.chip_errors) / static_cast<double>(pt.chips) : 0.0;
        pt.ber_ci = wilson_interval(pt.bit_errors, pt.bits);
        pt.fer_ci = wilson_interval(pt.frame_errors, pt.frames);
        pt.cer_ci = wilson_interval(pt.chip_errors, pt.chips);
        pt.effective_throughput_bps = nominal * (1.0 - pt.fer);
        result.effective_throughput_bps = std::max(result.effective_throughput_bps, pt.effective_throughput_bps);
        result.points.push_back(pt);
    }
    return result;
}

ThroughputResult throughput_check(const OperatingMode& mode, std::size_t duration_clocks,
                                  const ThroughputOptions& options) {
    ThroughputResult result;
    result.nominal_bps = data_rate(mode).to_double();
    const DimmingConfig& dimming = options.dimming;
    const auto n = static_cast<std::size_t>(options.oversample);
    const double level = dimming.level();
    std::size_t elapsed = 0;
    std::uint64_t seq = 0;
    std::size_t delivered_bits = 0;
    while (elapsed < duration_clocks) {
        const std::uint64_t seed = splitmix64(options.seed + seq);
        const auto payload = random_payload(options.payload_octets, seed);
        const Frame frame =
            assemble_frame(payload, mode, dimming, Mhr{0x0001, static_cast<std::uint8_t>(seq & 0xFF)});
        Waveform wave = modulate_frame(frame, dimming, options.oversample);
        const std::size_t frame_clocks = wave.size() / n;
        if (mode.modulation == Modulation::Ook && dimming.uses_compensation())
            result.compensation_fraction = compensation_layout(frame.psdu_coded.size(), dimming).fraction();
        // The gap precedes the frame so the receiver sees it as lead-in.
        if (options.idle_gap_clocks) {
            Waveform gap = generate_idle(mode, dimming, IdleKind::OutOfBand, options.idle_gap_clocks,
                                         options.oversample);
            gap.append(wave);
            wave = std::move(gap);
        }
        result.frame_clocks = frame_clocks + options.idle_gap_clocks;
        result.frames_sent += 1;
        ++seq;
        if (elapsed + result.frame_clocks > duration_clocks) {
            elapsed = duration_clocks;
            break;
        }
        elapsed += result.frame_clocks;
        wave.samples.insert(wave.samples.end(), n, level);
        if (options.channel) {
            ChannelConfig cfg = *options.channel;
            cfg.rng_seed = seed;
            wave = apply_channel(wave, cfg);
        }
        const RxReport report = receive_frame(wave, mode.phy, RxConfig{{}, dimming.subframe_length});
        if (report.ok() && std::ranges::equal(report.payload, payload)) {
            result.frames_delivered += 1;
            delivered_bits += payload.size() * 8;
        }
    }
    if (duration_clocks == 0) return result;
    const double seconds = static_cast<double>(duration_clocks) / static_cast<double>(mode.optical_clock_hz);
    result.measured_bps = static_cast<double>(delivered_bits) / seconds;
    return result;
}

std::string sha256_hex(std::span<const std::uint8_t> data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::IoError, "SHA-256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

TransferResult transfer_file(std::span<const std::uint8_t> data, const OperatingMode& mode,
                             const ChannelConfig& channel, const DimmingConfig& dimming, std::uint64_t seed,
                             std::size_t chunk_octets, int oversample) {
    if (chunk_octets == 0 || chunk_octets > kMaxPayloadOctets)
        throw Error(ErrorKind::ConfigError, "chunk size must be 1.." + std::to_string(kMaxPayloadOctets));
    TransferResult result;
    result.sent_digest = sha256_hex(data);
    std::size_t pos = 0;
    do {
        const std::size_t len = std::min(chunk_octets, data.size() - pos);
        const auto chunk = data.subspan(pos, len);
        const auto loop = run_loopback(mode, chunk, channel, dimming, splitmix64(seed + result.frames), oversample);
        result.frames += 1;
        if (!loop.pass) result.frames_failed += 1;
        if (loop.report.stage == RxStage::Payload || loop.report.stage == RxStage::Done)
            result.received.insert(result.received.end(), loop.report.payload.begin(), loop.report.payload.end());
        pos += len;
    } while (pos < data.size());
    result.received_digest = sha256_hex(result.received);
    return result;
}

}  // namespace vlc

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vlcphy/channel.hpp"
#include "vlcphy/harness.hpp"
#include "vlcphy/io.hpp"
#include "vlcphy/modem.hpp"
#include "vlcphy/receiver.hpp"

using namespace vlc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDecode = 1;
constexpr int kExitUsage = 2;

struct Globals {
    std::string phy = "I";
    int mode = 0;
    int dimming = 50;
    std::string dimming_method = "level";
    int oversample = kDefaultOversample;
    std::uint64_t seed = 1;
    std::string channel;
};

PhyType phy_of(const Globals& g) {
    const auto phy = parse_phy(g.phy);
    if (!phy) throw Error(ErrorKind::ConfigError, "unknown PHY '" + g.phy + "' (use I or II)");
    return *phy;
}

const OperatingMode& mode_of(const Globals& g) { return lookup_mode(phy_of(g), g.mode); }

DimmingConfig dimming_of(const Globals& g) {
    if (g.dimming_method == "compensation") return compensation_dimming(g.dimming);
    DimmingConfig d;
    d.target_percent = g.dimming;
    return d;
}

ChannelConfig channel_of(const Globals& g) {
    ChannelConfig cfg = g.channel.empty() ? ChannelConfig{} : load_channel_config(g.channel);
    cfg.rng_seed = g.seed;
    return cfg;
}

std::vector<std::uint8_t> payload_from(const std::string& input, std::size_t length, std::uint64_t seed) {
    if (!input.empty()) return read_file(input);
    return random_payload(length, seed);
}

std::string chips_text(const BitSequence& bits) {
    std::string s = to_string(bits);
    std::string out;
    for (std::size_t i = 0; i < s.size(); i += 64) out += s.substr(i, 64) + '\n';
    return out;
}

BitSequence chips_from_text(const std::vector<std::uint8_t>& text) {
    BitSequence bits;
    for (auto c : text) {
        if (c == '0' || c == '1') bits.push_back(c == '1');
        else if (!std::isspace(c)) throw Error(ErrorKind::IoError, "chip files hold only 0, 1 and whitespace");
    }
    return bits;
}

Waveform padded_waveform(const Frame& frame, const DimmingConfig& dimming, int oversample, std::size_t idle_clocks) {
    Waveform body = modulate_frame(frame, dimming, oversample);
    Waveform w = generate_idle(frame.mode, dimming, IdleKind::OutOfBand, idle_clocks, oversample);
    w.append(body);
    w.append(generate_idle(frame.mode, dimming, IdleKind::OutOfBand, idle_clocks, oversample));
    return w;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw Error(ErrorKind::ConfigError, "bad number '" + item + "' in list");
        }
    }
    return out;
}

int report_exit(const RxReport& report) {
    if (report.ok()) return kExitOk;
    const ErrorKind k = *report.error;
    return k == ErrorKind::ConfigError || k == ErrorKind::IoError ? kExitUsage : kExitDecode;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IEEE 802.15.7 PHY I/II visible light baseband"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--phy", g.phy, "PHY type: I or II")->capture_default_str();
    app.add_option("--mode", g.mode, "Operating mode index within the PHY")->capture_default_str();
    app.add_option("--dimming", g.dimming, "Dimming target in percent")->capture_default_str()->check(CLI::Range(0, 100));
    app.add_option("--dimming-method", g.dimming_method, "OOK dimming: level or compensation")
        ->capture_default_str()
        ->check(CLI::IsMember({"level", "compensation"}));
    app.add_option("--oversample", g.oversample, "Samples per optical clock")->capture_default_str()->check(CLI::Range(2, 1024));
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_option("--channel", g.channel, "Channel configuration (JSON)");

    auto* modes = app.add_subcommand("modes", "List operating modes and data rates");
    bool csv = false;
    modes->add_flag("--csv", csv, "CSV output");

    auto* describe = app.add_subcommand("describe-fec", "Describe the coding chain of a mode");
    std::size_t describe_len = 64;
    describe->add_option("--length", describe_len, "Payload octets for the overhead figures")->capture_default_str();

    auto* encode = app.add_subcommand("encode", "Payload file -> frame chips (text)");
    std::string in_path, out_path;
    std::size_t length = 64;
    bool dump = false;
    encode->add_option("--input,-i", in_path, "Payload file (random payload when absent)");
    encode->add_option("--length", length, "Random payload octets")->capture_default_str();
    encode->add_option("--output,-o", out_path, "Chip file");
    encode->add_flag("--dump", dump, "Hex dump of SHR/PHR/PSDU");

    auto* decode_chips = app.add_subcommand("decode-chips", "Frame chips (text) -> payload, hard decisions");
    decode_chips->add_option("--input,-i", in_path, "Chip file")->required();
    decode_chips->add_option("--output,-o", out_path, "Payload file");

    auto* modulate = app.add_subcommand("modulate", "Payload file -> waveform (float32 + .json sidecar)");
    std::size_t idle_clocks = 32;
    modulate->add_option("--input,-i", in_path, "Payload file (random payload when absent)");
    modulate->add_option("--length", length, "Random payload octets")->capture_default_str();
    modulate->add_option("--output,-o", out_path, "Waveform file")->required();
    modulate->add_option("--idle", idle_clocks, "Idle clocks before and after the frame")->capture_default_str();

    auto* demodulate = app.add_subcommand("demodulate", "Waveform -> hard chip decisions (text)");
    demodulate->add_option("--input,-i", in_path, "Waveform file")->required();
    demodulate->add_option("--output,-o", out_path, "Chip file");

    auto* decode = app.add_subcommand("decode", "Waveform -> payload and receiver report");
    decode->add_option("--input,-i", in_path, "Waveform file")->required();
    decode->add_option("--output,-o", out_path, "Payload file");

    auto* simulate = app.add_subcommand("simulate", "One frame through channel and receiver");
    simulate->add_option("--input,-i", in_path, "Payload file (random payload when absent)");
    simulate->add_option("--length", length, "Random payload octets")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "BER/FER sweep, one CSV row per SNR point");
    std::string snr_list = "6,9,12,15";
    std::size_t frames = 100;
    sweep->add_option("--snr", snr_list, "Comma-separated SNR points in dB")->capture_default_str();
    sweep->add_option("--frames", frames, "Frames per point")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--length", length, "Payload octets per frame")->capture_default_str();

    auto* sendfile = app.add_subcommand("sendfile", "Send a file through the simulated link, verify by SHA-256");
    std::size_t chunk = 1024;
    sendfile->add_option("--input,-i", in_path, "File to send")->required();
    sendfile->add_option("--output,-o", out_path, "Where to write the received file");
    sendfile->add_option("--chunk", chunk, "Payload octets per frame")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*modes) {
            if (csv) std::cout << "phy,index,modulation,rll,clock_hz,rs_n,rs_k,cc_rate,data_rate_bps\n";
            else std::printf("%-7s %5s %-5s %-10s %12s %-10s %-5s %12s\n", "phy", "mode", "mod", "rll", "clock_hz", "rs", "cc",
                             "rate");
            for (const auto& m : list_modes()) {
                const std::string rs = m.rs ? std::to_string(m.rs->n) + "," + std::to_string(m.rs->k) : "";
                const std::string cc = m.cc ? std::string(to_string(*m.cc)) : "";
                if (csv) {
                    std::printf("%s,%d,%s,%s,%llu,%s,%s,%s,%.6f\n", std::string(to_string(m.phy)).c_str(), m.index,
                                std::string(to_string(m.modulation)).c_str(), std::string(to_string(m.rll)).c_str(),
                                static_cast<unsigned long long>(m.optical_clock_hz),
                                m.rs ? std::to_string(m.rs->n).c_str() : "", m.rs ? std::to_string(m.rs->k).c_str() : "",
                                cc.c_str(), data_rate(m).to_double());
                } else {
                    std::printf("%-7s %5d %-5s %-10s %12llu %-10s %-5s %12s\n", std::string(to_string(m.phy)).c_str(),
                                m.index, std::string(to_string(m.modulation)).c_str(),
                                std::string(to_string(m.rll)).c_str(),
                                static_cast<unsigned long long>(m.optical_clock_hz), rs.empty() ? "none" : rs.c_str(),
                                cc.empty() ? "none" : cc.c_str(), format_rate(data_rate(m)).c_str());
                }
            }
            return kExitOk;
        }

        if (*describe) {
            const auto& m = mode_of(g);
            const auto scheme = FecScheme::of(m);
            const auto oh = frame_overhead(m, describe_len);
            std::cout << "mode " << to_string(m.phy) << '/' << m.index << ' ' << to_string(m.modulation) << " at "
                      << m.optical_clock_hz << " Hz\n";
            if (m.rs) {
                std::cout << "outer RS(" << m.rs->n << ',' << m.rs->k << ") over GF(" << (1 << rs_symbol_bits(*m.rs))
                          << "), corrects " << (m.rs->n - m.rs->k) / 2 << " symbols per block\n";
                std::cout << "interleaver depth " << m.rs->n << " symbols\n";
            } else {
                std::cout << "outer RS: none\n";
            }
            if (m.cc) std::cout << "inner CC rate " << to_string(*m.cc) << ", K=7, generators 133/171/165 (octal)\n";
            else std::cout << "inner CC: none\n";
            std::cout << "line code " << to_string(m.rll) << '\n';
            std::cout << "data rate " << format_rate(data_rate(m)) << '\n';
            std::cout << "payload " << describe_len << " octets -> PSDU bits "
                      << fec_encoded_length(scheme, (describe_len + kMhrOctets) * 8) << " coded, chips SHR "
                      << oh.layout.shr_chips << " PHR " << oh.layout.phr_chips << " PSDU " << oh.layout.psdu_chips
                      << ", efficiency " << oh.efficiency << '\n';
            return kExitOk;
        }

        if (*encode) {
            const auto& m = mode_of(g);
            const auto payload = payload_from(in_path, length, g.seed);
            const Frame frame = assemble_frame(payload, m, dimming_of(g), Mhr{0x0001, 0});
            if (dump) std::cout << frame_hex_dump(frame);
            const std::string text = chips_text(frame_line_chips(frame, dimming_of(g)));
            if (!out_path.empty()) write_file(out_path, std::vector<std::uint8_t>(text.begin(), text.end()));
            else if (!dump) std::cout << text;
            return kExitOk;
        }

        if (*decode_chips) {
            // Hard-decision chips through the receiver at oversample 2.
            const auto chips = chips_from_text(read_file(in_path));
            const PhyType phy = phy_of(g);
            const auto& m = mode_of(g);
            Waveform w;
            w.oversample = 2;
            w.sample_rate = static_cast<double>(m.optical_clock_hz) * 2;
            for (std::size_t i = 0; i < chips.size(); ++i) {
                const double v = chips[i];
                if (m.modulation == Modulation::Vppm) {
                    w.samples.push_back(v ? 0.0 : 1.0);
                    w.samples.push_back(v ? 1.0 : 0.0);
                } else {
                    w.samples.insert(w.samples.end(), 2, v);
                }
            }
            const auto report = receive_frame(w, phy);
            std::cout << to_key_value(report);
            if (report.ok() && !out_path.empty()) write_file(out_path, report.payload);
            return report_exit(report);
        }

        if (*modulate) {
            const auto& m = mode_of(g);
            const auto payload = payload_from(in_path, length, g.seed);
            const auto dim = dimming_of(g);
            const Frame frame = assemble_frame(payload, m, dim, Mhr{0x0001, 0});
            const Waveform w = padded_waveform(frame, dim, g.oversample, idle_clocks);
            write_waveform(out_path, w, WaveformInfo{w.sample_rate, w.oversample, m.phy, m.index, g.dimming});
            std::cout << "samples=" << w.size() << "\nsample_rate=" << w.sample_rate << '\n';
            return kExitOk;
        }

        if (*demodulate) {
            WaveformInfo info;
            const Waveform w = read_waveform(in_path, &info);
            const Modulation mod = modulation_for_clock(info.phy, static_cast<std::uint64_t>(std::llround(w.optical_clock_hz())));
            const std::size_t phase = recover_timing(w, mod);
            const BitSequence chips = mod == Modulation::Vppm ? vppm_demodulate(w, phase) : ook_demodulate(w, phase);
            const std::string text = chips_text(chips);
            if (!out_path.empty()) write_file(out_path, std::vector<std::uint8_t>(text.begin(), text.end()));
            else std::cout << text;
            return kExitOk;
        }

        if (*decode) {
            WaveformInfo info;
            const Waveform w = read_waveform(in_path, &info);
            const auto report = receive_frame(w, info.phy);
            std::cout << to_key_value(report);
            if ((report.ok() || report.payload_best_effort) && !out_path.empty()) write_file(out_path, report.payload);
            return report_exit(report);
        }

        if (*simulate) {
            const auto& m = mode_of(g);
            const auto payload = payload_from(in_path, length, g.seed);
            const auto cfg = channel_of(g);
            const auto result = run_loopback(m, payload, cfg, dimming_of(g), g.seed, g.oversample);
            std::cout << to_key_value(result.report);
            std::cout << "payload_match=" << (result.pass ? 1 : 0) << '\n';
            return result.pass ? kExitOk : kExitDecode;
        }

        if (*sweep) {
            const auto& m = mode_of(g);
            SweepSpec spec;
            spec.mode = m;
            spec.frames_per_point = frames;
            spec.payload_length = length;
            spec.dimming = dimming_of(g);
            spec.channel = channel_of(g);
            spec.seed = g.seed;
            spec.oversample = g.oversample;
            const double swing =
                m.modulation == Modulation::Ook && spec.dimming.ook_method == OokDimming::LevelRedefinition &&
                        spec.dimming.target_percent != 50
                    ? ook_levels(spec.dimming.target_percent).on - ook_levels(spec.dimming.target_percent).off
                    : 1.0;
            const auto snrs = parse_list(snr_list);
            for (double s : snrs) spec.noise_sigmas.push_back(noise_sigma_for_snr(s, swing, effective_gain(spec.channel)));
            const auto result = ber_sweep(spec);
            std::cout << "snr_db,ber,fer,ci_lo,ci_hi,corrected\n";
            for (std::size_t i = 0; i < result.points.size(); ++i) {
                const auto& p = result.points[i];
                std::printf("%.2f,%.6g,%.6g,%.6g,%.6g,%zu\n", snrs[i], p.ber, p.fer, p.ber_ci.lo, p.ber_ci.hi,
                            p.corrected_symbols);
            }
            return kExitOk;
        }

        if (*sendfile) {
            const auto& m = mode_of(g);
            const auto data = read_file(in_path);
            const auto result = transfer_file(data, m, channel_of(g), dimming_of(g), g.seed, chunk, g.oversample);
            std::cout << "frames=" << result.frames << "\nframes_failed=" << result.frames_failed
                      << "\nsent_sha256=" << result.sent_digest << "\nreceived_sha256=" << result.received_digest
                      << "\nverified=" << (result.ok() ? 1 : 0) << '\n';
            if (!out_path.empty()) write_file(out_path, result.received);
            return result.ok() ? kExitOk : kExitDecode;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::DecodeFailure:
        case ErrorKind::HeaderCorrupt:
        case ErrorKind::NoFrame:
        case ErrorKind::InvalidSymbol:
        case ErrorKind::FramingError: return kExitDecode;
        default: return kExitUsage;
        }
    }
    return kExitOk;
}

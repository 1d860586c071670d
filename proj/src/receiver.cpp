#include "vlcphy/receiver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "vlcphy/modem.hpp"
#include "vlcphy/rll.hpp"

namespace vlc {
namespace {

struct ShrTemplates {
    // zero-mean per topology
    std::array<std::vector<double>, kTopologies> chips;
    double norm = 0.0;       // ||t||, equal across topologies
    double tdp_norm = 0.0;   // max over topologies of ||t restricted to TDP||

    ShrTemplates() {
        for (int tp = 0; tp < kTopologies; ++tp) {
            const auto bits = shr_bits(tp);
            const double mean = static_cast<double>(bits.count_ones()) / static_cast<double>(bits.size());
            auto& t = chips[static_cast<std::size_t>(tp)];
            t.resize(bits.size());
            for (std::size_t c = 0; c < bits.size(); ++c) t[c] = bits[c] - mean;
            double n2 = 0.0, b2 = 0.0;
            for (std::size_t c = 0; c < t.size(); ++c) {
                n2 += t[c] * t[c];
                if (c >= kFlpBits) b2 += t[c] * t[c];
            }
            norm = std::max(norm, std::sqrt(n2));
            tdp_norm = std::max(tdp_norm, std::sqrt(b2));
        }
    }
};

const ShrTemplates& templates() {
    static const ShrTemplates t;
    return t;
}

RxReport failure(RxReport r, ErrorKind kind, RxStage stage, std::string message) {
    r.error = kind;
    r.stage = stage;
    r.message = std::move(message);
    return r;
}

std::uint64_t clock_of(const Waveform& wave) {
    return static_cast<std::uint64_t>(std::llround(wave.optical_clock_hz()));
}

}  // namespace

std::vector<double> chip_statistic(std::span<const double> samples, int oversample, Modulation modulation,
                                   int vppm_width_percent) {
    const auto n = static_cast<std::size_t>(oversample);
    if (samples.size() < n) return {};
    if (modulation == Modulation::Vppm && (vppm_width_percent != 50 || n % 2 != 0)) {
        const auto h = vppm_matched_filter(oversample, vppm_width_percent);
        std::vector<double> stat(samples.size() - n + 1);
        for (std::size_t i = 0; i < stat.size(); ++i)
            stat[i] = std::inner_product(h.begin(), h.end(), samples.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
        return stat;
    }
    std::vector<double> prefix(samples.size() + 1, 0.0);
    std::partial_sum(samples.begin(), samples.end(), prefix.begin() + 1);
    std::vector<double> stat(samples.size() - n + 1);
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < stat.size(); ++i) {
        if (modulation == Modulation::Ook)
            stat[i] = prefix[i + n] - prefix[i];
        else
            stat[i] = (prefix[i + n] - prefix[i + half]) - (prefix[i + half] - prefix[i]);
    }
    return stat;
}

double shr_correlation(std::span<const double> stat, int oversample, std::size_t offset, int topology) {
    const auto n = static_cast<std::size_t>(oversample);
    const auto& t = templates().chips[static_cast<std::size_t>(topology)];
    if (offset + (t.size() - 1) * n >= stat.size()) return 0.0;
    double s1 = 0.0, s2 = 0.0, dot = 0.0;
    for (std::size_t c = 0; c < t.size(); ++c) {
        const double z = stat[offset + c * n];
        s1 += z;
        s2 += z * z;
        dot += t[c] * z;
    }
    const double k = static_cast<double>(t.size());
    const double var = s2 - s1 * s1 / k;
    if (var <= 1e-9 * (s2 + 1e-300)) return 0.0;
    return dot / (templates().norm * std::sqrt(var));
}

namespace {

// TDPs are shifts of one m-sequence by 4 chips per topology, so an SHR
// also correlates well a few chips before its true start. Refining over one
// TDP period past the first crossing reaches the true peak.
constexpr std::size_t kRefineChips = kTdpPeriod + 1;

std::optional<SyncResult> scan_statistic(std::span<const double> stat, std::size_t n, const DetectorConfig& config,
                                         std::size_t search_from) {
    const auto& tpl = templates();
    const std::size_t k = kShrBits;
    if (stat.size() < (k - 1) * n + 1 || search_from > stat.size() - (k - 1) * n - 1) return std::nullopt;
    const std::size_t last = stat.size() - (k - 1) * n - 1;

    // Running decimated sums per residue class, recomputed periodically to
    // bound rounding drift.
    auto exact_sums = [&](std::size_t i, double& s1, double& s2) {
        s1 = s2 = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double z = stat[i + c * n];
            s1 += z;
            s2 += z * z;
        }
    };
    std::vector<double> sum1(n), sum2(n);
    std::vector<std::size_t> steps(n, 0);
    for (std::size_t r = 0; r < n && search_from + r <= last; ++r)
        exact_sums(search_from + r, sum1[r], sum2[r]);

    const double kd = static_cast<double>(k);
    auto score_at = [&](std::size_t i, double s1, double s2, int& best_topology) -> double {
        const double var = s2 - s1 * s1 / kd;
        if (var <= 1e-9 * (s2 + 1e-300)) return 0.0;
        const double spread = std::sqrt(var);
        const double mean = s1 / kd;
        const auto& t0 = tpl.chips[0];
        double flp = 0.0, flp_weight = 0.0;
        for (std::size_t c = 0; c < kFlpBits; ++c) {
            flp += t0[c] * stat[i + c * n];
            flp_weight += t0[c];
        }
        const double flp_centered = flp - mean * flp_weight;
        if (flp_centered + tpl.tdp_norm * spread < config.threshold * tpl.norm * spread) return 0.0;
        double best = -1.0;
        for (int tp = 0; tp < kTopologies; ++tp) {
            const auto& t = tpl.chips[static_cast<std::size_t>(tp)];
            double dot = flp;
            for (std::size_t c = kFlpBits; c < k; ++c) dot += t[c] * stat[i + c * n];
            const double s = dot / (tpl.norm * spread);
            if (s > best) {
                best = s;
                best_topology = tp;
            }
        }
        return best;
    };

    for (std::size_t i = search_from; i <= last; ++i) {
        const std::size_t r = (i - search_from) % n;
        if (i >= search_from + n) {
            if (++steps[r] % 512 == 0) {
                exact_sums(i, sum1[r], sum2[r]);
            } else {
                const double out = stat[i - n], in = stat[i + (k - 1) * n];
                sum1[r] += in - out;
                sum2[r] += in * in - out * out;
            }
        }
        int topology = 0;
        const double s = score_at(i, sum1[r], sum2[r], topology);
        if (s < config.threshold) continue;

        SyncResult best{i, topology, s};
        for (std::size_t j = i + 1; j < i + kRefineChips * n && j <= last; ++j) {
            double a, b;
            exact_sums(j, a, b);
            int tp = 0;
            const double sj = score_at(j, a, b, tp);
            if (sj > best.correlation_peak) best = {j, tp, sj};
        }
        best.correlation_peak = std::clamp(best.correlation_peak, 0.0, 1.0);
        return best;
    }
    return std::nullopt;
}

}  // namespace

SyncResult detect_frame(const Waveform& wave, Modulation modulation, const DetectorConfig& config,
                        std::size_t search_from) {
    const int oversample = wave.oversample;
    if (oversample < 2) throw Error(ErrorKind::ConfigError, "oversample must be >= 2");
    const auto n = static_cast<std::size_t>(oversample);
    if (wave.size() < kShrBits * n) throw Error(ErrorKind::NoFrame, "stream shorter than a synchronization header");

    if (modulation == Modulation::Ook) {
        const auto stat = chip_statistic(wave.samples, oversample, modulation);
        if (auto r = scan_statistic(stat, n, config, search_from)) return *r;
        throw Error(ErrorKind::NoFrame, "no synchronization header above threshold");
    }

    // One matched filter per pulse width; the best score among detections
    // within the refinement window of the earliest one wins.
    std::vector<SyncResult> found;
    for (int width : config.vppm_widths) {
        const auto stat = chip_statistic(wave.samples, oversample, modulation, width);
        if (auto r = scan_statistic(stat, n, config, search_from)) found.push_back(*r);
    }
    if (found.empty()) throw Error(ErrorKind::NoFrame, "no synchronization header above threshold");
    std::size_t earliest = found.front().frame_start;
    for (const auto& r : found) earliest = std::min(earliest, r.frame_start);
    SyncResult best{};
    best.correlation_peak = -1.0;
    for (const auto& r : found)
        if (r.frame_start < earliest + kRefineChips * n && r.correlation_peak > best.correlation_peak) best = r;
    return best;
}

std::size_t max_energy_phase(std::span<const double> samples, int oversample) {
    const auto n = static_cast<std::size_t>(oversample);
    const std::size_t periods = samples.size() / n;
    if (periods == 0) throw Error(ErrorKind::FramingError, "fewer samples than one period");
    const double mean = std::accumulate(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(periods * n), 0.0) /
                        static_cast<double>(periods * n);
    std::size_t best = 0;
    double best_energy = -1.0;
    for (std::size_t p = 0; p < n; ++p) {
        double e = 0.0;
        for (std::size_t kk = 0; kk < periods; ++kk) {
            const double v = samples[kk * n + p] - mean;
            e += v * v;
        }
        if (e > best_energy) {
            best_energy = e;
            best = p;
        }
    }
    return best;
}

std::size_t recover_timing(std::span<const double> samples, int oversample, Modulation modulation,
                           int vppm_width_percent) {
    if (oversample < 2) throw Error(ErrorKind::ConfigError, "oversample must be >= 2");
    if (samples.size() < 64 * static_cast<std::size_t>(oversample))
        throw Error(ErrorKind::FramingError, "timing recovery needs at least 64 optical clocks");
    return max_energy_phase(chip_statistic(samples, oversample, modulation, vppm_width_percent), oversample);
}

int estimate_vppm_width(std::span<const double> samples, int oversample, std::size_t approx_start, int topology,
                        std::span<const int> widths) {
    const auto n = static_cast<std::size_t>(oversample);
    const std::size_t span_len = kShrBits * n;
    const std::size_t lo = approx_start >= n / 2 ? approx_start - n / 2 : 0;
    const std::size_t hi = std::min(approx_start + n / 2, samples.size() >= span_len ? samples.size() - span_len : 0);
    if (samples.size() < span_len || widths.empty()) return 50;
    const auto shr = shr_bits(topology);

    // Least-squares fit of a * model + b over the SHR; the smallest
    // residual picks the width.
    int best_width = widths.front();
    double best_residual = std::numeric_limits<double>::infinity();
    for (int w : widths) {
        const auto pulses = vppm_pulses(oversample, w);
        std::vector<double> model;
        model.reserve(span_len);
        for (auto b : shr) {
            const auto& p = b ? pulses.bit1 : pulses.bit0;
            model.insert(model.end(), p.begin(), p.end());
        }
        const double mm = std::accumulate(model.begin(), model.end(), 0.0) / static_cast<double>(span_len);
        double smm = 0.0;
        for (double v : model) smm += (v - mm) * (v - mm);
        for (std::size_t o = lo; o <= hi; ++o) {
            const auto x = samples.subspan(o, span_len);
            const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(span_len);
            double sxx = 0.0, sxm = 0.0;
            for (std::size_t i = 0; i < span_len; ++i) {
                sxx += (x[i] - mx) * (x[i] - mx);
                sxm += (x[i] - mx) * (model[i] - mm);
            }
            const double residual = sxx - sxm * sxm / smm;
            if (residual < best_residual) {
                best_residual = residual;
                best_width = w;
            }
        }
    }
    return best_width;
}

std::string_view to_string(RxStage stage) {
    switch (stage) {
    case RxStage::Sync: return "sync";
    case RxStage::Header: return "header";
    case RxStage::Payload: return "payload";
    case RxStage::Done: return "done";
    }
    return "?";
}

namespace {

// Soft per-chip values (positive favours 1) for `count` chips at `start`.
std::vector<double> soft_chips(const Waveform& wave, Modulation modulation, std::size_t start, std::size_t count,
                               double threshold, int width_percent) {
    if (modulation == Modulation::Vppm)
        return vppm_slot_metrics(wave.samples, wave.oversample, start, count, width_percent);
    auto m = ook_chip_means(wave.samples, wave.oversample, start, count);
    for (auto& v : m) v -= threshold;
    return m;
}

BitSequence hard(std::span<const double> soft) {
    BitSequence b;
    b.reserve(soft.size());
    for (double v : soft) b.push_back(v > 0.0);
    return b;
}

}  // namespace

RxReport receive_frame(const Waveform& wave, PhyType phy, const RxConfig& config, std::size_t search_from) {
    RxReport report;
    const int oversample = wave.oversample;
    const auto n = static_cast<std::size_t>(oversample);

    Modulation modulation;
    try {
        modulation = modulation_for_clock(phy, clock_of(wave));
    } catch (const Error& e) {
        return failure(std::move(report), e.kind(), RxStage::Sync, e.what());
    }

    // synchronization
    SyncResult sync;
    try {
        sync = detect_frame(wave, modulation, config.detector, search_from);
    } catch (const Error& e) {
        return failure(std::move(report), e.kind(), RxStage::Sync, e.what());
    }
    report.sync = sync;

    int width = 50;
    if (modulation == Modulation::Vppm) {
        width = estimate_vppm_width(wave.samples, oversample, sync.frame_start, sync.topology,
                                    config.detector.vppm_widths);
        report.vppm_width_estimate = width;
    }
    const std::size_t window_start = sync.frame_start >= n / 2 ? sync.frame_start - n / 2 : 0;
    const std::size_t window_len = std::min(kShrBits * n + n, wave.size() - window_start);
    const std::size_t phase = recover_timing(std::span(wave.samples).subspan(window_start, window_len), oversample,
                                             modulation, width);
    std::size_t start = window_start + phase;
    if (start + kShrBits * n > wave.size()) start = sync.frame_start;
    report.frame_start = start;
    report.timing_phase = start % n;

    double threshold = 0.0, shr_on = 0.0, shr_off = 0.0;
    if (modulation == Modulation::Ook) {
        const auto means = ook_chip_means(wave.samples, oversample, start, kShrBits);
        const auto shr = shr_bits(sync.topology);
        for (std::size_t c = 0; c < kShrBits; ++c) (shr[c] ? shr_on : shr_off) += means[c];
        const double ones = static_cast<double>(shr.count_ones());
        shr_on /= ones;
        shr_off /= static_cast<double>(kShrBits) - ones;
        threshold = 0.5 * (shr_on + shr_off);
    }

    // header
    report.stage = RxStage::Header;
    const std::size_t phr_start = start + kShrBits * n;
    const std::size_t phr_chips = phr_chip_count(phy, modulation);
    if (phr_start + phr_chips * n > wave.size())
        return failure(std::move(report), ErrorKind::HeaderCorrupt, RxStage::Header, "stream ends inside the PHR");
    const auto phr_soft = soft_chips(wave, modulation, phr_start, phr_chips, threshold, width);
    const auto phr_fec = phr_fec_scheme(phy);
    const auto phr_rll = phr_line_code(phy, modulation);
    try {
        auto coded = rll_decode_soft(phr_rll, phr_soft);
        coded.resize(fec_encoded_length(phr_fec, kPhrBits));
        auto decoded = fec_decode(coded, phr_fec, kPhrBits);
        report.phr_fec = decoded.report;
        report.phr = parse_phr(decoded.bits);
    } catch (const FecDecodeFailure& e) {
        report.phr_fec = e.report();
        return failure(std::move(report), ErrorKind::HeaderCorrupt, RxStage::Header, "PHR uncorrectable");
    } catch (const Error& e) {
        return failure(std::move(report), e.kind(), RxStage::Header, e.what());
    }
    const Phr& phr = *report.phr;
    if (phr.phy != phy)
        return failure(std::move(report), ErrorKind::UnknownMode, RxStage::Header, "PHR names a different PHY");
    const OperatingMode& mode = lookup_mode(phr.phy, phr.mode_index);
    report.mode = mode;
    if (mode.optical_clock_hz != clock_of(wave))
        return failure(std::move(report), ErrorKind::UnknownMode, RxStage::Header,
                       "PHR mode does not run at the received optical clock");
    if (phr.psdu_length < kMhrOctets)
        return failure(std::move(report), ErrorKind::HeaderCorrupt, RxStage::Header, "PSDU shorter than the MHR");

    CompensationMap layout;
    const std::size_t data_chips = psdu_chip_count(mode, phr.psdu_length);
    layout.data_chips = layout.total_chips = data_chips;
    if (phr.compensated) {
        DimmingConfig dim;
        dim.target_percent = phr.dimming_level;
        dim.ook_method = OokDimming::CompensationSymbols;
        dim.compensation_brightness = phr.compensation_brightness;
        dim.subframe_length = config.subframe_length;
        try {
            layout = compensation_layout(data_chips, dim);
        } catch (const Error& e) {
            return failure(std::move(report), ErrorKind::HeaderCorrupt, RxStage::Header, e.what());
        }
        // the header ran at the redefined levels; the PSDU swings 0..1
        const auto levels = ook_levels(phr.dimming_level);
        const double gain = (shr_on - shr_off) / (levels.on - levels.off);
        threshold = shr_off + gain * (0.5 - levels.off);
    }

    // payload
    report.stage = RxStage::Payload;
    const std::size_t psdu_start = phr_start + phr_chips * n;
    report.frame_end = psdu_start + layout.total_chips * n;
    if (report.frame_end > wave.size())
        return failure(std::move(report), ErrorKind::DecodeFailure, RxStage::Payload, "stream ends inside the PSDU");

    int psdu_width = width;
    if (modulation == Modulation::Vppm && phr.dimming_level >= 10 && phr.dimming_level <= 90 &&
        phr.dimming_level % 10 == 0)
        psdu_width = phr.dimming_level;
    const auto line_soft = soft_chips(wave, modulation, psdu_start, layout.total_chips, threshold, psdu_width);
    const auto data_soft = strip_compensation<double>(line_soft, layout);
    report.psdu_chips = hard(data_soft);

    const auto scheme = FecScheme::of(mode);
    const std::size_t psdu_bits = static_cast<std::size_t>(phr.psdu_length) * 8;
    BitSequence psdu;
    try {
        auto coded = rll_decode_soft(mode.rll, data_soft);
        coded.resize(fec_encoded_length(scheme, psdu_bits));
        auto decoded = fec_decode(coded, scheme, psdu_bits);
        report.psdu_fec = decoded.report;
        psdu = std::move(decoded.bits);
    } catch (const FecDecodeFailure& e) {
        report.psdu_fec = e.report();
        const auto bytes = e.best_effort().to_bytes();
        report.mhr = Mhr::from_bytes(bytes);
        report.payload.assign(bytes.begin() + kMhrOctets, bytes.end());
        report.payload_best_effort = true;
        return failure(std::move(report), ErrorKind::DecodeFailure, RxStage::Payload, e.what());
    } catch (const Error& e) {
        return failure(std::move(report), e.kind(), RxStage::Payload, e.what());
    }
    const auto bytes = psdu.to_bytes();
    report.mhr = Mhr::from_bytes(bytes);
    report.payload.assign(bytes.begin() + kMhrOctets, bytes.end());
    report.stage = RxStage::Done;
    return report;
}

std::string to_key_value(const RxReport& r) {
    std::ostringstream os;
    os << "status=" << (r.ok() ? "ok" : std::string(to_string(*r.error))) << '\n';
    os << "stage=" << to_string(r.stage) << '\n';
    if (!r.message.empty()) os << "message=" << r.message << '\n';
    if (r.sync) {
        os << "frame_start=" << r.frame_start << '\n';
        os << "timing_phase=" << r.timing_phase << '\n';
        os << "topology=" << r.sync->topology << '\n';
        os << "correlation_peak=" << r.sync->correlation_peak << '\n';
        if (r.vppm_width_estimate) os << "vppm_width_estimate=" << r.vppm_width_estimate << '\n';
    }
    if (r.phr) {
        os << "phy=" << to_string(r.phr->phy) << '\n';
        os << "mode_index=" << r.phr->mode_index << '\n';
        os << "psdu_length=" << r.phr->psdu_length << '\n';
        os << "dimming=" << r.phr->dimming_level << '\n';
        os << "compensated=" << (r.phr->compensated ? 1 : 0) << '\n';
        os << "phr_corrected=" << r.phr_fec.corrected_symbols() << '\n';
    }
    if (r.mhr) {
        os << "frame_control=" << r.mhr->frame_control << '\n';
        os << "sequence_number=" << static_cast<int>(r.mhr->sequence_number) << '\n';
    }
    if (r.stage == RxStage::Payload || r.stage == RxStage::Done) {
        os << "payload_octets=" << r.payload.size() << '\n';
        os << "psdu_corrected=" << r.psdu_fec.corrected_symbols() << '\n';
        std::size_t failed = 0;
        for (const auto& b : r.psdu_fec.blocks) failed += !b.ok;
        os << "rs_blocks=" << r.psdu_fec.blocks.size() << '\n';
        os << "rs_failed=" << failed << '\n';
        os << "frame_end=" << r.frame_end << '\n';
    }
    return os.str();
}

}  // namespace vlc

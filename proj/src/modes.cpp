#include "vlcphy/modes.hpp"

#include <array>
#include <cstdio>

#include "vlcphy/error.hpp"

namespace vlc {
namespace {

constexpr std::uint64_t kHz = 1000;
constexpr std::uint64_t MHz = 1000 * kHz;

constexpr OperatingMode phy1(int index, Modulation mod, RllCode rll, std::uint64_t clock,
                             std::optional<RsParams> rs, std::optional<CcRate> cc) {
    return OperatingMode{PhyType::PhyI, index, mod, rll, clock, rs, cc};
}

constexpr OperatingMode phy2(int index, Modulation mod, RllCode rll, std::uint64_t clock,
                             std::optional<RsParams> rs) {
    return OperatingMode{PhyType::PhyII, index, mod, rll, clock, rs, std::nullopt};
}

using M = Modulation;
using R = RllCode;

// The last PHY-II rows (60 MHz and 120 MHz) follow the same RS(64,32) /
// RS(160,128) pattern as the 15 and 30 MHz rows, with an uncoded mode at
// 120 MHz only.
constexpr std::array<OperatingMode, 23> kModes = {{
    phy1(0, M::Ook, R::Manchester, 200 * kHz, RsParams{15, 7}, CcRate::OneQuarter),
    phy1(1, M::Ook, R::Manchester, 200 * kHz, RsParams{15, 11}, CcRate::OneThird),
    phy1(2, M::Ook, R::Manchester, 200 * kHz, RsParams{15, 11}, CcRate::TwoThirds),
    phy1(3, M::Ook, R::Manchester, 200 * kHz, RsParams{15, 11}, std::nullopt),
    phy1(4, M::Ook, R::Manchester, 200 * kHz, std::nullopt, std::nullopt),
    phy1(5, M::Vppm, R::FourBSixB, 400 * kHz, RsParams{15, 2}, std::nullopt),
    phy1(6, M::Vppm, R::FourBSixB, 400 * kHz, RsParams{15, 4}, std::nullopt),
    phy1(7, M::Vppm, R::FourBSixB, 400 * kHz, RsParams{15, 7}, std::nullopt),
    phy1(8, M::Vppm, R::FourBSixB, 400 * kHz, std::nullopt, std::nullopt),

    phy2(0, M::Vppm, R::FourBSixB, 3750 * kHz, RsParams{64, 32}),
    phy2(1, M::Vppm, R::FourBSixB, 3750 * kHz, RsParams{160, 128}),
    phy2(2, M::Vppm, R::FourBSixB, 7500 * kHz, RsParams{64, 32}),
    phy2(3, M::Vppm, R::FourBSixB, 7500 * kHz, RsParams{160, 128}),
    phy2(4, M::Vppm, R::FourBSixB, 7500 * kHz, std::nullopt),
    phy2(5, M::Ook, R::EightBTenB, 15 * MHz, RsParams{64, 32}),
    phy2(6, M::Ook, R::EightBTenB, 15 * MHz, RsParams{160, 128}),
    phy2(7, M::Ook, R::EightBTenB, 30 * MHz, RsParams{64, 32}),
    phy2(8, M::Ook, R::EightBTenB, 30 * MHz, RsParams{160, 128}),
    phy2(9, M::Ook, R::EightBTenB, 60 * MHz, RsParams{64, 32}),
    phy2(10, M::Ook, R::EightBTenB, 60 * MHz, RsParams{160, 128}),
    phy2(11, M::Ook, R::EightBTenB, 120 * MHz, RsParams{64, 32}),
    phy2(12, M::Ook, R::EightBTenB, 120 * MHz, RsParams{160, 128}),
    phy2(13, M::Ook, R::EightBTenB, 120 * MHz, std::nullopt),
}};

constexpr std::size_t kPhy1Count = 9;

}  // namespace

std::span<const OperatingMode> list_modes() { return kModes; }

std::span<const OperatingMode> list_modes(PhyType phy) {
    std::span<const OperatingMode> all = kModes;
    return phy == PhyType::PhyI ? all.first(kPhy1Count) : all.subspan(kPhy1Count);
}

const OperatingMode& lookup_mode(PhyType phy, int index) {
    auto modes = list_modes(phy);
    if (index < 0 || static_cast<std::size_t>(index) >= modes.size())
        throw Error(ErrorKind::NotFound, std::string("no mode ") + std::to_string(index) +
                                             " in " + std::string(to_string(phy)));
    return modes[static_cast<std::size_t>(index)];
}

Rational rll_rate(RllCode code) {
    switch (code) {
    case RllCode::Manchester: return {1, 2};
    case RllCode::FourBSixB: return {2, 3};
    case RllCode::EightBTenB: return {4, 5};
    }
    return {1, 1};
}

Rational cc_rate_value(CcRate rate) {
    switch (rate) {
    case CcRate::OneQuarter: return {1, 4};
    case CcRate::OneThird: return {1, 3};
    case CcRate::TwoThirds: return {2, 3};
    }
    return {1, 1};
}

Rational data_rate(const OperatingMode& mode) {
    Rational r(static_cast<std::int64_t>(mode.optical_clock_hz));
    r = r * rll_rate(mode.rll);
    if (mode.rs) r = r * Rational(mode.rs->k, mode.rs->n);
    if (mode.cc) r = r * cc_rate_value(*mode.cc);
    return r;
}

Modulation modulation_for_clock(PhyType phy, std::uint64_t optical_clock_hz) {
    for (const auto& m : list_modes(phy))
        if (m.optical_clock_hz == optical_clock_hz) return m.modulation;
    throw Error(ErrorKind::UnknownMode, "no " + std::string(to_string(phy)) + " mode at " +
                                            std::to_string(optical_clock_hz) + " Hz");
}

std::string format_rate(Rational bps) {
    const double v = bps.to_double();
    const bool mega = v >= 1e6;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g %s", mega ? v / 1e6 : v / 1e3, mega ? "Mb/s" : "kb/s");
    return buf;
}

std::string_view to_string(PhyType phy) { return phy == PhyType::PhyI ? "PHY-I" : "PHY-II"; }

std::string_view to_string(Modulation modulation) {
    return modulation == Modulation::Ook ? "OOK" : "VPPM";
}

std::string_view to_string(RllCode code) {
    switch (code) {
    case RllCode::Manchester: return "Manchester";
    case RllCode::FourBSixB: return "4B6B";
    case RllCode::EightBTenB: return "8B10B";
    }
    return "?";
}

std::string_view to_string(CcRate rate) {
    switch (rate) {
    case CcRate::OneQuarter: return "1/4";
    case CcRate::OneThird: return "1/3";
    case CcRate::TwoThirds: return "2/3";
    }
    return "?";
}

std::optional<PhyType> parse_phy(std::string_view text) {
    if (text == "1" || text == "I" || text == "PHY-I" || text == "phy1") return PhyType::PhyI;
    if (text == "2" || text == "II" || text == "PHY-II" || text == "phy2") return PhyType::PhyII;
    return std::nullopt;
}

}  // namespace vlc

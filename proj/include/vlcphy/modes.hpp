#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "vlcphy/rational.hpp"

namespace vlc {

enum class PhyType { PhyI, PhyII };
enum class Modulation { Ook, Vppm };
enum class RllCode { Manchester, FourBSixB, EightBTenB };
enum class CcRate { OneQuarter, OneThird, TwoThirds };

struct RsParams {
    int n = 0;
    int k = 0;
    friend bool operator==(const RsParams&, const RsParams&) = default;
};

// One row of the PHY operating-mode table.
struct OperatingMode {
    PhyType phy = PhyType::PhyI;
    int index = 0;
    Modulation modulation = Modulation::Ook;
    RllCode rll = RllCode::Manchester;
    std::uint64_t optical_clock_hz = 0;
    std::optional<RsParams> rs;
    std::optional<CcRate> cc;

    friend bool operator==(const OperatingMode&, const OperatingMode&) = default;
};

// 9 PHY-I modes followed by 14 PHY-II modes, in table order.
std::span<const OperatingMode> list_modes();
std::span<const OperatingMode> list_modes(PhyType phy);

// Throws Error{NotFound} for an unregistered (phy, index).
const OperatingMode& lookup_mode(PhyType phy, int index);

Rational rll_rate(RllCode code);
Rational cc_rate_value(CcRate rate);
Rational data_rate(const OperatingMode& mode);

// The modulation used by every mode of `phy` at this optical clock.
// Throws Error{UnknownMode} when no mode runs at that clock.
Modulation modulation_for_clock(PhyType phy, std::uint64_t optical_clock_hz);

// "11.67 kb/s", "96 Mb/s": four significant digits, trailing zeros dropped.
std::string format_rate(Rational bps);

std::string_view to_string(PhyType phy);
std::string_view to_string(Modulation modulation);
std::string_view to_string(RllCode code);
std::string_view to_string(CcRate rate);

std::optional<PhyType> parse_phy(std::string_view text);

}  // namespace vlc

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vlcphy/bits.hpp"
#include "vlcphy/dimming.hpp"
#include "vlcphy/fec.hpp"
#include "vlcphy/modes.hpp"

namespace vlc {

inline constexpr std::size_t kFlpBits = 64;
inline constexpr std::size_t kTdpPeriod = 15;
inline constexpr std::size_t kTdpRepeats = 4;
inline constexpr std::size_t kTdpBits = kTdpPeriod * kTdpRepeats;
inline constexpr std::size_t kShrBits = kFlpBits + kTdpBits;
inline constexpr int kTopologies = 4;

inline constexpr std::size_t kPhrInfoBits = 31;
inline constexpr std::size_t kPhrBits = 47;
inline constexpr std::size_t kMhrOctets = 3;
inline constexpr std::size_t kMaxPsduOctets = 65535;
inline constexpr std::size_t kMaxPayloadOctets = kMaxPsduOctets - kMhrOctets;

// Physical header. Bit layout, MSB first:
//   phy(1) mode_index(5) psdu_length(16) dimming_level(7)
//   compensated(1) compensation_brightness(1) crc16(16)
// The first six bits form the mcs id.
struct Phr {
    PhyType phy = PhyType::PhyI;
    int mode_index = 0;
    std::uint16_t psdu_length = 0;
    int dimming_level = 50;
    bool compensated = false;
    int compensation_brightness = 0;

    friend bool operator==(const Phr&, const Phr&) = default;
};

struct Mhr {
    std::uint16_t frame_control = 0;
    std::uint8_t sequence_number = 0;

    std::vector<std::uint8_t> to_bytes() const;
    static Mhr from_bytes(std::span<const std::uint8_t> bytes);
    friend bool operator==(const Mhr&, const Mhr&) = default;
};

// Throws FramingError for psdu_length > 65535, ConfigError for dimming > 100.
BitSequence build_phr(const OperatingMode& mode, std::size_t psdu_length, int dimming_percent,
                      bool compensated = false, int compensation_brightness = 0);
BitSequence build_phr(const Phr& phr);

// Throws FramingError (wrong length), HeaderCorrupt (CRC or field range),
// UnknownMode (mcs id not registered).
Phr parse_phr(const BitSequence& bits);

BitSequence flp_bits();
// 15-chip m-sequence (x^4 + x + 1) at phase 4*topology, repeated four times.
BitSequence tdp_bits(int topology);
BitSequence shr_bits(int topology);

// PHR coding: PHY-I uses RS(15,7) + CC 1/4 with Manchester; PHY-II uses
// RS(64,32) with the line code of the optical clock's modulation.
FecScheme phr_fec_scheme(PhyType phy);
RllCode phr_line_code(PhyType phy, Modulation modulation);
std::size_t phr_chip_count(PhyType phy, Modulation modulation);

// Chip count of a coded PSDU of `psdu_octets` octets.
std::size_t psdu_chip_count(const OperatingMode& mode, std::size_t psdu_octets);

// FEC then zero-pad to the line code's input block, then line code.
BitSequence encode_section(const BitSequence& bits, const FecScheme& fec, RllCode rll);

struct FrameLayout {
    std::size_t shr_chips = 0;
    std::size_t phr_chips = 0;
    std::size_t psdu_chips = 0;

    std::size_t phr_offset() const noexcept { return shr_chips; }
    std::size_t psdu_offset() const noexcept { return shr_chips + phr_chips; }
    std::size_t total() const noexcept { return shr_chips + phr_chips + psdu_chips; }
    friend bool operator==(const FrameLayout&, const FrameLayout&) = default;
};

struct Frame {
    OperatingMode mode;
    int topology = 0;
    Phr phr;
    Mhr mhr;
    BitSequence shr;
    BitSequence phr_coded;
    BitSequence psdu_coded;
    FrameLayout layout;

    BitSequence chips() const;
};

// Throws FramingError when the payload exceeds kMaxPayloadOctets.
Frame assemble_frame(std::span<const std::uint8_t> payload, const OperatingMode& mode,
                     const DimmingConfig& dimming, const Mhr& mhr, int topology = 0);

struct FrameOverhead {
    FrameLayout layout;
    std::size_t total_bits = 0;
    double efficiency = 0.0;  // payload bits / channel chips
};

FrameOverhead frame_overhead(const OperatingMode& mode, std::size_t payload_octets);

}  // namespace vlc

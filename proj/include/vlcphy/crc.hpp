#pragma once

#include <cstdint>
#include <span>

#include "vlcphy/bits.hpp"

namespace vlc {

// CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF, no reflection, no xorout)
// over an arbitrary number of bits, MSB first.
std::uint16_t crc16_ccitt_false(std::span<const Bit> bits);
std::uint16_t crc16_ccitt_false_bytes(std::span<const std::uint8_t> bytes);

}  // namespace vlc

#include "vlcphy/crc.hpp"

namespace vlc {

std::uint16_t crc16_ccitt_false(std::span<const Bit> bits) {
    std::uint16_t crc = 0xFFFF;
    for (Bit b : bits) {
        const bool top = ((crc >> 15) & 1u) != (b & 1u);
        crc = static_cast<std::uint16_t>(crc << 1);
        if (top) crc ^= 0x1021;
    }
    return crc;
}

std::uint16_t crc16_ccitt_false_bytes(std::span<const std::uint8_t> bytes) {
    const auto bits = BitSequence::from_bytes(bytes);
    return crc16_ccitt_false(bits.view());
}

}  // namespace vlc

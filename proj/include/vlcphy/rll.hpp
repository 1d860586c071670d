#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "vlcphy/bits.hpp"
#include "vlcphy/modes.hpp"

namespace vlc {

// Manchester: 0 -> 01, 1 -> 10.
BitSequence manchester_encode(const BitSequence& data);
BitSequence manchester_decode(const BitSequence& chips);

// 4B6B: every nibble maps to a weight-3 six-bit word.
BitSequence encode_4b6b(const BitSequence& data);
BitSequence decode_4b6b(const BitSequence& coded);

// Codeword for each nibble, first transmitted chip in bit 5.
const std::array<std::uint8_t, 16>& table_4b6b();

enum class RunningDisparity : int { Negative = -1, Positive = 1 };

struct Coded8b10b {
    BitSequence bits;
    RunningDisparity disparity = RunningDisparity::Negative;
};

// Classic 5b/6b + 3b/4b transmission characters, data characters only.
// Input bytes are read MSB first from the sequence; each 10-bit block is
// emitted in transmission order abcdei fghj.
Coded8b10b encode_8b10b(const BitSequence& data, RunningDisparity state);
Coded8b10b decode_8b10b(const BitSequence& coded, RunningDisparity state);

// 10-bit block for one byte (first transmitted chip in bit 9) and the
// disparity after it.
std::pair<std::uint16_t, RunningDisparity> encode_8b10b_byte(std::uint8_t byte,
                                                            RunningDisparity state);

// Block sizes of the line code: input bits -> output chips.
std::size_t rll_input_block(RllCode code);
std::size_t rll_output_block(RllCode code);
std::size_t rll_encoded_length(RllCode code, std::size_t data_bits);

// Whole-stream helpers; 8B10B always starts from RunningDisparity::Negative.
BitSequence rll_encode(RllCode code, const BitSequence& data);
BitSequence rll_decode(RllCode code, const BitSequence& chips);

// Maximum-correlation decoding from per-chip soft values (positive favours a
// 1 chip). Always produces output; a block with no exact match resolves to
// the closest valid codeword.
BitSequence rll_decode_soft(RllCode code, std::span<const double> soft);

}  // namespace vlc

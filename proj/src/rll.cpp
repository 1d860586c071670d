#include "vlcphy/rll.hpp"

#include <string>

#include "vlcphy/error.hpp"

namespace vlc {
namespace {

void require_multiple(std::size_t length, std::size_t block, const char* what) {
    if (length % block != 0)
        throw Error(ErrorKind::FramingError, std::string(what) + ": length " +
                                                 std::to_string(length) + " not a multiple of " +
                                                 std::to_string(block));
}

constexpr std::array<std::uint8_t, 16> k4b6b = {
    0b001110, 0b001101, 0b010011, 0b010110, 0b010101, 0b100011, 0b100110, 0b100101,
    0b011001, 0b011010, 0b011100, 0b110001, 0b110010, 0b101001, 0b101010, 0b101100,
};

// 64-entry inverse; -1 marks words outside the code.
constexpr std::array<int, 64> make_4b6b_inverse() {
    std::array<int, 64> inv{};
    for (auto& v : inv) v = -1;
    for (int i = 0; i < 16; ++i) inv[k4b6b[static_cast<std::size_t>(i)]] = i;
    return inv;
}
constexpr auto k4b6bInverse = make_4b6b_inverse();

// 5b/6b sub-block, abcdei with a in bit 5: {RD-, RD+}.
constexpr std::array<std::array<std::uint8_t, 2>, 32> k5b6b = {{
    {0b100111, 0b011000}, {0b011101, 0b100010}, {0b101101, 0b010010}, {0b110001, 0b110001},
    {0b110101, 0b001010}, {0b101001, 0b101001}, {0b011001, 0b011001}, {0b111000, 0b000111},
    {0b111001, 0b000110}, {0b100101, 0b100101}, {0b010101, 0b010101}, {0b110100, 0b110100},
    {0b001101, 0b001101}, {0b101100, 0b101100}, {0b011100, 0b011100}, {0b010111, 0b101000},
    {0b011011, 0b100100}, {0b100011, 0b100011}, {0b010011, 0b010011}, {0b110010, 0b110010},
    {0b001011, 0b001011}, {0b101010, 0b101010}, {0b011010, 0b011010}, {0b111010, 0b000101},
    {0b110011, 0b001100}, {0b100110, 0b100110}, {0b010110, 0b010110}, {0b110110, 0b001001},
    {0b001110, 0b001110}, {0b101110, 0b010001}, {0b011110, 0b100001}, {0b101011, 0b010100},
}};

// 3b/4b sub-block, fghj with f in bit 3: {RD-, RD+}. Index 7 is the primary
// D.x.P7 encoding; kA7 is the alternate.
constexpr std::array<std::array<std::uint8_t, 2>, 8> k3b4b = {{
    {0b1011, 0b0100}, {0b1001, 0b1001}, {0b0101, 0b0101}, {0b1100, 0b0011},
    {0b1101, 0b0010}, {0b1010, 0b1010}, {0b0110, 0b0110}, {0b1110, 0b0001},
}};
constexpr std::array<std::uint8_t, 2> kA7 = {0b0111, 0b1000};

int popcount(unsigned v) { return __builtin_popcount(v); }

RunningDisparity after(RunningDisparity rd, unsigned code, int width) {
    const int ones = popcount(code);
    if (2 * ones == width) return rd;
    return ones * 2 > width ? RunningDisparity::Positive : RunningDisparity::Negative;
}

struct Table8b10b {
    // encode[rd][byte] -> (code, rd_out); rd index 0 = Negative.
    std::array<std::array<std::pair<std::uint16_t, RunningDisparity>, 256>, 2> encode{};
    // decode[rd][code] -> byte or -1; rd_out recomputed from the code.
    std::array<std::array<std::int16_t, 1024>, 2> decode{};
};

int rd_index(RunningDisparity rd) { return rd == RunningDisparity::Negative ? 0 : 1; }

Table8b10b build_8b10b() {
    Table8b10b t;
    for (auto& row : t.decode) row.fill(-1);
    for (int r = 0; r < 2; ++r) {
        const auto rd0 = r == 0 ? RunningDisparity::Negative : RunningDisparity::Positive;
        for (int byte = 0; byte < 256; ++byte) {
            const int x = byte & 0x1f;
            const int y = byte >> 5;
            // 5b/6b: EDCBA is the low five bits, A = bit 0.
            const unsigned six = k5b6b[static_cast<std::size_t>(x)][static_cast<std::size_t>(rd_index(rd0))];
            const auto rd1 = after(rd0, six, 6);
            unsigned four;
            const bool alt = (y == 7) && ((rd1 == RunningDisparity::Negative && (x == 17 || x == 18 || x == 20)) ||
                                          (rd1 == RunningDisparity::Positive && (x == 11 || x == 13 || x == 14)));
            if (alt)
                four = kA7[static_cast<std::size_t>(rd_index(rd1))];
            else
                four = k3b4b[static_cast<std::size_t>(y)][static_cast<std::size_t>(rd_index(rd1))];
            const auto rd2 = after(rd1, four, 4);
            const auto code = static_cast<std::uint16_t>((six << 4) | four);
            t.encode[static_cast<std::size_t>(r)][static_cast<std::size_t>(byte)] = {code, rd2};
            t.decode[static_cast<std::size_t>(r)][code] = static_cast<std::int16_t>(byte);
        }
    }
    return t;
}

const Table8b10b& table_8b10b() {
    static const Table8b10b t = build_8b10b();
    return t;
}

}  // namespace

BitSequence manchester_encode(const BitSequence& data) {
    BitSequence out;
    out.reserve(data.size() * 2);
    for (auto b : data) {
        out.push_back(b);
        out.push_back(!b);
    }
    return out;
}

BitSequence manchester_decode(const BitSequence& chips) {
    require_multiple(chips.size(), 2, "manchester_decode");
    BitSequence out;
    out.reserve(chips.size() / 2);
    for (std::size_t i = 0; i < chips.size(); i += 2) {
        if (chips[i] == chips[i + 1])
            throw Error(ErrorKind::InvalidSymbol, "invalid Manchester symbol at chip " + std::to_string(i), i);
        out.push_back(chips[i]);
    }
    return out;
}

const std::array<std::uint8_t, 16>& table_4b6b() { return k4b6b; }

BitSequence encode_4b6b(const BitSequence& data) {
    require_multiple(data.size(), 4, "encode_4b6b");
    BitSequence out;
    out.reserve(data.size() / 2 * 3);
    for (std::size_t i = 0; i < data.size(); i += 4)
        out.append_uint(k4b6b[data.read_uint(i, 4)], 6);
    return out;
}

BitSequence decode_4b6b(const BitSequence& coded) {
    require_multiple(coded.size(), 6, "decode_4b6b");
    BitSequence out;
    out.reserve(coded.size() / 3 * 2);
    for (std::size_t i = 0; i < coded.size(); i += 6) {
        const int v = k4b6bInverse[coded.read_uint(i, 6)];
        if (v < 0) throw Error(ErrorKind::InvalidSymbol, "invalid 4B6B word at chip " + std::to_string(i), i);
        out.append_uint(static_cast<std::uint64_t>(v), 4);
    }
    return out;
}

std::pair<std::uint16_t, RunningDisparity> encode_8b10b_byte(std::uint8_t byte, RunningDisparity state) {
    return table_8b10b().encode[static_cast<std::size_t>(rd_index(state))][byte];
}

Coded8b10b encode_8b10b(const BitSequence& data, RunningDisparity state) {
    require_multiple(data.size(), 8, "encode_8b10b");
    Coded8b10b out{{}, state};
    out.bits.reserve(data.size() / 4 * 5);
    for (std::size_t i = 0; i < data.size(); i += 8) {
        auto [code, rd] = encode_8b10b_byte(static_cast<std::uint8_t>(data.read_uint(i, 8)), out.disparity);
        out.bits.append_uint(code, 10);
        out.disparity = rd;
    }
    return out;
}

Coded8b10b decode_8b10b(const BitSequence& coded, RunningDisparity state) {
    require_multiple(coded.size(), 10, "decode_8b10b");
    const auto& t = table_8b10b();
    Coded8b10b out{{}, state};
    out.bits.reserve(coded.size() / 5 * 4);
    for (std::size_t i = 0; i < coded.size(); i += 10) {
        const auto code = static_cast<std::uint16_t>(coded.read_uint(i, 10));
        const int byte = t.decode[static_cast<std::size_t>(rd_index(out.disparity))][code];
        if (byte < 0)
            throw Error(ErrorKind::InvalidSymbol,
                        "invalid 8B10B block or disparity violation at chip " + std::to_string(i), i);
        out.bits.append_uint(static_cast<std::uint64_t>(byte), 8);
        out.disparity = t.encode[static_cast<std::size_t>(rd_index(out.disparity))][static_cast<std::size_t>(byte)].second;
    }
    return out;
}

std::size_t rll_input_block(RllCode code) {
    switch (code) {
    case RllCode::Manchester: return 1;
    case RllCode::FourBSixB: return 4;
    case RllCode::EightBTenB: return 8;
    }
    return 1;
}

std::size_t rll_output_block(RllCode code) {
    switch (code) {
    case RllCode::Manchester: return 2;
    case RllCode::FourBSixB: return 6;
    case RllCode::EightBTenB: return 10;
    }
    return 2;
}

std::size_t rll_encoded_length(RllCode code, std::size_t data_bits) {
    return data_bits / rll_input_block(code) * rll_output_block(code);
}

BitSequence rll_encode(RllCode code, const BitSequence& data) {
    switch (code) {
    case RllCode::Manchester: return manchester_encode(data);
    case RllCode::FourBSixB: return encode_4b6b(data);
    case RllCode::EightBTenB: return encode_8b10b(data, RunningDisparity::Negative).bits;
    }
    return {};
}

BitSequence rll_decode(RllCode code, const BitSequence& chips) {
    switch (code) {
    case RllCode::Manchester: return manchester_decode(chips);
    case RllCode::FourBSixB: return decode_4b6b(chips);
    case RllCode::EightBTenB: return decode_8b10b(chips, RunningDisparity::Negative).bits;
    }
    return {};
}

namespace {

double correlate(std::span<const double> soft, unsigned code, int width) {
    double acc = 0.0;
    for (int i = 0; i < width; ++i) {
        const bool one = (code >> (width - 1 - i)) & 1u;
        acc += one ? soft[static_cast<std::size_t>(i)] : -soft[static_cast<std::size_t>(i)];
    }
    return acc;
}

unsigned hard_word(std::span<const double> soft) {
    unsigned v = 0;
    for (double s : soft) v = (v << 1) | (s > 0.0 ? 1u : 0u);
    return v;
}

}  // namespace

BitSequence rll_decode_soft(RllCode code, std::span<const double> soft) {
    const std::size_t block = rll_output_block(code);
    require_multiple(soft.size(), block, "rll_decode_soft");
    BitSequence out;
    out.reserve(soft.size() / block * rll_input_block(code));
    switch (code) {
    case RllCode::Manchester:
        for (std::size_t i = 0; i < soft.size(); i += 2) out.push_back(soft[i] > soft[i + 1]);
        break;
    case RllCode::FourBSixB:
        for (std::size_t i = 0; i < soft.size(); i += 6) {
            auto s = soft.subspan(i, 6);
            int best = k4b6bInverse[hard_word(s)];
            if (best < 0) {
                double best_score = -1e300;
                for (int v = 0; v < 16; ++v) {
                    const double score = correlate(s, k4b6b[static_cast<std::size_t>(v)], 6);
                    if (score > best_score) {
                        best_score = score;
                        best = v;
                    }
                }
            }
            out.append_uint(static_cast<std::uint64_t>(best), 4);
        }
        break;
    case RllCode::EightBTenB: {
        const auto& t = table_8b10b();
        auto rd = RunningDisparity::Negative;
        for (std::size_t i = 0; i < soft.size(); i += 10) {
            auto s = soft.subspan(i, 10);
            const auto r = static_cast<std::size_t>(rd_index(rd));
            int best = t.decode[r][hard_word(s)];
            if (best < 0) {
                double best_score = -1e300;
                for (int v = 0; v < 256; ++v) {
                    const double score = correlate(s, t.encode[r][static_cast<std::size_t>(v)].first, 10);
                    if (score > best_score) {
                        best_score = score;
                        best = v;
                    }
                }
            }
            out.append_uint(static_cast<std::uint64_t>(best), 8);
            rd = t.encode[r][static_cast<std::size_t>(best)].second;
        }
        break;
    }
    }
    return out;
}

}  // namespace vlc

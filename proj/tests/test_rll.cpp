#include <doctest.h>

#include <bit>
#include <random>
#include <set>

#include "helpers.hpp"
#include "vlcphy/rll.hpp"

using namespace vlc;

namespace {

BitSequence nibbles(std::uint32_t value, int count) {
    BitSequence b;
    b.append_uint(value, 4 * count);
    return b;
}

int disparity_of(const BitSequence& bits) {
    const auto ones = static_cast<int>(bits.count_ones());
    return ones - (static_cast<int>(bits.size()) - ones);
}

}  // namespace

TEST_CASE("Manchester examples") {
    CHECK(manchester_encode({}).size() == 0);
    CHECK(manchester_encode({0}) == BitSequence{0, 1});
    CHECK(manchester_encode({1, 0, 1}) == BitSequence{1, 0, 0, 1, 1, 0});
    CHECK(manchester_decode({0, 1}) == BitSequence{0});
    CHECK(manchester_decode({1, 0, 0, 1}) == BitSequence{1, 0});
    CHECK(error_kind([] { manchester_decode({1, 1}); }) == ErrorKind::InvalidSymbol);
    CHECK(error_position([] { manchester_decode({1, 1}); }) == 0);
    CHECK(error_position([] { manchester_decode({0, 1, 0, 0}); }) == 2);
    CHECK(error_kind([] { manchester_decode({0, 1, 0}); }) == ErrorKind::FramingError);
}

TEST_CASE("Manchester exhaustive to 12 bits: roundtrip, balance, run length") {
    for (int len = 0; len <= 12; ++len)
        for (std::uint32_t v = 0; v < (1u << len); ++v) {
            BitSequence x;
            x.append_uint(v, len);
            const auto c = manchester_encode(x);
            REQUIRE(c.size() == 2 * x.size());
            CHECK(manchester_decode(c) == x);
            CHECK(disparity_of(c) == 0);
            CHECK(max_run_length(c.view()) <= 2);
        }
}

TEST_CASE("4B6B codewords") {
    std::set<std::uint8_t> words;
    for (std::uint32_t nib = 0; nib < 16; ++nib) {
        const auto c = encode_4b6b(nibbles(nib, 1));
        REQUIRE(c.size() == 6);
        CHECK(c.count_ones() == 3);
        words.insert(static_cast<std::uint8_t>(c.read_uint(0, 6)));
        CHECK(decode_4b6b(c) == nibbles(nib, 1));
    }
    CHECK(words.size() == 16);
    CHECK(encode_4b6b({}).size() == 0);
    CHECK(decode_4b6b({}).size() == 0);
    CHECK(error_kind([] { decode_4b6b({1, 1, 1, 1, 1, 1}); }) == ErrorKind::InvalidSymbol);
    CHECK(error_kind([] { encode_4b6b({1, 0, 1}); }) == ErrorKind::FramingError);
    CHECK(error_kind([] { decode_4b6b({1, 0, 1}); }) == ErrorKind::FramingError);
}

TEST_CASE("4B6B exhaustive over nibble triples: balance and run length") {
    for (std::uint32_t v = 0; v < 4096; ++v) {
        const auto c = encode_4b6b(nibbles(v, 3));
        CHECK(c.size() == 18);
        CHECK(disparity_of(c) == 0);
        CHECK(max_run_length(c.view()) <= 4);
        CHECK(decode_4b6b(c) == nibbles(v, 3));
    }
}

TEST_CASE("4B6B invalid group reports its position") {
    BitSequence c = encode_4b6b(nibbles(0x5A, 2));
    c.append(BitSequence{0, 0, 0, 1, 1, 1});
    c.append(BitSequence{0, 0, 0, 0, 1, 1});
    const auto pos = error_position([&] { decode_4b6b(c); });
    REQUIRE(pos);
    CHECK(*pos >= 2);
}

TEST_CASE("8B10B blocks for every byte and disparity") {
    for (int rd : {-1, 1}) {
        const auto state = static_cast<RunningDisparity>(rd);
        for (int byte = 0; byte < 256; ++byte) {
            const auto [block, next] = encode_8b10b_byte(static_cast<std::uint8_t>(byte), state);
            const int ones = std::popcount(static_cast<unsigned>(block));
            const int disparity = 2 * ones - 10;
            CHECK(ones >= 4);
            CHECK(ones <= 6);
            CHECK((disparity == 0 || disparity == 2 || disparity == -2));
            // +2 only from RD-, -2 only from RD+, and the state flips on a non-neutral block
            if (disparity == 2) CHECK(rd == -1);
            if (disparity == -2) CHECK(rd == 1);
            const int expected_next = disparity == 0 ? rd : -rd;
            CHECK(static_cast<int>(next) == expected_next);
        }
    }
}

TEST_CASE("8B10B block set is injective per disparity") {
    for (int rd : {-1, 1}) {
        std::set<std::uint16_t> blocks;
        for (int byte = 0; byte < 256; ++byte)
            blocks.insert(encode_8b10b_byte(static_cast<std::uint8_t>(byte), static_cast<RunningDisparity>(rd)).first);
        CHECK(blocks.size() == 256);
    }
}

TEST_CASE("8B10B empty input keeps state") {
    CHECK(encode_8b10b({}, RunningDisparity::Negative).disparity == RunningDisparity::Negative);
    CHECK(decode_8b10b({}, RunningDisparity::Positive).disparity == RunningDisparity::Positive);
    CHECK(encode_8b10b({}, RunningDisparity::Positive).bits.size() == 0);
}

TEST_CASE("8B10B repeated zero bytes keep runs at most 5") {
    for (int rd : {-1, 1}) {
        const auto c = encode_8b10b(BitSequence(8 * 64, 0), static_cast<RunningDisparity>(rd));
        CHECK(max_run_length(c.bits.view()) <= 5);
    }
}

TEST_CASE("8B10B randomized roundtrip, disparity and run bounds") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t len = 1 + rng() % 40;
        BitSequence x;
        for (std::size_t i = 0; i < len; ++i) x.append_uint(rng() & 0xFF, 8);
        const auto state = (trial & 1) ? RunningDisparity::Positive : RunningDisparity::Negative;
        const auto enc = encode_8b10b(x, state);
        REQUIRE(enc.bits.size() == len * 10);
        CHECK(max_run_length(enc.bits.view()) <= 5);
        // running disparity at every block boundary stays within one
        int running = static_cast<int>(state);
        for (std::size_t b = 0; b < len; ++b) {
            running += disparity_of(enc.bits.slice(10 * b, 10));
            CHECK((running == -1 || running == 1));
        }
        CHECK(std::abs(disparity_of(enc.bits)) <= 5);
        const auto dec = decode_8b10b(enc.bits, state);
        CHECK(dec.bits == x);
        CHECK(dec.disparity == enc.disparity);
    }
}

TEST_CASE("8B10B rejects invalid blocks and lengths") {
    CHECK(error_kind([] { decode_8b10b(BitSequence(10, 1), RunningDisparity::Negative); }) ==
          ErrorKind::InvalidSymbol);
    CHECK(error_kind([] { encode_8b10b(BitSequence(7, 0), RunningDisparity::Negative); }) ==
          ErrorKind::FramingError);
    CHECK(error_kind([] { decode_8b10b(BitSequence(9, 0), RunningDisparity::Negative); }) ==
          ErrorKind::FramingError);
    // a block valid only from the other disparity is a violation
    const auto [block, next] = encode_8b10b_byte(0x00, RunningDisparity::Negative);
    (void)next;
    BitSequence b;
    b.append_uint(block, 10);
    CHECK(error_kind([&] { decode_8b10b(b, RunningDisparity::Positive); }) == ErrorKind::InvalidSymbol);
}

TEST_CASE("expansion ratios") {
    CHECK(rll_encoded_length(RllCode::Manchester, 100) == 200);
    CHECK(rll_encoded_length(RllCode::FourBSixB, 100) == 150);
    CHECK(rll_encoded_length(RllCode::EightBTenB, 800) == 1000);
}

TEST_CASE("soft decoding equals hard decoding on clean chips, recovers from small errors") {
    std::mt19937_64 rng(5);
    for (auto code : {RllCode::Manchester, RllCode::FourBSixB, RllCode::EightBTenB}) {
        BitSequence x;
        for (int i = 0; i < 400; ++i) x.push_back(rng() & 1);
        const auto chips = rll_encode(code, x);
        std::vector<double> soft;
        for (auto c : chips) soft.push_back(c ? 1.0 : -1.0);
        CHECK(rll_decode_soft(code, soft) == x);
        CHECK(rll_decode(code, chips) == x);
        // one weakened, sign-flipped chip per block still decodes; 8B10B has
        // codewords at distance 1, so only the balanced codes are checked
        if (code == RllCode::EightBTenB) continue;
        for (std::size_t i = 0; i < soft.size(); i += rll_output_block(code)) soft[i] *= -0.2;
        CHECK(rll_decode_soft(code, soft) == x);
    }
}

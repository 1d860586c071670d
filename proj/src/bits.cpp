#include "vlcphy/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace vlc {

BitSequence::BitSequence(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) bits_.push_back(b ? 1 : 0);
}

BitSequence BitSequence::from_bytes(std::span<const std::uint8_t> bytes) {
    BitSequence out;
    out.bits_.reserve(bytes.size() * 8);
    for (auto byte : bytes)
        for (int i = 7; i >= 0; --i) out.bits_.push_back((byte >> i) & 1);
    return out;
}

BitSequence BitSequence::from_string(std::string_view text) {
    BitSequence out;
    for (char c : text) {
        if (c == '0' || c == '1') out.bits_.push_back(c == '1');
    }
    return out;
}

std::vector<std::uint8_t> BitSequence::to_bytes() const {
    std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
}

void BitSequence::append(const BitSequence& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void BitSequence::append_uint(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) bits_.push_back((value >> i) & 1);
}

std::uint64_t BitSequence::read_uint(std::size_t pos, int width) const {
    if (pos + static_cast<std::size_t>(width) > bits_.size())
        throw std::out_of_range("read_uint past end");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | bits_[pos + i];
    return v;
}

BitSequence BitSequence::slice(std::size_t pos, std::size_t count) const {
    if (pos + count > bits_.size()) throw std::out_of_range("slice past end");
    BitSequence out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                     bits_.begin() + static_cast<std::ptrdiff_t>(pos + count));
    return out;
}

std::size_t BitSequence::count_ones() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), Bit{1}));
}

std::string to_string(const BitSequence& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::size_t max_run_length(std::span<const Bit> bits) {
    std::size_t best = 0, run = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        run = (i > 0 && bits[i] == bits[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

std::size_t hamming_distance(const BitSequence& a, const BitSequence& b) {
    if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

}  // namespace vlc

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vlc {

using Bit = std::uint8_t;

// Ordered sequence of binary symbols with an explicit length. Bytes are
// unpacked most-significant-bit first and never implicitly padded.
class BitSequence {
public:
    using const_iterator = std::vector<Bit>::const_iterator;

    BitSequence() = default;
    explicit BitSequence(std::size_t count, Bit value = 0) : bits_(count, value ? 1 : 0) {}
    BitSequence(std::initializer_list<int> bits);

    static BitSequence from_bytes(std::span<const std::uint8_t> bytes);
    static BitSequence from_string(std::string_view text);  // '0'/'1', other chars ignored

    // Packs MSB first; a trailing partial byte is zero-filled.
    std::vector<std::uint8_t> to_bytes() const;

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    Bit operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, Bit value) { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }

    void push_back(Bit value) { bits_.push_back(value ? 1 : 0); }
    void append(const BitSequence& other);
    void append_uint(std::uint64_t value, int width);
    std::uint64_t read_uint(std::size_t pos, int width) const;
    void resize(std::size_t count) { bits_.resize(count, 0); }
    void reserve(std::size_t count) { bits_.reserve(count); }

    BitSequence slice(std::size_t pos, std::size_t count) const;
    std::size_t count_ones() const noexcept;

    std::span<const Bit> view() const noexcept { return bits_; }
    const_iterator begin() const noexcept { return bits_.begin(); }
    const_iterator end() const noexcept { return bits_.end(); }

    friend bool operator==(const BitSequence&, const BitSequence&) = default;

private:
    std::vector<Bit> bits_;
};

std::string to_string(const BitSequence& bits);

// Longest run of identical consecutive values.
std::size_t max_run_length(std::span<const Bit> bits);

std::size_t hamming_distance(const BitSequence& a, const BitSequence& b);

}  // namespace vlc

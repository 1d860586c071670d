#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vlcphy/error.hpp"

namespace vlc {

// Block interleaver: the input is written row by row into rows of `depth`
// symbols and read out column by column. With rows of one RS codeword each,
// a burst of up to (rows) consecutive channel symbols touches every codeword
// at most once.
template <typename T>
std::vector<T> interleave(std::span<const T> symbols, std::size_t depth) {
    if (depth == 0 || symbols.size() % depth != 0)
        throw Error(ErrorKind::FramingError, "interleave: length " + std::to_string(symbols.size()) +
                                                 " not divisible by depth " + std::to_string(depth));
    const std::size_t rows = symbols.size() / depth;
    std::vector<T> out;
    out.reserve(symbols.size());
    for (std::size_t c = 0; c < depth; ++c)
        for (std::size_t r = 0; r < rows; ++r) out.push_back(symbols[r * depth + c]);
    return out;
}

template <typename T>
std::vector<T> deinterleave(std::span<const T> symbols, std::size_t depth) {
    if (depth == 0 || symbols.size() % depth != 0)
        throw Error(ErrorKind::FramingError, "deinterleave: length " + std::to_string(symbols.size()) +
                                                 " not divisible by depth " + std::to_string(depth));
    const std::size_t rows = symbols.size() / depth;
    std::vector<T> out(symbols.size());
    std::size_t i = 0;
    for (std::size_t c = 0; c < depth; ++c)
        for (std::size_t r = 0; r < rows; ++r) out[r * depth + c] = symbols[i++];
    return out;
}

}  // namespace vlc

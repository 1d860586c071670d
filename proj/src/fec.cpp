#include "vlcphy/fec.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "vlcphy/convolutional.hpp"
#include "vlcphy/interleaver.hpp"
#include "vlcphy/reed_solomon.hpp"

namespace vlc {

int FecReport::corrected_symbols() const {
    return std::accumulate(blocks.begin(), blocks.end(), 0,
                           [](int acc, const FecBlockStatus& b) { return acc + b.corrected; });
}

bool FecReport::ok() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const FecBlockStatus& b) { return b.ok; });
}

int rs_symbol_bits(const RsParams& rs) { return rs.n <= 15 ? 4 : 8; }

std::size_t rs_block_count(const FecScheme& scheme, std::size_t payload_bits) {
    if (!scheme.rs) return 0;
    const std::size_t block_bits = static_cast<std::size_t>(scheme.rs->k * rs_symbol_bits(*scheme.rs));
    return (payload_bits + block_bits - 1) / block_bits;
}

std::size_t fec_encoded_length(const FecScheme& scheme, std::size_t payload_bits) {
    std::size_t n = payload_bits;
    if (scheme.rs)
        n = rs_block_count(scheme, payload_bits) * static_cast<std::size_t>(scheme.rs->n * rs_symbol_bits(*scheme.rs));
    if (scheme.cc) n = CcCode(*scheme.cc).encoded_length(n);
    return n;
}

namespace {

std::vector<Symbol> to_symbols(const BitSequence& bits, int width) {
    std::vector<Symbol> out(bits.size() / static_cast<std::size_t>(width));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<Symbol>(bits.read_uint(i * static_cast<std::size_t>(width), width));
    return out;
}

BitSequence from_symbols(std::span<const Symbol> symbols, int width) {
    BitSequence out;
    out.reserve(symbols.size() * static_cast<std::size_t>(width));
    for (auto s : symbols) out.append_uint(s, width);
    return out;
}

}  // namespace

BitSequence fec_encode(const BitSequence& bits, const FecScheme& scheme) {
    BitSequence out = bits;
    if (scheme.rs) {
        const RsCode code(scheme.rs->n, scheme.rs->k);
        const int width = rs_symbol_bits(*scheme.rs);
        const std::size_t blocks = rs_block_count(scheme, bits.size());
        BitSequence padded = bits;
        padded.resize(blocks * static_cast<std::size_t>(code.k() * width));
        const auto message = to_symbols(padded, width);
        std::vector<Symbol> coded;
        coded.reserve(blocks * static_cast<std::size_t>(code.n()));
        for (std::size_t b = 0; b < blocks; ++b) {
            auto cw = rs_encode(std::span(message).subspan(b * static_cast<std::size_t>(code.k()),
                                                           static_cast<std::size_t>(code.k())),
                                code);
            coded.insert(coded.end(), cw.begin(), cw.end());
        }
        const auto mixed = blocks > 0 ? interleave<Symbol>(coded, static_cast<std::size_t>(code.n())) : coded;
        out = from_symbols(mixed, width);
    }
    if (scheme.cc) out = cc_encode(out, CcCode(*scheme.cc));
    return out;
}

FecDecoded fec_decode(const BitSequence& bits, const FecScheme& scheme, std::size_t payload_bits) {
    const std::size_t expected = fec_encoded_length(scheme, payload_bits);
    if (bits.size() != expected)
        throw Error(ErrorKind::FramingError, "FEC stream is " + std::to_string(bits.size()) +
                                                 " bits, expected " + std::to_string(expected));
    FecDecoded out;
    BitSequence stream = scheme.cc ? viterbi_decode(bits, CcCode(*scheme.cc)) : bits;
    if (!scheme.rs) {
        out.bits = std::move(stream);
        return out;
    }
    const RsCode code(scheme.rs->n, scheme.rs->k);
    const int width = rs_symbol_bits(*scheme.rs);
    const auto n = static_cast<std::size_t>(code.n());
    const auto k = static_cast<std::size_t>(code.k());
    const auto received = to_symbols(stream, width);
    const auto blocks_in = received.empty() ? received : deinterleave<Symbol>(received, n);

    std::vector<Symbol> message;
    message.reserve(blocks_in.size() / n * k);
    for (std::size_t b = 0; b * n < blocks_in.size(); ++b) {
        auto word = std::span(blocks_in).subspan(b * n, n);
        try {
            auto dec = rs_decode(word, code);
            out.report.blocks.push_back({true, dec.corrected});
            message.insert(message.end(), dec.message.begin(), dec.message.end());
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DecodeFailure) throw;
            out.report.blocks.push_back({false, 0});
            message.insert(message.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
        }
    }
    out.bits = from_symbols(message, width);
    out.bits.resize(payload_bits);
    if (!out.report.ok()) throw FecDecodeFailure(std::move(out.report), std::move(out.bits));
    return out;
}

}  // namespace vlc

#include "vlcphy/convolutional.hpp"

#include <cstdint>
#include <limits>
#include <string>

#include "vlcphy/error.hpp"

namespace vlc {
namespace {

constexpr int kStates = 1 << CcCode::kMemory;

// Mother outputs for register (input << 6 | state), bit j = generator j.
struct OutputTable {
    std::array<std::array<std::uint8_t, 2>, kStates> out{};
    OutputTable() {
        for (unsigned s = 0; s < kStates; ++s)
            for (unsigned in = 0; in < 2; ++in) {
                const unsigned reg = (in << CcCode::kMemory) | s;
                std::uint8_t o = 0;
                for (std::size_t j = 0; j < 3; ++j)
                    o |= static_cast<std::uint8_t>((__builtin_popcount(reg & CcCode::kGenerators[j]) & 1) << j);
                out[s][in] = o;
            }
    }
};

const OutputTable& outputs() {
    static const OutputTable t;
    return t;
}

unsigned next_state(unsigned state, unsigned in) { return ((in << CcCode::kMemory) | state) >> 1; }

}  // namespace

CcCode::CcCode(CcRate rate) : rate_(rate) {
    switch (rate) {
    case CcRate::OneThird: pattern_ = {{0, 1, 2}}; break;
    case CcRate::OneQuarter: pattern_ = {{0, 1, 2, 0}}; break;
    case CcRate::TwoThirds: pattern_ = {{0, 1}, {0}}; break;
    }
}

std::size_t CcCode::period_outputs() const noexcept {
    std::size_t n = 0;
    for (const auto& step : pattern_) n += step.size();
    return n;
}

std::size_t CcCode::encoded_length(std::size_t input_bits) const {
    const std::size_t steps = input_bits + kMemory;
    const std::size_t period = pattern_.size();
    std::size_t n = steps / period * period_outputs();
    for (std::size_t i = 0; i < steps % period; ++i) n += pattern_[i].size();
    return n;
}

std::size_t CcCode::message_length(std::size_t encoded_bits) const {
    const std::size_t guess = encoded_bits * period_inputs() / period_outputs();
    for (std::size_t steps = guess > 2 ? guess - 2 : 0; steps <= guess + 2; ++steps) {
        if (steps < kMemory) continue;
        if (encoded_length(steps - kMemory) == encoded_bits) return steps - kMemory;
    }
    return std::numeric_limits<std::size_t>::max();
}

BitSequence cc_encode(const BitSequence& bits, const CcCode& code) {
    const auto& table = outputs().out;
    const auto& pattern = code.pattern();
    BitSequence out;
    out.reserve(code.encoded_length(bits.size()));
    unsigned state = 0;
    const std::size_t steps = bits.size() + CcCode::kMemory;
    for (std::size_t t = 0; t < steps; ++t) {
        const unsigned in = t < bits.size() ? bits[t] : 0u;
        const auto o = table[state][in];
        for (int j : pattern[t % pattern.size()]) out.push_back((o >> j) & 1);
        state = next_state(state, in);
    }
    return out;
}

BitSequence viterbi_decode(const BitSequence& bits, const CcCode& code) {
    const std::size_t length = code.message_length(bits.size());
    if (length == std::numeric_limits<std::size_t>::max())
        throw Error(ErrorKind::FramingError,
                    "CC stream of " + std::to_string(bits.size()) + " bits matches no message length");
    const auto& table = outputs().out;
    const auto& pattern = code.pattern();
    const std::size_t steps = length + CcCode::kMemory;

    constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 2;
    std::array<std::uint32_t, kStates> metric;
    metric.fill(kInf);
    metric[0] = 0;
    // decision bit per state: which predecessor (low bit of prev state) won
    std::vector<std::uint64_t> decisions(steps, 0);

    std::size_t pos = 0;
    for (std::size_t t = 0; t < steps; ++t) {
        const auto& emit = pattern[t % pattern.size()];
        // branch cost for each of the 8 possible mother output words
        std::array<std::uint32_t, 8> cost{};
        for (unsigned w = 0; w < 8; ++w) {
            std::uint32_t c = 0;
            for (std::size_t e = 0; e < emit.size(); ++e)
                c += ((w >> emit[e]) & 1u) != bits[pos + e];
            cost[w] = c;
        }
        pos += emit.size();

        std::array<std::uint32_t, kStates> next;
        std::uint64_t dec = 0;
        for (unsigned ns = 0; ns < kStates; ++ns) {
            const unsigned in = ns >> (CcCode::kMemory - 1);
            const unsigned base = (ns << 1) & (kStates - 1);
            const unsigned p0 = base, p1 = base | 1u;
            const std::uint32_t m0 = metric[p0] + cost[table[p0][in]];
            const std::uint32_t m1 = metric[p1] + cost[table[p1][in]];
            if (m1 < m0) {
                next[ns] = m1;
                dec |= std::uint64_t{1} << ns;
            } else {
                next[ns] = m0;
            }
        }
        metric = next;
        decisions[t] = dec;
    }

    BitSequence out(length);
    unsigned state = 0;
    for (std::size_t t = steps; t-- > 0;) {
        const unsigned in = state >> (CcCode::kMemory - 1);
        if (t < length) out.set(t, in);
        const unsigned low = (decisions[t] >> state) & 1u;
        state = ((state << 1) & (kStates - 1)) | low;
    }
    return out;
}

}  // namespace vlc

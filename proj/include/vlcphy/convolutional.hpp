#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "vlcphy/bits.hpp"
#include "vlcphy/modes.hpp"

namespace vlc {

// Constraint-length-7 convolutional code built on the rate-1/3 mother code
// with generators 133, 171, 165 (octal). Per trellis step the encoder emits a
// subset of the three mother outputs, following a periodic pattern:
//
//   rate 1/3: {g0 g1 g2}
//   rate 1/4: {g0 g1 g2 g0}          (first output repeated)
//   rate 2/3: {g0 g1} {g0}           (g2 of both steps and g1 of the second dropped)
//
// Encoding is terminated with six zero tail bits.
class CcCode {
public:
    static constexpr int kConstraintLength = 7;
    static constexpr int kMemory = kConstraintLength - 1;
    static constexpr std::array<unsigned, 3> kGenerators = {0133, 0171, 0165};

    explicit CcCode(CcRate rate);

    CcRate rate() const noexcept { return rate_; }
    // Mother-output indices emitted at each step of one period.
    const std::vector<std::vector<int>>& pattern() const noexcept { return pattern_; }
    std::size_t period_inputs() const noexcept { return pattern_.size(); }
    std::size_t period_outputs() const noexcept;

    // Output length for `input_bits` message bits, tail included.
    std::size_t encoded_length(std::size_t input_bits) const;
    // Inverse of encoded_length; nullopt-like SIZE_MAX when no length matches.
    std::size_t message_length(std::size_t encoded_bits) const;

private:
    CcRate rate_;
    std::vector<std::vector<int>> pattern_;
};

BitSequence cc_encode(const BitSequence& bits, const CcCode& code);

// Hard-decision Viterbi (Hamming metric) over the terminated trellis.
// Throws Error{FramingError} when the length matches no message length.
BitSequence viterbi_decode(const BitSequence& bits, const CcCode& code);

}  // namespace vlc

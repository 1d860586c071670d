#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vlcphy/bits.hpp"
#include "vlcphy/error.hpp"
#include "vlcphy/modes.hpp"

namespace vlc {

// Outer RS code and optional inner convolutional code.
struct FecScheme {
    std::optional<RsParams> rs;
    std::optional<CcRate> cc;

    static FecScheme of(const OperatingMode& mode) { return {mode.rs, mode.cc}; }
    friend bool operator==(const FecScheme&, const FecScheme&) = default;
};

struct FecBlockStatus {
    bool ok = true;
    int corrected = 0;
};

struct FecReport {
    std::vector<FecBlockStatus> blocks;

    int corrected_symbols() const;
    bool ok() const;
};

struct FecDecoded {
    BitSequence bits;
    FecReport report;
};

// Raised when at least one RS block is uncorrectable. Carries the per-block
// report and the best-effort payload (failed blocks pass their systematic
// symbols through uncorrected).
class FecDecodeFailure : public Error {
public:
    FecDecodeFailure(FecReport report, BitSequence best_effort)
        : Error(ErrorKind::DecodeFailure, "uncorrectable RS block"),
          report_(std::move(report)), best_effort_(std::move(best_effort)) {}

    const FecReport& report() const noexcept { return report_; }
    const BitSequence& best_effort() const noexcept { return best_effort_; }

private:
    FecReport report_;
    BitSequence best_effort_;
};

// Bits per RS symbol for a scheme (4 for the GF(16) codes, 8 otherwise).
int rs_symbol_bits(const RsParams& rs);
std::size_t rs_block_count(const FecScheme& scheme, std::size_t payload_bits);
std::size_t fec_encoded_length(const FecScheme& scheme, std::size_t payload_bits);

// pad to whole RS blocks -> RS encode per block -> interleave across blocks
// (rows of one codeword) -> CC encode. Uncoded schemes pass bits through.
BitSequence fec_encode(const BitSequence& bits, const FecScheme& scheme);
FecDecoded fec_decode(const BitSequence& bits, const FecScheme& scheme, std::size_t payload_bits);

inline BitSequence fec_encode_path(const BitSequence& bits, const OperatingMode& mode) {
    return fec_encode(bits, FecScheme::of(mode));
}
inline FecDecoded fec_decode_path(const BitSequence& bits, const OperatingMode& mode,
                                  std::size_t payload_bits) {
    return fec_decode(bits, FecScheme::of(mode), payload_bits);
}

}  // namespace vlc

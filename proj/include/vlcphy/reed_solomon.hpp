#pragma once

#include <span>
#include <vector>

#include "vlcphy/galois.hpp"

namespace vlc {

// Narrow-sense RS code (generator roots alpha^1 .. alpha^(n-k)) over GF(16)
// for n <= 15 and GF(256) otherwise. Codes with n < 2^m - 1 are shortened:
// the missing leading symbols are implicit zeros. Codewords are systematic,
// message first, and symbol i carries the coefficient of x^(n-1-i).
class RsCode {
public:
    RsCode(int n, int k);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    int t() const noexcept { return (n_ - k_) / 2; }
    const GaloisField& field() const noexcept { return *field_; }
    // Highest-degree coefficient first; monic, degree n - k.
    const std::vector<Symbol>& generator() const noexcept { return generator_; }

private:
    int n_;
    int k_;
    const GaloisField* field_;
    std::vector<Symbol> generator_;
};

struct RsDecoded {
    std::vector<Symbol> message;
    int corrected = 0;
};

std::vector<Symbol> rs_encode(std::span<const Symbol> message, const RsCode& code);

// Berlekamp-Massey + Chien + Forney. Throws Error{DecodeFailure} when the
// locator root count disagrees with its degree or the corrected word still
// has a nonzero syndrome.
RsDecoded rs_decode(std::span<const Symbol> received, const RsCode& code);

// r(alpha^1) .. r(alpha^(n-k)).
std::vector<Symbol> rs_syndromes(std::span<const Symbol> word, const RsCode& code);

}  // namespace vlc

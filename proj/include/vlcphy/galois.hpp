#pragma once

#include <cstdint>
#include <vector>

namespace vlc {

using Symbol = std::uint8_t;

// GF(2^m) for m <= 8 with log/antilog tables.
class GaloisField {
public:
    GaloisField(int bits, unsigned primitive_polynomial);

    // x^4 + x + 1
    static const GaloisField& gf16();
    // x^8 + x^4 + x^3 + x^2 + 1
    static const GaloisField& gf256();

    int bits() const noexcept { return bits_; }
    int order() const noexcept { return 1 << bits_; }
    unsigned primitive_polynomial() const noexcept { return poly_; }

    static Symbol add(Symbol a, Symbol b) noexcept { return a ^ b; }
    Symbol mul(Symbol a, Symbol b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return exp_[static_cast<std::size_t>(log_[a] + log_[b])];
    }
    Symbol div(Symbol a, Symbol b) const;
    Symbol inv(Symbol a) const { return div(1, a); }
    // alpha^power for any integer power
    Symbol alpha_pow(int power) const noexcept;
    int log(Symbol a) const;

private:
    int bits_;
    unsigned poly_;
    std::vector<Symbol> exp_;  // doubled so mul never reduces modulo
    std::vector<int> log_;
};

}  // namespace vlc

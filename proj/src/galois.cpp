#include "vlcphy/galois.hpp"

#include <stdexcept>

namespace vlc {

GaloisField::GaloisField(int bits, unsigned primitive_polynomial)
    : bits_(bits), poly_(primitive_polynomial) {
    if (bits < 2 || bits > 8) throw std::invalid_argument("field width must be 2..8 bits");
    const int q = 1 << bits;
    exp_.assign(static_cast<std::size_t>(2 * (q - 1)), 0);
    log_.assign(static_cast<std::size_t>(q), -1);
    unsigned x = 1;
    for (int i = 0; i < q - 1; ++i) {
        if (log_[x] != -1) throw std::invalid_argument("polynomial is not primitive");
        exp_[static_cast<std::size_t>(i)] = static_cast<Symbol>(x);
        exp_[static_cast<std::size_t>(i + q - 1)] = static_cast<Symbol>(x);
        log_[x] = i;
        x <<= 1;
        if (x & static_cast<unsigned>(q)) x ^= poly_;
    }
    if (x != 1) throw std::invalid_argument("polynomial is not primitive");
}

const GaloisField& GaloisField::gf16() {
    static const GaloisField f(4, 0x13);
    return f;
}

const GaloisField& GaloisField::gf256() {
    static const GaloisField f(8, 0x11d);
    return f;
}

Symbol GaloisField::div(Symbol a, Symbol b) const {
    if (b == 0) throw std::domain_error("division by zero in GF");
    if (a == 0) return 0;
    const int q1 = order() - 1;
    return exp_[static_cast<std::size_t>((log_[a] - log_[b] + q1) % q1)];
}

Symbol GaloisField::alpha_pow(int power) const noexcept {
    const int q1 = order() - 1;
    int p = power % q1;
    if (p < 0) p += q1;
    return exp_[static_cast<std::size_t>(p)];
}

int GaloisField::log(Symbol a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
}

}  // namespace vlc

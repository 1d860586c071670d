#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace vlc {

// Exact non-negative-denominator fraction, always stored in lowest terms.
class Rational {
public:
    constexpr Rational(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    constexpr std::int64_t num() const noexcept { return num_; }
    constexpr std::int64_t den() const noexcept { return den_; }
    constexpr double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend constexpr Rational operator*(Rational a, Rational b) {
        // cross-reduce first to keep intermediates small
        const auto g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
        const auto g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
        const auto d1 = g1 ? g1 : 1;
        const auto d2 = g2 ? g2 : 1;
        return Rational((a.num_ / d1) * (b.num_ / d2), (a.den_ / d2) * (b.den_ / d1));
    }
    friend constexpr bool operator==(Rational a, Rational b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend constexpr bool operator<(Rational a, Rational b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }

private:
    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace vlc

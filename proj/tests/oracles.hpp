// Reference implementations used only by the tests. Each one is written
// from the definition, without the tables or shortcuts of the library.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

// Carry-less multiply then reduce by the field polynomial.
inline unsigned gf_mul(unsigned a, unsigned b, int bits, unsigned poly) {
    unsigned r = 0;
    for (int i = 0; i < bits; ++i)
        if (b >> i & 1u) r ^= a << i;
    for (int i = 2 * bits - 2; i >= bits; --i)
        if (r >> i & 1u) r ^= poly << (i - bits);
    return r;
}

inline unsigned gf_pow(unsigned a, int e, int bits, unsigned poly) {
    unsigned r = 1;
    for (int i = 0; i < e; ++i) r = gf_mul(r, a, bits, poly);
    return r;
}

// word[0] is the coefficient of x^(n-1).
inline unsigned poly_eval(const std::vector<std::uint8_t>& word, unsigned x, int bits, unsigned poly) {
    unsigned acc = 0;
    for (auto c : word) acc = gf_mul(acc, x, bits, poly) ^ c;
    return acc;
}

// Tap j of generator g multiplies u[t - j]; the octal MSB is the current input.
inline std::vector<int> impulse_response(unsigned g) {
    std::vector<int> h(7);
    for (int j = 0; j < 7; ++j) h[static_cast<std::size_t>(j)] = static_cast<int>(g >> (6 - j) & 1u);
    return h;
}

// Mother rate-1/3 outputs by direct convolution over the zero-terminated input.
inline std::vector<std::vector<int>> mother_outputs(const std::vector<int>& u) {
    static const unsigned gens[3] = {0133, 0171, 0165};
    std::vector<int> x = u;
    x.insert(x.end(), 6, 0);
    std::vector<std::vector<int>> out(x.size(), std::vector<int>(3, 0));
    for (int k = 0; k < 3; ++k) {
        const auto h = impulse_response(gens[k]);
        for (std::size_t t = 0; t < x.size(); ++t) {
            int acc = 0;
            for (std::size_t j = 0; j < 7 && j <= t; ++j) acc ^= h[j] & x[t - j];
            out[t][static_cast<std::size_t>(k)] = acc;
        }
    }
    return out;
}

// Rate-dependent selection from the mother outputs, per documented pattern.
enum class Rate { Quarter, Third, TwoThirds };

inline std::vector<int> cc_reference(const std::vector<int>& u, Rate rate) {
    const auto m = mother_outputs(u);
    std::vector<int> out;
    for (std::size_t t = 0; t < m.size(); ++t) {
        switch (rate) {
        case Rate::Third: out.insert(out.end(), {m[t][0], m[t][1], m[t][2]}); break;
        case Rate::Quarter: out.insert(out.end(), {m[t][0], m[t][1], m[t][2], m[t][0]}); break;
        case Rate::TwoThirds:
            if (t % 2 == 0) out.insert(out.end(), {m[t][0], m[t][1]});
            else out.push_back(m[t][0]);
            break;
        }
    }
    return out;
}

// Codebook of all 2^L messages packed into 64-bit words for fast distances.
struct Codebook {
    std::size_t length_bits = 0;
    std::vector<std::vector<std::uint64_t>> words;
};

inline std::vector<std::uint64_t> pack(const std::vector<int>& bits) {
    std::vector<std::uint64_t> w((bits.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) w[i / 64] |= std::uint64_t{1} << (i % 64);
    return w;
}

inline std::vector<int> message_of(std::uint32_t m, int length) {
    std::vector<int> u(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) u[static_cast<std::size_t>(i)] = static_cast<int>(m >> i & 1u);
    return u;
}

inline Codebook codebook(int length, Rate rate) {
    Codebook cb;
    for (std::uint32_t m = 0; m < (1u << length); ++m) {
        const auto c = cc_reference(message_of(m, length), rate);
        cb.length_bits = c.size();
        cb.words.push_back(pack(c));
    }
    return cb;
}

inline int distance(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::popcount(a[i] ^ b[i]);
    return d;
}

// Minimum distance and how many codewords attain it.
struct MlResult {
    int best_distance = std::numeric_limits<int>::max();
    std::uint32_t argmin = 0;
    int ties = 0;
};

inline MlResult brute_force_ml(const Codebook& cb, const std::vector<std::uint64_t>& received) {
    MlResult r;
    for (std::uint32_t m = 0; m < cb.words.size(); ++m) {
        const int d = distance(cb.words[m], received);
        if (d < r.best_distance) {
            r.best_distance = d;
            r.argmin = m;
            r.ties = 1;
        } else if (d == r.best_distance) {
            ++r.ties;
        }
    }
    return r;
}

// Gaussian tail probability.
inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Exhaustive energy maximisation over phases of an arbitrary sequence.
inline std::size_t argmax_phase(const std::vector<double>& y, std::size_t n) {
    const std::size_t periods = y.size() / n;
    double mean = 0.0;
    for (std::size_t i = 0; i < periods * n; ++i) mean += y[i];
    mean /= static_cast<double>(periods * n);
    std::size_t best = 0;
    double best_e = -1.0;
    for (std::size_t p = 0; p < n; ++p) {
        double e = 0.0;
        for (std::size_t k = 0; k < periods; ++k) e += (y[k * n + p] - mean) * (y[k * n + p] - mean);
        if (e > best_e) {
            best_e = e;
            best = p;
        }
    }
    return best;
}

// One-chip moving sum, written out.
inline std::vector<double> box_sum(const std::vector<double>& x, std::size_t n) {
    std::vector<double> y;
    for (std::size_t i = 0; i + n <= x.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += x[i + j];
        y.push_back(s);
    }
    return y;
}

}  // namespace oracle

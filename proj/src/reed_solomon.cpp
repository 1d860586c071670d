#include "vlcphy/reed_solomon.hpp"

#include <algorithm>
#include <string>

#include "vlcphy/error.hpp"

namespace vlc {

RsCode::RsCode(int n, int k) : n_(n), k_(k) {
    field_ = n <= 15 ? &GaloisField::gf16() : &GaloisField::gf256();
    if (k < 1 || k >= n || n > field_->order() - 1)
        throw Error(ErrorKind::ConfigError,
                    "invalid RS(" + std::to_string(n) + "," + std::to_string(k) + ")");
    const auto& f = *field_;
    generator_ = {1};
    for (int i = 1; i <= n - k; ++i) {
        // multiply by (x - alpha^i)
        const Symbol root = f.alpha_pow(i);
        std::vector<Symbol> next(generator_.size() + 1, 0);
        for (std::size_t j = 0; j < generator_.size(); ++j) {
            next[j] ^= generator_[j];
            next[j + 1] ^= f.mul(generator_[j], root);
        }
        generator_ = std::move(next);
    }
}

std::vector<Symbol> rs_encode(std::span<const Symbol> message, const RsCode& code) {
    if (message.size() != static_cast<std::size_t>(code.k()))
        throw Error(ErrorKind::FramingError, "RS message must be " + std::to_string(code.k()) + " symbols");
    const auto& f = code.field();
    const auto& g = code.generator();
    const std::size_t parity = static_cast<std::size_t>(code.n() - code.k());
    std::vector<Symbol> out(message.begin(), message.end());
    if (parity == 0) return out;
    std::vector<Symbol> rem(parity, 0);
    for (Symbol m : message) {
        const Symbol feedback = m ^ rem[0];
        std::rotate(rem.begin(), rem.begin() + 1, rem.end());
        rem.back() = 0;
        if (feedback != 0)
            for (std::size_t j = 0; j < parity; ++j) rem[j] ^= f.mul(feedback, g[j + 1]);
    }
    out.insert(out.end(), rem.begin(), rem.end());
    return out;
}

std::vector<Symbol> rs_syndromes(std::span<const Symbol> word, const RsCode& code) {
    const auto& f = code.field();
    std::vector<Symbol> s(static_cast<std::size_t>(code.n() - code.k()));
    for (std::size_t j = 0; j < s.size(); ++j) {
        const Symbol x = f.alpha_pow(static_cast<int>(j) + 1);
        Symbol acc = 0;
        for (Symbol c : word) acc = f.mul(acc, x) ^ c;
        s[j] = acc;
    }
    return s;
}

namespace {

// Polynomials below are stored lowest degree first.
Symbol eval_low_first(const GaloisField& f, const std::vector<Symbol>& p, Symbol x) {
    Symbol acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = f.mul(acc, x) ^ *it;
    return acc;
}

[[noreturn]] void fail(const std::string& why) {
    throw Error(ErrorKind::DecodeFailure, "RS decode failure: " + why);
}

}  // namespace

RsDecoded rs_decode(std::span<const Symbol> received, const RsCode& code) {
    const int n = code.n();
    if (received.size() != static_cast<std::size_t>(n))
        throw Error(ErrorKind::FramingError, "RS word must be " + std::to_string(n) + " symbols");
    const auto& f = code.field();
    const auto synd = rs_syndromes(received, code);
    const std::size_t two_t = synd.size();

    RsDecoded out;
    if (std::all_of(synd.begin(), synd.end(), [](Symbol s) { return s == 0; })) {
        out.message.assign(received.begin(), received.begin() + code.k());
        return out;
    }

    // Berlekamp-Massey
    std::vector<Symbol> lambda{1}, prev{1};
    int degree = 0, shift = 1;
    Symbol prev_disc = 1;
    for (std::size_t r = 0; r < two_t; ++r) {
        Symbol d = synd[r];
        for (int i = 1; i <= degree && static_cast<std::size_t>(i) < lambda.size(); ++i)
            d ^= f.mul(lambda[static_cast<std::size_t>(i)], synd[r - static_cast<std::size_t>(i)]);
        if (d == 0) {
            ++shift;
            continue;
        }
        const Symbol scale = f.div(d, prev_disc);
        std::vector<Symbol> next = lambda;
        if (next.size() < prev.size() + static_cast<std::size_t>(shift))
            next.resize(prev.size() + static_cast<std::size_t>(shift), 0);
        for (std::size_t i = 0; i < prev.size(); ++i)
            next[i + static_cast<std::size_t>(shift)] ^= f.mul(scale, prev[i]);
        if (2 * degree <= static_cast<int>(r)) {
            prev = lambda;
            degree = static_cast<int>(r) + 1 - degree;
            prev_disc = d;
            shift = 1;
        } else {
            ++shift;
        }
        lambda = std::move(next);
    }
    while (lambda.size() > 1 && lambda.back() == 0) lambda.pop_back();
    const int lambda_degree = static_cast<int>(lambda.size()) - 1;
    if (lambda_degree != degree || degree > code.t()) fail("too many errors");

    // Omega = S * Lambda mod x^(2t)
    std::vector<Symbol> omega(two_t, 0);
    for (std::size_t i = 0; i < two_t; ++i)
        for (std::size_t j = 0; j < lambda.size() && i + j < two_t; ++j)
            omega[i + j] ^= f.mul(synd[i], lambda[j]);

    // formal derivative: odd-power terms survive in characteristic 2
    std::vector<Symbol> dlambda(lambda.size() > 1 ? lambda.size() - 1 : 1, 0);
    for (std::size_t i = 1; i < lambda.size(); i += 2) dlambda[i - 1] = lambda[i];

    std::vector<Symbol> word(received.begin(), received.end());
    int roots = 0, fixed = 0;
    for (int pos = 0; pos < n; ++pos) {
        const int power = n - 1 - pos;
        const Symbol x_inv = f.alpha_pow(-power);
        if (eval_low_first(f, lambda, x_inv) != 0) continue;
        ++roots;
        const Symbol denom = eval_low_first(f, dlambda, x_inv);
        if (denom == 0) fail("repeated locator root");
        const Symbol magnitude = f.div(eval_low_first(f, omega, x_inv), denom);
        word[static_cast<std::size_t>(pos)] ^= magnitude;
        fixed += magnitude != 0;
    }
    if (roots != lambda_degree) fail("locator roots outside the codeword");

    const auto check = rs_syndromes(word, code);
    if (!std::all_of(check.begin(), check.end(), [](Symbol s) { return s == 0; }))
        fail("corrected word is not a codeword");

    out.corrected = fixed;
    out.message.assign(word.begin(), word.begin() + code.k());
    return out;
}

}  // namespace vlc

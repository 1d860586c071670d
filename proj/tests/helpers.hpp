#pragma once

#include <optional>

#include "vlcphy/error.hpp"

// Kind of the vlc::Error thrown by f, or nullopt when nothing is thrown.
template <typename F>
std::optional<vlc::ErrorKind> error_kind(F&& f) {
    try {
        f();
    } catch (const vlc::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

template <typename F>
std::optional<std::size_t> error_position(F&& f) {
    try {
        f();
    } catch (const vlc::Error& e) {
        return e.position();
    }
    return std::nullopt;
}

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vlc {

enum class ErrorKind {
    NotFound,
    FramingError,
    InvalidSymbol,
    DecodeFailure,
    HeaderCorrupt,
    UnknownMode,
    ConfigError,
    NoFrame,
    IoError,
};

std::string_view to_string(ErrorKind kind);

// Library-wide exception. `position` is set for symbol-level failures and
// holds the bit offset of the offending block.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::optional<std::size_t> position = {})
        : std::runtime_error(what), kind_(kind), position_(position) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> position() const noexcept { return position_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> position_;
};

}  // namespace vlc

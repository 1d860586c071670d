#include "vlcphy/error.hpp"

namespace vlc {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::FramingError: return "FramingError";
    case ErrorKind::InvalidSymbol: return "InvalidSymbol";
    case ErrorKind::DecodeFailure: return "DecodeFailure";
    case ErrorKind::HeaderCorrupt: return "HeaderCorrupt";
    case ErrorKind::UnknownMode: return "UnknownMode";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::NoFrame: return "NoFrame";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace vlc

#pragma once

#include <cstddef>

namespace vlc {

enum class OokDimming { LevelRedefinition, CompensationSymbols };
enum class IdleKind { InBand, OutOfBand };

// Brightness request. 50% with level redefinition is plain 0/1 OOK and
// 2PPM for VPPM.
struct DimmingConfig {
    int target_percent = 50;
    OokDimming ook_method = OokDimming::LevelRedefinition;
    int compensation_brightness = 0;  // level of compensation symbols, 0 or 1
    std::size_t subframe_length = 256;  // optical symbols per data sub-frame
    IdleKind idle = IdleKind::InBand;

    double level() const noexcept { return target_percent / 100.0; }
    bool uses_compensation() const noexcept {
        return ook_method == OokDimming::CompensationSymbols && target_percent != 50;
    }
};

// Compensation dimming toward `target_percent`, brightness chosen on the
// side of 50% the target lies.
inline DimmingConfig compensation_dimming(int target_percent, std::size_t subframe_length = 256) {
    DimmingConfig d;
    d.target_percent = target_percent;
    d.ook_method = OokDimming::CompensationSymbols;
    d.compensation_brightness = target_percent > 50 ? 1 : 0;
    d.subframe_length = subframe_length;
    return d;
}

}  // namespace vlc

#include "vlcphy/framing.hpp"

#include <array>
#include <string>

#include "vlcphy/crc.hpp"
#include "vlcphy/error.hpp"
#include "vlcphy/rll.hpp"

namespace vlc {

std::vector<std::uint8_t> Mhr::to_bytes() const {
    return {static_cast<std::uint8_t>(frame_control >> 8), static_cast<std::uint8_t>(frame_control & 0xff),
            sequence_number};
}

Mhr Mhr::from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kMhrOctets) throw Error(ErrorKind::FramingError, "MHR needs 3 octets");
    return {static_cast<std::uint16_t>((bytes[0] << 8) | bytes[1]), bytes[2]};
}

BitSequence build_phr(const Phr& phr) {
    if (phr.dimming_level < 0 || phr.dimming_level > 100)
        throw Error(ErrorKind::ConfigError, "dimming level must be 0..100");
    if (phr.mode_index < 0 || phr.mode_index > 31)
        throw Error(ErrorKind::ConfigError, "mode index must fit in 5 bits");
    BitSequence bits;
    bits.reserve(kPhrBits);
    bits.push_back(phr.phy == PhyType::PhyII);
    bits.append_uint(static_cast<std::uint64_t>(phr.mode_index), 5);
    bits.append_uint(phr.psdu_length, 16);
    bits.append_uint(static_cast<std::uint64_t>(phr.dimming_level), 7);
    bits.push_back(phr.compensated);
    bits.push_back(phr.compensation_brightness != 0);
    bits.append_uint(crc16_ccitt_false(bits.view()), 16);
    return bits;
}

BitSequence build_phr(const OperatingMode& mode, std::size_t psdu_length, int dimming_percent,
                      bool compensated, int compensation_brightness) {
    if (psdu_length > kMaxPsduOctets)
        throw Error(ErrorKind::FramingError, "PSDU of " + std::to_string(psdu_length) + " octets exceeds 65535");
    return build_phr(Phr{mode.phy, mode.index, static_cast<std::uint16_t>(psdu_length), dimming_percent,
                         compensated, compensation_brightness});
}

Phr parse_phr(const BitSequence& bits) {
    if (bits.size() != kPhrBits)
        throw Error(ErrorKind::FramingError, "PHR must be 47 bits, got " + std::to_string(bits.size()));
    const auto crc = static_cast<std::uint16_t>(bits.read_uint(kPhrInfoBits, 16));
    if (crc != crc16_ccitt_false(bits.view().first(kPhrInfoBits)))
        throw Error(ErrorKind::HeaderCorrupt, "PHR CRC mismatch");
    Phr phr;
    phr.phy = bits[0] ? PhyType::PhyII : PhyType::PhyI;
    phr.mode_index = static_cast<int>(bits.read_uint(1, 5));
    phr.psdu_length = static_cast<std::uint16_t>(bits.read_uint(6, 16));
    phr.dimming_level = static_cast<int>(bits.read_uint(22, 7));
    phr.compensated = bits[29];
    phr.compensation_brightness = bits[30];
    if (phr.dimming_level > 100) throw Error(ErrorKind::HeaderCorrupt, "PHR dimming level out of range");
    if (static_cast<std::size_t>(phr.mode_index) >= list_modes(phr.phy).size())
        throw Error(ErrorKind::UnknownMode, "mcs id " + std::to_string(bits.read_uint(0, 6)) + " not registered");
    return phr;
}

BitSequence flp_bits() {
    BitSequence bits;
    for (std::size_t i = 0; i < kFlpBits; ++i) bits.push_back(i % 2);
    return bits;
}

BitSequence tdp_bits(int topology) {
    if (topology < 0 || topology >= kTopologies)
        throw Error(ErrorKind::ConfigError, "topology must be 0..3");
    // s[n+4] = s[n+1] ^ s[n]
    std::array<Bit, kTdpPeriod> m{};
    m[3] = 1;
    for (std::size_t n = 0; n + 4 < kTdpPeriod; ++n) m[n + 4] = m[n + 1] ^ m[n];
    BitSequence bits;
    const auto phase = static_cast<std::size_t>(4 * topology);
    for (std::size_t r = 0; r < kTdpRepeats; ++r)
        for (std::size_t i = 0; i < kTdpPeriod; ++i) bits.push_back(m[(i + phase) % kTdpPeriod]);
    return bits;
}

BitSequence shr_bits(int topology) {
    auto bits = flp_bits();
    bits.append(tdp_bits(topology));
    return bits;
}

FecScheme phr_fec_scheme(PhyType phy) {
    if (phy == PhyType::PhyI) return {RsParams{15, 7}, CcRate::OneQuarter};
    return {RsParams{64, 32}, std::nullopt};
}

RllCode phr_line_code(PhyType phy, Modulation modulation) {
    if (phy == PhyType::PhyI) return RllCode::Manchester;
    return modulation == Modulation::Vppm ? RllCode::FourBSixB : RllCode::EightBTenB;
}

namespace {

std::size_t section_chips(std::size_t bits, const FecScheme& fec, RllCode rll) {
    const std::size_t coded = fec_encoded_length(fec, bits);
    const std::size_t block = rll_input_block(rll);
    return rll_encoded_length(rll, (coded + block - 1) / block * block);
}

}  // namespace

std::size_t phr_chip_count(PhyType phy, Modulation modulation) {
    return section_chips(kPhrBits, phr_fec_scheme(phy), phr_line_code(phy, modulation));
}

std::size_t psdu_chip_count(const OperatingMode& mode, std::size_t psdu_octets) {
    return section_chips(psdu_octets * 8, FecScheme::of(mode), mode.rll);
}

BitSequence encode_section(const BitSequence& bits, const FecScheme& fec, RllCode rll) {
    auto coded = fec_encode(bits, fec);
    const std::size_t block = rll_input_block(rll);
    coded.resize((coded.size() + block - 1) / block * block);
    return rll_encode(rll, coded);
}

BitSequence Frame::chips() const {
    BitSequence all = shr;
    all.append(phr_coded);
    all.append(psdu_coded);
    return all;
}

Frame assemble_frame(std::span<const std::uint8_t> payload, const OperatingMode& mode,
                     const DimmingConfig& dimming, const Mhr& mhr, int topology) {
    if (payload.size() > kMaxPayloadOctets)
        throw Error(ErrorKind::FramingError, "payload of " + std::to_string(payload.size()) +
                                                 " octets exceeds " + std::to_string(kMaxPayloadOctets));
    Frame f;
    f.mode = mode;
    f.topology = topology;
    f.mhr = mhr;
    const bool compensated = mode.modulation == Modulation::Ook && dimming.uses_compensation();
    f.phr = Phr{mode.phy, mode.index, static_cast<std::uint16_t>(payload.size() + kMhrOctets),
                dimming.target_percent, compensated, compensated ? dimming.compensation_brightness : 0};
    f.shr = shr_bits(topology);
    f.phr_coded = encode_section(build_phr(f.phr), phr_fec_scheme(mode.phy),
                                 phr_line_code(mode.phy, mode.modulation));

    auto psdu = mhr.to_bytes();
    psdu.insert(psdu.end(), payload.begin(), payload.end());
    f.psdu_coded = encode_section(BitSequence::from_bytes(psdu), FecScheme::of(mode), mode.rll);
    f.layout = {f.shr.size(), f.phr_coded.size(), f.psdu_coded.size()};
    return f;
}

FrameOverhead frame_overhead(const OperatingMode& mode, std::size_t payload_octets) {
    FrameOverhead o;
    o.layout = {kShrBits, phr_chip_count(mode.phy, mode.modulation),
                psdu_chip_count(mode, payload_octets + kMhrOctets)};
    o.total_bits = o.layout.total();
    o.efficiency = static_cast<double>(payload_octets * 8) / static_cast<double>(o.total_bits);
    return o;
}

}  // namespace vlc

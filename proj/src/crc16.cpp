#include "ztap/crc16.hpp"

#include <array>

namespace ztap {

namespace {

std::array<uint16_t, 256> make_table() {
    std::array<uint16_t, 256> table{};
    for (uint32_t i = 0; i < 256; ++i) {
        uint16_t crc = static_cast<uint16_t>(i);
        for (int bit = 0; bit < 8; ++bit) {
            if (crc & 1)
                crc = static_cast<uint16_t>((crc >> 1) ^ 0x8408);
            else
                crc >>= 1;
        }
        table[i] = crc;
    }
    return table;
}

const std::array<uint16_t, 256> kTable = make_table();

}  // namespace

uint16_t fcs16(ByteSpan mpdu_without_fcs) {
    uint16_t crc = 0x0000;
    for (uint8_t b : mpdu_without_fcs)
        crc = static_cast<uint16_t>((crc >> 8) ^ kTable[(crc ^ b) & 0xFF]);
    return crc;
}

bool fcs_check(ByteSpan full_mpdu) {
    if (full_mpdu.size() < 3) return false;
    const size_t n = full_mpdu.size() - 2;
    const uint16_t stored = rd16le(full_mpdu.data() + n);
    return fcs16(full_mpdu.first(n)) == stored;
}

}  // namespace ztap

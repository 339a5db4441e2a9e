#pragma once

#include "ztap/common.hpp"

namespace ztap {

// ITU-T CRC-16 as used for the IEEE 802.15.4 frame check sequence:
// polynomial 0x1021 processed LSB-first (reflected form 0x8408),
// initial value 0x0000, no final XOR.
uint16_t fcs16(ByteSpan mpdu_without_fcs);

// True when the trailing two bytes of a full MPDU (little-endian) equal the
// FCS computed over the preceding bytes. Frames shorter than 3 bytes fail.
bool fcs_check(ByteSpan full_mpdu);

}  // namespace ztap

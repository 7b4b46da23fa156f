#ifndef CERTDNS_KEYTAG_HPP
#define CERTDNS_KEYTAG_HPP

#include <cstdint>

#include "certdns/bytes.hpp"

namespace certdns {

// Two-octet key tag over arbitrary key octets, as used by the CERT and
// DNSSEC records to tell multiple keys at one owner name apart. Octets
// at even positions contribute shifted into the high byte, odd positions
// into the low byte; the 32-bit sum is folded once by its upper half.
// Total over all inputs up to 64 KiB, so no overflow is possible.
inline std::uint16_t compute_keytag(ByteView key) noexcept {
    std::uint32_t ac = 0;
    for (std::size_t i = 0; i < key.size(); ++i)
        ac += (i & 1) ? key[i] : static_cast<std::uint32_t>(key[i]) << 8;
    ac += (ac >> 16) & 0xFFFF;
    return static_cast<std::uint16_t>(ac & 0xFFFF);
}

} // namespace certdns

#endif // CERTDNS_KEYTAG_HPP

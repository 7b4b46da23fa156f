#ifndef CERTDNS_CERT_RECORD_HPP
#define CERTDNS_CERT_RECORD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "certdns/bytes.hpp"
#include "certdns/name.hpp"

namespace certdns {

// RR type and class codes used by the repository.
namespace rrtype {
inline constexpr std::uint16_t NS = 2;
inline constexpr std::uint16_t SOA = 6;
inline constexpr std::uint16_t CERT = 37;
inline constexpr std::uint16_t OPT = 41;
inline constexpr std::uint16_t ANY = 255;
} // namespace rrtype

inline constexpr std::uint16_t kClassIn = 1;

// Certificate format identifiers carried in the CERT rdata type field.
namespace certtype {
inline constexpr std::uint16_t PKIX = 1;
inline constexpr std::uint16_t SPKI = 2;
inline constexpr std::uint16_t PGP = 3;
} // namespace certtype

// DNSSEC algorithm numbers used in the CERT algorithm field. Zero is
// legal and marks an algorithm outside the original DNSSEC set.
namespace certalg {
inline constexpr std::uint8_t RSAMD5 = 1;
inline constexpr std::uint8_t DH = 2;
inline constexpr std::uint8_t DSA = 3;
inline constexpr std::uint8_t ECC = 4;
inline constexpr std::uint8_t RSASHA1 = 5;
} // namespace certalg

// The CERT rdata quadruple: certificate format, key tag, algorithm and
// the raw certificate (or CRL) octets.
struct CertRecordData {
    std::uint16_t cert_type = certtype::PKIX;
    std::uint16_t key_tag = 0;
    std::uint8_t algorithm = 0;
    Bytes payload;

    friend bool operator==(const CertRecordData&, const CertRecordData&) = default;
};

// Wire layout: cert_type(2) | key_tag(2) | algorithm(1) | payload.
// Throws TextError{BadSyntax} on an empty payload.
Bytes encode_cert_rdata(const CertRecordData& d);

// Inverse of encode_cert_rdata. Throws WireError on short input.
CertRecordData decode_cert_rdata(ByteView rdata);

// Mnemonic tables. Lookup by text is case-insensitive; rendering uses
// the canonical uppercase form and falls back to decimal.
std::optional<std::uint16_t> cert_type_from_mnemonic(std::string_view text);
std::string cert_type_to_text(std::uint16_t type);
std::optional<std::uint8_t> algorithm_from_mnemonic(std::string_view text);
std::string algorithm_to_text(std::uint8_t alg);

// Parses the presentation fields "type key_tag algorithm base64...".
// type/algorithm accept mnemonics or decimal; the base64 region may be
// parenthesized and split by arbitrary whitespace.
CertRecordData parse_cert_presentation(std::string_view text);

// One master-file record: "owner ttl IN CERT type tag alg (" followed by
// base64 wrapped at 64 characters per line and a closing ")". The output
// reparses (via parse_cert_presentation on the rdata fields) to an
// identical record.
std::string format_cert_presentation(const DomainName& owner, std::uint32_t ttl,
                                     const CertRecordData& d);

} // namespace certdns

#endif // CERTDNS_CERT_RECORD_HPP

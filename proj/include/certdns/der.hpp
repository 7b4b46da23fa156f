#ifndef CERTDNS_DER_HPP
#define CERTDNS_DER_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "certdns/bytes.hpp"

namespace certdns::der {

// Universal tags used by the certificate walker.
inline constexpr std::uint8_t kBoolean = 0x01;
inline constexpr std::uint8_t kInteger = 0x02;
inline constexpr std::uint8_t kBitString = 0x03;
inline constexpr std::uint8_t kOctetString = 0x04;
inline constexpr std::uint8_t kOid = 0x06;
inline constexpr std::uint8_t kUtf8String = 0x0C;
inline constexpr std::uint8_t kPrintableString = 0x13;
inline constexpr std::uint8_t kT61String = 0x14;
inline constexpr std::uint8_t kIa5String = 0x16;
inline constexpr std::uint8_t kBmpString = 0x1E;
inline constexpr std::uint8_t kSequence = 0x30;
inline constexpr std::uint8_t kSet = 0x31;

// Context-specific tag constructors.
constexpr std::uint8_t ctx_primitive(std::uint8_t n) { return static_cast<std::uint8_t>(0x80 | n); }
constexpr std::uint8_t ctx_constructed(std::uint8_t n) { return static_cast<std::uint8_t>(0xA0 | n); }

// One decoded TLV element.
struct Element {
    std::uint8_t tag = 0; // full identifier octet (low-tag-number form)
    ByteView content;     // value octets
    ByteView raw;         // the complete TLV, header included

    bool constructed() const noexcept { return tag & 0x20; }
};

// Sequential reader over the content octets of a constructed element
// (or a whole DER document). Definite lengths only; every violation is
// a DerError and no read ever leaves the input span.
class Cursor {
public:
    explicit Cursor(ByteView data) : data_(data) {}

    bool has_more() const noexcept { return pos_ < data_.size(); }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }

    // Reads the next element whatever its tag.
    Element next();

    // Reads the next element and demands the given tag.
    Element expect(std::uint8_t tag, const char* what);

    // Reads the next element only when its tag matches; otherwise leaves
    // the cursor untouched and returns nullopt.
    std::optional<Element> take_optional(std::uint8_t tag);

    // Peeks at the next identifier octet without consuming.
    std::optional<std::uint8_t> peek_tag() const;

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

// Dotted-decimal rendering of an OBJECT IDENTIFIER's content octets.
std::string decode_oid(ByteView content);

} // namespace certdns::der

#endif // CERTDNS_DER_HPP

#ifndef CERTDNS_BASE64_HPP
#define CERTDNS_BASE64_HPP

#include <string>
#include <string_view>

#include "certdns/bytes.hpp"

namespace certdns {

// RFC 4648 base64 with padding. encode() emits no line breaks.
std::string base64_encode(ByteView data);

// Strict decode: rejects non-alphabet characters (whitespace included),
// bad padding and trailing garbage with TextError{BadBase64}.
Bytes base64_decode(std::string_view text);

} // namespace certdns

#endif // CERTDNS_BASE64_HPP

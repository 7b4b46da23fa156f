#include "certdns/der.hpp"

#include "certdns/errors.hpp"

namespace certdns::der {

Element Cursor::next() {
    if (pos_ >= data_.size())
        throw DerError(DerError::Kind::Truncated, "DER element expected past end of input");
    std::size_t start = pos_;
    std::uint8_t tag = data_[pos_++];
    if ((tag & 0x1F) == 0x1F)
        throw DerError(DerError::Kind::BadTag, "high tag numbers are not supported");

    if (pos_ >= data_.size())
        throw DerError(DerError::Kind::Truncated, "DER length octet missing");
    std::uint8_t first = data_[pos_++];
    std::size_t len = 0;
    if (first < 0x80) {
        len = first;
    } else if (first == 0x80) {
        throw DerError(DerError::Kind::BadLength, "indefinite length is not DER");
    } else {
        std::size_t count = first & 0x7F;
        if (count > 4)
            throw DerError(DerError::Kind::BadLength, "length field wider than 4 octets");
        if (count > data_.size() - pos_)
            throw DerError(DerError::Kind::Truncated, "DER length octets missing");
        for (std::size_t i = 0; i < count; ++i)
            len = len << 8 | data_[pos_++];
    }
    if (len > data_.size() - pos_)
        throw DerError(DerError::Kind::Truncated,
                       "DER element content extends past end of input");

    Element e;
    e.tag = tag;
    e.content = data_.subspan(pos_, len);
    e.raw = data_.subspan(start, pos_ - start + len);
    pos_ += len;
    return e;
}

Element Cursor::expect(std::uint8_t tag, const char* what) {
    Element e = next();
    if (e.tag != tag)
        throw DerError(DerError::Kind::BadTag,
                       std::string("expected ") + what + ", found tag 0x" +
                           to_hex(ByteView(&e.tag, 1)));
    return e;
}

std::optional<Element> Cursor::take_optional(std::uint8_t tag) {
    if (auto t = peek_tag(); !t || *t != tag)
        return std::nullopt;
    return next();
}

std::optional<std::uint8_t> Cursor::peek_tag() const {
    if (pos_ >= data_.size())
        return std::nullopt;
    return data_[pos_];
}

std::string decode_oid(ByteView content) {
    if (content.empty())
        throw DerError(DerError::Kind::BadLength, "empty OBJECT IDENTIFIER");
    std::string out;
    std::uint64_t component = 0;
    bool first = true;
    int continuation = 0;
    for (std::size_t i = 0; i < content.size(); ++i) {
        std::uint8_t b = content[i];
        if (component > (UINT64_MAX >> 7))
            throw DerError(DerError::Kind::BadLength, "OID component overflow");
        component = component << 7 | (b & 0x7F);
        if (b & 0x80) {
            if (++continuation > 9)
                throw DerError(DerError::Kind::BadLength, "OID component too long");
            continue;
        }
        continuation = 0;
        if (first) {
            // The leading component packs the first two arcs.
            std::uint64_t arc1 = component < 80 ? component / 40 : 2;
            std::uint64_t arc2 = component - arc1 * 40;
            out = std::to_string(arc1) + "." + std::to_string(arc2);
            first = false;
        } else {
            out += "." + std::to_string(component);
        }
        component = 0;
    }
    if (content.back() & 0x80)
        throw DerError(DerError::Kind::Truncated, "OID ends inside a component");
    return out;
}

} // namespace certdns::der

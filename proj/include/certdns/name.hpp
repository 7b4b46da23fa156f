#ifndef CERTDNS_NAME_HPP
#define CERTDNS_NAME_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "certdns/bytes.hpp"

namespace certdns {

// A validated DNS domain name: a sequence of labels, each 1..63 octets,
// whole name at most 255 octets in wire encoding. Labels are folded to
// ASCII lowercase on construction, so equality and ordering are the
// case-insensitive ones and to_text() is always canonical.
class DomainName {
public:
    static constexpr std::size_t kMaxLabel = 63;
    static constexpr std::size_t kMaxEncoded = 255;

    // The root name (zero labels).
    DomainName() = default;

    // Parses dotted text. Accepts an optional trailing dot; "" and "."
    // denote the root. Throws TextError{BadName} on violations.
    static DomainName from_text(std::string_view text);

    // Builds from explicit labels. Throws TextError{BadName} on violations.
    static DomainName from_labels(std::vector<std::string> labels);

    // Canonical lowercase text without a trailing dot; "." for the root.
    std::string to_text() const;

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool is_root() const noexcept { return labels_.empty(); }
    std::size_t label_count() const noexcept { return labels_.size(); }

    // Wire size of the uncompressed encoding (length octets + terminator).
    std::size_t encoded_size() const noexcept;

    // True when this name equals `apex` or lies below it.
    bool is_within(const DomainName& apex) const;

    // New name with `suffix`'s labels appended after this one's.
    DomainName with_suffix(const DomainName& suffix) const;

    // Uncompressed wire encoding: length-prefixed labels, zero terminator.
    void write_wire(WireWriter& w) const;

    // Reads a (possibly compressed) name starting at the reader's cursor.
    // Pointers are followed against the whole message; every pointer must
    // target an offset strictly below every previously visited position,
    // which rejects loops. The cursor ends just after the name's first
    // pointer or terminator.
    static DomainName read_wire(WireReader& r);

    friend bool operator==(const DomainName&, const DomainName&) = default;
    friend std::strong_ordering operator<=>(const DomainName& a, const DomainName& b) {
        return a.labels_ <=> b.labels_;
    }

private:
    std::vector<std::string> labels_;
};

} // namespace certdns

#endif // CERTDNS_NAME_HPP

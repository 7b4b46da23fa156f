#include "certdns/name.hpp"

#include <algorithm>
#include <cctype>

namespace certdns {

namespace {

char fold(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Octets legal inside a label's text form: visible ASCII except the
// label separator. Wire decoding applies the same filter so that
// to_text() round-trips.
bool label_octet_ok(unsigned char c) {
    return c > 0x20 && c < 0x7F && c != '.';
}

void check_label(std::string_view label) {
    if (label.empty())
        throw TextError(TextError::Kind::BadName, "empty label");
    if (label.size() > DomainName::kMaxLabel)
        throw TextError(TextError::Kind::BadName,
                        "label exceeds 63 octets: " + std::string(label));
    for (unsigned char c : label)
        if (!label_octet_ok(c))
            throw TextError(TextError::Kind::BadName,
                            "invalid octet in label: " + std::string(label));
}

void check_total(const std::vector<std::string>& labels) {
    std::size_t total = 1; // terminating zero octet
    for (const auto& l : labels)
        total += 1 + l.size();
    if (total > DomainName::kMaxEncoded)
        throw TextError(TextError::Kind::BadName, "name exceeds 255 octets");
}

} // namespace

DomainName DomainName::from_text(std::string_view text) {
    if (!text.empty() && text.back() == '.')
        text.remove_suffix(1);
    if (text.empty())
        return DomainName{};
    std::vector<std::string> labels;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '.') {
            labels.emplace_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return from_labels(std::move(labels));
}

DomainName DomainName::from_labels(std::vector<std::string> labels) {
    for (auto& l : labels) {
        check_label(l);
        std::transform(l.begin(), l.end(), l.begin(), fold);
    }
    check_total(labels);
    DomainName n;
    n.labels_ = std::move(labels);
    return n;
}

std::string DomainName::to_text() const {
    if (labels_.empty())
        return ".";
    std::string out;
    for (const auto& l : labels_) {
        if (!out.empty())
            out.push_back('.');
        out += l;
    }
    return out;
}

std::size_t DomainName::encoded_size() const noexcept {
    std::size_t total = 1;
    for (const auto& l : labels_)
        total += 1 + l.size();
    return total;
}

bool DomainName::is_within(const DomainName& apex) const {
    if (apex.labels_.size() > labels_.size())
        return false;
    return std::equal(apex.labels_.rbegin(), apex.labels_.rend(), labels_.rbegin());
}

DomainName DomainName::with_suffix(const DomainName& suffix) const {
    std::vector<std::string> labels = labels_;
    labels.insert(labels.end(), suffix.labels_.begin(), suffix.labels_.end());
    return from_labels(std::move(labels));
}

void DomainName::write_wire(WireWriter& w) const {
    for (const auto& l : labels_) {
        w.u8(static_cast<std::uint8_t>(l.size()));
        w.raw(ByteView(reinterpret_cast<const std::uint8_t*>(l.data()), l.size()));
    }
    w.u8(0);
}

DomainName DomainName::read_wire(WireReader& r) {
    std::vector<std::string> labels;
    std::size_t total = 1;
    // Offsets strictly decrease across pointer jumps; the first jump must
    // also land before the pointer itself. That admits every name an
    // RFC-conformant encoder can produce and makes loops impossible.
    std::size_t low_water = r.pos();
    std::size_t resume = 0; // cursor position after the name, once a pointer was taken
    bool jumped = false;

    for (;;) {
        std::uint8_t len = r.u8();
        if (len == 0)
            break;
        if ((len & 0xC0) == 0xC0) {
            std::size_t target = static_cast<std::size_t>(len & 0x3F) << 8 | r.u8();
            if (!jumped) {
                resume = r.pos();
                jumped = true;
            }
            if (target >= low_water)
                throw WireError(WireError::Kind::CompressionLoop,
                                "compression pointer does not descend: target " +
                                    std::to_string(target));
            low_water = target;
            r.seek(target);
            continue;
        }
        if ((len & 0xC0) != 0)
            throw WireError(WireError::Kind::BadLabel,
                            "reserved label type " + std::to_string(len >> 6));
        if (len > kMaxLabel)
            throw WireError(WireError::Kind::BadLabel, "label exceeds 63 octets");
        ByteView raw = r.take(len);
        total += 1 + len;
        if (total > kMaxEncoded)
            throw WireError(WireError::Kind::BadLabel, "name exceeds 255 octets");
        std::string label;
        label.reserve(len);
        for (std::uint8_t c : raw) {
            if (!label_octet_ok(c))
                throw WireError(WireError::Kind::BadLabel,
                                "invalid octet in wire label");
            label.push_back(fold(static_cast<char>(c)));
        }
        labels.push_back(std::move(label));
    }

    if (jumped)
        r.seek(resume);
    DomainName n;
    n.labels_ = std::move(labels);
    return n;
}

} // namespace certdns

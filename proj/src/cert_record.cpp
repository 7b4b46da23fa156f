#include "certdns/cert_record.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "certdns/base64.hpp"

namespace certdns {

namespace {

struct Mnemonic {
    std::string_view text;
    std::uint16_t value;
};

constexpr Mnemonic kCertTypes[] = {
    {"PKIX", certtype::PKIX},
    {"SPKI", certtype::SPKI},
    {"PGP", certtype::PGP},
};

constexpr Mnemonic kAlgorithms[] = {
    {"RSAMD5", certalg::RSAMD5}, {"DH", certalg::DH},           {"DSA", certalg::DSA},
    {"ECC", certalg::ECC},       {"RSASHA1", certalg::RSASHA1},
};

bool iequal(std::string_view a, std::string_view b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::toupper(static_cast<unsigned char>(x)) ==
               std::toupper(static_cast<unsigned char>(y));
    });
}

std::uint16_t parse_decimal(std::string_view token, std::uint32_t max, std::string_view what) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw TextError(TextError::Kind::BadInteger,
                        std::string(what) + " is not a valid integer: " + std::string(token));
    if (value > max)
        throw TextError(TextError::Kind::BadInteger,
                        std::string(what) + " out of range: " + std::string(token));
    return static_cast<std::uint16_t>(value);
}

// Mnemonic lookup, then decimal with a range check.
std::uint16_t parse_field(std::string_view token, std::span<const Mnemonic> table,
                          std::uint32_t max, std::string_view what) {
    for (const auto& m : table)
        if (iequal(token, m.text))
            return m.value;
    if (token.empty() || !std::isdigit(static_cast<unsigned char>(token.front())))
        throw TextError(TextError::Kind::UnknownMnemonic,
                        "unknown " + std::string(what) + " mnemonic: " + std::string(token));
    return parse_decimal(token, max, what);
}

std::vector<std::string_view> tokenize(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i >= text.size())
            break;
        // Parentheses are their own tokens even when glued to base64.
        if (text[i] == '(' || text[i] == ')') {
            tokens.push_back(text.substr(i, 1));
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
               text[i] != '(' && text[i] != ')')
            ++i;
        tokens.push_back(text.substr(start, i - start));
    }
    return tokens;
}

} // namespace

Bytes encode_cert_rdata(const CertRecordData& d) {
    if (d.payload.empty())
        throw TextError(TextError::Kind::BadSyntax, "CERT payload must be non-empty");
    WireWriter w;
    w.u16(d.cert_type);
    w.u16(d.key_tag);
    w.u8(d.algorithm);
    w.raw(d.payload);
    return w.take();
}

CertRecordData decode_cert_rdata(ByteView rdata) {
    WireReader r(rdata);
    CertRecordData d;
    d.cert_type = r.u16();
    d.key_tag = r.u16();
    d.algorithm = r.u8();
    if (r.at_end())
        throw WireError(WireError::Kind::Truncated, "CERT rdata has no payload");
    ByteView payload = r.take(r.remaining());
    d.payload.assign(payload.begin(), payload.end());
    return d;
}

std::optional<std::uint16_t> cert_type_from_mnemonic(std::string_view text) {
    for (const auto& m : kCertTypes)
        if (iequal(text, m.text))
            return m.value;
    return std::nullopt;
}

std::string cert_type_to_text(std::uint16_t type) {
    for (const auto& m : kCertTypes)
        if (m.value == type)
            return std::string(m.text);
    return std::to_string(type);
}

std::optional<std::uint8_t> algorithm_from_mnemonic(std::string_view text) {
    for (const auto& m : kAlgorithms)
        if (iequal(text, m.text))
            return static_cast<std::uint8_t>(m.value);
    return std::nullopt;
}

std::string algorithm_to_text(std::uint8_t alg) {
    for (const auto& m : kAlgorithms)
        if (m.value == alg)
            return std::string(m.text);
    return std::to_string(alg);
}

CertRecordData parse_cert_presentation(std::string_view text) {
    auto tokens = tokenize(text);
    if (tokens.size() < 4)
        throw TextError(TextError::Kind::BadSyntax,
                        "CERT presentation needs type, key tag, algorithm and payload");

    CertRecordData d;
    d.cert_type = parse_field(tokens[0], kCertTypes, 0xFFFF, "certificate type");
    d.key_tag = parse_decimal(tokens[1], 0xFFFF, "key tag");
    d.algorithm =
        static_cast<std::uint8_t>(parse_field(tokens[2], kAlgorithms, 0xFF, "algorithm"));

    // Everything after the algorithm is base64, possibly wrapped in one
    // pair of parentheses and split across lines.
    std::size_t first = 3;
    std::size_t last = tokens.size();
    if (tokens[first] == "(") {
        if (tokens[last - 1] != ")")
            throw TextError(TextError::Kind::BadSyntax, "unbalanced '(' in CERT record");
        ++first;
        --last;
    } else if (tokens[last - 1] == ")") {
        throw TextError(TextError::Kind::BadSyntax, "unbalanced ')' in CERT record");
    }
    std::string b64;
    for (std::size_t i = first; i < last; ++i) {
        if (tokens[i] == "(" || tokens[i] == ")")
            throw TextError(TextError::Kind::BadSyntax, "nested parentheses in CERT record");
        b64 += tokens[i];
    }
    if (b64.empty())
        throw TextError(TextError::Kind::BadSyntax, "CERT record has no payload field");
    d.payload = base64_decode(b64);
    if (d.payload.empty())
        throw TextError(TextError::Kind::BadSyntax, "CERT payload must be non-empty");
    return d;
}

std::string format_cert_presentation(const DomainName& owner, std::uint32_t ttl,
                                     const CertRecordData& d) {
    std::string b64 = base64_encode(d.payload);
    std::string out = owner.to_text() + " " + std::to_string(ttl) + " IN CERT " +
                      cert_type_to_text(d.cert_type) + " " + std::to_string(d.key_tag) + " " +
                      algorithm_to_text(d.algorithm) + " (";
    for (std::size_t i = 0; i < b64.size(); i += 64) {
        out += "\n        ";
        out += b64.substr(i, 64);
    }
    out += " )";
    return out;
}

} // namespace certdns

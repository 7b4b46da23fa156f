#include "certdns/naming.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <cctype>
#include <optional>

#include "certdns/errors.hpp"

namespace certdns {

namespace {

bool iequals(std::string_view a, std::string_view b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

bool is_dc_attribute(std::string_view attr)
{
    return attr == oid::kDomainComponent || iequals(attr, "DC");
}

// Hostname-shaped: two or more letter-digit-hyphen labels, no label
// starting or ending with '-', final label purely alphabetic. Filters
// out person names, serial strings and dotted-quad IPs.
bool hostname_shaped(std::string_view text)
{
    std::size_t label_start = 0;
    std::size_t labels = 0;
    std::string_view last;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] != '.')
            continue;
        std::string_view label = text.substr(label_start, i - label_start);
        if (label.empty() || label.front() == '-' || label.back() == '-')
            return false;
        for (char c : label)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-')
                return false;
        last = label;
        ++labels;
        label_start = i + 1;
    }
    if (labels < 2)
        return false;
    return std::all_of(last.begin(), last.end(), [](char c) {
        return std::isalpha(static_cast<unsigned char>(c));
    });
}

// 4 or 16 address octets when the host is an IPv4/IPv6 literal.
std::optional<Bytes> parse_ip_literal(const std::string& host)
{
    unsigned char buf[16];
    if (inet_pton(AF_INET, host.c_str(), buf) == 1)
        return Bytes(buf, buf + 4);
    if (inet_pton(AF_INET6, host.c_str(), buf) == 1)
        return Bytes(buf, buf + 16);
    return std::nullopt;
}

std::optional<NamingDecision> try_subject(const IdentitySummary& id)
{
    // Most-specific RDN first, the order the rules reason in.
    auto dn = id.subject_dn;
    std::reverse(dn.begin(), dn.end());

    for (const auto& [attr, value] : dn) {
        if (attr != oid::kCommonName || !hostname_shaped(value))
            continue;
        try {
            return NamingDecision{DomainName::from_text(value),
                                  NamingRule::SubjectDomainName, NameSource::Subject};
        } catch (const TextError&) {
        }
    }
    for (const auto& [attr, value] : dn) {
        if (attr != oid::kEmailAddress)
            continue;
        try {
            return NamingDecision{translate_email(value), NamingRule::EmailTranslation,
                                  NameSource::Subject};
        } catch (const NamingError&) {
        }
    }
    try {
        return NamingDecision{translate_dn(dn), NamingRule::Rfc2247DnMapping,
                              NameSource::Subject};
    } catch (const NamingError&) {
    } catch (const TextError&) {
    }
    return std::nullopt;
}

std::optional<NamingDecision> try_san(const IdentitySummary& id)
{
    for (const auto& e : id.san_entries) {
        if (e.kind != SanEntry::Kind::DnsName)
            continue;
        try {
            return NamingDecision{DomainName::from_text(e.text),
                                  NamingRule::SubjectDomainName,
                                  NameSource::SubjectAltName};
        } catch (const TextError&) {
        }
    }
    // iPAddress entries and URIs whose host is an IP literal both map
    // through the inverse-name translation.
    for (const auto& e : id.san_entries) {
        Bytes ip;
        if (e.kind == SanEntry::Kind::IpAddress) {
            ip = e.ip;
        } else if (e.kind == SanEntry::Kind::Uri) {
            try {
                auto literal = parse_ip_literal(uri_host(e.text));
                if (!literal)
                    continue;
                ip = *literal;
            } catch (const NamingError&) {
                continue;
            }
        } else {
            continue;
        }
        try {
            return NamingDecision{translate_ip(ip), NamingRule::InverseIpName,
                                  NameSource::SubjectAltName};
        } catch (const NamingError&) {
        }
    }
    for (const auto& e : id.san_entries) {
        if (e.kind != SanEntry::Kind::Uri)
            continue;
        try {
            std::string host = uri_host(e.text);
            if (parse_ip_literal(host))
                continue;
            return NamingDecision{DomainName::from_text(host),
                                  NamingRule::UriDomainName,
                                  NameSource::SubjectAltName};
        } catch (const NamingError&) {
        } catch (const TextError&) {
        }
    }
    for (const auto& e : id.san_entries) {
        if (e.kind != SanEntry::Kind::Rfc822Name)
            continue;
        try {
            return NamingDecision{translate_email(e.text), NamingRule::EmailTranslation,
                                  NameSource::SubjectAltName};
        } catch (const NamingError&) {
        }
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(NamingRule rule)
{
    switch (rule) {
    case NamingRule::SubjectDomainName: return "subject-domain-name";
    case NamingRule::InverseIpName: return "inverse-ip-name";
    case NamingRule::UriDomainName: return "uri-domain-name";
    case NamingRule::EmailTranslation: return "email-translation";
    case NamingRule::Rfc2247DnMapping: return "dn-dc-mapping";
    }
    return "?";
}

std::string_view to_string(NameSource source)
{
    switch (source) {
    case NameSource::Subject: return "Subject";
    case NameSource::SubjectAltName: return "SubjectAltName";
    }
    return "?";
}

DomainName translate_email(std::string_view addr)
{
    std::size_t at = addr.find('@');
    if (at == std::string_view::npos || addr.find('@', at + 1) != std::string_view::npos)
        throw NamingError(NamingError::Kind::BadEmail,
                          "e-mail address must contain exactly one '@': \"" +
                              std::string(addr) + "\"");
    std::string_view local = addr.substr(0, at);
    std::string_view domain = addr.substr(at + 1);
    if (local.empty() || domain.empty())
        throw NamingError(NamingError::Kind::BadEmail,
                          "e-mail address has an empty part: \"" + std::string(addr) + "\"");
    if (local.find('"') != std::string_view::npos ||
        local.find('\\') != std::string_view::npos)
        throw NamingError(NamingError::Kind::BadEmail,
                          "quoted or escaped local parts are not supported");

    std::vector<std::string> labels;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= local.size(); ++i) {
        if (i < local.size() && local[i] != '.')
            continue;
        if (i == start)
            throw NamingError(NamingError::Kind::BadEmail,
                              "empty dot-separated token in local part");
        labels.emplace_back(local.substr(start, i - start));
        start = i + 1;
    }
    try {
        DomainName tail = DomainName::from_text(domain);
        for (const auto& l : tail.labels())
            labels.push_back(l);
        return DomainName::from_labels(std::move(labels));
    } catch (const TextError& e) {
        throw NamingError(NamingError::Kind::BadName, e.what());
    }
}

DomainName translate_ip(ByteView ip)
{
    std::vector<std::string> labels;
    if (ip.size() == 4) {
        for (std::size_t i = 0; i < 4; ++i)
            labels.push_back(std::to_string(ip[3 - i]));
        labels.emplace_back("in-addr");
    } else if (ip.size() == 16) {
        static const char* hex = "0123456789abcdef";
        for (std::size_t i = 0; i < 16; ++i) {
            std::uint8_t octet = ip[15 - i];
            labels.emplace_back(1, hex[octet & 0x0F]);
            labels.emplace_back(1, hex[octet >> 4]);
        }
        labels.emplace_back("ip6");
    } else {
        throw NamingError(NamingError::Kind::BadIpLength,
                          "address must be 4 or 16 octets, got " +
                              std::to_string(ip.size()));
    }
    labels.emplace_back("arpa");
    return DomainName::from_labels(std::move(labels));
}

DomainName translate_dn(const std::vector<std::pair<std::string, std::string>>& dn)
{
    std::vector<std::string> labels;
    for (const auto& [attr, value] : dn)
        if (is_dc_attribute(attr))
            labels.push_back(value);
    if (labels.empty())
        throw NamingError(NamingError::Kind::NoDcComponents,
                          "subject DN carries no domainComponent attributes");
    try {
        return DomainName::from_labels(std::move(labels));
    } catch (const TextError& e) {
        throw NamingError(NamingError::Kind::BadName, e.what());
    }
}

std::string uri_host(std::string_view uri)
{
    std::size_t scheme_end = uri.find("://");
    if (scheme_end == std::string_view::npos || scheme_end == 0)
        throw NamingError(NamingError::Kind::BadUri,
                          "URI has no scheme://authority form: \"" + std::string(uri) +
                              "\"");
    std::string_view rest = uri.substr(scheme_end + 3);
    std::size_t auth_end = rest.find_first_of("/?#");
    std::string_view authority =
        auth_end == std::string_view::npos ? rest : rest.substr(0, auth_end);

    std::size_t userinfo = authority.rfind('@');
    if (userinfo != std::string_view::npos)
        authority = authority.substr(userinfo + 1);

    std::string_view host;
    if (!authority.empty() && authority.front() == '[') {
        std::size_t close = authority.find(']');
        if (close == std::string_view::npos)
            throw NamingError(NamingError::Kind::BadUri,
                              "unterminated IPv6 literal in URI authority");
        host = authority.substr(1, close - 1);
    } else {
        host = authority.substr(0, authority.find(':'));
    }
    if (host.empty())
        throw NamingError(NamingError::Kind::BadUri,
                          "URI authority has no host: \"" + std::string(uri) + "\"");
    return std::string(host);
}

NamingDecision map_identity(const IdentitySummary& id, NamingProfile profile)
{
    if (profile == NamingProfile::Polito) {
        for (const auto& e : id.san_entries)
            if (e.kind == SanEntry::Kind::DnsName)
                return {DomainName::from_text(e.text), NamingRule::SubjectDomainName,
                        NameSource::SubjectAltName};
        for (const auto& e : id.san_entries)
            if (e.kind == SanEntry::Kind::Rfc822Name)
                return {translate_email(e.text), NamingRule::EmailTranslation,
                        NameSource::SubjectAltName};
        throw NamingError(NamingError::Kind::NoNameDerivable,
                          "certificate carries neither a SAN dNSName nor a SAN "
                          "rfc822Name");
    }

    if (auto d = try_subject(id))
        return *d;
    if (auto d = try_san(id))
        return *d;
    throw NamingError(NamingError::Kind::NoNameDerivable,
                      "no naming rule applies to this certificate");
}

} // namespace certdns

#ifndef CERTDNS_IDENTITY_HPP
#define CERTDNS_IDENTITY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certdns/bytes.hpp"

namespace certdns {

// Dotted-decimal OIDs the repository cares about.
namespace oid {
inline constexpr std::string_view kCommonName = "2.5.4.3";
inline constexpr std::string_view kCountry = "2.5.4.6";
inline constexpr std::string_view kOrganization = "2.5.4.10";
inline constexpr std::string_view kOrgUnit = "2.5.4.11";
inline constexpr std::string_view kDomainComponent = "0.9.2342.19200300.100.1.25";
inline constexpr std::string_view kEmailAddress = "1.2.840.113549.1.9.1";
inline constexpr std::string_view kSubjectAltName = "2.5.29.17";
inline constexpr std::string_view kRsaMd5 = "1.2.840.113549.1.1.4";
inline constexpr std::string_view kRsaSha1 = "1.2.840.113549.1.1.5";
inline constexpr std::string_view kDsaSha1 = "1.2.840.10040.4.3";
} // namespace oid

// Short display name (CN, O, OU, C, DC, emailAddress) for well-known
// subject attribute OIDs; nullopt keeps the dotted-decimal form.
std::optional<std::string_view> oid_short_name(std::string_view dotted);

// One SubjectAltName GeneralName of the four supported kinds.
struct SanEntry {
    enum class Kind { Rfc822Name, DnsName, Uri, IpAddress };

    Kind kind = Kind::Rfc822Name;
    std::string text; // rfc822Name / dNSName / URI value
    Bytes ip;         // iPAddress octets (4 or 16)

    static SanEntry rfc822(std::string value);
    static SanEntry dns(std::string value);
    static SanEntry uri(std::string value);
    static SanEntry ip_address(Bytes octets);

    friend bool operator==(const SanEntry&, const SanEntry&) = default;
};

// The certificate fields the naming scheme and key tag need.
struct IdentitySummary {
    int version = 1; // X.509 version number (1, 2 or 3)
    // Subject attributes as (dotted OID, decoded value), in DER order,
    // i.e. least-specific RDN first.
    std::vector<std::pair<std::string, std::string>> subject_dn;
    std::vector<SanEntry> san_entries; // certificate order
    Bytes spki_der;                    // verbatim SubjectPublicKeyInfo TLV
    std::string sig_alg_oid;           // outer signatureAlgorithm OID
    std::size_t der_size = 0;          // whole-certificate octet count
    // Set when the certificate is not v3 and carries no SubjectAltName;
    // such certificates are accepted but may not be nameable.
    bool non_v3_warning = false;
};

// Walks a DER-encoded X.509 certificate and collects the subject DN,
// the SubjectAltName entries (unsupported GeneralName kinds skipped),
// the raw SubjectPublicKeyInfo and the signature algorithm OID. Throws
// DerError on malformed input; performs no signature or validity
// checking.
IdentitySummary extract_identity(ByteView cert_der);

// Line-oriented operator-facing dump of a summary.
std::string describe_identity(const IdentitySummary& id);

} // namespace certdns

#endif // CERTDNS_IDENTITY_HPP

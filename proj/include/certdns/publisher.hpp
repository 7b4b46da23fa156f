#ifndef CERTDNS_PUBLISHER_HPP
#define CERTDNS_PUBLISHER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "certdns/naming.hpp"
#include "certdns/zone.hpp"

namespace certdns {

// Owner names the operator must not publish (subscriber privacy
// opt-out). An entry denies the exact name and everything below it.
class DenyList {
public:
    DenyList() = default;

    // One name per line; blank lines and ';' comments allowed.
    static DenyList from_text(std::string_view text);
    static DenyList from_file(const std::string& path);

    bool denies(const DomainName& name) const;
    bool empty() const noexcept { return names_.empty(); }

private:
    std::vector<DomainName> names_;
};

// CERT algorithm field value for a certificate signature OID:
// RSA/MD5 -> 1, DSA/SHA1 -> 3, RSA/SHA1 -> 5, anything else -> 0.
std::uint8_t algorithm_from_signature_oid(std::string_view sig_oid);

// Reads a certificate file, accepting raw DER or a PEM CERTIFICATE
// block. Throws ZoneError{Io} on I/O failure, TextError on bad PEM.
Bytes load_certificate_file(const std::string& path);

// Certificate octets to zone entry: owner from the naming rules, key
// tag over the SubjectPublicKeyInfo, algorithm from the signature OID,
// payload = the certificate itself. Throws DerError/NamingError, and
// ZoneError{Denied} when the owner is deny-listed.
ZoneEntry build_entry(ByteView cert_der, std::uint32_t ttl = kDefaultTtl,
                      NamingProfile profile = NamingProfile::Generic,
                      const DenyList* deny = nullptr);

} // namespace certdns

#endif // CERTDNS_PUBLISHER_HPP

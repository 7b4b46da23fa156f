#ifndef CERTDNS_NAMING_HPP
#define CERTDNS_NAMING_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certdns/identity.hpp"
#include "certdns/name.hpp"

namespace certdns {

// The prioritized subject-to-owner-name rules, in priority order.
enum class NamingRule {
    SubjectDomainName, // an explicit domain name identifies the subject
    InverseIpName,     // IP address mapped to in-addr.arpa / ip6.arpa
    UriDomainName,     // host extracted from a URI
    EmailTranslation,  // e-mail address with '@' replaced by '.'
    Rfc2247DnMapping,  // domainComponent attributes of the DN
};

enum class NameSource { Subject, SubjectAltName };

// Generic applies the full rule table, Subject field first. Polito is
// the deployment shortcut: server certificates are named by their SAN
// dNSName, personal certificates by the translated SAN rfc822Name, and
// a certificate carrying both counts as a server certificate.
enum class NamingProfile { Generic, Polito };

struct NamingDecision {
    DomainName owner;
    NamingRule rule_applied = NamingRule::SubjectDomainName;
    NameSource source_field = NameSource::Subject;
};

std::string_view to_string(NamingRule rule);
std::string_view to_string(NameSource source);

// "local@domain" -> "local.domain" with each dot-separated local token
// becoming its own label. Quoted or escaped local parts are rejected.
// Throws NamingError{BadEmail, BadName}.
DomainName translate_email(std::string_view addr);

// 4 octets -> reversed dotted decimal under in-addr.arpa;
// 16 octets -> 32 reversed hex nibbles under ip6.arpa.
// Throws NamingError{BadIpLength}.
DomainName translate_ip(ByteView ip);

// Joins domainComponent values of a most-specific-first DN into a name.
// Attributes may use the DC OID or the short name "DC". Throws
// NamingError{NoDcComponents} when no DC attribute is present.
DomainName translate_dn(const std::vector<std::pair<std::string, std::string>>& dn);

// Host portion of "scheme://[userinfo@]host[:port]/...", brackets
// stripped from IPv6 literals. Throws NamingError{BadUri}.
std::string uri_host(std::string_view uri);

// Applies the profile's rules to a certificate identity and returns the
// owner name with the rule and source that produced it. Throws
// NamingError{NoNameDerivable} when nothing applies.
NamingDecision map_identity(const IdentitySummary& id,
                            NamingProfile profile = NamingProfile::Generic);

} // namespace certdns

#endif // CERTDNS_NAMING_HPP

#ifndef CERTDNS_RESOLVER_HPP
#define CERTDNS_RESOLVER_HPP

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "certdns/cert_record.hpp"
#include "certdns/name.hpp"
#include "certdns/transport.hpp"

namespace certdns {

// What the caller wants a certificate for: a person (e-mail address),
// a host, or an already-constructed owner name.
struct LookupTarget {
    enum class Kind { Email, Host, RawName };

    Kind kind = Kind::Host;
    std::string email;
    DomainName name;

    // Text with '@' is an e-mail address, anything else a host name.
    static LookupTarget parse(std::string_view text);

    static LookupTarget for_email(std::string email);
    static LookupTarget for_host(DomainName host);
    static LookupTarget raw(DomainName name);
};

// Owner name the CERT query is sent for.
DomainName resolve_target(const LookupTarget& target);

enum class TransportPolicy { UdpThenTcp, TcpOnly };
enum class TransportUsed { Udp, Tcp };

struct LookupRequest {
    LookupTarget target;
    // EDNS0 advertised payload size; nullopt sends no OPT record and
    // accepts the classic 512-octet ceiling. When present, >= 512.
    std::optional<std::uint16_t> edns_payload = 4096;
    TransportPolicy policy = TransportPolicy::UdpThenTcp;
    std::chrono::milliseconds timeout{3000};
    int udp_retries = 2;
    std::optional<std::uint16_t> key_tag_filter;
    std::optional<std::uint16_t> cert_type_filter;
};

struct LookupResult {
    DomainName owner;
    std::vector<CertRecordData> records;
    TransportUsed transport_used = TransportUsed::Udp;
    bool retried_over_tcp = false;
    std::size_t message_size = 0; // octets of the message the records came from
};

// One-lookup-at-a-time stub resolver speaking to a single server.
// Query ids are uniformly random; responses with a different id are
// discarded without ending the wait. A truncated UDP response triggers
// one TCP retry carrying the identical query bytes.
class Resolver {
public:
    explicit Resolver(std::shared_ptr<ClientTransport> transport,
                      std::optional<std::uint32_t> seed = std::nullopt);

    // Throws LookupError: Timeout, NxDomain (name absent), NoData
    // (name exists, no matching CERT records), ServerFailure,
    // MalformedResponse, Network.
    LookupResult lookup(const LookupRequest& request);

private:
    std::shared_ptr<ClientTransport> transport_;
    std::mt19937 rng_;
};

// resolve_target + lookup. The records' payloads are the DER
// certificates the repository holds for the target.
LookupResult fetch_certificates(Resolver& resolver, std::string_view target,
                                const LookupRequest& options = {});

} // namespace certdns

#endif // CERTDNS_RESOLVER_HPP

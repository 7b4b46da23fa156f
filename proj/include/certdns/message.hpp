#ifndef CERTDNS_MESSAGE_HPP
#define CERTDNS_MESSAGE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "certdns/bytes.hpp"
#include "certdns/cert_record.hpp"
#include "certdns/name.hpp"

namespace certdns {

enum class Rcode : std::uint8_t {
    NoError = 0,
    FormErr = 1,
    ServFail = 2,
    NxDomain = 3,
    NotImp = 4,
    Refused = 5,
};

struct Flags {
    bool response = false;
    std::uint8_t opcode = 0;
    bool authoritative = false;
    bool truncated = false;
    bool recursion_desired = false;
    bool recursion_available = false;
    Rcode rcode = Rcode::NoError;

    friend bool operator==(const Flags&, const Flags&) = default;
};

struct Question {
    DomainName name;
    std::uint16_t qtype = rrtype::CERT;
    std::uint16_t qclass = kClassIn;

    friend bool operator==(const Question&, const Question&) = default;
};

// A generic resource record; rdata stays opaque at this layer. CERT
// rdata is decoded on demand via decode_cert_rdata.
struct ResourceRecord {
    DomainName owner;
    std::uint16_t rr_type = rrtype::CERT;
    std::uint16_t rr_class = kClassIn;
    std::uint32_t ttl = 0;
    Bytes rdata;

    friend bool operator==(const ResourceRecord&, const ResourceRecord&) = default;
};

// EDNS0 state carried by the OPT pseudo-record in the additional
// section: the sender's advertised UDP payload capacity.
struct EdnsInfo {
    std::uint16_t udp_payload_size = 4096;

    friend bool operator==(const EdnsInfo&, const EdnsInfo&) = default;
};

struct DnsMessage {
    std::uint16_t id = 0;
    Flags flags;
    std::optional<Question> question;
    std::vector<ResourceRecord> answers;
    std::vector<ResourceRecord> authority;
    std::vector<ResourceRecord> additional;
    std::optional<EdnsInfo> edns;

    friend bool operator==(const DnsMessage&, const DnsMessage&) = default;
};

// Encodes to wire octets. Answer owner names equal to the question name
// are emitted as one compression pointer to the question name; all other
// names are written uncompressed. The OPT pseudo-record for `edns` is
// appended to the additional section. Deterministic for a given message.
Bytes encode_message(const DnsMessage& msg);

// Decodes wire octets, following compression pointers anywhere in the
// message and rejecting non-descending pointer chains. An OPT record in
// the additional section is surfaced as `edns` rather than kept in the
// record list; a second OPT, an OPT outside the additional section, or
// section counts that disagree with the data are errors. Never reads
// past the buffer; all failures are WireError.
DnsMessage decode_message(ByteView wire);

} // namespace certdns

#endif // CERTDNS_MESSAGE_HPP

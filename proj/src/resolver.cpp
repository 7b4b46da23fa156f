#include "certdns/resolver.hpp"

#include <algorithm>

#include "certdns/errors.hpp"
#include "certdns/message.hpp"
#include "certdns/naming.hpp"

namespace certdns {

LookupTarget LookupTarget::parse(std::string_view text)
{
    if (text.find('@') != std::string_view::npos)
        return for_email(std::string(text));
    return for_host(DomainName::from_text(text));
}

LookupTarget LookupTarget::for_email(std::string email)
{
    LookupTarget t;
    t.kind = Kind::Email;
    t.email = std::move(email);
    return t;
}

LookupTarget LookupTarget::for_host(DomainName host)
{
    LookupTarget t;
    t.kind = Kind::Host;
    t.name = std::move(host);
    return t;
}

LookupTarget LookupTarget::raw(DomainName name)
{
    LookupTarget t;
    t.kind = Kind::RawName;
    t.name = std::move(name);
    return t;
}

DomainName resolve_target(const LookupTarget& target)
{
    switch (target.kind) {
    case LookupTarget::Kind::Email:
        return translate_email(target.email);
    case LookupTarget::Kind::Host:
    case LookupTarget::Kind::RawName:
        return target.name;
    }
    throw Error("unreachable target kind");
}

namespace {

// Checks rcode, then keeps the CERT records at the queried owner that
// pass the request's filters.
LookupResult digest_response(const DnsMessage& response, const DomainName& owner,
                             const LookupRequest& request)
{
    if (response.flags.rcode == Rcode::NxDomain)
        throw LookupError(LookupError::Kind::NxDomain,
                          "no such name: " + owner.to_text());
    if (response.flags.rcode != Rcode::NoError)
        throw LookupError(LookupError::Kind::ServerFailure,
                          "server returned rcode " +
                              std::to_string(static_cast<int>(response.flags.rcode)) +
                              " for " + owner.to_text());

    LookupResult result;
    result.owner = owner;
    for (const auto& rr : response.answers) {
        if (rr.rr_type != rrtype::CERT || rr.rr_class != kClassIn || rr.owner != owner)
            continue;
        CertRecordData record;
        try {
            record = decode_cert_rdata(rr.rdata);
        } catch (const Error& e) {
            throw LookupError(LookupError::Kind::MalformedResponse,
                              std::string("bad CERT rdata: ") + e.what());
        }
        if (request.key_tag_filter && record.key_tag != *request.key_tag_filter)
            continue;
        if (request.cert_type_filter && record.cert_type != *request.cert_type_filter)
            continue;
        result.records.push_back(std::move(record));
    }
    if (result.records.empty())
        throw LookupError(LookupError::Kind::NoData,
                          owner.to_text() + " exists but has no matching CERT records");
    return result;
}

// True when `response` plausibly answers `query`: same id and, when the
// question is echoed, the same name and type.
bool response_matches(const DnsMessage& response, const DnsMessage& query)
{
    if (!response.flags.response || response.id != query.id)
        return false;
    if (response.question && query.question &&
        (response.question->name != query.question->name ||
         response.question->qtype != query.question->qtype))
        return false;
    return true;
}

} // namespace

Resolver::Resolver(std::shared_ptr<ClientTransport> transport,
                   std::optional<std::uint32_t> seed)
    : transport_(std::move(transport))
{
    if (seed) {
        rng_.seed(*seed);
    } else {
        std::random_device rd;
        rng_.seed(rd());
    }
}

LookupResult Resolver::lookup(const LookupRequest& request)
{
    if (request.edns_payload && *request.edns_payload < 512)
        throw LookupError(LookupError::Kind::Network,
                          "EDNS0 payload size must be at least 512");

    DomainName owner = resolve_target(request.target);

    DnsMessage query;
    query.id = std::uniform_int_distribution<std::uint16_t>()(rng_);
    query.flags.recursion_desired = true;
    query.question = Question{owner, rrtype::CERT, kClassIn};
    if (request.edns_payload)
        query.edns = EdnsInfo{*request.edns_payload};
    Bytes query_wire = encode_message(query);

    auto exchange_tcp = [&]() -> std::pair<DnsMessage, std::size_t> {
        Bytes wire = transport_->tcp_exchange(query_wire);
        DnsMessage response;
        try {
            response = decode_message(wire);
        } catch (const Error& e) {
            throw LookupError(LookupError::Kind::MalformedResponse,
                              std::string("undecodable TCP response: ") + e.what());
        }
        if (!response_matches(response, query))
            throw LookupError(LookupError::Kind::MalformedResponse,
                              "TCP response does not match the query");
        return {std::move(response), wire.size()};
    };

    if (request.policy == TransportPolicy::TcpOnly) {
        auto [response, size] = exchange_tcp();
        LookupResult result = digest_response(response, owner, request);
        result.transport_used = TransportUsed::Tcp;
        result.retried_over_tcp = false;
        result.message_size = size;
        return result;
    }

    int attempts = 1 + std::max(request.udp_retries, 0);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        transport_->udp_send(query_wire);
        auto deadline = std::chrono::steady_clock::now() + request.timeout;
        for (;;) {
            auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                deadline - std::chrono::steady_clock::now());
            if (remaining.count() <= 0)
                break;
            auto datagram = transport_->udp_recv(remaining);
            if (!datagram)
                break;
            DnsMessage response;
            try {
                response = decode_message(*datagram);
            } catch (const Error&) {
                continue; // not for us; keep waiting
            }
            if (!response_matches(response, query))
                continue;

            if (response.flags.truncated) {
                auto [full, size] = exchange_tcp();
                LookupResult result = digest_response(full, owner, request);
                result.transport_used = TransportUsed::Tcp;
                result.retried_over_tcp = true;
                result.message_size = size;
                return result;
            }
            LookupResult result = digest_response(response, owner, request);
            result.transport_used = TransportUsed::Udp;
            result.retried_over_tcp = false;
            result.message_size = datagram->size();
            return result;
        }
    }
    throw LookupError(LookupError::Kind::Timeout,
                      "no response from server for " + owner.to_text() + " after " +
                          std::to_string(attempts) + " attempts");
}

LookupResult fetch_certificates(Resolver& resolver, std::string_view target,
                                const LookupRequest& options)
{
    LookupRequest request = options;
    request.target = LookupTarget::parse(target);
    return resolver.lookup(request);
}

} // namespace certdns

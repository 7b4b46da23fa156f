#include "certdns/message.hpp"

namespace certdns {

namespace {

constexpr std::size_t kHeaderSize = 12;
constexpr std::uint16_t kQuestionPointer = 0xC000 | kHeaderSize;

std::uint16_t flags_word(const Flags& f) {
    std::uint16_t w = 0;
    w |= static_cast<std::uint16_t>(f.response) << 15;
    w |= static_cast<std::uint16_t>(f.opcode & 0x0F) << 11;
    w |= static_cast<std::uint16_t>(f.authoritative) << 10;
    w |= static_cast<std::uint16_t>(f.truncated) << 9;
    w |= static_cast<std::uint16_t>(f.recursion_desired) << 8;
    w |= static_cast<std::uint16_t>(f.recursion_available) << 7;
    w |= static_cast<std::uint16_t>(f.rcode) & 0x0F;
    return w;
}

Flags parse_flags(std::uint16_t w) {
    Flags f;
    f.response = (w >> 15) & 1;
    f.opcode = static_cast<std::uint8_t>((w >> 11) & 0x0F);
    f.authoritative = (w >> 10) & 1;
    f.truncated = (w >> 9) & 1;
    f.recursion_desired = (w >> 8) & 1;
    f.recursion_available = (w >> 7) & 1;
    f.rcode = static_cast<Rcode>(w & 0x0F);
    return f;
}

void write_record(WireWriter& w, const ResourceRecord& rr, const DnsMessage& msg,
                  bool compress) {
    if (rr.rr_type == rrtype::OPT)
        throw WireError(WireError::Kind::BadOpt,
                        "OPT records are carried via the edns field, not record lists");
    if (rr.rdata.size() > 0xFFFF)
        throw WireError(WireError::Kind::FieldOverflow, "rdata exceeds 65535 octets");
    if (compress && msg.question && rr.owner == msg.question->name)
        w.u16(kQuestionPointer);
    else
        rr.owner.write_wire(w);
    w.u16(rr.rr_type);
    w.u16(rr.rr_class);
    w.u32(rr.ttl);
    w.u16(static_cast<std::uint16_t>(rr.rdata.size()));
    w.raw(rr.rdata);
}

ResourceRecord read_record(WireReader& r) {
    ResourceRecord rr;
    rr.owner = DomainName::read_wire(r);
    rr.rr_type = r.u16();
    rr.rr_class = r.u16();
    rr.ttl = r.u32();
    std::uint16_t rdlen = r.u16();
    ByteView rdata = r.take(rdlen);
    rr.rdata.assign(rdata.begin(), rdata.end());
    return rr;
}

} // namespace

Bytes encode_message(const DnsMessage& msg) {
    std::size_t extra = msg.edns ? 1 : 0;
    if (msg.answers.size() > 0xFFFF || msg.authority.size() > 0xFFFF ||
        msg.additional.size() + extra > 0xFFFF)
        throw WireError(WireError::Kind::FieldOverflow, "section count exceeds 65535");

    WireWriter w;
    w.u16(msg.id);
    w.u16(flags_word(msg.flags));
    w.u16(msg.question ? 1 : 0);
    w.u16(static_cast<std::uint16_t>(msg.answers.size()));
    w.u16(static_cast<std::uint16_t>(msg.authority.size()));
    w.u16(static_cast<std::uint16_t>(msg.additional.size() + extra));

    if (msg.question) {
        msg.question->name.write_wire(w);
        w.u16(msg.question->qtype);
        w.u16(msg.question->qclass);
    }
    for (const auto& rr : msg.answers)
        write_record(w, rr, msg, /*compress=*/true);
    for (const auto& rr : msg.authority)
        write_record(w, rr, msg, /*compress=*/false);
    for (const auto& rr : msg.additional)
        write_record(w, rr, msg, /*compress=*/false);

    if (msg.edns) {
        w.u8(0); // root owner
        w.u16(rrtype::OPT);
        w.u16(msg.edns->udp_payload_size);
        w.u32(0); // extended rcode, version, flags
        w.u16(0); // no options
    }
    return w.take();
}

DnsMessage decode_message(ByteView wire) {
    WireReader r(wire);
    DnsMessage msg;
    msg.id = r.u16();
    msg.flags = parse_flags(r.u16());
    std::uint16_t qdcount = r.u16();
    std::uint16_t ancount = r.u16();
    std::uint16_t nscount = r.u16();
    std::uint16_t arcount = r.u16();

    if (qdcount > 1)
        throw WireError(WireError::Kind::CountMismatch,
                        "unsupported question count " + std::to_string(qdcount));
    if (qdcount == 1) {
        Question q;
        q.name = DomainName::read_wire(r);
        q.qtype = r.u16();
        q.qclass = r.u16();
        msg.question = q;
    }

    for (int i = 0; i < ancount; ++i) {
        ResourceRecord rr = read_record(r);
        if (rr.rr_type == rrtype::OPT)
            throw WireError(WireError::Kind::BadOpt, "OPT record outside the additional section");
        msg.answers.push_back(std::move(rr));
    }
    for (int i = 0; i < nscount; ++i) {
        ResourceRecord rr = read_record(r);
        if (rr.rr_type == rrtype::OPT)
            throw WireError(WireError::Kind::BadOpt, "OPT record outside the additional section");
        msg.authority.push_back(std::move(rr));
    }
    for (int i = 0; i < arcount; ++i) {
        ResourceRecord rr = read_record(r);
        if (rr.rr_type == rrtype::OPT) {
            if (msg.edns)
                throw WireError(WireError::Kind::BadOpt, "more than one OPT pseudo-record");
            if (!rr.owner.is_root())
                throw WireError(WireError::Kind::BadOpt, "OPT owner name must be the root");
            msg.edns = EdnsInfo{rr.rr_class};
        } else {
            msg.additional.push_back(std::move(rr));
        }
    }

    if (!r.at_end())
        throw WireError(WireError::Kind::TrailingData,
                        std::to_string(r.remaining()) + " octets after the last section");
    return msg;
}

} // namespace certdns

#include "certdns/zone.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "certdns/errors.hpp"

namespace certdns {

namespace {

bool entry_before(const ZoneEntry& a, const ZoneEntry& b)
{
    if (a.owner != b.owner)
        return (a.owner <=> b.owner) < 0;
    if (a.record.key_tag != b.record.key_tag)
        return a.record.key_tag < b.record.key_tag;
    return a.record.cert_type < b.record.cert_type;
}

bool same_slot(const ZoneEntry& a, const ZoneEntry& b)
{
    return a.owner == b.owner && a.record.key_tag == b.record.key_tag &&
           a.record.cert_type == b.record.cert_type;
}

std::vector<std::string> split_ws(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > start)
            out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

std::uint32_t parse_u32_field(const std::string& token, const char* what,
                              std::size_t line_no)
{
    if (token.empty() ||
        !std::all_of(token.begin(), token.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ZoneError(ZoneError::Kind::ParseFailed,
                        "line " + std::to_string(line_no) + ": bad " + what + " \"" +
                            token + "\"");
    unsigned long long v = std::stoull(token);
    if (v > 0xFFFFFFFFull)
        throw ZoneError(ZoneError::Kind::ParseFailed,
                        "line " + std::to_string(line_no) + ": " + what +
                            " out of range");
    return static_cast<std::uint32_t>(v);
}

} // namespace

Zone::Zone(DomainName origin, std::uint32_t default_ttl)
    : origin_(std::move(origin)), default_ttl_(default_ttl)
{
}

bool Zone::upsert(ZoneEntry entry)
{
    ++serial_;
    for (auto& existing : entries_) {
        if (same_slot(existing, entry)) {
            existing = std::move(entry);
            return true;
        }
    }
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), entry, entry_before);
    entries_.insert(pos, std::move(entry));
    return false;
}

std::size_t Zone::remove(const DomainName& owner, std::optional<std::uint16_t> key_tag)
{
    auto matches = [&](const ZoneEntry& e) {
        return e.owner == owner && (!key_tag || e.record.key_tag == *key_tag);
    };
    std::size_t before = entries_.size();
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(), matches),
                   entries_.end());
    std::size_t removed = before - entries_.size();
    if (removed == 0)
        throw ZoneError(ZoneError::Kind::NotFound,
                        "no entry at " + owner.to_text() +
                            (key_tag ? " with key tag " + std::to_string(*key_tag) : ""));
    ++serial_;
    return removed;
}

std::vector<ZoneEntry> Zone::find(const DomainName& owner) const
{
    std::vector<ZoneEntry> out;
    for (const auto& e : entries_)
        if (e.owner == owner)
            out.push_back(e);
    return out;
}

bool Zone::name_exists(const DomainName& name) const
{
    if (name == origin_)
        return true;
    for (const auto& e : entries_)
        if (e.owner == name || e.owner.is_within(name))
            return true;
    return false;
}

ResourceRecord Zone::soa_record() const
{
    DomainName mname = DomainName::from_text("ns1").with_suffix(origin_);
    DomainName rname = DomainName::from_text("hostmaster").with_suffix(origin_);
    WireWriter w;
    mname.write_wire(w);
    rname.write_wire(w);
    w.u32(serial_);
    w.u32(kSoaRefresh);
    w.u32(kSoaRetry);
    w.u32(kSoaExpire);
    w.u32(kSoaMinimum);
    return ResourceRecord{origin_, rrtype::SOA, kClassIn, default_ttl_, w.take()};
}

std::vector<ResourceRecord> Zone::ns_records() const
{
    std::vector<ResourceRecord> out;
    for (const char* host : {"ns1", "ns2"}) {
        WireWriter w;
        DomainName::from_text(host).with_suffix(origin_).write_wire(w);
        out.push_back(ResourceRecord{origin_, rrtype::NS, kClassIn, default_ttl_, w.take()});
    }
    return out;
}

void Zone::append_parsed(ZoneEntry entry)
{
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), entry, entry_before);
    entries_.insert(pos, std::move(entry));
}

std::string emit_zone_file(const Zone& zone)
{
    std::ostringstream out;
    std::string origin = zone.origin().to_text();
    std::string ns1 = DomainName::from_text("ns1").with_suffix(zone.origin()).to_text();
    std::string ns2 = DomainName::from_text("ns2").with_suffix(zone.origin()).to_text();
    std::string rname =
        DomainName::from_text("hostmaster").with_suffix(zone.origin()).to_text();

    out << "$ORIGIN " << origin << "\n";
    out << "$TTL " << zone.default_ttl() << "\n";
    out << origin << " " << zone.default_ttl() << " IN SOA " << ns1 << " " << rname
        << " " << zone.serial() << " " << kSoaRefresh << " " << kSoaRetry << " "
        << kSoaExpire << " " << kSoaMinimum << "\n";
    out << origin << " " << zone.default_ttl() << " IN NS " << ns1 << "\n";
    out << origin << " " << zone.default_ttl() << " IN NS " << ns2 << "\n";
    for (const auto& e : zone.entries()) {
        out << "\n";
        out << format_cert_presentation(e.owner, e.ttl, e.record) << "\n";
    }
    return out.str();
}

Zone parse_zone_file(std::string_view text)
{
    Zone zone;
    std::optional<DomainName> directive_origin;
    std::optional<std::uint32_t> directive_ttl;
    bool saw_soa = false;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        // One logical record: continuation lines until parentheses balance.
        std::string record;
        std::size_t record_line = line_no + 1;
        int depth = 0;
        do {
            if (pos > text.size())
                throw ZoneError(ZoneError::Kind::ParseFailed,
                                "line " + std::to_string(record_line) +
                                    ": unbalanced parentheses");
            std::size_t eol = text.find('\n', pos);
            std::string_view line = eol == std::string_view::npos
                                        ? text.substr(pos)
                                        : text.substr(pos, eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            ++line_no;
            if (std::size_t semi = line.find(';'); semi != std::string_view::npos)
                line = line.substr(0, semi);
            record += ' ';
            for (char c : line) {
                if (c == '(') {
                    ++depth;
                    record += ' ';
                } else if (c == ')') {
                    --depth;
                    record += ' ';
                } else {
                    record += c;
                }
            }
        } while (depth > 0);

        auto tokens = split_ws(record);
        if (tokens.empty())
            continue;

        try {
            if (tokens[0] == "$ORIGIN") {
                if (tokens.size() != 2)
                    throw ZoneError(ZoneError::Kind::ParseFailed,
                                    "line " + std::to_string(record_line) +
                                        ": $ORIGIN wants one argument");
                directive_origin = DomainName::from_text(tokens[1]);
                continue;
            }
            if (tokens[0] == "$TTL") {
                if (tokens.size() != 2)
                    throw ZoneError(ZoneError::Kind::ParseFailed,
                                    "line " + std::to_string(record_line) +
                                        ": $TTL wants one argument");
                directive_ttl = parse_u32_field(tokens[1], "TTL", record_line);
                continue;
            }
            if (tokens.size() < 4 || tokens[2] != "IN")
                throw ZoneError(ZoneError::Kind::ParseFailed,
                                "line " + std::to_string(record_line) +
                                    ": expected \"owner ttl IN type ...\"");

            DomainName owner = DomainName::from_text(tokens[0]);
            std::uint32_t ttl = parse_u32_field(tokens[1], "TTL", record_line);
            const std::string& type = tokens[3];

            if (type == "SOA") {
                if (tokens.size() != 11)
                    throw ZoneError(ZoneError::Kind::ParseFailed,
                                    "line " + std::to_string(record_line) +
                                        ": SOA wants 7 rdata fields");
                saw_soa = true;
                Zone next(directive_origin.value_or(owner),
                          directive_ttl.value_or(ttl));
                for (auto& e : zone.entries())
                    next.append_parsed(e);
                next.set_serial(parse_u32_field(tokens[6], "serial", record_line));
                zone = std::move(next);
            } else if (type == "NS") {
                // Boilerplate; regenerated from the origin on emit.
            } else if (type == "CERT") {
                std::string rdata;
                for (std::size_t i = 4; i < tokens.size(); ++i) {
                    if (!rdata.empty())
                        rdata += ' ';
                    rdata += tokens[i];
                }
                zone.append_parsed(ZoneEntry{std::move(owner), ttl,
                                             parse_cert_presentation(rdata)});
            } else {
                throw ZoneError(ZoneError::Kind::ParseFailed,
                                "line " + std::to_string(record_line) +
                                    ": unsupported record type \"" + type + "\"");
            }
        } catch (const ZoneError&) {
            throw;
        } catch (const Error& e) {
            throw ZoneError(ZoneError::Kind::ParseFailed,
                            "line " + std::to_string(record_line) + ": " + e.what());
        }
    }

    if (!saw_soa)
        throw ZoneError(ZoneError::Kind::ParseFailed,
                        "line " + std::to_string(std::max<std::size_t>(line_no, 1)) +
                            ": zone file has no SOA record");
    return zone;
}

Zone load_zone(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ZoneError(ZoneError::Kind::Io, "cannot open zone file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw ZoneError(ZoneError::Kind::Io, "cannot read zone file " + path);
    return parse_zone_file(buf.str());
}

void store_zone(const Zone& zone, const std::string& path)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ZoneError(ZoneError::Kind::Io, "cannot create " + tmp);
        out << emit_zone_file(zone);
        out.flush();
        if (!out)
            throw ZoneError(ZoneError::Kind::Io, "cannot write " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ZoneError(ZoneError::Kind::Io, "cannot move " + tmp + " over " + path);
    }
}

} // namespace certdns

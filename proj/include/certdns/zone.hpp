#ifndef CERTDNS_ZONE_HPP
#define CERTDNS_ZONE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certdns/cert_record.hpp"
#include "certdns/message.hpp"
#include "certdns/name.hpp"

namespace certdns {

inline constexpr std::uint32_t kDefaultTtl = 86400;

// Fixed SOA timing parameters; the serial is the only live field.
inline constexpr std::uint32_t kSoaRefresh = 3600;
inline constexpr std::uint32_t kSoaRetry = 600;
inline constexpr std::uint32_t kSoaExpire = 604800;
inline constexpr std::uint32_t kSoaMinimum = 300;

struct ZoneEntry {
    DomainName owner;
    std::uint32_t ttl = kDefaultTtl;
    CertRecordData record;

    friend bool operator==(const ZoneEntry&, const ZoneEntry&) = default;
};

// The CERT repository zone: SOA/NS boilerplate plus CERT entries, kept
// sorted by (owner, key_tag, cert_type). The serial increases by one on
// every successful mutation.
class Zone {
public:
    Zone() = default;
    explicit Zone(DomainName origin, std::uint32_t default_ttl = kDefaultTtl);

    const DomainName& origin() const noexcept { return origin_; }
    std::uint32_t serial() const noexcept { return serial_; }
    std::uint32_t default_ttl() const noexcept { return default_ttl_; }
    const std::vector<ZoneEntry>& entries() const noexcept { return entries_; }

    // Inserts or, when an entry with equal owner, key tag and cert type
    // already exists, replaces it (certificate re-issue). Returns true
    // on replacement. Bumps the serial.
    bool upsert(ZoneEntry entry);

    // Deletes entries at `owner`; with key_tag set, only that tag.
    // Returns the number removed and bumps the serial. Throws
    // ZoneError{NotFound} when nothing matches.
    std::size_t remove(const DomainName& owner,
                       std::optional<std::uint16_t> key_tag = std::nullopt);

    std::vector<ZoneEntry> find(const DomainName& owner) const;

    // True when `name` is the apex, owns entries, or is an empty
    // non-terminal above an entry. Distinguishes no-data from NXDOMAIN.
    bool name_exists(const DomainName& name) const;

    ResourceRecord soa_record() const;
    std::vector<ResourceRecord> ns_records() const;

    // Parser hooks; not part of the mutation contract.
    void set_serial(std::uint32_t s) noexcept { serial_ = s; }
    void append_parsed(ZoneEntry entry);

private:
    DomainName origin_;
    std::uint32_t serial_ = 0;
    std::uint32_t default_ttl_ = kDefaultTtl;
    std::vector<ZoneEntry> entries_;
};

// Renders the master file: $ORIGIN, $TTL, SOA, two NS records, then the
// CERT entries in sorted order. Byte-stable for equal zones.
std::string emit_zone_file(const Zone& zone);

// Parses emit_zone_file output (plus hand-edited files of the same
// shape). All names are taken as absolute whether or not they carry a
// trailing dot. Throws ZoneError{ParseFailed} with a line number.
Zone parse_zone_file(std::string_view text);

// File I/O. store_zone writes a temporary file in the target directory
// and renames it over `path`, so readers never observe a partial file.
// Throws ZoneError{Io}.
Zone load_zone(const std::string& path);
void store_zone(const Zone& zone, const std::string& path);

} // namespace certdns

#endif // CERTDNS_ZONE_HPP

#include "certdns/publisher.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "certdns/base64.hpp"
#include "certdns/errors.hpp"
#include "certdns/identity.hpp"
#include "certdns/keytag.hpp"

namespace certdns {

DenyList DenyList::from_text(std::string_view text)
{
    DenyList list;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (std::size_t semi = line.find(';'); semi != std::string_view::npos)
            line = line.substr(0, semi);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
            line.remove_prefix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.remove_suffix(1);
        if (line.empty())
            continue;
        list.names_.push_back(DomainName::from_text(line));
    }
    return list;
}

DenyList DenyList::from_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ZoneError(ZoneError::Kind::Io, "cannot open deny list " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

bool DenyList::denies(const DomainName& name) const
{
    for (const auto& listed : names_)
        if (name.is_within(listed))
            return true;
    return false;
}

std::uint8_t algorithm_from_signature_oid(std::string_view sig_oid)
{
    if (sig_oid == oid::kRsaMd5)
        return certalg::RSAMD5;
    if (sig_oid == oid::kRsaSha1)
        return certalg::RSASHA1;
    if (sig_oid == oid::kDsaSha1)
        return certalg::DSA;
    return 0;
}

Bytes load_certificate_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ZoneError(ZoneError::Kind::Io, "cannot open certificate file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw ZoneError(ZoneError::Kind::Io, "cannot read certificate file " + path);
    std::string data = buf.str();

    std::size_t begin = data.find("-----BEGIN ");
    if (begin == std::string::npos)
        return Bytes(data.begin(), data.end());

    static constexpr std::string_view kBegin = "-----BEGIN CERTIFICATE-----";
    static constexpr std::string_view kEnd = "-----END CERTIFICATE-----";
    std::size_t start = data.find(kBegin);
    if (start == std::string::npos)
        throw TextError(TextError::Kind::BadSyntax,
                        path + ": PEM block is not a CERTIFICATE");
    start += kBegin.size();
    std::size_t stop = data.find(kEnd, start);
    if (stop == std::string::npos)
        throw TextError(TextError::Kind::BadSyntax,
                        path + ": unterminated PEM CERTIFICATE block");

    std::string b64;
    for (char c : data.substr(start, stop - start))
        if (!std::isspace(static_cast<unsigned char>(c)))
            b64 += c;
    return base64_decode(b64);
}

ZoneEntry build_entry(ByteView cert_der, std::uint32_t ttl, NamingProfile profile,
                      const DenyList* deny)
{
    IdentitySummary id = extract_identity(cert_der);
    NamingDecision decision = map_identity(id, profile);
    if (deny && deny->denies(decision.owner))
        throw ZoneError(ZoneError::Kind::Denied,
                        decision.owner.to_text() + " is deny-listed; not publishing");

    CertRecordData record;
    record.cert_type = certtype::PKIX;
    record.key_tag = compute_keytag(id.spki_der);
    record.algorithm = algorithm_from_signature_oid(id.sig_alg_oid);
    record.payload.assign(cert_der.begin(), cert_der.end());
    return ZoneEntry{decision.owner, ttl, std::move(record)};
}

} // namespace certdns

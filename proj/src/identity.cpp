#include "certdns/identity.hpp"

#include "certdns/der.hpp"
#include "certdns/errors.hpp"
#include "certdns/keytag.hpp"

namespace certdns {

namespace {

std::string decode_directory_string(const der::Element& value, const std::string& attr_oid) {
    switch (value.tag) {
    case der::kPrintableString:
    case der::kUtf8String:
    case der::kIa5String:
        return std::string(reinterpret_cast<const char*>(value.content.data()),
                           value.content.size());
    case der::kBmpString:
        throw DerError(DerError::Kind::UnsupportedEncoding,
                       "BMPString value in subject attribute " + attr_oid);
    case der::kT61String:
        throw DerError(DerError::Kind::UnsupportedEncoding,
                       "T61String value in subject attribute " + attr_oid);
    default:
        throw DerError(DerError::Kind::UnsupportedEncoding,
                       "unsupported string tag in subject attribute " + attr_oid);
    }
}

void parse_subject(ByteView name_content,
                   std::vector<std::pair<std::string, std::string>>& out) {
    der::Cursor rdns(name_content);
    while (rdns.has_more()) {
        der::Element rdn_set = rdns.expect(der::kSet, "RelativeDistinguishedName SET");
        der::Cursor avas(rdn_set.content);
        while (avas.has_more()) {
            der::Element ava = avas.expect(der::kSequence, "AttributeTypeAndValue");
            der::Cursor fields(ava.content);
            der::Element type = fields.expect(der::kOid, "attribute type OID");
            std::string attr_oid = der::decode_oid(type.content);
            der::Element value = fields.next();
            out.emplace_back(attr_oid, decode_directory_string(value, attr_oid));
        }
    }
}

void parse_general_names(ByteView names_content, std::vector<SanEntry>& out) {
    der::Cursor names(names_content);
    while (names.has_more()) {
        der::Element name = names.next();
        std::string text(reinterpret_cast<const char*>(name.content.data()),
                         name.content.size());
        switch (name.tag) {
        case der::ctx_primitive(1):
            out.push_back(SanEntry::rfc822(std::move(text)));
            break;
        case der::ctx_primitive(2):
            out.push_back(SanEntry::dns(std::move(text)));
            break;
        case der::ctx_primitive(6):
            out.push_back(SanEntry::uri(std::move(text)));
            break;
        case der::ctx_primitive(7):
            if (name.content.size() == 4 || name.content.size() == 16)
                out.push_back(SanEntry::ip_address(Bytes(name.content.begin(),
                                                         name.content.end())));
            break;
        default:
            // otherName, directoryName and the rest are skipped.
            break;
        }
    }
}

void parse_extensions(ByteView extensions_content, std::vector<SanEntry>& out) {
    der::Cursor exts(extensions_content);
    while (exts.has_more()) {
        der::Element ext = exts.expect(der::kSequence, "Extension");
        der::Cursor fields(ext.content);
        der::Element id = fields.expect(der::kOid, "extension OID");
        fields.take_optional(der::kBoolean); // critical flag
        der::Element value = fields.expect(der::kOctetString, "extension value");
        if (der::decode_oid(id.content) != oid::kSubjectAltName)
            continue;
        der::Cursor inner(value.content);
        der::Element general_names = inner.expect(der::kSequence, "GeneralNames");
        parse_general_names(general_names.content, out);
    }
}

} // namespace

SanEntry SanEntry::rfc822(std::string value) {
    return SanEntry{Kind::Rfc822Name, std::move(value), {}};
}
SanEntry SanEntry::dns(std::string value) {
    return SanEntry{Kind::DnsName, std::move(value), {}};
}
SanEntry SanEntry::uri(std::string value) {
    return SanEntry{Kind::Uri, std::move(value), {}};
}
SanEntry SanEntry::ip_address(Bytes octets) {
    return SanEntry{Kind::IpAddress, {}, std::move(octets)};
}

std::optional<std::string_view> oid_short_name(std::string_view dotted) {
    if (dotted == oid::kCommonName)
        return "CN";
    if (dotted == oid::kCountry)
        return "C";
    if (dotted == oid::kOrganization)
        return "O";
    if (dotted == oid::kOrgUnit)
        return "OU";
    if (dotted == oid::kDomainComponent)
        return "DC";
    if (dotted == oid::kEmailAddress)
        return "emailAddress";
    return std::nullopt;
}

IdentitySummary extract_identity(ByteView cert_der) {
    IdentitySummary id;
    id.der_size = cert_der.size();

    der::Cursor top(cert_der);
    der::Element certificate = top.expect(der::kSequence, "Certificate SEQUENCE");
    if (top.has_more())
        throw DerError(DerError::Kind::NotACertificate,
                       "trailing data after the Certificate element");

    der::Cursor cert(certificate.content);
    der::Element tbs = cert.expect(der::kSequence, "TBSCertificate SEQUENCE");
    der::Element sig_alg = cert.expect(der::kSequence, "signatureAlgorithm");
    cert.expect(der::kBitString, "signatureValue");
    if (cert.has_more())
        throw DerError(DerError::Kind::NotACertificate,
                       "extra elements inside the Certificate");

    der::Cursor alg(sig_alg.content);
    id.sig_alg_oid = der::decode_oid(alg.expect(der::kOid, "signature algorithm OID").content);

    der::Cursor body(tbs.content);
    if (auto version = body.take_optional(der::ctx_constructed(0))) {
        der::Cursor v(version->content);
        der::Element n = v.expect(der::kInteger, "version INTEGER");
        if (n.content.size() != 1 || n.content[0] > 2)
            throw DerError(DerError::Kind::NotACertificate, "unrecognized certificate version");
        id.version = n.content[0] + 1;
    }
    body.expect(der::kInteger, "serialNumber");
    body.expect(der::kSequence, "signature AlgorithmIdentifier");
    body.expect(der::kSequence, "issuer Name");
    body.expect(der::kSequence, "validity");
    der::Element subject = body.expect(der::kSequence, "subject Name");
    parse_subject(subject.content, id.subject_dn);

    der::Element spki = body.expect(der::kSequence, "SubjectPublicKeyInfo");
    id.spki_der.assign(spki.raw.begin(), spki.raw.end());

    body.take_optional(der::ctx_primitive(1)); // issuerUniqueID
    body.take_optional(der::ctx_primitive(2)); // subjectUniqueID
    if (auto exts = body.take_optional(der::ctx_constructed(3))) {
        der::Cursor inner(exts->content);
        der::Element list = inner.expect(der::kSequence, "Extensions SEQUENCE");
        parse_extensions(list.content, id.san_entries);
    }

    id.non_v3_warning = id.version != 3 && id.san_entries.empty();
    return id;
}

std::string describe_identity(const IdentitySummary& id) {
    std::string out = "version: " + std::to_string(id.version) + "\n";
    std::string subject;
    for (const auto& [attr, value] : id.subject_dn) {
        if (!subject.empty())
            subject += ", ";
        auto short_name = oid_short_name(attr);
        subject += short_name ? std::string(*short_name) : attr;
        subject += "=" + value;
    }
    out += "subject: " + subject + "\n";
    for (std::size_t i = 0; i < id.san_entries.size(); ++i) {
        const SanEntry& e = id.san_entries[i];
        out += "san[" + std::to_string(i) + "]: ";
        switch (e.kind) {
        case SanEntry::Kind::Rfc822Name:
            out += "rfc822Name " + e.text;
            break;
        case SanEntry::Kind::DnsName:
            out += "dNSName " + e.text;
            break;
        case SanEntry::Kind::Uri:
            out += "uri " + e.text;
            break;
        case SanEntry::Kind::IpAddress:
            out += "iPAddress " + to_hex(e.ip);
            break;
        }
        out += "\n";
    }
    out += "signature-algorithm: " + id.sig_alg_oid + "\n";
    out += "spki-octets: " + std::to_string(id.spki_der.size()) + "\n";
    out += "spki-keytag: " + std::to_string(compute_keytag(id.spki_der)) + "\n";
    out += "der-size: " + std::to_string(id.der_size) + "\n";
    if (id.non_v3_warning)
        out += "warning: not an X.509v3 certificate and no SubjectAltName present\n";
    return out;
}

} // namespace certdns

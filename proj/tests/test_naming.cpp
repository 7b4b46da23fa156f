#include <doctest.h>

#include <string>

#include "certdns/errors.hpp"
#include "certdns/identity.hpp"
#include "certdns/naming.hpp"
#include "test_util.hpp"

using namespace certdns;

namespace {

IdentitySummary with_subject(std::vector<std::pair<std::string, std::string>> dn)
{
    IdentitySummary id;
    id.version = 3;
    id.subject_dn = std::move(dn);
    return id;
}

IdentitySummary with_san(std::vector<SanEntry> entries)
{
    IdentitySummary id;
    id.version = 3;
    id.subject_dn = {{std::string(oid::kCommonName), "Some Body"}};
    id.san_entries = std::move(entries);
    return id;
}

} // namespace

TEST_SUITE("naming") {

TEST_CASE("email translation")
{
    CHECK(translate_email("marinus.marian@polito.it").to_text() ==
          "marinus.marian.polito.it");
    CHECK(translate_email("a@b.c").to_text() == "a.b.c");
    CHECK(translate_email("UserName@Example.COM").to_text() == "username.example.com");

    CHECK_THROWS_AS(translate_email("x@y@z"), NamingError);
    CHECK_THROWS_AS(translate_email("no-at-sign"), NamingError);
    CHECK_THROWS_AS(translate_email("@polito.it"), NamingError);
    CHECK_THROWS_AS(translate_email("user@"), NamingError);
    CHECK_THROWS_AS(translate_email("a..b@polito.it"), NamingError);
    CHECK_THROWS_AS(translate_email("\"quoted\"@polito.it"), NamingError);
    CHECK_THROWS_AS(translate_email(std::string(64, 'a') + "@polito.it"), NamingError);

    try {
        translate_email("x@y@z");
        FAIL("expected a NamingError");
    } catch (const NamingError& e) {
        CHECK(e.kind() == NamingError::Kind::BadEmail);
    }
}

TEST_CASE("inverse address names")
{
    CHECK(translate_ip(Bytes{192, 0, 2, 1}).to_text() == "1.2.0.192.in-addr.arpa");
    CHECK(translate_ip(Bytes{0, 0, 0, 0}).to_text() == "0.0.0.0.in-addr.arpa");
    CHECK(translate_ip(Bytes{130, 192, 1, 8}).to_text() == "8.1.192.130.in-addr.arpa");

    Bytes loopback6(16, 0);
    loopback6[15] = 1;
    DomainName v6 = translate_ip(loopback6);
    CHECK(v6.label_count() == 34);
    std::string want = "1";
    for (int i = 0; i < 31; ++i)
        want += ".0";
    want += ".ip6.arpa";
    CHECK(v6.to_text() == want);

    // Nibble order: low nibble of the last octet comes first.
    Bytes sample(16, 0);
    sample[0] = 0x20;
    sample[1] = 0x01;
    sample[15] = 0xAB;
    std::string text = translate_ip(sample).to_text();
    CHECK(text.rfind("b.a.", 0) == 0);
    CHECK(text.find("1.0.0.2.ip6.arpa") != std::string::npos);

    CHECK_THROWS_AS(translate_ip(Bytes{1, 2, 3}), NamingError);
    CHECK_THROWS_AS(translate_ip(Bytes(5, 0)), NamingError);
    try {
        translate_ip(Bytes(5, 0));
        FAIL("expected a NamingError");
    } catch (const NamingError& e) {
        CHECK(e.kind() == NamingError::Kind::BadIpLength);
    }
}

TEST_CASE("DC mapping")
{
    using Dn = std::vector<std::pair<std::string, std::string>>;
    CHECK(translate_dn(Dn{{"DC", "polito"}, {"DC", "it"}}).to_text() == "polito.it");
    CHECK(translate_dn(Dn{{"DC", "www"}, {"DC", "example"}, {"DC", "com"}}).to_text() ==
          "www.example.com");
    // Dotted OID spelling and interleaved non-DC attributes.
    CHECK(translate_dn(Dn{{"2.5.4.3", "someone"},
                          {std::string(oid::kDomainComponent), "polito"},
                          {"DC", "it"}})
              .to_text() == "polito.it");

    CHECK_THROWS_AS(translate_dn(Dn{{"CN", "Marius Marian"}}), NamingError);
    try {
        translate_dn(Dn{});
        FAIL("expected a NamingError");
    } catch (const NamingError& e) {
        CHECK(e.kind() == NamingError::Kind::NoDcComponents);
    }
}

TEST_CASE("URI host extraction")
{
    CHECK(uri_host("https://www.polito.it/path?q=1") == "www.polito.it");
    CHECK(uri_host("ldap://ldap.polito.it:389/cn=x") == "ldap.polito.it");
    CHECK(uri_host("ftp://user:pw@files.polito.it/pub") == "files.polito.it");
    CHECK(uri_host("https://[2001:db8::1]:443/x") == "2001:db8::1");
    CHECK(uri_host("http://repo.polito.it") == "repo.polito.it");

    CHECK_THROWS_AS(uri_host("mailto:user@polito.it"), NamingError);
    CHECK_THROWS_AS(uri_host("https://"), NamingError);
    CHECK_THROWS_AS(uri_host("://polito.it"), NamingError);
    CHECK_THROWS_AS(uri_host("https://[2001:db8::1/x"), NamingError);
}

TEST_CASE("each rule fires alone")
{
    // Rule 1, subject CN shaped like a host name.
    auto d = map_identity(with_subject({{std::string(oid::kCommonName),
                                         "www.polito.it"}}));
    CHECK(d.owner.to_text() == "www.polito.it");
    CHECK(d.rule_applied == NamingRule::SubjectDomainName);
    CHECK(d.source_field == NameSource::Subject);

    // Rule 1, SAN dNSName.
    d = map_identity(with_san({SanEntry::dns("www.polito.it")}));
    CHECK(d.owner.to_text() == "www.polito.it");
    CHECK(d.rule_applied == NamingRule::SubjectDomainName);
    CHECK(d.source_field == NameSource::SubjectAltName);

    // Rule 2, SAN iPAddress.
    d = map_identity(with_san({SanEntry::ip_address(Bytes{192, 0, 2, 1})}));
    CHECK(d.owner.to_text() == "1.2.0.192.in-addr.arpa");
    CHECK(d.rule_applied == NamingRule::InverseIpName);

    // Rule 3, SAN URI.
    d = map_identity(with_san({SanEntry::uri("https://repo.polito.it/certs")}));
    CHECK(d.owner.to_text() == "repo.polito.it");
    CHECK(d.rule_applied == NamingRule::UriDomainName);

    // Rule 4, SAN rfc822Name.
    d = map_identity(with_san({SanEntry::rfc822("marinus.marian@polito.it")}));
    CHECK(d.owner.to_text() == "marinus.marian.polito.it");
    CHECK(d.rule_applied == NamingRule::EmailTranslation);

    // Rule 5, domainComponent subject.
    d = map_identity(with_subject({{std::string(oid::kDomainComponent), "it"},
                                   {std::string(oid::kDomainComponent), "polito"},
                                   {std::string(oid::kDomainComponent), "ca1"}}));
    CHECK(d.owner.to_text() == "ca1.polito.it");
    CHECK(d.rule_applied == NamingRule::Rfc2247DnMapping);
    CHECK(d.source_field == NameSource::Subject);
}

TEST_CASE("adjacent rules: the lower index wins")
{
    // 1 vs 2.
    auto d = map_identity(with_san({SanEntry::ip_address(Bytes{192, 0, 2, 1}),
                                    SanEntry::dns("www.polito.it")}));
    CHECK(d.rule_applied == NamingRule::SubjectDomainName);
    CHECK(d.owner.to_text() == "www.polito.it");

    // 2 vs 3.
    d = map_identity(with_san({SanEntry::uri("https://repo.polito.it/"),
                               SanEntry::ip_address(Bytes{192, 0, 2, 1})}));
    CHECK(d.rule_applied == NamingRule::InverseIpName);
    CHECK(d.owner.to_text() == "1.2.0.192.in-addr.arpa");

    // 3 vs 4.
    d = map_identity(with_san({SanEntry::rfc822("x@polito.it"),
                               SanEntry::uri("https://repo.polito.it/")}));
    CHECK(d.rule_applied == NamingRule::UriDomainName);
    CHECK(d.owner.to_text() == "repo.polito.it");

    // 4 vs 5, both inside the subject.
    d = map_identity(with_subject({{std::string(oid::kDomainComponent), "it"},
                                   {std::string(oid::kDomainComponent), "polito"},
                                   {std::string(oid::kEmailAddress), "x@polito.it"}}));
    CHECK(d.rule_applied == NamingRule::EmailTranslation);
    CHECK(d.owner.to_text() == "x.polito.it");
}

TEST_CASE("subject is examined before SubjectAltName")
{
    IdentitySummary id;
    id.version = 3;
    id.subject_dn = {{std::string(oid::kCommonName), "cn.polito.it"}};
    id.san_entries = {SanEntry::dns("san.polito.it")};
    auto d = map_identity(id);
    CHECK(d.owner.to_text() == "cn.polito.it");
    CHECK(d.source_field == NameSource::Subject);

    // A person-name CN does not qualify as a domain name.
    id.subject_dn = {{std::string(oid::kCommonName), "Marius Marian"}};
    d = map_identity(id);
    CHECK(d.owner.to_text() == "san.polito.it");
    CHECK(d.source_field == NameSource::SubjectAltName);
}

TEST_CASE("URIs with IP-literal hosts translate like addresses")
{
    auto d = map_identity(with_san({SanEntry::uri("https://192.0.2.1/repo")}));
    CHECK(d.rule_applied == NamingRule::InverseIpName);
    CHECK(d.owner.to_text() == "1.2.0.192.in-addr.arpa");
}

TEST_CASE("POLITO profile shortcut")
{
    // Server certificate: dNSName, even alongside an rfc822Name.
    auto d = map_identity(with_san({SanEntry::rfc822("x@polito.it"),
                                    SanEntry::dns("www.polito.it")}),
                          NamingProfile::Polito);
    CHECK(d.owner.to_text() == "www.polito.it");
    CHECK(d.rule_applied == NamingRule::SubjectDomainName);
    CHECK(d.source_field == NameSource::SubjectAltName);

    // Personal certificate: rfc822Name only.
    d = map_identity(with_san({SanEntry::rfc822("marinus.marian@polito.it")}),
                     NamingProfile::Polito);
    CHECK(d.owner.to_text() == "marinus.marian.polito.it");
    CHECK(d.rule_applied == NamingRule::EmailTranslation);

    // The shortcut reads only the SubjectAltName extension.
    CHECK_THROWS_AS(map_identity(with_subject({{std::string(oid::kCommonName),
                                                "www.polito.it"}}),
                                 NamingProfile::Polito),
                    NamingError);
}

TEST_CASE("unmappable identities are refused")
{
    try {
        map_identity(with_subject({{std::string(oid::kCommonName), "x"}}));
        FAIL("expected a NamingError");
    } catch (const NamingError& e) {
        CHECK(e.kind() == NamingError::Kind::NoNameDerivable);
    }
}

TEST_CASE("frozen certificates map to their expected owners")
{
    auto expected = testutil::expected_values();
    for (auto& [name, e] : expected.items()) {
        CAPTURE(name);
        IdentitySummary id = extract_identity(testutil::fixture(name));
        if (e["owner"].is_null()) {
            CHECK_THROWS_AS(map_identity(id), NamingError);
            continue;
        }
        CHECK(map_identity(id).owner.to_text() == e["owner"].get<std::string>());
    }
}

} // TEST_SUITE

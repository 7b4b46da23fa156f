#include <doctest.h>

#include "certdns/errors.hpp"
#include "certdns/name.hpp"

using namespace certdns;

namespace {

DomainName wire_roundtrip(const DomainName& name)
{
    WireWriter w;
    name.write_wire(w);
    Bytes wire = w.take();
    WireReader r(wire);
    DomainName back = DomainName::read_wire(r);
    REQUIRE(r.at_end());
    return back;
}

} // namespace

TEST_SUITE("name") {

TEST_CASE("text parsing and canonical form")
{
    DomainName n = DomainName::from_text("WWW.Polito.IT");
    CHECK(n.to_text() == "www.polito.it");
    CHECK(n.label_count() == 3);
    CHECK(n == DomainName::from_text("www.polito.it."));

    CHECK(DomainName::from_text("").is_root());
    CHECK(DomainName::from_text(".").is_root());
    CHECK(DomainName::from_text(".").to_text() == ".");
}

TEST_CASE("label and name limits")
{
    std::string label63(63, 'a');
    CHECK(DomainName::from_text(label63 + ".it").labels()[0].size() == 63);

    std::string label64(64, 'a');
    CHECK_THROWS_AS(DomainName::from_text(label64 + ".it"), TextError);
    CHECK_THROWS_AS(DomainName::from_text("a..b"), TextError);
    CHECK_THROWS_AS(DomainName::from_text(".a.b"), TextError);
    CHECK_THROWS_AS(DomainName::from_text("a b.it"), TextError);

    // Four 63-octet labels push the encoding past 255 octets.
    std::string big = label63 + "." + label63 + "." + label63 + "." + label63;
    CHECK_THROWS_AS(DomainName::from_text(big), TextError);

    // Three of them plus a short one stay inside the limit.
    std::string ok = label63 + "." + label63 + "." + label63 + ".ab";
    CHECK(DomainName::from_text(ok).encoded_size() == 3 * 64 + 3 + 1);
}

TEST_CASE("suffix and containment")
{
    DomainName apex = DomainName::from_text("polito.it");
    DomainName www = DomainName::from_text("www.polito.it");
    CHECK(www.is_within(apex));
    CHECK(apex.is_within(apex));
    CHECK_FALSE(apex.is_within(www));
    CHECK_FALSE(DomainName::from_text("www.polito.com").is_within(apex));
    CHECK(www.is_within(DomainName()));

    CHECK(DomainName::from_text("www").with_suffix(apex) == www);
}

TEST_CASE("wire round-trip")
{
    CHECK(wire_roundtrip(DomainName()) == DomainName());
    CHECK(wire_roundtrip(DomainName::from_text("example.com")).to_text() ==
          "example.com");
    CHECK(wire_roundtrip(DomainName::from_text("marinus.marian.polito.it")).to_text() ==
          "marinus.marian.polito.it");
}

TEST_CASE("wire encoding layout")
{
    WireWriter w;
    DomainName::from_text("example.com").write_wire(w);
    Bytes wire = w.take();
    Bytes expected = {7, 'e', 'x', 'a', 'm', 'p', 'l', 'e', 3, 'c', 'o', 'm', 0};
    CHECK(wire == expected);
    CHECK(DomainName::from_text("example.com").encoded_size() == 13);
}

TEST_CASE("compression pointer is followed")
{
    // "polito.it" at offset 0, then "www" + pointer to offset 0 at 11.
    Bytes wire = {6, 'p', 'o', 'l', 'i', 't', 'o', 2, 'i', 't', 0,
                  3, 'w', 'w', 'w', 0xC0, 0x00};
    WireReader r(wire);
    CHECK(DomainName::read_wire(r).to_text() == "polito.it");
    CHECK(DomainName::read_wire(r).to_text() == "www.polito.it");
    CHECK(r.at_end());
}

TEST_CASE("pointer loops are rejected")
{
    // Pointer to itself.
    Bytes self = {0xC0, 0x00};
    WireReader r1(self);
    CHECK_THROWS_AS(DomainName::read_wire(r1), WireError);

    // Two pointers chasing each other through a label.
    Bytes pair = {1, 'a', 0xC0, 0x04, 1, 'b', 0xC0, 0x00};
    WireReader r2(pair);
    CHECK_THROWS_AS(DomainName::read_wire(r2), WireError);

    try {
        WireReader r3(self);
        DomainName::read_wire(r3);
        FAIL("expected a WireError");
    } catch (const WireError& e) {
        CHECK(e.kind() == WireError::Kind::CompressionLoop);
    }
}

TEST_CASE("pointer past the end is rejected")
{
    Bytes wire = {0xC0, 0x7F};
    WireReader r(wire);
    CHECK_THROWS_AS(DomainName::read_wire(r), WireError);
}

TEST_CASE("truncated names are rejected")
{
    Bytes wire = {3, 'w', 'w'};
    WireReader r(wire);
    CHECK_THROWS_AS(DomainName::read_wire(r), WireError);

    Bytes no_terminator = {3, 'w', 'w', 'w'};
    WireReader r2(no_terminator);
    CHECK_THROWS_AS(DomainName::read_wire(r2), WireError);
}

TEST_CASE("ordering is case-insensitive and label-wise")
{
    CHECK(DomainName::from_text("A.example.com") ==
          DomainName::from_text("a.EXAMPLE.com"));
    CHECK(DomainName::from_text("a.b") < DomainName::from_text("b.b"));
}

} // TEST_SUITE

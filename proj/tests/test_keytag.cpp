#include <doctest.h>

#include <random>

#include "certdns/identity.hpp"
#include "certdns/keytag.hpp"
#include "keytag_oracle.hpp"
#include "test_util.hpp"

using namespace certdns;

TEST_SUITE("keytag") {

TEST_CASE("fixed vectors")
{
    CHECK(compute_keytag(Bytes{}) == 0);
    CHECK(compute_keytag(Bytes{0x01, 0x02}) == 0x0102);
    CHECK(compute_keytag(Bytes{0xFF, 0xFF, 0xFF, 0xFF}) == 0xFFFF);
}

TEST_CASE("odd length shifts the trailing octet")
{
    CHECK(compute_keytag(Bytes{0xFF}) == 0xFF00);
    CHECK(compute_keytag(Bytes{0x01, 0x02, 0x03}) == 0x0402);
}

TEST_CASE("carry folds once")
{
    // 0xFFFF + 0xFFFF + 0x0001 = 0x1FFFF; adding the carry gives 0x20000,
    // whose low 16 bits are zero. The carry itself is not folded again:
    // 0x20002 keeps its low-half value 2.
    CHECK(compute_keytag(Bytes{0xFF, 0xFF, 0xFF, 0xFF, 0x00, 0x01}) == 0);
    CHECK(compute_keytag(Bytes{0xFF, 0xFF, 0xFF, 0xFF, 0x00, 0x02}) == 2);
}

TEST_CASE("agrees with the reference transcription on random inputs")
{
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<int> len_dist(0, 4096);
    std::uniform_int_distribution<int> byte_dist(0, 255);
    for (int round = 0; round < 1000; ++round) {
        Bytes input(static_cast<std::size_t>(len_dist(rng)));
        for (auto& b : input)
            b = static_cast<std::uint8_t>(byte_dist(rng));
        CAPTURE(input.size());
        REQUIRE(compute_keytag(input) ==
                reference_keytag(input.data(),
                                 static_cast<unsigned int>(input.size())));
    }
}

TEST_CASE("frozen certificate key tags")
{
    auto expected = testutil::expected_values();
    for (auto& [name, e] : expected.items()) {
        CAPTURE(name);
        Bytes spki = testutil::fixture(e["spki_file"].get<std::string>());
        CHECK(spki.size() == e["spki_size"].get<std::size_t>());
        CHECK(compute_keytag(spki) == e["keytag"].get<std::uint16_t>());

        // The same value must come out of the certificate itself.
        IdentitySummary id = extract_identity(testutil::fixture(name));
        CHECK(id.spki_der == spki);
        CHECK(compute_keytag(id.spki_der) == e["keytag"].get<std::uint16_t>());
    }
}

} // TEST_SUITE

#ifndef CERTDNS_TEST_UTIL_HPP
#define CERTDNS_TEST_UTIL_HPP

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "certdns/bytes.hpp"

namespace testutil {

inline std::string testdata_path(const std::string& name)
{
    return std::string(TESTDATA_DIR) + "/" + name;
}

inline certdns::Bytes read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string s = buf.str();
    return certdns::Bytes(s.begin(), s.end());
}

inline std::string read_text(const std::string& path)
{
    auto bytes = read_file(path);
    return std::string(bytes.begin(), bytes.end());
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write " + path);
}

inline certdns::Bytes fixture(const std::string& name)
{
    return read_file(testdata_path(name));
}

inline nlohmann::json expected_values()
{
    return nlohmann::json::parse(read_text(testdata_path("expected.json")));
}

inline bool path_exists(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return static_cast<bool>(in);
}

// Fresh directory under the system temp root; leaked on purpose, the
// suite runs in a throwaway build tree.
inline std::string make_temp_dir()
{
    std::string tmpl = "/tmp/certdns-test-XXXXXX";
    std::string buf(tmpl);
    if (!mkdtemp(buf.data()))
        throw std::runtime_error("mkdtemp failed");
    return buf;
}

} // namespace testutil

#endif // CERTDNS_TEST_UTIL_HPP
